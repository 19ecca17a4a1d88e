#include "morsecensus/fixtures.hpp"

#include <array>

namespace mc {

namespace {

using Row = std::array<int64_t, 9>;
using Mat = std::array<Row, 9>;

const Mat kSeedA = {{
    {-2, 0, 0, 0, 1, 0, 1, 1, 1},
    {0, -2, 0, 0, 0, 1, 0, 0, 0},
    {0, 0, -2, 0, 1, 0, 0, 0, 0},
    {0, 0, 0, -2, 0, 1, 1, 1, 1},
    {1, 0, 1, 0, -2, 0, 0, -1, -1},
    {0, 1, 0, 1, 0, -2, 0, -1, -1},
    {1, 0, 0, 1, 0, 0, -2, -1, -1},
    {1, 0, 0, 1, -1, -1, -1, -2, -2},
    {1, 0, 0, 1, -1, -1, -1, -2, -2},
}};

const Mat kSeedB = {{
    {-2, 0, 0, 0, 1, 1, 1, 1, 1},
    {0, -2, 0, 0, 0, 1, 0, 0, 0},
    {0, 0, -2, 0, 1, 0, 0, 0, 0},
    {0, 0, 0, -2, 0, 0, 1, 1, 1},
    {1, 0, 1, 0, -2, 0, 0, -1, -1},
    {1, 1, 0, 0, 0, -2, 0, 0, 0},
    {1, 0, 0, 1, 0, 0, -2, -1, -1},
    {1, 0, 0, 1, -1, 0, -1, -2, -2},
    {1, 0, 0, 1, -1, 0, -1, -2, -2},
}};

VirtualMorsification make_m7(const Mat& m) {
  VirtualMorsification vm;
  vm.mu = 9;
  vm.ptype = PrincipalType::X9Plus;
  vm.q = 4;
  for (int i = 0; i < 4; ++i) vm.kinds.push_back({KindTag::Min, 0});
  for (int i = 0; i < 3; ++i) vm.kinds.push_back({KindTag::Saddle, 0});
  vm.kinds.push_back({KindTag::PairFirst, 0});
  vm.kinds.push_back({KindTag::PairSecond, 0});
  for (const Row& row : m)
    for (int64_t v : row) vm.A.push_back(v);
  vm.r = {2, 2, 2, 2, -2, -2, -2, -2, -2};
  return vm;
}

}  // namespace

VirtualMorsification fixture_state(const std::string& name) {
  if (name == "x9plus-m7-a") return make_m7(kSeedA);
  if (name == "x9plus-m7-b") return make_m7(kSeedB);
  throw InvalidArgument("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() { return {"x9plus-m7-a", "x9plus-m7-b"}; }

}  // namespace mc
