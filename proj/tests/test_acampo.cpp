#include <doctest.h>

#include <fstream>
#include <sstream>

#include "morsecensus/acampo.hpp"
#include "morsecensus/explore.hpp"

using namespace mc;

namespace {

// single double point inside one negative lobe: the A2 singularity
Divide a2_divide() {
  Divide d;
  d.double_points = {"a"};
  d.regions = {{"lobe", false}};
  d.corners = {{"a", "lobe", 1}};
  return d;
}

// two double points bounding one negative lens region: A3
Divide lens_divide() {
  Divide d;
  d.double_points = {"a", "b"};
  d.regions = {{"lens", false}};
  d.corners = {{"a", "lens", 1}, {"b", "lens", 1}};
  return d;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("the A2 divide builds the two-cycle seed") {
  FlipConfig cfg;
  auto vm = build_seed(a2_divide(), cfg);
  CHECK(vm.mu == 2);
  CHECK(vm.q == 1);  // one minimum, below zero
  CHECK(vm.kinds[0].tag == KindTag::Min);
  CHECK(vm.kinds[1].tag == KindTag::Saddle);
  CHECK(vm.A == std::vector<int64_t>{-2, 1, 1, -2});
  CHECK(vm.r == std::vector<int64_t>{2, -2});
  CHECK(validate(vm).empty());
}

TEST_CASE("the lens divide builds the A3 chain") {
  FlipConfig cfg;
  auto vm = build_seed(lens_divide(), cfg);
  CHECK(vm.mu == 3);
  CHECK(vm.q == 1);
  CHECK(vm.kinds[0].tag == KindTag::Min);
  CHECK(vm.kinds[1].tag == KindTag::Saddle);
  CHECK(vm.kinds[2].tag == KindTag::Saddle);
  CHECK(vm.at(0, 1) == 1);
  CHECK(vm.at(0, 2) == 1);
  CHECK(vm.at(1, 2) == 0);  // saddles never meet directly
  CHECK(validate(vm).empty());
}

TEST_CASE("divide serialization round-trips") {
  auto d = lens_divide();
  auto back = parse_divide(serialize_divide(d));
  FlipConfig cfg;
  CHECK(build_seed(back, cfg) == build_seed(d, cfg));
  CHECK_THROWS_AS(parse_divide("{"), ParseError);
  CHECK_THROWS_AS(parse_divide("{\"double_points\":[]}"), ParseError);
}

TEST_CASE("extras contribute saddle rows verbatim") {
  auto d = a2_divide();
  d.extras.push_back({"s", {{"lobe", 1}}});
  CHECK(validate_divide(d).empty());
  FlipConfig cfg;
  auto vm = build_seed(d, cfg);
  CHECK(vm.mu == 3);
  CHECK(vm.kinds[2].tag == KindTag::Saddle);  // extras follow double points
  CHECK(vm.at(0, 2) == 1);
  CHECK(vm.at(1, 2) == 0);
}

TEST_CASE("divide validation catches structural mistakes") {
  auto d = a2_divide();
  d.corners[0].count = 0;
  CHECK(validate_divide(d).front() == "corner count must be positive");

  d = a2_divide();
  d.corners.push_back({"zz", "lobe", 1});
  CHECK(!validate_divide(d).empty());

  d = a2_divide();
  d.regions.push_back({"a", false});  // clashes with the double point
  CHECK(validate_divide(d).front() == "duplicate cycle name 'a'");

  d = a2_divide();
  d.extras.push_back({"e1", {{"e2", 1}}});
  d.extras.push_back({"e2", {{"e1", 2}}});
  auto viol = validate_divide(d);
  bool asym = false;
  for (const auto& v : viol) asym |= v.find("asymmetric") != std::string::npos;
  CHECK(asym);

  d = a2_divide();
  d.ptype = PrincipalType::X9Plus;  // 2 cycles only
  CHECK(!validate_divide(d).empty());
  FlipConfig cfg;
  CHECK_THROWS_AS(build_seed(d, cfg), InvalidArgument);
}

TEST_CASE("sign conventions follow the configuration") {
  Divide d;
  d.double_points = {"a"};
  d.regions = {{"bot", false}, {"top", true}};
  d.corners = {{"a", "bot", 1}, {"a", "top", 2}};
  FlipConfig cfg;
  auto vm = build_seed(d, cfg);
  // order: bot (min), a (saddle), top (max)
  CHECK(vm.at(0, 1) == 1);   // min side, acampo_min_sign = +1
  CHECK(vm.at(2, 1) == -2);  // max side, acampo_max_sign = -1, count 2
  CHECK(vm.r[2] == cfg.acampo_max_r);

  cfg.acampo_max_sign = 1;
  cfg.acampo_max_r = -2;
  vm = build_seed(d, cfg);
  CHECK(vm.at(2, 1) == 2);
  CHECK(vm.r[2] == -2);
}

TEST_CASE("shipped divide fixtures build valid nine-cycle seeds") {
  FlipConfig cfg;
  struct Expected {
    const char* file;
    PrincipalType ptype;
    int q, m_plus;
  };
  const Expected table[] = {
      {"/divides/x9plus-crossed-ellipses.json", PrincipalType::X9Plus, 4, 1},
      {"/divides/x9one-lines-in-ellipse.json", PrincipalType::X9One, 2, 2},
      {"/divides/x9two-four-lines.json", PrincipalType::X9Two, 2, 1},
  };
  for (const auto& e : table) {
    CAPTURE(e.file);
    auto d = parse_divide(read_file(std::string(MC_DATA_DIR) + e.file));
    REQUIRE(d.ptype.has_value());
    CHECK(*d.ptype == e.ptype);
    auto vm = build_seed(d, cfg);
    CHECK(vm.mu == 9);
    CHECK(vm.q == e.q);
    CHECK(validate(vm).empty());
    auto t = trivial_invariant(vm);
    CHECK(t.M == 9);
    CHECK(t.m_plus == e.m_plus);
  }
}
