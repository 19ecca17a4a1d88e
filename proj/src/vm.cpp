#include "morsecensus/vm.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mc {

using json = nlohmann::json;

int euler_of(PrincipalType t) {
  switch (t) {
    case PrincipalType::X9Plus: return 1;
    case PrincipalType::X9One: return -1;
    case PrincipalType::X9Two: return -3;
  }
  return 0;
}

const char* ptype_name(PrincipalType t) {
  switch (t) {
    case PrincipalType::X9Plus: return "x9plus";
    case PrincipalType::X9One: return "x9one";
    case PrincipalType::X9Two: return "x9two";
  }
  return "?";
}

bool ptype_from_name(const std::string& s, PrincipalType& out) {
  if (s == "x9plus") { out = PrincipalType::X9Plus; return true; }
  if (s == "x9one") { out = PrincipalType::X9One; return true; }
  if (s == "x9two") { out = PrincipalType::X9Two; return true; }
  return false;
}

Kind kind_from_string(const std::string& s) {
  if (s == "min") return {KindTag::Min, 0};
  if (s == "saddle") return {KindTag::Saddle, 0};
  if (s == "max") return {KindTag::Max, 0};
  auto colon = s.find(':');
  if (colon != std::string::npos) {
    std::string head = s.substr(0, colon);
    int id;
    try {
      id = std::stoi(s.substr(colon + 1));
    } catch (...) {
      throw ParseError("bad pair id in kind '" + s + "'");
    }
    if (id < 0 || id > 255) throw ParseError("pair id out of range in kind '" + s + "'");
    if (head == "pairA") return {KindTag::PairFirst, static_cast<uint8_t>(id)};
    if (head == "pairB") return {KindTag::PairSecond, static_cast<uint8_t>(id)};
  }
  throw ParseError("unknown kind '" + s + "'");
}

std::string kind_to_string(Kind k) {
  switch (k.tag) {
    case KindTag::Min: return "min";
    case KindTag::Saddle: return "saddle";
    case KindTag::Max: return "max";
    case KindTag::PairFirst: return "pairA:" + std::to_string(k.pair_id);
    case KindTag::PairSecond: return "pairB:" + std::to_string(k.pair_id);
  }
  return "?";
}

int real_count(const VirtualMorsification& vm) {
  int n = 0;
  for (const Kind& k : vm.kinds) n += k.is_real();
  return n;
}

int real_index(const VirtualMorsification& vm, int p) {
  if (!vm.kinds[p].is_real()) return 0;
  int n = 0;
  for (int i = 0; i <= p; ++i) n += vm.kinds[i].is_real();
  return n;
}

bool is_negative_side(const VirtualMorsification& vm, int p) {
  return real_index(vm, p) <= vm.q;
}

std::vector<std::string> validate(const VirtualMorsification& vm) {
  std::vector<std::string> out;
  const int mu = vm.mu;
  if (mu < 1 || mu > kMaxMu) {
    out.push_back("mu out of range");
    return out;
  }
  if (static_cast<int>(vm.kinds.size()) != mu) out.push_back("kinds size != mu");
  if (vm.A.size() != static_cast<size_t>(mu) * mu) out.push_back("matrix size != mu");
  if (static_cast<int>(vm.r.size()) != mu) out.push_back("r size != mu");
  if (!out.empty()) return out;

  bool sym = true, diag = true;
  for (int i = 0; i < mu; ++i) {
    if (vm.at(i, i) != -2) diag = false;
    for (int j = i + 1; j < mu; ++j)
      if (vm.at(i, j) != vm.at(j, i)) sym = false;
  }
  if (!sym) out.push_back("asymmetric matrix");
  if (!diag) out.push_back("diagonal entry != -2");

  int M = real_count(vm);
  if (vm.q < 0 || vm.q > M) out.push_back("neg_count out of range");

  // pair structure: PairFirst immediately followed by PairSecond, same id,
  // each id used exactly once
  int pairs = 0;
  bool pair_ok = true;
  std::vector<int> used_ids;
  for (int i = 0; i < mu; ++i) {
    KindTag t = vm.kinds[i].tag;
    if (t == KindTag::PairFirst) {
      if (i + 1 >= mu || vm.kinds[i + 1].tag != KindTag::PairSecond ||
          vm.kinds[i + 1].pair_id != vm.kinds[i].pair_id)
        pair_ok = false;
      else {
        used_ids.push_back(vm.kinds[i].pair_id);
        ++pairs;
        ++i;
      }
    } else if (t == KindTag::PairSecond) {
      pair_ok = false;
    }
  }
  std::sort(used_ids.begin(), used_ids.end());
  if (std::adjacent_find(used_ids.begin(), used_ids.end()) != used_ids.end())
    pair_ok = false;
  if (!pair_ok) out.push_back("malformed complex pair layout");
  if (pair_ok && M + 2 * pairs != mu) out.push_back("real/pair count mismatch");

  if (mu == kMaxMu) {
    if (M % 2 == 0) out.push_back("real count must be odd");
    TrivialInvariant t = trivial_invariant(vm);
    if (t.euler() != euler_of(vm.ptype)) out.push_back("Euler number mismatch");
  }
  return out;
}

namespace {

int64_t checked_add(int64_t a, int64_t b) {
  int64_t res;
  if (__builtin_add_overflow(a, b, &res)) throw CapExceeded("integer overflow in addition");
  return res;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t res;
  if (__builtin_mul_overflow(a, b, &res)) throw CapExceeded("integer overflow in multiplication");
  return res;
}

}  // namespace

void reflect_inplace(VirtualMorsification& vm, int moving, int center) {
  if (moving == center) throw InvalidArgument("reflect: moving == center");
  const int mu = vm.mu;
  const int64_t a = vm.at(moving, center);
  if (a == 0) return;
  for (int k = 0; k < mu; ++k) {
    if (k == moving) continue;
    int64_t v = checked_add(vm.at(moving, k), checked_mul(a, vm.at(center, k)));
    vm.at(moving, k) = v;
    vm.at(k, moving) = v;
  }
  vm.r[moving] = checked_add(vm.r[moving], checked_mul(a, vm.r[center]));
}

VirtualMorsification reflect(const VirtualMorsification& vm, int moving, int center) {
  VirtualMorsification out = vm;
  reflect_inplace(out, moving, center);
  return out;
}

TrivialInvariant trivial_invariant(const VirtualMorsification& vm) {
  TrivialInvariant t;
  for (const Kind& k : vm.kinds) {
    switch (k.tag) {
      case KindTag::Min: ++t.m_minus; break;
      case KindTag::Saddle: ++t.m_cross; break;
      case KindTag::Max: ++t.m_plus; break;
      default: break;
    }
  }
  t.M = t.m_minus + t.m_cross + t.m_plus;
  return t;
}

namespace {

void put_varint(std::string& out, int64_t v) {
  // zigzag + LEB128
  uint64_t z = (static_cast<uint64_t>(v) << 1) ^ static_cast<uint64_t>(v >> 63);
  do {
    uint8_t byte = z & 0x7f;
    z >>= 7;
    if (z) byte |= 0x80;
    out.push_back(static_cast<char>(byte));
  } while (z);
}

}  // namespace

std::string canonical_key(const VirtualMorsification& vm) {
  std::string out;
  out.reserve(16 + vm.mu * vm.mu);
  out.push_back(static_cast<char>(vm.mu));
  out.push_back(static_cast<char>(vm.ptype));
  out.push_back(static_cast<char>(vm.q));
  for (const Kind& k : vm.kinds) {
    out.push_back(static_cast<char>(k.tag));
    out.push_back(static_cast<char>(k.pair_id));
  }
  for (int i = 0; i < vm.mu; ++i)
    for (int j = i + 1; j < vm.mu; ++j) put_varint(out, vm.at(i, j));
  for (int64_t v : vm.r) put_varint(out, v);
  return out;
}

std::string serialize(const VirtualMorsification& vm) {
  json j;
  j["mu"] = vm.mu;
  j["ptype"] = ptype_name(vm.ptype);
  j["q"] = vm.q;
  json kinds = json::array();
  for (const Kind& k : vm.kinds) kinds.push_back(kind_to_string(k));
  j["kinds"] = kinds;
  json rows = json::array();
  for (int i = 0; i < vm.mu; ++i) {
    json row = json::array();
    for (int k = 0; k < vm.mu; ++k) row.push_back(vm.at(i, k));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  j["r"] = vm.r;
  return j.dump();
}

VirtualMorsification parse_state(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("state: invalid JSON: ") + e.what());
  }
  VirtualMorsification vm;
  try {
    vm.mu = j.at("mu").get<int>();
    std::string pt = j.at("ptype").get<std::string>();
    if (!ptype_from_name(pt, vm.ptype)) throw ParseError("state: unknown ptype '" + pt + "'");
    vm.q = j.at("q").get<int>();
    for (const auto& ks : j.at("kinds"))
      vm.kinds.push_back(kind_from_string(ks.get<std::string>()));
    const auto& rows = j.at("matrix");
    if (static_cast<int>(rows.size()) != vm.mu) throw ParseError("state: matrix size != mu");
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != vm.mu) throw ParseError("state: matrix size != mu");
      for (const auto& x : row) {
        if (!x.is_number_integer()) throw ParseError("state: non-integer matrix entry");
        vm.A.push_back(x.get<int64_t>());
      }
    }
    for (const auto& x : j.at("r")) {
      if (!x.is_number_integer()) throw ParseError("state: non-integer r entry");
      vm.r.push_back(x.get<int64_t>());
    }
    if (static_cast<int>(vm.kinds.size()) != vm.mu) throw ParseError("state: kinds size != mu");
    if (static_cast<int>(vm.r.size()) != vm.mu) throw ParseError("state: r size != mu");
  } catch (const json::exception& e) {
    throw ParseError(std::string("state: missing or mistyped field: ") + e.what());
  }
  return vm;
}

int64_t exact_det(const VirtualMorsification& vm) {
  // Bareiss fraction-free elimination over __int128 with range checking.
  const int n = vm.mu;
  std::vector<__int128> m(vm.A.begin(), vm.A.end());
  auto at = [&](int i, int j) -> __int128& { return m[static_cast<size_t>(i) * n + j]; };
  auto check = [](__int128 v) {
    constexpr __int128 lim = static_cast<__int128>(1) << 100;
    if (v > lim || v < -lim) throw CapExceeded("determinant overflow");
    return v;
  };
  int sign = 1;
  __int128 prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        at(i, j) = check(at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  __int128 det = at(n - 1, n - 1) * sign;
  if (det > INT64_MAX || det < INT64_MIN) throw CapExceeded("determinant overflow");
  return static_cast<int64_t>(det);
}

}  // namespace mc
