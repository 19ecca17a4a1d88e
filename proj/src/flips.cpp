#include "morsecensus/flips.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mc {

const char* flip_kind_name(FlipKind k) {
  switch (k) {
    case FlipKind::W1RealSwap: return "W1";
    case FlipKind::W2ZeroTransition: return "W2";
    case FlipKind::W3PairPastReal: return "W3";
    case FlipKind::W4PairPastPair: return "W4";
    case FlipKind::W5PairMemberSwap: return "W5";
    case FlipKind::T1Death: return "T1";
    case FlipKind::T2Birth: return "T2";
  }
  return "?";
}

namespace {

struct KV {
  const char* key;
  int64_t FlipConfig::* i64 = nullptr;
  uint64_t FlipConfig::* u64 = nullptr;
  bool FlipConfig::* b = nullptr;
  int FlipConfig::* i = nullptr;
};

const KV kConfigKeys[] = {
    {"v1_allow_straddle", nullptr, nullptr, &FlipConfig::v1_allow_straddle},
    {"v2_r_correction", nullptr, nullptr, &FlipConfig::v2_r_correction},
    {"v3_both_members", nullptr, nullptr, &FlipConfig::v3_both_members},
    {"v4_corresponding", nullptr, nullptr, &FlipConfig::v4_corresponding},
    {"v5_merge_rows", nullptr, nullptr, &FlipConfig::v5_merge_rows},
    {"v6_require_r", nullptr, nullptr, &FlipConfig::v6_require_r},
    {"max_abs_entry", &FlipConfig::max_abs_entry},
    {"max_states", nullptr, &FlipConfig::max_states},
    {"acampo_min_sign", nullptr, nullptr, nullptr, &FlipConfig::acampo_min_sign},
    {"acampo_max_sign", nullptr, nullptr, nullptr, &FlipConfig::acampo_max_sign},
    {"acampo_max_r", nullptr, nullptr, nullptr, &FlipConfig::acampo_max_r},
};

std::string render_config(const FlipConfig& c, char sep) {
  std::ostringstream os;
  bool first = true;
  for (const KV& kv : kConfigKeys) {
    if (!first) os << sep;
    first = false;
    os << kv.key << '=';
    if (kv.b) os << (c.*(kv.b) ? 1 : 0);
    else if (kv.i64) os << c.*(kv.i64);
    else if (kv.u64) os << c.*(kv.u64);
    else os << c.*(kv.i);
  }
  return os.str();
}

FlipConfig scan_config(const std::string& text, char sep) {
  FlipConfig c;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line, sep)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config: missing '=' in '" + line + "'");
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    bool found = false;
    for (const KV& kv : kConfigKeys) {
      if (key != kv.key) continue;
      found = true;
      try {
        if (kv.b) c.*(kv.b) = std::stoll(val) != 0;
        else if (kv.i64) c.*(kv.i64) = std::stoll(val);
        else if (kv.u64) c.*(kv.u64) = std::stoull(val);
        else c.*(kv.i) = static_cast<int>(std::stoll(val));
      } catch (...) {
        throw ParseError("config: bad value for '" + key + "'");
      }
    }
    if (!found) throw ParseError("config: unknown key '" + key + "'");
  }
  return c;
}

}  // namespace

std::string serialize_config(const FlipConfig& c) { return render_config(c, '\n') + "\n"; }
FlipConfig parse_config(const std::string& text) { return scan_config(text, '\n'); }
std::string config_inline(const FlipConfig& c) { return render_config(c, ';'); }
FlipConfig parse_config_inline(const std::string& text) { return scan_config(text, ';'); }

namespace {

bool is_pair_at(const VirtualMorsification& vm, int i) {
  return i + 1 < vm.mu && vm.kinds[i].tag == KindTag::PairFirst &&
         vm.kinds[i + 1].tag == KindTag::PairSecond &&
         vm.kinds[i + 1].pair_id == vm.kinds[i].pair_id;
}

bool same_side(const VirtualMorsification& vm, int i, int j) {
  return is_negative_side(vm, i) == is_negative_side(vm, j);
}

int reals_before(const VirtualMorsification& vm, int p) {
  int n = 0;
  for (int i = 0; i < p; ++i) n += vm.kinds[i].is_real();
  return n;
}

// Exchanges positions i and j in all data (rows/columns, r, kinds).
void transpose_positions(VirtualMorsification& vm, int i, int j) {
  const int mu = vm.mu;
  for (int k = 0; k < mu; ++k) std::swap(vm.at(i, k), vm.at(j, k));
  for (int k = 0; k < mu; ++k) std::swap(vm.at(k, i), vm.at(k, j));
  std::swap(vm.r[i], vm.r[j]);
  std::swap(vm.kinds[i], vm.kinds[j]);
}

// perm[new_pos] = old_pos
void permute_positions(VirtualMorsification& vm, const std::vector<int>& perm) {
  const int mu = vm.mu;
  VirtualMorsification src = vm;
  for (int i = 0; i < mu; ++i) {
    vm.kinds[i] = src.kinds[perm[i]];
    vm.r[i] = src.r[perm[i]];
    for (int j = 0; j < mu; ++j) vm.at(i, j) = src.at(perm[i], perm[j]);
  }
}

struct Applicability {
  bool ok = false;
  std::string why;  // failed condition when !ok
};

Applicability applicable(const VirtualMorsification& vm, const FlipInstance& f,
                         const FlipConfig& cfg) {
  const int i = f.pos, mu = vm.mu;
  auto fail = [](const char* msg) { return Applicability{false, msg}; };
  switch (f.kind) {
    case FlipKind::W1RealSwap: {
      if (i < 0 || i + 1 >= mu) return fail("W1: position out of range");
      if (!vm.kinds[i].is_real() || !vm.kinds[i + 1].is_real())
        return fail("W1: positions not both real");
      if (vm.at(i, i + 1) != 0) return fail("W1: nonzero intersection index");
      if (!cfg.v1_allow_straddle && !same_side(vm, i, i + 1))
        return fail("W1: values straddle zero");
      return {true, {}};
    }
    case FlipKind::W2ZeroTransition: {
      const int M = real_count(vm);
      if (f.selector == 1) {
        if (vm.q >= M) return fail("W2: q already at maximum");
      } else if (f.selector == -1) {
        if (vm.q <= 0) return fail("W2: q already zero");
      } else {
        return fail("W2: selector must be +1 or -1");
      }
      return {true, {}};
    }
    case FlipKind::W3PairPastReal: {
      if (!is_pair_at(vm, i)) return fail("W3: no complex pair at position");
      int j = f.selector == 1 ? i + 2 : i - 1;
      if (f.selector != 1 && f.selector != -1) return fail("W3: selector must be +1 or -1");
      if (j < 0 || j >= mu || !vm.kinds[j].is_real())
        return fail("W3: no adjacent real value on that side");
      return {true, {}};
    }
    case FlipKind::W4PairPastPair: {
      if (f.selector != 1 && f.selector != -1) return fail("W4: selector must be +1 or -1");
      if (!is_pair_at(vm, i) || !is_pair_at(vm, i + 2))
        return fail("W4: no two adjacent complex pairs");
      return {true, {}};
    }
    case FlipKind::W5PairMemberSwap: {
      if (!is_pair_at(vm, i)) return fail("W5: no complex pair at position");
      if (vm.at(i, i + 1) != 0) return fail("W5: nonzero intersection index");
      return {true, {}};
    }
    case FlipKind::T1Death: {
      if (i < 0 || i + 1 >= mu) return fail("T1: position out of range");
      if (!vm.kinds[i].is_real() || !vm.kinds[i + 1].is_real())
        return fail("T1: positions not both real");
      if (std::abs(vm.kinds[i].morse_index() - vm.kinds[i + 1].morse_index()) != 1)
        return fail("T1: Morse indices do not differ by 1");
      if (std::abs(vm.at(i, i + 1)) != 1) return fail("T1: |intersection index| != 1");
      if (!same_side(vm, i, i + 1)) return fail("T1: values straddle zero");
      return {true, {}};
    }
    case FlipKind::T2Birth: {
      if (!is_pair_at(vm, i)) return fail("T2: no complex pair at position");
      if (std::abs(vm.at(i, i + 1)) != 1) return fail("T2: |intersection index| != 1");
      if (cfg.v6_require_r &&
          (std::abs(vm.r[i]) != 2 || std::abs(vm.r[i + 1]) != 2))
        return fail("T2: |r| != 2 on a born point");
      if (reals_before(vm, i) < vm.q)
        return fail("T2: birth site not on the positive side");
      if (f.selector != 0 && f.selector != 1) return fail("T2: selector must be 0 or 1");
      return {true, {}};
    }
  }
  return fail("unknown flip kind");
}

}  // namespace

std::vector<FlipInstance> enumerate_flips(const VirtualMorsification& vm,
                                          const FlipConfig& config) {
  std::vector<FlipInstance> out;
  auto try_add = [&](FlipKind k, int pos, int sel) {
    FlipInstance f{k, pos, sel};
    if (applicable(vm, f, config).ok) out.push_back(f);
  };
  for (int i = 0; i + 1 < vm.mu; ++i) {
    try_add(FlipKind::W1RealSwap, i, 0);
    try_add(FlipKind::W5PairMemberSwap, i, 0);
    try_add(FlipKind::W3PairPastReal, i, 1);
    try_add(FlipKind::W3PairPastReal, i, -1);
    try_add(FlipKind::W4PairPastPair, i, 1);
    try_add(FlipKind::W4PairPastPair, i, -1);
    try_add(FlipKind::T1Death, i, 0);
    try_add(FlipKind::T2Birth, i, 0);
    try_add(FlipKind::T2Birth, i, 1);
  }
  try_add(FlipKind::W2ZeroTransition, 0, 1);
  try_add(FlipKind::W2ZeroTransition, 0, -1);
  return out;
}

VirtualMorsification apply_flip(const VirtualMorsification& vm, const FlipInstance& flip,
                                const FlipConfig& config) {
  Applicability a = applicable(vm, flip, config);
  if (!a.ok) throw InvalidArgument("inapplicable flip: " + a.why);
  VirtualMorsification out = vm;
  const int i = flip.pos;
  switch (flip.kind) {
    case FlipKind::W1RealSwap:
    case FlipKind::W5PairMemberSwap:
      transpose_positions(out, i, i + 1);
      if (flip.kind == FlipKind::W5PairMemberSwap)
        std::swap(out.kinds[i], out.kinds[i + 1]);  // member contents move, labels stay
      break;
    case FlipKind::W2ZeroTransition: {
      out.q += flip.selector;
      if (config.v2_r_correction) {
        // the crossing point is the real value adjacent to zero on the moving side
        int want = flip.selector == 1 ? vm.q + 1 : vm.q;
        for (int p = 0; p < vm.mu; ++p)
          if (vm.kinds[p].is_real() && real_index(vm, p) == want) {
            out.r[p] = -out.r[p];
            break;
          }
      }
      break;
    }
    case FlipKind::W3PairPastReal: {
      const int j = flip.selector == 1 ? i + 2 : i - 1;
      reflect_inplace(out, i, j);
      if (config.v3_both_members) reflect_inplace(out, i + 1, j);
      std::vector<int> perm(vm.mu);
      for (int k = 0; k < vm.mu; ++k) perm[k] = k;
      if (flip.selector == 1) {
        perm[i] = i + 2; perm[i + 1] = i; perm[i + 2] = i + 1;
      } else {
        perm[i - 1] = i; perm[i] = i + 1; perm[i + 1] = i - 1;
      }
      permute_positions(out, perm);
      break;
    }
    case FlipKind::W4PairPastPair: {
      const int mv = flip.selector == 1 ? i : i + 2;
      const int ot = flip.selector == 1 ? i + 2 : i;
      if (config.v4_corresponding) {
        reflect_inplace(out, mv, ot);
        reflect_inplace(out, mv + 1, ot + 1);
      } else {
        reflect_inplace(out, mv, ot);
        reflect_inplace(out, mv, ot + 1);
        reflect_inplace(out, mv + 1, ot);
        reflect_inplace(out, mv + 1, ot + 1);
      }
      std::vector<int> perm(vm.mu);
      for (int k = 0; k < vm.mu; ++k) perm[k] = k;
      perm[i] = i + 2; perm[i + 1] = i + 3; perm[i + 2] = i; perm[i + 3] = i + 1;
      permute_positions(out, perm);
      break;
    }
    case FlipKind::T1Death: {
      const bool negative = is_negative_side(vm, i);
      if (config.v5_merge_rows) {
        const int64_t eps = out.at(i, i + 1);
        std::vector<int64_t> row(vm.mu);
        for (int k = 0; k < vm.mu; ++k) row[k] = out.at(i, k) + eps * out.at(i + 1, k);
        int64_t rr = out.r[i] + eps * out.r[i + 1];
        for (int k = 0; k < vm.mu; ++k) {
          out.at(i, k) = out.at(i + 1, k) = row[k];
          out.at(k, i) = out.at(k, i + 1) = row[k];
        }
        out.at(i, i) = out.at(i + 1, i + 1) = -2;
        out.at(i, i + 1) = out.at(i + 1, i) = -2;
        out.r[i] = out.r[i + 1] = rr;
      }
      uint8_t id = 0;
      for (bool taken = true; taken; ) {
        taken = false;
        for (const Kind& k : out.kinds)
          if (!k.is_real() && k.pair_id == id) { taken = true; ++id; break; }
      }
      out.kinds[i] = {KindTag::PairFirst, id};
      out.kinds[i + 1] = {KindTag::PairSecond, id};
      if (negative) out.q -= 2;
      break;
    }
    case FlipKind::T2Birth: {
      if (flip.selector == 0) {
        out.kinds[i] = {KindTag::Min, 0};
        out.kinds[i + 1] = {KindTag::Saddle, 0};
      } else {
        out.kinds[i] = {KindTag::Saddle, 0};
        out.kinds[i + 1] = {KindTag::Max, 0};
      }
      break;
    }
  }
  for (int64_t v : out.A)
    if (std::abs(v) > config.max_abs_entry)
      throw CapExceeded("matrix entry exceeds max_abs_entry");
  return out;
}

}  // namespace mc
