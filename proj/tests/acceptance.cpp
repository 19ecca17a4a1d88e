// Acceptance harness: prints one PASS/FAIL line per criterion and returns the
// number of failures.  Criteria that depend on a census that cannot be closed
// under the frozen configuration fail with a diagnostic instead of being
// skipped or approximated.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "morsecensus/acampo.hpp"
#include "morsecensus/dgraph.hpp"
#include "morsecensus/explore.hpp"
#include "morsecensus/fixtures.hpp"

using namespace mc;

namespace {

int g_failures = 0;

void report(int n, bool pass, const std::string& msg) {
  std::cout << "criterion " << n << ": " << (pass ? "PASS" : "FAIL") << " — " << msg
            << std::endl;
  if (!pass) ++g_failures;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string tmp_file(const char* name) {
  return std::string("/tmp/") + name;
}

struct CensusResult {
  bool closed = false;
  uint64_t states = 0;
  Spectrum actual;
  std::vector<SubsetRecord> subsets;
  std::string note;
};

// Attempt one census with a cap high enough that hitting it is conclusive
// evidence the universe is larger than the published total.
CensusResult run_census(const std::vector<VirtualMorsification>& seeds,
                        const FlipConfig& base, uint64_t expected_total,
                        Universe* keep = nullptr) {
  FlipConfig cfg = base;
  cfg.max_states = expected_total + 10000;
  CensusResult res;
  Universe u = close_universe(seeds, cfg);
  res.closed = u.closed;
  res.states = u.states.size();
  if (u.closed) {
    res.subsets = partition_subsets(u);
    res.actual = spectrum(res.subsets);
  } else {
    res.note = u.stop_reason;
  }
  if (keep) *keep = std::move(u);
  return res;
}

std::string census_verdict(const CensusResult& res, const Spectrum& expected,
                           uint64_t expected_total, size_t expected_subsets,
                           bool* pass) {
  *pass = false;
  std::ostringstream os;
  if (!res.closed) {
    os << "universe did not close below " << (expected_total + 10000)
       << " states (" << res.note << "); the published census has "
       << expected_total << " states and is not reproduced";
    return os.str();
  }
  if (res.states != expected_total || res.subsets.size() != expected_subsets) {
    os << "closed with " << res.states << " states in " << res.subsets.size()
       << " subsets; expected " << expected_total << " in " << expected_subsets;
    return os.str();
  }
  CompareReport rep = compare_spectrum(res.actual, expected);
  if (!rep.pass) {
    os << "state and subset counts match but " << rep.diffs.size()
       << " spectrum cell(s) differ";
    return os.str();
  }
  *pass = true;
  os << expected_total << " states, " << expected_subsets
     << " subsets, spectrum matches";
  return os.str();
}

bool spectrum_has_duality(const Spectrum& s, int shift_kind) {
  // shift_kind 0: m+ -> floor(M/2) - m+;  1: m+ -> floor(M/2) - 1 - m+
  for (const auto& [cell, cards] : s) {
    int mirror = cell.first / 2 - shift_kind - cell.second;
    auto it = s.find({cell.first, mirror});
    if (it == s.end() || it->second != cards) return false;
  }
  return true;
}

VirtualMorsification a2_seed() {
  VirtualMorsification vm;
  vm.mu = 2;
  vm.ptype = PrincipalType::X9Plus;
  vm.q = 1;
  vm.kinds = {{KindTag::Min, 0}, {KindTag::Saddle, 0}};
  vm.A = {-2, 1, 1, -2};
  vm.r = {2, -2};
  return vm;
}

VirtualMorsification random_valid_state(std::mt19937& rng) {
  std::uniform_int_distribution<int> entry(-2, 2);
  VirtualMorsification vm;
  vm.mu = 9;
  vm.ptype = PrincipalType::X9Plus;
  for (int i = 0; i < 4; ++i) vm.kinds.push_back({KindTag::Min, 0});
  for (int i = 0; i < 3; ++i) vm.kinds.push_back({KindTag::Saddle, 0});
  vm.kinds.push_back({KindTag::PairFirst, 0});
  vm.kinds.push_back({KindTag::PairSecond, 0});
  vm.q = static_cast<int>(rng() % 8);
  vm.A.assign(81, 0);
  for (int i = 0; i < 9; ++i) {
    vm.at(i, i) = -2;
    for (int j = i + 1; j < 9; ++j) vm.at(i, j) = vm.at(j, i) = entry(rng);
  }
  for (int i = 0; i < 9; ++i) vm.r.push_back(entry(rng));
  return vm;
}

}  // namespace

int main(int argc, char** argv) {
  std::string data = argc > 1 ? argv[1] : "data";
  FlipConfig cfg;
  try {
    cfg = parse_config(read_file(data + "/config/default.cfg"));
  } catch (const std::exception& e) {
    std::cout << "cannot load frozen configuration: " << e.what() << std::endl;
    return 1;
  }

  // ---- criterion 1: X9+ census from the two stock seeds -------------------
  Universe x9p_partial;  // retained (closed or not) for criteria 5 and 7
  CensusResult c1;
  Spectrum exp1;
  try {
    exp1 = parse_spectrum_csv(read_file(data + "/expected/x9plus.csv"));
    c1 = run_census({fixture_state("x9plus-m7-a"), fixture_state("x9plus-m7-b")},
                    cfg, 27120, &x9p_partial);
    bool pass = false;
    std::string msg = census_verdict(c1, exp1, 27120, 12, &pass);
    if (pass) {
      // both seeds must land in (7,0) subsets of Cards {2528, 2912}
      std::multiset<uint64_t> seed_cards;
      for (const auto& sub : c1.subsets)
        for (uint32_t sid : x9p_partial.seed_ids)
          for (uint32_t m : sub.members)
            if (m == sid) seed_cards.insert(sub.card);
      if (seed_cards != std::multiset<uint64_t>{2528, 2912}) {
        pass = false;
        msg = "spectrum matches but the seed subsets do not have Cards {2528, 2912}";
      }
    }
    report(1, pass, msg);
  } catch (const std::exception& e) {
    report(1, false, std::string("error: ") + e.what());
  }

  // ---- criteria 2 and 3: X9^1 / X9^2 censuses from divide-built seeds -----
  CensusResult c2, c3;
  Universe x9one_u, x9two_u;
  try {
    auto d = parse_divide(read_file(data + "/divides/x9one-lines-in-ellipse.json"));
    Spectrum exp2 = parse_spectrum_csv(read_file(data + "/expected/x9one.csv"));
    c2 = run_census({build_seed(d, cfg)}, cfg, 132636, &x9one_u);
    bool pass = false;
    std::string msg = census_verdict(c2, exp2, 132636, 21, &pass);
    report(2, pass, msg);
  } catch (const std::exception& e) {
    report(2, false, std::string("error: ") + e.what());
  }
  try {
    auto d = parse_divide(read_file(data + "/divides/x9two-four-lines.json"));
    Spectrum exp3 = parse_spectrum_csv(read_file(data + "/expected/x9two.csv"));
    c3 = run_census({build_seed(d, cfg)}, cfg, 134048, &x9two_u);
    bool pass = false;
    std::string msg = census_verdict(c3, exp3, 134048, 14, &pass);
    report(3, pass, msg);
  } catch (const std::exception& e) {
    report(3, false, std::string("error: ") + e.what());
  }

  // ---- criterion 4: Dynkin splittings of the computed (9,0) D-graphs ------
  try {
    if (!c1.closed || !c2.closed || !c3.closed) {
      report(4, false,
             "not evaluable: requires the closed X9+/X9^1/X9^2 censuses of "
             "criteria 1-3, which are unavailable under the frozen configuration");
    } else {
      auto top_graphs = [](const CensusResult& c, const Universe& u) {
        std::vector<DGraph> out;
        for (const auto& sub : c.subsets)
          if (sub.signature.M == 9 && sub.signature.m_plus == 0 && sub.dgraph_key)
            out.push_back(extract_dgraph(u.states[sub.members.front()]));
        return out;
      };
      int a54 = 0, a3e6 = 0, both = 0;
      for (const DGraph& g : top_graphs(c1, x9p_partial)) {
        bool s54 = !ade_split(g, parse_ade("A5"), parse_ade("A4")).empty();
        bool s36 = !ade_split(g, parse_ade("A3"), parse_ade("E6")).empty();
        a54 += s54;
        a3e6 += s36;
        both += s54 && s36;
      }
      int e7 = 0;
      for (const DGraph& g : top_graphs(c2, x9one_u))
        e7 += contains_subdiagram(g, parse_ade("E7"));
      int d6a3 = 0;
      for (const DGraph& g : top_graphs(c3, x9two_u))
        d6a3 += !ade_split(g, parse_ade("D6"), parse_ade("A3")).empty();
      bool pass = a54 == 1 && a3e6 == 1 && both == 0 && e7 == 1 && d6a3 == 1;
      std::ostringstream os;
      os << "(A5,A4): " << a54 << ", (A3,E6): " << a3e6 << ", both: " << both
         << ", E7 subdiagrams: " << e7 << ", (D6,A3): " << d6a3;
      report(4, pass, os.str());
    }
  } catch (const std::exception& e) {
    report(4, false, std::string("error: ") + e.what());
  }

  // ---- criterion 5: D-graph invariance across each all-real subset --------
  try {
    uint64_t checked = 0;
    bool ok = true;
    auto check_universe = [&](const Universe& u) {
      for (const auto& sub : partition_subsets(u)) {
        if (!sub.dgraph_key) continue;
        for (uint32_t m : sub.members) {
          if (canonical_dgraph(extract_dgraph(u.states[m])) != *sub.dgraph_key)
            ok = false;
          ++checked;
        }
      }
    };
    Universe a2 = close_universe({a2_seed()}, cfg);
    check_universe(a2);
    check_universe(x9p_partial);  // partial census still partitions W-components
    std::ostringstream os;
    os << (ok ? "single canonical D-graph per all-real subset, " : "violated, ")
       << checked << " member states checked"
       << (c1.closed ? "" : " (X9+ universe partial under the frozen configuration)");
    report(5, ok && checked > 1000, os.str());
  } catch (const std::exception& e) {
    report(5, false, std::string("error: ") + e.what());
  }

  // ---- criterion 6: Card = 10 x linear extensions -------------------------
  try {
    if (!c1.closed) {
      // sub-result on the closed toy universe: Card = (M+1) x extensions
      Universe a2 = close_universe({a2_seed()}, cfg);
      bool toy_ok = true;
      for (const auto& sub : partition_subsets(a2)) {
        if (!sub.dgraph_key) continue;
        DGraph g = extract_dgraph(a2.states[sub.members.front()]);
        if (sub.card !=
            static_cast<uint64_t>(sub.signature.M + 1) * linear_extensions(g))
          toy_ok = false;
      }
      std::ostringstream os;
      os << "not evaluable on the X9+ census (unavailable); sub-result: Card = "
            "(M+1) x extensions "
         << (toy_ok ? "holds" : "fails") << " on the mu=2 closure";
      report(6, false, os.str());
    } else {
      bool ok = true;
      std::multiset<uint64_t> le90;
      for (const auto& sub : c1.subsets) {
        if (!sub.dgraph_key) continue;
        DGraph g = extract_dgraph(x9p_partial.states[sub.members.front()]);
        uint64_t le = linear_extensions(g);
        if (sub.card != 10 * le) ok = false;
        if (sub.signature.M == 9 && sub.signature.m_plus == 0) le90.insert(le);
      }
      ok = ok && le90 == std::multiset<uint64_t>{246, 622, 732};
      report(6, ok, "Card = 10 x extensions across all-real subsets; (9,0) counts checked");
    }
  } catch (const std::exception& e) {
    report(6, false, std::string("error: ") + e.what());
  }

  // ---- criterion 7: Euler relation, Card divisibility, det constancy ------
  try {
    bool ok = true;
    uint64_t states_checked = 0;
    auto check_states = [&](const Universe& u) {
      if (u.states.empty()) return;
      int64_t d0 = exact_det(u.states.front());
      int expect_euler = 0;
      switch (u.ptype) {
        case PrincipalType::X9Plus: expect_euler = 1; break;
        case PrincipalType::X9One: expect_euler = -1; break;
        case PrincipalType::X9Two: expect_euler = -3; break;
      }
      for (const auto& s : u.states) {
        if (s.mu == 9 && trivial_invariant(s).euler() != expect_euler) ok = false;
        if (exact_det(s) != d0) ok = false;
        ++states_checked;
      }
    };
    check_states(x9p_partial);
    Universe a2 = close_universe({a2_seed()}, cfg);
    check_states(a2);
    for (const auto& sub : partition_subsets(a2))
      if (sub.card % (sub.signature.M + 1) != 0) ok = false;
    for (const auto& sub : partition_subsets(x9p_partial))
      if (c1.closed && sub.card % (sub.signature.M + 1) != 0) ok = false;
    std::ostringstream os;
    os << "Euler relation and det constancy on " << states_checked << " states"
       << (c1.closed ? "; Card divisibility on the closed census"
                     : "; Card divisibility only on closed universes "
                       "(X9+ census unavailable)");
    report(7, ok && states_checked > 1000, os.str());
  } catch (const std::exception& e) {
    report(7, false, std::string("error: ") + e.what());
  }

  // ---- criterion 8: negation duality of the computed spectra --------------
  try {
    if (!c2.closed || !c3.closed) {
      Spectrum e2 = parse_spectrum_csv(read_file(data + "/expected/x9one.csv"));
      Spectrum e3 = parse_spectrum_csv(read_file(data + "/expected/x9two.csv"));
      bool tables = spectrum_has_duality(e2, 0) && spectrum_has_duality(e3, 1);
      std::ostringstream os;
      os << "not evaluable on computed spectra (censuses unavailable); "
            "sub-result: the expected tables "
         << (tables ? "do" : "do not") << " satisfy the duality";
      report(8, false, os.str());
    } else {
      bool ok = spectrum_has_duality(c2.actual, 0) && spectrum_has_duality(c3.actual, 1);
      report(8, ok, "computed X9^1 and X9^2 spectra are duality-symmetric");
    }
  } catch (const std::exception& e) {
    report(8, false, std::string("error: ") + e.what());
  }

  // ---- criterion 9: arithmetic kernel and determinism ---------------------
  try {
    bool ok = true;
    std::mt19937 rng(2026);
    for (int t = 0; t < 10000 && ok; ++t) {
      auto vm = random_valid_state(rng);
      int m = static_cast<int>(rng() % 9), c = static_cast<int>(rng() % 9);
      if (m == c) c = (c + 1) % 9;
      auto once = reflect(vm, m, c);
      if (exact_det(once) != exact_det(vm)) ok = false;       // isometry
      if (reflect(once, m, c) != vm) ok = false;              // involution
      if (parse_state(serialize(vm)) != vm) ok = false;       // lossless
    }
    // snapshot round-trip + thread independence on closures
    Universe u1 = close_universe({a2_seed()}, cfg, 1);
    Universe u4 = close_universe({a2_seed()}, cfg, 4);
    auto p1 = tmp_file("mc_acc_t1.snap"), p4 = tmp_file("mc_acc_t4.snap");
    save_snapshot(u1, p1);
    save_snapshot(u4, p4);
    if (read_file(p1) != read_file(p4)) ok = false;
    Universe back = load_snapshot(p1);
    if (back.states.size() != u1.states.size() || back.edges.size() != u1.edges.size())
      ok = false;
    // a capped nine-cycle closure must also be thread-count independent
    FlipConfig small = cfg;
    small.max_states = 20000;
    Universe w1 = close_universe({fixture_state("x9plus-m7-a")}, small, 1);
    Universe w3 = close_universe({fixture_state("x9plus-m7-a")}, small, 3);
    auto q1 = tmp_file("mc_acc_w1.snap"), q3 = tmp_file("mc_acc_w3.snap");
    save_snapshot(w1, q1);
    save_snapshot(w3, q3);
    if (read_file(q1) != read_file(q3)) ok = false;
    report(9, ok,
           "involution/isometry on 10000 random states; lossless round-trips; "
           "thread-independent closures (including capped)");
  } catch (const std::exception& e) {
    report(9, false, std::string("error: ") + e.what());
  }

  // ---- criterion 10: caps and honest verification -------------------------
  try {
    bool ok = true;
    FlipConfig capped = cfg;
    capped.max_states = 3;
    Universe u = close_universe({a2_seed()}, capped);
    if (u.closed || u.frontier.empty() || u.stop_reason.empty()) ok = false;
    auto p = tmp_file("mc_acc_cap.snap");
    save_snapshot(u, p);
    Universe resumed = load_snapshot(p);
    resumed.config.max_states = 1000;
    continue_closure(resumed);
    if (!resumed.closed || resumed.states.size() != 7) ok = false;
    // verify must reject a universe containing subsets absent from the table
    Universe full = close_universe({a2_seed()}, cfg);
    Spectrum actual = spectrum(partition_subsets(full));
    Spectrum missing = actual;
    missing.erase({0, 0});  // drop the complex-pair subset from the "table"
    if (compare_spectrum(actual, missing).pass) ok = false;
    report(10, ok,
           "cap produces a resumable partial snapshot; extra subsets are "
           "reported as mismatches");
  } catch (const std::exception& e) {
    report(10, false, std::string("error: ") + e.what());
  }

  std::cout << g_failures << " criterion(s) failed" << std::endl;
  return g_failures;
}
