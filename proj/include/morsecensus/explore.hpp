#pragma once
// Universe closure, rigid-isotopy partition, spectra and snapshots.
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "morsecensus/flips.hpp"
#include "morsecensus/vm.hpp"

namespace mc {

struct Edge {
  uint32_t a = 0, b = 0;  // state ids, a < b
  FlipKind kind = FlipKind::W1RealSwap;
  bool operator==(const Edge&) const = default;
  bool operator<(const Edge& o) const {
    return std::tie(a, b, kind) < std::tie(o.a, o.b, o.kind);
  }
};

struct Universe {
  PrincipalType ptype = PrincipalType::X9Plus;
  FlipConfig config;
  std::vector<VirtualMorsification> states;  // index = state id
  std::unordered_map<std::string, uint32_t> index;  // canonical_key -> id
  std::vector<Edge> edges;
  std::vector<uint32_t> seed_ids;
  bool closed = false;
  std::vector<uint32_t> frontier;  // unexpanded states when !closed
  std::string stop_reason;         // diagnostic when !closed
};

struct SubsetRecord {
  uint32_t id = 0;              // dense subset index, deterministic
  uint64_t card = 0;            // number of member states
  TrivialInvariant signature;   // shared by all members
  std::string representative;   // smallest canonical key in the subset
  std::vector<uint32_t> members;
  std::optional<std::string> dgraph_key;  // canonical D-graph when all-real
};

// (M, m_plus) -> sorted multiset of Card values.
using Spectrum = std::map<std::pair<int, int>, std::vector<uint64_t>>;

struct CompareReport {
  bool pass = false;
  struct CellDiff {
    int M, m_plus;
    std::vector<uint64_t> actual, expected;
  };
  std::vector<CellDiff> diffs;
  std::string render() const;  // human-readable summary
};

// Breadth-first closure under all seven flip kinds.  Deterministic content for
// any thread count.  When a cap is hit the returned universe has closed=false,
// a populated frontier and stop_reason (no exception: partial progress is the
// diagnostic).
Universe close_universe(const std::vector<VirtualMorsification>& seeds,
                        const FlipConfig& config, int threads = 1);
// Continue the closure of a partial universe (e.g. loaded from a snapshot),
// honoring u.config caps.
void continue_closure(Universe& u, int threads = 1);

std::vector<SubsetRecord> partition_subsets(const Universe& u);

Spectrum spectrum(const std::vector<SubsetRecord>& partition);

CompareReport compare_spectrum(const Spectrum& actual, const Spectrum& expected);

// Spectrum CSV: header "M,m_plus,card", one row per subset, sorted.
std::string spectrum_csv(const Spectrum& s);
Spectrum parse_spectrum_csv(const std::string& text);  // throws ParseError
// Markdown table mirroring the published layout (rows m_plus, columns M).
std::string spectrum_markdown(const Spectrum& s);

// Versioned, checksummed snapshot of a universe + its partition.  Byte-stable:
// states are written in canonical-key order regardless of discovery order.
void save_snapshot(const Universe& u, const std::string& path);
Universe load_snapshot(const std::string& path);  // throws ParseError / io errors

// Exhaustive sweep over candidate configurations; returns those whose closed
// universe reproduces `expected` exactly.  Configurations that hit caps are
// reported in `log` (if given) and never match.
std::vector<FlipConfig> calibrate(const std::vector<VirtualMorsification>& seeds,
                                  const Spectrum& expected,
                                  const std::vector<FlipConfig>& variation_space,
                                  int threads = 1, std::string* log = nullptr);

// The product space of all V1-V6 switch combinations over the given caps.
std::vector<FlipConfig> full_variation_space(const FlipConfig& base);

}  // namespace mc
