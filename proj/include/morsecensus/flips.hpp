#pragma once
// Elementary flips of virtual morsifications.  W-flips stay within a rigid
// isotopy subset; T-flips change the (M, m_-, m_x, m_+) type.
#include <string>
#include <vector>

#include "morsecensus/vm.hpp"

namespace mc {

enum class FlipKind : uint8_t {
  W1RealSwap = 0,
  W2ZeroTransition = 1,
  W3PairPastReal = 2,
  W4PairPastPair = 3,
  W5PairMemberSwap = 4,
  T1Death = 5,
  T2Birth = 6,
};

inline bool is_within_subset(FlipKind k) { return k <= FlipKind::W5PairMemberSwap; }
const char* flip_kind_name(FlipKind k);

struct FlipInstance {
  FlipKind kind;
  int pos = 0;  // leftmost position the flip acts on (unused for W2)
  // W2: +1 / -1 (q up / down).  W3: +1 pair moves toward higher values, -1 lower.
  // W4: +1 the left pair is the moving one, -1 the right pair.
  // T2: 0 -> (Min, Saddle), 1 -> (Saddle, Max).  Otherwise 0.
  int selector = 0;

  bool operator==(const FlipInstance&) const = default;
};

// Variation points V1-V6 plus enumeration caps and divide-seeding conventions.
// Defaults are the frozen repository configuration.
struct FlipConfig {
  bool v1_allow_straddle = false;  // W1 across the zero boundary
  bool v2_r_correction = false;    // W2 also negates r of the crossing point
  bool v3_both_members = true;     // W3 reflects both pair members (vs upper only)
  bool v4_corresponding = true;    // W4 member-to-corresponding-member (vs both-in-both)
  bool v5_merge_rows = false;      // T1 replaces pair rows by row_i + eps*row_{i+1}
  bool v6_require_r = false;       // T2 additionally requires |r| = 2 on both points

  int64_t max_abs_entry = 64;
  uint64_t max_states = 2000000;

  int acampo_min_sign = 1;   // sign of minimum-region / saddle entries
  int acampo_max_sign = -1;  // sign of maximum-region / saddle entries
  int acampo_max_r = 2;      // r value assigned to maximum regions

  bool operator==(const FlipConfig&) const = default;
};

std::string serialize_config(const FlipConfig& c);        // flat key=value lines
FlipConfig parse_config(const std::string& text);         // throws ParseError
std::string config_inline(const FlipConfig& c);           // "k=v;k=v;..." one-liner
FlipConfig parse_config_inline(const std::string& text);  // throws ParseError

// All applicable flips under the catalog, deterministic order.
std::vector<FlipInstance> enumerate_flips(const VirtualMorsification& vm,
                                          const FlipConfig& config);

// Applies one flip.  Throws InvalidArgument when the flip's precondition does
// not hold (the message names the failed condition) and CapExceeded when a
// matrix entry would exceed config.max_abs_entry.
VirtualMorsification apply_flip(const VirtualMorsification& vm, const FlipInstance& flip,
                                const FlipConfig& config);

}  // namespace mc
