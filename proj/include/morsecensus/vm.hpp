#pragma once
// Core state type for the enumeration engine: integer intersection data of a
// collection of vanishing cycles, plus Morse bookkeeping.
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace mc {

constexpr int kMaxMu = 9;

enum class PrincipalType : uint8_t { X9Plus = 0, X9One = 1, X9Two = 2 };

// Expected Euler number m_- - m_x + m_+ for each principal type.
int euler_of(PrincipalType t);
const char* ptype_name(PrincipalType t);          // "x9plus" / "x9one" / "x9two"
bool ptype_from_name(const std::string& s, PrincipalType& out);

enum class KindTag : uint8_t { Min = 0, Saddle = 1, Max = 2, PairFirst = 3, PairSecond = 4 };

struct Kind {
  KindTag tag = KindTag::Min;
  uint8_t pair_id = 0;  // meaningful only for PairFirst/PairSecond

  bool is_real() const { return tag <= KindTag::Max; }
  int morse_index() const { return static_cast<int>(tag); }  // valid for real kinds
  bool operator==(const Kind&) const = default;
};

Kind kind_from_string(const std::string& s);  // throws ParseError
std::string kind_to_string(Kind k);

struct InvalidArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrivialInvariant {
  int M = 0, m_minus = 0, m_cross = 0, m_plus = 0;
  int euler() const { return m_minus - m_cross + m_plus; }
  bool operator==(const TrivialInvariant&) const = default;
};

// Virtual morsification: positions are ordered by critical value; members of a
// complex-conjugate pair occupy adjacent positions.  All indices in the API are
// 0-based; rendered reports use 1-based positions.
struct VirtualMorsification {
  int mu = 0;
  PrincipalType ptype = PrincipalType::X9Plus;
  int q = 0;                       // number of real critical values below zero
  std::vector<Kind> kinds;         // size mu
  std::vector<int64_t> A;          // row-major mu x mu, symmetric, diag -2
  std::vector<int64_t> r;          // size mu

  int64_t& at(int i, int j) { return A[static_cast<size_t>(i) * mu + j]; }
  int64_t at(int i, int j) const { return A[static_cast<size_t>(i) * mu + j]; }

  bool operator==(const VirtualMorsification&) const = default;
};

// Number of real entries in kinds.
int real_count(const VirtualMorsification& vm);
// 1-based index of the real point at position p among the reals (0 if not real).
int real_index(const VirtualMorsification& vm, int p);
// True when the real point at position p has a negative critical value.
bool is_negative_side(const VirtualMorsification& vm, int p);

// Returns one description per violated invariant, deterministic order,
// empty when valid.
std::vector<std::string> validate(const VirtualMorsification& vm);

// Picard-Lefschetz reflection of cycle `moving` in cycle `center`:
// Delta_m := Delta_m + A[m][c] * Delta_c.  Involutive; preserves det(A).
// Throws InvalidArgument when moving == center, CapExceeded when an entry
// leaves the checked 64-bit range.
VirtualMorsification reflect(const VirtualMorsification& vm, int moving, int center);
// In-place version used by the flip engine.
void reflect_inplace(VirtualMorsification& vm, int moving, int center);

TrivialInvariant trivial_invariant(const VirtualMorsification& vm);

// Injective, platform-stable byte encoding of the full state.
std::string canonical_key(const VirtualMorsification& vm);

// JSON text form (see README for the schema); parse throws ParseError on
// malformed input but leaves semantic checks to validate().
std::string serialize(const VirtualMorsification& vm);
VirtualMorsification parse_state(const std::string& text);

// Exact integer determinant (fraction-free elimination).  Throws CapExceeded
// on intermediate overflow.
int64_t exact_det(const VirtualMorsification& vm);

}  // namespace mc
