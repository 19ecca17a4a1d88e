#pragma once
// Seed construction from divides (combinatorial incidence data of the zero
// curve of a real morsification), by the Gusein-Zade / A'Campo intersection
// rules.
#include <optional>
#include <string>
#include <vector>

#include "morsecensus/flips.hpp"
#include "morsecensus/vm.hpp"

namespace mc {

struct DivideRegion {
  std::string name;
  bool positive = false;  // positive -> maximum, negative -> minimum
};

struct DivideCorner {
  std::string double_point;
  std::string region;
  int count = 1;
};

// A saddle not captured by bounded regions, with its intersection row spelled
// out against the other cycles by name.
struct DivideExtra {
  std::string name;
  std::vector<std::pair<std::string, int64_t>> row;
};

struct Divide {
  std::vector<std::string> double_points;  // each becomes a saddle
  std::vector<DivideRegion> regions;
  std::vector<DivideCorner> corners;
  std::vector<DivideExtra> extras;
  std::optional<PrincipalType> ptype;
};

std::vector<std::string> validate_divide(const Divide& d);

Divide parse_divide(const std::string& json_text);  // throws ParseError
std::string serialize_divide(const Divide& d);

// Builds the seed state: minima first (negative values), then saddles, then
// maxima; q = number of minima; region-saddle entries are signed corner
// counts per the config conventions.  Throws InvalidArgument on an invalid
// divide or when ptype is set and the cycle count is not 9.
VirtualMorsification build_seed(const Divide& d, const FlipConfig& config);

}  // namespace mc
