#pragma once
// Built-in seed states.
#include <string>
#include <vector>

#include "morsecensus/vm.hpp"

namespace mc {

// Known fixture names: "x9plus-m7-a", "x9plus-m7-b" (the two published
// (M, m_+) = (7, 0) seed matrices).  Throws InvalidArgument on unknown names.
VirtualMorsification fixture_state(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace mc
