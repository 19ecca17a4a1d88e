#pragma once
// D-graphs: Morse-index-marked, signed, oriented intersection multigraphs of
// all-real states; canonical forms, linear extensions, Dynkin splittings.
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "morsecensus/vm.hpp"

namespace mc {

struct DGraph {
  int n = 0;
  std::array<uint8_t, kMaxMu> mark{};              // Morse index per vertex
  std::array<std::array<int64_t, kMaxMu>, kMaxMu> mult{};  // signed, symmetric
  // Orientation: vertex order = critical-value order, edges point from lower
  // to higher value; i -> j for i < j whenever mult[i][j] != 0.

  int64_t m(int i, int j) const { return mult[i][j]; }
};

// Requires an all-real state (throws UnsupportedState otherwise).
DGraph extract_dgraph(const VirtualMorsification& vm);

// Equal strings iff the marked, signed, oriented multigraphs are isomorphic.
std::string canonical_dgraph(const DGraph& g);

// Exact count of total orders extending the orientation partial order
// (downset dynamic programming).  Throws InvalidArgument on a cyclic
// orientation relation.
uint64_t linear_extensions(const DGraph& g);
// Test oracle: iterate all n! orders.
uint64_t linear_extensions_bruteforce(const DGraph& g);

// Conjectured strictly-Morse class count bound: card / 10.
uint64_t strict_class_bound(uint64_t card);  // throws InvalidArgument unless 10 | card

struct AdeShape {
  char family = 'A';  // 'A', 'D' or 'E'
  int rank = 1;
};
AdeShape parse_ade(const std::string& s);  // "A5", "D6", "E7"; throws ParseError
// Whether the unsigned simple graph given by adjacency (unit edges) on k
// vertices is the standard Dynkin tree of the shape.
bool is_dynkin_tree(const std::vector<std::vector<int>>& adj, const AdeShape& shape);

struct Bipartition {
  uint16_t left_mask = 0, right_mask = 0;  // vertex bitmasks
};

// All bipartitions splitting g into the two standard Dynkin trees after
// removing cross edges; every retained edge must have |mult| = 1.  With
// strict_alternation, A-chains must alternate min/saddle marks.
std::vector<Bipartition> ade_split(const DGraph& g, const AdeShape& left,
                                   const AdeShape& right, bool strict_alternation = false);

// Whether some induced vertex subset of size shape.rank is the standard
// Dynkin tree (all internal edges of unit magnitude).
bool contains_subdiagram(const DGraph& g, const AdeShape& shape);

// Deterministic DOT rendering: minima unfilled, saddles filled, maxima
// doubled; |mult| parallel edges, dashed when the multiplicity is negative.
std::string to_dot(const DGraph& g);

}  // namespace mc
