#include <doctest.h>

#include <random>

#include "morsecensus/dgraph.hpp"
#include "morsecensus/fixtures.hpp"

using namespace mc;

namespace {

DGraph make_graph(int n, std::vector<uint8_t> marks,
                  std::vector<std::tuple<int, int, int64_t>> edges) {
  DGraph g;
  g.n = n;
  for (int i = 0; i < n; ++i) g.mark[i] = marks[i];
  for (auto [i, j, m] : edges) g.mult[i][j] = g.mult[j][i] = m;
  return g;
}

// alternating min/saddle path on nine vertices with unit intersections
DGraph a9_path() {
  std::vector<uint8_t> marks;
  for (int i = 0; i < 9; ++i) marks.push_back(i % 2);
  std::vector<std::tuple<int, int, int64_t>> edges;
  for (int i = 0; i < 8; ++i) edges.push_back({i, i + 1, 1});
  return make_graph(9, marks, edges);
}

}  // namespace

TEST_CASE("extract_dgraph copies marks and multiplicities") {
  VirtualMorsification vm;
  vm.mu = 2;
  vm.q = 1;
  vm.kinds = {{KindTag::Min, 0}, {KindTag::Saddle, 0}};
  vm.A = {-2, 1, 1, -2};
  vm.r = {2, -2};
  auto g = extract_dgraph(vm);
  CHECK(g.n == 2);
  CHECK(g.mark[0] == 0);
  CHECK(g.mark[1] == 1);
  CHECK(g.m(0, 1) == 1);
  CHECK(g.m(0, 0) == 0);  // no loops
}

TEST_CASE("extract_dgraph rejects states with complex pairs") {
  CHECK_THROWS_AS(extract_dgraph(fixture_state("x9plus-m7-a")), UnsupportedState);
}

TEST_CASE("linear extensions of a chain and of an antichain") {
  CHECK(linear_extensions(a9_path()) == 1);
  DGraph empty = make_graph(9, std::vector<uint8_t>(9, 0), {});
  CHECK(linear_extensions(empty) == 362880);  // 9!
}

TEST_CASE("downset counting agrees with the factorial oracle") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> mult(-1, 2);
  for (int trial = 0; trial < 30; ++trial) {
    DGraph g;
    g.n = 7;
    for (int i = 0; i < g.n; ++i) g.mark[i] = static_cast<uint8_t>(rng() % 3);
    for (int i = 0; i < g.n; ++i)
      for (int j = i + 1; j < g.n; ++j)
        if (rng() % 3 == 0) g.mult[i][j] = g.mult[j][i] = mult(rng);
    CHECK(linear_extensions(g) == linear_extensions_bruteforce(g));
  }
}

TEST_CASE("canonical form identifies mark-preserving isomorphs") {
  auto a = make_graph(3, {0, 0, 1}, {{1, 2, 1}});
  auto b = make_graph(3, {0, 0, 1}, {{0, 2, 1}});  // swap the two minima
  CHECK(canonical_dgraph(a) == canonical_dgraph(b));

  auto neg = make_graph(3, {0, 0, 1}, {{1, 2, -1}});
  CHECK(canonical_dgraph(a) != canonical_dgraph(neg));  // sign matters

  auto remarked = make_graph(3, {0, 2, 1}, {{1, 2, 1}});
  CHECK(canonical_dgraph(a) != canonical_dgraph(remarked));  // marks matter

  auto doubled = make_graph(3, {0, 0, 1}, {{1, 2, 2}});
  CHECK(canonical_dgraph(a) != canonical_dgraph(doubled));  // multiplicity matters
}

TEST_CASE("strict-class bound is Card/10 and demands divisibility") {
  CHECK(strict_class_bound(7320) == 732);
  CHECK(strict_class_bound(2460) == 246);
  CHECK_THROWS_AS(strict_class_bound(2528), InvalidArgument);
}

TEST_CASE("ade shape parsing") {
  CHECK(parse_ade("A5").family == 'A');
  CHECK(parse_ade("A5").rank == 5);
  CHECK(parse_ade("D4").rank == 4);
  CHECK(parse_ade("E8").rank == 8);
  CHECK_THROWS_AS(parse_ade("D3"), ParseError);
  CHECK_THROWS_AS(parse_ade("E9"), ParseError);
  CHECK_THROWS_AS(parse_ade("X2"), ParseError);
  CHECK_THROWS_AS(parse_ade("A"), ParseError);
}

TEST_CASE("dynkin tree recognition") {
  auto path = [](int n) {
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    for (int i = 0; i + 1 < n; ++i) adj[i][i + 1] = adj[i + 1][i] = 1;
    return adj;
  };
  CHECK(is_dynkin_tree(path(3), parse_ade("A3")));
  CHECK(!is_dynkin_tree(path(4), parse_ade("D4")));

  auto star = path(4);  // central vertex 1 with three leaves
  star[2][3] = star[3][2] = 0;
  star[1][3] = star[3][1] = 1;
  CHECK(is_dynkin_tree(star, parse_ade("D4")));
  CHECK(!is_dynkin_tree(star, parse_ade("A4")));

  // E6: arms 1, 2, 2 from the branch vertex
  auto e6 = path(6);
  e6[4][5] = e6[5][4] = 0;
  e6[2][5] = e6[5][2] = 1;
  CHECK(is_dynkin_tree(e6, parse_ade("E6")));
  CHECK(!is_dynkin_tree(e6, parse_ade("D6")));

  auto cyc = path(4);
  cyc[0][3] = cyc[3][0] = 1;
  CHECK(!is_dynkin_tree(cyc, parse_ade("A4")));
}

TEST_CASE("splitting the A9 path into A5 + A4") {
  auto splits = ade_split(a9_path(), parse_ade("A5"), parse_ade("A4"));
  REQUIRE(splits.size() == 2);  // the A5 segment can sit at either end
  CHECK(splits[0].left_mask == 0b000011111);
  CHECK(splits[0].right_mask == 0b111100000);
  CHECK(splits[1].left_mask == 0b111110000);
  CHECK(splits[1].right_mask == 0b000001111);

  // rank mismatch yields nothing
  CHECK(ade_split(a9_path(), parse_ade("A5"), parse_ade("A5")).empty());

  // strict alternation holds on the alternating path...
  CHECK(ade_split(a9_path(), parse_ade("A5"), parse_ade("A4"), true).size() == 2);
  // ...and fails when all marks agree
  auto flat = a9_path();
  for (int i = 0; i < 9; ++i) flat.mark[i] = 0;
  CHECK(ade_split(flat, parse_ade("A5"), parse_ade("A4"), true).empty());
}

TEST_CASE("a double edge blocks a split through it") {
  auto g = a9_path();
  g.mult[4][5] = g.mult[5][4] = 2;
  auto splits = ade_split(g, parse_ade("A5"), parse_ade("A4"));
  // only the cut through (4,5) survives; the split keeping that edge is gone
  REQUIRE(splits.size() == 1);
  CHECK(splits[0].left_mask == 0b000011111);
}

TEST_CASE("subdiagram containment") {
  CHECK(contains_subdiagram(a9_path(), parse_ade("A5")));
  CHECK(!contains_subdiagram(a9_path(), parse_ade("D4")));
  auto g = make_graph(4, {0, 1, 0, 0}, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}});
  CHECK(contains_subdiagram(g, parse_ade("D4")));
  CHECK(contains_subdiagram(g, parse_ade("A3")));
  CHECK(!contains_subdiagram(g, parse_ade("A5")));
}

TEST_CASE("dot rendering is deterministic and reflects sign and multiplicity") {
  auto g = make_graph(3, {0, 1, 2}, {{0, 1, -1}, {1, 2, 2}});
  std::string dot = to_dot(g);
  CHECK(dot == to_dot(g));
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("style=dashed") != std::string::npos);
  CHECK(dot.find("doublecircle") != std::string::npos);
  // multiplicity two renders two parallel arrows
  size_t first = dot.find("v1 -> v2");
  REQUIRE(first != std::string::npos);
  CHECK(dot.find("v1 -> v2", first + 1) != std::string::npos);
}
