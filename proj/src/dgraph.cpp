#include "morsecensus/dgraph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace mc {

DGraph extract_dgraph(const VirtualMorsification& vm) {
  TrivialInvariant t = trivial_invariant(vm);
  if (t.M != vm.mu) throw UnsupportedState("extract_dgraph: state has complex pairs");
  DGraph g;
  g.n = vm.mu;
  for (int i = 0; i < g.n; ++i) {
    g.mark[i] = static_cast<uint8_t>(vm.kinds[i].morse_index());
    for (int j = 0; j < g.n; ++j) g.mult[i][j] = i == j ? 0 : vm.at(i, j);
  }
  return g;
}

std::string canonical_dgraph(const DGraph& g) {
  // vertices are regrouped by mark; the canonical string is the lexicographic
  // minimum over all mark-preserving relabelings (n <= 9, worst case 5!*4!)
  const int n = g.n;
  std::vector<int> verts(n);
  std::iota(verts.begin(), verts.end(), 0);
  std::stable_sort(verts.begin(), verts.end(),
                   [&](int a, int b) { return g.mark[a] < g.mark[b]; });
  // group boundaries
  std::vector<std::pair<int, int>> groups;
  for (int b = 0; b < n;) {
    int e = b;
    while (e < n && g.mark[verts[e]] == g.mark[verts[b]]) ++e;
    groups.push_back({b, e});
    b = e;
  }
  auto render = [&](const std::vector<int>& lab) {
    // lab[slot] = original vertex
    std::string s;
    for (int i = 0; i < n; ++i) s += static_cast<char>('0' + g.mark[lab[i]]);
    s += '|';
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int64_t m = g.m(lab[i], lab[j]);
        // orientation: original position order
        char dir = m == 0 ? '.' : (lab[i] < lab[j] ? '>' : '<');
        s += std::to_string(m);
        s += dir;
      }
    return s;
  };
  std::string best;
  std::vector<int> lab = verts;
  // iterate the product of per-group permutations
  std::vector<std::vector<int>> perms;
  for (auto [b, e] : groups) {
    std::vector<int> p(verts.begin() + b, verts.begin() + e);
    std::sort(p.begin(), p.end());
    perms.push_back(p);
  }
  std::function<void(size_t)> rec = [&](size_t gi) {
    if (gi == perms.size()) {
      int pos = 0;
      for (const auto& p : perms)
        for (int v : p) lab[pos++] = v;
      std::string s = render(lab);
      if (best.empty() || s < best) best = std::move(s);
      return;
    }
    std::sort(perms[gi].begin(), perms[gi].end());
    do {
      rec(gi + 1);
    } while (std::next_permutation(perms[gi].begin(), perms[gi].end()));
  };
  rec(0);
  return best;
}

namespace {

// pred[v] = bitmask of vertices that must come before v
std::vector<uint16_t> pred_masks(const DGraph& g) {
  std::vector<uint16_t> pred(g.n, 0);
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (g.m(i, j) != 0) pred[j] |= static_cast<uint16_t>(1u << i);
  return pred;
}

}  // namespace

uint64_t linear_extensions(const DGraph& g) {
  // by construction i -> j only for i < j, so the relation is acyclic; the
  // check below guards graphs built by other means
  auto pred = pred_masks(g);
  const int n = g.n;
  {
    uint16_t placed = 0;
    for (int step = 0; step < n; ++step) {
      bool advanced = false;
      for (int v = 0; v < n; ++v)
        if (!(placed & (1u << v)) && (pred[v] & ~placed) == 0) {
          placed |= static_cast<uint16_t>(1u << v);
          advanced = true;
        }
      if (!advanced) throw InvalidArgument("linear_extensions: cyclic orientation");
      if (placed == (1u << n) - 1) break;
    }
  }
  std::vector<uint64_t> f(1u << n, 0);
  f[0] = 1;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!f[mask]) continue;
    for (int v = 0; v < n; ++v)
      if (!(mask & (1u << v)) && (pred[v] & ~mask) == 0) f[mask | (1u << v)] += f[mask];
  }
  return f[(1u << n) - 1];
}

uint64_t linear_extensions_bruteforce(const DGraph& g) {
  auto pred = pred_masks(g);
  const int n = g.n;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  uint64_t count = 0;
  do {
    uint16_t placed = 0;
    bool ok = true;
    for (int v : order) {
      if (pred[v] & ~placed) { ok = false; break; }
      placed |= static_cast<uint16_t>(1u << v);
    }
    count += ok;
  } while (std::next_permutation(order.begin(), order.end()));
  return count;
}

uint64_t strict_class_bound(uint64_t card) {
  if (card % 10 != 0) throw InvalidArgument("strict_class_bound: card not divisible by 10");
  return card / 10;
}

AdeShape parse_ade(const std::string& s) {
  if (s.size() < 2) throw ParseError("ade shape: too short '" + s + "'");
  AdeShape shape;
  shape.family = s[0];
  try {
    shape.rank = std::stoi(s.substr(1));
  } catch (...) {
    throw ParseError("ade shape: bad rank in '" + s + "'");
  }
  if (shape.family == 'A' && shape.rank >= 1) return shape;
  if (shape.family == 'D' && shape.rank >= 4) return shape;
  if (shape.family == 'E' && shape.rank >= 6 && shape.rank <= 8) return shape;
  throw ParseError("ade shape: not a valid Dynkin type '" + s + "'");
}

bool is_dynkin_tree(const std::vector<std::vector<int>>& adj, const AdeShape& shape) {
  const int k = static_cast<int>(adj.size());
  if (k != shape.rank) return false;
  int edges = 0;
  std::vector<int> deg(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (adj[i][j]) {
        ++edges;
        ++deg[i];
        ++deg[j];
      }
  if (edges != k - 1) return false;
  // connectivity
  std::vector<int> stack{0}, seen(k, 0);
  seen[0] = 1;
  int found = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < k; ++w)
      if (adj[v][w] && !seen[w]) {
        seen[w] = 1;
        ++found;
        stack.push_back(w);
      }
  }
  if (found != k) return false;
  int branch = -1;
  for (int v = 0; v < k; ++v) {
    if (deg[v] > 3) return false;
    if (deg[v] == 3) {
      if (branch >= 0) return false;
      branch = v;
    }
  }
  if (shape.family == 'A') return branch < 0;
  if (branch < 0) return false;
  // arm lengths from the branch vertex
  std::vector<int> arms;
  for (int w = 0; w < k; ++w) {
    if (!adj[branch][w]) continue;
    int len = 1, prev = branch, cur = w;
    for (;;) {
      int nxt = -1;
      for (int x = 0; x < k; ++x)
        if (adj[cur][x] && x != prev) nxt = x;
      if (nxt < 0) break;
      prev = cur;
      cur = nxt;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (shape.family == 'D') return arms == std::vector<int>{1, 1, shape.rank - 3};
  return arms == std::vector<int>{1, 2, shape.rank - 4};  // E6 {1,2,2} E7 {1,2,3} E8 {1,2,4}
}

namespace {

bool side_matches(const DGraph& g, uint16_t mask, const AdeShape& shape,
                  bool strict_alternation) {
  std::vector<int> verts;
  for (int v = 0; v < g.n; ++v)
    if (mask & (1u << v)) verts.push_back(v);
  const int k = static_cast<int>(verts.size());
  std::vector<std::vector<int>> adj(k, std::vector<int>(k, 0));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      int64_t m = g.m(verts[i], verts[j]);
      if (m == 0) continue;
      if (std::llabs(m) != 1) return false;  // retained edges must be simple
      adj[i][j] = adj[j][i] = 1;
    }
  if (!is_dynkin_tree(adj, shape)) return false;
  if (strict_alternation && shape.family == 'A') {
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (adj[i][j] && !((g.mark[verts[i]] == 0 && g.mark[verts[j]] == 1) ||
                           (g.mark[verts[i]] == 1 && g.mark[verts[j]] == 0)))
          return false;
  }
  return true;
}

}  // namespace

std::vector<Bipartition> ade_split(const DGraph& g, const AdeShape& left,
                                   const AdeShape& right, bool strict_alternation) {
  std::vector<Bipartition> out;
  if (left.rank + right.rank != g.n) return out;
  const uint16_t full = static_cast<uint16_t>((1u << g.n) - 1);
  for (uint16_t mask = 0; mask <= full; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) != left.rank) continue;
    uint16_t rest = full & ~mask;
    if (side_matches(g, mask, left, strict_alternation) &&
        side_matches(g, rest, right, strict_alternation))
      out.push_back({mask, rest});
  }
  return out;
}

bool contains_subdiagram(const DGraph& g, const AdeShape& shape) {
  if (shape.rank > g.n) return false;
  const uint16_t full = static_cast<uint16_t>((1u << g.n) - 1);
  for (uint16_t mask = 0; mask <= full; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) != shape.rank) continue;
    if (side_matches(g, mask, shape, false)) return true;
  }
  return false;
}

std::string to_dot(const DGraph& g) {
  std::ostringstream os;
  os << "digraph dgraph {\n";
  os << "  rankdir=LR;\n";
  for (int v = 0; v < g.n; ++v) {
    os << "  v" << v << " [shape=circle";
    switch (g.mark[v]) {
      case 0: os << ", style=solid"; break;
      case 1: os << ", style=filled, fillcolor=black, fontcolor=white"; break;
      default: os << ", shape=doublecircle"; break;
    }
    os << ", label=\"" << v + 1 << "\"];\n";
  }
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) {
      int64_t m = g.m(i, j);
      if (m == 0) continue;
      for (int64_t c = 0; c < std::llabs(m); ++c) {
        os << "  v" << i << " -> v" << j;
        if (m < 0) os << " [style=dashed]";
        os << ";\n";
      }
    }
  os << "}\n";
  return os.str();
}

}  // namespace mc
