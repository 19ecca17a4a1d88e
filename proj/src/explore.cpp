#include "morsecensus/explore.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "morsecensus/dgraph.hpp"

namespace mc {

namespace {

// One discovered transition, before id assignment.
struct Candidate {
  uint32_t from;
  FlipKind kind;
  std::string key;
  VirtualMorsification state;
};

struct ExpandResult {
  std::vector<Candidate> candidates;
  std::string cap_reason;  // nonempty when some flip exceeded the entry cap
};

ExpandResult expand_range(const Universe& u, const std::vector<uint32_t>& frontier,
                          size_t begin, size_t end) {
  ExpandResult res;
  for (size_t n = begin; n < end; ++n) {
    uint32_t id = frontier[n];
    const VirtualMorsification& vm = u.states[id];
    for (const FlipInstance& f : enumerate_flips(vm, u.config)) {
      try {
        VirtualMorsification nxt = apply_flip(vm, f, u.config);
        res.candidates.push_back({id, f.kind, canonical_key(nxt), std::move(nxt)});
      } catch (const CapExceeded& e) {
        if (res.cap_reason.empty())
          res.cap_reason = std::string(e.what()) + " while expanding a state";
      }
    }
  }
  return res;
}

uint64_t edge_token(uint32_t a, uint32_t b, FlipKind k) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(k) << 58) | (static_cast<uint64_t>(a) << 29) | b;
}

}  // namespace

Universe close_universe(const std::vector<VirtualMorsification>& seeds,
                        const FlipConfig& config, int threads) {
  Universe u;
  u.config = config;
  if (seeds.empty()) throw InvalidArgument("close_universe: no seeds");
  u.ptype = seeds.front().ptype;
  for (const auto& s : seeds) {
    auto viol = validate(s);
    if (!viol.empty()) throw InvalidArgument("close_universe: invalid seed: " + viol.front());
    if (s.ptype != u.ptype) throw InvalidArgument("close_universe: mixed principal types");
    std::string key = canonical_key(s);
    auto [it, fresh] = u.index.try_emplace(key, static_cast<uint32_t>(u.states.size()));
    if (fresh) {
      u.states.push_back(s);
      u.frontier.push_back(it->second);
    }
    u.seed_ids.push_back(it->second);
  }
  u.closed = false;
  continue_closure(u, threads);
  return u;
}

void continue_closure(Universe& u, int threads) {
  if (threads < 1) threads = 1;
  constexpr size_t kBatch = 4096;  // bounds peak memory of unmerged candidates
  std::unordered_set<uint64_t> edge_seen;
  edge_seen.reserve(u.edges.size() * 2 + 1024);
  for (const Edge& e : u.edges) edge_seen.insert(edge_token(e.a, e.b, e.kind));

  std::deque<uint32_t> queue(u.frontier.begin(), u.frontier.end());
  u.frontier.clear();
  while (!queue.empty()) {
    // batch composition depends only on discovery order, never on threading
    std::vector<uint32_t> batch;
    while (!queue.empty() && batch.size() < kBatch) {
      batch.push_back(queue.front());
      queue.pop_front();
    }
    const size_t nchunk = std::min<size_t>(threads, batch.size());
    std::vector<ExpandResult> results(nchunk);
    if (nchunk == 1) {
      results[0] = expand_range(u, batch, 0, batch.size());
    } else {
      std::vector<std::thread> pool;
      const size_t per = (batch.size() + nchunk - 1) / nchunk;
      for (size_t c = 0; c < nchunk; ++c) {
        size_t b = c * per, e = std::min(batch.size(), b + per);
        pool.emplace_back([&, c, b, e] { results[c] = expand_range(u, batch, b, e); });
      }
      for (auto& t : pool) t.join();
    }

    std::string cap_reason;
    bool state_cap = false;
    // merge in chunk order: discovery order is independent of the chunking
    for (ExpandResult& res : results) {
      if (cap_reason.empty() && !res.cap_reason.empty()) cap_reason = res.cap_reason;
      if (!cap_reason.empty() || state_cap) break;
      for (Candidate& c : res.candidates) {
        auto it = u.index.find(c.key);
        bool fresh = it == u.index.end();
        if (fresh) {
          if (u.states.size() >= u.config.max_states) {
            state_cap = true;
            break;
          }
          it = u.index.emplace(std::move(c.key), static_cast<uint32_t>(u.states.size())).first;
          u.states.push_back(std::move(c.state));
          queue.push_back(it->second);
        }
        uint32_t to = it->second;
        if (to != c.from && edge_seen.insert(edge_token(c.from, to, c.kind)).second)
          u.edges.push_back({std::min(c.from, to), std::max(c.from, to), c.kind});
      }
    }
    if (!cap_reason.empty() || state_cap) {
      // the current batch is only partially applied; re-expanding it on resume
      // is safe (states and edges deduplicate), so it stays in the frontier
      u.closed = false;
      u.frontier.assign(batch.begin(), batch.end());
      u.frontier.insert(u.frontier.end(), queue.begin(), queue.end());
      std::sort(u.frontier.begin(), u.frontier.end());
      u.frontier.erase(std::unique(u.frontier.begin(), u.frontier.end()), u.frontier.end());
      u.stop_reason =
          state_cap ? "state cap " + std::to_string(u.config.max_states) + " reached"
                    : cap_reason + " (entry cap " + std::to_string(u.config.max_abs_entry) + ")";
      u.stop_reason += "; " + std::to_string(u.states.size()) + " states discovered";
      return;
    }
  }
  u.closed = true;
  u.stop_reason.clear();
}

std::vector<SubsetRecord> partition_subsets(const Universe& u) {
  const uint32_t n = static_cast<uint32_t>(u.states.size());
  std::vector<uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : u.edges)
    if (is_within_subset(e.kind)) {
      uint32_t ra = find(e.a), rb = find(e.b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  std::map<uint32_t, std::vector<uint32_t>> comps;
  for (uint32_t i = 0; i < n; ++i) comps[find(i)].push_back(i);

  std::vector<SubsetRecord> out;
  out.reserve(comps.size());
  for (auto& [root, members] : comps) {
    SubsetRecord rec;
    rec.id = static_cast<uint32_t>(out.size());
    rec.card = members.size();
    rec.signature = trivial_invariant(u.states[members.front()]);
    std::string best;
    for (uint32_t m : members) {
      std::string k = canonical_key(u.states[m]);
      if (best.empty() || k < best) best = std::move(k);
    }
    rec.representative = std::move(best);
    rec.members = std::move(members);
    if (rec.signature.M == u.states[rec.members.front()].mu)
      rec.dgraph_key = canonical_dgraph(extract_dgraph(u.states[rec.members.front()]));
    out.push_back(std::move(rec));
  }
  return out;
}

Spectrum spectrum(const std::vector<SubsetRecord>& partition) {
  Spectrum s;
  for (const SubsetRecord& rec : partition)
    s[{rec.signature.M, rec.signature.m_plus}].push_back(rec.card);
  for (auto& [cell, cards] : s) std::sort(cards.begin(), cards.end());
  return s;
}

CompareReport compare_spectrum(const Spectrum& actual, const Spectrum& expected) {
  CompareReport rep;
  rep.pass = true;
  std::set<std::pair<int, int>> cells;
  for (const auto& [c, v] : actual) cells.insert(c);
  for (const auto& [c, v] : expected) cells.insert(c);
  for (const auto& c : cells) {
    auto ai = actual.find(c), ei = expected.find(c);
    std::vector<uint64_t> av = ai == actual.end() ? std::vector<uint64_t>{} : ai->second;
    std::vector<uint64_t> ev = ei == expected.end() ? std::vector<uint64_t>{} : ei->second;
    // unordered multiset comparison: callers may pass unsorted card lists
    std::sort(av.begin(), av.end());
    std::sort(ev.begin(), ev.end());
    if (av != ev) {
      rep.pass = false;
      rep.diffs.push_back({c.first, c.second, av, ev});
    }
  }
  return rep;
}

std::string CompareReport::render() const {
  std::ostringstream os;
  if (pass) {
    os << "spectrum match\n";
    return os.str();
  }
  auto join = [](const std::vector<uint64_t>& v) {
    std::string s;
    for (uint64_t x : v) {
      if (!s.empty()) s += "+";
      s += std::to_string(x);
    }
    return s.empty() ? std::string("-") : s;
  };
  os << "spectrum mismatch in " << diffs.size() << " cell(s):\n";
  for (const auto& d : diffs)
    os << "  (M=" << d.M << ", m_plus=" << d.m_plus << "): got " << join(d.actual)
       << ", expected " << join(d.expected) << "\n";
  return os.str();
}

std::string spectrum_csv(const Spectrum& s) {
  std::ostringstream os;
  os << "M,m_plus,card\n";
  for (const auto& [cell, cards] : s)
    for (uint64_t c : cards) os << cell.first << "," << cell.second << "," << c << "\n";
  return os.str();
}

Spectrum parse_spectrum_csv(const std::string& text) {
  Spectrum s;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.rfind("M,", 0) == 0) continue;  // header
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c))
      throw ParseError("spectrum csv line " + std::to_string(lineno) + ": expected M,m_plus,card");
    try {
      s[{std::stoi(a), std::stoi(b)}].push_back(std::stoull(c));
    } catch (...) {
      throw ParseError("spectrum csv line " + std::to_string(lineno) + ": bad integer");
    }
  }
  for (auto& [cell, cards] : s) std::sort(cards.begin(), cards.end());
  return s;
}

std::string spectrum_markdown(const Spectrum& s) {
  std::set<int> Ms;
  int max_mplus = 0;
  for (const auto& [cell, cards] : s) {
    Ms.insert(cell.first);
    max_mplus = std::max(max_mplus, cell.second);
  }
  auto join = [](const std::vector<uint64_t>& v) {
    std::string out;
    for (uint64_t x : v) {
      if (!out.empty()) out += " + ";
      out += std::to_string(x);
    }
    return out.empty() ? std::string("0") : out;
  };
  std::ostringstream os;
  os << "| m_plus \\ M |";
  for (int M : Ms) os << " " << M << " |";
  os << "\n|---|";
  for (size_t i = 0; i < Ms.size(); ++i) os << "---|";
  os << "\n";
  for (int mp = 0; mp <= max_mplus; ++mp) {
    os << "| " << mp << " |";
    for (int M : Ms) {
      auto it = s.find({M, mp});
      os << " " << (it == s.end() ? "0" : join(it->second)) << " |";
    }
    os << "\n";
  }
  os << "| Sigma |";
  for (int M : Ms) {
    uint64_t total = 0;
    for (const auto& [cell, cards] : s)
      if (cell.first == M)
        for (uint64_t c : cards) total += c;
    os << " " << total << " |";
  }
  os << "\n";
  return os.str();
}

namespace {

uint64_t fnv1a(const std::string& data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string join_ids(const std::vector<uint32_t>& v) {
  if (v.empty()) return "-";
  std::string s;
  for (uint32_t x : v) {
    if (!s.empty()) s += ",";
    s += std::to_string(x);
  }
  return s;
}

std::vector<uint32_t> split_ids(const std::string& s) {
  std::vector<uint32_t> out;
  if (s == "-") return out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(static_cast<uint32_t>(std::stoul(tok)));
  return out;
}

}  // namespace

void save_snapshot(const Universe& u, const std::string& path) {
  // remap ids so states appear in canonical-key order: byte-identical output
  // for any discovery order
  const uint32_t n = static_cast<uint32_t>(u.states.size());
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::string> keys(n);
  for (uint32_t i = 0; i < n; ++i) keys[i] = canonical_key(u.states[i]);
  std::sort(order.begin(), order.end(),
            [&](uint32_t a, uint32_t b) { return keys[a] < keys[b]; });
  std::vector<uint32_t> newid(n);
  for (uint32_t i = 0; i < n; ++i) newid[order[i]] = i;

  auto remap_sorted = [&](std::vector<uint32_t> v) {
    for (uint32_t& x : v) x = newid[x];
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };

  std::vector<Edge> edges;
  edges.reserve(u.edges.size());
  for (Edge e : u.edges) {
    e.a = newid[e.a];
    e.b = newid[e.b];
    if (e.a > e.b) std::swap(e.a, e.b);
    edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());

  std::ostringstream os;
  os << "MCSNAP 1\n";
  os << "ptype " << ptype_name(u.ptype) << "\n";
  os << "closed " << (u.closed ? 1 : 0) << "\n";
  os << "stop_reason " << (u.stop_reason.empty() ? "-" : u.stop_reason) << "\n";
  os << "config " << config_inline(u.config) << "\n";
  os << "seeds " << join_ids(remap_sorted(u.seed_ids)) << "\n";
  os << "frontier " << join_ids(remap_sorted(u.frontier)) << "\n";
  os << "counts states=" << n << " edges=" << edges.size() << "\n";
  for (uint32_t i = 0; i < n; ++i) os << "S " << serialize(u.states[order[i]]) << "\n";
  for (const Edge& e : edges)
    os << "E " << e.a << " " << e.b << " " << flip_kind_name(e.kind) << "\n";
  std::string body = os.str();
  char sum[32];
  snprintf(sum, sizeof sum, "%016llx", static_cast<unsigned long long>(fnv1a(body)));
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("snapshot: cannot open '" + path + "' for writing");
  f << body << "checksum " << sum << "\n";
  if (!f) throw ParseError("snapshot: write failed for '" + path + "'");
}

Universe load_snapshot(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("snapshot: cannot open '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  std::string text = buf.str();

  auto last_nl = text.rfind('\n', text.size() - 2);
  if (text.empty() || text.back() != '\n' || last_nl == std::string::npos)
    throw ParseError("snapshot: truncated file");
  std::string last = text.substr(last_nl + 1);
  std::string body = text.substr(0, last_nl + 1);
  if (last.rfind("checksum ", 0) != 0) throw ParseError("snapshot: missing checksum");
  char sum[32];
  snprintf(sum, sizeof sum, "%016llx", static_cast<unsigned long long>(fnv1a(body)));
  if (last != std::string("checksum ") + sum + "\n")
    throw ParseError("snapshot: checksum mismatch");

  std::istringstream is(body);
  std::string line;
  auto expect = [&](const char* prefix) {
    if (!std::getline(is, line) || line.rfind(prefix, 0) != 0)
      throw ParseError(std::string("snapshot: expected '") + prefix + "' line");
    return line.substr(std::string(prefix).size());
  };
  std::string ver = expect("MCSNAP ");
  if (ver != "1") throw ParseError("snapshot: unsupported format version '" + ver + "'");
  Universe u;
  std::string pt = expect("ptype ");
  if (!ptype_from_name(pt, u.ptype)) throw ParseError("snapshot: unknown ptype");
  u.closed = expect("closed ") == "1";
  std::string sr = expect("stop_reason ");
  u.stop_reason = sr == "-" ? "" : sr;
  u.config = parse_config_inline(expect("config "));
  u.seed_ids = split_ids(expect("seeds "));
  u.frontier = split_ids(expect("frontier "));
  std::string counts = expect("counts states=");
  size_t sp = counts.find(" edges=");
  if (sp == std::string::npos) throw ParseError("snapshot: malformed counts");
  size_t nstates = std::stoull(counts.substr(0, sp));
  size_t nedges = std::stoull(counts.substr(sp + 7));
  u.states.reserve(nstates);
  for (size_t i = 0; i < nstates; ++i) {
    std::string s = expect("S ");
    VirtualMorsification vm = parse_state(s);
    u.index.emplace(canonical_key(vm), static_cast<uint32_t>(u.states.size()));
    u.states.push_back(std::move(vm));
  }
  for (size_t i = 0; i < nedges; ++i) {
    std::istringstream ls(expect("E "));
    uint32_t a, b;
    std::string kn;
    if (!(ls >> a >> b >> kn)) throw ParseError("snapshot: malformed edge line");
    FlipKind k;
    bool found = false;
    for (int t = 0; t <= 6; ++t)
      if (kn == flip_kind_name(static_cast<FlipKind>(t))) {
        k = static_cast<FlipKind>(t);
        found = true;
      }
    if (!found) throw ParseError("snapshot: unknown flip kind '" + kn + "'");
    if (a >= u.states.size() || b >= u.states.size())
      throw ParseError("snapshot: edge id out of range");
    u.edges.push_back({a, b, k});
  }
  return u;
}

std::vector<FlipConfig> full_variation_space(const FlipConfig& base) {
  std::vector<FlipConfig> out;
  for (int bits = 0; bits < 64; ++bits) {
    FlipConfig c = base;
    c.v1_allow_straddle = bits & 1;
    c.v2_r_correction = bits & 2;
    c.v3_both_members = bits & 4;
    c.v4_corresponding = bits & 8;
    c.v5_merge_rows = bits & 16;
    c.v6_require_r = bits & 32;
    out.push_back(c);
  }
  return out;
}

std::vector<FlipConfig> calibrate(const std::vector<VirtualMorsification>& seeds,
                                  const Spectrum& expected,
                                  const std::vector<FlipConfig>& variation_space,
                                  int threads, std::string* log) {
  std::vector<FlipConfig> matches;
  std::ostringstream os;
  for (const FlipConfig& cfg : variation_space) {
    Universe u = close_universe(seeds, cfg, threads);
    os << config_inline(cfg) << " -> ";
    if (!u.closed) {
      os << "cap: " << u.stop_reason << "\n";
      continue;
    }
    CompareReport rep = compare_spectrum(spectrum(partition_subsets(u)), expected);
    if (rep.pass) {
      os << "match (" << u.states.size() << " states)\n";
      matches.push_back(cfg);
    } else {
      os << "closed with " << u.states.size() << " states, " << rep.diffs.size()
         << " mismatched cell(s)\n";
    }
  }
  if (log) *log = os.str();
  return matches;
}

}  // namespace mc
