// Command-line front end: seeding, exploration, reporting, verification,
// D-graph export and calibration.
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "morsecensus/acampo.hpp"
#include "morsecensus/dgraph.hpp"
#include "morsecensus/explore.hpp"
#include "morsecensus/fixtures.hpp"
#include "morsecensus/flips.hpp"
#include "morsecensus/vm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitCapExceeded = 3;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw mc::ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw mc::ParseError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw mc::ParseError("write failed for '" + path + "'");
}

mc::FlipConfig load_config(const std::string& path) {
  if (path.empty()) return mc::FlipConfig{};
  return mc::parse_config(read_file(path));
}

std::vector<mc::VirtualMorsification> load_seeds(const std::vector<std::string>& paths) {
  std::vector<mc::VirtualMorsification> seeds;
  for (const auto& p : paths) {
    mc::VirtualMorsification vm = mc::parse_state(read_file(p));
    auto viol = mc::validate(vm);
    if (!viol.empty())
      throw mc::InvalidArgument("seed '" + p + "' invalid: " + viol.front());
    seeds.push_back(std::move(vm));
  }
  return seeds;
}

// Variation space file: one "key=choice1,choice2,..." line per switch; the
// space is the product over all listed keys, applied on top of the base
// config.  The literal word "full" selects all V1-V6 combinations.
std::vector<mc::FlipConfig> load_space(const std::string& path, const mc::FlipConfig& base) {
  if (path.empty()) return mc::full_variation_space(base);
  std::string text = read_file(path);
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    if (line == "full") return mc::full_variation_space(base);
    auto eq = line.find('=');
    if (eq == std::string::npos) throw mc::ParseError("space: missing '=' in '" + line + "'");
    std::vector<std::string> vals;
    std::istringstream vs(line.substr(eq + 1));
    std::string v;
    while (std::getline(vs, v, ',')) vals.push_back(v);
    if (vals.empty()) throw mc::ParseError("space: no choices in '" + line + "'");
    axes.push_back({line.substr(0, eq), vals});
  }
  std::vector<mc::FlipConfig> out{base};
  for (const auto& [key, vals] : axes) {
    std::vector<mc::FlipConfig> next;
    for (const mc::FlipConfig& c : out)
      for (const std::string& v : vals)
        next.push_back(mc::parse_config_inline(mc::config_inline(c) + ";" + key + "=" + v));
    out = std::move(next);
  }
  return out;
}

int cmd_seed(const std::string& fixture, const std::string& divide_path,
             const std::string& config_path, const std::string& out_path) {
  mc::VirtualMorsification vm;
  if (!fixture.empty()) {
    vm = mc::fixture_state(fixture);
  } else if (!divide_path.empty()) {
    mc::Divide d = mc::parse_divide(read_file(divide_path));
    vm = mc::build_seed(d, load_config(config_path));
  } else {
    throw mc::InvalidArgument("seed: either --fixture or --divide is required");
  }
  std::string text = mc::serialize(vm) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  return kExitOk;
}

int cmd_explore(const std::vector<std::string>& seed_paths, const std::string& config_path,
                const std::string& resume_path, const std::string& out_path, int threads) {
  mc::Universe u;
  if (!resume_path.empty()) {
    u = mc::load_snapshot(resume_path);
    if (!config_path.empty()) {
      // allow raising caps on resume; variation switches must stay frozen
      mc::FlipConfig fresh = load_config(config_path);
      mc::FlipConfig check = fresh;
      check.max_abs_entry = u.config.max_abs_entry;
      check.max_states = u.config.max_states;
      if (!(check == u.config))
        throw mc::InvalidArgument("explore: resume config differs beyond caps");
      u.config = fresh;
    }
    mc::continue_closure(u, threads);
  } else {
    if (seed_paths.empty()) throw mc::InvalidArgument("explore: no seeds given");
    u = mc::close_universe(load_seeds(seed_paths), load_config(config_path), threads);
  }
  mc::save_snapshot(u, out_path);
  std::cerr << "states=" << u.states.size() << " edges=" << u.edges.size()
            << " closed=" << (u.closed ? 1 : 0) << "\n";
  if (!u.closed) {
    std::cerr << "closure stopped: " << u.stop_reason << " (snapshot written, resumable)\n";
    return kExitCapExceeded;
  }
  return kExitOk;
}

int cmd_report(const std::string& snapshot_path, const std::string& format) {
  mc::Universe u = mc::load_snapshot(snapshot_path);
  mc::Spectrum s = mc::spectrum(mc::partition_subsets(u));
  if (format == "csv")
    std::cout << mc::spectrum_csv(s);
  else if (format == "md")
    std::cout << mc::spectrum_markdown(s);
  else
    throw mc::InvalidArgument("report: format must be csv or md");
  return kExitOk;
}

int cmd_verify(const std::string& snapshot_path, const std::string& expected_path) {
  mc::Universe u = mc::load_snapshot(snapshot_path);
  if (!u.closed) {
    std::cerr << "verify: universe is not closed (" << u.stop_reason << ")\n";
    return kExitCapExceeded;
  }
  auto partition = mc::partition_subsets(u);
  bool ok = true;

  mc::CompareReport rep =
      mc::compare_spectrum(mc::spectrum(partition), mc::parse_spectrum_csv(read_file(expected_path)));
  std::cout << rep.render();
  ok &= rep.pass;

  // the type-specific Euler value only applies to full nine-cycle states
  int expected_euler = mc::euler_of(u.ptype);
  int64_t det0 = mc::exact_det(u.states.front());
  size_t bad_euler = 0, bad_det = 0;
  for (const auto& vm : u.states) {
    if (vm.mu == mc::kMaxMu && mc::trivial_invariant(vm).euler() != expected_euler)
      ++bad_euler;
    if (mc::exact_det(vm) != det0) ++bad_det;
  }
  std::cout << "euler constant: " << (bad_euler ? "FAIL" : "ok") << "\n";
  std::cout << "det constant (" << det0 << "): " << (bad_det ? "FAIL" : "ok") << "\n";
  ok &= !bad_euler && !bad_det;

  uint64_t total = 0;
  size_t bad_div = 0, bad_graph = 0, bad_le = 0;
  for (const auto& rec : partition) {
    total += rec.card;
    if (rec.card % (rec.signature.M + 1) != 0) ++bad_div;
    if (rec.signature.M == u.states[rec.members.front()].mu) {
      std::string ref;
      bool uniform = true;
      for (uint32_t m : rec.members) {
        std::string k = mc::canonical_dgraph(mc::extract_dgraph(u.states[m]));
        if (ref.empty()) ref = std::move(k);
        else uniform &= k == ref;
      }
      if (!uniform) ++bad_graph;
      uint64_t le = mc::linear_extensions(mc::extract_dgraph(u.states[rec.members.front()]));
      if (rec.card != static_cast<uint64_t>(rec.signature.M + 1) * le) ++bad_le;
    }
  }
  std::cout << "card sum = universe size: " << (total == u.states.size() ? "ok" : "FAIL") << "\n";
  std::cout << "card divisible by M+1: " << (bad_div ? "FAIL" : "ok") << "\n";
  std::cout << "one D-graph per all-real subset: " << (bad_graph ? "FAIL" : "ok") << "\n";
  std::cout << "card = (M+1) x linear extensions: " << (bad_le ? "FAIL" : "ok") << "\n";
  ok &= total == u.states.size() && !bad_div && !bad_graph && !bad_le;

  std::cout << (ok ? "verify: PASS\n" : "verify: FAIL\n");
  return ok ? kExitOk : kExitMismatch;
}

int cmd_dgraph(const std::string& snapshot_path, int subset_id, const std::string& dot_path,
               const std::string& split) {
  mc::Universe u = mc::load_snapshot(snapshot_path);
  auto partition = mc::partition_subsets(u);
  if (subset_id < 0 || subset_id >= static_cast<int>(partition.size()))
    throw mc::InvalidArgument("dgraph: subset id out of range (0.." +
                              std::to_string(partition.size() - 1) + ")");
  const auto& rec = partition[subset_id];
  mc::DGraph g = mc::extract_dgraph(u.states[rec.members.front()]);
  if (!dot_path.empty()) write_file(dot_path, mc::to_dot(g));
  std::cout << "subset " << subset_id << ": card=" << rec.card << " M=" << rec.signature.M
            << " m_plus=" << rec.signature.m_plus
            << " linear_extensions=" << mc::linear_extensions(g) << "\n";
  if (!split.empty()) {
    auto plus = split.find('+');
    if (plus == std::string::npos)
      throw mc::InvalidArgument("dgraph: --split expects e.g. A5+A4");
    auto parts = mc::ade_split(g, mc::parse_ade(split.substr(0, plus)),
                               mc::parse_ade(split.substr(plus + 1)));
    std::cout << "split " << split << ": " << parts.size() << " bipartition(s)\n";
  }
  return kExitOk;
}

int cmd_calibrate(const std::vector<std::string>& seed_paths, const std::string& expected_path,
                  const std::string& space_path, const std::string& config_path,
                  const std::string& report_path, int threads) {
  auto seeds = load_seeds(seed_paths);
  mc::Spectrum expected = mc::parse_spectrum_csv(read_file(expected_path));
  auto space = load_space(space_path, load_config(config_path));
  std::string log;
  auto matches = mc::calibrate(seeds, expected, space, threads, &log);
  if (!report_path.empty()) write_file(report_path, log);
  else std::cerr << log;
  std::cout << matches.size() << " matching configuration(s) of " << space.size() << "\n";
  for (const auto& c : matches) std::cout << mc::config_inline(c) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"combinatorial census of Morse polynomial rigid isotopy classes"};
  app.require_subcommand(1);

  std::string fixture, divide_path, config_path, out_path, snapshot_path, expected_path;
  std::string format = "csv", dot_path, split, space_path, report_path, resume_path;
  std::vector<std::string> seed_paths;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  int subset_id = 0;

  auto* seed = app.add_subcommand("seed", "write a seed state file");
  seed->add_option("--fixture", fixture, "built-in fixture name");
  seed->add_option("--divide", divide_path, "divide JSON file");
  seed->add_option("--config", config_path, "flip config file");
  seed->add_option("--out", out_path, "output state file (default stdout)");

  auto* explore = app.add_subcommand("explore", "close seeds into a universe snapshot");
  explore->add_option("--seed", seed_paths, "seed state file(s)");
  explore->add_option("--config", config_path, "flip config file");
  explore->add_option("--resume", resume_path, "partial snapshot to continue");
  explore->add_option("--out", out_path, "snapshot output path")->required();
  explore->add_option("--threads", threads, "worker threads");

  auto* report = app.add_subcommand("report", "emit the spectrum of a snapshot");
  report->add_option("--snapshot", snapshot_path, "snapshot path")->required();
  report->add_option("--format", format, "csv or md");

  auto* verify = app.add_subcommand("verify", "check a snapshot against an expected spectrum");
  verify->add_option("--snapshot", snapshot_path, "snapshot path")->required();
  verify->add_option("--expected", expected_path, "expected spectrum CSV")->required();

  auto* dgraph = app.add_subcommand("dgraph", "export or query a subset's D-graph");
  dgraph->add_option("--snapshot", snapshot_path, "snapshot path")->required();
  dgraph->add_option("--subset", subset_id, "subset id")->required();
  dgraph->add_option("--dot", dot_path, "DOT output path");
  dgraph->add_option("--split", split, "splitting query, e.g. A5+A4");

  auto* calibrate = app.add_subcommand("calibrate", "sweep flip-convention variants");
  calibrate->add_option("--seed", seed_paths, "seed state file(s)")->required();
  calibrate->add_option("--expected", expected_path, "expected spectrum CSV")->required();
  calibrate->add_option("--space", space_path, "variation space file (default: full V1-V6)");
  calibrate->add_option("--config", config_path, "base flip config file");
  calibrate->add_option("--report", report_path, "per-configuration log output");
  calibrate->add_option("--threads", threads, "worker threads");

  CLI11_PARSE(app, argc, argv);
  if (threads < 1) threads = 1;

  try {
    if (seed->parsed()) return cmd_seed(fixture, divide_path, config_path, out_path);
    if (explore->parsed())
      return cmd_explore(seed_paths, config_path, resume_path, out_path, threads);
    if (report->parsed()) return cmd_report(snapshot_path, format);
    if (verify->parsed()) return cmd_verify(snapshot_path, expected_path);
    if (dgraph->parsed()) return cmd_dgraph(snapshot_path, subset_id, dot_path, split);
    if (calibrate->parsed())
      return cmd_calibrate(seed_paths, expected_path, space_path, config_path, report_path,
                           threads);
  } catch (const mc::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
