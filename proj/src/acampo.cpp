#include "morsecensus/acampo.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace mc {

using json = nlohmann::json;

std::vector<std::string> validate_divide(const Divide& d) {
  std::vector<std::string> out;
  std::set<std::string> names;
  auto claim = [&](const std::string& n) {
    if (!names.insert(n).second) out.push_back("duplicate cycle name '" + n + "'");
  };
  for (const auto& p : d.double_points) claim(p);
  for (const auto& r : d.regions) claim(r.name);
  for (const auto& e : d.extras) claim(e.name);
  for (const auto& c : d.corners) {
    if (c.count < 1) out.push_back("corner count must be positive");
    if (std::find(d.double_points.begin(), d.double_points.end(), c.double_point) ==
        d.double_points.end())
      out.push_back("corner references unknown double point '" + c.double_point + "'");
    bool found = false;
    for (const auto& r : d.regions) found |= r.name == c.region;
    if (!found) out.push_back("corner references unknown region '" + c.region + "'");
  }
  for (const auto& e : d.extras)
    for (const auto& [name, v] : e.row) {
      if (!names.count(name)) out.push_back("extra row references unknown cycle '" + name + "'");
      // rows between two extras must agree symmetrically
      for (const auto& e2 : d.extras)
        if (e2.name == name)
          for (const auto& [n2, v2] : e2.row)
            if (n2 == e.name && v2 != v)
              out.push_back("extra rows '" + e.name + "'/'" + e2.name + "' are asymmetric");
    }
  size_t total = d.double_points.size() + d.regions.size() + d.extras.size();
  if (d.ptype && total != kMaxMu) out.push_back("cycle count != 9 with principal type set");
  if (total == 0 || total > kMaxMu) out.push_back("cycle count out of range");
  return out;
}

Divide parse_divide(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("divide: invalid JSON: ") + e.what());
  }
  Divide d;
  try {
    for (const auto& p : j.at("double_points")) d.double_points.push_back(p.get<std::string>());
    for (const auto& r : j.at("regions")) {
      std::string pol = r.at("polarity").get<std::string>();
      if (pol != "positive" && pol != "negative")
        throw ParseError("divide: polarity must be positive or negative");
      d.regions.push_back({r.at("name").get<std::string>(), pol == "positive"});
    }
    for (const auto& c : j.at("corners"))
      d.corners.push_back({c.at(0).get<std::string>(), c.at(1).get<std::string>(),
                           c.at(2).get<int>()});
    if (j.contains("extras"))
      for (const auto& e : j.at("extras")) {
        DivideExtra x;
        x.name = e.at("name").get<std::string>();
        for (const auto& [k, v] : e.at("row").items())
          x.row.push_back({k, v.get<int64_t>()});
        d.extras.push_back(std::move(x));
      }
    if (j.contains("ptype")) {
      PrincipalType pt;
      if (!ptype_from_name(j.at("ptype").get<std::string>(), pt))
        throw ParseError("divide: unknown ptype");
      d.ptype = pt;
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("divide: missing or mistyped field: ") + e.what());
  }
  return d;
}

std::string serialize_divide(const Divide& d) {
  json j;
  j["double_points"] = d.double_points;
  json regions = json::array();
  for (const auto& r : d.regions)
    regions.push_back({{"name", r.name}, {"polarity", r.positive ? "positive" : "negative"}});
  j["regions"] = regions;
  json corners = json::array();
  for (const auto& c : d.corners) corners.push_back({c.double_point, c.region, c.count});
  j["corners"] = corners;
  if (!d.extras.empty()) {
    json extras = json::array();
    for (const auto& e : d.extras) {
      json row = json::object();
      for (const auto& [k, v] : e.row) row[k] = v;
      extras.push_back({{"name", e.name}, {"row", row}});
    }
    j["extras"] = extras;
  }
  if (d.ptype) j["ptype"] = ptype_name(*d.ptype);
  return j.dump(2);
}

VirtualMorsification build_seed(const Divide& d, const FlipConfig& config) {
  auto viol = validate_divide(d);
  if (!viol.empty()) throw InvalidArgument("build_seed: invalid divide: " + viol.front());

  // value order: minima, then saddles (double points, then extras), then maxima
  std::vector<std::string> order;
  std::map<std::string, Kind> kind_of;
  for (const auto& r : d.regions)
    if (!r.positive) {
      order.push_back(r.name);
      kind_of[r.name] = {KindTag::Min, 0};
    }
  int q = static_cast<int>(order.size());
  for (const auto& p : d.double_points) {
    order.push_back(p);
    kind_of[p] = {KindTag::Saddle, 0};
  }
  for (const auto& e : d.extras) {
    order.push_back(e.name);
    kind_of[e.name] = {KindTag::Saddle, 0};
  }
  for (const auto& r : d.regions)
    if (r.positive) {
      order.push_back(r.name);
      kind_of[r.name] = {KindTag::Max, 0};
    }

  const int mu = static_cast<int>(order.size());
  std::map<std::string, int> pos;
  for (int i = 0; i < mu; ++i) pos[order[i]] = i;

  VirtualMorsification vm;
  vm.mu = mu;
  vm.ptype = d.ptype.value_or(PrincipalType::X9Plus);
  vm.q = q;
  vm.A.assign(static_cast<size_t>(mu) * mu, 0);
  vm.r.assign(mu, 0);
  for (int i = 0; i < mu; ++i) {
    vm.kinds.push_back(kind_of[order[i]]);
    vm.at(i, i) = -2;
    switch (vm.kinds[i].tag) {
      case KindTag::Min: vm.r[i] = 2; break;
      case KindTag::Saddle: vm.r[i] = -2; break;
      default: vm.r[i] = config.acampo_max_r; break;
    }
  }
  for (const auto& c : d.corners) {
    int i = pos[c.region], j = pos[c.double_point];
    bool positive = vm.kinds[i].tag == KindTag::Max;
    int64_t v = static_cast<int64_t>(c.count) *
                (positive ? config.acampo_max_sign : config.acampo_min_sign);
    vm.at(i, j) += v;
    vm.at(j, i) += v;
  }
  for (const auto& e : d.extras) {
    int i = pos[e.name];
    for (const auto& [name, v] : e.row) {
      int j = pos.at(name);
      vm.at(i, j) = v;
      vm.at(j, i) = v;
    }
  }
  if (d.ptype) {
    auto sviol = validate(vm);
    if (!sviol.empty())
      throw InvalidArgument("build_seed: generated state invalid: " + sviol.front());
  }
  return vm;
}

}  // namespace mc
