#include "foldmap/cli.hpp"

#include "foldmap/error.hpp"

#include <fstream>
#include <set>

namespace foldmap::cli {

namespace {

void reject_unknown(const Json& j, const std::string& where, std::initializer_list<const char*> known) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "config: '" + where + "' must be an object");
  const std::set<std::string> keys(known.begin(), known.end());
  for (const auto& [key, value] : j.items())
    if (!keys.count(key)) throw Error(ErrorKind::InvalidInput, "config: unknown key '" + where + key + "'");
}

template <class T>
T get(const Json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::InvalidInput, "config: '" + where + key + "' has the wrong type");
  }
}

Point vector_of(const Json& j, const std::string& name) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "config: '" + name + "' must be an array of numbers");
  Point p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorKind::InvalidInput, "config: '" + name + "' must be an array of numbers");
    p[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return p;
}

Json to_json(const Point& p) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

}  // namespace

ExperimentConfig parse_config(const Json& j) {
  reject_unknown(j, "", {"grid", "value_dim", "lagrangian", "boundary", "alpha", "m_cap", "tolerances", "init_noise",
                         "seed", "output"});
  ExperimentConfig c;
  if (j.contains("grid")) {
    const Json& g = j["grid"];
    reject_unknown(g, "grid.", {"n", "M"});
    c.n = get(g, "n", c.n, "grid.");
    c.nodes_per_side = get(g, "M", c.nodes_per_side, "grid.");
  }
  c.value_dim = get(j, "value_dim", c.value_dim, "");
  if (j.contains("lagrangian")) {
    const Json& l = j["lagrangian"];
    reject_unknown(l, "lagrangian.", {"name", "q"});
    c.lagrangian = get(l, "name", c.lagrangian, "lagrangian.");
    c.q = get(l, "q", c.q, "lagrangian.");
  }
  if (j.contains("boundary")) {
    const Json& b = j["boundary"];
    reject_unknown(b, "boundary.", {"generator", "radius", "center", "slope", "offset", "lipschitz", "modes", "seed"});
    c.boundary.generator = get(b, "generator", c.boundary.generator, "boundary.");
    c.boundary.radius = get(b, "radius", c.boundary.radius, "boundary.");
    if (b.contains("center")) c.boundary.center = vector_of(b["center"], "boundary.center");
    if (b.contains("offset")) c.boundary.offset = vector_of(b["offset"], "boundary.offset");
    if (b.contains("slope")) {
      const Json& s = b["slope"];
      if (!s.is_array() || s.empty()) throw Error(ErrorKind::InvalidInput, "config: 'boundary.slope' must be a matrix");
      const Point first = vector_of(s[0], "boundary.slope");
      c.boundary.slope.resize(static_cast<Eigen::Index>(s.size()), first.size());
      for (std::size_t r = 0; r < s.size(); ++r) {
        const Point row = vector_of(s[r], "boundary.slope");
        if (row.size() != first.size()) throw Error(ErrorKind::InvalidInput, "config: 'boundary.slope' rows differ in length");
        c.boundary.slope.row(static_cast<Eigen::Index>(r)) = row.transpose();
      }
    }
    c.boundary.lipschitz = get(b, "lipschitz", c.boundary.lipschitz, "boundary.");
    c.boundary.modes = get(b, "modes", c.boundary.modes, "boundary.");
    c.boundary.seed = get(b, "seed", c.boundary.seed, "boundary.");
  }
  c.alpha = get(j, "alpha", c.alpha, "");
  c.m_cap = get(j, "m_cap", c.m_cap, "");
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    reject_unknown(t, "tolerances.", {"energy", "gradient", "max_iters", "patience"});
    c.descent.tolerance = get(t, "energy", c.descent.tolerance, "tolerances.");
    c.descent.grad_tolerance = get(t, "gradient", c.descent.grad_tolerance, "tolerances.");
    c.descent.max_iters = get(t, "max_iters", c.descent.max_iters, "tolerances.");
    c.descent.patience = get(t, "patience", c.descent.patience, "tolerances.");
  }
  c.init_noise = get(j, "init_noise", c.init_noise, "");
  c.seed = get(j, "seed", c.seed, "");

  if (c.n != 1 && c.n != 2) throw Error(ErrorKind::InvalidInput, "config: grid.n must be 1 or 2");
  if (c.nodes_per_side < 3) throw Error(ErrorKind::InvalidInput, "config: grid.M must be at least 3");
  if (c.value_dim < 1) throw Error(ErrorKind::InvalidInput, "config: value_dim must be positive");
  if (!(c.alpha > 0.)) throw Error(ErrorKind::InvalidInput, "config: alpha must be positive");
  if (c.m_cap < 2) throw Error(ErrorKind::InvalidInput, "config: m_cap must be at least 2");
  if (c.init_noise < 0.) throw Error(ErrorKind::InvalidInput, "config: init_noise must be nonnegative");
  return c;
}

LoadedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read config file '" + path.string() + "'");
  Json j;
  try {
    j = Json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, "config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  LoadedConfig out{parse_config(j), std::nullopt};
  if (j.contains("output")) {
    if (!j["output"].is_string()) throw Error(ErrorKind::InvalidInput, "config: 'output' must be a string");
    out.output = j["output"].get<std::string>();
  }
  return out;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["grid"] = {{"n", c.n}, {"M", c.nodes_per_side}};
  j["value_dim"] = c.value_dim;
  j["lagrangian"] = {{"name", c.lagrangian}, {"q", c.q}};
  Json b;
  b["generator"] = c.boundary.generator;
  b["radius"] = c.boundary.radius;
  b["center"] = to_json(c.boundary.center);
  Json slope = Json::array();
  for (Eigen::Index r = 0; r < c.boundary.slope.rows(); ++r) slope.push_back(to_json(c.boundary.slope.row(r).transpose()));
  b["slope"] = slope;
  b["offset"] = to_json(c.boundary.offset);
  b["lipschitz"] = c.boundary.lipschitz;
  b["modes"] = c.boundary.modes;
  b["seed"] = c.boundary.seed;
  j["boundary"] = b;
  j["alpha"] = c.alpha;
  j["m_cap"] = c.m_cap;
  j["tolerances"] = {{"energy", c.descent.tolerance},
                     {"gradient", c.descent.grad_tolerance},
                     {"max_iters", c.descent.max_iters},
                     {"patience", c.descent.patience}};
  j["init_noise"] = c.init_noise;
  j["seed"] = c.seed;
  return j;
}

}  // namespace foldmap::cli
