#include "foldmap/cli.hpp"

#include "foldmap/error.hpp"
#include "foldmap/polytope_io.hpp"

#include <fstream>
#include <sstream>

namespace foldmap::cli {

namespace {

Json to_json(const Point& p) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json report_to_json(const ExperimentReport& r) {
  Json j;
  j["experiment"] = r.experiment;
  j["status"] = r.status;
  j["verdict"] = r.verdict();
  if (!r.message.empty()) j["message"] = r.message;
  j["config"] = config_to_json(r.config);
  j["descent"] = {{"iterations", r.descent_iterations},
                  {"stationarity", r.descent_stationarity},
                  {"converged", r.descent_converged}};
  j["energies"] = {{"E_v", r.energy_v}};
  j["trace"] = {{"points", r.trace_points}};
  if (r.status != "completed") return j;

  j["energies"]["E_vm"] = r.energy_vm;
  j["energies"]["E_u"] = r.energy_u;
  if (r.energy_mixed) j["energies"]["E_mixed"] = *r.energy_mixed;
  j["trace"]["hull_vertices"] = r.hull_vertices;
  j["alpha"] = r.config.alpha;
  j["m"] = r.m;
  j["k_m"] = r.stop_index;
  j["levels"] = r.levels;
  j["body"] = {{"facets", r.body_facets},
               {"translation", to_json(r.translation)},
               {"xi_min", r.xi_min},
               {"xi_max", r.xi_max}};
  j["truncation"] = {{"radius", r.truncation_radius}, {"clipped_nodes", r.clipped_nodes}};
  j["deficits"] = {{"a_l1", r.deficit_a}, {"l_l1", r.deficit_l}};
  j["seams"] = {{"crossing_edges", r.seams.crossing_edges},
                {"crossing_cells", r.seams.crossing_cells},
                {"eps_disc", r.seams.eps_disc}};
  j["containment"] = {{"target", r.containment_target},
                      {"violation", r.containment_violation},
                      {"max_distance", r.containment_max_distance},
                      {"tolerance", kContainmentTolerance}};
  j["boundary"] = {{"max_change", r.boundary_max_change}, {"bit_exact", r.boundary_bit_exact}};
  Json checks = Json::array();
  for (const auto& c : r.inequalities)
    checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
  j["inequalities"] = checks;
  j["energy_tolerance"] = kEnergyTolerance;
  j["pass"] = r.pass;
  return j;
}

std::string samples_csv(const ExperimentReport& r) {
  std::ostringstream out;
  if (!r.v) return {};
  const GridFunction& v = *r.v;
  const Grid& g = v.grid();
  out << "node";
  for (int i = 0; i < g.n(); ++i) out << ",x" << i;
  for (int a = 0; a < v.value_dim(); ++a) out << ",v" << a;
  if (r.u)
    for (int a = 0; a < v.value_dim(); ++a) out << ",u" << a;
  out << '\n';
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    out << k;
    const Point x = g.coordinates(k);
    for (Eigen::Index i = 0; i < x.size(); ++i) out << ',' << format_exact(x[i]);
    const Point vv = v.value(k);
    for (Eigen::Index a = 0; a < vv.size(); ++a) out << ',' << format_exact(vv[a]);
    if (r.u) {
      const Point uu = r.u->value(k);
      for (Eigen::Index a = 0; a < uu.size(); ++a) out << ',' << format_exact(uu[a]);
    }
    out << '\n';
  }
  return out.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::InvalidInput, "failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::InvalidInput, "cannot move '" + tmp.string() + "' into place: " + ec.message());
}

}  // namespace foldmap::cli
