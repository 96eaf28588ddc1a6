#include "foldmap/cli.hpp"

#include "foldmap/convergence.hpp"
#include "foldmap/error.hpp"
#include "foldmap/folding.hpp"
#include "foldmap/polytope_io.hpp"
#include "foldmap/sampling.hpp"
#include "foldmap/scalar_example.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <sstream>

namespace foldmap::cli {

const char* version() { return FOLDMAP_VERSION; }

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> m;
  std::optional<double> alpha;
  std::string polytope;
};

// Collects artifacts for one command and finishes with the manifest.
class Artifacts {
 public:
  Artifacts(std::string command, std::string dir) : command_(std::move(command)), dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }
  bool enabled() const { return !dir_.empty(); }

  void write(const std::string& name, const std::string& content) {
    if (!enabled()) return;
    write_atomic(std::filesystem::path(dir_) / name, content);
    files_.push_back(name);
  }

  void figure(const std::string& name, const Figure& f, std::ostream& out) {
    if (!enabled()) return;
    if (auto svg = render_svg(f)) {
      write(name, *svg);
    } else {
      out << "notice: figure " << name << " skipped (no two-dimensional samples)\n";
    }
  }

  void finish(const Json& config, std::uint64_t seed, const std::string& verdict) {
    if (!enabled()) return;
    Json m;
    m["command"] = command_;
    m["tool_version"] = version();
    m["seed"] = seed;
    m["config"] = config;
    Json files = Json::array();
    for (const auto& f : files_) files.push_back(f);
    files.push_back("manifest.json");
    m["files"] = files;
    m["verdict"] = verdict;
    write_atomic(std::filesystem::path(dir_) / "manifest.json", dump(m));
  }

 private:
  std::string command_;
  std::string dir_;
  std::vector<std::string> files_;
};

HPolytope load_body(const Options& o) {
  return o.polytope.empty() ? shapes::square() : read_polytope_file(o.polytope);
}

Json polytope_json(const HPolytope& c, const std::string& source) {
  return {{"source", source.empty() ? "built-in square" : source}, {"text", polytope_to_string(c)}};
}

std::vector<Point> outline(const HPolytope& c) { return c.dim() == 2 ? c.polygon() : std::vector<Point>{}; }

int exit_for(bool pass) { return pass ? kExitPass : kExitFail; }

int cmd_fold(const Options& o, std::ostream& out) {
  const HPolytope c = load_body(o);
  const int m = o.m.value_or(8);
  const std::uint64_t seed = o.seed.value_or(0);
  const FoldingMap f = FoldingMap::build(c, m);

  out << "folding map: N = " << c.dim() << ", K = " << c.size() << ", m = " << m
      << ", k(m) = " << f.schedule().stop_index << '\n';
  out << "levels:";
  for (double t : f.schedule().levels) out << ' ' << format_exact(t);
  out << '\n';

  Artifacts art("fold", o.out);
  Json config{{"polytope", polytope_json(c, o.polytope)}, {"m", m}, {"samples", 1000}};
  if (art.enabled()) {
    std::ostringstream desc;
    write_descriptor(desc, f);
    art.write("folding_map.txt", desc.str());

    Rng rng(seed);
    const auto samples = sample_uniform(dilate(c, m), 1000, rng);
    std::vector<Point> images;
    std::ostringstream csv;
    csv << "sample";
    for (int i = 0; i < c.dim(); ++i) csv << ",p" << i;
    for (int i = 0; i < c.dim(); ++i) csv << ",F" << i;
    csv << '\n';
    for (std::size_t s = 0; s < samples.size(); ++s) {
      images.push_back(f(samples[s]));
      csv << s;
      for (Eigen::Index i = 0; i < c.dim(); ++i) csv << ',' << format_exact(samples[s][i]);
      for (Eigen::Index i = 0; i < c.dim(); ++i) csv << ',' << format_exact(images.back()[i]);
      csv << '\n';
    }
    Json report;
    report["command"] = "fold";
    report["m"] = m;
    report["k_m"] = f.schedule().stop_index;
    report["xi_min"] = f.schedule().xi_min;
    report["xi_max"] = f.schedule().xi_max;
    report["levels"] = f.schedule().levels;
    report["verdict"] = "PASS";
    art.write("report.json", dump(report));
    art.write("samples.csv", csv.str());
    const auto body = outline(c), grown = outline(dilate(c, 1. + 1. / m)), big = outline(dilate(c, m));
    art.figure("before.svg", {"samples of mC", {{samples, "steelblue"}}, {body, big}, {"black", "gray"}}, out);
    art.figure("after.svg", {"images under F_m", {{images, "firebrick"}}, {body, grown}, {"black", "gray"}}, out);
  }
  art.finish(config, seed, "PASS");
  return kExitPass;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const HPolytope c = load_body(o);
  const int m = o.m.value_or(8);
  const std::uint64_t seed = o.seed.value_or(0);
  const FoldingMap f = FoldingMap::build(c, m);

  const auto containment = verify_containment(f, 10000, seed);
  const auto zones = verify_zones(f, 1000, seed + 1);
  const auto lipschitz = verify_lipschitz(f, 4., 10000, seed + 2);

  Rng rng(seed + 3);
  double orthogonality = 0.;
  for (const auto& p : sample_uniform(dilate(c, m), 1000, rng)) {
    const auto [q, seam] = f.jacobian(p);
    orthogonality = std::max(orthogonality, (q.transpose() * q - Matrix::Identity(c.dim(), c.dim())).cwiseAbs().maxCoeff());
  }

  struct Check {
    const char* name;
    double value;
    double bound;
  };
  const std::vector<Check> checks{
      {"containment: images of mC stay in (1 + 1/m)C", containment.max_violation, 1e-9},
      {"fixed set: points of C are unchanged", containment.max_displacement, 0.},
      {"zones: stage images stay in tC minus int(C), outer excess", zones.max_outer_excess, 1e-9},
      {"zones: stage images stay in tC minus int(C), inner depth", zones.max_inner_depth, 1e-9},
      {"1-Lipschitz: pair violations", static_cast<double>(lipschitz.violations), 0.},
      {"branch Jacobians are orthogonal", orthogonality, 1e-12},
  };
  bool pass = true;
  Json list = Json::array();
  for (const auto& ch : checks) {
    const bool ok = ch.value <= ch.bound;
    pass = pass && ok;
    out << (ok ? "PASS " : "FAIL ") << ch.name << ": " << ch.value << " (bound " << ch.bound << ")\n";
    list.push_back({{"name", ch.name}, {"value", ch.value}, {"bound", ch.bound}, {"pass", ok}});
  }
  const std::string verdict = pass ? "PASS" : "FAIL";
  out << "verdict: " << verdict << '\n';

  Artifacts art("verify", o.out);
  Json report;
  report["command"] = "verify";
  report["m"] = m;
  report["k_m"] = f.schedule().stop_index;
  report["containment"] = {{"samples", containment.samples},
                           {"max_violation", containment.max_violation},
                           {"max_displacement", containment.max_displacement}};
  report["zones"] = {{"pairs", zones.pairs},
                     {"samples", zones.samples},
                     {"max_outer_excess", zones.max_outer_excess},
                     {"max_inner_depth", zones.max_inner_depth}};
  report["lipschitz"] = {{"pairs", lipschitz.pairs},
                         {"violations", lipschitz.violations},
                         {"worst_excess", lipschitz.worst_excess}};
  report["jacobian_orthogonality"] = orthogonality;
  report["checks"] = list;
  report["verdict"] = verdict;
  art.write("report.json", dump(report));
  art.finish({{"polytope", polytope_json(c, o.polytope)}, {"m", m}}, seed, verdict);
  return exit_for(pass);
}

int cmd_converge(const Options& o, std::ostream& out) {
  const HPolytope c = load_body(o);
  ConvergenceOptions opts;
  opts.m_values = o.m ? std::vector<int>{*o.m} : std::vector<int>{4, 8, 16, 32};
  opts.seed = o.seed.value_or(0);
  const auto rows = convergence_error(c, opts);

  // Decay is asserted only along safe rays.
  bool pass = true;
  std::optional<double> previous;
  Json table = Json::array();
  out << "m  safe_error  global_error\n";
  for (const auto& r : rows) {
    table.push_back({{"m", r.m},
                     {"skipped", r.skipped},
                     {"safe_error", r.safe_error},
                     {"global_error", r.global_error},
                     {"safe_samples", r.safe_samples},
                     {"global_samples", r.global_samples}});
    if (r.skipped) {
      out << r.m << "  skipped (m < j)\n";
      continue;
    }
    out << r.m << "  " << r.safe_error << "  " << r.global_error << '\n';
    if (previous && r.safe_error > *previous + 1e-12) pass = false;
    previous = r.safe_error;
  }
  const std::string verdict = pass ? "PASS" : "FAIL";
  out << "verdict: " << verdict << '\n';

  Artifacts art("converge", o.out);
  Json report{{"command", "converge"}, {"j", opts.j}, {"rows", table}, {"verdict", verdict}};
  art.write("report.json", dump(report));
  art.finish({{"polytope", polytope_json(c, o.polytope)}, {"m_values", opts.m_values}, {"samples", opts.samples}},
             opts.seed, verdict);
  return exit_for(pass);
}

int cmd_scalar(const Options& o, std::ostream& out) {
  std::vector<int> ms;
  if (o.m) {
    ms.push_back(*o.m);
  } else {
    for (int m = 1; m <= 10; ++m) ms.push_back(m);
  }
  constexpr int kPoints = 10000;
  constexpr double kStep = 1e-7;
  bool pass = true;
  Json rows = Json::array();
  for (int m : ms) {
    const ScalarFoldingExample f(m);
    const double spacing = f.seam_spacing();
    double sup = 0., slope_error = 0.;
    for (int i = 0; i < kPoints; ++i) {
      const double u = 2. * (i + 0.5) / kPoints;
      sup = std::max(sup, std::abs(f(u)));
      const double a = u - kStep, b = u + kStep;
      if (a <= 0. || b >= 2. || std::floor(a / spacing) != std::floor(b / spacing)) continue;
      slope_error = std::max(slope_error, std::abs(std::abs((f(b) - f(a)) / (b - a)) - 1.));
    }
    const double bound = std::ldexp(1., -m);
    const bool ok = sup <= bound && slope_error <= 1e-6;
    pass = pass && ok;
    out << "m = " << m << ": sup |F_m| = " << sup << " (bound " << bound << "), slope error " << slope_error
        << (ok ? "  PASS" : "  FAIL") << '\n';
    rows.push_back({{"m", m}, {"sup", sup}, {"bound", bound}, {"slope_error", slope_error}, {"pass", ok}});
  }
  const std::string verdict = pass ? "PASS" : "FAIL";
  out << "verdict: " << verdict << '\n';
  Artifacts art("scalar-example", o.out);
  art.write("report.json", dump(Json{{"command", "scalar-example"}, {"points", kPoints}, {"rows", rows}, {"verdict", verdict}}));
  art.finish({{"m_values", ms}, {"points", kPoints}}, 0, verdict);
  return exit_for(pass);
}

int cmd_experiment(const std::string& command, const Options& o, std::ostream& out, std::ostream& err) {
  LoadedConfig loaded = load_config(o.config);
  ExperimentConfig& cfg = loaded.config;
  if (o.seed) cfg.seed = *o.seed;
  if (o.alpha) {
    if (!(*o.alpha > 0.)) throw Error(ErrorKind::InvalidInput, "--alpha must be positive");
    cfg.alpha = *o.alpha;
  }
  if (o.m) {
    if (*o.m < 2) throw Error(ErrorKind::InvalidInput, "--m must be at least 2");
    cfg.m_cap = *o.m;
  }
  const std::string dir = !o.out.empty() ? o.out : loaded.output.value_or("");

  const ExperimentReport r = command == "experiment-i" ? pipeline_i(cfg) : pipeline_ii(cfg);
  const Json report = report_to_json(r);
  Artifacts art(command, dir);
  art.write("report.json", dump(report));
  art.write("samples.csv", samples_csv(r));

  if (r.status != "completed") {
    err << "error: " << r.status << ": " << r.message << '\n';
    art.finish(config_to_json(cfg), cfg.seed, r.verdict());
    return kExitError;
  }

  out << r.experiment << ": m = " << r.m << ", k(m) = " << r.stop_index << ", E(v) = " << r.energy_v
      << ", E(u) = " << r.energy_u << ", eps_disc = " << r.seams.eps_disc << '\n';
  out << (r.containment_violation <= kContainmentTolerance ? "PASS" : "FAIL")
      << " containment: violation " << r.containment_violation << " (" << r.containment_target << ")\n";
  out << (r.boundary_bit_exact ? "PASS" : "FAIL") << " boundary values unchanged\n";
  for (const auto& c : r.inequalities)
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.lhs << " <= " << c.rhs << '\n';
  out << "verdict: " << r.verdict() << '\n';

  if (r.v && r.v->value_dim() == 2) {
    std::vector<Point> before, after;
    for (std::size_t k = 0; k < r.v->grid().node_count(); ++k) {
      before.push_back(r.v->value(k));
      after.push_back(r.u->value(k));
    }
    std::vector<Point> target = r.target_outline;
    if (r.experiment == "convex-hull-comparison") target = r.target_outline;
    art.figure("before.svg", {"descent output v", {{before, "steelblue"}}, {target, r.body_outline}, {"black", "gray"}}, out);
    art.figure("after.svg", {"folded u", {{after, "firebrick"}}, {target, r.body_outline}, {"black", "gray"}}, out);
  } else if (art.enabled()) {
    out << "notice: figures skipped (values are not two-dimensional)\n";
  }
  art.finish(config_to_json(cfg), cfg.seed, r.verdict());
  return exit_for(r.pass);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Folding maps and comparison experiments", "foldmap"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  Options o;
  std::uint64_t seed = 0;
  int m = 0;
  double alpha = 0.;
  std::vector<CLI::App*> subs;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--out", o.out, "Output directory for artifacts");
    s->add_option("--seed", seed, "Random seed");
    s->add_option("--m", m, "Dilation horizon m");
  };
  auto* fold = app.add_subcommand("fold", "Build a folding map and export its descriptor");
  auto* converge = app.add_subcommand("converge", "Measure convergence to the nearest-point projection");
  auto* verify = app.add_subcommand("verify", "Check containment, zones, Lipschitz bound and Jacobians");
  auto* scalar = app.add_subcommand("scalar-example", "Check the scalar folding example");
  auto* exp1 = app.add_subcommand("experiment-i", "Convex-hull comparison for a gradient-only integrand");
  auto* exp2 = app.add_subcommand("experiment-ii", "Designated-set comparison for a full integrand");
  for (auto* s : {fold, converge, verify}) {
    add_common(s);
    s->add_option("--polytope", o.polytope, "Polytope file (default: unit square)")->check(CLI::ExistingFile);
  }
  add_common(scalar);
  for (auto* s : {exp1, exp2}) {
    add_common(s);
    s->add_option("--config", o.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    s->add_option("--alpha", alpha, "Override alpha");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: invalid-input: " << e.what() << '\n';
    return kExitError;
  }

  try {
    CLI::App* chosen = app.get_subcommands().front();
    if (chosen->count("--seed")) o.seed = seed;
    if (chosen->count("--m")) o.m = m;
    if (chosen->get_option_no_throw("--alpha") && chosen->count("--alpha")) o.alpha = alpha;
    const std::string name = chosen->get_name();
    if (name == "fold") return cmd_fold(o, out);
    if (name == "verify") return cmd_verify(o, out);
    if (name == "converge") return cmd_converge(o, out);
    if (name == "scalar-example") return cmd_scalar(o, out);
    return cmd_experiment(name, o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace foldmap::cli
