#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "leafflow/brockett.hpp"
#include "leafflow/charts.hpp"
#include "leafflow/config.hpp"
#include "leafflow/flow.hpp"
#include "leafflow/mesh.hpp"
#include "leafflow/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace leafflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFail = 2;
constexpr int kExitNumerical = 3;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_number_list(const std::string& s,
                                      const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(item[used])) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse " + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError(what + " is empty");
  return out;
}

fs::path prepare_out_dir(const Config& cfg, const std::string& override_dir) {
  fs::path dir = override_dir.empty() ? fs::path(cfg.output_dir)
                                      : fs::path(override_dir);
  fs::create_directories(dir);
  return dir;
}

const char* topology_name(LeafTopology t) {
  switch (t) {
    case LeafTopology::TwoPlanes: return "two-planes";
    case LeafTopology::Surface: return "surface";
    case LeafTopology::ContainsSingular: return "contains-singular";
  }
  return "?";
}

const char* zone_name(ZoneSignature s) {
  switch (s) {
    case ZoneSignature::Lorentzian: return "lorentzian";
    case ZoneSignature::Euclidean: return "euclidean";
    case ZoneSignature::Degenerate: return "degenerate";
  }
  return "?";
}

int cmd_analyze(const Config& cfg, double c, const std::string& out_dir) {
  const Family family = cfg.build();
  const LeafReport leaf = family.classify_level_set(c);
  const ZoneReport zones = family.red_lines(c);
  const std::vector<double> singular = family.singular_leaves();

  json j;
  j["family"] = family.spec().name();
  j["c"] = c;
  j["z_interval"] = {family.z_interval().lo, family.z_interval().hi};

  j["leaf"]["topology"] = topology_name(leaf.topology);
  j["leaf"]["n_simple_roots"] = leaf.n_simple;
  j["leaf"]["roots"] = json::array();
  for (const auto& r : leaf.roots)
    j["leaf"]["roots"].push_back({{"z", r.z}, {"multiple", r.multiple}});
  if (leaf.topology == LeafTopology::Surface) {
    j["leaf"]["genus"] = leaf.genus;
    j["leaf"]["punctures"] = leaf.punctures;
  }
  j["leaf"]["boundary_warning"] = leaf.boundary_warning;

  j["singular_leaves"] = singular;
  j["critical_values"] = json::array();
  for (double z : singular) j["critical_values"].push_back(family.q(z));

  j["red_lines"]["z"] = zones.red_z;
  j["red_lines"]["zones"] = json::array();
  for (const auto& zone : zones.zones)
    j["red_lines"]["zones"].push_back({{"z_lo", zone.z_lo},
                                       {"z_hi", zone.z_hi},
                                       {"signature", zone_name(zone.signature)}});

  const std::string text = j.dump(2);
  const fs::path dir = prepare_out_dir(cfg, out_dir);
  std::ofstream(dir / "report.json") << text << "\n";
  std::cout << text << "\n";
  return kExitOk;
}

int cmd_verify(const Config& cfg, int n_points, std::uint64_t seed,
               const std::string& out_dir) {
  const Family family = cfg.build();
  const AmbientMetric g = AmbientMetric::standard();
  const VerifyReport report = run_verification(family, g, n_points, seed);

  json j;
  j["family"] = report.family_name;
  j["points"] = n_points;
  j["seed"] = seed;
  j["suites"] = json::array();
  for (const auto& s : report.suites) {
    j["suites"].push_back({{"name", s.name},
                           {"max_residual", s.max_residual},
                           {"threshold", s.threshold},
                           {"passed", s.passed()},
                           {"worst_point",
                            {s.worst_point.x, s.worst_point.y,
                             s.worst_point.z}}});
    std::printf("%-34s %-4s max %.3e (< %.0e)", s.name.c_str(),
                s.passed() ? "ok" : "FAIL", s.max_residual, s.threshold);
    if (!s.passed())
      std::printf("  worst at (%s, %s, %s)", fmt(s.worst_point.x).c_str(),
                  fmt(s.worst_point.y).c_str(), fmt(s.worst_point.z).c_str());
    std::printf("\n");
  }
  j["all_passed"] = report.all_passed();
  const fs::path dir = prepare_out_dir(cfg, out_dir);
  std::ofstream(dir / "verify.json") << j.dump(2) << "\n";
  return report.all_passed() ? kExitOk : kExitVerifyFail;
}

const char* termination_name(FlowTermination t) {
  switch (t) {
    case FlowTermination::Converged: return "converged";
    case FlowTermination::TMax: return "t-max";
    case FlowTermination::RedZoneApproach: return "red-zone-approach";
    case FlowTermination::CasimirAbort: return "casimir-abort";
    case FlowTermination::StepUnderflow: return "step-underflow";
    case FlowTermination::MaxSteps: return "max-steps";
  }
  return "?";
}

const char* event_name(FlowEventKind k) {
  switch (k) {
    case FlowEventKind::RedZoneApproach: return "red-zone-approach";
    case FlowEventKind::CasimirDrift: return "casimir-drift";
    case FlowEventKind::Converged: return "converged";
  }
  return "?";
}

int cmd_flow(const Config& cfg, double c, const std::string& start_str,
             const std::string& g_src, double t_max, double direction,
             const std::string& method, double dt,
             const std::string& out_dir) {
  const Family family = cfg.build();
  const AmbientMetric g = AmbientMetric::standard();

  const std::vector<double> coords = parse_number_list(start_str, "--start");
  if (coords.size() != 3) throw ConfigError("--start needs exactly x,y,z");
  const Point3 start{coords[0], coords[1], coords[2]};

  const Expr G = parse_expression(g_src);

  const double c_actual = family.casimir(start);
  if (std::fabs(c_actual - c) > cfg.casimir_tol) {
    std::cerr << "start point is not on the leaf c = " << fmt(c)
              << "; its leaf label is C(start) = " << fmt(c_actual)
              << " (pass --c " << fmt(c_actual) << " to flow on that leaf)\n";
    return kExitUsage;
  }

  FlowOptions opts;
  if (method == "rk4") {
    opts.method = StepMethod::Rk4Fixed;
    opts.dt = dt;
  } else if (method == "rkf45") {
    opts.method = StepMethod::Rkf45;
  } else {
    throw ConfigError("--method must be rk4 or rkf45");
  }
  opts.t_max = t_max;
  opts.direction = direction;
  opts.rtol = cfg.rtol;
  opts.atol = cfg.atol;
  opts.eps_red = cfg.eps_red;
  opts.casimir_tol = cfg.casimir_tol;

  const Trajectory traj = integrate_db_flow(family, g, G, start, opts);

  const fs::path dir = prepare_out_dir(cfg, out_dir);
  {
    std::ofstream csv(dir / "trajectory.csv");
    csv << "t,x,y,z,C,G,f\n";
    for (const auto& s : traj.samples)
      csv << fmt(s.t) << "," << fmt(s.p.x) << "," << fmt(s.p.y) << ","
          << fmt(s.p.z) << "," << fmt(s.casimir) << "," << fmt(s.g_value)
          << "," << fmt(s.f_value) << "\n";
  }
  {
    std::ofstream ev(dir / "events.txt");
    for (const auto& e : traj.events)
      ev << event_name(e.kind) << " t=" << fmt(e.t) << " value=" << fmt(e.value)
         << "\n";
    ev << "termination " << termination_name(traj.termination) << "\n";
  }

  std::cout << "samples: " << traj.samples.size()
            << "  termination: " << termination_name(traj.termination)
            << "  dissipation residual: " << fmt(dissipation_check(traj))
            << "\n";
  if (traj.termination == FlowTermination::CasimirAbort ||
      traj.termination == FlowTermination::StepUnderflow)
    return kExitNumerical;
  return kExitOk;
}

int cmd_mesh(const Config& cfg, double c, int resolution,
             const std::string& out_dir) {
  if (resolution < 16) throw ConfigError("--resolution must be >= 16");
  const Family family = cfg.build();
  MeshOptions opts;
  opts.resolution = resolution;

  const MeshFile leaf = build_leaf_mesh(family, c, opts);
  const MeshFile red = build_red_mesh(family, opts);

  const fs::path dir = prepare_out_dir(cfg, out_dir);
  write_obj(leaf, (dir / "leaf.obj").string());
  write_channels_csv(leaf, (dir / "leaf_channels.csv").string());
  write_obj(red, (dir / "red.obj").string());
  write_channels_csv(red, (dir / "red_channels.csv").string());

  if (leaf.empty())
    std::cerr << "warning: leaf mesh is empty in the sampling box\n";
  if (red.empty())
    std::cerr << "warning: red-zone mesh is empty in the sampling box\n";
  std::cout << "leaf: " << leaf.vertices.size() << " vertices, "
            << leaf.triangles.size() << " triangles; red: "
            << red.vertices.size() << " vertices, " << red.triangles.size()
            << " triangles\n";
  return kExitOk;
}

std::vector<double> random_symmetric_with_spectrum(
    int n, const std::vector<double>& spectrum, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // Random orthogonal Q by Gram-Schmidt on a Gaussian matrix.
  std::vector<std::vector<double>> q(n, std::vector<double>(n));
  for (int col = 0; col < n; ++col) {
    for (int i = 0; i < n; ++i) q[i][col] = gauss(rng);
    for (int prev = 0; prev < col; ++prev) {
      double proj = 0.0;
      for (int i = 0; i < n; ++i) proj += q[i][col] * q[i][prev];
      for (int i = 0; i < n; ++i) q[i][col] -= proj * q[i][prev];
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += q[i][col] * q[i][col];
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) q[i][col] /= norm;
  }
  std::vector<double> l(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = 0.0;
      for (int k = 0; k < n; ++k) v += q[i][k] * spectrum[k] * q[j][k];
      l[i * n + j] = v;
      l[j * n + i] = v;
    }
  return l;
}

int cmd_brockett(int n, const std::string& spectrum_str,
                 const std::string& matrix_path, const std::string& ndiag_str,
                 std::uint64_t seed, double t_max, const Config& cfg,
                 const std::string& out_dir) {
  if (n < 2) throw ConfigError("--n must be >= 2");

  std::vector<double> l;
  if (!matrix_path.empty()) {
    std::ifstream in(matrix_path);
    if (!in) throw ConfigError("cannot open matrix file " + matrix_path);
    l.assign(n * n, 0.0);
    for (int i = 0; i < n * n; ++i)
      if (!(in >> l[i]))
        throw ConfigError("matrix file has fewer than n*n entries");
  } else {
    std::vector<double> spectrum;
    if (!spectrum_str.empty()) {
      spectrum = parse_number_list(spectrum_str, "--spectrum");
      if (static_cast<int>(spectrum.size()) != n)
        throw ConfigError("--spectrum needs exactly n entries");
    } else {
      for (int i = 1; i <= n; ++i) spectrum.push_back(i);
    }
    l = random_symmetric_with_spectrum(n, spectrum, seed);
  }

  std::vector<double> n_diag;
  if (!ndiag_str.empty()) {
    n_diag = parse_number_list(ndiag_str, "--ndiag");
    if (static_cast<int>(n_diag.size()) != n)
      throw ConfigError("--ndiag needs exactly n entries");
  } else {
    for (int i = n; i >= 1; --i) n_diag.push_back(i);
  }

  SymMatrixState state;
  try {
    state = SymMatrixState::from_matrix(n, std::move(l), std::move(n_diag));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  BrockettOptions opts;
  opts.t_max = t_max;
  const BrockettTrajectory traj = brockett_flow(state, opts);

  const fs::path dir = prepare_out_dir(cfg, out_dir);
  {
    std::ofstream csv(dir / "brockett.csv");
    csv << "t,offdiag_norm,eigenvalue_drift\n";
    for (const auto& s : traj.samples)
      csv << fmt(s.t) << "," << fmt(s.offdiag_norm) << ","
          << fmt(s.eigenvalue_drift) << "\n";
  }

  std::cout << (traj.converged ? "converged" : "stopped at t-max")
            << "; final diagonal:";
  for (double d : traj.final_diagonal) std::cout << " " << fmt(d);
  std::cout << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symplectic-leaf geometry and double-bracket flow toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out", out_dir, "output directory (overrides config)");
  };

  double c = 0.0;
  int points = 1000, resolution = 64, n = 5;
  std::uint64_t seed = 0;
  std::string start_str, g_src, method = "rkf45";
  std::string spectrum_str, matrix_path, ndiag_str;
  double t_max = 10.0, direction = 1.0, dt = 1e-3;
  double brockett_t_max = 100.0;

  CLI::App* analyze = app.add_subcommand("analyze", "classify the leaf C = c");
  add_common(analyze);
  analyze->add_option("--c", c, "leaf label")->required();

  CLI::App* verify = app.add_subcommand("verify", "run the identity suite");
  add_common(verify);
  verify->add_option("--points", points, "number of sample points");
  verify->add_option("--seed", seed, "RNG seed");

  CLI::App* flow = app.add_subcommand("flow", "integrate the gradient flow");
  add_common(flow);
  flow->add_option("--c", c, "leaf label")->required();
  flow->add_option("--start", start_str, "start point x,y,z")->required();
  flow->add_option("--G", g_src, "scalar field expression")->required();
  flow->add_option("--t-max", t_max, "integration horizon");
  flow->add_option("--direction", direction, "+1 or -1")
      ->check(CLI::IsMember({1.0, -1.0}));
  flow->add_option("--method", method, "rk4 or rkf45")
      ->check(CLI::IsMember({"rk4", "rkf45"}));
  flow->add_option("--dt", dt, "fixed step size (rk4 only)");

  CLI::App* mesh = app.add_subcommand("mesh", "export leaf and red meshes");
  add_common(mesh);
  mesh->add_option("--c", c, "leaf label")->required();
  mesh->add_option("--resolution", resolution, "grid resolution (>= 16)");

  CLI::App* brockett =
      app.add_subcommand("brockett", "isospectral matrix flow demo");
  add_common(brockett);
  brockett->add_option("--n", n, "matrix dimension");
  brockett->add_option("--spectrum", spectrum_str, "target spectrum a,b,...");
  brockett->add_option("--matrix", matrix_path,
                       "whitespace-separated n*n symmetric matrix file");
  brockett->add_option("--ndiag", ndiag_str, "diagonal of N");
  brockett->add_option("--seed", seed, "RNG seed");
  brockett->add_option("--t-max", brockett_t_max, "integration horizon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Config cfg;
    if (!config_path.empty()) cfg = load_config(config_path);

    if (analyze->parsed()) return cmd_analyze(cfg, c, out_dir);
    if (verify->parsed()) return cmd_verify(cfg, points, seed, out_dir);
    if (flow->parsed())
      return cmd_flow(cfg, c, start_str, g_src, t_max, direction, method, dt,
                      out_dir);
    if (mesh->parsed()) return cmd_mesh(cfg, c, resolution, out_dir);
    if (brockett->parsed())
      return cmd_brockett(n, spectrum_str, matrix_path, ndiag_str, seed,
                          brockett_t_max, cfg, out_dir);
  } catch (const NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ParseError& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
