// dropletlab: parameter reports, verification suites and plot-data export
// for the two-charge equilibrium problem on the sphere.

#include "droplet/droplet.hpp"
#include "droplet/dynamics.hpp"
#include "droplet/line_equilibrium.hpp"
#include "droplet/particle_oracle.hpp"
#include "droplet/potentials.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using droplet::Complex;
using droplet::ProblemParams;
using droplet::Regime;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct ParamsSpec {
  double b = 2.0;
  std::optional<double> a;
  std::optional<double> t;

  ProblemParams resolve() const {
    if (a.has_value() == t.has_value())
      throw CLI::ValidationError("exactly one of --a or --t is required");
    if (a)
      return ProblemParams(b, *a);
    return ProblemParams::from_t(b, *t);
  }
};

void add_param_flags(CLI::App* cmd, ParamsSpec& spec) {
  cmd->add_option("--b", spec.b, "charge height: charges sit at phi^{-1}(+-ib)")
      ->check(CLI::Range(1.0, 1e6));
  auto* a = cmd->add_option("--a", spec.a, "charge strength");
  auto* t = cmd->add_option("--t", spec.t, "time parameter t = 1/(1+2a)");
  a->excludes(t);
}

int write_output(const std::string& out, const std::string& payload) {
  if (out.empty() || out == "-") {
    std::cout << payload;
    return kExitOk;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os) {
    std::cerr << "error: cannot open output path: " << out << "\n";
    return kExitUsage;
  }
  os << payload;
  if (!os.good()) {
    std::cerr << "error: write failed: " << out << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_params(const ParamsSpec& spec, const std::string& format,
               const std::string& out) {
  const ProblemParams params = spec.resolve();
  json j;
  j["b"] = params.b();
  j["a"] = params.a();
  j["regime"] = droplet::to_string(params.regime());
  j["a_cr"] = params.a_cr();
  j["t"] = params.t();
  j["t_cr"] = params.t_cr();
  j["masses"] = {{"m_sigma", 2.0 * params.a()},
                 {"lambda_D", params.t()},
                 {"m_sigma_star", 1.0 / (2.0 * params.a())},
                 {"lambda_D_star", 1.0 - params.t()}};
  switch (params.regime()) {
  case Regime::postcritical: {
    const auto [A, C] = droplet::LineEquilibrium::compute_A_C(params);
    const droplet::EllipseGeometry g = droplet::EllipseGeometry::from_params(params);
    j["A"] = A;
    j["C"] = C;
    j["p2"] = g.p * g.p;
    j["q2"] = g.q * g.q;
    j["focal_r"] = g.r;
    break;
  }
  case Regime::critical:
    j["strip_half_width"] = (params.b() * params.b() - 1.0) / (2.0 * params.b());
    break;
  case Regime::subcritical:
    j["cap_area"] = params.a() / (1.0 + 2.0 * params.a());
    j["cap_radius"] =
        droplet::cap_radius_for_area(params.a() / (1.0 + 2.0 * params.a()));
    break;
  }

  if (format == "json")
    return write_output(out, j.dump(2) + "\n");

  std::string text;
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      text += key + ":\n";
      for (const auto& [k2, v2] : value.items())
        text += "  " + k2 + " = " + fmt17(v2.get<double>()) + "\n";
    } else if (value.is_number()) {
      text += key + " = " + fmt17(value.get<double>()) + "\n";
    } else {
      text += key + " = " + value.get<std::string>() + "\n";
    }
  }
  return write_output(out, text);
}

json report_to_json(const droplet::VerificationReport& rep) {
  return json::parse(rep.to_json());
}

json skipped_report(const std::string& name, const std::string& why) {
  json j;
  j["check_name"] = name;
  j["grid"] = why;
  j["constants"] = json::object();
  j["max_equality_residual"] = 0.0;
  j["worst_inequality_violation"] = 0.0;
  j["tolerance"] = 0.0;
  j["passed"] = true;
  j["skipped"] = true;
  return j;
}

int cmd_verify(const ParamsSpec& spec, const std::string& suite, int grid_n,
               double tol, const std::string& out) {
  const ProblemParams params = spec.resolve();
  const Regime regime = params.regime();
  const bool all = suite == "all";
  json reports = json::array();
  bool failed = false;

  enum class Needs { any, postcritical, noncritical };
  const auto run = [&](const std::string& name, auto&& fn, Needs needs) {
    if (!all && suite != name)
      return;
    if (needs == Needs::postcritical && regime != Regime::postcritical) {
      reports.push_back(skipped_report(name, "requires the postcritical regime"));
      return;
    }
    if (needs == Needs::noncritical && regime == Regime::critical) {
      reports.push_back(skipped_report(name, "not defined at the critical charge"));
      return;
    }
    const droplet::VerificationReport rep = fn();
    if (!rep.passed) {
      failed = true;
      std::cerr << "verification failed: " << rep.check_name
                << " (max_equality_residual=" << rep.max_equality_residual
                << ", worst_inequality_violation=" << rep.worst_inequality_violation
                << ", tolerance=" << rep.tolerance << ")\n";
    }
    reports.push_back(report_to_json(rep));
  };

  run("frostman",
      [&] { return droplet::verify_frostman_sphere(params, grid_n, tol); },
      Needs::any);
  run("mother-body",
      [&] { return droplet::verify_mother_body(params, grid_n, tol); },
      Needs::any);
  run("schwarz", [&] { return droplet::verify_schwarz_identity(params, 256); },
      Needs::postcritical);
  run("stieltjes",
      [&] { return droplet::verify_stieltjes_identities(params, 50, tol); },
      Needs::postcritical);
  run("quadrature-domain",
      [&] { return droplet::verify_quadrature_domain(params, tol); },
      Needs::noncritical);
  run("dynamics",
      [&] {
        return droplet::verify_growth_inequalities(params.b(), params.t(), grid_n,
                                                   tol);
      },
      Needs::postcritical);

  if (reports.empty()) {
    std::cerr << "error: unknown suite: " << suite << "\n";
    return kExitUsage;
  }
  const int rc = write_output(out, reports.dump(2) + "\n");
  if (rc != kExitOk)
    return rc;
  return failed ? kExitVerifyFailed : kExitOk;
}

std::string csv_boundary(const droplet::Droplet& drop, int n) {
  std::string csv = "z_re,z_im,x1,x2,x3\n";
  for (const auto& s : drop.boundary_samples(n)) {
    csv += fmt17(s.z.real()) + "," + fmt17(s.z.imag()) + "," + fmt17(s.x.x1) +
           "," + fmt17(s.x.x2) + "," + fmt17(s.x.x3) + "\n";
  }
  return csv;
}

int cmd_export(const ParamsSpec& spec, const std::string& kind, int n,
               int grid_n, std::uint64_t seed, int n_particles, int restarts,
               const std::string& format, const std::string& out) {
  const ProblemParams params = spec.resolve();

  if (kind == "boundary") {
    const droplet::Droplet drop = droplet::Droplet::build(params);
    if (format == "csv")
      return write_output(out, csv_boundary(drop, n));
    json rows = json::array();
    for (const auto& s : drop.boundary_samples(n))
      rows.push_back({{"z_re", s.z.real()},
                      {"z_im", s.z.imag()},
                      {"x1", s.x.x1},
                      {"x2", s.x.x2},
                      {"x3", s.x.x3}});
    return write_output(out, rows.dump(2) + "\n");
  }

  if (kind == "density") {
    const droplet::LineEquilibrium eq(params);
    const double X = params.regime() == Regime::postcritical ? 1.2 * eq.A() : 5.0;
    const int rows_n = grid_n % 2 == 0 ? grid_n + 1 : grid_n; // include x = 0
    if (format == "csv") {
      std::string csv = "x,density\n";
      for (int k = 0; k < rows_n; ++k) {
        const double x = -X + 2.0 * X * k / (rows_n - 1);
        csv += fmt17(x) + "," + fmt17(eq.density(x)) + "\n";
      }
      return write_output(out, csv);
    }
    json rows = json::array();
    for (int k = 0; k < rows_n; ++k) {
      const double x = -X + 2.0 * X * k / (rows_n - 1);
      rows.push_back({{"x", x}, {"density", eq.density(x)}});
    }
    return write_output(out, rows.dump(2) + "\n");
  }

  if (kind == "dynamics") {
    const double tcr = params.t_cr();
    if (!(tcr > 0.0)) {
      std::cerr << "error: dynamics export needs b > 1\n";
      return kExitUsage;
    }
    json rows = json::array();
    std::string csv = "t,a,p,q,A,lambda_mass,rho_mass,balayage_residual\n";
    for (int k = 1; k <= n; ++k) {
      const double t = tcr * k / (n + 1);
      const ProblemParams pt = ProblemParams::from_t(params.b(), t);
      const droplet::EllipseGeometry g = droplet::EllipseGeometry::from_params(pt);
      const droplet::BoundaryMeasure rho =
          droplet::BoundaryMeasure::build(params.b(), t, 128);
      const double mass = droplet::droplet_normalized_area(pt, 1e-8);
      // residual of the balayage property at a fixed interior probe
      const Complex z0 = 0.55 * g.boundary_point(0.77);
      const double residual =
          std::abs(rho.potential(z0) +
                   0.5 * std::log(std::abs(z0 * z0 + params.b() * params.b())) -
                   rho.interior_constant());
      if (format == "csv") {
        csv += fmt17(t) + "," + fmt17(pt.a()) + "," + fmt17(g.p) + "," +
               fmt17(g.q) + "," + fmt17(g.r) + "," + fmt17(mass) + "," +
               fmt17(rho.mass()) + "," + fmt17(residual) + "\n";
      } else {
        rows.push_back({{"t", t},
                        {"a", pt.a()},
                        {"p", g.p},
                        {"q", g.q},
                        {"A", g.r},
                        {"lambda_mass", mass},
                        {"rho_mass", rho.mass()},
                        {"balayage_residual", residual}});
      }
    }
    return write_output(out, format == "csv" ? csv : rows.dump(2) + "\n");
  }

  if (kind == "oracle") {
    droplet::OracleOptions opt;
    opt.restarts = restarts;
    const droplet::Configuration cfg =
        droplet::minimize(n_particles, params, seed, opt);
    if (format == "csv") {
      std::string csv = "x1,x2,x3\n";
      for (const auto& p : cfg.points)
        csv += fmt17(p.x1) + "," + fmt17(p.x2) + "," + fmt17(p.x3) + "\n";
      return write_output(out, csv);
    }
    json j;
    j["n"] = n_particles;
    j["b"] = params.b();
    j["a"] = params.a();
    j["seed"] = cfg.seed;
    j["energy"] = cfg.energy;
    j["iterations"] = cfg.iterations;
    j["converged"] = cfg.converged;
    json pts = json::array();
    for (const auto& p : cfg.points)
      pts.push_back({p.x1, p.x2, p.x3});
    j["points"] = pts;
    return write_output(out, j.dump(2) + "\n");
  }

  std::cerr << "error: unknown export kind: " << kind << "\n";
  return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"dropletlab: equilibrium droplets on the sphere under two point charges"};
  app.require_subcommand(1);

  ParamsSpec params_spec, verify_spec, export_spec;
  std::string format = "text";
  std::string out;
  std::string suite = "all";
  std::string kind;
  int grid_n = 400;
  double tol = 1e-6;
  int n = 256;
  std::uint64_t seed = 1;
  int n_particles = 200;
  int restarts = 1;

  CLI::App* cmd_params_app = app.add_subcommand("params", "derived parameter report");
  add_param_flags(cmd_params_app, params_spec);
  cmd_params_app->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  cmd_params_app->add_option("--out", out, "output path (default stdout)");

  CLI::App* cmd_verify_app =
      app.add_subcommand("verify", "run verification suites, exit 1 on failure");
  add_param_flags(cmd_verify_app, verify_spec);
  cmd_verify_app->add_option("--suite", suite)
      ->check(CLI::IsMember({"frostman", "mother-body", "schwarz", "stieltjes",
                             "quadrature-domain", "dynamics", "all"}));
  cmd_verify_app->add_option("--grid-n", grid_n, "grid points per side")
      ->check(CLI::Range(10, 100000));
  cmd_verify_app->add_option("--tol", tol, "verification tolerance");
  cmd_verify_app->add_option("--out", out, "report path (default stdout)");

  CLI::App* cmd_export_app = app.add_subcommand("export", "export plot/run data");
  add_param_flags(cmd_export_app, export_spec);
  cmd_export_app->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"boundary", "density", "dynamics", "oracle"}));
  cmd_export_app->add_option("--n", n, "samples/rows to emit")->check(CLI::Range(3, 1000000));
  cmd_export_app->add_option("--grid-n", grid_n, "density grid size");
  cmd_export_app->add_option("--seed", seed, "oracle RNG seed");
  cmd_export_app->add_option("--n-particles", n_particles)->check(CLI::Range(2, 100000));
  cmd_export_app->add_option("--restarts", restarts)->check(CLI::Range(1, 64));
  cmd_export_app->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  cmd_export_app->add_option("--out", out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_params_app->parsed()) {
      if (format == "csv")
        format = "text";
      return cmd_params(params_spec, format, out);
    }
    if (cmd_verify_app->parsed())
      return cmd_verify(verify_spec, suite, grid_n, tol, out);
    if (cmd_export_app->parsed()) {
      if (format == "text")
        format = "csv";
      return cmd_export(export_spec, kind, n, grid_n, seed, n_particles, restarts,
                        format, out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
