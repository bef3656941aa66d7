#include "droplet/measures.hpp"

#include "droplet/droplet.hpp"
#include "droplet/line_equilibrium.hpp"
#include "droplet/quadrature.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace droplet {

MeasureDensity::MeasureDensity(Line payload, double total_mass)
    : kind_(Kind::line), total_mass_(total_mass), payload_(std::move(payload)) {}
MeasureDensity::MeasureDensity(Planar payload, double total_mass)
    : kind_(Kind::planar), total_mass_(total_mass), payload_(std::move(payload)) {}
MeasureDensity::MeasureDensity(Atoms payload, double total_mass)
    : kind_(Kind::atoms), total_mass_(total_mass), payload_(std::move(payload)) {}
MeasureDensity::MeasureDensity(GreatCircle payload, double total_mass)
    : kind_(Kind::boundary), total_mass_(total_mass), payload_(std::move(payload)) {}

namespace {

double line_integral(bool full_line, double lo, double hi,
                     const std::function<double(double)>& f, double tol) {
  if (full_line)
    return integrate_real_line(f, tol);
  if (std::abs(lo + hi) > 1e-12 * std::max(1.0, std::abs(hi)))
    throw std::logic_error("line_integral: expected a symmetric interval");
  return integrate_sqrt_interval(f, hi, tol);
}

} // namespace

double MeasureDensity::mass_by_quadrature(double abs_tol) const {
  switch (kind_) {
  case Kind::line: {
    const Line& l = line();
    return line_integral(l.full_line, l.lo, l.hi, l.density, abs_tol);
  }
  case Kind::planar:
    return integrate_ellipse(planar().region, planar().density, abs_tol);
  case Kind::atoms: {
    double m = 0.0;
    for (const auto& [p, w] : atoms().atoms)
      m += w;
    return m;
  }
  case Kind::boundary: {
    const GreatCircle& g = great_circle();
    return line_integral(g.full_line, g.lo, g.hi, g.density_ds, abs_tol);
  }
  }
  return 0.0;
}

double MeasureDensity::planar_log_moment(double abs_tol) const {
  switch (kind_) {
  case Kind::line: {
    const Line& l = line();
    return line_integral(
        l.full_line, l.lo, l.hi,
        [&](double s) { return std::log1p(s * s) * l.density(s); }, abs_tol);
  }
  case Kind::planar:
    return integrate_ellipse(
        planar().region,
        [&](Complex w) { return std::log1p(std::norm(w)) * planar().density(w); },
        abs_tol);
  case Kind::atoms: {
    double m = 0.0;
    for (const auto& [p, w] : atoms().atoms) {
      const PlanePoint z = project(p);
      if (z.is_infinity())
        throw std::domain_error("planar_log_moment: atom at the north pole");
      m += w * std::log1p(std::norm(z.value()));
    }
    return m;
  }
  case Kind::boundary: {
    const GreatCircle& g = great_circle();
    return line_integral(
        g.full_line, g.lo, g.hi,
        [&](double s) { return std::log1p(s * s) * g.density_ds(s); }, abs_tol);
  }
  }
  return 0.0;
}

double MeasureDensity::great_circle_arclength_density(double s) const {
  // d(arclength) = 2 ds / (1+s^2) along phi^{-1}(s).
  return great_circle().density_ds(s) * (1.0 + s * s) / 2.0;
}

MeasureDensity MeasureDensity::mu_V(const ProblemParams& params) {
  auto eq = std::make_shared<LineEquilibrium>(params);
  Line l;
  if (params.regime() == Regime::postcritical) {
    l.full_line = false;
    l.lo = -eq->A();
    l.hi = eq->A();
  } else {
    l.full_line = true;
  }
  l.density = [eq](double x) { return eq->density(x); };
  return MeasureDensity(std::move(l), 1.0);
}

MeasureDensity MeasureDensity::mu_Omega(const ProblemParams& params) {
  const EllipseGeometry g = EllipseGeometry::from_params(params);
  const double scale = 1.0 + 2.0 * params.a();
  Planar pl;
  pl.region = EllipseRegion{Complex(0.0, 0.0), g.p, g.q};
  pl.density = [scale](Complex w) {
    return scale * pushforward_density_weight(w);
  };
  return MeasureDensity(std::move(pl), 1.0);
}

MeasureDensity MeasureDensity::lambda_D_pushforward(const ProblemParams& params) {
  const EllipseGeometry g = EllipseGeometry::from_params(params);
  Planar pl;
  pl.region = EllipseRegion{Complex(0.0, 0.0), g.p, g.q};
  pl.density = [](Complex w) { return pushforward_density_weight(w); };
  return MeasureDensity(std::move(pl), params.t());
}

MeasureDensity MeasureDensity::cap_pushforward(const SphericalCap& cap) {
  const ProjectedCapCircle circle = project_cap(cap);
  if (circle.cap_contains_north_pole || circle.north_pole_on_boundary)
    throw std::domain_error("cap_pushforward: cap image is unbounded");
  Planar pl;
  pl.region = EllipseRegion::disk(circle.center, circle.radius);
  pl.density = [](Complex w) { return pushforward_density_weight(w); };
  return MeasureDensity(std::move(pl), cap_area(cap));
}

MeasureDensity MeasureDensity::sigma(const ProblemParams& params) {
  Atoms at;
  at.atoms.emplace_back(unproject(PlanePoint(Complex(0.0, params.b()))), params.a());
  at.atoms.emplace_back(unproject(PlanePoint(Complex(0.0, -params.b()))), params.a());
  return MeasureDensity(std::move(at), 2.0 * params.a());
}

MeasureDensity MeasureDensity::mother_body(const ProblemParams& params) {
  auto eq = std::make_shared<LineEquilibrium>(params);
  const double inv2a = 1.0 / (2.0 * params.a());
  GreatCircle g;
  if (params.regime() == Regime::postcritical) {
    g.full_line = false;
    g.lo = -eq->A();
    g.hi = eq->A();
  } else {
    g.full_line = true;
  }
  g.density_ds = [eq, inv2a](double s) { return inv2a * eq->density(s); };
  return MeasureDensity(std::move(g), inv2a);
}

MeasureDensity MeasureDensity::omega_t(double b, double t) {
  const ProblemParams params = ProblemParams::from_t(b, t);
  if (params.regime() != Regime::postcritical)
    throw std::domain_error("omega_t: t must lie in (0, t_cr)");
  const auto [A, C] = LineEquilibrium::compute_A_C(params);
  (void)C;
  Line l;
  l.full_line = false;
  l.lo = -A;
  l.hi = A;
  l.density = [b, A](double x) {
    return 0.5 * (balayage_point_to_interval(b, A, x) +
                  balayage_point_to_interval(1.0 / b, A, x));
  };
  return MeasureDensity(std::move(l), 1.0);
}

} // namespace droplet
