#include "droplet/potentials.hpp"

#include "droplet/line_equilibrium.hpp"
#include "droplet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace droplet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLog2 = std::numbers::ln2;

double median(std::vector<double> v) {
  if (v.empty())
    throw std::logic_error("median of empty sample");
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// 1D logarithmic potential of a line density, with the kernel singularity
// split off when z lies on the carrier interval.
double line_log_potential(bool full_line, double hi,
                          const std::function<double(double)>& dens, Complex z,
                          double tol) {
  const bool on_axis = std::abs(z.imag()) < 1e-13;
  if (!full_line) {
    const double A = hi;
    const auto g = [&](double tau) {
      const double s = A * std::sin(tau);
      return -std::log(std::abs(z - s)) * dens(s) * A * std::cos(tau);
    };
    std::vector<double> sing;
    if (on_axis && std::abs(z.real()) < A)
      sing.push_back(std::asin(z.real() / A));
    return integrate_with_singularities(g, -kPi / 2, kPi / 2, sing, tol);
  }
  const double a = -kPi / 2 + 1e-13, b = kPi / 2 - 1e-13;
  const auto g = [&](double tau) {
    const double c = std::cos(tau);
    const double s = std::tan(tau);
    return -std::log(std::abs(z - s)) * dens(s) / (c * c);
  };
  std::vector<double> sing = {a, b};
  if (on_axis)
    sing.push_back(std::atan(z.real()));
  return integrate_with_singularities(g, a, b, sing, tol);
}

double atoms_log_potential(const MeasureDensity::Atoms& at, Complex z) {
  double sum = 0.0;
  for (const auto& [p, w] : at.atoms) {
    const PlanePoint zi = project(p);
    const double d = std::abs(z - zi.value());
    if (d < 1e-14)
      throw EvaluationAtAtom("log_potential: evaluation at an atom");
    sum += -w * std::log(d);
  }
  return sum;
}

// Polar rule for an interior point with a general log-singular kernel.
double interior_polar_potential(const EllipseRegion& region,
                                const std::function<double(Complex, double)>& kernel_times_f,
                                Complex z, double tol) {
  const auto I = [&](double phi) {
    const double R = region.ray_exit(z, phi);
    const Complex dir(std::cos(phi), std::sin(phi));
    double sum = 0.0;
    double hiR = R;
    for (int k = 0; k < 44 && hiR > 1e-300; ++k) {
      const double lo = 0.5 * hiR;
      sum += integrate_gauss(
          [&](double rho) { return kernel_times_f(z + rho * dir, rho) * rho; },
          lo, hiR, 8);
      hiR = lo;
    }
    return sum;
  };
  int m = 64;
  double prev = integrate_periodic(I, m);
  while (m < 8192) {
    m *= 2;
    const double cur = integrate_periodic(I, m);
    if (std::abs(cur - prev) <= tol)
      return cur;
    prev = cur;
  }
  return prev;
}

} // namespace

double lebesgue_potential_constant() { return 0.5 - kLog2; }

double cap_log_potential(double cap_radius, double theta, double abs_tol) {
  if (!(cap_radius > 0.0 && cap_radius <= kPi))
    throw std::domain_error("cap_log_potential: radius must lie in (0, pi]");
  const auto f = [&](double tp) {
    const double arg = std::abs(std::sin(0.5 * (theta - tp))) +
                       std::sin(0.5 * (theta + tp));
    return -0.5 * std::sin(tp) * std::log(arg);
  };
  std::vector<double> sing;
  if (theta > 0.0 && theta <= cap_radius)
    sing.push_back(theta);
  if (theta >= kPi - 1e-9 && cap_radius >= kPi - 1e-9)
    sing.push_back(kPi); // argument vanishes at the antipode of a full cap
  return integrate_with_singularities(f, 0.0, cap_radius, sing, abs_tol);
}

double cap_mean_value_constant(double r) {
  return 0.5 * ((1.0 + std::cos(r)) * std::log(std::cos(0.5 * r)) -
                0.5 * std::cos(r) + 0.5);
}

double log_potential(const MeasureDensity& mu, const PlanePoint& zp,
                     double abs_tol) {
  if (zp.is_infinity())
    throw std::domain_error("log_potential: planar potential diverges at infinity");
  const Complex z = zp.value();
  switch (mu.kind()) {
  case MeasureDensity::Kind::atoms:
    return atoms_log_potential(mu.atoms(), z);
  case MeasureDensity::Kind::planar:
    return ellipse_log_potential(mu.planar().region, mu.planar().density, z,
                                 abs_tol);
  case MeasureDensity::Kind::line: {
    const auto& l = mu.line();
    return line_log_potential(l.full_line, l.hi, l.density, z, abs_tol);
  }
  case MeasureDensity::Kind::boundary: {
    const auto& g = mu.great_circle();
    return line_log_potential(g.full_line, g.hi, g.density_ds, z, abs_tol);
  }
  }
  return 0.0;
}

namespace {

double direct_sphere_potential(const MeasureDensity& mu, const SpherePoint& x,
                               double tol) {
  switch (mu.kind()) {
  case MeasureDensity::Kind::atoms: {
    double sum = 0.0;
    for (const auto& [p, w] : mu.atoms().atoms) {
      const double d = euclidean_distance(x, p);
      if (d < 1e-14)
        throw EvaluationAtAtom("sphere_log_potential: evaluation at an atom");
      sum += -w * std::log(d);
    }
    return sum;
  }
  case MeasureDensity::Kind::line:
  case MeasureDensity::Kind::boundary: {
    // Lift to the great circle phi^{-1}(s) and integrate the 3D kernel.
    const bool full = mu.kind() == MeasureDensity::Kind::line
                          ? mu.line().full_line
                          : mu.great_circle().full_line;
    const double hi = mu.kind() == MeasureDensity::Kind::line
                          ? mu.line().hi
                          : mu.great_circle().hi;
    const auto dens = mu.kind() == MeasureDensity::Kind::line
                          ? mu.line().density
                          : mu.great_circle().density_ds;
    const auto kernel = [&](double s) {
      const SpherePoint y = unproject(PlanePoint(Complex(s, 0.0)));
      return -std::log(euclidean_distance(x, y)) * dens(s);
    };
    std::vector<double> sing;
    const bool on_circle = std::abs(x.x2) < 1e-13;
    if (!full) {
      const auto g = [&](double tau) {
        const double s = hi * std::sin(tau);
        return kernel(s) * hi * std::cos(tau);
      };
      if (on_circle && !project(x).is_infinity() &&
          std::abs(project(x).value().real()) < hi &&
          std::abs(project(x).value().imag()) < 1e-13)
        sing.push_back(std::asin(project(x).value().real() / hi));
      return integrate_with_singularities(g, -kPi / 2, kPi / 2, sing, tol);
    }
    const double a = -kPi / 2 + 1e-13, b = kPi / 2 - 1e-13;
    const auto g = [&](double tau) {
      const double c = std::cos(tau);
      return kernel(std::tan(tau)) / (c * c);
    };
    sing = {a, b};
    if (on_circle && !project(x).is_infinity() &&
        std::abs(project(x).value().imag()) < 1e-13)
      sing.push_back(std::atan(project(x).value().real()));
    return integrate_with_singularities(g, a, b, sing, tol);
  }
  case MeasureDensity::Kind::planar: {
    const auto& pl = mu.planar();
    const PlanePoint zp = project(x);
    if (zp.is_infinity()) {
      const auto F = [&](Complex w) {
        return -std::log(2.0 / std::sqrt(1.0 + std::norm(w))) * pl.density(w);
      };
      return integrate_ellipse(pl.region, F, tol);
    }
    const Complex z = zp.value();
    if (pl.region.contains(z)) {
      const auto kf = [&](Complex w, double rho) {
        const double chord = 2.0 * rho /
                             (std::sqrt(1.0 + std::norm(z)) * std::sqrt(1.0 + std::norm(w)));
        return -std::log(chord) * pl.density(w);
      };
      return interior_polar_potential(pl.region, kf, z, tol);
    }
    const auto F = [&](Complex w) {
      return -std::log(chordal_distance(z, w)) * pl.density(w);
    };
    // Smooth integrand: reuse the adaptive region rule.
    return integrate_ellipse(pl.region, F, tol);
  }
  }
  return 0.0;
}

} // namespace

double sphere_log_potential(const MeasureDensity& mu, const SpherePoint& x,
                            SpherePotentialPath path, double abs_tol) {
  if (path == SpherePotentialPath::direct)
    return direct_sphere_potential(mu, x, abs_tol);
  const double m = mu.total_mass();
  const double M = mu.planar_log_moment(0.1 * abs_tol);
  const PlanePoint zp = project(x);
  if (zp.is_infinity())
    return -m * kLog2 + 0.5 * M;
  return log_potential(mu, zp, abs_tol) +
         0.5 * m * std::log1p(std::norm(zp.value())) +
         potential_transform_constant(m, M);
}

MeasureDensity build_mother_body(const ProblemParams& params) {
  return MeasureDensity::mother_body(params);
}

namespace {

// Evaluator for U^{lambda_D} with the regime-independent pieces
// precomputed once.
class LambdaDPotentialEval {
public:
  LambdaDPotentialEval(const ProblemParams& params, double tol)
      : params_(params), tol_(tol) {
    if (params.regime() == Regime::postcritical) {
      const EllipseGeometry g = EllipseGeometry::from_params(params);
      region_ = EllipseRegion{Complex(0.0, 0.0), g.p, g.q};
      const double t = params.t();
      log_moment_ = integrate_ellipse(
          region_,
          [](Complex w) {
            return std::log1p(std::norm(w)) * pushforward_density_weight(w);
          },
          0.05 * tol);
      t_ = t;
      postcritical_ = true;
    } else {
      const double area = params.a() / (1.0 + 2.0 * params.a());
      const double r = params.regime() == Regime::critical
                           ? std::acos((params.b() * params.b() - 1.0) /
                                       (params.b() * params.b() + 1.0))
                           : cap_radius_for_area(area);
      c1_ = unproject(PlanePoint(Complex(0.0, params.b())));
      c2_ = unproject(PlanePoint(Complex(0.0, -params.b())));
      cap_radius_ = r;
    }
  }

  bool postcritical() const { return postcritical_; }
  const EllipseRegion& region() const { return region_; }
  double log_moment() const { return log_moment_; }

  // Planar potential U^{nu}(z) of the pushforward of lambda_D.
  double planar_potential(Complex z) const {
    return ellipse_log_potential(
        region_, [](Complex w) { return pushforward_density_weight(w); }, z,
        tol_);
  }

  double operator()(const SpherePoint& x) const {
    if (postcritical_) {
      const PlanePoint zp = project(x);
      if (zp.is_infinity())
        return -t_ * kLog2 + 0.5 * log_moment_;
      const Complex z = zp.value();
      return planar_potential(z) + 0.5 * t_ * std::log1p(std::norm(z)) +
             potential_transform_constant(t_, log_moment_);
    }
    return lebesgue_potential_constant() -
           cap_log_potential(cap_radius_, geodesic_angle(x, c1_), 1e-12) -
           cap_log_potential(cap_radius_, geodesic_angle(x, c2_), 1e-12);
  }

private:
  ProblemParams params_;
  double tol_;
  bool postcritical_ = false;
  EllipseRegion region_;
  double t_ = 0.0;
  double log_moment_ = 0.0;
  SpherePoint c1_, c2_;
  double cap_radius_ = 0.0;
};

struct SphereGrids {
  std::vector<SpherePoint> interior; // on the droplet D
  std::vector<SpherePoint> exterior; // on S^2 \ D
  std::string description;
};

SphereGrids build_sphere_grids(const Droplet& droplet, int n_each,
                               double boundary_guard = 1e-3,
                               double charge_guard = 1e-3) {
  const ProblemParams& params = droplet.params();
  const SpherePoint p1 = unproject(PlanePoint(Complex(0.0, params.b())));
  const SpherePoint p2 = unproject(PlanePoint(Complex(0.0, -params.b())));

  const auto samples = droplet.boundary_samples(720);
  const auto boundary_distance = [&](const SpherePoint& x) {
    if (droplet.is_cap_complement()) {
      const auto& c = droplet.caps();
      return std::min(
          std::abs(geodesic_angle(x, c.cap1.center) - c.cap1.geodesic_radius),
          std::abs(geodesic_angle(x, c.cap2.center) - c.cap2.geodesic_radius));
    }
    double d = kPi;
    for (const auto& s : samples)
      d = std::min(d, geodesic_angle(x, s.x));
    return d;
  };

  SphereGrids grids;
  int n = 16 * n_each;
  for (int attempt = 0; attempt < 4; ++attempt) {
    grids.interior.clear();
    grids.exterior.clear();
    for (const SpherePoint& x : fibonacci_sphere(n)) {
      if ((int)grids.interior.size() >= n_each &&
          (int)grids.exterior.size() >= n_each)
        break;
      if (geodesic_angle(x, p1) < charge_guard ||
          geodesic_angle(x, p2) < charge_guard)
        continue;
      if (boundary_distance(x) < boundary_guard)
        continue;
      if (droplet.contains(project(x))) {
        if ((int)grids.interior.size() < n_each)
          grids.interior.push_back(x);
      } else if ((int)grids.exterior.size() < n_each) {
        grids.exterior.push_back(x);
      }
    }
    if ((int)grids.interior.size() >= n_each &&
        (int)grids.exterior.size() >= n_each)
      break;
    n *= 4;
  }
  grids.description = std::to_string(grids.interior.size()) + "+" +
                      std::to_string(grids.exterior.size()) +
                      " Fibonacci points, boundary guard " +
                      std::to_string(boundary_guard);
  return grids;
}

double charge_field(const ProblemParams& params, const SpherePoint& x) {
  const SpherePoint p1 = unproject(PlanePoint(Complex(0.0, params.b())));
  const SpherePoint p2 = unproject(PlanePoint(Complex(0.0, -params.b())));
  return params.a() * (-std::log(euclidean_distance(x, p1)) -
                       std::log(euclidean_distance(x, p2)));
}

} // namespace

double lambda_D_potential(const Droplet& droplet, const SpherePoint& x,
                          double abs_tol) {
  LambdaDPotentialEval eval(droplet.params(), abs_tol);
  return eval(x);
}

VerificationReport verify_frostman_sphere(const ProblemParams& params,
                                          int grid_n, double tol) {
  const Droplet droplet = Droplet::build(params);
  const LambdaDPotentialEval UlD(params, std::clamp(0.01 * tol, 1e-10, 1e-9));
  const SphereGrids grids = build_sphere_grids(droplet, grid_n);
  const double one_plus_2a = 1.0 + 2.0 * params.a();

  const auto F = [&](const SpherePoint& x) {
    return one_plus_2a * UlD(x) + charge_field(params, x);
  };

  std::vector<double> interior_values;
  interior_values.reserve(grids.interior.size());
  for (const auto& x : grids.interior)
    interior_values.push_back(F(x));
  const double ell_a = median(interior_values);

  double max_eq = 0.0;
  for (double v : interior_values)
    max_eq = std::max(max_eq, std::abs(v - ell_a));

  double worst_ineq = -std::numeric_limits<double>::infinity();
  for (const auto& x : grids.exterior)
    worst_ineq = std::max(worst_ineq, ell_a - F(x));

  VerificationReport rep;
  rep.check_name = "frostman";
  rep.grid = grids.description;
  rep.tolerance = tol;
  rep.max_equality_residual = max_eq;
  rep.worst_inequality_violation = worst_ineq;
  rep.constants["ell_a"] = ell_a;
  rep.constants["ell_0"] = lebesgue_potential_constant();

  // Planar form of the variational condition for the ellipse droplet:
  // U^{mu_Omega} + a log 1/|z^2+b^2| + (1+2a)/2 log(1+|z|^2) = c on Omega.
  if (UlD.postcritical()) {
    const double b = params.b(), a = params.a();
    std::vector<double> plane_values;
    double max_plane = 0.0;
    for (const auto& x : grids.interior) {
      const Complex z = project(x).value();
      const double G = one_plus_2a * UlD.planar_potential(z) -
                       a * std::log(std::abs(z * z + b * b)) +
                       0.5 * one_plus_2a * std::log1p(std::norm(z));
      plane_values.push_back(G);
    }
    const double c_plane = median(plane_values);
    for (double v : plane_values)
      max_plane = std::max(max_plane, std::abs(v - c_plane));
    rep.constants["c_plane"] = c_plane;
    rep.max_equality_residual = std::max(rep.max_equality_residual, max_plane);
  }

  rep.finalize();
  return rep;
}

VerificationReport verify_mother_body(const ProblemParams& params, int grid_n,
                                      double tol) {
  const Droplet droplet = Droplet::build(params);
  const LambdaDPotentialEval UlD(params, std::clamp(0.01 * tol, 1e-10, 1e-9));
  const SphereGrids grids = build_sphere_grids(droplet, grid_n);
  const double a = params.a();
  const double t = params.t();
  const double ell0 = lebesgue_potential_constant();

  const MeasureDensity muV = MeasureDensity::mu_V(params);
  const double M_V = muV.planar_log_moment(1e-11);

  // t * U^{(phi^{-1})_* mu_V} = U^{(2a/(1+2a)) sigma*}
  const auto U_skeleton = [&](const SpherePoint& x) {
    const PlanePoint zp = project(x);
    if (zp.is_infinity())
      return t * (-kLog2 + 0.5 * M_V);
    return t * (log_potential(muV, zp, 1e-10) +
                0.5 * std::log1p(std::norm(zp.value())) +
                potential_transform_constant(1.0, M_V));
  };

  // Equality off D, inequality on D.
  std::vector<double> off_values;
  for (const auto& x : grids.exterior)
    off_values.push_back(UlD(x) - U_skeleton(x));
  const double m = median(off_values);
  double max_eq = 0.0;
  for (double v : off_values)
    max_eq = std::max(max_eq, std::abs(v - m));
  double worst_ineq = -std::numeric_limits<double>::infinity();
  for (const auto& x : grids.interior)
    worst_ineq = std::max(worst_ineq, UlD(x) - U_skeleton(x) - m);

  // Dual relation: U^{lambda_{D*}} vs U^{sigma/(1+2a)}, with
  // U^{lambda_{D*}} = ell_0 - U^{lambda_D}.
  const auto U_sigma_scaled = [&](const SpherePoint& x) {
    return charge_field(params, x) / (1.0 + 2.0 * a);
  };
  std::vector<double> dual_values;
  for (const auto& x : grids.interior)
    dual_values.push_back(ell0 - UlD(x) - U_sigma_scaled(x));
  const double m_star = median(dual_values);
  for (double v : dual_values)
    max_eq = std::max(max_eq, std::abs(v - m_star));
  for (const auto& x : grids.exterior)
    worst_ineq =
        std::max(worst_ineq, ell0 - UlD(x) - U_sigma_scaled(x) - m_star);

  // Corollary constant: U^{sigma*} + U^{mu_{sigma*}} on D* equals
  // (1+2a)/(2a) (ell_0 - m).
  std::vector<double> cor_values;
  for (const auto& x : grids.exterior) {
    const double u_sigma_star = U_skeleton(x) / (2.0 * a * t);
    const double u_eq = (1.0 + 2.0 * a) / (2.0 * a) * (ell0 - UlD(x));
    cor_values.push_back(u_sigma_star + u_eq);
  }
  const double cor_recovered = median(cor_values);
  const double cor_target = (1.0 + 2.0 * a) / (2.0 * a) * (ell0 - m);
  max_eq = std::max(max_eq, std::abs(cor_recovered - cor_target));

  VerificationReport rep;
  rep.check_name = "mother-body";
  rep.grid = grids.description;
  rep.tolerance = tol;
  rep.max_equality_residual = max_eq;
  rep.worst_inequality_violation = worst_ineq;
  rep.constants["m"] = m;
  rep.constants["m_star"] = m_star;
  rep.constants["cor14_recovered"] = cor_recovered;
  rep.constants["cor14_target"] = cor_target;
  rep.constants["mother_body_mass"] =
      build_mother_body(params).mass_by_quadrature(1e-11);
  rep.constants["ell_0"] = ell0;
  rep.finalize();
  return rep;
}

VerificationReport verify_quadrature_domain(const ProblemParams& params,
                                            double tol,
                                            double subharmonic_slack) {
  const Regime regime = params.regime();
  if (regime == Regime::critical)
    throw std::domain_error("verify_quadrature_domain: postcritical or subcritical only");
  const double a = params.a(), b = params.b();
  const double weight_factor = a / (1.0 + 2.0 * a);
  const Complex ib(0.0, b);

  // Harmonic test functions on S^2 \ D, expressed in a planar chart that
  // is regular on that region: polynomials in 1/z for the ellipse droplet
  // (the complement contains the north pole), polynomials in z for the
  // cap complements.
  const bool postcrit = regime == Regime::postcritical;
  const auto chart = [&](Complex z) { return postcrit ? 1.0 / z : z; };

  std::vector<std::function<double(Complex)>> harmonics;
  harmonics.push_back([](Complex) { return 1.0; });
  for (int k = 1; k <= 6 && (int)harmonics.size() < 12; ++k) {
    harmonics.push_back([&, k](Complex z) { return std::pow(chart(z), k).real(); });
    if ((int)harmonics.size() < 12)
      harmonics.push_back([&, k](Complex z) { return std::pow(chart(z), k).imag(); });
  }

  // Integrate a chart function against lambda over S^2 \ D.
  std::optional<EllipseRegion> omega;
  std::optional<EllipseRegion> disk1, disk2;
  if (postcrit) {
    const EllipseGeometry g = EllipseGeometry::from_params(params);
    omega = EllipseRegion{Complex(0.0, 0.0), g.p, g.q};
  } else {
    const Droplet droplet = Droplet::build(params);
    const auto& caps = droplet.caps();
    const auto c1 = project_cap(caps.cap1), c2 = project_cap(caps.cap2);
    disk1 = EllipseRegion::disk(c1.center, c1.radius);
    disk2 = EllipseRegion::disk(c2.center, c2.radius);
  }
  const auto complement_average = [&](const std::function<double(Complex)>& h) {
    const auto f = [&](Complex w) { return h(w) * pushforward_density_weight(w); };
    if (postcrit)
      return ellipse_complement_integral(*omega, f, 0.01 * tol);
    return integrate_ellipse(*disk1, f, 0.005 * tol) +
           integrate_ellipse(*disk2, f, 0.005 * tol);
  };

  double max_eq = 0.0;
  for (const auto& h : harmonics) {
    const double lhs = complement_average(h);
    const double rhs = weight_factor * (h(ib) + h(-ib));
    max_eq = std::max(max_eq, std::abs(lhs - rhs));
  }

  // Subharmonic tests: log kernels with pole inside D, and |f|^2 for f
  // holomorphic in the chart.  The quadrature inequality must hold with
  // the stated slack.
  std::vector<std::function<double(Complex)>> subharmonics;
  std::vector<Complex> poles = {Complex(0.0, 0.0)};
  if (postcrit) {
    const EllipseGeometry g = EllipseGeometry::from_params(params);
    poles.push_back(Complex(0.5 * g.p, 0.0));
    poles.push_back(Complex(0.0, 0.5 * g.q));
  } else {
    poles.push_back(Complex(0.4, 0.0));
    poles.push_back(Complex(-0.6, 0.0));
  }
  for (Complex w0 : poles) {
    const SpherePoint y0 = unproject(PlanePoint(w0));
    subharmonics.push_back([y0](Complex w) {
      return -std::log(euclidean_distance(unproject(PlanePoint(w)), y0));
    });
  }
  subharmonics.push_back([&](Complex z) { return std::norm(chart(z)); });
  subharmonics.push_back([&](Complex z) { return std::norm(chart(z) * chart(z) + 0.3); });

  double worst_ineq = -std::numeric_limits<double>::infinity();
  for (const auto& h : subharmonics) {
    const double lhs = complement_average(h);
    const double rhs = weight_factor * (h(ib) + h(-ib));
    worst_ineq = std::max(worst_ineq, rhs - lhs);
  }

  // Generalized quadrature property of the droplet itself (ellipse case):
  // int_D phi dlambda >= (2a/(1+2a)) int phi dsigma* with equality for
  // harmonic phi; here phi ranges over chart-z polynomials regular on D.
  double max_eq_droplet = 0.0;
  double worst_ineq_droplet = -std::numeric_limits<double>::infinity();
  if (postcrit) {
    const LineEquilibrium eq(params);
    const double A = eq.A();
    const auto droplet_integral = [&](const std::function<double(Complex)>& h) {
      const auto f = [&](Complex w) { return h(w) * pushforward_density_weight(w); };
      return integrate_ellipse(*omega, f, 0.01 * tol);
    };
    const auto skeleton_integral = [&](const std::function<double(Complex)>& h) {
      // (2a/(1+2a)) int h dsigma* = (1/(1+2a)) int h(s) dmu_V(s)
      return integrate_sqrt_interval(
                 [&](double s) { return h(Complex(s, 0.0)) * eq.density(s); }, A,
                 0.01 * tol) /
             (1.0 + 2.0 * a);
    };
    for (int k = 0; k <= 4; ++k) {
      const auto h_re = [k](Complex z) { return std::pow(z, k).real(); };
      max_eq_droplet = std::max(
          max_eq_droplet, std::abs(droplet_integral(h_re) - skeleton_integral(h_re)));
    }
    std::vector<std::function<double(Complex)>> droplet_subh;
    droplet_subh.push_back([](Complex z) { return std::norm(z); });
    const SpherePoint pole1 = unproject(PlanePoint(Complex(0.0, b)));
    droplet_subh.push_back([pole1](Complex w) {
      return -std::log(euclidean_distance(unproject(PlanePoint(w)), pole1));
    });
    for (const auto& h : droplet_subh)
      worst_ineq_droplet =
          std::max(worst_ineq_droplet, skeleton_integral(h) - droplet_integral(h));
  }

  VerificationReport rep;
  rep.check_name = "quadrature-domain";
  rep.grid = std::to_string(harmonics.size()) + " harmonic + " +
             std::to_string(subharmonics.size()) + " subharmonic test functions";
  rep.tolerance = tol;
  rep.max_equality_residual = std::max(max_eq, max_eq_droplet);
  rep.worst_inequality_violation = std::max(worst_ineq, worst_ineq_droplet);
  rep.constants["harmonic_residual"] = max_eq;
  rep.constants["subharmonic_worst"] = worst_ineq;
  rep.finalize();
  rep.passed = max_eq <= tol && max_eq_droplet <= tol &&
               worst_ineq <= subharmonic_slack &&
               worst_ineq_droplet <= subharmonic_slack;
  return rep;
}

VerificationReport verify_stieltjes_identities(const ProblemParams& params,
                                               int n_points, double tol) {
  if (params.regime() != Regime::postcritical)
    throw std::domain_error("verify_stieltjes_identities: postcritical only");
  const LineEquilibrium eq(params);
  const EllipseGeometry g = EllipseGeometry::from_params(params);
  const EllipseRegion region{Complex(0.0, 0.0), g.p, g.q};
  const double a = params.a(), b = params.b();
  const double scale = 1.0 + 2.0 * a;
  const auto density = [scale](Complex w) {
    return scale * pushforward_density_weight(w);
  };

  double max_eq = 0.0;
  // Interior points on shrunken boundary rings (z = 0 included).
  {
    const Complex z(0.0, 0.0);
    const Complex quad = ellipse_stieltjes(region, density, z, 0.01 * tol);
    max_eq = std::max(max_eq, std::abs(quad));
  }
  const std::vector<double> inner_scales = {0.25, 0.5, 0.75};
  const std::vector<double> outer_scales = {1.15, 1.5, 2.2};
  const int per_ring = std::max(1, (n_points + 2) / 3);
  for (double u : inner_scales) {
    for (int k = 0; k < per_ring; ++k) {
      const double theta = 2.0 * kPi * (k + 0.37) / per_ring;
      const Complex z = u * g.boundary_point(theta);
      const Complex closed =
          -2.0 * a * z / (z * z + b * b) + scale * std::conj(z) / (1.0 + std::norm(z));
      const Complex quad = ellipse_stieltjes(region, density, z, 0.01 * tol);
      max_eq = std::max(max_eq, std::abs(quad - closed));
    }
  }
  for (double u : outer_scales) {
    for (int k = 0; k < per_ring; ++k) {
      const double theta = 2.0 * kPi * (k + 0.11) / per_ring;
      const Complex z = u * g.boundary_point(theta);
      if (std::abs(z - Complex(0.0, b)) < 0.05 || std::abs(z + Complex(0.0, b)) < 0.05)
        continue;
      const Complex closed = eq.stieltjes(z);
      const Complex quad = ellipse_stieltjes(region, density, z, 0.01 * tol);
      max_eq = std::max(max_eq, std::abs(quad - closed));
    }
  }

  VerificationReport rep;
  rep.check_name = "stieltjes";
  rep.grid = std::to_string(3 * per_ring) + " interior + " +
             std::to_string(3 * per_ring) + " exterior ring points";
  rep.tolerance = tol;
  rep.max_equality_residual = max_eq;
  rep.finalize();
  return rep;
}

double droplet_normalized_area(const ProblemParams& params, double abs_tol) {
  const auto weight = [](Complex w) { return pushforward_density_weight(w); };
  switch (params.regime()) {
  case Regime::postcritical: {
    const EllipseGeometry g = EllipseGeometry::from_params(params);
    return integrate_ellipse(EllipseRegion{Complex(0.0, 0.0), g.p, g.q}, weight,
                             abs_tol);
  }
  case Regime::critical: {
    const double b = params.b();
    return integrate_strip((b * b - 1.0) / (2.0 * b), weight, abs_tol);
  }
  case Regime::subcritical:
  default: {
    const Droplet droplet = Droplet::build(params);
    const auto& caps = droplet.caps();
    const auto c1 = project_cap(caps.cap1), c2 = project_cap(caps.cap2);
    const double m1 = integrate_ellipse(EllipseRegion::disk(c1.center, c1.radius),
                                        weight, 0.5 * abs_tol);
    const double m2 = integrate_ellipse(EllipseRegion::disk(c2.center, c2.radius),
                                        weight, 0.5 * abs_tol);
    return 1.0 - m1 - m2;
  }
  }
}

VerificationReport verify_volume_law(const ProblemParams& params, double tol) {
  VerificationReport rep;
  rep.check_name = "volume-law";
  rep.grid = "2D quadrature of the pushforward weight over Omega";
  rep.tolerance = tol;
  const double area = droplet_normalized_area(params, 0.01 * tol);
  rep.constants["lambda_D"] = area;
  rep.constants["target"] = params.t();
  rep.max_equality_residual = std::abs(area - params.t());
  rep.finalize();
  return rep;
}

double weighted_equilibrium_energy(const ProblemParams& params) {
  if (params.regime() != Regime::postcritical)
    throw std::domain_error("weighted_equilibrium_energy: postcritical only");
  const LambdaDPotentialEval UlD(params, 1e-8);
  const EllipseGeometry g = EllipseGeometry::from_params(params);
  const double one_plus_2a = 1.0 + 2.0 * params.a();

  // int U^{lambda_D} dlambda_D over the droplet, in chart coordinates.
  const GaussRule& rule = gauss_legendre(20);
  const int m_theta = 48;
  double T1 = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double u = 0.5 * (rule.nodes[i] + 1.0);
    const double wu = 0.5 * rule.weights[i];
    for (int j = 0; j < m_theta; ++j) {
      const double theta = 2.0 * kPi * j / m_theta;
      const Complex w(u * g.p * std::cos(theta), u * g.q * std::sin(theta));
      const SpherePoint x = unproject(PlanePoint(w));
      const double jac = u * g.p * g.q * (2.0 * kPi / m_theta);
      T1 += wu * jac * UlD(x) * pushforward_density_weight(w);
    }
  }

  const SpherePoint p1 = unproject(PlanePoint(Complex(0.0, params.b())));
  const SpherePoint p2 = unproject(PlanePoint(Complex(0.0, -params.b())));
  const double q_part = params.a() * (UlD(p1) + UlD(p2));
  return one_plus_2a * one_plus_2a * T1 + 2.0 * one_plus_2a * q_part;
}

} // namespace droplet
