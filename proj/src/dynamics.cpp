#include "droplet/dynamics.hpp"

#include "droplet/line_equilibrium.hpp"
#include "droplet/plane_quadrature.hpp"
#include "droplet/potentials.hpp"
#include "droplet/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace droplet {

namespace {
constexpr double kPi = std::numbers::pi;

ProblemParams params_of_t(double b, double t) {
  const ProblemParams params = ProblemParams::from_t(b, t);
  if (params.regime() != Regime::postcritical)
    throw std::domain_error("dynamics: t must lie in (0, t_cr)");
  return params;
}
} // namespace

double A_of_t(double b, double t) {
  return LineEquilibrium::compute_A_C(params_of_t(b, t)).first;
}

double C_of_t(double b, double t) {
  return LineEquilibrium::compute_A_C(params_of_t(b, t)).second;
}

double omega_t_density(double b, double t, double x) {
  const double A = A_of_t(b, t);
  if (std::abs(x) >= A)
    throw std::domain_error("omega_t_density: require |x| < A(t)");
  const double binv = 1.0 / b;
  return (b * std::sqrt(A * A + b * b) / (x * x + b * b) +
          binv * std::sqrt(A * A + binv * binv) / (x * x + binv * binv)) /
         (2.0 * kPi * std::sqrt((A - x) * (A + x)));
}

BoundaryMeasure BoundaryMeasure::build(double b, double t, int n_nodes) {
  if (n_nodes % 2 != 0 || n_nodes < 16)
    throw std::invalid_argument("BoundaryMeasure: n_nodes must be even and >= 16");
  const ProblemParams params = params_of_t(b, t);

  BoundaryMeasure bm;
  bm.b_ = b;
  bm.t_ = t;
  bm.curve_ = EllipseGeometry::from_params(params);

  const int N = n_nodes;
  const int n = N / 2;
  const double h = kPi / n;

  bm.theta_.resize(N);
  bm.points_.resize(N);
  std::vector<Complex> deriv(N);
  for (int j = 0; j < N; ++j) {
    bm.theta_[j] = h * j;
    bm.points_[j] = bm.curve_.boundary_point(bm.theta_[j]);
    deriv[j] = bm.curve_.boundary_tangent(bm.theta_[j]);
  }

  // Kussmaul-Martensen weights for the 2pi-periodic log kernel:
  // int log(4 sin^2((s-tau)/2)) f(tau) dtau ~ sum_j R_{|i-j|} f(tau_j).
  std::vector<double> R(N);
  for (int m = 0; m < N; ++m) {
    double sum = 0.0;
    for (int k = 1; k < n; ++k)
      sum += std::cos(k * m * kPi / n) / k;
    R[m] = -(2.0 * kPi / n) * sum - (kPi / (n * n)) * std::cos(m * kPi);
  }

  Eigen::MatrixXd Asys(N + 1, N + 1);
  Eigen::VectorXd rhs(N + 1);
  for (int i = 0; i < N; ++i) {
    const Complex zi = bm.points_[i];
    for (int j = 0; j < N; ++j) {
      double Ksmooth;
      if (i == j) {
        Ksmooth = std::log(std::abs(deriv[j]));
      } else {
        const double s = 2.0 * std::sin(0.5 * (bm.theta_[i] - bm.theta_[j]));
        Ksmooth = std::log(std::abs(zi - bm.points_[j]) / std::abs(s));
      }
      Asys(i, j) = -(0.5 * R[std::abs(i - j)] + h * Ksmooth);
    }
    Asys(i, N) = -1.0; // unknown additive constant
    const Complex z2b2 = zi * zi + b * b;
    rhs(i) = -0.5 * std::log(std::abs(z2b2));
  }
  for (int j = 0; j < N; ++j)
    Asys(N, j) = h;
  Asys(N, N) = 0.0;
  rhs(N) = 1.0;

  const Eigen::VectorXd sol = Asys.partialPivLu().solve(rhs);

  bm.node_weight_.resize(N);
  bm.arclength_density_.resize(N);
  for (int j = 0; j < N; ++j) {
    bm.node_weight_[j] = h * sol(j);
    bm.arclength_density_[j] = sol(j) / std::abs(deriv[j]);
  }
  bm.constant_ = sol(N);
  return bm;
}

double BoundaryMeasure::mass() const {
  double m = 0.0;
  for (double w : node_weight_)
    m += w;
  return m;
}

double BoundaryMeasure::potential(Complex z) const {
  double u = 0.0;
  for (size_t j = 0; j < points_.size(); ++j)
    u += -std::log(std::abs(z - points_[j])) * node_weight_[j];
  return u;
}

double rho_t_coarea_density(double b, double t, double theta, double dt) {
  const EllipseGeometry lo = EllipseGeometry::from_params(params_of_t(b, t - dt));
  const EllipseGeometry hi = EllipseGeometry::from_params(params_of_t(b, t + dt));
  const EllipseGeometry cur = EllipseGeometry::from_params(params_of_t(b, t));
  const Complex dz_dt = (hi.boundary_point(theta) - lo.boundary_point(theta)) / (2.0 * dt);
  const Complex tangent = cur.boundary_tangent(theta);
  const Complex normal = Complex(0.0, -1.0) * tangent / std::abs(tangent);
  const double v_n = (std::conj(normal) * dz_dt).real();
  return v_n * pushforward_density_weight(cur.boundary_point(theta));
}

std::pair<double, double> reconstruct_potentials(double b, double t, Complex z,
                                                 int n_steps) {
  if (n_steps < 2)
    throw std::invalid_argument("reconstruct_potentials: need n_steps >= 2");
  params_of_t(b, t); // validates the range

  // Graded panels toward s = 0 where the measures degenerate to a point.
  double rho_int = 0.0, omega_int = 0.0;
  const GaussRule& rule = gauss_legendre(4);
  for (int k = 0; k < n_steps; ++k) {
    const double s_lo = t * std::pow((double)k / n_steps, 2.0);
    const double s_hi = t * std::pow((double)(k + 1) / n_steps, 2.0);
    const double c = 0.5 * (s_lo + s_hi), hw = 0.5 * (s_hi - s_lo);
    for (int g = 0; g < 4; ++g) {
      const double s = c + hw * rule.nodes[g];
      const double w = hw * rule.weights[g];
      const BoundaryMeasure rho = BoundaryMeasure::build(b, s, 128);
      rho_int += w * rho.potential(z);
      const MeasureDensity omega = MeasureDensity::omega_t(b, s);
      omega_int += w * log_potential(omega, PlanePoint(z), 1e-9);
    }
  }
  return {rho_int, omega_int};
}

std::pair<double, double> direct_t_potentials(double b, double t, Complex z,
                                              double abs_tol) {
  const ProblemParams params = params_of_t(b, t);
  const EllipseGeometry g = EllipseGeometry::from_params(params);
  const EllipseRegion region{Complex(0.0, 0.0), g.p, g.q};
  // t * U^{mu_Omega(t)} is the potential of the bare pushforward weight.
  const double u_omega = ellipse_log_potential(
      region, [](Complex w) { return pushforward_density_weight(w); }, z, abs_tol);
  const MeasureDensity muV = MeasureDensity::mu_V(params);
  const double u_v = t * log_potential(muV, PlanePoint(z), abs_tol);
  return {u_omega, u_v};
}

VerificationReport verify_growth_inequalities(double b, double t, int grid_n,
                                              double tol) {
  const ProblemParams params = params_of_t(b, t);
  const EllipseGeometry g = EllipseGeometry::from_params(params);
  const EllipseRegion region{Complex(0.0, 0.0), g.p, g.q};
  // 384 nodes keep the trapezoid tail of the single-layer potential below
  // 1e-8 on the innermost exterior ring.
  const BoundaryMeasure rho = BoundaryMeasure::build(b, t, 384);
  const MeasureDensity omega = MeasureDensity::omega_t(b, t);
  const double A = A_of_t(b, t);

  // Interior and exterior ring grids with a guard off the boundary, the
  // support [-A, A] and the poles +-ib.
  std::vector<Complex> interior, exterior;
  const int per_ring = std::max(4, grid_n / 8);
  for (double u : {0.30, 0.55, 0.80}) {
    for (int k = 0; k < per_ring; ++k) {
      const double theta = 2.0 * kPi * (k + 0.23) / per_ring;
      const Complex z = u * g.boundary_point(theta);
      if (std::abs(z.imag()) < 1e-6 && std::abs(z.real()) <= A + 0.02)
        continue;
      interior.push_back(z);
    }
  }
  for (double u : {1.12, 1.30, 1.80, 2.60}) {
    for (int k = 0; k < per_ring; ++k) {
      const double theta = 2.0 * kPi * (k + 0.61) / per_ring;
      const Complex z = u * g.boundary_point(theta);
      if (std::abs(z - Complex(0.0, b)) < 0.1 || std::abs(z + Complex(0.0, b)) < 0.1)
        continue;
      exterior.push_back(z);
    }
  }

  const auto g_field = [&](Complex z) {
    return -0.5 * std::log(std::abs(z * z + b * b));
  };

  // (i) balayage property: equality on the interior, <= outside.
  double max_eq = 0.0;
  double worst_ineq = -std::numeric_limits<double>::infinity();
  for (const Complex& z : interior)
    max_eq = std::max(max_eq,
                      std::abs(rho.potential(z) - g_field(z) - rho.interior_constant()));
  for (const Complex& z : exterior)
    worst_ineq = std::max(worst_ineq,
                          rho.potential(z) - g_field(z) - rho.interior_constant());

  // (ii) U^{rho_t} <= U^{omega_t} everywhere, equality outside Omega(t).
  for (const Complex& z : exterior) {
    const double u_omega = log_potential(omega, PlanePoint(z), 1e-9);
    max_eq = std::max(max_eq, std::abs(rho.potential(z) - u_omega));
  }
  for (const Complex& z : interior) {
    const double u_omega = log_potential(omega, PlanePoint(z), 1e-9);
    worst_ineq = std::max(worst_ineq, rho.potential(z) - u_omega);
  }

  // (iii) t U^{mu_Omega(t)} + (1-t)/2 log 1/|z^2+b^2| + 1/2 log(1+|z|^2)
  // is constant on Omega(t) and >= that constant everywhere.
  const auto H = [&](Complex z) {
    const double u_nu = ellipse_log_potential(
        region, [](Complex w) { return pushforward_density_weight(w); }, z, 1e-9);
    return u_nu + (1.0 - t) * g_field(z) + 0.5 * std::log1p(std::norm(z));
  };
  std::vector<double> interior_H;
  for (size_t i = 0; i < interior.size(); i += 4)
    interior_H.push_back(H(interior[i]));
  std::sort(interior_H.begin(), interior_H.end());
  const double c_t = interior_H[interior_H.size() / 2];
  for (double v : interior_H)
    max_eq = std::max(max_eq, std::abs(v - c_t));
  for (size_t i = 0; i < exterior.size(); i += 4)
    worst_ineq = std::max(worst_ineq, c_t - H(exterior[i]));

  // c'(t) from finite differences of c(t) against the Nystrom constant.
  const double dt = 1e-4 * t;
  const auto c_of = [&](double tt) {
    const ProblemParams pp = params_of_t(b, tt);
    const EllipseGeometry gg = EllipseGeometry::from_params(pp);
    const EllipseRegion rr{Complex(0.0, 0.0), gg.p, gg.q};
    const Complex z0 = 0.35 * gg.boundary_point(0.9);
    const double u_nu = ellipse_log_potential(
        rr, [](Complex w) { return pushforward_density_weight(w); }, z0, 1e-10);
    return u_nu + (1.0 - tt) * g_field(z0) + 0.5 * std::log1p(std::norm(z0));
  };
  const double c_prime_fd = (c_of(t + dt) - c_of(t - dt)) / (2.0 * dt);

  VerificationReport rep;
  rep.check_name = "dynamics";
  rep.grid = std::to_string(interior.size()) + " interior + " +
             std::to_string(exterior.size()) + " exterior ring points";
  rep.tolerance = tol;
  rep.max_equality_residual = max_eq;
  rep.worst_inequality_violation = worst_ineq;
  rep.constants["c_t"] = c_t;
  rep.constants["c_prime_nystrom"] = rho.interior_constant();
  rep.constants["c_prime_fd"] = c_prime_fd;
  rep.constants["rho_mass"] = rho.mass();
  rep.finalize();
  return rep;
}

GrowthFamily GrowthFamily::build(double b, const std::vector<double>& t_grid) {
  GrowthFamily fam;
  fam.b = b;
  fam.t_grid = t_grid;
  double prev = 0.0;
  for (double t : t_grid) {
    if (t <= prev)
      throw std::invalid_argument("GrowthFamily: t grid must be strictly increasing");
    prev = t;
    fam.droplets.push_back(Droplet::build(params_of_t(b, t)));
  }
  return fam;
}

bool GrowthFamily::nested(int n_boundary_samples) const {
  for (size_t i = 0; i + 1 < droplets.size(); ++i) {
    const auto samples = droplets[i].boundary_samples(n_boundary_samples);
    for (const auto& s : samples)
      if (!droplets[i + 1].contains(PlanePoint(s.z)))
        return false;
  }
  return true;
}

double GrowthFamily::mass_at(size_t i, double abs_tol) const {
  const EllipseGeometry& g = droplets.at(i).ellipse();
  return integrate_ellipse(
      EllipseRegion{Complex(0.0, 0.0), g.p, g.q},
      [](Complex w) { return pushforward_density_weight(w); }, abs_tol);
}

} // namespace droplet
