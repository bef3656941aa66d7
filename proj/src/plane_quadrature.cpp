#include "droplet/plane_quadrature.hpp"

#include "droplet/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace droplet {

namespace {

constexpr double kPi = std::numbers::pi;

double ray_exit_quadratic(double c2, double c1, double c0) {
  // c2 rho^2 + 2 c1 rho + c0 = 0 with c2 > 0 > c0: the unique positive root,
  // evaluated in the subtraction-free form.
  const double disc = c1 * c1 - c2 * c0;
  const double s = std::sqrt(std::max(0.0, disc));
  if (c1 >= 0.0)
    return -c0 / (c1 + s);
  return (s - c1) / c2;
}

using Field2D = std::function<double(double, double)>;

double cell_gauss(const Field2D& F, double u0, double u1, double t0, double t1,
                  int n) {
  const GaussRule& rule = gauss_legendre(n);
  const double cu = 0.5 * (u0 + u1), hu = 0.5 * (u1 - u0);
  const double ct = 0.5 * (t0 + t1), ht = 0.5 * (t1 - t0);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = cu + hu * rule.nodes[i];
    double inner = 0.0;
    for (int j = 0; j < n; ++j)
      inner += rule.weights[j] * F(u, ct + ht * rule.nodes[j]);
    sum += rule.weights[i] * inner;
  }
  return sum * hu * ht;
}

double adapt2d(const Field2D& F, double u0, double u1, double t0, double t1,
               double tol, int depth) {
  const double coarse = cell_gauss(F, u0, u1, t0, t1, 6);
  const double um = 0.5 * (u0 + u1), tm = 0.5 * (t0 + t1);
  const double f1 = cell_gauss(F, u0, um, t0, tm, 6);
  const double f2 = cell_gauss(F, um, u1, t0, tm, 6);
  const double f3 = cell_gauss(F, u0, um, tm, t1, 6);
  const double f4 = cell_gauss(F, um, u1, tm, t1, 6);
  const double fine = f1 + f2 + f3 + f4;
  const double err = std::abs(fine - coarse);
  const double floor_ = 2e-15 * (std::abs(f1) + std::abs(f2) + std::abs(f3) +
                                 std::abs(f4) + std::abs(coarse));
  if (err <= tol || err <= floor_ || depth <= 0)
    return fine;
  return adapt2d(F, u0, um, t0, tm, 0.25 * tol, depth - 1) +
         adapt2d(F, um, u1, t0, tm, 0.25 * tol, depth - 1) +
         adapt2d(F, u0, um, tm, t1, 0.25 * tol, depth - 1) +
         adapt2d(F, um, u1, tm, t1, 0.25 * tol, depth - 1);
}

// Radial part of the interior polar rule: int_0^R g(rho) rho drho with g
// possibly log-singular at rho = 0; geometric panels toward the origin.
double radial_log_panels(const std::function<double(double)>& g, double R,
                         int gl_order) {
  double sum = 0.0;
  double hi = R;
  for (int k = 0; k < 44 && hi > 1e-300; ++k) {
    const double lo = 0.5 * hi;
    sum += integrate_gauss([&](double rho) { return g(rho) * rho; }, lo, hi,
                           gl_order);
    hi = lo;
  }
  // Tail below hi contributes O(hi^2 log hi); hi ~ 5e-14 R makes it ~1e-26.
  return sum;
}

// Doubling trapezoid rule in the angle; the integrands are smooth and
// 2pi-periodic so convergence is spectral.
double angular_doubling(const std::function<double(double)>& I, double tol,
                        int m0 = 64, int m_max = 8192) {
  int m = m0;
  double prev = integrate_periodic(I, m);
  while (m < m_max) {
    m *= 2;
    const double cur = integrate_periodic(I, m);
    if (std::abs(cur - prev) <= tol)
      return cur;
    prev = cur;
  }
  return prev;
}

Complex angular_doubling_c(const std::function<Complex(double)>& I, double tol,
                           int m0 = 64, int m_max = 4096) {
  int m = m0;
  auto eval = [&](int n) {
    Complex sum(0.0, 0.0);
    const double h = 2.0 * kPi / n;
    for (int j = 0; j < n; ++j)
      sum += I(j * h);
    return sum * h;
  };
  Complex prev = eval(m);
  while (m < m_max) {
    m *= 2;
    const Complex cur = eval(m);
    if (std::abs(cur - prev) <= tol)
      return cur;
    prev = cur;
  }
  return prev;
}

} // namespace

double EllipseRegion::ray_exit(Complex z0, double phi) const {
  const double x = z0.real() - center.real();
  const double y = z0.imag() - center.imag();
  const double cx = std::cos(phi), sy = std::sin(phi);
  const double c2 = (cx * cx) / (p * p) + (sy * sy) / (q * q);
  const double c1 = x * cx / (p * p) + y * sy / (q * q);
  const double c0 = (x * x) / (p * p) + (y * y) / (q * q) - 1.0;
  if (c0 >= 0.0)
    throw std::domain_error("ray_exit: point not interior to the region");
  return ray_exit_quadratic(c2, c1, c0);
}

double integrate_ellipse(const EllipseRegion& region, const PlaneDensity& f,
                         double abs_tol) {
  const auto F = [&](double u, double theta) {
    return f(region.point(u, theta)) * u * region.p * region.q;
  };
  return adapt2d(F, 0.0, 1.0, 0.0, 2.0 * kPi, abs_tol, 22);
}

double ellipse_log_potential(const EllipseRegion& region, const PlaneDensity& f,
                             Complex z, double abs_tol) {
  if (region.contains(z)) {
    const auto I = [&](double phi) {
      const double R = region.ray_exit(z, phi);
      const Complex dir(std::cos(phi), std::sin(phi));
      return radial_log_panels(
          [&](double rho) { return -std::log(rho) * f(z + rho * dir); }, R, 8);
    };
    return angular_doubling(I, abs_tol);
  }
  const auto F = [&](double u, double theta) {
    const Complex w = region.point(u, theta);
    return -std::log(std::abs(z - w)) * f(w) * u * region.p * region.q;
  };
  return adapt2d(F, 0.0, 1.0, 0.0, 2.0 * kPi, abs_tol, 26);
}

Complex ellipse_stieltjes(const EllipseRegion& region, const PlaneDensity& f,
                          Complex z, double abs_tol) {
  if (region.contains(z)) {
    // 1/(z-w) with w = z + rho e^{i phi}: the Jacobian cancels the pole.
    const auto I = [&](double phi) {
      const double R = region.ray_exit(z, phi);
      const Complex dir(std::cos(phi), std::sin(phi));
      const Complex minus_e = -std::exp(Complex(0.0, -phi));
      double re = 0.0, im = 0.0;
      const auto g_re = [&](double rho) { return (minus_e * f(z + rho * dir)).real(); };
      const auto g_im = [&](double rho) { return (minus_e * f(z + rho * dir)).imag(); };
      re = integrate_gauss(g_re, 0.0, R, 24);
      im = integrate_gauss(g_im, 0.0, R, 24);
      return Complex(re, im);
    };
    return angular_doubling_c(I, abs_tol);
  }
  const auto Fre = [&](double u, double theta) {
    const Complex w = region.point(u, theta);
    return (f(w) / (z - w)).real() * u * region.p * region.q;
  };
  const auto Fim = [&](double u, double theta) {
    const Complex w = region.point(u, theta);
    return (f(w) / (z - w)).imag() * u * region.p * region.q;
  };
  return Complex(adapt2d(Fre, 0.0, 1.0, 0.0, 2.0 * kPi, abs_tol, 24),
                 adapt2d(Fim, 0.0, 1.0, 0.0, 2.0 * kPi, abs_tol, 24));
}

double ellipse_complement_integral(const EllipseRegion& region,
                                   const PlaneDensity& f, double abs_tol) {
  const auto I = [&](double theta) {
    const Complex dir(std::cos(theta), std::sin(theta));
    const double R = region.ray_exit(region.center, theta);
    const double psi0 = std::atan(R);
    return integrate_adaptive(
        [&](double psi) {
          const double c = std::cos(psi);
          const double rho = std::tan(psi);
          return f(region.center + rho * dir) * rho / (c * c);
        },
        psi0, kPi / 2 - 1e-13, abs_tol);
  };
  return angular_doubling(I, abs_tol, 64, 4096);
}

double integrate_plane(const PlaneDensity& f, double abs_tol) {
  const auto I = [&](double theta) {
    const Complex dir(std::cos(theta), std::sin(theta));
    return integrate_adaptive(
        [&](double psi) {
          const double c = std::cos(psi);
          const double rho = std::tan(psi);
          return f(rho * dir) * rho / (c * c);
        },
        0.0, kPi / 2 - 1e-13, abs_tol);
  };
  return angular_doubling(I, abs_tol, 32, 2048);
}

double integrate_strip(double half_width, const PlaneDensity& f,
                       double abs_tol) {
  const auto row = [&](double y) {
    return integrate_real_line([&](double x) { return f(Complex(x, y)); },
                               0.1 * abs_tol);
  };
  return integrate_adaptive(row, -half_width, half_width, abs_tol);
}

} // namespace droplet
