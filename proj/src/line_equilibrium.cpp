#include "droplet/line_equilibrium.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace droplet {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPoleGuard = 1e-12;
} // namespace

Complex sqrt_two_cut(Complex z, double c) {
  if (std::abs(z) > 1.25 * c) {
    const Complex w = c / z;
    return z * std::sqrt(Complex(1.0, 0.0) - w * w);
  }
  return std::sqrt(z - c) * std::sqrt(z + c);
}

LineEquilibrium::LineEquilibrium(const ProblemParams& params) : params_(params) {
  postcritical_ = params_.regime() == Regime::postcritical;
  if (postcritical_) {
    const auto [A, C] = compute_A_C(params_);
    A_ = A;
    C_ = C;
  }
}

std::pair<double, double> LineEquilibrium::compute_A_C(const ProblemParams& params) {
  if (params.regime() != Regime::postcritical)
    throw std::domain_error("compute_A_C: requires the postcritical regime");
  const double b = params.b(), a = params.a();
  const double b2 = b * b;
  const double plus = b2 * a + a + 1.0;
  const double minus = b2 * a - a - 1.0;
  const double A = b * std::sqrt(1.0 + 2.0 * a) / (std::sqrt(plus) * std::sqrt(minus));
  const double C = (b2 * b2 - 1.0) * plus * minus / (b2 * b2);
  return {A, C};
}

double LineEquilibrium::A() const {
  if (!postcritical_)
    throw std::domain_error("A: defined in the postcritical regime only");
  return A_;
}

double LineEquilibrium::C() const {
  if (!postcritical_)
    throw std::domain_error("C: defined in the postcritical regime only");
  return C_;
}

double LineEquilibrium::external_field(double x) const {
  const double b = params_.b(), a = params_.a();
  return 0.5 * (1.0 + a) * std::log(x * x + 1.0 / (b * b)) -
         0.5 * a * std::log(x * x + b * b);
}

double LineEquilibrium::external_field_t_form(double x) const {
  const double b = params_.b(), t = params_.t();
  return ((1.0 + t) * std::log(x * x + 1.0 / (b * b)) -
          (1.0 - t) * std::log(x * x + b * b)) /
         (4.0 * t);
}

void LineEquilibrium::require_off_poles(Complex z) const {
  const double b = params_.b();
  const Complex ib(0.0, b), ibinv(0.0, 1.0 / b);
  if (std::abs(z - ib) < kPoleGuard || std::abs(z + ib) < kPoleGuard ||
      std::abs(z - ibinv) < kPoleGuard || std::abs(z + ibinv) < kPoleGuard)
    throw std::domain_error("evaluation at a pole of the field derivative");
}

Complex LineEquilibrium::field_derivative(Complex z) const {
  require_off_poles(z);
  const double b = params_.b(), a = params_.a();
  return (1.0 + a) * z / (z * z + 1.0 / (b * b)) - a * z / (z * z + b * b);
}

double LineEquilibrium::density(double x) const {
  const double b = params_.b(), a = params_.a();
  if (postcritical_) {
    if (std::abs(x) >= A_)
      return 0.0;
    return std::sqrt(C_) * std::sqrt((A_ - x) * (A_ + x)) /
           (kPi * (x * x + b * b) * (x * x + 1.0 / (b * b)));
  }
  // Subcritical and critical share one formula; at a = a_cr the x^2
  // coefficient vanishes and it reduces to the critical density.
  const double num = (1.0 + a - b * b * a) * x * x + b * b + b * b * a - a;
  return num / (kPi * b * (x * x + b * b) * (x * x + 1.0 / (b * b)));
}

Complex LineEquilibrium::R(Complex z) const {
  if (!postcritical_)
    throw std::domain_error("R: defined in the postcritical regime only");
  require_off_poles(z);
  const double b = params_.b();
  const Complex d1 = z * z + b * b;
  const Complex d2 = z * z + 1.0 / (b * b);
  return C_ * (z * z - A_ * A_) / (d1 * d1 * d2 * d2);
}

Complex LineEquilibrium::stieltjes(Complex z) const {
  const double b = params_.b(), a = params_.a();
  if (postcritical_) {
    if (std::abs(z.imag()) < 1e-14 && std::abs(z.real()) <= A_ + 1e-14)
      throw std::domain_error("stieltjes: z on the support [-A, A]");
    // F = V' - R^{1/2} has removable singularities at +-ib and +-i/b
    // (the residue relations cancel the poles exactly).  Close to those
    // points the raw formula loses all digits, so use the mean value of
    // F over a small circle instead.
    const double sep = b - 1.0 / b;
    // The circle must stay clear of the other removable points, the cut
    // on the real axis, and the support guard band.
    const double guard = std::min({0.04, 0.25 * sep, 0.25 / b});
    double nearest = std::numeric_limits<double>::infinity();
    for (double c : {b, -b, 1.0 / b, -1.0 / b})
      nearest = std::min(nearest, std::abs(z - Complex(0.0, c)));
    if (guard > 0.0 && nearest < guard) {
      const double radius = 2.0 * guard;
      Complex sum(0.0, 0.0);
      const int m = 32;
      for (int k = 0; k < m; ++k) {
        const double phi = 2.0 * kPi * (k + 0.5) / m;
        sum += stieltjes(z + radius * Complex(std::cos(phi), std::sin(phi)));
      }
      return sum / static_cast<double>(m);
    }
    const Complex d1 = z * z + b * b;
    const Complex d2 = z * z + 1.0 / (b * b);
    const Complex sqrtR = std::sqrt(C_) * sqrt_two_cut(z, A_) / (d1 * d2);
    return (1.0 + a) * z / d2 - a * z / d1 - sqrtR;
  }
  if (std::abs(z.imag()) < 1e-14)
    throw std::domain_error("stieltjes: z on the support (the full real line)");
  // mu_V = (1+a) Bal(delta_{i/b}) - a Bal(delta_{ib}); each Cauchy
  // component has Stieltjes transform 1/(z + i c sign(Im z)).
  const double s = z.imag() > 0.0 ? 1.0 : -1.0;
  return (1.0 + a) / (z + Complex(0.0, s / b)) - a / (z + Complex(0.0, s * b));
}

double balayage_point_to_line(double c, double x) {
  if (!(c > 0.0))
    throw std::domain_error("balayage_point_to_line: c must be positive");
  return c / (kPi * (x * x + c * c));
}

double balayage_point_to_interval(double c, double A, double x) {
  if (!(c > 0.0))
    throw std::domain_error("balayage_point_to_interval: c must be positive");
  if (!(A > 0.0) || std::abs(x) >= A)
    throw std::domain_error("balayage_point_to_interval: require |x| < A");
  return c * std::sqrt(A * A + c * c) /
         (kPi * (x * x + c * c) * std::sqrt((A - x) * (A + x)));
}

} // namespace droplet
