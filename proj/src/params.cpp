#include "droplet/params.hpp"

#include <cmath>
#include <stdexcept>

namespace droplet {

std::string to_string(Regime r) {
  switch (r) {
  case Regime::subcritical:
    return "subcritical";
  case Regime::critical:
    return "critical";
  case Regime::postcritical:
    return "postcritical";
  }
  return "unknown";
}

ProblemParams::ProblemParams(double b, double a) : b_(b), a_(a) {
  if (!(std::isfinite(b) && b >= 1.0))
    throw std::invalid_argument("ProblemParams: require b >= 1");
  if (!(std::isfinite(a) && a > 0.0))
    throw std::invalid_argument("ProblemParams: require a > 0");
}

ProblemParams ProblemParams::from_t(double b, double t) {
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("ProblemParams: require t in (0,1)");
  return ProblemParams(b, (1.0 - t) / (2.0 * t));
}

double ProblemParams::a_cr() const {
  const double d = b_ * b_ - 1.0;
  if (d <= 0.0)
    return std::numeric_limits<double>::infinity();
  return 1.0 / d;
}

Regime ProblemParams::regime() const {
  const double ac = a_cr();
  // b == 1: a_cr is infinite, so a < a_cr for every finite charge.
  if (std::isinf(ac))
    return Regime::subcritical;
  const double d = a_ - ac;
  if (std::abs(d) <= regime_tolerance)
    return Regime::critical;
  return d < 0.0 ? Regime::subcritical : Regime::postcritical;
}

} // namespace droplet
