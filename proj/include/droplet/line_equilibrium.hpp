#pragma once

#include "droplet/geometry.hpp"
#include "droplet/params.hpp"

namespace droplet {

// (z^2 - c^2)^{1/2} with branch cut on [-c, c] and asymptotics ~ z at
// infinity.  Evaluated as z*sqrt(1 - c^2/z^2) away from the cut and as the
// product of principal square roots sqrt(z-c)*sqrt(z+c) near it.
Complex sqrt_two_cut(Complex z, double c);

/// Equilibrium measure on the real line in the external field
///   V(x) = (1+a)/2 log(x^2 + b^{-2}) - a/2 log(x^2 + b^2).
/// Subcritical/critical: full-line density; postcritical: density with
/// square-root vanishing on [-A, A].
class LineEquilibrium {
public:
  explicit LineEquilibrium(const ProblemParams& params);

  const ProblemParams& params() const { return params_; }
  Regime regime() const { return params_.regime(); }

  // Support endpoints (postcritical only; throws otherwise).
  double A() const;
  double C() const;
  static std::pair<double, double> compute_A_C(const ProblemParams& params);

  double external_field(double x) const;
  // Algebraically equal t-parametrized form of the field.
  double external_field_t_form(double x) const;
  // V'(z) = (1+a) z/(z^2+b^{-2}) - a z/(z^2+b^2); rejects the poles.
  Complex field_derivative(Complex z) const;

  // Equilibrium density; 0 outside [-A, A] in the postcritical regime.
  double density(double x) const;

  // R(z) = C (z^2 - A^2) / ((z^2+b^2)^2 (z^2+b^{-2})^2), postcritical only.
  Complex R(Complex z) const;

  // Stieltjes transform int dmu(s)/(z - s); z must be off the support.
  Complex stieltjes(Complex z) const;

private:
  void require_off_poles(Complex z) const;

  ProblemParams params_;
  bool postcritical_ = false;
  double A_ = 0.0;
  double C_ = 0.0;
};

// Density of Bal(delta_{ic}, R), the rescaled Cauchy density c/(pi(x^2+c^2)).
double balayage_point_to_line(double c, double x);

// Density of Bal(delta_{ic}, [-A, A]); rejects |x| >= A.
double balayage_point_to_interval(double c, double A, double x);

} // namespace droplet
