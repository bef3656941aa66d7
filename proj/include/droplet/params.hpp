#pragma once

#include <limits>
#include <string>

namespace droplet {

enum class Regime { subcritical, critical, postcritical };

std::string to_string(Regime r);

/// Problem parameters: charges of strength `a` at the preimages of +-ib.
///
/// Carries the derived quantities used everywhere else: the critical
/// charge a_cr = 1/(b^2-1), the time parameter t = 1/(1+2a) and its
/// critical value t_cr = (b^2-1)/(b^2+1).  Regime classification compares
/// a - a_cr with an absolute tolerance of 1e-12; the critical case routes
/// to the subcritical density formula (they coincide).
class ProblemParams {
public:
  ProblemParams(double b, double a);

  static ProblemParams from_t(double b, double t);

  double b() const { return b_; }
  double a() const { return a_; }

  // a_cr = (b^2-1)^{-1}; +infinity when b == 1.
  double a_cr() const;
  double t() const { return 1.0 / (1.0 + 2.0 * a_); }
  double t_cr() const { return (b_ * b_ - 1.0) / (b_ * b_ + 1.0); }

  Regime regime() const;
  bool postcritical() const { return regime() == Regime::postcritical; }

  static constexpr double regime_tolerance = 1e-12;

private:
  double b_;
  double a_;
};

} // namespace droplet
