#pragma once

#include <functional>
#include <vector>

namespace droplet {

using Integrand = std::function<double(double)>;

/// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

// Fixed-order Gauss-Legendre on [a, b].
double integrate_gauss(const Integrand& f, double a, double b, int n);

// Adaptive Gauss-Kronrod (7,15) with interval bisection.  The tolerance is
// absolute; max_depth bounds the recursion (log singularities need ~50).
double integrate_adaptive(const Integrand& f, double a, double b,
                          double abs_tol = 1e-10, int max_depth = 52);

// Integral over (-inf, inf) via the substitution x = tan(theta).
double integrate_real_line(const Integrand& f, double abs_tol = 1e-10);

// Integral over [a, b] of a function with integrable (log-type)
// singularities at the listed interior/endpoint locations.  Splits at each
// singular point and integrates geometrically graded panels toward it.
double integrate_with_singularities(const Integrand& f, double a, double b,
                                    const std::vector<double>& singular_points,
                                    double abs_tol = 1e-10);

// Integral of f over [-A, A] after the substitution x = A sin(theta);
// removes sqrt/inverse-sqrt endpoint behavior of the integrand.
// f is the plain integrand in x (including any 1/sqrt(A^2-x^2) factor).
double integrate_sqrt_interval(const Integrand& f, double A,
                               double abs_tol = 1e-10);

// Periodic trapezoid rule over [0, 2pi) with n nodes.
double integrate_periodic(const Integrand& f, int n);

} // namespace droplet
