#pragma once

#include "droplet/geometry.hpp"

#include <functional>

namespace droplet {

using PlaneDensity = std::function<double(Complex)>;
using PlaneDensityC = std::function<Complex(Complex)>;

/// Axis-aligned elliptical region (disks are the p == q case).  All the
/// planar regions carrying measures in this project are of this shape, or
/// complements/unions of it.
struct EllipseRegion {
  Complex center{0.0, 0.0};
  double p = 1.0;
  double q = 1.0;

  static EllipseRegion disk(Complex c, double radius) { return {c, radius, radius}; }

  double form(Complex z) const {
    const double x = (z.real() - center.real()) / p;
    const double y = (z.imag() - center.imag()) / q;
    return x * x + y * y;
  }
  bool contains(Complex z) const { return form(z) <= 1.0; }
  Complex point(double u, double theta) const {
    return center + Complex(u * p * std::cos(theta), u * q * std::sin(theta));
  }
  // Distance from an interior point to the boundary along direction phi.
  double ray_exit(Complex z0, double phi) const;
};

// Integral of a smooth density over the region (adaptive in scaled-ellipse
// coordinates).
double integrate_ellipse(const EllipseRegion& region, const PlaneDensity& f,
                         double abs_tol = 1e-10);

// Logarithmic potential int -log|z-w| f(w) dA(w) over the region.
// Interior z is handled with polar coordinates around the singularity,
// exterior z with adaptive refinement toward the near boundary point.
double ellipse_log_potential(const EllipseRegion& region, const PlaneDensity& f,
                             Complex z, double abs_tol = 1e-9);

// Stieltjes transform int f(w)/(z-w) dA(w) over the region.
Complex ellipse_stieltjes(const EllipseRegion& region, const PlaneDensity& f,
                          Complex z, double abs_tol = 1e-8);

// Integral of a decaying smooth density over the complement of the region
// (the region must contain its own center, which it does by construction).
double ellipse_complement_integral(const EllipseRegion& region,
                                   const PlaneDensity& f, double abs_tol = 1e-9);

// Integral of a decaying smooth density over the whole plane.
double integrate_plane(const PlaneDensity& f, double abs_tol = 1e-9);

// Integral of a decaying smooth density over the strip |Im z| <= h.
double integrate_strip(double half_width, const PlaneDensity& f,
                       double abs_tol = 1e-9);

} // namespace droplet
