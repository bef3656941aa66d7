#pragma once

#include "droplet/geometry.hpp"
#include "droplet/line_equilibrium.hpp"
#include "droplet/params.hpp"
#include "droplet/report.hpp"

#include <variant>
#include <vector>

namespace droplet {

/// Axis-aligned ellipse x^2/p^2 + y^2/q^2 = 1 with foci at +-r on the
/// real axis, r^2 = p^2 - q^2.
struct EllipseGeometry {
  double p = 0.0; // semi-major, x-axis
  double q = 0.0; // semi-minor, y-axis
  double r = 0.0; // focal half-distance

  static EllipseGeometry from_params(const ProblemParams& params);

  // Value of the defining quadratic form x^2/p^2 + y^2/q^2.
  double form(Complex z) const;
  bool contains(Complex z) const { return form(z) <= 1.0; }
  Complex boundary_point(double theta) const;
  Complex boundary_tangent(double theta) const; // d/dtheta of boundary_point
};

struct StripGeometry {
  double half_width = 0.0; // |Im z| <= half_width
};

struct CapPairGeometry {
  SphericalCap cap1; // around p1 = phi^{-1}(ib)
  SphericalCap cap2; // around p2 = phi^{-1}(-ib)
};

struct BoundarySample {
  Complex z;
  SpherePoint x;
};

/// The droplet D (support of the equilibrium measure) through its planar
/// image: postcritical ellipse, critical strip, or the complement of two
/// spherical caps below the critical charge.
class Droplet {
public:
  static Droplet build(const ProblemParams& params);

  const ProblemParams& params() const { return params_; }
  Regime regime() const { return params_.regime(); }

  bool is_ellipse() const { return std::holds_alternative<EllipseGeometry>(shape_); }
  bool is_strip() const { return std::holds_alternative<StripGeometry>(shape_); }
  bool is_cap_complement() const { return std::holds_alternative<CapPairGeometry>(shape_); }

  const EllipseGeometry& ellipse() const;
  const StripGeometry& strip() const;
  const CapPairGeometry& caps() const;

  // Membership in the closed droplet.  Infinity belongs to the strip and
  // cap-complement droplets but not to the ellipse.
  bool contains(const PlanePoint& z) const;

  // n >= 3 points tracing the droplet boundary, paired with their sphere
  // preimages.
  std::vector<BoundarySample> boundary_samples(int n) const;

private:
  Droplet(ProblemParams params,
          std::variant<EllipseGeometry, StripGeometry, CapPairGeometry> shape)
      : params_(params), shape_(std::move(shape)) {}

  ProblemParams params_;
  std::variant<EllipseGeometry, StripGeometry, CapPairGeometry> shape_;
};

// Classical Schwarz function of the ellipse,
//   S0(z) = ((p^2+q^2) z - 2 p q (z^2-r^2)^{1/2}) / r^2,
// equal to conj(z) on the boundary.  Rejects z on the focal segment.
Complex classical_schwarz(const EllipseGeometry& geom, Complex z);

// Spherical Schwarz function S(z) = (2az/(z^2+b^2) + F_{mu_V}(z))/(1+2a),
// equal to conj(z)/(1+|z|^2) on the droplet boundary.
Complex spherical_schwarz(const LineEquilibrium& eq, Complex z);
// The same function through its explicit meromorphic-plus-root form.
Complex spherical_schwarz_meromorphic(const LineEquilibrium& eq, Complex z);

// First-sheet zeros of S at +- i sqrt(b^4-1)/(b sqrt(1+2a)).
double spherical_schwarz_zero_height(const ProblemParams& params);

// Checks S0/(1+zS0) = S on boundary and exterior sample points, plus the
// three algebraic identities tying b to (p, q, r).
VerificationReport verify_schwarz_identity(const ProblemParams& params,
                                           int sample_count,
                                           double tolerance = 1e-10,
                                           double identity_tolerance = 1e-12);

} // namespace droplet
