#include "droplet/droplet.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace droplet {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kMembershipTol = 1e-12;
} // namespace

EllipseGeometry EllipseGeometry::from_params(const ProblemParams& params) {
  if (params.regime() != Regime::postcritical)
    throw std::domain_error("EllipseGeometry: requires the postcritical regime");
  const double b = params.b(), a = params.a();
  const double b2 = b * b;
  EllipseGeometry g;
  g.p = std::sqrt((b2 + 1.0) / (2.0 * (b2 * a - a - 1.0)));
  g.q = std::sqrt((b2 - 1.0) / (2.0 * (b2 * a + a + 1.0)));
  g.r = std::sqrt((g.p - g.q) * (g.p + g.q));
  return g;
}

double EllipseGeometry::form(Complex z) const {
  const double x = z.real() / p;
  const double y = z.imag() / q;
  return x * x + y * y;
}

Complex EllipseGeometry::boundary_point(double theta) const {
  return Complex(p * std::cos(theta), q * std::sin(theta));
}

Complex EllipseGeometry::boundary_tangent(double theta) const {
  return Complex(-p * std::sin(theta), q * std::cos(theta));
}

Droplet Droplet::build(const ProblemParams& params) {
  switch (params.regime()) {
  case Regime::postcritical:
    return Droplet(params, EllipseGeometry::from_params(params));
  case Regime::critical: {
    const double b = params.b();
    return Droplet(params, StripGeometry{(b * b - 1.0) / (2.0 * b)});
  }
  case Regime::subcritical:
  default: {
    const double target = params.a() / (1.0 + 2.0 * params.a());
    const double r = cap_radius_for_area(target);
    const SpherePoint p1 = unproject(PlanePoint(Complex(0.0, params.b())));
    const SpherePoint p2 = unproject(PlanePoint(Complex(0.0, -params.b())));
    return Droplet(params, CapPairGeometry{SphericalCap(p1, r), SphericalCap(p2, r)});
  }
  }
}

const EllipseGeometry& Droplet::ellipse() const {
  if (!is_ellipse())
    throw std::domain_error("Droplet: not an ellipse droplet");
  return std::get<EllipseGeometry>(shape_);
}

const StripGeometry& Droplet::strip() const {
  if (!is_strip())
    throw std::domain_error("Droplet: not a strip droplet");
  return std::get<StripGeometry>(shape_);
}

const CapPairGeometry& Droplet::caps() const {
  if (!is_cap_complement())
    throw std::domain_error("Droplet: not a cap-complement droplet");
  return std::get<CapPairGeometry>(shape_);
}

bool Droplet::contains(const PlanePoint& z) const {
  if (is_ellipse()) {
    if (z.is_infinity())
      return false;
    return ellipse().form(z.value()) <= 1.0 + kMembershipTol;
  }
  if (is_strip()) {
    if (z.is_infinity())
      return true; // north pole is the tangency point of the closure
    return std::abs(z.value().imag()) <= strip().half_width + kMembershipTol;
  }
  const SpherePoint x = unproject(z);
  const CapPairGeometry& c = caps();
  return geodesic_angle(x, c.cap1.center) >= c.cap1.geodesic_radius - kMembershipTol &&
         geodesic_angle(x, c.cap2.center) >= c.cap2.geodesic_radius - kMembershipTol;
}

std::vector<BoundarySample> Droplet::boundary_samples(int n) const {
  if (n < 3)
    throw std::invalid_argument("boundary_samples: need n >= 3");
  std::vector<BoundarySample> out;
  out.reserve(static_cast<size_t>(n));
  if (is_ellipse()) {
    const EllipseGeometry& g = ellipse();
    for (int k = 0; k < n; ++k) {
      const Complex z = g.boundary_point(2.0 * kPi * k / n);
      out.push_back({z, unproject(PlanePoint(z))});
    }
    return out;
  }
  if (is_strip()) {
    const double h = strip().half_width;
    const int m = (n + 1) / 2;
    for (int k = 0; k < n; ++k) {
      const double xi = ((k / 2) + 0.5) / m - 0.5;
      const double x = std::tan(0.95 * kPi * xi);
      const Complex z(x, (k % 2 == 0) ? h : -h);
      out.push_back({z, unproject(PlanePoint(z))});
    }
    return out;
  }
  const CapPairGeometry& c = caps();
  for (int k = 0; k < n; ++k) {
    const SphericalCap& cap = (k % 2 == 0) ? c.cap1 : c.cap2;
    // Rim point swept around the cap axis.
    const SpherePoint north = SpherePoint::north();
    SpherePoint axis(1.0, 0.0, 0.0); // placeholder for the polar case
    const double ca = geodesic_angle(cap.center, north);
    if (ca > 1e-12 && ca < kPi - 1e-12) {
      const double c1 = north.x2 * cap.center.x3 - north.x3 * cap.center.x2;
      const double c2 = north.x3 * cap.center.x1 - north.x1 * cap.center.x3;
      const double c3 = north.x1 * cap.center.x2 - north.x2 * cap.center.x1;
      const double cn = std::sqrt(c1 * c1 + c2 * c2 + c3 * c3);
      axis = SpherePoint(c1 / cn, c2 / cn, c3 / cn);
    }
    const SpherePoint rim0 = rotate_about_axis(cap.center, axis, cap.geodesic_radius);
    const double phi = 2.0 * kPi * (k / 2) / ((n + 1) / 2);
    const SpherePoint x = rotate_about_axis(rim0, cap.center, phi);
    const PlanePoint z = project(x);
    out.push_back({z.is_infinity() ? Complex(0.0, 0.0) : z.value(), x});
  }
  return out;
}

Complex classical_schwarz(const EllipseGeometry& geom, Complex z) {
  if (std::abs(z.imag()) < 1e-14 && std::abs(z.real()) <= geom.r)
    throw std::domain_error("classical_schwarz: z on the focal segment");
  const double p = geom.p, q = geom.q, r2 = geom.r * geom.r;
  return ((p * p + q * q) * z - 2.0 * p * q * sqrt_two_cut(z, geom.r)) / r2;
}

Complex spherical_schwarz(const LineEquilibrium& eq, Complex z) {
  const double a = eq.params().a(), b = eq.params().b();
  return (2.0 * a * z / (z * z + b * b) + eq.stieltjes(z)) / (1.0 + 2.0 * a);
}

Complex spherical_schwarz_meromorphic(const LineEquilibrium& eq, Complex z) {
  const double a = eq.params().a(), b = eq.params().b();
  const Complex d1 = z * z + b * b;
  const Complex d2 = z * z + 1.0 / (b * b);
  const Complex root = std::sqrt(eq.C()) * sqrt_two_cut(z, eq.A()) / (d1 * d2);
  return (a * z / d1 + (1.0 + a) * z / d2 - root) / (1.0 + 2.0 * a);
}

double spherical_schwarz_zero_height(const ProblemParams& params) {
  const double b = params.b(), a = params.a();
  return std::sqrt(b * b * b * b - 1.0) / (b * std::sqrt(1.0 + 2.0 * a));
}

VerificationReport verify_schwarz_identity(const ProblemParams& params,
                                           int sample_count, double tolerance,
                                           double identity_tolerance) {
  if (params.regime() != Regime::postcritical)
    throw std::domain_error("verify_schwarz_identity: requires the postcritical regime");

  const LineEquilibrium eq(params);
  const EllipseGeometry geom = EllipseGeometry::from_params(params);
  const double b = params.b();
  const Complex ib(0.0, b), ibinv(0.0, 1.0 / b);

  VerificationReport rep;
  rep.check_name = "schwarz";
  rep.tolerance = tolerance;

  double max_res = 0.0;
  int used = 0;
  // Boundary samples plus exterior rings scaled off the boundary; keep a
  // guard distance from the poles of S at +-ib and from +-i/b where the
  // first-sheet pole cancels only up to rounding.
  const double guard = 5e-2;
  const std::vector<double> scales = {1.0, 1.03, 1.1, 1.25, 1.6, 2.2};
  for (double u : scales) {
    for (int k = 0; k < sample_count; ++k) {
      const double theta = 2.0 * kPi * (k + 0.31) / sample_count;
      const Complex z = u * geom.boundary_point(theta);
      if (std::abs(z - ib) < guard || std::abs(z + ib) < guard ||
          std::abs(z - ibinv) < guard || std::abs(z + ibinv) < guard)
        continue;
      const Complex S0 = classical_schwarz(geom, z);
      const Complex lhs = S0 / (1.0 + z * S0);
      const Complex rhs = spherical_schwarz(eq, z);
      max_res = std::max(max_res, std::abs(lhs - rhs));
      ++used;
    }
  }

  const double p = geom.p, q = geom.q, r = geom.r;
  const double root = 2.0 * p * q * std::sqrt(1.0 + p * p) * std::sqrt(1.0 + q * q);
  const double base = p * p + q * q + 2.0 * p * p * q * q;
  const double id1 = std::abs(spherical_schwarz_zero_height(params) - 2.0 * p * q / r);
  const double id2 = std::abs(b * b - (base + root) / (r * r));
  const double id3 = std::abs(1.0 / (b * b) - (base - root) / (r * r));

  rep.grid = std::to_string(used) + " boundary/exterior samples on " +
             std::to_string(scales.size()) + " rings";
  rep.max_equality_residual = max_res;
  rep.constants["p2"] = p * p;
  rep.constants["q2"] = q * q;
  rep.constants["A"] = eq.A();
  rep.constants["C"] = eq.C();
  rep.constants["zero_height_identity_residual"] = id1;
  rep.constants["b2_identity_residual"] = id2;
  rep.constants["binv2_identity_residual"] = id3;
  rep.finalize();
  rep.passed = rep.passed && id1 <= identity_tolerance &&
               id2 <= identity_tolerance && id3 <= identity_tolerance;
  return rep;
}

} // namespace droplet
