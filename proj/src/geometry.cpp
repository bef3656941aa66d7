#include "droplet/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace droplet {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kLog2 = std::numbers::ln2;
} // namespace

SpherePoint::SpherePoint(double x1_, double x2_, double x3_)
    : x1(x1_), x2(x2_), x3(x3_) {
  const double n = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
  if (!(std::abs(n - 1.0) < 1e-6))
    throw std::invalid_argument("SpherePoint: norm deviates from 1 by >= 1e-6");
  x1 /= n;
  x2 /= n;
  x3 /= n;
}

double SpherePoint::norm() const {
  return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
}

double dot(const SpherePoint& p, const SpherePoint& q) {
  return p.x1 * q.x1 + p.x2 * q.x2 + p.x3 * q.x3;
}

double euclidean_distance(const SpherePoint& p, const SpherePoint& q) {
  const double d1 = p.x1 - q.x1, d2 = p.x2 - q.x2, d3 = p.x3 - q.x3;
  return std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
}

double geodesic_angle(const SpherePoint& p, const SpherePoint& q) {
  // 2 asin(chord/2) is well conditioned for nearly coincident points,
  // unlike acos of the dot product.
  const double half_chord = 0.5 * euclidean_distance(p, q);
  return 2.0 * std::asin(std::min(1.0, half_chord));
}

SpherePoint rotate_about_axis(const SpherePoint& p, const SpherePoint& axis,
                              double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  const double k1 = axis.x1, k2 = axis.x2, k3 = axis.x3;
  const double kd = k1 * p.x1 + k2 * p.x2 + k3 * p.x3;
  // k x p
  const double c1 = k2 * p.x3 - k3 * p.x2;
  const double c2 = k3 * p.x1 - k1 * p.x3;
  const double c3 = k1 * p.x2 - k2 * p.x1;
  return SpherePoint(p.x1 * c + c1 * s + k1 * kd * (1.0 - c),
                     p.x2 * c + c2 * s + k2 * kd * (1.0 - c),
                     p.x3 * c + c3 * s + k3 * kd * (1.0 - c));
}

Complex PlanePoint::value() const {
  if (infinite_)
    throw std::domain_error("PlanePoint: value() called on the point at infinity");
  return value_;
}

SphericalCap::SphericalCap(SpherePoint c, double r) : center(c), geodesic_radius(r) {
  if (!(r > 0.0 && r < kPi))
    throw std::invalid_argument("SphericalCap: radius must lie in (0, pi)");
}

PlanePoint project(const SpherePoint& p) {
  if (p.x3 >= 1.0 - 1e-15)
    return PlanePoint::infinity();
  return PlanePoint(Complex(p.x1, p.x2) / (1.0 - p.x3));
}

SpherePoint unproject(const PlanePoint& z) {
  if (z.is_infinity())
    return SpherePoint::north();
  const Complex v = z.value();
  const double r2 = std::norm(v);
  const double denom = 1.0 + r2;
  return SpherePoint(2.0 * v.real() / denom, 2.0 * v.imag() / denom,
                     (r2 - 1.0) / denom);
}

double chordal_distance(const PlanePoint& z, const PlanePoint& w) {
  if (z.is_infinity() && w.is_infinity())
    return 0.0;
  if (z.is_infinity())
    return 2.0 / std::sqrt(1.0 + std::norm(w.value()));
  if (w.is_infinity())
    return 2.0 / std::sqrt(1.0 + std::norm(z.value()));
  return chordal_distance(z.value(), w.value());
}

double chordal_distance(Complex z, Complex w) {
  return 2.0 * std::abs(z - w) /
         (std::sqrt(1.0 + std::norm(z)) * std::sqrt(1.0 + std::norm(w)));
}

double cap_area(double geodesic_radius) {
  return 0.5 * (1.0 - std::cos(geodesic_radius));
}

double cap_area(const SphericalCap& cap) { return cap_area(cap.geodesic_radius); }

double cap_area_steradians(double geodesic_radius) {
  return 4.0 * kPi * cap_area(geodesic_radius);
}

double cap_radius_for_area(double area) {
  if (!(area > 0.0 && area < 1.0))
    throw std::domain_error("cap_radius_for_area: area must lie in (0,1)");
  return std::acos(1.0 - 2.0 * area);
}

double pushforward_density_weight(Complex z) {
  const double s = 1.0 + std::norm(z);
  return 1.0 / (kPi * s * s);
}

double pushforward_density_weight(const PlanePoint& z) {
  if (z.is_infinity())
    throw std::domain_error("pushforward_density_weight: density is defined in the planar chart only");
  return pushforward_density_weight(z.value());
}

double transform_external_field(const std::function<double(const SpherePoint&)>& Q,
                                const PlanePoint& z) {
  if (z.is_infinity())
    throw std::domain_error("transform_external_field: finite z required");
  const double q = Q(unproject(z));
  return q + 0.5 * std::log1p(std::norm(z.value()));
}

double potential_transform_constant(double mu_total_mass, double planar_log_moment) {
  return 0.5 * planar_log_moment - mu_total_mass * kLog2;
}

ProjectedCapCircle project_cap(const SphericalCap& cap) {
  ProjectedCapCircle out;
  const SpherePoint n = SpherePoint::north();
  const double axis_angle = geodesic_angle(cap.center, n);
  out.cap_contains_north_pole = axis_angle < cap.geodesic_radius;
  out.north_pole_on_boundary =
      std::abs(axis_angle - cap.geodesic_radius) < 1e-12;

  // The two boundary points on the meridian through the cap center map to
  // a diameter of the image circle.
  SpherePoint axis(1.0, 0.0, 0.0); // placeholder for the polar case
  if (axis_angle >= 1e-12 && axis_angle <= kPi - 1e-12) {
    const double c1 = n.x2 * cap.center.x3 - n.x3 * cap.center.x2;
    const double c2 = n.x3 * cap.center.x1 - n.x1 * cap.center.x3;
    const double c3 = n.x1 * cap.center.x2 - n.x2 * cap.center.x1;
    const double cn = std::sqrt(c1 * c1 + c2 * c2 + c3 * c3);
    axis = SpherePoint(c1 / cn, c2 / cn, c3 / cn);
  }
  const SpherePoint e1 = rotate_about_axis(cap.center, axis, cap.geodesic_radius);
  const SpherePoint e2 = rotate_about_axis(cap.center, axis, -cap.geodesic_radius);
  const PlanePoint z1 = project(e1), z2 = project(e2);
  if (z1.is_infinity() || z2.is_infinity())
    throw std::domain_error("project_cap: cap boundary passes through the north pole");
  out.center = 0.5 * (z1.value() + z2.value());
  out.radius = 0.5 * std::abs(z1.value() - z2.value());
  return out;
}

std::vector<SpherePoint> fibonacci_sphere(int n) {
  std::vector<SpherePoint> pts;
  pts.reserve(static_cast<size_t>(n));
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * kPi * std::fmod(i / golden, 1.0);
    pts.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return pts;
}

} // namespace droplet
