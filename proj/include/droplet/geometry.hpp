#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace droplet {

using Complex = std::complex<double>;

/// Point on the unit sphere S^2.  Constructors renormalize inputs whose
/// norm deviates from 1 by less than 1e-6 and reject anything worse.
struct SpherePoint {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  SpherePoint() = default;
  SpherePoint(double x1_, double x2_, double x3_);

  static SpherePoint north() { return SpherePoint(0.0, 0.0, 1.0); }
  static SpherePoint south() { return SpherePoint(0.0, 0.0, -1.0); }

  double norm() const;
};

double dot(const SpherePoint& p, const SpherePoint& q);
double euclidean_distance(const SpherePoint& p, const SpherePoint& q);
// Geodesic (great-circle) angle between two sphere points, in [0, pi].
double geodesic_angle(const SpherePoint& p, const SpherePoint& q);
// Rotation of p about the given axis (unit vector) by angle, Rodrigues form.
SpherePoint rotate_about_axis(const SpherePoint& p, const SpherePoint& axis,
                              double angle);

/// Point of the extended complex plane C u {infinity}.  The point at
/// infinity is an explicit tagged state, never a large float: the north
/// pole projects to it and belongs to several droplets considered here.
class PlanePoint {
public:
  PlanePoint() : value_(0.0, 0.0), infinite_(false) {}
  PlanePoint(Complex z) : value_(z), infinite_(false) {}
  PlanePoint(double x) : value_(x, 0.0), infinite_(false) {}

  static PlanePoint infinity() {
    PlanePoint p;
    p.infinite_ = true;
    return p;
  }

  bool is_infinity() const { return infinite_; }
  // Finite value; throws if the point is at infinity.
  Complex value() const;

private:
  Complex value_;
  bool infinite_;
};

struct SphericalCap {
  SpherePoint center;
  double geodesic_radius = 0.0; // in (0, pi)

  SphericalCap(SpherePoint c, double r);
};

// Stereographic projection from the north pole: (x1+ix2)/(1-x3), with
// the north pole mapped to infinity.
PlanePoint project(const SpherePoint& p);
SpherePoint unproject(const PlanePoint& z);

// Euclidean distance of the unprojected points, evaluated in planar
// coordinates: 2|z-w| / (sqrt(1+|z|^2) sqrt(1+|w|^2)), with the limit
// 2/sqrt(1+|z|^2) when one argument is at infinity.
double chordal_distance(const PlanePoint& z, const PlanePoint& w);
double chordal_distance(Complex z, Complex w);

// Normalized area lambda(B) = (1 - cos r)/2 of a spherical cap.
double cap_area(const SphericalCap& cap);
double cap_area(double geodesic_radius);
// Raw steradian area, 4*pi times the normalized one.
double cap_area_steradians(double geodesic_radius);
// Radius r_a with cap area equal to `area`; rejects area outside (0,1).
double cap_radius_for_area(double area);

// Density of the pushforward of normalized Lebesgue measure under
// stereographic projection: 1/(pi (1+|z|^2)^2) per planar area.
double pushforward_density_weight(const PlanePoint& z);
double pushforward_density_weight(Complex z);

// Planar external field Q^(z) = Q(phi^{-1}(z)) + (1/2) log(1+|z|^2).
double transform_external_field(const std::function<double(const SpherePoint&)>& Q,
                                const PlanePoint& z);

// Constant term in the potential transport rule: for a measure mu on S^2
// with planar pushforward of mass m and log-moment M = int log(1+|w|^2),
//   U^mu(x) = U^{push}(z) + (m/2) log(1+|z|^2) + M/2 - m log 2.
// Returns M/2 - m log 2.
double potential_transform_constant(double mu_total_mass, double planar_log_moment);

/// Planar image of a cap boundary, always a circle.  When the cap
/// contains the north pole the image of the cap *interior* is the
/// exterior of this circle (plus infinity).
struct ProjectedCapCircle {
  Complex center;
  double radius = 0.0;
  bool cap_contains_north_pole = false;
  bool north_pole_on_boundary = false;
};

ProjectedCapCircle project_cap(const SphericalCap& cap);

// Quasi-uniform spherical Fibonacci lattice with n points.
std::vector<SpherePoint> fibonacci_sphere(int n);

} // namespace droplet
