#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "droplet/geometry.hpp"
#include "droplet/potentials.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace droplet;

namespace {
constexpr double kPi = std::numbers::pi;

SpherePoint random_point(oracles::Rng& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * kPi);
  const double rho = std::sqrt(1.0 - z * z);
  return SpherePoint(rho * std::cos(phi), rho * std::sin(phi), z);
}

// Test-side quadrature of the pushforward weight over a disk, polar
// coordinates around the disk center.
double disk_pushforward_mass(Complex center, double radius) {
  const int m = 256;
  double total = 0.0;
  for (int k = 0; k < m; ++k) {
    const double phi = 2.0 * kPi * k / m;
    const Complex dir(std::cos(phi), std::sin(phi));
    total += oracles::adaptive_simpson(
        [&](double rho) {
          const Complex w = center + rho * dir;
          const double s = 1.0 + std::norm(w);
          return rho / (kPi * s * s);
        },
        0.0, radius, 1e-12);
  }
  return total * (2.0 * kPi / m);
}
} // namespace

TEST_CASE("stereographic projection maps the poles and the charge points") {
  CHECK(project(SpherePoint(0, 0, 1)).is_infinity());
  CHECK(project(SpherePoint(0, 0, -1)).value() == Complex(0.0, 0.0));
  // b = 2: phi(0, 0.8, 0.6) = 2i
  const PlanePoint z = project(SpherePoint(0.0, 0.8, 0.6));
  CHECK(std::abs(z.value() - Complex(0.0, 2.0)) < 1e-12);
}

TEST_CASE("unproject inverts the projection") {
  CHECK(euclidean_distance(unproject(PlanePoint(0.0)), SpherePoint(0, 0, -1)) < 1e-12);
  CHECK(euclidean_distance(unproject(PlanePoint::infinity()), SpherePoint(0, 0, 1)) < 1e-12);
  const SpherePoint p = unproject(PlanePoint(Complex(0.0, 2.0)));
  CHECK(p.x1 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.x2 == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(p.x3 == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("round trip on random sphere points") {
  oracles::Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const SpherePoint x = random_point(rng);
    const SpherePoint y = unproject(project(x));
    CHECK(euclidean_distance(x, y) < 1e-12);
  }
}

TEST_CASE("chordal distance equals the 3D distance") {
  CHECK(chordal_distance(PlanePoint(0.0), PlanePoint::infinity()) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(chordal_distance(PlanePoint(0.0), PlanePoint(1.0)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(chordal_distance(Complex(0, 2), Complex(0, -2)) ==
        doctest::Approx(1.6).epsilon(1e-14));

  oracles::Rng rng(12);
  for (int i = 0; i < 10000; ++i) {
    const SpherePoint x = random_point(rng);
    const SpherePoint y = random_point(rng);
    const double via_plane = chordal_distance(project(x), project(y));
    CHECK(std::abs(via_plane - euclidean_distance(x, y)) < 1e-12);
  }
}

TEST_CASE("cap areas and radii") {
  CHECK(cap_area(kPi - 1e-15) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cap_area(kPi / 2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cap_area_steradians(kPi / 2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  // a = 1: target area a/(1+2a) = 1/3 gives r_a = arccos(1/3)
  const double ra = cap_radius_for_area(1.0 / 3.0);
  CHECK(ra == doctest::Approx(1.2309594173407747).epsilon(1e-12));
  CHECK(cap_area(ra) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(cap_radius_for_area(0.0), std::domain_error);
  CHECK_THROWS_AS(cap_radius_for_area(1.5), std::domain_error);
}

TEST_CASE("pushforward density weight") {
  CHECK(pushforward_density_weight(Complex(0, 0)) ==
        doctest::Approx(1.0 / kPi).epsilon(1e-14));
  CHECK(pushforward_density_weight(Complex(1, 0)) ==
        doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));
  CHECK_THROWS_AS(pushforward_density_weight(PlanePoint::infinity()),
                  std::domain_error);
  // Total mass over the plane equals one (compactified Simpson oracle).
  const double mass = oracles::graded_toward_left(
      [](double u) {
        const double rho = std::tan(u);
        const double c = std::cos(u);
        const double s = 1.0 + rho * rho;
        return 2.0 * kPi * rho / (kPi * s * s) / (c * c);
      },
      0.0, kPi / 2 - 1e-13, 1e-13);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("projected caps carry their lambda mass") {
  oracles::Rng rng(21);
  int tested = 0;
  while (tested < 100) {
    const SpherePoint center = random_point(rng);
    const double radius = rng.uniform(0.05, 2.8);
    // Caps whose boundary grazes the north pole project to gigantic
    // circles; keep the oracle quadrature on sane domains.
    if (std::abs(geodesic_angle(center, SpherePoint::north()) - radius) < 0.1)
      continue;
    const SphericalCap cap(center, radius);
    const ProjectedCapCircle circle = project_cap(cap);
    double mass;
    if (circle.cap_contains_north_pole) {
      // The image is the exterior of the circle; integrate the complement.
      mass = 1.0 - disk_pushforward_mass(circle.center, circle.radius);
    } else {
      mass = disk_pushforward_mass(circle.center, circle.radius);
    }
    CHECK(std::abs(mass - cap_area(cap)) < 1e-8);
    ++tested;
  }
}

TEST_CASE("external field transform") {
  const auto zero = [](const SpherePoint&) { return 0.0; };
  CHECK(transform_external_field(zero, PlanePoint(0.0)) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(transform_external_field(zero, PlanePoint(Complex(0, 1))) ==
        doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));

  // Two-charge field, b = 2, a = 1 at z = 0.  The oracle is the chordal
  // distance from the south pole to the charges: 4/sqrt(5) each, so
  // Qhat(0) = -2 log(4/sqrt(5)) = log(5/16).
  const double d = chordal_distance(Complex(0, 0), Complex(0, 2));
  CHECK(d == doctest::Approx(4.0 / std::sqrt(5.0)).epsilon(1e-14));
  const SpherePoint p1 = unproject(PlanePoint(Complex(0, 2)));
  const SpherePoint p2 = unproject(PlanePoint(Complex(0, -2)));
  const auto Q = [&](const SpherePoint& x) {
    return -std::log(euclidean_distance(x, p1)) -
           std::log(euclidean_distance(x, p2));
  };
  const double qhat = transform_external_field(Q, PlanePoint(0.0));
  CHECK(qhat == doctest::Approx(-2.0 * std::log(d)).epsilon(1e-13));
  CHECK(qhat == doctest::Approx(std::log(5.0 / 16.0)).epsilon(1e-13));
}

TEST_CASE("potential transform constant") {
  CHECK(potential_transform_constant(0.0, 0.8) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(potential_transform_constant(1.0, 0.0) ==
        doctest::Approx(-std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("U^lambda is the constant 1/2 - log 2") {
  // Oracle: rotate the evaluation point to the pole; the integrand is
  // azimuthally symmetric with a log singularity at theta = 0.  The
  // chord is written as 2 sin(theta/2) to stay stable near the pole.
  const double u = oracles::graded_toward_left(
      [](double th) {
        return -0.5 * std::log(2.0 * std::sin(0.5 * th)) * std::sin(th);
      },
      0.0, kPi, 1e-13);
  CHECK(u == doctest::Approx(0.5 - std::log(2.0)).epsilon(1e-10));
  CHECK(lebesgue_potential_constant() ==
        doctest::Approx(-0.1931471805599453).epsilon(1e-14));
}

TEST_CASE("potential transport rule for cap measures") {
  // mu = normalized Lebesgue on a cap; Eq-free check of
  // U^mu(x) = U^{push}(z) + (m/2) log(1+|z|^2) + M/2 - m log 2
  // with both sides computed by test-side quadrature.
  oracles::Rng rng(31);
  const SphericalCap cap(SpherePoint(0.6, 0.0, -0.8), 0.5);
  const ProjectedCapCircle circle = project_cap(cap);
  REQUIRE(!circle.cap_contains_north_pole);
  const double mass = cap_area(cap);

  // Planar log-moment of the pushforward over the disk.
  const int m_ang = 64;
  double moment = 0.0;
  for (int k = 0; k < m_ang; ++k) {
    const double phi = 2.0 * kPi * k / m_ang;
    const Complex dir(std::cos(phi), std::sin(phi));
    moment += oracles::adaptive_simpson(
        [&](double rho) {
          const Complex w = circle.center + rho * dir;
          const double s = 1.0 + std::norm(w);
          return std::log1p(std::norm(w)) * rho / (kPi * s * s);
        },
        0.0, circle.radius, 1e-12);
  }
  moment *= 2.0 * kPi / m_ang;

  int checked = 0;
  while (checked < 100) {
    const SpherePoint x = random_point(rng);
    if (geodesic_angle(x, cap.center) < cap.geodesic_radius + 0.15)
      continue;
    ++checked;
    const Complex z = project(x).value();

    //

    double sphere_side = 0.0; // 2D quadrature over the cap, geodesic coords
    for (int k = 0; k < m_ang; ++k) {
      const double phi = 2.0 * kPi * k / m_ang;
      sphere_side += oracles::adaptive_simpson(
          [&](double th) {
            const SpherePoint y0 = rotate_about_axis(
                cap.center, SpherePoint(0.0, 1.0, 0.0), th);
            const SpherePoint y = rotate_about_axis(y0, cap.center, phi);
            return -std::log(euclidean_distance(x, y)) * std::sin(th) /
                   (4.0 * kPi);
          },
          0.0, cap.geodesic_radius, 1e-12);
    }
    sphere_side *= 2.0 * kPi / m_ang;
    sphere_side /= mass; // normalized measure

    double plane_side = 0.0;
    for (int k = 0; k < m_ang; ++k) {
      const double phi = 2.0 * kPi * k / m_ang;
      const Complex dir(std::cos(phi), std::sin(phi));
      plane_side += oracles::adaptive_simpson(
          [&](double rho) {
            const Complex w = circle.center + rho * dir;
            const double s = 1.0 + std::norm(w);
            return -std::log(std::abs(z - w)) * rho / (kPi * s * s);
          },
          0.0, circle.radius, 1e-12);
    }
    plane_side *= 2.0 * kPi / m_ang;
    plane_side /= mass;
    plane_side += 0.5 * std::log1p(std::norm(z)) +
                  potential_transform_constant(1.0, moment / mass);

    CHECK(std::abs(sphere_side - plane_side) < 1e-7);
  }
}

TEST_CASE("sphere point constructor guards the norm") {
  CHECK_NOTHROW(SpherePoint(1.0 + 5e-7, 0.0, 0.0));
  CHECK_THROWS_AS(SpherePoint(1.1, 0.0, 0.0), std::invalid_argument);
  const SpherePoint p(1.0 + 5e-7, 0.0, 0.0);
  CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-14));
}
