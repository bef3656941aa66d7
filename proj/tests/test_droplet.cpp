#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "droplet/droplet.hpp"
#include "droplet/potentials.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace droplet;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("droplet shapes per regime") {
  const Droplet post = Droplet::build(ProblemParams(2.0, 1.0));
  REQUIRE(post.is_ellipse());
  const EllipseGeometry& g = post.ellipse();
  CHECK(g.p * g.p == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(g.q * g.q == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(g.r == doctest::Approx(1.0).epsilon(1e-14)); // foci at +-A
  // Ellipse equation 0.8 x^2 + 4 y^2 = 1 at a boundary point.
  const Complex zb = g.boundary_point(0.37);
  CHECK(0.8 * zb.real() * zb.real() + 4.0 * zb.imag() * zb.imag() ==
        doctest::Approx(1.0).epsilon(1e-13));

  const Droplet crit = Droplet::build(ProblemParams(2.0, 1.0 / 3.0));
  REQUIRE(crit.is_strip());
  CHECK(crit.strip().half_width == doctest::Approx(0.75).epsilon(1e-14));

  const Droplet sub = Droplet::build(ProblemParams(2.0, 0.25));
  REQUIRE(sub.is_cap_complement());
  CHECK(cap_area(sub.caps().cap1) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(cap_area(sub.caps().cap2) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  const SpherePoint p1 = unproject(PlanePoint(Complex(0.0, 2.0)));
  CHECK(euclidean_distance(sub.caps().cap1.center, p1) < 1e-13);
}

TEST_CASE("membership") {
  const Droplet post = Droplet::build(ProblemParams(2.0, 1.0));
  CHECK(post.contains(PlanePoint(0.0)));
  CHECK(!post.contains(PlanePoint(1.2))); // 0.8 * 1.44 = 1.152 > 1
  CHECK(!post.contains(PlanePoint::infinity()));

  const Droplet crit = Droplet::build(ProblemParams(2.0, 1.0 / 3.0));
  CHECK(crit.contains(PlanePoint(Complex(100.0, 0.7))));
  CHECK(!crit.contains(PlanePoint(Complex(0.0, 0.76))));
  CHECK(crit.contains(PlanePoint::infinity()));

  const Droplet sub = Droplet::build(ProblemParams(2.0, 0.25));
  CHECK(sub.contains(PlanePoint(0.0)));
  CHECK(sub.contains(PlanePoint::infinity()));
  CHECK(!sub.contains(PlanePoint(Complex(0.0, 2.0)))); // the charge point
}

TEST_CASE("boundary samples") {
  const Droplet post = Droplet::build(ProblemParams(2.0, 1.0));
  const auto s4 = post.boundary_samples(4);
  const double p = post.ellipse().p, q = post.ellipse().q;
  CHECK(std::abs(s4[0].z - Complex(p, 0.0)) < 1e-14);
  CHECK(std::abs(s4[1].z - Complex(0.0, q)) < 1e-14);
  CHECK(std::abs(s4[2].z - Complex(-p, 0.0)) < 1e-14);
  CHECK(std::abs(s4[3].z - Complex(0.0, -q)) < 1e-14);

  for (const auto& s : post.boundary_samples(64)) {
    CHECK(post.contains(PlanePoint(s.z)));
    CHECK(!post.contains(PlanePoint(s.z * 1.001)));
    CHECK(std::abs(s.x.norm() - 1.0) < 1e-12);
    CHECK(post.ellipse().form(s.z) == doctest::Approx(1.0).epsilon(1e-12));
    // sphere preimage projects back to the sample
    CHECK(std::abs(project(s.x).value() - s.z) < 1e-10);
  }

  const Droplet sub = Droplet::build(ProblemParams(2.0, 0.25));
  for (const auto& s : sub.boundary_samples(32)) {
    CHECK(std::abs(s.x.norm() - 1.0) < 1e-12);
    const double d1 = geodesic_angle(s.x, sub.caps().cap1.center);
    const double d2 = geodesic_angle(s.x, sub.caps().cap2.center);
    CHECK(std::min(std::abs(d1 - sub.caps().cap1.geodesic_radius),
                   std::abs(d2 - sub.caps().cap2.geodesic_radius)) < 1e-12);
  }

  CHECK_THROWS_AS(post.boundary_samples(2), std::invalid_argument);
}

TEST_CASE("classical schwarz function") {
  const EllipseGeometry g = EllipseGeometry::from_params(ProblemParams(2.0, 1.0));
  CHECK(std::abs(classical_schwarz(g, Complex(g.p, 0.0)) - Complex(g.p, 0.0)) <
        1e-13);
  CHECK(std::abs(classical_schwarz(g, Complex(0.0, g.q)) - Complex(0.0, -g.q)) <
        1e-13);
  // S0 = conj(z) along the boundary.
  for (int k = 0; k < 32; ++k) {
    const double theta = 2.0 * kPi * (k + 0.41) / 32;
    const Complex z = g.boundary_point(theta);
    CHECK(std::abs(classical_schwarz(g, z) - std::conj(z)) < 1e-12);
  }
  CHECK_THROWS_AS(classical_schwarz(g, Complex(0.5, 0.0)), std::domain_error);
}

TEST_CASE("spherical schwarz function") {
  const ProblemParams params(2.0, 1.0);
  const LineEquilibrium eq(params);
  const EllipseGeometry g = EllipseGeometry::from_params(params);

  // The two representations agree away from poles and cut.
  oracles::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Complex z(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
    if (std::abs(z.imag()) < 0.05 && std::abs(z.real()) < eq.A() + 0.05)
      continue;
    if (std::abs(z - Complex(0, 2)) < 0.2 || std::abs(z + Complex(0, 2)) < 0.2 ||
        std::abs(z - Complex(0, 0.5)) < 0.2 || std::abs(z + Complex(0, 0.5)) < 0.2)
      continue;
    CHECK(std::abs(spherical_schwarz(eq, z) -
                   spherical_schwarz_meromorphic(eq, z)) < 1e-12);
  }

  // Decay z S(z) -> 1 at |z| = 1e4.
  const Complex far(7071.067, 7071.067);
  CHECK(std::abs(far * spherical_schwarz(eq, far) - 1.0) < 1e-3);

  // First-sheet zeros at +- i sqrt(b^4-1)/(b sqrt(1+2a)).
  const double zh = spherical_schwarz_zero_height(params);
  CHECK(zh == doctest::Approx(1.1180339887498949).epsilon(1e-14));
  CHECK(std::abs(spherical_schwarz(eq, Complex(0.0, zh))) < 1e-10);
  CHECK(std::abs(spherical_schwarz(eq, Complex(0.0, -zh))) < 1e-10);

  // Boundary characterization conj(z)/(1+|z|^2) = S(z).
  for (int k = 0; k < 64; ++k) {
    const double theta = 2.0 * kPi * (k + 0.13) / 64;
    const Complex z = g.boundary_point(theta);
    CHECK(std::abs(std::conj(z) / (1.0 + std::norm(z)) -
                   spherical_schwarz(eq, z)) < 1e-10);
  }
}

TEST_CASE("schwarz identity verification") {
  const VerificationReport rep =
      verify_schwarz_identity(ProblemParams(2.0, 1.0), 256);
  CHECK(rep.passed);
  CHECK(rep.max_equality_residual < 1e-10);
  CHECK(rep.constants.at("zero_height_identity_residual") < 1e-12);
  CHECK(rep.constants.at("b2_identity_residual") < 1e-12);
  CHECK(rep.constants.at("binv2_identity_residual") < 1e-12);

  // 2pq/r at (2, 1) equals sqrt(5/4).
  const EllipseGeometry g = EllipseGeometry::from_params(ProblemParams(2.0, 1.0));
  CHECK(2.0 * g.p * g.q / g.r == doctest::Approx(std::sqrt(1.25)).epsilon(1e-13));

  const VerificationReport rep2 =
      verify_schwarz_identity(ProblemParams(3.0, 0.5), 256);
  CHECK(rep2.passed);

  CHECK_THROWS_AS(verify_schwarz_identity(ProblemParams(2.0, 0.25), 16),
                  std::domain_error);
}

TEST_CASE("ellipse degenerates to the critical strip") {
  const ProblemParams params(2.0, 1.0 / 3.0 + 1e-6);
  const EllipseGeometry g = EllipseGeometry::from_params(params);
  CHECK(std::abs(g.q - 0.75) < 1e-3);
  CHECK(g.p > 10.0);
}

TEST_CASE("foci agree with the support endpoint") {
  oracles::Rng rng(19);
  for (int i = 0; i < 20; ++i) {
    const double b = rng.uniform(1.15, 3.5);
    const double acr = 1.0 / (b * b - 1.0);
    const double a = acr * rng.uniform(1.2, 5.0) + 0.05;
    const ProblemParams params(b, a);
    if (params.regime() != Regime::postcritical)
      continue;
    const EllipseGeometry g = EllipseGeometry::from_params(params);
    const auto [A, C] = LineEquilibrium::compute_A_C(params);
    CHECK(g.r == doctest::Approx(A).epsilon(1e-12));
  }
}

TEST_CASE("semi-axes grow with t") {
  const double b = 2.0;
  const double tcr = (b * b - 1.0) / (b * b + 1.0);
  double prev_p = 0.0, prev_q = 0.0;
  for (int k = 1; k <= 50; ++k) {
    const double t = tcr * k / 51.0;
    const EllipseGeometry g =
        EllipseGeometry::from_params(ProblemParams::from_t(b, t));
    CHECK(g.p > prev_p);
    CHECK(g.q > prev_q);
    prev_p = g.p;
    prev_q = g.q;
  }
}

TEST_CASE("volume law in all three regimes") {
  for (double a : {1.0, 1.0 / 3.0, 0.25}) {
    const ProblemParams params(2.0, a);
    const double area = droplet_normalized_area(params, 1e-8);
    CHECK(std::abs(area - 1.0 / (1.0 + 2.0 * a)) < 1e-6);
  }
}

TEST_CASE("caps touch the north pole exactly at the critical charge") {
  const double b = 2.0;
  const double acr = 1.0 / (b * b - 1.0);
  // At a_cr the cap radius equals the geodesic distance from the cap
  // center to the north pole.
  const double ra = cap_radius_for_area(acr / (1.0 + 2.0 * acr));
  const SpherePoint p1 = unproject(PlanePoint(Complex(0.0, b)));
  CHECK(std::abs(geodesic_angle(p1, SpherePoint::north()) - ra) < 1e-9);
}
