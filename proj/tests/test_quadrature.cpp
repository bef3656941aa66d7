#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "droplet/plane_quadrature.hpp"
#include "droplet/quadrature.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace droplet;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("gauss rules integrate polynomials exactly") {
  const auto f = [](double x) { return 7.0 * x * x * x * x * x * x - 3.0 * x + 1.0; };
  // int_{-1}^{2} = [x^7 - 1.5 x^2 + x] = 124 + 3.5 = 127.5
  CHECK(integrate_gauss(f, -1.0, 2.0, 8) == doctest::Approx(127.5).epsilon(1e-13));
}

TEST_CASE("adaptive rule reaches the tolerance") {
  CHECK(integrate_adaptive([](double x) { return std::exp(-x * x); }, -10.0, 10.0,
                           1e-12) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  CHECK(integrate_adaptive([](double x) { return std::sin(20.0 * x); }, 0.0, kPi,
                           1e-12) ==
        doctest::Approx((1.0 - std::cos(20.0 * kPi)) / 20.0).epsilon(1e-10));
}

TEST_CASE("log singularities via graded panels") {
  CHECK(integrate_with_singularities([](double x) { return std::log(x); }, 0.0,
                                     1.0, {0.0}) ==
        doctest::Approx(-1.0).epsilon(1e-11));
  CHECK(integrate_with_singularities([](double x) { return std::log(std::abs(x)); },
                                     -1.0, 1.0, {0.0}) ==
        doctest::Approx(-2.0).epsilon(1e-11));
  const auto f = [](double x) { return std::log(std::abs(x - 0.3)) * std::cos(x); };
  const double ref = oracles::graded_interior(f, -1.0, 1.0, 0.3, 1e-13);
  CHECK(integrate_with_singularities(f, -1.0, 1.0, {0.3}) ==
        doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("real line integrals via the tangent substitution") {
  CHECK(integrate_real_line([](double x) { return 1.0 / (kPi * (1.0 + x * x)); }) ==
        doctest::Approx(1.0).epsilon(1e-11));
  CHECK(integrate_real_line([](double x) { return std::exp(-0.5 * x * x); }) ==
        doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-10));
}

TEST_CASE("sqrt-interval substitution") {
  CHECK(integrate_sqrt_interval([](double x) { return std::sqrt(1.0 - x * x); },
                                1.0) == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(integrate_sqrt_interval(
            [](double x) { return 1.0 / std::sqrt(1.0 - x * x); }, 1.0) ==
        doctest::Approx(kPi).epsilon(1e-10));
}

TEST_CASE("periodic trapezoid rule is spectrally accurate") {
  const auto f = [](double t) { return std::exp(std::cos(t)); };
  CHECK(integrate_periodic(f, 32) ==
        doctest::Approx(integrate_periodic(f, 256)).epsilon(1e-14));
}

TEST_CASE("ellipse region quadrature") {
  const EllipseRegion region{Complex(0.0, 0.0), 2.0, 0.5};
  CHECK(integrate_ellipse(region, [](Complex) { return 1.0; }, 1e-10) ==
        doctest::Approx(kPi * 2.0 * 0.5).epsilon(1e-10));
  // int x^2 over the ellipse = pi p^3 q / 4
  CHECK(integrate_ellipse(region, [](Complex w) { return w.real() * w.real(); },
                          1e-10) == doctest::Approx(kPi).epsilon(1e-9));
}

TEST_CASE("uniform disk potential matches the closed form") {
  // Unit-density unit disk: (pi/2)(1-|z|^2) inside, -pi log|z| outside.
  const EllipseRegion disk = EllipseRegion::disk(Complex(0.0, 0.0), 1.0);
  const auto one = [](Complex) { return 1.0; };
  CHECK(ellipse_log_potential(disk, one, Complex(0.0, 0.0), 1e-11) ==
        doctest::Approx(kPi / 2.0).epsilon(1e-10));
  CHECK(ellipse_log_potential(disk, one, Complex(0.5, 0.0), 1e-11) ==
        doctest::Approx(kPi / 2.0 * 0.75).epsilon(1e-10));
  CHECK(ellipse_log_potential(disk, one, Complex(2.0, 0.0), 1e-11) ==
        doctest::Approx(-kPi * std::log(2.0)).epsilon(1e-10));
  // Near-boundary exterior point exercises the adaptive refinement.
  CHECK(ellipse_log_potential(disk, one, Complex(1.01, 0.0), 1e-10) ==
        doctest::Approx(-kPi * std::log(1.01)).epsilon(1e-8));
}

TEST_CASE("stieltjes transform of the uniform disk") {
  // int dA/(z-w): pi/z outside, pi conj(z) inside.
  const EllipseRegion disk = EllipseRegion::disk(Complex(0.0, 0.0), 1.0);
  const auto one = [](Complex) { return 1.0; };
  const Complex outside = ellipse_stieltjes(disk, one, Complex(2.0, 1.0), 1e-10);
  CHECK(std::abs(outside - kPi / Complex(2.0, 1.0)) < 1e-9);
  const Complex inside = ellipse_stieltjes(disk, one, Complex(0.3, 0.2), 1e-10);
  CHECK(std::abs(inside - kPi * Complex(0.3, -0.2)) < 1e-9);
}

TEST_CASE("complement, plane and strip integrals") {
  const EllipseRegion disk = EllipseRegion::disk(Complex(0.0, 0.0), 1.0);
  const auto weight = [](Complex w) { return pushforward_density_weight(w); };
  const double inside = integrate_ellipse(disk, weight, 1e-11);
  const double outside = ellipse_complement_integral(disk, weight, 1e-10);
  CHECK(inside == doctest::Approx(0.5).epsilon(1e-10)); // southern hemisphere
  CHECK(inside + outside == doctest::Approx(1.0).epsilon(1e-9));

  CHECK(integrate_plane(weight, 1e-10) == doctest::Approx(1.0).epsilon(1e-9));

  // Strip of half-width h: mass has the closed form h/sqrt(1+h^2).
  const double h = 0.75;
  CHECK(integrate_strip(h, weight, 1e-10) ==
        doctest::Approx(h / std::sqrt(1.0 + h * h)).epsilon(1e-8));
}
