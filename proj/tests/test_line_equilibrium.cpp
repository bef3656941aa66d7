#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "droplet/line_equilibrium.hpp"
#include "droplet/measures.hpp"
#include "droplet/potentials.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace droplet;

namespace {
constexpr double kPi = std::numbers::pi;

// Test-side quadrature of the postcritical density over [-A, A], graded
// toward the square-root endpoints.
double interval_mass(const LineEquilibrium& eq) {
  const double A = eq.A();
  return oracles::graded_toward_left([&](double x) { return eq.density(x); },
                                     -A, 0.0, 1e-12) +
         oracles::graded_toward_right([&](double x) { return eq.density(x); },
                                      0.0, A, 1e-12);
}
} // namespace

TEST_CASE("regimes and derived parameters") {
  const ProblemParams post(2.0, 1.0);
  CHECK(post.regime() == Regime::postcritical);
  CHECK(post.a_cr() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(post.t() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(post.t_cr() == doctest::Approx(0.6).epsilon(1e-15));

  CHECK(ProblemParams(2.0, 0.25).regime() == Regime::subcritical);
  CHECK(ProblemParams(2.0, 1.0 / 3.0).regime() == Regime::critical);
  CHECK(ProblemParams(2.0, 1.0 / 3.0 + 1e-9).regime() == Regime::postcritical);
  CHECK(ProblemParams(2.0, 1.0 / 3.0 - 1e-9).regime() == Regime::subcritical);
  CHECK(ProblemParams::from_t(2.0, 0.6).regime() == Regime::critical);

  // b = 1: a_cr is infinite, every finite charge stays subcritical.
  const ProblemParams unit(1.0, 5.0);
  CHECK(std::isinf(unit.a_cr()));
  CHECK(unit.regime() == Regime::subcritical);

  CHECK_THROWS_AS(ProblemParams(0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ProblemParams(2.0, -1.0), std::invalid_argument);
}

TEST_CASE("external field and its t-form") {
  const LineEquilibrium eq(ProblemParams(2.0, 1.0));
  // V(0) = log(1/4) - (1/2) log 4 = -3 log 2
  CHECK(eq.external_field(0.0) ==
        doctest::Approx(-3.0 * std::log(2.0)).epsilon(1e-14));

  oracles::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(-8.0, 8.0);
    CHECK(eq.external_field(x) ==
          doctest::Approx(eq.external_field(-x)).epsilon(1e-14));
    CHECK(eq.external_field(x) ==
          doctest::Approx(eq.external_field_t_form(x)).epsilon(1e-13));
  }

  // Weak admissibility: V(x) - (1/2) log(1+x^2) has a finite limit (0).
  const double x = 1e6;
  CHECK(std::abs(eq.external_field(x) - 0.5 * std::log1p(x * x)) < 1e-9);
}

TEST_CASE("field derivative") {
  const LineEquilibrium eq(ProblemParams(2.0, 1.0));
  CHECK(std::abs(eq.field_derivative(Complex(0.0, 0.0))) < 1e-15);
  CHECK(eq.field_derivative(Complex(1.0, 0.0)).real() ==
        doctest::Approx(1.4).epsilon(1e-14));

  const double fd = oracles::central_difference(
      [&](double s) { return eq.external_field(s); }, 0.7);
  CHECK(eq.field_derivative(Complex(0.7, 0.0)).real() ==
        doctest::Approx(fd).epsilon(1e-6));

  CHECK_THROWS_AS(eq.field_derivative(Complex(0.0, 2.0)), std::domain_error);
  CHECK_THROWS_AS(eq.field_derivative(Complex(0.0, -0.5)), std::domain_error);
}

TEST_CASE("support endpoint and amplitude") {
  const auto [A, C] = LineEquilibrium::compute_A_C(ProblemParams(2.0, 1.0));
  CHECK(A == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(C == doctest::Approx(11.25).epsilon(1e-14));

  // Divergence toward the critical charge.
  const auto [A2, C2] =
      LineEquilibrium::compute_A_C(ProblemParams(2.0, 1.0 / 3.0 + 1e-8));
  CHECK(A2 > 1e3);
  CHECK(C2 < 1e-6);

  // Both linear equations from the residue matching.
  oracles::Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    const double b = rng.uniform(1.2, 3.5);
    const double acr = 1.0 / (b * b - 1.0);
    const double a = acr * rng.uniform(1.3, 4.0) + 0.1;
    const ProblemParams params(b, a);
    REQUIRE(params.regime() == Regime::postcritical);
    const auto [Ar, Cr] = LineEquilibrium::compute_A_C(params);
    const double b4 = b * b * b * b;
    const double lhs1 = Cr * b4 + Cr * Ar * Ar * b * b;
    const double rhs1 = a * a * (b4 - 1.0) * (b4 - 1.0);
    CHECK(lhs1 == doctest::Approx(rhs1).epsilon(1e-9));
    const double lhs2 = Cr * b4 + Cr * Ar * Ar * b4 * b * b;
    const double rhs2 = (1.0 + a) * (1.0 + a) * (b4 - 1.0) * (b4 - 1.0);
    CHECK(lhs2 == doctest::Approx(rhs2).epsilon(1e-9));
  }

  CHECK_THROWS_AS(LineEquilibrium::compute_A_C(ProblemParams(2.0, 0.25)),
                  std::domain_error);
}

TEST_CASE("density values in the three regimes") {
  const LineEquilibrium post(ProblemParams(2.0, 1.0));
  CHECK(post.density(0.0) ==
        doctest::Approx(std::sqrt(11.25) / kPi).epsilon(1e-14));
  CHECK(post.density(0.0) == doctest::Approx(1.0676438151257657).epsilon(1e-12));
  CHECK(post.density(1.5) == 0.0); // outside [-A, A]

  const LineEquilibrium sub(ProblemParams(2.0, 0.25));
  CHECK(sub.density(0.0) == doctest::Approx(4.75 / (2.0 * kPi)).epsilon(1e-14));
  CHECK(sub.density(0.0) == doctest::Approx(0.7559859796865028).epsilon(1e-12));

  const LineEquilibrium crit(ProblemParams(2.0, 1.0 / 3.0));
  CHECK(crit.density(0.0) == doctest::Approx(5.0 / (2.0 * kPi)).epsilon(1e-14));
  // Critical closed form (b^2+1)/(pi b (x^2+b^2)(x^2+b^-2)) coincides
  // with the shared subcritical formula at a = a_cr.
  oracles::Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(-20.0, 20.0);
    const double b = 2.0;
    const double closed =
        (b * b + 1.0) / (kPi * b * (x * x + b * b) * (x * x + 1.0 / (b * b)));
    CHECK(crit.density(x) == doctest::Approx(closed).epsilon(1e-13));
    CHECK(crit.density(x) >= 0.0);
  }
}

TEST_CASE("unit mass in every regime") {
  const LineEquilibrium post(ProblemParams(2.0, 1.0));
  CHECK(interval_mass(post) == doctest::Approx(1.0).epsilon(1e-10));

  const LineEquilibrium sub(ProblemParams(2.0, 0.25));
  CHECK(oracles::real_line([&](double x) { return sub.density(x); }, 1e-12) ==
        doctest::Approx(1.0).epsilon(1e-10));

  const LineEquilibrium crit(ProblemParams(2.0, 1.0 / 3.0));
  CHECK(oracles::real_line([&](double x) { return crit.density(x); }, 1e-12) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("regime continuity across the critical charge") {
  const double b = 2.0, acr = 1.0 / 3.0;
  const LineEquilibrium above(ProblemParams(b, acr + 1e-9));
  const LineEquilibrium below(ProblemParams(b, acr - 1e-9));
  for (int i = 0; i <= 100; ++i) {
    const double x = -5.0 + 10.0 * i / 100.0;
    CHECK(std::abs(above.density(x) - below.density(x)) < 1e-6);
  }
}

TEST_CASE("R function and its sign pattern") {
  const LineEquilibrium eq(ProblemParams(2.0, 1.0));
  CHECK(std::abs(eq.R(Complex(1.0, 0.0))) < 1e-12); // simple zero at A
  CHECK(eq.R(Complex(0.0, 0.0)).real() == doctest::Approx(-11.25).epsilon(1e-12));

  // Double-pole residues match the field derivative squared:
  // lim (z^2+b^2)^2 R = -a^2 b^2 and lim (z^2+b^-2)^2 R = -(1+a)^2/b^2.
  const double b = 2.0, a = 1.0, A = 1.0, C = 11.25;
  const double lim_b =
      C * (-b * b - A * A) / std::pow(-b * b + 1.0 / (b * b), 2.0);
  CHECK(lim_b == doctest::Approx(-a * a * b * b).epsilon(1e-9));
  const double lim_binv =
      C * (-1.0 / (b * b) - A * A) / std::pow(-1.0 / (b * b) + b * b, 2.0);
  CHECK(lim_binv ==
        doctest::Approx(-(1.0 + a) * (1.0 + a) / (b * b)).epsilon(1e-9));

  // supp mu_V = closure of {R < 0}: negative inside, positive outside.
  oracles::Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform(-3.0, 3.0);
    if (std::abs(std::abs(x) - A) < 1e-3)
      continue;
    const double r = eq.R(Complex(x, 0.0)).real();
    if (std::abs(x) < A)
      CHECK(r < 0.0);
    else
      CHECK(r > 0.0);
  }

  // density = (1/pi) sqrt(-R) on the support.
  for (int i = 0; i < 50; ++i) {
    const double x = rng.uniform(-0.999, 0.999);
    const double r = eq.R(Complex(x, 0.0)).real();
    CHECK(eq.density(x) == doctest::Approx(std::sqrt(-r) / kPi).epsilon(1e-12));
  }
}

TEST_CASE("density vanishes like a square root at the endpoints") {
  const LineEquilibrium eq(ProblemParams(2.0, 1.0));
  const double A = eq.A();
  const double r1 = eq.density(A - 1e-4) / std::sqrt(1e-4);
  const double r2 = eq.density(A - 1e-6) / std::sqrt(1e-6);
  CHECK(std::abs(r1 - r2) / std::abs(r2) < 0.05);
}

TEST_CASE("stieltjes transform") {
  const LineEquilibrium eq(ProblemParams(2.0, 1.0));

  // Total mass: z F(z) -> 1.
  const Complex far = eq.stieltjes(Complex(0.0, 1e4));
  CHECK(std::abs(Complex(0.0, 1e4) * far - 1.0) < 1e-6);

  // Against direct quadrature at z = 2i (graded toward the endpoints).
  const Complex z(0.0, 2.0);
  const double A = eq.A();
  const auto component = [&](bool real_part) {
    return [&eq, z, real_part](double x) {
      const Complex v = eq.density(x) / (z - x);
      return real_part ? v.real() : v.imag();
    };
  };
  const Complex quad(
      oracles::graded_toward_left(component(true), -A, 0.0, 1e-12) +
          oracles::graded_toward_right(component(true), 0.0, A, 1e-12),
      oracles::graded_toward_left(component(false), -A, 0.0, 1e-12) +
          oracles::graded_toward_right(component(false), 0.0, A, 1e-12));
  CHECK(std::abs(eq.stieltjes(z) - quad) < 1e-8);

  // Real on the real axis beyond the support.
  CHECK(std::abs(eq.stieltjes(Complex(1.7, 0.0)).imag()) < 1e-13);
  CHECK_THROWS_AS(eq.stieltjes(Complex(0.5, 0.0)), std::domain_error);

  // Subcritical closed form against quadrature.
  const LineEquilibrium sub(ProblemParams(2.0, 0.25));
  const auto sub_component = [&](bool real_part) {
    return [&sub, z, real_part](double x) {
      const Complex v = sub.density(x) / (z - x);
      return real_part ? v.real() : v.imag();
    };
  };
  const Complex sub_quad(oracles::real_line(sub_component(true), 1e-12),
                         oracles::real_line(sub_component(false), 1e-12));
  CHECK(std::abs(sub.stieltjes(z) - sub_quad) < 1e-8);
}

TEST_CASE("cauchy balayage onto the line") {
  CHECK(balayage_point_to_line(1.0, 0.0) ==
        doctest::Approx(1.0 / kPi).epsilon(1e-14));
  CHECK(oracles::real_line(
            [](double x) { return balayage_point_to_line(1.0, x); }, 1e-12) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(balayage_point_to_line(-1.0, 0.0), std::domain_error);

  // Subcritical equilibrium measure as a combination of balayages.
  const LineEquilibrium sub(ProblemParams(2.0, 0.25));
  oracles::Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(-15.0, 15.0);
    const double combo = 1.25 * balayage_point_to_line(0.5, x) -
                         0.25 * balayage_point_to_line(2.0, x);
    CHECK(combo == doctest::Approx(sub.density(x)).epsilon(1e-12));
  }
}

TEST_CASE("balayage of a point mass onto an interval") {
  CHECK(balayage_point_to_interval(1.0, 1.0, 0.0) ==
        doctest::Approx(std::sqrt(2.0) / kPi).epsilon(1e-14));
  CHECK_THROWS_AS(balayage_point_to_interval(1.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(balayage_point_to_interval(-1.0, 1.0, 0.0), std::domain_error);

  // Unit mass.  Oracle in angle coordinates, where the balayage density
  // times the substitution Jacobian has the smooth closed form
  // c sqrt(A^2+c^2) / (pi (A^2 sin^2 th + c^2)).
  const double c = 1.0, A = 1.0;
  const auto theta_density = [&](double th) {
    const double s = A * std::sin(th);
    return c * std::sqrt(A * A + c * c) / (kPi * (s * s + c * c));
  };
  const double mass =
      oracles::adaptive_simpson(theta_density, -kPi / 2, kPi / 2, 1e-13);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));

  // Defining property: U^{bal} - U^{delta_ic} constant on [-A, A].
  double lo = 1e300, hi = -1e300;
  for (int k = 0; k < 50; ++k) {
    const double x = -0.95 + 1.9 * k / 49.0;
    const double ts = std::asin(x / A);
    const auto g = [&](double th) {
      return -std::log(std::abs(x - A * std::sin(th))) * theta_density(th);
    };
    const double u = oracles::graded_interior(g, -kPi / 2, kPi / 2, ts, 1e-11);
    const double u_point =
        -std::log(std::abs(Complex(x, 0.0) - Complex(0.0, c)));
    const double diff = u - u_point;
    lo = std::min(lo, diff);
    hi = std::max(hi, diff);
  }
  CHECK(hi - lo < 1e-7);
}

TEST_CASE("frostman condition on the real line") {
  // Postcritical: U^{mu_V} + V constant on [-A, A], larger outside.
  const ProblemParams params(2.0, 1.0);
  const LineEquilibrium eq(params);
  const MeasureDensity muV = MeasureDensity::mu_V(params);
  const double A = eq.A();
  double lo = 1e300, hi = -1e300;
  for (int k = 0; k < 200; ++k) {
    const double x = -0.98 * A + 1.96 * A * k / 199.0;
    const double val = log_potential(muV, PlanePoint(Complex(x, 0.0)), 1e-10) +
                       eq.external_field(x);
    lo = std::min(lo, val);
    hi = std::max(hi, val);
  }
  CHECK(hi - lo < 1e-7);
  const double ell = 0.5 * (hi + lo);
  for (double x : {1.05, 1.2, 1.8, 3.0, 8.0}) {
    const double val = log_potential(muV, PlanePoint(Complex(x, 0.0)), 1e-10) +
                       eq.external_field(x);
    CHECK(val >= ell - 1e-9);
  }

  // Subcritical: the constant is 0 (balayage potentials telescope).
  const ProblemParams sub_params(2.0, 0.25);
  const LineEquilibrium sub(sub_params);
  const MeasureDensity sub_muV = MeasureDensity::mu_V(sub_params);
  for (double x : {0.0, 0.4, 1.3, 3.7}) {
    const double val =
        log_potential(sub_muV, PlanePoint(Complex(x, 0.0)), 1e-10) +
        sub.external_field(x);
    CHECK(std::abs(val) < 1e-7);
  }
}
