#include "droplet/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace droplet {

namespace {

constexpr double kPi = std::numbers::pi;

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n with the usual Chebyshev-like initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15)
        break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

// Gauss-Kronrod (7,15) node/weight pair, abscissae for the nonnegative half.
constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kGK15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GKResult {
  double value;
  double error;
  double resabs; // integral of |f|, for the rounding-noise floor
};

GKResult gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double resk = 0.0, resg = 0.0, resabs = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double x = kGK15Nodes[i] * h;
    if (i == 7) {
      const double fv = f(c);
      resk += kGK15Weights[i] * fv;
      resg += kG7Weights[3] * fv;
      resabs += kGK15Weights[i] * std::abs(fv);
    } else {
      const double f1 = f(c - x), f2 = f(c + x);
      resk += kGK15Weights[i] * (f1 + f2);
      resabs += kGK15Weights[i] * (std::abs(f1) + std::abs(f2));
      if (i % 2 == 1)
        resg += kG7Weights[i / 2] * (f1 + f2);
    }
  }
  return {resk * h, std::abs(resk - resg) * h, resabs * std::abs(h)};
}

double adaptive_impl(const Integrand& f, double a, double b, double tol,
                     int depth) {
  const GKResult r = gk15(f, a, b);
  // Stop when the local estimate is within budget or at rounding level.
  if (r.error <= tol || r.error <= 5e-16 * r.resabs || depth <= 0)
    return r.value;
  const double c = 0.5 * (a + b);
  return adaptive_impl(f, a, c, 0.5 * tol, depth - 1) +
         adaptive_impl(f, c, b, 0.5 * tol, depth - 1);
}

} // namespace

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

double integrate_gauss(const Integrand& f, double a, double b, int n) {
  const GaussRule& rule = gauss_legendre(n);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    sum += rule.weights[i] * f(c + h * rule.nodes[i]);
  return sum * h;
}

double integrate_adaptive(const Integrand& f, double a, double b,
                          double abs_tol, int max_depth) {
  if (a == b)
    return 0.0;
  return adaptive_impl(f, a, b, abs_tol, max_depth);
}

double integrate_real_line(const Integrand& f, double abs_tol) {
  const auto g = [&f](double th) {
    const double c = std::cos(th);
    const double x = std::tan(th);
    return f(x) / (c * c);
  };
  // Split at 0 so the endpoint behavior of each half is monotone.
  const double eps = 1e-13; // stay off the poles of tan
  return integrate_adaptive(g, -kPi / 2 + eps, 0.0, 0.5 * abs_tol) +
         integrate_adaptive(g, 0.0, kPi / 2 - eps, 0.5 * abs_tol);
}

namespace {

// Integrate over [a, b] assuming an integrable singularity at the left
// endpoint a: geometric panels shrinking toward a.
double graded_left(const Integrand& f, double a, double b, double tol) {
  const double len = b - a;
  if (len <= 0.0)
    return 0.0;
  double sum = 0.0;
  double hi = len;
  // Panels [len*2^-(k+1), len*2^-k]; the leftover tail of length
  // len*2^-K contributes O(tail * log(tail)) which is far below tol
  // for K ~ 50 at any realistic scale.
  for (int k = 0; k < 52 && hi > 1e-300; ++k) {
    const double lo = 0.5 * hi;
    sum += integrate_gauss([&](double s) { return f(a + s); }, lo, hi, 12);
    hi = lo;
    if (hi < tol * 1e-3 && hi < 1e-12 * len)
      break;
  }
  return sum;
}

} // namespace

double integrate_with_singularities(const Integrand& f, double a, double b,
                                    const std::vector<double>& singular_points,
                                    double abs_tol) {
  std::vector<double> cuts;
  cuts.push_back(a);
  cuts.push_back(b);
  for (double s : singular_points)
    if (s > a && s < b)
      cuts.push_back(s);
  std::sort(cuts.begin(), cuts.end());

  auto is_singular = [&](double x) {
    for (double s : singular_points)
      if (std::abs(x - s) <= 1e-300 || x == s)
        return true;
    return false;
  };

  double total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (hi <= lo)
      continue;
    const bool sing_lo = is_singular(lo);
    const bool sing_hi = is_singular(hi);
    if (sing_lo && sing_hi) {
      const double mid = 0.5 * (lo + hi);
      total += graded_left(f, lo, mid, abs_tol);
      total += graded_left([&](double x) { return f(hi + lo - x); }, lo, mid,
                           abs_tol); // mirrored right panel
    } else if (sing_lo) {
      total += graded_left(f, lo, hi, abs_tol);
    } else if (sing_hi) {
      total += graded_left([&](double x) { return f(hi + lo - x); }, lo, hi,
                           abs_tol);
    } else {
      total += integrate_adaptive(f, lo, hi, abs_tol);
    }
  }
  return total;
}

double integrate_sqrt_interval(const Integrand& f, double A, double abs_tol) {
  if (!(A > 0.0))
    throw std::domain_error("integrate_sqrt_interval: A must be positive");
  const auto g = [&](double th) {
    double x = A * std::sin(th);
    // sin can round to +-1 for |th| slightly below pi/2; keep the
    // evaluation strictly inside the open interval.
    if (std::abs(x) >= A)
      x = std::copysign(A * (1.0 - 1e-16), x);
    return f(x) * A * std::cos(th);
  };
  return integrate_adaptive(g, -kPi / 2, kPi / 2, abs_tol);
}

double integrate_periodic(const Integrand& f, int n) {
  double sum = 0.0;
  const double h = 2.0 * kPi / n;
  for (int j = 0; j < n; ++j)
    sum += f(j * h);
  return sum * h;
}

} // namespace droplet
