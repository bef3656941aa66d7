#include "droplet/particle_oracle.hpp"

#include "droplet/plane_quadrature.hpp"
#include "droplet/quadrature.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace droplet {

namespace {

constexpr double kPi = std::numbers::pi;

int worker_count() {
  if (const char* env = std::getenv("DROPLET_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1)
      return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct Charges {
  bool active = false;
  double a = 0.0;
  SpherePoint p1, p2;
};

Charges make_charges(const std::optional<ProblemParams>& params) {
  Charges c;
  if (params) {
    c.active = true;
    c.a = params->a();
    c.p1 = unproject(PlanePoint(Complex(0.0, params->b())));
    c.p2 = unproject(PlanePoint(Complex(0.0, -params->b())));
  }
  return c;
}

double uniform01(std::mt19937_64& rng) {
  return (rng() >> 11) * 0x1.0p-53;
}

SpherePoint random_sphere_point(std::mt19937_64& rng) {
  const double z = 2.0 * uniform01(rng) - 1.0;
  const double phi = 2.0 * kPi * uniform01(rng);
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return SpherePoint(rho * std::cos(phi), rho * std::sin(phi), z);
}

// Pairwise energy with fixed-size blocking so the summation order (and
// thus the result bit pattern) is independent of the worker count.
constexpr int kBlock = 256;

double pair_energy(const std::vector<SpherePoint>& pts) {
  const int N = static_cast<int>(pts.size());
  const int n_blocks = (N + kBlock - 1) / kBlock;
  std::vector<double> partial(n_blocks, 0.0);

  const auto run_block = [&](int bi) {
    const int lo = bi * kBlock, hi = std::min(N, lo + kBlock);
    double sum = 0.0;
    for (int i = lo; i < hi; ++i) {
      const double xi = pts[i].x1, yi = pts[i].x2, zi = pts[i].x3;
      for (int j = i + 1; j < N; ++j) {
        const double dx = xi - pts[j].x1, dy = yi - pts[j].x2, dz = zi - pts[j].x3;
        const double d2 = dx * dx + dy * dy + dz * dz;
        if (d2 < 1e-28)
          throw std::domain_error("discrete_energy: coincident points");
        sum += -0.5 * std::log(d2);
      }
    }
    partial[bi] = sum;
  };

  const int workers = std::min(worker_count(), n_blocks);
  if (workers <= 1) {
    for (int bi = 0; bi < n_blocks; ++bi)
      run_block(bi);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&]() {
        int bi;
        while ((bi = next.fetch_add(1)) < n_blocks)
          run_block(bi);
      });
    for (auto& th : pool)
      th.join();
  }

  double total = 0.0;
  for (double s : partial)
    total += s;
  return total;
}

} // namespace

double discrete_energy(const std::vector<SpherePoint>& points,
                       const std::optional<ProblemParams>& params) {
  if (points.size() < 2)
    throw std::invalid_argument("discrete_energy: need at least two points");
  double e = pair_energy(points);
  const Charges c = make_charges(params);
  if (c.active) {
    const double N = static_cast<double>(points.size());
    double field = 0.0;
    for (const SpherePoint& x : points) {
      const double d1 = euclidean_distance(x, c.p1);
      const double d2 = euclidean_distance(x, c.p2);
      if (d1 < 1e-14 || d2 < 1e-14)
        throw std::domain_error("discrete_energy: point coincides with a charge");
      field += c.a * (-std::log(d1) - std::log(d2));
    }
    e += N * field;
  }
  return e;
}

std::vector<std::array<double, 3>>
energy_gradient(const std::vector<SpherePoint>& points,
                const std::optional<ProblemParams>& params) {
  const int N = static_cast<int>(points.size());
  std::vector<std::array<double, 3>> grad(N, {0.0, 0.0, 0.0});
  const Charges c = make_charges(params);

  const auto run_point = [&](int i) {
    double gx = 0.0, gy = 0.0, gz = 0.0;
    const double xi = points[i].x1, yi = points[i].x2, zi = points[i].x3;
    for (int j = 0; j < N; ++j) {
      if (j == i)
        continue;
      const double dx = xi - points[j].x1, dy = yi - points[j].x2,
                   dz = zi - points[j].x3;
      const double inv = 1.0 / (dx * dx + dy * dy + dz * dz);
      gx -= dx * inv;
      gy -= dy * inv;
      gz -= dz * inv;
    }
    if (c.active) {
      const double scale = c.a * static_cast<double>(N);
      const double d1x = xi - c.p1.x1, d1y = yi - c.p1.x2, d1z = zi - c.p1.x3;
      const double i1 = scale / (d1x * d1x + d1y * d1y + d1z * d1z);
      const double d2x = xi - c.p2.x1, d2y = yi - c.p2.x2, d2z = zi - c.p2.x3;
      const double i2 = scale / (d2x * d2x + d2y * d2y + d2z * d2z);
      gx -= d1x * i1 + d2x * i2;
      gy -= d1y * i1 + d2y * i2;
      gz -= d1z * i1 + d2z * i2;
    }
    grad[i] = {gx, gy, gz};
  };

  const int workers = std::min(worker_count(), N);
  if (workers <= 1) {
    for (int i = 0; i < N; ++i)
      run_point(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&]() {
        int i;
        while ((i = next.fetch_add(1)) < N)
          run_point(i);
      });
    for (auto& th : pool)
      th.join();
  }
  return grad;
}

namespace {

Configuration run_single(int N, const std::optional<ProblemParams>& params,
                         std::uint64_t seed, const OracleOptions& opt) {
  std::mt19937_64 rng(seed);
  std::optional<Droplet> droplet;
  if (params && opt.droplet_seeded_init)
    droplet = Droplet::build(*params);

  std::vector<SpherePoint> pts;
  pts.reserve(static_cast<size_t>(N));
  while ((int)pts.size() < N) {
    // Predicted-droplet seeding with a 10% uniform-sphere component.
    if (droplet && uniform01(rng) > 0.1) {
      SpherePoint x = random_sphere_point(rng);
      int guard = 0;
      while (!droplet->contains(project(x)) && ++guard < 4000)
        x = random_sphere_point(rng);
      pts.push_back(x);
    } else {
      pts.push_back(random_sphere_point(rng));
    }
  }

  double energy = discrete_energy(pts, params);
  double step = 1.0 / N;
  const double step_cap = 64.0 / N;
  bool converged = false;
  int iter = 0;

  std::vector<SpherePoint> trial(pts.size());
  for (; iter < opt.max_iters; ++iter) {
    const auto grad = energy_gradient(pts, params);
    double grad_sq = 0.0, grad_max = 0.0;
    std::vector<std::array<double, 3>> tangent(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
      const auto& g = grad[i];
      const SpherePoint& x = pts[i];
      const double gdot = g[0] * x.x1 + g[1] * x.x2 + g[2] * x.x3;
      tangent[i] = {g[0] - gdot * x.x1, g[1] - gdot * x.x2, g[2] - gdot * x.x3};
      const double t2 = tangent[i][0] * tangent[i][0] +
                        tangent[i][1] * tangent[i][1] +
                        tangent[i][2] * tangent[i][2];
      grad_sq += t2;
      grad_max = std::max(grad_max, std::sqrt(t2));
    }
    if (grad_max <= opt.grad_tol * N) {
      converged = true;
      break;
    }

    bool accepted = false;
    for (int bt = 0; bt < 45; ++bt) {
      for (size_t i = 0; i < pts.size(); ++i) {
        const SpherePoint& x = pts[i];
        const double nx = x.x1 - step * tangent[i][0];
        const double ny = x.x2 - step * tangent[i][1];
        const double nz = x.x3 - step * tangent[i][2];
        const double nn = std::sqrt(nx * nx + ny * ny + nz * nz);
        trial[i].x1 = nx / nn;
        trial[i].x2 = ny / nn;
        trial[i].x3 = nz / nn;
      }
      const double trial_energy = discrete_energy(trial, params);
      if (trial_energy <= energy - opt.armijo * step * grad_sq) {
        pts.swap(trial);
        energy = trial_energy;
        step = std::min(step * 1.5, step_cap);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted)
      break; // line search exhausted at machine precision
  }

  Configuration cfg;
  cfg.points = std::move(pts);
  cfg.energy = energy;
  cfg.iterations = iter;
  cfg.converged = converged;
  cfg.seed = seed;
  return cfg;
}

} // namespace

Configuration minimize(int N, const std::optional<ProblemParams>& params,
                       std::uint64_t seed, const OracleOptions& options) {
  if (N < 2)
    throw std::invalid_argument("minimize: need N >= 2");
  Configuration best;
  bool have = false;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    Configuration cfg = run_single(N, params, seed + static_cast<std::uint64_t>(r),
                                   options);
    if (!have || cfg.energy < best.energy) {
      best = std::move(cfg);
      have = true;
    }
  }
  return best;
}

namespace {

std::vector<SpherePoint> droplet_boundary_sphere(const Droplet& droplet, int n) {
  std::vector<SpherePoint> out;
  for (const auto& s : droplet.boundary_samples(n))
    out.push_back(s.x);
  return out;
}

double min_geodesic(const SpherePoint& x, const std::vector<SpherePoint>& set) {
  double d = kPi;
  for (const auto& s : set)
    d = std::min(d, geodesic_angle(x, s));
  return d;
}

} // namespace

DensityCheckResult empirical_density_check(const Configuration& config,
                                           const Droplet* droplet, int n_cells,
                                           double margin) {
  DensityCheckResult res;
  res.cells = n_cells;
  if (n_cells < 2)
    throw std::invalid_argument("empirical_density_check: need n_cells >= 2");

  std::vector<int> counts(n_cells, 0);

  if (droplet == nullptr) {
    // Whole sphere: z-bands of equal area.
    for (const auto& x : config.points) {
      int k = static_cast<int>((1.0 - x.x3) / 2.0 * n_cells);
      k = std::clamp(k, 0, n_cells - 1);
      counts[k]++;
    }
    res.points_used = static_cast<int>(config.points.size());
  } else if (droplet->is_ellipse()) {
    const EllipseGeometry& g = droplet->ellipse();
    const auto boundary = droplet_boundary_sphere(*droplet, 512);

    // Margin-shrunk region in chart coordinates: u <= u_max(theta).
    const int m_theta = 720;
    std::vector<double> u_max(m_theta + 1);
    for (int k = 0; k <= m_theta; ++k) {
      const double theta = 2.0 * kPi * k / m_theta;
      double lo = 0.0, hi = 1.0;
      const auto far_enough = [&](double u) {
        const SpherePoint x = unproject(PlanePoint(u * g.boundary_point(theta)));
        return min_geodesic(x, boundary) >= margin;
      };
      if (!far_enough(0.0)) {
        u_max[k] = 0.0;
        continue;
      }
      for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        (far_enough(mid) ? lo : hi) = mid;
      }
      u_max[k] = lo;
    }

    // lambda-area per theta wedge of the shrunk region.
    std::vector<double> wedge(m_theta);
    for (int k = 0; k < m_theta; ++k) {
      const double theta = 2.0 * kPi * (k + 0.5) / m_theta;
      const double um = 0.5 * (u_max[k] + u_max[k + 1]);
      wedge[k] = integrate_gauss(
          [&](double u) {
            const Complex w(u * g.p * std::cos(theta), u * g.q * std::sin(theta));
            return pushforward_density_weight(w) * u * g.p * g.q;
          },
          0.0, um, 16) * (2.0 * kPi / m_theta);
    }
    std::vector<double> cum(m_theta + 1, 0.0);
    for (int k = 0; k < m_theta; ++k)
      cum[k + 1] = cum[k] + wedge[k];
    const double total = cum[m_theta];

    const auto cell_of = [&](double theta) {
      // Invert the cumulative wedge area at this angle.
      const double pos = theta / (2.0 * kPi) * m_theta;
      const int k = std::clamp(static_cast<int>(pos), 0, m_theta - 1);
      const double frac = pos - k;
      const double area = cum[k] + frac * wedge[k];
      int cell = static_cast<int>(area / total * n_cells);
      return std::clamp(cell, 0, n_cells - 1);
    };

    int used = 0;
    for (const auto& x : config.points) {
      const PlanePoint zp = project(x);
      if (zp.is_infinity() || !droplet->contains(zp))
        continue;
      const Complex z = zp.value();
      double theta = std::atan2(z.imag() / g.q, z.real() / g.p);
      if (theta < 0.0)
        theta += 2.0 * kPi;
      const double u = std::sqrt(g.form(z));
      const double pos = theta / (2.0 * kPi) * m_theta;
      const int k = std::clamp(static_cast<int>(pos), 0, m_theta - 1);
      const double um = u_max[k] + (pos - k) * (u_max[k + 1] - u_max[k]);
      if (u > um)
        continue;
      counts[cell_of(theta)]++;
      used++;
    }
    res.points_used = used;
  } else {
    res.status = DensityCheckResult::Status::unsupported;
    return res;
  }

  int min_count = counts[0];
  double mean = 0.0;
  for (int c : counts) {
    mean += c;
    min_count = std::min(min_count, c);
  }
  mean /= n_cells;
  res.min_cell_count = min_count;
  if (min_count < 10 || mean <= 0.0) {
    res.status = DensityCheckResult::Status::inconclusive;
    return res;
  }
  double worst = 0.0;
  for (int c : counts)
    worst = std::max(worst, std::abs(c - mean) / mean);
  res.max_relative_deviation = worst;
  res.status = DensityCheckResult::Status::ok;
  return res;
}

double droplet_containment_fraction(const Configuration& config,
                                    const Droplet& droplet, double slack) {
  const auto boundary = droplet_boundary_sphere(droplet, 1024);
  int inside = 0;
  for (const auto& x : config.points) {
    if (droplet.contains(project(x)) || min_geodesic(x, boundary) <= slack)
      inside++;
  }
  return static_cast<double>(inside) / config.points.size();
}

double cap_intrusion_fraction(const Configuration& config, const Droplet& droplet,
                              double slack) {
  const auto& caps = droplet.caps();
  int intruding = 0;
  for (const auto& x : config.points) {
    const bool in1 =
        geodesic_angle(x, caps.cap1.center) < caps.cap1.geodesic_radius - slack;
    const bool in2 =
        geodesic_angle(x, caps.cap2.center) < caps.cap2.geodesic_radius - slack;
    if (in1 || in2)
      intruding++;
  }
  return static_cast<double>(intruding) / config.points.size();
}

} // namespace droplet
