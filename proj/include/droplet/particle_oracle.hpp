#pragma once

#include "droplet/droplet.hpp"
#include "droplet/geometry.hpp"
#include "droplet/params.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace droplet {

struct OracleOptions {
  int max_iters = 4000;
  int restarts = 1;
  // Converged when max_i |tangent gradient_i| <= grad_tol * N.
  double grad_tol = 1e-7;
  // Initial step 1/N, Armijo backtracking with constant 1e-4.
  double armijo = 1e-4;
  bool droplet_seeded_init = true;
};

struct Configuration {
  std::vector<SpherePoint> points;
  double energy = 0.0;
  int iterations = 0;
  bool converged = false;
  std::uint64_t seed = 0;
};

// Discrete weighted energy sum_{i<j} -log||x_i-x_j|| + N sum_i Q(x_i)
// with Q the two-charge field; params == nullopt means Q == 0.
// Coincident points raise a domain error (the energy is +infinity).
double discrete_energy(const std::vector<SpherePoint>& points,
                       const std::optional<ProblemParams>& params);

// Euclidean gradient of the discrete energy per point.
std::vector<std::array<double, 3>>
energy_gradient(const std::vector<SpherePoint>& points,
                const std::optional<ProblemParams>& params);

// Projected gradient descent with backtracking line search and multi-start
// over options.restarts seeds; returns the best configuration found.
Configuration minimize(int N, const std::optional<ProblemParams>& params,
                       std::uint64_t seed, const OracleOptions& options = {});

struct DensityCheckResult {
  enum class Status { ok, inconclusive, unsupported } status =
      Status::inconclusive;
  double max_relative_deviation = 0.0;
  int cells = 0;
  int min_cell_count = 0;
  int points_used = 0;
};

// Bins configuration points into equal-area cells well inside the droplet
// (margin 0.1 geodesic off the boundary) and reports the worst relative
// deviation of the per-cell counts from their mean.  droplet == nullptr
// checks uniformity over the whole sphere.
DensityCheckResult empirical_density_check(const Configuration& config,
                                           const Droplet* droplet, int n_cells,
                                           double margin = 0.1);

// Fraction of points inside the droplet with a geodesic slack off the
// boundary (slack > 0 widens the accepted region).
double droplet_containment_fraction(const Configuration& config,
                                    const Droplet& droplet, double slack);

// Fraction of points strictly inside either predicted cap, shrunk by the
// given geodesic slack (subcritical oracle check).
double cap_intrusion_fraction(const Configuration& config, const Droplet& droplet,
                              double slack);

} // namespace droplet
