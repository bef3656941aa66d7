#pragma once

#include "droplet/droplet.hpp"
#include "droplet/measures.hpp"
#include "droplet/params.hpp"
#include "droplet/report.hpp"

#include <utility>
#include <vector>

namespace droplet {

// Support endpoint and amplitude of mu_{V(t)}; t must lie in (0, t_cr).
double A_of_t(double b, double t);
double C_of_t(double b, double t);

// Density of omega_t = d/dt (t mu_{V(t)}) on (-A(t), A(t)).
double omega_t_density(double b, double t, double x);

/// rho_t = d/dt (t mu_{Omega(t)}), the balayage of (delta_{ib}+delta_{-ib})/2
/// onto Omega(t).  Built by a Nystrom solve of the first-kind boundary
/// integral equation U^{rho_t} = -1/2 log|z^2+b^2| + c on the boundary,
/// with unit-mass normalization; trapezoid nodes on the smooth curve and
/// the periodic log-kernel quadrature handling the diagonal singularity.
class BoundaryMeasure {
public:
  static BoundaryMeasure build(double b, double t, int n_nodes = 256);

  double t() const { return t_; }
  double b() const { return b_; }
  const EllipseGeometry& curve() const { return curve_; }
  int n_nodes() const { return static_cast<int>(theta_.size()); }
  double node_theta(int j) const { return theta_[j]; }
  Complex node_point(int j) const { return points_[j]; }
  // density with respect to arclength at node j
  double density_at(int j) const { return arclength_density_[j]; }
  double mass() const;
  // single-layer potential; accurate away from the boundary curve
  double potential(Complex z) const;
  // interior constant c'(t) from the bordered solve
  double interior_constant() const { return constant_; }

private:
  double b_ = 0.0;
  double t_ = 0.0;
  EllipseGeometry curve_;
  std::vector<double> theta_;
  std::vector<Complex> points_;
  std::vector<double> node_weight_;       // phi_j * h, the quadrature mass
  std::vector<double> arclength_density_; // phi_j / |z'(theta_j)|
  double constant_ = 0.0;
};

// Co-area form of the rho_t density (normal velocity of the growing
// boundary divided by pi(1+|z|^2)^2), by central differences in t.
double rho_t_coarea_density(double b, double t, double theta, double dt = 1e-6);

// (int_0^t U^{rho_s}(z) ds, int_0^t U^{omega_s}(z) ds); each reconstructs
// t U^{mu_Omega(t)}(z) and t U^{mu_V(t)}(z) respectively.
std::pair<double, double> reconstruct_potentials(double b, double t, Complex z,
                                                 int n_steps = 64);

// Direct values (t U^{mu_Omega(t)}(z), t U^{mu_V(t)}(z)) by quadrature.
std::pair<double, double> direct_t_potentials(double b, double t, Complex z,
                                              double abs_tol = 1e-9);

VerificationReport verify_growth_inequalities(double b, double t, int grid_n = 400,
                                              double tol = 1e-6);

/// Increasing family of droplets Omega(t) over a t-grid.
struct GrowthFamily {
  double b = 0.0;
  std::vector<double> t_grid;
  std::vector<Droplet> droplets;

  static GrowthFamily build(double b, const std::vector<double>& t_grid);

  // Every boundary sample of Omega(t_i) lies in Omega(t_j) for i < j.
  bool nested(int n_boundary_samples = 64) const;
  // lambda-mass of Omega(t_i), which must equal t_i.
  double mass_at(size_t i, double abs_tol = 1e-9) const;
};

} // namespace droplet
