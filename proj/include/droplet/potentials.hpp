#pragma once

#include "droplet/droplet.hpp"
#include "droplet/measures.hpp"
#include "droplet/params.hpp"
#include "droplet/report.hpp"

namespace droplet {

// U^lambda on the sphere is constant; this is that constant, 1/2 - log 2.
double lebesgue_potential_constant();

// int_{B(p,r)} log 1/||x-y|| dlambda(y) for x at geodesic angle theta from
// the cap center.  The azimuthal integral is evaluated in closed form, the
// remaining 1D integral numerically; works for x inside or outside the cap.
double cap_log_potential(double cap_radius, double theta, double abs_tol = 1e-12);

// Constant c(r) in the exterior mean-value identity
//   int_B log 1/||x-y|| dlambda = lambda(B) log 1/||x-p|| + c(r).
double cap_mean_value_constant(double r);

// Planar logarithmic potential int log 1/|z-s| dmu(s).  Throws
// EvaluationAtAtom when z hits an atom of the measure.
double log_potential(const MeasureDensity& mu, const PlanePoint& z,
                     double abs_tol = 1e-9);

enum class SpherePotentialPath { transport, direct };

// Spherical logarithmic potential of a measure, through the planar
// transport rule or by direct quadrature against the chordal kernel.
double sphere_log_potential(const MeasureDensity& mu, const SpherePoint& x,
                            SpherePotentialPath path = SpherePotentialPath::transport,
                            double abs_tol = 1e-9);

// U^{lambda_D}(x) in any regime: 2D chart quadrature for the ellipse
// droplet, cap potentials against l0 otherwise.
double lambda_D_potential(const Droplet& droplet, const SpherePoint& x,
                          double abs_tol = 1e-9);

// sigma* = (1/2a)(phi^{-1})_* mu_V, measure on the equidistant great circle.
MeasureDensity build_mother_body(const ProblemParams& params);

VerificationReport verify_frostman_sphere(const ProblemParams& params,
                                          int grid_n = 400, double tol = 1e-6);
VerificationReport verify_mother_body(const ProblemParams& params,
                                      int grid_n = 400, double tol = 1e-6);
VerificationReport verify_quadrature_domain(const ProblemParams& params,
                                            double tol = 1e-6,
                                            double subharmonic_slack = 1e-8);
VerificationReport verify_stieltjes_identities(const ProblemParams& params,
                                               int n_points = 50,
                                               double tol = 1e-6);

// Numerical lambda-area of the droplet preimage; equals 1/(1+2a).
double droplet_normalized_area(const ProblemParams& params, double abs_tol = 1e-8);
VerificationReport verify_volume_law(const ProblemParams& params, double tol = 1e-6);

// Continuum weighted energy I_Q[mu_Q] (postcritical regime).
double weighted_equilibrium_energy(const ProblemParams& params);

} // namespace droplet
