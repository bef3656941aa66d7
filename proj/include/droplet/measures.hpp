#pragma once

#include "droplet/geometry.hpp"
#include "droplet/params.hpp"
#include "droplet/plane_quadrature.hpp"

#include <functional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace droplet {

/// Thrown when a logarithmic potential is evaluated exactly at an atom.
struct EvaluationAtAtom : std::domain_error {
  using std::domain_error::domain_error;
};

/// A generic evaluable measure: 1D density on an interval or the full
/// line, 2D density on an elliptical region, a finite set of sphere
/// atoms, or a density on the great circle phi^{-1}(R u {inf})
/// parametrized by the planar coordinate s.
class MeasureDensity {
public:
  struct Line {
    bool full_line = false;
    double lo = 0.0, hi = 0.0;
    std::function<double(double)> density;
  };
  struct Planar {
    EllipseRegion region;
    PlaneDensity density;
  };
  struct Atoms {
    std::vector<std::pair<SpherePoint, double>> atoms;
  };
  struct GreatCircle {
    // density with respect to the planar parameter s of phi^{-1}(s)
    bool full_line = false;
    double lo = 0.0, hi = 0.0;
    std::function<double(double)> density_ds;
  };

  enum class Kind { line, planar, atoms, boundary };

  MeasureDensity(Line payload, double total_mass);
  MeasureDensity(Planar payload, double total_mass);
  MeasureDensity(Atoms payload, double total_mass);
  MeasureDensity(GreatCircle payload, double total_mass);

  Kind kind() const { return kind_; }
  double total_mass() const { return total_mass_; }

  const Line& line() const { return std::get<Line>(payload_); }
  const Planar& planar() const { return std::get<Planar>(payload_); }
  const Atoms& atoms() const { return std::get<Atoms>(payload_); }
  const GreatCircle& great_circle() const { return std::get<GreatCircle>(payload_); }

  // Mass recomputed by quadrature; must match total_mass() within 1e-8.
  double mass_by_quadrature(double abs_tol = 1e-10) const;

  // int log(1+|w|^2) dmu(w) over the planar image of the measure (atoms
  // are projected).  Needed by the sphere-plane potential transport.
  double planar_log_moment(double abs_tol = 1e-10) const;

  // Arclength density on the great circle at parameter s (boundary kind).
  double great_circle_arclength_density(double s) const;

  // --- the measures in play ---
  static MeasureDensity mu_V(const ProblemParams& params);
  static MeasureDensity mu_Omega(const ProblemParams& params);
  // Pushforward of lambda_D for a postcritical droplet (mass t).
  static MeasureDensity lambda_D_pushforward(const ProblemParams& params);
  // Pushforward of lambda restricted to one cap (mass = cap area).
  static MeasureDensity cap_pushforward(const SphericalCap& cap);
  static MeasureDensity sigma(const ProblemParams& params);
  // sigma* = (1/2a) (phi^{-1})_* mu_V, the mother body (mass 1/2a).
  static MeasureDensity mother_body(const ProblemParams& params);
  static MeasureDensity omega_t(double b, double t);

private:
  Kind kind_;
  double total_mass_;
  std::variant<Line, Planar, Atoms, GreatCircle> payload_;
};

} // namespace droplet
