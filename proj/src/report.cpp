#include "droplet/report.hpp"

#include <json.hpp>

namespace droplet {

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["check_name"] = check_name;
  j["grid"] = grid;
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [k, v] : constants)
    c[k] = v;
  j["constants"] = c;
  j["max_equality_residual"] = max_equality_residual;
  j["worst_inequality_violation"] = worst_inequality_violation;
  j["tolerance"] = tolerance;
  j["passed"] = passed;
  j["skipped"] = skipped;
  return j.dump(2);
}

} // namespace droplet
