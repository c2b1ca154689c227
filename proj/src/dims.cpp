#include "gradflow/dims.hpp"

#include <algorithm>
#include <stdexcept>

#include "gradflow/error.hpp"

namespace gradflow {

namespace {

void require_consistent(const FunctionProfile& profile) {
  const auto r = check_profile_consistency(profile);
  if (!r.ok()) {
    std::string msg;
    for (const auto& v : r.violations) msg += (msg.empty() ? "" : "; ") + v;
    throw Error(ErrorCode::InconsistentProfile, msg);
  }
}

void require_morse_flow_profile(const FunctionProfile& profile) {
  if (!profile.is_morse()) throw Error(ErrorCode::NonMorseProfile, "all labels must be A1");
  require_consistent(profile);
}

}  // namespace

std::string_view to_string(HomotopyType t) {
  switch (t) {
    case HomotopyType::Point: return "Point";
    case HomotopyType::Torus2: return "Torus2";
    case HomotopyType::SO3modG: return "SO3modG";
    case HomotopyType::Sphere2: return "Sphere2";
  }
  return "?";
}

void validate_euler_characteristic(int chi) {
  if (chi > 2 || chi % 2 != 0) {
    throw Error(ErrorCode::InvalidEulerCharacteristic,
                std::to_string(chi) + " is not the Euler characteristic of a closed orientable surface");
  }
}

int s_of(int chi) {
  validate_euler_characteristic(chi);
  return std::max(0, chi + 1);
}

int dim_Bs_formula(const ProfileCounts& c, int s) {
  return 2 * s + c.total + c.extr_star + c.triv + 2 * c.saddle + 3 * c.mult;
}

int dim_B1s_formula(const ProfileCounts& c, int s) {
  const int via_dim_Bs = dim_Bs_formula(c, s) - c.extr - 1;
  const int direct = 2 * s + c.extr_star + 2 * c.triv + 3 * c.saddle + 4 * c.mult - 1;
  if (via_dim_Bs != direct) {
    throw std::logic_error("dim B^1_s expressions disagree: " + std::to_string(via_dim_Bs) + " vs " +
                           std::to_string(direct));
  }
  return direct;
}

int dim_Bs(const FunctionProfile& profile) {
  require_consistent(profile);
  return dim_Bs_formula(profile_counts(profile), s_of(profile.euler_characteristic()));
}

int dim_B1s(const FunctionProfile& profile) {
  require_consistent(profile);
  return dim_B1s_formula(profile_counts(profile), s_of(profile.euler_characteristic()));
}

int orbit_space_dim(const FunctionProfile& profile) {
  require_morse_flow_profile(profile);
  return 2 * profile_counts(profile).saddle;
}

int fibration_dim(const FunctionProfile& profile) {
  require_morse_flow_profile(profile);
  return profile_counts(profile).saddle + 2 * s_of(profile.euler_characteristic()) - 1;
}

int intersection_dim(int chi) { return 2 * s_of(chi); }

HomotopyType homotopy_type(int chi, int nsaddles) {
  validate_euler_characteristic(chi);
  if (nsaddles < 0) throw Error(ErrorCode::InconsistentCounts, "negative saddle count");
  if (chi < 0) return HomotopyType::Point;
  if (chi == 0) return HomotopyType::Torus2;
  return nsaddles > 0 ? HomotopyType::SO3modG : HomotopyType::Sphere2;
}

DimensionReport report(const FunctionProfile& profile) {
  const int chi = profile.euler_characteristic();
  const ProfileCounts c = profile_counts(profile);
  const auto consistency = check_profile_consistency(profile);

  DimensionReport r;
  r.violations = consistency.violations;
  r.s = s_of(chi);
  r.dim_Bs = dim_Bs_formula(c, r.s);
  r.dim_B1s = dim_B1s_formula(c, r.s);
  r.intersection_dim = intersection_dim(chi);
  r.fibration_dim = c.saddle + 2 * r.s - 1;
  // For non-Morse profiles every non-extremum critical point breaks the
  // rotational symmetry of S^2, so the count that matters is all of them.
  r.homotopy_type = homotopy_type(chi, c.saddle + c.triv + c.mult);

  const bool morse = profile.is_morse();
  if (morse && consistency.ok()) r.orbit_space_dim = 2 * c.saddle;

  if (!consistency.ok()) {
    r.formal_fields = {"dim_Bs", "dim_B1s"};
  }
  if (!morse || !consistency.ok()) {
    r.formal_fields.push_back("fibration_dim");
    r.formal_fields.push_back("homotopy_type");
  }
  return r;
}

nlohmann::json to_json(const DimensionReport& r) {
  nlohmann::json j;
  j["s"] = r.s;
  j["dim_Bs"] = r.dim_Bs;
  j["dim_B1s"] = r.dim_B1s;
  j["orbit_space_dim"] = r.orbit_space_dim ? nlohmann::json(*r.orbit_space_dim) : nlohmann::json(nullptr);
  j["fibration_dim"] = r.fibration_dim;
  j["intersection_dim"] = r.intersection_dim;
  j["homotopy_type"] = std::string(to_string(r.homotopy_type));
  j["formal_fields"] = r.formal_fields;
  j["violations"] = r.violations;
  return j;
}

}  // namespace gradflow
