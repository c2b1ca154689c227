#pragma once

// Dimension and homotopy-type invariants of the classifying manifolds
// B_s (functions) and B^1_s (normalized functions / gradient-like flows).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gradflow/singularity.hpp"

namespace gradflow {

enum class HomotopyType { Point, Torus2, SO3modG, Sphere2 };

std::string_view to_string(HomotopyType t);

struct DimensionReport {
  int s = 0;
  int dim_Bs = 0;
  int dim_B1s = 0;
  std::optional<int> orbit_space_dim;
  int fibration_dim = 0;
  int intersection_dim = 0;
  HomotopyType homotopy_type = HomotopyType::Point;
  // Fields evaluated from the formulas outside the hypotheses they are
  // stated under (non-Morse profile, or a profile failing the consistency
  // check).
  std::vector<std::string> formal_fields;
  std::vector<std::string> violations;
};

/// chi must be 2 - 2g for some g >= 0.
void validate_euler_characteristic(int chi);

int s_of(int chi);

/// 2s + |C| + |C^extr*| + |C^triv| + 2|C^saddle| + 3|C^mult|, no
/// hypotheses checked.
int dim_Bs_formula(const ProfileCounts& c, int s);

/// Evaluates both expressions for dim B^1_s and throws std::logic_error if
/// they disagree.
int dim_B1s_formula(const ProfileCounts& c, int s);

// The following require check_profile_consistency(profile).ok() and throw
// Error(InconsistentProfile) otherwise.
int dim_Bs(const FunctionProfile& profile);
int dim_B1s(const FunctionProfile& profile);

// Stated for Morse flows: throw Error(NonMorseProfile) unless every label
// is A1 and the profile is consistent.
int orbit_space_dim(const FunctionProfile& profile);
int fibration_dim(const FunctionProfile& profile);

int intersection_dim(int chi);
HomotopyType homotopy_type(int chi, int nsaddles);

/// Total over well-formed profiles: whatever cannot be stated under the
/// hypotheses is computed formally and listed in formal_fields.
DimensionReport report(const FunctionProfile& profile);

nlohmann::json to_json(const DimensionReport& r);

}  // namespace gradflow
