#pragma once

// ADE critical-point labels and their topological classes.
//
// Label text grammar: FAMILY MU [":" SIGN ["," SIGN]], e.g. "A3:+,-",
// "D4:-", "E7:+". Signs follow the usual A^{s1,s2}, D^{s}, E^{s}
// superscripts. The five classes are local minima, local maxima, saddles,
// topologically trivial (quasi-saddle) points and multi-saddles.

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace gradflow {

enum class Family { A, D, E };
enum class Sign { Plus, Minus };

struct AdeLabel {
  Family family = Family::A;
  int mu = 1;
  Sign sign1 = Sign::Plus;
  std::optional<Sign> sign2;

  auto operator<=>(const AdeLabel&) const = default;
};

enum class SingularityClass { Min, Max, Saddle, Triv, Mult };

std::string_view to_string(SingularityClass c);

/// Throws Error(InvalidFamilyIndex | SignArity) if the label is not one of
/// the admissible A/D/E types.
void validate_label(const AdeLabel& label);

AdeLabel parse_label(std::string_view text);
std::string format_label(const AdeLabel& label);

SingularityClass classify(const AdeLabel& label);

/// A degenerate (non-Morse) local extremum: A_{2i-1}^{+,+/-} with i >= 2.
bool is_degenerate_extremum(const AdeLabel& label);

/// Index of the gradient field at the critical point: +1 for extrema,
/// -1 for saddles, 0 for trivial points, -2 for multi-saddles.
int gradient_index(const AdeLabel& label);

bool is_morse(const AdeLabel& label);

struct FunctionProfile {
  int genus = 0;
  std::vector<AdeLabel> labels;

  int euler_characteristic() const { return 2 - 2 * genus; }
  bool is_morse() const;
};

struct ProfileCounts {
  int total = 0;
  int min = 0;
  int max = 0;
  int extr = 0;
  int extr_star = 0;
  int saddle = 0;
  int triv = 0;
  int mult = 0;

  bool operator==(const ProfileCounts&) const = default;
};

ProfileCounts profile_counts(const FunctionProfile& profile);

struct ConsistencyResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Necessary realizability conditions only: both extremum kinds present and
/// the Poincare-Hopf index sum equal to 2 - 2*genus.
ConsistencyResult check_profile_consistency(const FunctionProfile& profile);

/// {"genus": int, "labels": ["A1:+,+", ...]}
FunctionProfile profile_from_json(const nlohmann::json& j);
nlohmann::json profile_to_json(const FunctionProfile& profile);

}  // namespace gradflow
