#include "gradflow/singularity.hpp"

#include <charconv>

#include "gradflow/error.hpp"

namespace gradflow {

namespace {

char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

char family_char(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::D: return 'D';
    case Family::E: return 'E';
  }
  return '?';
}

// Number of signs a label of this shape must carry. A_1^- is the Morse
// saddle and has a single sign.
int required_signs(Family family, int mu, Sign sign1) {
  if (family != Family::A) return 1;
  if (mu % 2 == 0) return 1;
  if (mu == 1 && sign1 == Sign::Minus) return 1;
  return 2;
}

Sign parse_sign(char c, std::string_view text) {
  if (c == '+') return Sign::Plus;
  if (c == '-') return Sign::Minus;
  throw Error(ErrorCode::MalformedLabel, "bad sign in '" + std::string(text) + "'");
}

}  // namespace

std::string_view to_string(SingularityClass c) {
  switch (c) {
    case SingularityClass::Min: return "min";
    case SingularityClass::Max: return "max";
    case SingularityClass::Saddle: return "saddle";
    case SingularityClass::Triv: return "triv";
    case SingularityClass::Mult: return "mult";
  }
  return "?";
}

void validate_label(const AdeLabel& label) {
  const std::string name = std::string(1, family_char(label.family)) + std::to_string(label.mu);
  switch (label.family) {
    case Family::A:
      if (label.mu < 1) throw Error(ErrorCode::InvalidFamilyIndex, name);
      break;
    case Family::D:
      if (label.mu < 4) throw Error(ErrorCode::InvalidFamilyIndex, name);
      break;
    case Family::E:
      if (label.mu < 6 || label.mu > 8) throw Error(ErrorCode::InvalidFamilyIndex, name);
      break;
  }
  const int have = label.sign2 ? 2 : 1;
  if (have != required_signs(label.family, label.mu, label.sign1)) {
    throw Error(ErrorCode::SignArity, name + " takes " +
                                          std::to_string(required_signs(label.family, label.mu, label.sign1)) +
                                          " sign(s)");
  }
}

AdeLabel parse_label(std::string_view text) {
  if (text.size() < 2) throw Error(ErrorCode::MalformedLabel, "'" + std::string(text) + "'");
  AdeLabel label;
  switch (text[0]) {
    case 'A': label.family = Family::A; break;
    case 'D': label.family = Family::D; break;
    case 'E': label.family = Family::E; break;
    default: throw Error(ErrorCode::MalformedLabel, "unknown family in '" + std::string(text) + "'");
  }

  const char* first = text.data() + 1;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, label.mu);
  if (ec != std::errc() || ptr == first) {
    throw Error(ErrorCode::MalformedLabel, "bad index in '" + std::string(text) + "'");
  }

  std::vector<Sign> signs;
  if (ptr != last) {
    if (*ptr != ':') throw Error(ErrorCode::MalformedLabel, "expected ':' in '" + std::string(text) + "'");
    ++ptr;
    while (true) {
      if (ptr == last) throw Error(ErrorCode::MalformedLabel, "missing sign in '" + std::string(text) + "'");
      signs.push_back(parse_sign(*ptr++, text));
      if (ptr == last) break;
      if (*ptr != ',') throw Error(ErrorCode::MalformedLabel, "expected ',' in '" + std::string(text) + "'");
      ++ptr;
    }
  }
  if (signs.empty() || signs.size() > 2) {
    throw Error(ErrorCode::SignArity, "'" + std::string(text) + "' needs one or two signs");
  }

  label.sign1 = signs[0];
  if (signs.size() == 2) label.sign2 = signs[1];

  // "A1:-,+" and "A1:-,-" are both the Morse saddle A1:-.
  if (label.family == Family::A && label.mu == 1 && label.sign1 == Sign::Minus) label.sign2.reset();

  validate_label(label);
  return label;
}

std::string format_label(const AdeLabel& label) {
  std::string out(1, family_char(label.family));
  out += std::to_string(label.mu);
  out += ':';
  out += sign_char(label.sign1);
  if (label.sign2) {
    out += ',';
    out += sign_char(*label.sign2);
  }
  return out;
}

SingularityClass classify(const AdeLabel& label) {
  validate_label(label);
  const bool odd = label.mu % 2 == 1;
  switch (label.family) {
    case Family::A:
      if (!odd) return SingularityClass::Triv;
      if (label.sign1 == Sign::Minus) return SingularityClass::Saddle;
      return *label.sign2 == Sign::Plus ? SingularityClass::Min : SingularityClass::Max;
    case Family::D:
      if (odd) return SingularityClass::Saddle;
      return label.sign1 == Sign::Plus ? SingularityClass::Triv : SingularityClass::Mult;
    case Family::E:
      return label.mu == 7 ? SingularityClass::Saddle : SingularityClass::Triv;
  }
  return SingularityClass::Triv;
}

bool is_degenerate_extremum(const AdeLabel& label) {
  const SingularityClass c = classify(label);
  return (c == SingularityClass::Min || c == SingularityClass::Max) && label.mu >= 3;
}

int gradient_index(const AdeLabel& label) {
  switch (classify(label)) {
    case SingularityClass::Min:
    case SingularityClass::Max: return 1;
    case SingularityClass::Saddle: return -1;
    case SingularityClass::Triv: return 0;
    case SingularityClass::Mult: return -2;
  }
  return 0;
}

bool is_morse(const AdeLabel& label) { return label.family == Family::A && label.mu == 1; }

bool FunctionProfile::is_morse() const {
  for (const auto& l : labels) {
    if (!gradflow::is_morse(l)) return false;
  }
  return true;
}

ProfileCounts profile_counts(const FunctionProfile& profile) {
  ProfileCounts c;
  for (const auto& label : profile.labels) {
    switch (classify(label)) {
      case SingularityClass::Min: ++c.min; break;
      case SingularityClass::Max: ++c.max; break;
      case SingularityClass::Saddle: ++c.saddle; break;
      case SingularityClass::Triv: ++c.triv; break;
      case SingularityClass::Mult: ++c.mult; break;
    }
    if (is_degenerate_extremum(label)) ++c.extr_star;
  }
  c.extr = c.min + c.max;
  c.total = c.extr + c.saddle + c.triv + c.mult;
  return c;
}

ConsistencyResult check_profile_consistency(const FunctionProfile& profile) {
  ConsistencyResult r;
  if (profile.genus < 0) {
    r.violations.push_back("negative genus " + std::to_string(profile.genus));
    return r;
  }
  const ProfileCounts c = profile_counts(profile);
  if (c.min < 1) r.violations.push_back("no local minimum");
  if (c.max < 1) r.violations.push_back("no local maximum");
  int index_sum = 0;
  for (const auto& label : profile.labels) index_sum += gradient_index(label);
  if (index_sum != profile.euler_characteristic()) {
    r.violations.push_back("index sum " + std::to_string(index_sum) + " != euler characteristic " +
                           std::to_string(profile.euler_characteristic()));
  }
  return r;
}

FunctionProfile profile_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("genus") || !j.contains("labels")) {
    throw Error(ErrorCode::MalformedProfile, "expected {\"genus\": int, \"labels\": [...]}");
  }
  const auto& g = j.at("genus");
  if (!g.is_number_integer() || g.get<long long>() < 0) {
    throw Error(ErrorCode::MalformedProfile, "genus must be a non-negative integer");
  }
  const auto& labels = j.at("labels");
  if (!labels.is_array()) throw Error(ErrorCode::MalformedProfile, "labels must be an array");

  FunctionProfile p;
  p.genus = g.get<int>();
  for (const auto& l : labels) {
    if (!l.is_string()) throw Error(ErrorCode::MalformedProfile, "labels must be strings");
    p.labels.push_back(parse_label(l.get<std::string>()));
  }
  return p;
}

nlohmann::json profile_to_json(const FunctionProfile& profile) {
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& l : profile.labels) labels.push_back(format_label(l));
  return {{"genus", profile.genus}, {"labels", labels}};
}

}  // namespace gradflow
