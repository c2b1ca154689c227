#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "gradflow/error.hpp"
#include "gradflow/singularity.hpp"
#include "support.hpp"

using namespace gradflow;

namespace {

// c * x^i * y^j
struct Term {
  double c;
  int i;
  int j;
};
using Poly = std::vector<Term>;

double eval(const Poly& p, double x, double y) {
  double v = 0;
  for (const auto& t : p) v += t.c * std::pow(x, t.i) * std::pow(y, t.j);
  return v;
}

std::pair<double, double> gradient(const Poly& p, double x, double y) {
  double gx = 0, gy = 0;
  for (const auto& t : p) {
    if (t.i > 0) gx += t.c * t.i * std::pow(x, t.i - 1) * std::pow(y, t.j);
    if (t.j > 0) gy += t.c * t.j * std::pow(x, t.i) * std::pow(y, t.j - 1);
  }
  return {gx, gy};
}

// Turning number of grad p along a small circle around the origin.
int winding_number(const Poly& p, double radius = 0.4, int samples = 20000) {
  double total = 0;
  auto angle_at = [&](int k) {
    const double t = 2 * std::numbers::pi * k / samples;
    auto [gx, gy] = gradient(p, radius * std::cos(t), radius * std::sin(t));
    return std::atan2(gy, gx);
  };
  double prev = angle_at(0);
  for (int k = 1; k <= samples; ++k) {
    const double cur = angle_at(k);
    double d = cur - prev;
    while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
    while (d < -std::numbers::pi) d += 2 * std::numbers::pi;
    total += d;
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

double sgn(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }

// Normal forms, written out independently of classify().
Poly normal_form(const AdeLabel& l) {
  const int mu = l.mu;
  switch (l.family) {
    case Family::A:
      if (mu % 2 == 0) return {{1, mu + 1, 0}, {sgn(l.sign1), 0, 2}};
      if (l.sign1 == Sign::Minus) return {{-1, mu + 1, 0}, {1, 0, 2}};
      return {{sgn(*l.sign2), mu + 1, 0}, {sgn(*l.sign2), 0, 2}};
    case Family::D:
      return {{1, 2, 1}, {sgn(l.sign1), 0, mu - 1}};
    case Family::E:
      if (mu == 6) return {{1, 3, 0}, {sgn(l.sign1), 0, 4}};
      if (mu == 7) return {{1, 3, 0}, {sgn(l.sign1), 1, 3}};
      return {{1, 3, 0}, {sgn(l.sign1), 0, 5}};
  }
  return {};
}

double hessian_determinant(const Poly& p, double h = 1e-3) {
  auto f = [&](double x, double y) { return eval(p, x, y); };
  const double fxx = (f(h, 0) - 2 * f(0, 0) + f(-h, 0)) / (h * h);
  const double fyy = (f(0, h) - 2 * f(0, 0) + f(0, -h)) / (h * h);
  const double fxy = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h);
  return fxx * fyy - fxy * fxy;
}

void expect_error(ErrorCode code, std::string_view text) {
  try {
    parse_label(text);
    ADD_FAILURE() << "expected an error for '" << text << "'";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << text << ": " << e.what();
  }
}

}  // namespace

TEST(Label, ParsesGrammarExamples) {
  EXPECT_EQ(parse_label("A1:+,+"), (AdeLabel{Family::A, 1, Sign::Plus, Sign::Plus}));
  EXPECT_EQ(parse_label("E7:-"), (AdeLabel{Family::E, 7, Sign::Minus, std::nullopt}));
  EXPECT_EQ(parse_label("D4:-"), (AdeLabel{Family::D, 4, Sign::Minus, std::nullopt}));
  EXPECT_EQ(parse_label("A3:-,+"), (AdeLabel{Family::A, 3, Sign::Minus, Sign::Plus}));
}

TEST(Label, MorseSaddleAliases) {
  const AdeLabel saddle{Family::A, 1, Sign::Minus, std::nullopt};
  EXPECT_EQ(parse_label("A1:-"), saddle);
  EXPECT_EQ(parse_label("A1:-,+"), saddle);
  EXPECT_EQ(parse_label("A1:-,-"), saddle);
  EXPECT_EQ(format_label(parse_label("A1:-,+")), "A1:-");
}

TEST(Label, RejectsBadInput) {
  expect_error(ErrorCode::InvalidFamilyIndex, "E5:+");
  expect_error(ErrorCode::InvalidFamilyIndex, "E9:+");
  expect_error(ErrorCode::InvalidFamilyIndex, "D3:+");
  expect_error(ErrorCode::InvalidFamilyIndex, "A0:+");
  expect_error(ErrorCode::SignArity, "A1:+");
  expect_error(ErrorCode::SignArity, "A2:+,-");
  expect_error(ErrorCode::SignArity, "D5:+,+");
  expect_error(ErrorCode::SignArity, "A3");
  expect_error(ErrorCode::MalformedLabel, "");
  expect_error(ErrorCode::MalformedLabel, "B3:+");
  expect_error(ErrorCode::MalformedLabel, "A:+");
  expect_error(ErrorCode::MalformedLabel, "A3:+;-");
  expect_error(ErrorCode::MalformedLabel, "A3:*,+");
  expect_error(ErrorCode::MalformedLabel, "A3:+,");
  expect_error(ErrorCode::MalformedLabel, "A3+,+");
}

TEST(Label, RoundTripsEveryValidLabel) {
  const auto labels = testkit::all_labels(12);
  ASSERT_FALSE(labels.empty());
  for (const auto& l : labels) EXPECT_EQ(parse_label(format_label(l)), l) << format_label(l);
}

TEST(Label, ValidLabelInventory) {
  // mu <= 9: A gives 4 per odd mu >= 3, 3 for mu = 1, 2 per even mu;
  // D gives 2 per mu in 4..9; E gives 2 per mu in 6..8.
  const int a = 3 + 4 * 4 + 2 * 4;
  const int d = 2 * 6;
  const int e = 2 * 3;
  EXPECT_EQ(static_cast<int>(testkit::all_labels(9).size()), a + d + e);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(parse_label("A3:+,+")), SingularityClass::Min);
  EXPECT_EQ(classify(parse_label("A1:+,-")), SingularityClass::Max);
  EXPECT_EQ(classify(parse_label("D4:-")), SingularityClass::Mult);
  EXPECT_EQ(classify(parse_label("E6:-")), SingularityClass::Triv);
  EXPECT_EQ(classify(parse_label("E7:+")), SingularityClass::Saddle);
  EXPECT_EQ(classify(parse_label("E7:-")), SingularityClass::Saddle);
  EXPECT_EQ(classify(parse_label("D5:-")), SingularityClass::Saddle);
  EXPECT_EQ(classify(parse_label("D6:+")), SingularityClass::Triv);
  EXPECT_EQ(classify(parse_label("A4:-")), SingularityClass::Triv);
  EXPECT_EQ(classify(parse_label("A5:-,-")), SingularityClass::Saddle);
}

TEST(Classify, IndexDependsOnlyOnClass) {
  std::map<SingularityClass, std::set<int>> seen;
  for (const auto& l : testkit::all_labels(9)) seen[classify(l)].insert(gradient_index(l));
  EXPECT_EQ(seen.size(), 5u);
  for (const auto& [c, indices] : seen) EXPECT_EQ(indices.size(), 1u) << to_string(c);
}

TEST(Classify, IndexMatchesNormalFormWinding) {
  for (const auto& l : testkit::all_labels(9)) {
    EXPECT_EQ(gradient_index(l), winding_number(normal_form(l))) << format_label(l);
  }
}

TEST(Classify, WindingOracleSanity) {
  EXPECT_EQ(winding_number({{1, 2, 0}, {1, 0, 2}}), 1);
  EXPECT_EQ(winding_number({{1, 2, 0}, {-1, 0, 2}}), -1);
  EXPECT_EQ(winding_number({{1, 2, 1}, {-1, 0, 3}}), -2);
  EXPECT_EQ(winding_number({{1, 2, 0}, {1, 0, 3}}), 0);
}

TEST(Classify, DegenerateExtremaHaveSingularHessian) {
  EXPECT_FALSE(is_degenerate_extremum(parse_label("A1:+,-")));
  EXPECT_TRUE(is_degenerate_extremum(parse_label("A3:+,+")));
  EXPECT_FALSE(is_degenerate_extremum(parse_label("E7:+")));
  EXPECT_NEAR(hessian_determinant(normal_form(parse_label("A3:+,+"))), 0.0, 1e-3);
  for (const auto& l : testkit::all_labels(9)) {
    const auto c = classify(l);
    if (is_degenerate_extremum(l)) {
      EXPECT_TRUE(c == SingularityClass::Min || c == SingularityClass::Max) << format_label(l);
    }
    if (c != SingularityClass::Min && c != SingularityClass::Max) continue;
    const bool singular = std::abs(hessian_determinant(normal_form(l))) < 1e-3;
    EXPECT_EQ(is_degenerate_extremum(l), singular) << format_label(l);
  }
}

TEST(Profile, CountsExamples) {
  FunctionProfile g2{2, {}};
  for (const char* s : {"A1:+,+", "A1:+,-", "A1:-", "A1:-", "A1:-", "A1:-"}) g2.labels.push_back(parse_label(s));
  EXPECT_EQ(profile_counts(g2), (ProfileCounts{6, 1, 1, 2, 0, 4, 0, 0}));
  EXPECT_TRUE(check_profile_consistency(g2).ok());

  FunctionProfile polar{0, {parse_label("A1:+,+"), parse_label("A1:+,-")}};
  EXPECT_EQ(profile_counts(polar), (ProfileCounts{2, 1, 1, 2, 0, 0, 0, 0}));
  EXPECT_TRUE(check_profile_consistency(polar).ok());

  FunctionProfile degenerate{0, {parse_label("A3:+,+"), parse_label("A1:+,-"), parse_label("D4:-")}};
  EXPECT_EQ(profile_counts(degenerate), (ProfileCounts{3, 1, 1, 2, 1, 0, 0, 1}));

  FunctionProfile extra{0, {parse_label("A1:+,+"), parse_label("A1:+,-"), parse_label("A1:-")}};
  const auto r = check_profile_consistency(extra);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_NE(r.violations[0].find("index sum 1"), std::string::npos);
}

TEST(Profile, ReportsEachViolation) {
  FunctionProfile p{1, {parse_label("A1:-")}};
  EXPECT_EQ(check_profile_consistency(p).violations.size(), 3u);
}

TEST(Profile, CountIdentitiesOnRandomProfiles) {
  std::mt19937_64 rng(7);
  const auto labels = testkit::all_labels(9);
  std::uniform_int_distribution<size_t> pick(0, labels.size() - 1);
  for (int trial = 0; trial < 500; ++trial) {
    FunctionProfile p{trial % 4, {}};
    const int n = trial % 13;
    for (int i = 0; i < n; ++i) p.labels.push_back(labels[pick(rng)]);
    const auto c = profile_counts(p);
    EXPECT_EQ(c.total, c.min + c.max + c.saddle + c.triv + c.mult);
    EXPECT_EQ(c.total, n);
    EXPECT_LE(c.extr_star, c.extr);
  }
}

TEST(Profile, JsonRoundTrip) {
  const auto p = testkit::load_profile("degenerate_genus0.json");
  EXPECT_EQ(p.genus, 0);
  ASSERT_EQ(p.labels.size(), 3u);
  const auto back = profile_from_json(profile_to_json(p));
  EXPECT_EQ(back.genus, p.genus);
  EXPECT_EQ(back.labels, p.labels);
}

TEST(Profile, RejectsMalformedJson) {
  for (const char* text : {R"([1,2])", R"({"labels": []})", R"({"genus": "x", "labels": []})",
                           R"({"genus": 0, "labels": [3]})", R"({"genus": 0})"}) {
    EXPECT_THROW(profile_from_json(nlohmann::json::parse(text)), Error) << text;
  }
  EXPECT_THROW(profile_from_json(nlohmann::json::parse(R"({"genus": 0, "labels": ["E5:+"]})")), Error);
}
