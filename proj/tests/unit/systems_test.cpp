#include <gtest/gtest.h>

#include <cmath>

#include "walklab/error.hpp"
#include "walklab/systems.hpp"

namespace {

using walklab::CompareOptions;
using walklab::Error;
using walklab::ErrorKind;
using walklab::Presentation;
using walklab::Verdict;

CompareOptions small_options() {
  CompareOptions o;
  o.radius = 8;
  o.convolution_depth = 8;
  o.trials = 600;
  o.master_seed = 5;
  return o;
}

TEST(ParseSystem, CommentsNamesAndErrors) {
  const auto p = Presentation::parse("free:2");
  const auto s = walklab::parse_system("# extended\nx1\nx2   # second\n\nx1 x2\n", p);
  EXPECT_EQ(s.words.size(), 3u);
  EXPECT_EQ(s.name, "{x1, x2, x1 x2}");
  EXPECT_EQ(walklab::parse_system("x1\n", p, "mine").name, "mine");
  for (const char* bad : {"", "# only a comment\n", "x3\n"}) {
    try {
      walklab::parse_system(bad, p);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::invalid_input) << bad;
    }
  }
  try {
    walklab::parse_system("x1\nz9\n", p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(CompareSystems, RejectsNonGeneratingSystems) {
  const auto p = Presentation::parse("free:2");
  const auto s = walklab::parse_system("x1\n", p, "half");
  try {
    walklab::compare_systems(p, {s}, small_options());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
  }
}

TEST(CompareSystems, FreeGroupStandardBeatsExtended) {
  const auto p = Presentation::parse("free:2");
  const auto ext = walklab::parse_system("x1\nx2\nx1 x2\n", p, "ext");
  const auto c = walklab::compare_systems(p, {walklab::standard_system(p), ext},
                                          small_options());
  ASSERT_EQ(c.ranking.size(), 2u);
  EXPECT_FALSE(c.note.empty());
  for (const auto& r : c.ranking) {
    ASSERT_TRUE(r.q.has_value()) << r.name;
    EXPECT_LE(r.q->value, 1.0 + std::max(0.05, 3.0 * r.q->sigma)) << r.name;
    EXPECT_LE(r.discarded, 60u);
  }
  const auto& std_report =
      c.ranking[0].name == "standard" ? c.ranking[0] : c.ranking[1];
  EXPECT_NEAR(std_report.volume.value, std::log2(3.0), 1e-9);
  EXPECT_NEAR(std_report.drift.value, 0.5, 0.02);
  EXPECT_EQ(std_report.letters.size(), 4u);
  const auto& ext_report =
      c.ranking[0].name == "ext" ? c.ranking[0] : c.ranking[1];
  EXPECT_EQ(ext_report.letters.size(), 6u);
  EXPECT_GE(c.ranking[0].q->value, c.ranking[1].q->value);
}

TEST(CompareSystems, InvariantUnderWordOrderAndDuplicates) {
  const auto p = Presentation::parse("lfgroup:3");
  const auto a = walklab::parse_system("z1\nz2\nz3\n", p, "s");
  const auto b = walklab::parse_system("z3\nz1^-1\nz2\nz1\n", p, "s");
  auto o = small_options();
  o.radius = 6;
  o.convolution_depth = 6;
  const auto ca = walklab::compare_systems(p, {a}, o);
  const auto cb = walklab::compare_systems(p, {b}, o);
  const auto& ra = ca.ranking.front();
  const auto& rb = cb.ranking.front();
  EXPECT_EQ(ra.letters, rb.letters);
  EXPECT_EQ(ra.drift.value, rb.drift.value);
  EXPECT_EQ(ra.entropy.value, rb.entropy.value);
  EXPECT_EQ(ra.drift_monte_carlo.value, rb.drift_monte_carlo.value);
  EXPECT_EQ(ra.volume.value, rb.volume.value);
}

TEST(CompareSystems, ZeroDriftSystemsRankLast) {
  const auto p = Presentation::parse("abelian:1");
  auto o = small_options();
  const auto c = walklab::compare_systems(
      p, {walklab::standard_system(p), walklab::parse_system("x1 x1\nx1\n", p, "b")},
      o);
  for (const auto& r : c.ranking) {
    EXPECT_EQ(r.verdict, Verdict::undefined_drift) << r.name;
    EXPECT_FALSE(r.q.has_value());
  }
}

TEST(CompareSystems, ResultsIndependentOfWorkers) {
  const auto p = Presentation::parse("free:2");
  const auto ext = walklab::parse_system("x1\nx2\nx1 x2\n", p, "ext");
  auto o = small_options();
  o.radius = 6;
  o.convolution_depth = 6;
  o.trials = 200;
  const auto a = walklab::compare_systems(p, {walklab::standard_system(p), ext}, o);
  o.workers = 2;
  const auto b = walklab::compare_systems(p, {walklab::standard_system(p), ext}, o);
  ASSERT_EQ(a.ranking.size(), b.ranking.size());
  for (std::size_t i = 0; i < a.ranking.size(); ++i) {
    EXPECT_EQ(a.ranking[i].name, b.ranking[i].name);
    EXPECT_EQ(a.ranking[i].drift_monte_carlo.value,
              b.ranking[i].drift_monte_carlo.value);
    EXPECT_EQ(a.ranking[i].q->value, b.ranking[i].q->value);
  }
}

}  // namespace
