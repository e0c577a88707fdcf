#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "dependence.hpp"
#include "stats.hpp"
#include "trunca/errors.hpp"
#include "trunca/sampling.hpp"

namespace trunca {
namespace {

using Vec = std::vector<double>;
using testing::tau_with_se;

CopulaModel nested(Family f, double th0, double th1) {
  const Generator r(f, th0);
  return NestedArchimedean(r, {{r, 1}, {Generator(f, th1), 2}});
}

void expect_uniform_columns(const SampleMatrix& s) {
  for (int j = 0; j < s.cols(); ++j) {
    const double d = testing::ks_statistic(s.column(j), [](double x) { return x; });
    EXPECT_LT(d, testing::ks_critical_1pct(s.rows())) << "column " << j;
  }
}

TEST(SampleMatrix, Basics) {
  SampleMatrix s(2, 3, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(s(1, 0), 4.0);
  EXPECT_EQ(s.column(2), (Vec{3, 6}));
  s.append(SampleMatrix(1, 3, {7, 8, 9}));
  EXPECT_EQ(s.rows(), 3u);
  EXPECT_THROW(s.append(SampleMatrix(1, 2)), std::invalid_argument);
  EXPECT_THROW(SampleMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
}

TEST(Archimedean, IndependenceIsIid) {
  RngStream rng(1);
  const auto s = sample_archimedean(Generator(), 3, 20000, rng);
  expect_uniform_columns(s);
  const auto tau = tau_with_se(s, 0, 2);
  EXPECT_NEAR(tau.mean, 0.0, 3.0 * tau.se);
}

TEST(Archimedean, ClaytonTau) {
  RngStream rng(2);
  const Generator cl(Family::Clayton, 2.0);
  const auto s = sample_archimedean(cl, 2, 100000, rng);
  expect_uniform_columns(s);
  const auto tau = tau_with_se(s, 0, 1);
  EXPECT_NEAR(tau.mean, 0.5, 3.0 * tau.se);
  const auto st = sample_archimedean(tilt(cl, 6.0), 2, 100000, rng);
  const auto taut = tau_with_se(st, 0, 1);
  EXPECT_NEAR(taut.mean, 0.5, 3.0 * taut.se);
}

TEST(Nested, SingleSectorIsArchimedean) {
  const Generator g(Family::Gumbel, 3.0);
  RngStream r1(3), r2(4);
  const auto a = sample_nested(NestedArchimedean(Generator(Family::Gumbel, 1.5), {{g, 2}}), 50000, r1);
  const auto b = sample_archimedean(g, 2, 50000, r2);
  EXPECT_LT(empirical_copula_distance(a, b), 0.015);
}

TEST(Nested, FigureTaus) {
  for (Family f : {Family::Gumbel, Family::Clayton}) {
    const double th1 = f == Family::Gumbel ? 4.0 : 6.0;
    RngStream rng(5);
    const auto s = sample_nested(std::get<NestedArchimedean>(nested(f, 2.0, th1).variant()), 100000, rng);
    const auto cross = tau_with_se(s, 0, 1);
    const auto within = tau_with_se(s, 1, 2);
    EXPECT_NEAR(cross.mean, 0.5, 3.0 * cross.se) << to_string(f);
    EXPECT_NEAR(within.mean, 0.75, 3.0 * within.se) << to_string(f);
  }
}

TEST(Nested, UnsupportedMix) {
  const CopulaModel m =
      NestedArchimedean(Generator(Family::Joe, 2.0), {{Generator(Family::Joe, 3.0), 2}, {Generator(Family::Joe, 4.0), 2}});
  RngStream rng(1);
  EXPECT_THROW(sample_nested(std::get<NestedArchimedean>(m.variant()), 10, rng), UnsupportedError);
}

TEST(Model, SurvivalGumbelMonteCarlo) {
  const CopulaModel m = survival(Archimedean(Generator(Family::Gumbel, 2.0), 2));
  RngStream rng(6);
  const std::size_t n = 1000000;
  const auto s = sample_model(m, n, rng);
  double hits = 0.0;
  for (std::size_t i = 0; i < n; ++i) hits += s(i, 0) <= 0.5 && s(i, 1) <= 0.5;
  const double p = cdf(m, Vec{0.5, 0.5});
  EXPECT_NEAR(hits / n, p, 3.0 * testing::binomial_se(p, n));
}

TEST(Model, MarshallOlkinTau) {
  // Kendall's tau of the MO copula is a1 a2 / (a1 + a2 - a1 a2).
  RngStream rng(7);
  const auto s = sample_model(MarshallOlkin2(0.2, 0.7), 100000, rng);
  const auto tau = tau_with_se(s, 0, 1);
  EXPECT_NEAR(tau.mean, 0.14 / (0.9 - 0.14), 3.0 * tau.se);
}

TEST(Oracle, UntruncatedIsModel) {
  const CopulaModel m = Archimedean(Generator(Family::Joe, 2.0), 2);
  RngStream r1(8), r2(8);
  OracleStats stats;
  const auto a = oracle_sample(m, TruncationPoint(m, {1, 1}), 1000, r1, 0, &stats);
  const auto b = sample_model(m, 1000, r2);
  EXPECT_EQ(a.data(), b.data());
  EXPECT_EQ(stats.rate(), 1.0);
}

TEST(Oracle, AcceptanceRates) {
  const CopulaModel cl = Archimedean(Generator(Family::Clayton, 2.0), 2);
  const CopulaModel mo = MarshallOlkin2(0.2, 0.7);
  for (const auto& [m, tv] : std::vector<std::pair<CopulaModel, Vec>>{{cl, {0.5, 0.5}}, {mo, {0.5, 0.8}}}) {
    const TruncationPoint t(m, tv);
    RngStream rng(9);
    OracleStats stats;
    const auto s = oracle_sample(m, t, 50000, rng, 0, &stats);
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (int j = 0; j < 2; ++j) ASSERT_LE(s(i, j), tv[static_cast<std::size_t>(j)]);
    EXPECT_NEAR(stats.rate(), t.c(), 3.0 * testing::binomial_se(t.c(), static_cast<double>(stats.proposals))) << m.kind();
  }
  EXPECT_NEAR(TruncationPoint(mo, {0.5, 0.8}).c(), std::min(std::pow(0.5, 0.8) * 0.8, 0.5 * std::pow(0.8, 0.3)), 1e-15);
}

TEST(Oracle, BudgetExhaustion) {
  const CopulaModel m = Independence(2);
  RngStream rng(1);
  EXPECT_THROW(oracle_sample(m, TruncationPoint(m, {0.01, 0.01}), 100, rng, 1000), SamplingError);
}

TEST(TransformMargins, Examples) {
  const CopulaModel cl = Archimedean(Generator(Family::Clayton, 2.0), 2);
  const TruncationPoint t(cl, {0.5, 0.5});
  const auto out = transform_margins(SampleMatrix(1, 2, {0.5, 0.25}), cl, t);
  EXPECT_NEAR(out(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(out(0, 1), std::sqrt(7.0 / 19.0), 1e-14);
  const auto id = transform_margins(SampleMatrix(1, 2, {0.3, 0.7}), cl, TruncationPoint(cl, {1, 1}));
  EXPECT_NEAR(id(0, 0), 0.3, 1e-15);
  EXPECT_NEAR(id(0, 1), 0.7, 1e-15);
  EXPECT_THROW(transform_margins(SampleMatrix(1, 2, {0.6, 0.2}), cl, t), std::domain_error);
}

TEST(Truncated, FastPathsMatchOracle) {
  const std::vector<std::pair<CopulaModel, Vec>> cases = {
      {Archimedean(Generator(Family::Clayton, 2.0), 2), {0.5, 0.5}},
      {Archimedean(Generator(Family::Joe, 2.0), 2), {0.7, 0.6}},
      {MarshallOlkin2(0.2, 0.7), {0.5, 0.8}}};
  for (const auto& [m, tv] : cases) {
    const auto tc = truncate_general(m, TruncationPoint(m, tv));
    RngStream r1(10, 1), r2(10, 2);
    const auto fast = sample_truncated(tc, 100000, r1, SamplingMethod::Tilted);
    const auto oracle = sample_truncated(tc, 100000, r2, SamplingMethod::Oracle);
    EXPECT_LE(empirical_copula_distance(fast, oracle), 0.015) << m.kind();
    expect_uniform_columns(fast);
  }
}

TEST(Truncated, IndependenceIsIid) {
  const CopulaModel m = Independence(2);
  RngStream rng(11);
  const auto s = sample_truncated(truncate_general(m, TruncationPoint(m, {0.3, 0.6})), 20000, rng);
  expect_uniform_columns(s);
  const auto tau = tau_with_se(s, 0, 1);
  EXPECT_NEAR(tau.mean, 0.0, 3.0 * tau.se);
}

TEST(Truncated, TiltedWithoutFastPathThrows) {
  const CopulaModel m = survival(Archimedean(Generator(Family::Gumbel, 2.0), 2));
  RngStream rng(1);
  EXPECT_THROW(sample_truncated(truncate_general(m, TruncationPoint(m, {0.5, 0.5})), 10, rng, SamplingMethod::Tilted),
               UnsupportedError);
}

TEST(Truncated, RawSamplesLieBelowT) {
  const CopulaModel mo = MarshallOlkin2(0.2, 0.7);
  const Vec tv = {0.5, 0.8};
  RngStream rng(12);
  const auto s = sample_truncated_raw(truncate_general(mo, TruncationPoint(mo, tv)), 10000, rng);
  for (std::size_t i = 0; i < s.rows(); ++i) {
    ASSERT_LE(s(i, 0), 0.5);
    ASSERT_LE(s(i, 1), 0.8);
  }
}

TEST(PseudoObservations, Ranks) {
  const auto p = pseudo_observations(SampleMatrix(3, 1, {0.9, 0.1, 0.5}));
  EXPECT_EQ(p.column(0), (Vec{0.75, 0.25, 0.5}));
  const auto t = pseudo_observations(SampleMatrix(3, 1, {0.3, 0.3, 0.9}));
  EXPECT_EQ(t.column(0), (Vec{0.375, 0.375, 0.75}));
  const auto d = pseudo_observations(SampleMatrix(2, 1, {0.3, 0.3}));
  EXPECT_EQ(d.column(0), (Vec{0.5, 0.5}));
  EXPECT_THROW(pseudo_observations(SampleMatrix(1, 2)), std::invalid_argument);
}

TEST(EmpiricalCopulaDistance, Comparator) {
  RngStream r1(13), r2(14);
  const auto a = sample_archimedean(Generator(Family::Clayton, 2.0), 2, 20000, r1);
  const auto b = sample_archimedean(Generator(), 2, 20000, r2);
  EXPECT_EQ(empirical_copula_distance(a, a), 0.0);
  EXPECT_GT(empirical_copula_distance(a, b), 0.05);
}

TEST(Parallel, DeterministicInWorkerOrder) {
  const auto draw = [](std::size_t n, RngStream& rng) { return sample_archimedean(Generator(Family::Frank, 3.0), 2, n, rng); };
  const auto a = sample_parallel(draw, 1001, 3, 42);
  const auto b = sample_parallel(draw, 1001, 3, 42);
  EXPECT_EQ(a.rows(), 1001u);
  EXPECT_EQ(a.data(), b.data());
}

}  // namespace
}  // namespace trunca
