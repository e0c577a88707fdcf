#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "trunca/copulas.hpp"
#include "trunca/errors.hpp"

namespace trunca {
namespace {

using Vec = std::vector<double>;

double clayton_cdf(double theta, const Vec& u) {
  double s = 0.0;
  for (double x : u) s += std::pow(x, -theta) - 1.0;
  return std::pow(1.0 + s, -1.0 / theta);
}

double mo_cdf(double a1, double a2, double u1, double u2) {
  return std::min(std::pow(u1, 1.0 - a1) * u2, u1 * std::pow(u2, 1.0 - a2));
}

CopulaModel nested_clayton() {
  const Generator r(Family::Clayton, 2.0);
  return NestedArchimedean(r, {{r, 1}, {Generator(Family::Clayton, 6.0), 2}});
}

CopulaModel nested_gumbel() {
  const Generator r(Family::Gumbel, 2.0);
  return NestedArchimedean(r, {{r, 1}, {Generator(Family::Gumbel, 4.0), 2}});
}

Vec grid(int n) {
  Vec g;
  for (int i = 1; i < n; ++i) g.push_back(static_cast<double>(i) / n);
  return g;
}

TEST(Cdf, PointValues) {
  EXPECT_NEAR(cdf(Independence(2), Vec{0.3, 0.4}), 0.12, 1e-15);
  EXPECT_NEAR(cdf(Archimedean(Generator(Family::Clayton, 2.0), 2), Vec{0.5, 0.5}), 1.0 / std::sqrt(7.0), 1e-15);
  EXPECT_NEAR(cdf(MarshallOlkin2(0.2, 0.7), Vec{0.5, 0.5}), std::pow(0.5, 1.8), 1e-15);
  EXPECT_NEAR(cdf(Comonotone(3), Vec{0.3, 0.9, 0.5}), 0.3, 1e-15);
}

TEST(Cdf, ClippingAndErrors) {
  const CopulaModel m = Independence(2);
  EXPECT_NEAR(cdf(m, Vec{1.0 + 5e-13, 0.5}), 0.5, 1e-15);
  EXPECT_EQ(cdf(m, Vec{-5e-13, 0.5}), 0.0);
  EXPECT_THROW(cdf(m, Vec{1.1, 0.5}), std::domain_error);
  EXPECT_THROW(cdf(m, Vec{0.5, 0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(Independence(1), std::invalid_argument);
  EXPECT_THROW(MarshallOlkin2(0.0, 0.5), std::domain_error);
  EXPECT_THROW(MarshallOlkin2(0.5, 1.0), std::domain_error);
}

TEST(Cdf, NestedMatchesComposition) {
  const auto m = nested_clayton();
  const Generator g0(Family::Clayton, 2.0), g1(Family::Clayton, 6.0);
  for (double a : grid(5))
    for (double b : grid(5))
      for (double c : grid(5)) {
        const double inner = clayton_cdf(6.0, {b, c});
        EXPECT_NEAR(cdf(m, Vec{a, b, c}), clayton_cdf(2.0, {a, inner}), 1e-14);
      }
  EXPECT_THROW(NestedArchimedean(Generator(Family::Clayton, 6.0), {{Generator(Family::Clayton, 2.0), 2}}),
               std::domain_error);
}

TEST(Sections, Examples) {
  const CopulaModel ind3 = Independence(3);
  EXPECT_NEAR(margin_section(ind3, 0, 0.2, TruncationPoint(ind3, {0.5, 0.5, 0.5})), 0.05, 1e-15);
  const CopulaModel com = Comonotone(2);
  EXPECT_NEAR(margin_section(com, 1, 0.7, TruncationPoint(com, {0.4, 0.9})), 0.4, 1e-15);
  const CopulaModel cl = Archimedean(Generator(Family::Clayton, 2.0), 2);
  const TruncationPoint t(cl, {0.5, 0.5});
  EXPECT_NEAR(margin_section(cl, 0, 0.5, t), 1.0 / std::sqrt(7.0), 1e-15);
  EXPECT_NEAR(t.c(), 1.0 / std::sqrt(7.0), 1e-15);
}

TEST(Sections, InverseExamples) {
  const CopulaModel ind = Independence(2);
  EXPECT_NEAR(margin_section_inv(ind, 0, 0.2, TruncationPoint(ind, {0.5, 0.8})), 0.25, 1e-15);
  const CopulaModel mo = MarshallOlkin2(0.2, 0.7);
  const TruncationPoint tm(mo, {1.0, 0.5});
  // Below t2^{3.8} the section is x t2^{0.3}; above it x^{0.8} t2.
  EXPECT_NEAR(margin_section_inv(mo, 0, 0.05, tm), 0.05 / std::pow(0.5, 0.3), 1e-12);
  EXPECT_NEAR(margin_section_inv(mo, 0, 0.1, tm), std::pow(0.2, 1.25), 1e-12);
  EXPECT_NEAR(mo_cdf(0.2, 0.7, std::pow(0.2, 1.25), 0.5), 0.1, 1e-15);
  for (double y : {0.01, 0.05, 0.1, 0.3, 0.5})
    EXPECT_NEAR(margin_section_inv_bisect(mo, 0, y, tm), margin_section_inv(mo, 0, y, tm), 1e-10);
  const CopulaModel cl = Archimedean(Generator(Family::Clayton, 2.0), 2);
  const TruncationPoint t(cl, {0.5, 0.5});
  EXPECT_NEAR(margin_section_inv(cl, 0, t.c(), t), 0.5, 1e-14);
  EXPECT_THROW(margin_section_inv(cl, 0, t.c() + 1e-6, t), std::domain_error);
}

TEST(Sections, InverseMethodsAgree) {
  const std::vector<CopulaModel> models = {
      Independence(3), Archimedean(Generator(Family::Joe, 3.0), 3),
      Archimedean(outer_power(Generator(Family::Clayton, 1.5), 0.6), 2), nested_gumbel(),
      MarshallOlkin2(0.2, 0.7), survival(Archimedean(Generator(Family::Gumbel, 2.0), 2))};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  for (const auto& m : models) {
    for (int k = 0; k < 50; ++k) {
      Vec tv(static_cast<std::size_t>(m.dim()));
      for (auto& x : tv) x = unif(rng);
      const TruncationPoint t(m, tv);
      for (int j = 0; j < m.dim(); ++j) {
        const double y = unif(rng) * t.c();
        const double a = margin_section_inv(m, j, y, t);
        EXPECT_NEAR(margin_section(m, j, a, t), y, 1e-12) << m.kind();
        EXPECT_NEAR(margin_section_inv_bisect(m, j, y, t), a, 1e-10) << m.kind();
      }
    }
  }
}

TEST(Truncation, TruncatedCdfExamples) {
  const CopulaModel cl = Archimedean(Generator(Family::Clayton, 2.0), 2);
  const TruncationPoint t(cl, {0.5, 0.5});
  EXPECT_NEAR(truncated_cdf(cl, t, Vec{0.5, 0.25}), std::sqrt(7.0 / 19.0), 1e-14);
  EXPECT_NEAR(truncated_cdf(cl, t, Vec{0.5, 0.5}), 1.0, 1e-15);
  EXPECT_NEAR(truncated_cdf(cl, t, Vec{0.9, 0.7}), 1.0, 1e-15);
  const CopulaModel ind = Independence(2);
  EXPECT_NEAR(truncated_cdf(ind, TruncationPoint(ind, {0.5, 0.5}), Vec{0.25, 0.25}), 0.25, 1e-15);
  const auto tc = truncate_general(cl, t);
  EXPECT_NEAR(tc.margin_cdf(1, 0.25), std::sqrt(7.0 / 19.0), 1e-14);
  EXPECT_NEAR(tc.margin_quantile(1, std::sqrt(7.0 / 19.0)), 0.25, 1e-12);
}

TEST(Truncation, PointValidation) {
  const CopulaModel mo = MarshallOlkin2(0.2, 0.7);
  EXPECT_THROW(TruncationPoint(mo, {0.5}), std::invalid_argument);
  EXPECT_THROW(TruncationPoint(mo, {0.0, 0.5}), std::domain_error);
  EXPECT_THROW(TruncationPoint(mo, {1.2, 0.5}), std::domain_error);
  EXPECT_TRUE(TruncationPoint(mo, {1.0, 1.0}).is_one());
}

TEST(Truncation, Dispatch) {
  const CopulaModel ind = Independence(3);
  const CopulaModel com = Comonotone(2);
  const CopulaModel cl = Archimedean(Generator(Family::Clayton, 2.0), 2);
  const CopulaModel mo = MarshallOlkin2(0.2, 0.7);
  const CopulaModel sg = survival(Archimedean(Generator(Family::Gumbel, 2.0), 2));
  const CopulaModel prod = NestedArchimedean(Generator(), {{Generator(Family::Clayton, 2.0), 2}, {Generator(Family::Joe, 2.0), 2}});
  EXPECT_EQ(truncate_general(ind, TruncationPoint(ind, {0.2, 0.3, 0.9})).form_name(), "same");
  EXPECT_EQ(truncate_general(com, TruncationPoint(com, {0.2, 0.3})).form_name(), "same");
  EXPECT_EQ(truncate_general(cl, TruncationPoint(cl, {0.2, 0.3})).form_name(), "tilted-archimedean");
  EXPECT_EQ(truncate_general(mo, TruncationPoint(mo, {0.2, 0.3})).form_name(), "truncated-mo");
  EXPECT_EQ(truncate_general(sg, TruncationPoint(sg, {0.2, 0.3})).form_name(), "numeric");
  EXPECT_EQ(truncate_general(prod, TruncationPoint(prod, {0.2, 0.3, 0.5, 0.5})).form_name(), "product-of-blocks");
  const auto nc = nested_clayton();
  EXPECT_EQ(truncate_general(nc, TruncationPoint(nc, {0.2, 0.3, 0.5})).form_name(), "truncated-nested");
}

TEST(Truncation, IndependenceAndComonotoneAreClosed) {
  const CopulaModel ind = Independence(2);
  const CopulaModel com = Comonotone(2);
  const auto ti = truncate_general(ind, TruncationPoint(ind, {0.3, 0.7}));
  const auto tc = truncate_general(com, TruncationPoint(com, {0.3, 0.7}));
  const auto ni = truncate_numeric(ind, TruncationPoint(ind, {0.3, 0.7}));
  const auto nc = truncate_numeric(com, TruncationPoint(com, {0.3, 0.7}));
  for (double a : grid(10))
    for (double b : grid(10)) {
      EXPECT_NEAR(ti.cdf(Vec{a, b}), a * b, 1e-15);
      EXPECT_NEAR(ni.cdf(Vec{a, b}), a * b, 1e-10);
      EXPECT_NEAR(tc.cdf(Vec{a, b}), std::min(a, b), 1e-15);
      EXPECT_NEAR(nc.cdf(Vec{a, b}), std::min(a, b), 1e-10);
    }
}

TEST(Truncation, ClaytonIsClosed) {
  const CopulaModel cl = Archimedean(Generator(Family::Clayton, 2.0), 2);
  const auto tc = truncate_general(cl, TruncationPoint(cl, {0.5, 0.5}));
  const auto* f = std::get_if<TiltedArchimedeanForm>(&tc.closed_form());
  ASSERT_NE(f, nullptr);
  EXPECT_NEAR(f->gen.tilt(), 6.0, 1e-13);
  for (double a : grid(20))
    for (double b : grid(20)) EXPECT_NEAR(tc.cdf(Vec{a, b}), clayton_cdf(2.0, {a, b}), 1e-14);
}

TEST(Truncation, UntruncatedEqualsModel) {
  const std::vector<CopulaModel> models = {Archimedean(Generator(Family::Frank, 5.0), 2), MarshallOlkin2(0.2, 0.7),
                                           survival(Archimedean(Generator(Family::Gumbel, 2.0), 2))};
  for (const auto& m : models) {
    const auto tc = truncate_general(m, TruncationPoint(m, {1.0, 1.0}));
    for (double a : grid(10))
      for (double b : grid(10)) EXPECT_NEAR(tc.cdf(Vec{a, b}), cdf(m, Vec{a, b}), 1e-10) << m.kind();
  }
  const auto nc = nested_clayton();
  const auto tn = truncate_general(nc, TruncationPoint(nc, {1, 1, 1}));
  for (double a : grid(5))
    for (double b : grid(5))
      for (double c : grid(5)) EXPECT_NEAR(tn.cdf(Vec{a, b, c}), cdf(nc, Vec{a, b, c}), 1e-12);
}

TEST(Truncation, TiltedFormMatchesGeneralFormula) {
  const std::vector<Generator> gens = {Generator(Family::AMH, 0.7), Generator(Family::Frank, 4.0),
                                       Generator(Family::Gumbel, 2.0), Generator(Family::Joe, 2.0)};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.01, 0.99);
  for (const auto& g : gens) {
    const CopulaModel m = Archimedean(g, 2);
    const TruncationPoint t(m, {0.3, 0.8});
    const auto tc = truncate_general(m, t);
    const auto tg = std::get<TiltedArchimedeanForm>(tc.closed_form()).gen;
    for (int k = 0; k < 200; ++k) {
      const Vec u = {unif(rng), unif(rng)};
      const double closed = tc.cdf(u);
      EXPECT_NEAR(closed, tc.cdf_general(u, InverseMethod::Bisection), 1e-10) << to_string(g.family());
      EXPECT_NEAR(closed, tg.psi(tg.psi_inv(u[0]) + tg.psi_inv(u[1])), 1e-12);
      // Exchangeable even though t1 != t2.
      EXPECT_NEAR(closed, tc.cdf(Vec{u[1], u[0]}), 1e-12);
    }
  }
}

TEST(Truncation, CopulaAxioms) {
  const auto nc = nested_gumbel();
  const std::vector<std::pair<CopulaModel, Vec>> cases = {
      {Archimedean(Generator(Family::Joe, 2.0), 3), {0.4, 0.9, 0.6}},
      {MarshallOlkin2(0.2, 0.7), {0.5, 0.8}},
      {MarshallOlkin2(0.2, 0.7), {0.6, 0.9}},
      {nc, {0.2, 0.5, 0.5}},
      {survival(Archimedean(Generator(Family::Gumbel, 2.0), 2)), {0.3, 0.7}}};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const auto& [m, tv] : cases) {
    const auto tc = truncate_general(m, TruncationPoint(m, tv));
    const int d = m.dim();
    for (double x : grid(20)) {
      for (int j = 0; j < d; ++j) {
        Vec u(static_cast<std::size_t>(d), 1.0);
        u[static_cast<std::size_t>(j)] = x;
        EXPECT_NEAR(tc.cdf(u), x, 1e-9) << m.kind();
        u[static_cast<std::size_t>((j + 1) % d)] = 0.0;
        EXPECT_NEAR(tc.cdf(u), 0.0, 1e-15) << m.kind();
      }
    }
    const int boxes = d == 2 ? 2000 : 500;
    for (int k = 0; k < boxes; ++k) {
      Vec lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j) {
        const double a = unif(rng), b = unif(rng);
        lo[static_cast<std::size_t>(j)] = std::min(a, b);
        hi[static_cast<std::size_t>(j)] = std::max(a, b);
      }
      double vol = 0.0;
      for (int mask = 0; mask < (1 << d); ++mask) {
        Vec v(static_cast<std::size_t>(d));
        int lows = 0;
        for (int j = 0; j < d; ++j) {
          const bool low = mask & (1 << j);
          lows += low;
          v[static_cast<std::size_t>(j)] = low ? lo[static_cast<std::size_t>(j)] : hi[static_cast<std::size_t>(j)];
        }
        vol += (lows % 2 ? -1.0 : 1.0) * tc.cdf(v);
      }
      EXPECT_GE(vol, -1e-12) << m.kind();
    }
  }
}

TEST(Nested, SpecialCases) {
  const Generator cl(Family::Clayton, 2.0);
  const CopulaModel same = NestedArchimedean(cl, {{cl, 1}, {cl, 2}});
  const CopulaModel flat = Archimedean(cl, 3);
  const auto ts = truncate_general(same, TruncationPoint(same, {0.5, 0.5, 0.5}));
  const auto tf = truncate_general(flat, TruncationPoint(flat, {0.5, 0.5, 0.5}));
  ASSERT_EQ(ts.form_name(), "truncated-nested");
  for (double a : grid(6))
    for (double b : grid(6))
      for (double c : grid(6)) EXPECT_NEAR(ts.cdf(Vec{a, b, c}), tf.cdf(Vec{a, b, c}), 1e-10);

  const Generator g1(Family::Clayton, 2.0), g2(Family::Gumbel, 3.0);
  const CopulaModel prod = NestedArchimedean(Generator(), {{g1, 2}, {g2, 2}});
  const Vec tv = {0.3, 0.6, 0.8, 0.4};
  const auto tp = truncate_general(prod, TruncationPoint(prod, tv));
  const auto tn = truncate_nested(std::get<NestedArchimedean>(prod.variant()), TruncationPoint(prod, tv));
  const CopulaModel b1 = Archimedean(g1, 2), b2 = Archimedean(g2, 2);
  const auto t1 = truncate_general(b1, TruncationPoint(b1, {0.3, 0.6}));
  const auto t2 = truncate_general(b2, TruncationPoint(b2, {0.8, 0.4}));
  for (double a : grid(5))
    for (double b : grid(5))
      for (double c : grid(5))
        for (double d : grid(5)) {
          const double expected = t1.cdf(Vec{a, b}) * t2.cdf(Vec{c, d});
          EXPECT_NEAR(tp.cdf(Vec{a, b, c, d}), expected, 1e-12);
          EXPECT_NEAR(tn.cdf(Vec{a, b, c, d}), expected, 1e-10);
        }
}

TEST(Nested, OuterPowerStack) {
  const Generator base(Family::Clayton, 1.5);
  const CopulaModel m = NestedArchimedean(outer_power(base, 0.8), {{outer_power(base, 0.8), 1}, {outer_power(base, 0.4), 2}});
  const auto tc = truncate_general(m, TruncationPoint(m, {0.3, 0.7, 0.5}));
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unif(0.01, 0.99);
  for (int k = 0; k < 200; ++k) {
    const Vec u = {unif(rng), unif(rng), unif(rng)};
    EXPECT_NEAR(tc.cdf(u), tc.cdf_general(u, InverseMethod::Bisection), 1e-10);
  }
}

TEST(Nested, Margins) {
  const auto m = nested_clayton();
  const TruncationPoint t(m, {0.2, 0.5, 0.5});
  const auto tc = truncate_general(m, t);
  const auto& f = std::get<TruncatedNestedForm>(tc.closed_form());
  const TiltedGenerator cross(Generator(Family::Clayton, 2.0), f.h0);
  for (double x : grid(20)) {
    for (int j = 0; j < 3; ++j) {
      Vec u = {1, 1, 1};
      u[static_cast<std::size_t>(j)] = x;
      EXPECT_NEAR(tc.cdf(u), x, 1e-10);
    }
    EXPECT_NEAR(nested_biv_margin(tc, 0, 1, 1.0, x), x, 1e-12);
    for (double y : grid(20)) {
      const double expected = cross.psi(cross.psi_inv(x) + cross.psi_inv(y));
      EXPECT_NEAR(nested_biv_margin(tc, 0, 1, x, y), expected, 1e-10);
      EXPECT_NEAR(tc.cdf(Vec{x, y, 1.0}), expected, 1e-10);
      EXPECT_NEAR(nested_biv_margin(tc, 1, 2, x, y), tc.cdf(Vec{1.0, x, y}), 1e-10);
    }
  }
  // The same-sector margin is not the truncation of the sector's own copula.
  const CopulaModel sector = Archimedean(Generator(Family::Clayton, 6.0), 2);
  const auto ts = truncate_general(sector, TruncationPoint(sector, {0.5, 0.5}));
  double gap = 0.0;
  for (double x : grid(10))
    for (double y : grid(10)) gap = std::max(gap, std::abs(nested_biv_margin(tc, 1, 2, x, y) - ts.cdf(Vec{x, y})));
  EXPECT_GT(gap, 1e-6);
  EXPECT_THROW(nested_biv_margin(tc, 1, 1, 0.5, 0.5), std::invalid_argument);
}

TEST(MarshallOlkin, CaseTwoMatchesNumeric) {
  const CopulaModel m = MarshallOlkin2(0.2, 0.7);
  const TruncationPoint t(m, {0.6, 0.9});
  const auto tc = truncate_general(m, t);
  const auto& f = std::get<TruncatedMOForm>(tc.closed_form());
  EXPECT_FALSE(f.case1);
  EXPECT_NEAR(tc.cdf(Vec{0.5, 0.5}), tc.cdf_general(Vec{0.5, 0.5}, InverseMethod::Bisection), 1e-10);
  EXPECT_NEAR(t.c(), mo_cdf(0.2, 0.7, 0.6, 0.9), 1e-15);
}

TEST(MarshallOlkin, CaseOneClosedForm) {
  const CopulaModel m = MarshallOlkin2(0.2, 0.7);
  const TruncationPoint t(m, {0.5, 0.8});
  const auto tc = truncate_general(m, t);
  const auto& f = std::get<TruncatedMOForm>(tc.closed_form());
  EXPECT_TRUE(f.case1);
  EXPECT_NEAR(t.c(), std::min(std::pow(0.5, 0.8) * 0.8, 0.5 * std::pow(0.8, 0.3)), 1e-15);
  EXPECT_NEAR(f.breakpoint, std::pow(std::pow(0.8, 0.7) / std::pow(0.5, 0.2), 0.8 / 0.2), 1e-14);
  for (double a : grid(25))
    for (double b : grid(25)) EXPECT_NEAR(tc.cdf(Vec{a, b}), tc.cdf_general(Vec{a, b}, InverseMethod::Bisection), 1e-10);
}

TEST(MarshallOlkin, EqualThresholdLimit) {
  const CopulaModel m = MarshallOlkin2(0.2, 0.7);
  const auto tc = truncate_general(m, TruncationPoint(m, {1e-4, 1e-4}));
  double dev = 0.0;
  for (double a : grid(20))
    for (double b : grid(20)) dev = std::max(dev, std::abs(tc.cdf(Vec{a, b}) - a * b));
  EXPECT_LT(dev, 5e-3);
}

TEST(MarshallOlkin, SingularCurve) {
  const CopulaModel m = MarshallOlkin2(0.2, 0.7);
  const auto tc = truncate_general(m, TruncationPoint(m, {0.5, 0.8}));
  for (double u1 : {0.1, 0.3, 0.6}) {
    const auto u2 = tc.singular_curve(u1);
    ASSERT_TRUE(u2.has_value());
    // The two branches of the minimum meet on the curve.
    const double h = 1e-7;
    const double left = (tc.cdf(Vec{u1, *u2}) - tc.cdf(Vec{u1 - h, *u2})) / h;
    const double right = (tc.cdf(Vec{u1 + h, *u2}) - tc.cdf(Vec{u1, *u2})) / h;
    EXPECT_GT(std::abs(left - right), 1e-3) << u1;
  }
}

TEST(Survival, Identities) {
  const CopulaModel ind = survival(Independence(2));
  const CopulaModel sg = Archimedean(Generator(Family::Gumbel, 2.0), 2);
  const CopulaModel ssg = survival(survival(sg));
  for (double a : grid(10))
    for (double b : grid(10)) {
      EXPECT_NEAR(cdf(ind, Vec{a, b}), a * b, 1e-15);
      EXPECT_NEAR(cdf(ssg, Vec{a, b}), cdf(sg, Vec{a, b}), 1e-12);
    }
  const Generator g(Family::Gumbel, 2.0);
  const double expected = -1.0 + 0.3 + 0.6 + g.psi(g.psi_inv(0.7) + g.psi_inv(0.4));
  EXPECT_NEAR(cdf(survival(sg), Vec{0.3, 0.6}), expected, 1e-15);
  EXPECT_THROW(survival(Independence(3)), UnsupportedError);
}

TEST(Survival, EqualThresholdExchangeable) {
  const CopulaModel m = survival(Archimedean(Generator(Family::Gumbel, 2.0), 2));
  const auto tc = truncate_general(m, TruncationPoint(m, {0.4, 0.4}));
  for (double a : grid(10))
    for (double b : grid(10)) EXPECT_NEAR(tc.cdf(Vec{a, b}), tc.cdf(Vec{b, a}), 1e-10);
}

TEST(EvScaling, MarshallOlkin) {
  const MarshallOlkin2 m(0.2, 0.7);
  const Vec g = grid(20);
  EXPECT_EQ(ev_scaling_check(m, Vec{0.25, 0.49}, 1.0, g), 0.0);
  EXPECT_LE(ev_scaling_check(m, Vec{1.0, 1.0}, 2.0, g), 1e-12);
  EXPECT_LE(ev_scaling_check(m, Vec{0.25, 0.49}, 0.5, g), 1e-9);
  EXPECT_LE(ev_scaling_check(m, Vec{0.3, 0.9}, 2.0, g), 1e-9);
}

}  // namespace
}  // namespace trunca
