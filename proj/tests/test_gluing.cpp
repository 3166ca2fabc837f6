#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

namespace qhc {
namespace {

using testing::Gen;
using testing::M;
using testing::X;
using testing::Y;

ParamClass with_family(Family f, long long n, const Rational& g, const Rational& p, const Rational& e) {
  switch (f) {
    case Family::I: return ParamClass::type_I(n, g, p, e);
    case Family::II0: return ParamClass::type_II0(n, g, p, e);
    default: return ParamClass::type_II1(n, g, p, e);
  }
}

TEST(Builtins, Values) {
  EXPECT_EQ(builtin_map("sigma"), MonoTriMap(-1, 1, 1, 0, PuiseuxPoly()));
  EXPECT_EQ(builtin_map("psi2", 2), MonoTriMap(1, Rational(-1, 2), 1, 0, PuiseuxPoly(-1)));
  EXPECT_EQ(builtin_map("example_sigma"), MonoTriMap(-1, 1, -1, 0, M(-2, -2)));
  EXPECT_EQ(builtin_map("psi1", 3), MonoTriMap(1, Rational(-1, 3), 1, Rational(-1, 3), PuiseuxPoly()));
  EXPECT_THROW(builtin_map("psi1", 1), InvalidN);
  EXPECT_THROW(builtin_map("tau"), std::invalid_argument);
  EXPECT_EQ(chart_map(4), builtin_map("psi2", 4));
  EXPECT_EQ(chart_map(5), builtin_map("psi1", 5));
}

TEST(Builtins, InvolutionsSquareToIdentity) {
  for (const char* name : {"sigma", "rho", "beta", "example_sigma"})
    EXPECT_TRUE(map_compose(builtin_map(name), builtin_map(name)).is_identity()) << name;
}

TEST(FrameCheck, Cases) {
  EXPECT_TRUE(frame_pushforward_check(3, 1));
  EXPECT_TRUE(frame_pushforward_check(2, 2));
  for (long long n = 2; n <= 7; ++n) EXPECT_TRUE(frame_pushforward_check(n, n % 2 ? 1 : 2)) << n;
  EXPECT_THROW(frame_pushforward_check(2, 1), InvalidN);
  EXPECT_THROW(frame_pushforward_check(3, 2), InvalidN);
  EXPECT_THROW(frame_pushforward_check(1, 1), InvalidN);
}

TEST(Reflections, SigmaIsometryParity) {
  Gen gen(61);
  for (long long n = 2; n <= 5; ++n)
    for (int t = 0; t < 3; ++t) {
      const Rational g = gen.nonzero_rational(), p = gen.rational(), e = gen.rational();
      EXPECT_EQ(is_isometry(make_normal_form(ParamClass::type_I(n, g, p, e)), builtin_map("sigma")), n % 2 == 0) << n;
      if (n >= 3)
        EXPECT_EQ(is_isometry(make_normal_form(ParamClass::type_II0(n, g, p, e)), builtin_map("sigma")), n % 2 == 1) << n;
    }
}

TEST(Reflections, FactorTableMatchesPullbacks) {
  Gen gen(62);
  for (Family f : {Family::I, Family::II0, Family::II1})
    for (long long n = f == Family::I ? 2 : 3; n <= 5; ++n)
      for (Reflection r : {Reflection::sigma, Reflection::rho, Reflection::sigma_rho})
        for (int t = 0; t < 3; ++t) {
          const Rational g = gen.nonzero_rational(), p = gen.rational(), e = gen.rational();
          const auto factor = reflection_factor(f, n, r);
          if (f == Family::II1 && r != Reflection::sigma) {
            EXPECT_FALSE(factor.has_value());
            continue;
          }
          ASSERT_TRUE(factor.has_value());
          const Connection pulled = pullback_connection(make_normal_form(with_family(f, n, g, p, e)), reflection_map(r));
          const Rational mu(*factor);
          // the II1 symbols coincide with II0; a negative factor leaves the II1 scaling class, so compare symbols
          const Family target = f == Family::II1 ? Family::II0 : f;
          EXPECT_EQ(pulled, make_normal_form(with_family(target, n, mu * g, mu * p, e)))
              << to_string(f) << " n=" << n << " r=" << static_cast<int>(r);
        }
}

TEST(Reflections, RhoMovesTheTypeTwoBasepoint) {
  const auto [x0, y0] = ParamClass::type_II1(3, 1, 0, 0).basepoint();
  const MonoTriMap rho = builtin_map("rho");
  EXPECT_EQ(rho.component2().eval(x0, y0), Rational(-1));
  EXPECT_NE(rho.component2().eval(x0, y0), y0);
  EXPECT_THROW(reflection_factor(Family::III, 2, Reflection::sigma), FamilyMismatch);
}

TEST(Atlas, Construction) {
  const Atlas a = build_model_atlas(2, 2, 1);
  EXPECT_EQ(a.model, (LeftInvariantConnection{Rational(-1, 2), 0, Rational(-3, 2), 1, -3, Rational(3, 2)}));
  EXPECT_EQ(a.charts.size(), 3u);
  EXPECT_EQ(a.chart(1).params, ParamClass::type_I(2, Rational(-3, 2), Rational(3, 2), -3));

  const Atlas b = build_model_atlas(2, 3, 1);
  EXPECT_EQ(b.chart(1).params.family, Family::I);
  EXPECT_EQ(b.chart(0).params.family, Family::II1);
  EXPECT_EQ(b.chart(-1).params.family, Family::I);
  EXPECT_THROW(build_model_atlas(1, 2, 1), InvalidN);
  EXPECT_THROW(build_model_atlas(2, 2, 0), std::invalid_argument);
  EXPECT_THROW(b.chart(7), std::out_of_range);
}

TEST(Atlas, ChartsCarryTheTransportedModel) {
  // chart connections are the left-invariant connection pushed through the chart maps, along two routes
  for (long long n1 = 2; n1 <= 4; ++n1)
    for (long long n2 = 2; n2 <= 4; ++n2) {
      const Atlas a = build_model_atlas(n1, n2, 1);
      const Connection plane = to_plane_connection(a.model);
      EXPECT_EQ(pullback_connection(plane, map_invert(chart_map(n1))), a.chart(1).conn);
      const Connection across = pullback_connection(pullback_connection(plane, builtin_map("beta")), map_invert(chart_map(n2)));
      EXPECT_EQ(across, a.chart(0).conn);
      EXPECT_EQ(pullback_connection(to_plane_connection(act_automorphism(a.model, -1, -1)), map_invert(chart_map(n2))),
                a.chart(0).conn);
    }
}

TEST(Atlas, VerifiesOverTheGrid) {
  for (long long n1 = 2; n1 <= 4; ++n1)
    for (long long n2 = 2; n2 <= 4; ++n2)
      for (int w : {1, 2}) {
        const AtlasVerdict v = verify_atlas(build_model_atlas(n1, n2, w));
        EXPECT_TRUE(v.ok) << n1 << "," << n2 << " w=" << w;
        EXPECT_FALSE(v.first_failure.has_value());
        EXPECT_EQ(v.checks.size(), static_cast<size_t>(4 * w + 1));
      }
}

TEST(Atlas, ReflectionReplacementIsDetected) {
  Atlas a = build_model_atlas(2, 2, 1);
  ASSERT_TRUE(verify_atlas(a).ok);
  for (size_t i = 0; i < a.transitions.size(); ++i)
    if (a.transitions[i].label == "sigma" && a.transitions[i].from == 1) {
      a.transitions[i].word = {builtin_map("rho")};
      a.transitions[i].label = "rho";
      const AtlasVerdict v = verify_atlas(a);
      EXPECT_FALSE(v.ok);
      ASSERT_TRUE(v.first_failure.has_value());
      EXPECT_EQ(*v.first_failure, i);
      return;
    }
  FAIL() << "no sigma transition on chart 1";
}

TEST(Atlas, WrongModelFails) {
  Atlas a = build_model_atlas(3, 3, 1);
  a.charts[0].conn = make_normal_form(scale_params(a.charts[0].params, 2));
  EXPECT_FALSE(verify_atlas(a).ok);
}

TEST(Continuation, Factors) {
  const auto [a, b] = continuation_factors({1, 1.0, 0.0});
  EXPECT_NEAR(a, std::exp(1.0), 1e-15);
  EXPECT_NEAR(b, std::exp(1.0), 1e-15);
  const auto [c, d] = continuation_factors({2, 1.0, 0.5});
  EXPECT_NEAR(c, std::exp(1.0), 1e-15);
  EXPECT_NEAR(d, std::exp(2.5), 1e-12);
  EXPECT_THROW(continuation_factors({0, 1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(continuation_factors({1, 0.0, 0.0}), std::invalid_argument);
}

TEST(Continuation, ShiftingThetaMultipliesByTheFirstFactor) {
  Gen gen(63);
  for (int i = 0; i < 100; ++i) {
    const QuotientData q{gen.integer(1, 5), 0.05 + static_cast<double>(gen.integer(0, 100)) / 50.0,
                         static_cast<double>(gen.integer(-100, 100)) / 37.0};
    const auto [e1, f] = continuation_factors(q);
    const auto [e1b, g] = continuation_factors({q.k, q.tau, q.theta + 1});
    EXPECT_NEAR(g / (e1 * f), 1.0, 1e-12);
    EXPECT_EQ(e1, e1b);
  }
}

}  // namespace
}  // namespace qhc
