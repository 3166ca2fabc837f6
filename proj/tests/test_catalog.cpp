#include <gtest/gtest.h>

#include "test_support.hpp"

namespace qhc {
namespace {

using testing::Gen;
using testing::M;
using testing::X;
using testing::Y;

/// Admissible parameter classes over the half-integer n grid with random triples.
std::vector<ParamClass> sampled_classes(Gen& gen, int per_n) {
  std::vector<ParamClass> out;
  for (int twice = 1; twice <= 8; ++twice) {
    const Rational n(twice, 2);
    for (int t = 0; t < per_n; ++t) {
      Rational g = gen.rational(), f = gen.rational(), e = gen.rational();
      if (!n.is_integer()) g = f = Rational(0);
      if (g.is_zero() && f.is_zero() && e.is_zero()) e = Rational(1);
      out.push_back(ParamClass::type_I(n, g, f, e));
      if (n >= Rational(5, 2)) {
        out.push_back(ParamClass::type_II0(n, g, f, e));
        out.push_back(ParamClass::type_II1(n, g, f, e));
      }
    }
  }
  for (int t = 0; t < per_n; ++t) {
    const Rational g = gen.nonzero_rational();
    out.push_back(ParamClass::type_III(g, gen.rational()));
    out.push_back(ParamClass::type_I(1, g, -g, -g * g));
  }
  out.push_back(ParamClass::type_II0(2, 1, 2, 5));
  out.push_back(ParamClass::flat());
  out.push_back(ParamClass::example());
  return out;
}

TEST(NormalForm, Examples) {
  const Connection c = make_normal_form(ParamClass::type_I(2, Rational(3, 4), Rational(-3, 4), Rational(-3, 4)));
  EXPECT_TRUE(c.symbol(0).is_zero());
  EXPECT_TRUE(c.symbol(1).is_zero());
  EXPECT_EQ(c.symbol(2), M(Rational(-3, 4), 2));
  EXPECT_TRUE(c.symbol(3).is_zero());
  EXPECT_EQ(c.symbol(4), M(Rational(3, 8), 5));
  EXPECT_EQ(c.symbol(5), M(Rational(3, 4), 2));
  EXPECT_EQ(c, make_example_torus());
  EXPECT_THROW(make_normal_form(ParamClass::type_I(Rational(1, 2), 1, 0, 1)), InvalidParams);
  EXPECT_TRUE(make_normal_form(ParamClass::flat()).is_flat());
}

TEST(NormalForm, ValidationNamesTheConstraint) {
  auto message = [](const ParamClass& p) {
    try {
      validate(p);
    } catch (const InvalidParams& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(ParamClass::type_I(Rational(1, 3), 0, 0, 1)).find("half-integer"), std::string::npos);
  EXPECT_NE(message(ParamClass::type_I(0, 0, 0, 1)).find("n >= 1/2"), std::string::npos);
  EXPECT_NE(message(ParamClass::type_II0(2, 1, 0, 1)).find("5/2"), std::string::npos);
  EXPECT_NE(message(ParamClass::type_I(Rational(3, 2), 0, 1, 1)).find("must vanish"), std::string::npos);
  EXPECT_NE(message(ParamClass::type_I(2, 0, 0, 0)).find("not all vanish"), std::string::npos);
  EXPECT_NE(message(ParamClass::type_III(0, 0)).find("not both vanish"), std::string::npos);
  EXPECT_EQ(message(ParamClass::type_II1(Rational(5, 2), 0, 0, 1)), "");
}

TEST(NormalForm, ExceptionalCasesWarnButBuild) {
  const ParamClass hom = ParamClass::type_I(1, 2, -2, -4);
  EXPECT_EQ(warnings(hom).size(), 1u);
  EXPECT_NO_THROW(make_normal_form(hom));
  EXPECT_EQ(warnings(ParamClass::type_II0(2, 1, 2, 5)).size(), 1u);
  EXPECT_TRUE(warnings(ParamClass::type_I(1, 2, -2, -3)).empty());
}

TEST(NormalForm, TypeTwoBasepoints) {
  EXPECT_EQ(ParamClass::type_II1(3, 1, 0, 0).basepoint(), std::make_pair(Rational(0), Rational(1)));
  EXPECT_EQ(ParamClass::type_II0(3, 1, 0, 0).basepoint(), std::make_pair(Rational(0), Rational(0)));
  EXPECT_EQ(make_normal_form(ParamClass::type_II0(3, 1, 2, 3)), make_normal_form(ParamClass::type_II1(3, 1, 2, 3)));
}

TEST(ExampleTorus, FrameIdentities) {
  const Connection c = make_example_torus();
  const auto [A, Z, h] = example_frame();
  const PuiseuxPoly k = h * h + Rational(2) * h;
  EXPECT_EQ(covariant_derivative(c, A, A), Rational(1, 2) * A + (Rational(3, 4) * k) * Z);
  EXPECT_EQ(covariant_derivative(c, Z, Z), Rational(-1, 4) * Z);
  EXPECT_TRUE(is_killing(c, A));
  for (const auto& [name, ok] : verify_example_torus()) EXPECT_TRUE(ok) << name;
}

TEST(ExampleTorus, OnlyOneSignChoiceSatisfiesTheFrameIdentities) {
  const Rational q(3, 4);
  int matches = 0;
  for (int sg : {-1, 1})
    for (int sf : {-1, 1})
      for (int se : {-1, 1}) {
        const Connection c = make_normal_form(ParamClass::type_I(2, sg * q, sf * q, se * q));
        const auto [A, Z, h] = example_frame();
        const PuiseuxPoly k = h * h + Rational(2) * h;
        const bool ok = covariant_derivative(c, A, Z) == q * A - Z && covariant_derivative(c, Z, Z) == Rational(-1, 4) * Z &&
                        covariant_derivative(c, A, A) == Rational(1, 2) * A + (q * k) * Z;
        if (ok) {
          ++matches;
          EXPECT_EQ(sg, 1);
          EXPECT_EQ(sf, -1);
          EXPECT_EQ(se, -1);
        }
      }
  EXPECT_EQ(matches, 1);
}

TEST(ExampleTorus, AlternativeSelfDerivativeFailsOnTheAxis) {
  // on y = 0 every Type I(2) normal form gives nabla_A A = (x/4) d/dx, while
  // (3/4)(h^2+2h)A + (1/4 - (3/8)(h^2+2h))Z restricts to (x/8) d/dx + (1/4)x^-2 d/dy
  Gen gen(44);
  const auto [A, Z, h] = example_frame();
  const PuiseuxPoly k = h * h + Rational(2) * h;
  const VectorField2 alt = (Rational(3, 4) * k) * A + (PuiseuxPoly(Rational(1, 4)) - Rational(3, 8) * k) * Z;
  for (int i = 0; i < 20; ++i) {
    const Connection c = make_normal_form(ParamClass::type_I(2, gen.nonzero_rational(), gen.rational(), gen.rational()));
    const VectorField2 d = covariant_derivative(c, A, A);
    const Rational x0 = gen.nonzero_rational();
    EXPECT_EQ(d.cx.eval(x0, Rational(0)), x0 / Rational(4));
    EXPECT_TRUE(d.cy.eval(x0, Rational(0)).is_zero());
    EXPECT_NE(d, alt);
  }
}

TEST(Generators, AreKillingAndCommuteWithCentralizer) {
  Gen gen(41);
  for (const ParamClass& p : sampled_classes(gen, 5)) {
    const Connection c = make_normal_form(p);
    const GeneratorSet g = generators(p);
    ASSERT_FALSE(g.killing.empty());
    for (const auto& k : g.killing) {
      EXPECT_TRUE(is_killing(c, k)) << p.str() << " " << k;
      for (const auto& z : g.centralizer) EXPECT_TRUE(vf_bracket(k, z).is_zero()) << p.str();
    }
  }
}

TEST(Generators, TableRelations) {
  const GeneratorSet one = generators(ParamClass::type_I(2, 1, 1, 1));
  const StructureConstants ab = structure_constants(one.killing);
  EXPECT_EQ(ab[0][1], (std::vector<Rational>{0, 1}));
  const StructureConstants xy = structure_constants(one.centralizer);
  EXPECT_EQ(xy[0][1], (std::vector<Rational>{0, 1}));

  const GeneratorSet two = generators(ParamClass::type_II0(3, 1, 1, 1));
  EXPECT_TRUE(vf_bracket(two.centralizer[0], two.killing[0]).is_zero());
  EXPECT_EQ(structure_constants(two.killing)[0][1], (std::vector<Rational>{0, 1}));

  const GeneratorSet three = generators(ParamClass::type_III(1, 1));
  const StructureConstants sl2 = structure_constants(three.killing);  // (x dy, y dx, x dx - y dy)
  EXPECT_EQ(sl2[0][1], (std::vector<Rational>{0, 0, 1}));
  EXPECT_EQ(sl2[2][0], (std::vector<Rational>{2, 0, 0}));
  EXPECT_EQ(sl2[2][1], (std::vector<Rational>{0, -2, 0}));
}

TEST(Generators, ExceptionalCaseHasThreeFields) {
  const GeneratorSet g = generators(ParamClass::type_I(1, 3, -3, -9));
  EXPECT_EQ(g.killing.size(), 3u);
  EXPECT_NO_THROW(structure_constants(g.killing));
  EXPECT_EQ(rank_at(g.killing, Rational(1), Rational(0)), 2u);
}

TEST(Scaling, Examples) {
  EXPECT_EQ(scale_params(ParamClass::type_I(2, 1, 0, 2), Rational(1, 2)), ParamClass::type_I(2, Rational(1, 2), 0, Rational(1, 2)));
  EXPECT_THROW(scale_params(ParamClass::type_II1(3, 1, 1, 1), Rational(-1)), InvalidScale);
  EXPECT_EQ(scale_params(ParamClass::type_III(1, 4), Rational(-1)), ParamClass::type_III(-1, 4));
  EXPECT_THROW(scale_params(ParamClass::type_III(1, 4), Rational(0)), InvalidScale);
}

TEST(Scaling, EquivalenceExamples) {
  EXPECT_TRUE(equivalent_params(ParamClass::type_I(2, 1, 0, 2), ParamClass::type_I(2, 2, 0, 8)));
  EXPECT_EQ(*equivalence_scale(ParamClass::type_I(2, 1, 0, 2), ParamClass::type_I(2, 2, 0, 8)), Rational(2));
  EXPECT_FALSE(equivalent_params(ParamClass::type_I(2, 1, 0, 2), ParamClass::type_I(2, 1, 0, 3)));
  EXPECT_FALSE(equivalent_params(ParamClass::type_I(Rational(1, 2), 0, 0, 1), ParamClass::type_I(Rational(1, 2), 0, 0, -1)));
  EXPECT_TRUE(equivalent_params(ParamClass::type_I(Rational(1, 2), 0, 0, 1), ParamClass::type_I(Rational(1, 2), 0, 0, 4)));
  EXPECT_FALSE(equivalent_params(ParamClass::type_II1(3, 1, 1, 1), ParamClass::type_II1(3, -1, -1, 1)));
  EXPECT_TRUE(equivalent_params(ParamClass::type_II0(3, 1, 1, 1), ParamClass::type_II0(3, -1, -1, 1)));
  EXPECT_THROW(equivalent_params(ParamClass::type_I(2, 1, 0, 0), ParamClass::type_I(3, 1, 0, 0)), FamilyMismatch);
  EXPECT_THROW(equivalent_params(ParamClass::type_I(3, 1, 0, 0), ParamClass::type_II0(3, 1, 0, 0)), FamilyMismatch);
}

TEST(Scaling, ScaledConnectionsArePullbacksByLinearMaps) {
  // on Type III the linear map (x, y) -> (x, mu y) takes III(gamma, eps) to III(mu gamma, mu^2 eps)
  Gen gen(42);
  for (int i = 0; i < 10; ++i) {
    const ParamClass p = ParamClass::type_III(gen.nonzero_rational(), gen.rational());
    const Rational mu = gen.nonzero_rational();
    const MonoTriMap lin(1, 1, mu, 0, PuiseuxPoly());
    EXPECT_EQ(pullback_connection(make_normal_form(p), lin), make_normal_form(scale_params(p, mu))) << p.str() << " mu=" << mu;
  }
}

TEST(Scaling, CanonicalizeIsIdempotentAndEquivalent) {
  Gen gen(43);
  for (const ParamClass& p : sampled_classes(gen, 3)) {
    if (p.family == Family::flat || p.family == Family::example) continue;
    const auto [q, mu] = canonicalize(p);
    EXPECT_EQ(scale_params(p, mu), q);
    EXPECT_TRUE(equivalent_params(p, q)) << p.str();
    EXPECT_EQ(canonicalize(q).first, q) << p.str();
    const Rational& lead = !q.gamma.is_zero() ? q.gamma : q.phi;
    if (!lead.is_zero()) {
      EXPECT_EQ(abs(lead), Rational(1));
      if (p.family != Family::II1) {
        EXPECT_EQ(lead, Rational(1));
      }
    } else {
      EXPECT_TRUE(q.epsilon.is_integer()) << q.str();
    }
  }
}

TEST(Scaling, CanonicalFormsSeparateClasses) {
  Gen gen(44);
  const auto classes = sampled_classes(gen, 3);
  for (size_t i = 0; i < classes.size(); ++i)
    for (size_t j = 0; j < classes.size(); ++j) {
      const ParamClass &p = classes[i], &q = classes[j];
      if (p.family != q.family || p.n != q.n || p.family == Family::flat || p.family == Family::example) continue;
      EXPECT_EQ(equivalent_params(p, q), canonicalize(p).first == canonicalize(q).first) << p.str() << " vs " << q.str();
      EXPECT_EQ(equivalent_params(p, q), equivalent_params(q, p));
    }
}

TEST(Scaling, EquivalenceIsTransitive) {
  Gen gen(45);
  for (int i = 0; i < 30; ++i) {
    const ParamClass p = ParamClass::type_I(3, gen.rational(), gen.rational(), gen.nonzero_rational());
    const ParamClass q = scale_params(p, gen.nonzero_rational()), r = scale_params(q, gen.nonzero_rational());
    EXPECT_TRUE(equivalent_params(p, p));
    EXPECT_TRUE(equivalent_params(p, q));
    EXPECT_TRUE(equivalent_params(q, r));
    EXPECT_TRUE(equivalent_params(p, r));
  }
}

TEST(Scaling, JetDimensionIsScaleInvariant) {
  for (const ParamClass& p : {ParamClass::type_I(2, 1, 1, 1), ParamClass::type_I(1, 1, -1, -1), ParamClass::type_II1(3, 1, 2, 1)})
    for (const Rational& mu : {Rational(2), Rational(1, 3), Rational(-1)}) {
      if (p.family == Family::II1 && mu.sign() < 0) continue;
      const unsigned base = jet_killing_dimension(make_normal_form(p), Rational(1), Rational(0), 4).final_dim;
      EXPECT_EQ(jet_killing_dimension(make_normal_form(scale_params(p, mu)), Rational(1), Rational(0), 4).final_dim, base);
    }
}

TEST(CurvatureLocus, Examples) {
  EXPECT_TRUE(curvature_locus_is_axis(make_example_torus()));
  EXPECT_FALSE(curvature_locus_is_axis(Connection::flat()));
  EXPECT_TRUE(curvature_locus_is_axis(make_normal_form(ParamClass::type_II0(3, 0, 0, 1))));
}

TEST(Family, StringRoundTrip) {
  for (Family f : {Family::I, Family::II0, Family::II1, Family::III, Family::flat, Family::example})
    EXPECT_EQ(family_from_string(to_string(f)), f);
  EXPECT_THROW(family_from_string("IV"), std::invalid_argument);
}

}  // namespace
}  // namespace qhc
