#include <gtest/gtest.h>

#include <random>

#include "hecke/cartan_types.hpp"
#include "hecke/realization.hpp"

using namespace hecke;

namespace {

struct System {
  std::unique_ptr<CoxeterGroup> group;
  std::unique_ptr<HeckeAlgebra> hecke;
  std::unique_ptr<RealizationRing> ring;
  explicit System(const std::string& type) {
    NamedType nt = named_type(type);
    group = std::make_unique<CoxeterGroup>(nt.cartan, nt.names);
    hecke = std::make_unique<HeckeAlgebra>(*group);
    ring = std::make_unique<RealizationRing>(*group, Realization::standard(nt.cartan));
  }
  ElementId el(const Word& w) const { return group->from_word(w); }
};

GradedPolynomial random_poly(std::mt19937& rng, std::size_t nvars, int max_deg) {
  std::uniform_int_distribution<int> c(-4, 4), e(0, max_deg);
  GradedPolynomial p(nvars);
  for (int k = 0; k < 4; ++k) {
    GradedPolynomial t = GradedPolynomial::constant(nvars, c(rng));
    int d = e(rng);
    std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
    for (int i = 0; i < d; ++i) t *= GradedPolynomial::variable(nvars, var(rng));
    p += t;
  }
  return p;
}

}  // namespace

TEST(Realization, DefaultsAreSurjectiveAndMatchCartan) {
  for (std::string type : {"A1", "A2", "A3", "B2", "B3", "C3", "G2", "F4", "D4", "C~2", "A~2"}) {
    NamedType nt = named_type(type);
    Realization r = Realization::standard(nt.cartan);
    EXPECT_NO_THROW(r.validate(nt.cartan)) << type;
  }
  // the root lattice alone fails for A1: the coroot (2) is not primitive
  EXPECT_EQ(Realization::standard(named_type("A1").cartan).rank, 2u);
  EXPECT_EQ(Realization::standard(named_type("A2").cartan).rank, 2u);
  Realization bad{1, {{1}}, {{2}}};
  EXPECT_THROW(bad.validate(named_type("A1").cartan), std::invalid_argument);
}

TEST(Reflect, Examples) {
  System b2("B2");
  auto& R = *b2.ring;
  GradedPolynomial as = R.root(0), at = R.root(1);
  EXPECT_EQ(R.reflect(0, as), -as);
  int c = b2.group->cartan()(0, 1);
  EXPECT_EQ(R.reflect(0, at), at - as * mpz_class(c));
  std::mt19937 rng(1);
  for (int i = 0; i < 50; ++i) {
    GradedPolynomial f = random_poly(rng, R.nvars(), 4);
    EXPECT_EQ(R.reflect(1, R.reflect(1, f)), f);
  }
}

TEST(Demazure, ExamplesAndIdentities) {
  for (std::string type : {"A2", "B2", "G2", "B3"}) {
    System sys(type);
    auto& R = *sys.ring;
    std::size_t n = R.nvars();
    EXPECT_TRUE(R.demazure(0, GradedPolynomial::constant(n, 1)).is_zero());
    EXPECT_EQ(R.demazure(0, R.root(0)), GradedPolynomial::constant(n, 2));
    EXPECT_EQ(R.demazure(0, R.root(1)), GradedPolynomial::constant(n, sys.group->cartan()(0, 1)));
    std::mt19937 rng(3);
    for (int i = 0; i < 30; ++i) {
      GradedPolynomial f = random_poly(rng, n, 4), g = random_poly(rng, n, 3);
      for (Generator s = 0; s < sys.group->rank(); ++s) {
        EXPECT_TRUE(R.demazure(s, R.demazure(s, f)).is_zero());
        EXPECT_EQ(R.demazure(s, f * g), R.demazure(s, f) * g + R.reflect(s, f) * R.demazure(s, g));
        GradedPolynomial inv = f + R.reflect(s, f);
        EXPECT_TRUE(R.demazure(s, inv).is_zero());
      }
    }
  }
}

TEST(RationalFunction, NormalFormAndArithmetic) {
  std::size_t n = 2;
  GradedPolynomial a = GradedPolynomial::variable(n, 0), b = GradedPolynomial::variable(n, 1);
  RationalFunction q = RationalFunction(a * a - b * b) / RationalFunction(a - b);
  EXPECT_EQ(q, RationalFunction(a + b));
  EXPECT_TRUE(q.is_polynomial());
  RationalFunction half = RationalFunction::constant(n, 1) / RationalFunction::constant(n, 2);
  EXPECT_EQ(half + half, RationalFunction::constant(n, 1));
  RationalFunction x = RationalFunction::inverse_linear({2, -2});  // 1/(2a - 2b)
  EXPECT_EQ(x * RationalFunction(a - b), half);
  EXPECT_EQ(RationalFunction::inverse_linear({-1, 1}), -RationalFunction::inverse_linear({1, -1}));
  RationalFunction y = RationalFunction::inverse_linear({1, 0}) - RationalFunction::inverse_linear({0, 1});
  EXPECT_EQ(y.degree(), -2);
  EXPECT_EQ(y * RationalFunction(a * b), RationalFunction(b - a));
  std::vector<mpq_class> pt{3, 5};
  EXPECT_EQ(y.evaluate(pt), mpq_class(1, 3) - mpq_class(1, 5));
  EXPECT_THROW((void)(y / RationalFunction(a * a + b * b)), UnsupportedError);
}

TEST(Billey, Examples) {
  System a1("A1");
  ElementId s = a1.el({0});
  EXPECT_EQ(billey_restriction(*a1.group, s, s), GradedPolynomial::variable(1, 0));
  System b2("B2");
  for (ElementId y : b2.group->enumerate(4)) {
    EXPECT_EQ(billey_restriction(*b2.group, b2.group->identity(), y), GradedPolynomial::constant(2, 1));
    for (ElementId x : b2.group->enumerate(4))
      if (!b2.group->bruhat_leq(x, y)) EXPECT_TRUE(billey_restriction(*b2.group, x, y).is_zero());
  }
}

TEST(Billey, IndependentOfReducedWordAndPositive) {
  for (std::string type : {"A2", "B2", "G2", "A3", "B3"}) {
    System sys(type);
    auto& W = *sys.group;
    for (ElementId y : W.enumerate(6)) {
      for (ElementId x : W.bruhat_interval(y)) {
        GradedPolynomial ref = billey_restriction(W, x, y);
        for (const auto& [e, c] : ref.terms()) EXPECT_GT(c, 0);
        EXPECT_EQ(ref.total_degree(), W.length(x));
        for (const Word& r : W.reduced_expressions(y)) ASSERT_EQ(billey_restriction(W, x, y, r), ref);
      }
    }
  }
}

TEST(PSmooth, Examples) {
  System a2("A2");
  ElementId sts = a2.el({0, 1, 0});
  EXPECT_EQ(p_smooth_numerator(*a2.hecke, a2.group->identity(), sts), 1);
  for (ElementId x : a2.group->enumerate(3)) EXPECT_EQ(p_smooth_numerator(*a2.hecke, x, x), 1);
  System b2("B2");
  mpz_class n = p_smooth_numerator(*b2.hecke, b2.group->identity(), b2.el({0, 1, 0}));
  EXPECT_GT(n, 1);
  while (n % 2 == 0) n /= 2;
  EXPECT_EQ(n, 1);
  System a3("A3");
  // s2 s1 s3 s2 is the classic singular Schubert variety in A3
  ElementId x = a3.el({1, 0, 2, 1});
  EXPECT_THROW((void)p_smooth_numerator(*a3.hecke, a3.group->identity(), x), std::invalid_argument);
}
