#include <gtest/gtest.h>

#include <random>

#include "hecke/cartan_types.hpp"
#include "hecke/parabolic.hpp"

using namespace hecke;

namespace {

struct System {
  std::unique_ptr<CoxeterGroup> group;
  std::unique_ptr<HeckeAlgebra> hecke;
  explicit System(const std::string& type) {
    NamedType nt = named_type(type);
    group = std::make_unique<CoxeterGroup>(nt.cartan, nt.names);
    hecke = std::make_unique<HeckeAlgebra>(*group);
  }
  ElementId el(const Word& w) const { return group->from_word(w); }
};

const LaurentPolynomial v = LaurentPolynomial::v_power(1);

// Both defining conditions of a canonical element, checked directly.
void expect_canonical_shape(const ParabolicModule& M, const CoxeterGroup& W, ElementId x, const ParabolicElement& c) {
  EXPECT_EQ(M.bar(c), c);
  for (const auto& [y, f] : c.coords) {
    if (y == x)
      EXPECT_EQ(f, LaurentPolynomial(1));
    else {
      EXPECT_TRUE(W.bruhat_leq(y, x));
      EXPECT_TRUE(f.exponents_within(1, 1000));
    }
  }
}

}  // namespace

TEST(ParabolicAction, GeneratorRules) {
  System a2("A2");
  ParabolicModule M(*a2.hecke, {0}, ParabolicKind::spherical);
  ParabolicModule N(*a2.hecke, {0}, ParabolicKind::antispherical);
  ElementId e = a2.group->identity();
  ParabolicElement m = M.act_generator(0, M.standard(e));
  EXPECT_EQ(m.coefficient(e), LaurentPolynomial::v_power(-1));
  ParabolicElement n = N.act_generator(0, N.standard(e));
  EXPECT_EQ(n.coefficient(e), -v);
  EXPECT_EQ(M.act_generator(1, M.standard(e)), M.standard(a2.el({1})));
  EXPECT_THROW((void)M.standard(a2.el({0})), std::invalid_argument);
}

TEST(ParabolicAction, ModuleAxiom) {
  for (auto kind : {ParabolicKind::spherical, ParabolicKind::antispherical}) {
    System b3("B3");
    ParabolicModule M(*b3.hecke, {0, 2}, kind);
    auto elems = b3.group->enumerate(9);
    std::vector<ElementId> reps;
    for (ElementId x : elems)
      if (M.contains(x)) reps.push_back(x);
    std::mt19937 rng(4);
    std::uniform_int_distribution<std::size_t> pe(0, elems.size() - 1), pr(0, reps.size() - 1);
    for (int i = 0; i < 40; ++i) {
      HeckeElement h1 = b3.hecke->delta(elems[pe(rng)]), h2 = b3.hecke->kl_basis_element(elems[pe(rng)]);
      h1.add(elems[pe(rng)], v);
      ParabolicElement m = M.standard(reps[pr(rng)]);
      m.add(reps[pr(rng)], LaurentPolynomial(3));
      EXPECT_EQ(M.act(b3.hecke->multiply(h1, h2), m), M.act(h1, M.act(h2, m)));
    }
  }
}

TEST(ParabolicCanonical, Examples) {
  System b2("B2");
  ParabolicModule M(*b2.hecke, {0}, ParabolicKind::spherical);
  ElementId e = b2.group->identity(), t = b2.el({1}), st = b2.el({0, 1});
  EXPECT_EQ(M.canonical_basis_element(e), M.standard(e));
  ParabolicElement expect = M.standard(st);
  expect.add(t, v);
  expect.add(e, LaurentPolynomial::v_power(2));
  EXPECT_EQ(M.canonical_basis_element(st), expect);
  expect_canonical_shape(M, *b2.group, st, expect);

  System a2("A2");
  ParabolicModule N(*a2.hecke, {1}, ParabolicKind::antispherical);
  ElementId s = a2.el({0});
  // oracle: b_s . nu_e
  ParabolicElement ds = N.act(a2.hecke->kl_basis_element(s), N.standard(a2.group->identity()));
  expect_canonical_shape(N, *a2.group, s, ds);
  ParabolicElement d_expect = N.standard(s);
  d_expect.add(a2.group->identity(), v);
  EXPECT_EQ(ds, d_expect);
  EXPECT_EQ(N.canonical_basis_element(s), d_expect);
  EXPECT_THROW((void)N.canonical_basis_element(a2.el({1})), std::invalid_argument);
}

TEST(ParabolicCanonical, ShapeAndPositivity) {
  for (std::string type : {"A3", "B3", "C3", "G2"}) {
    System sys(type);
    for (auto kind : {ParabolicKind::spherical, ParabolicKind::antispherical}) {
      for (std::vector<Generator> I : {std::vector<Generator>{0}, {1}, {0, 1}}) {
        ParabolicModule M(*sys.hecke, I, kind);
        for (ElementId x : sys.group->enumerate(100)) {
          if (!M.contains(x)) continue;
          const ParabolicElement& c = M.canonical_basis_element(x);
          expect_canonical_shape(M, *sys.group, x, c);
          EXPECT_EQ(M.to_canonical(c).coords.size(), 1u);
          if (kind == ParabolicKind::spherical) {
            ParabolicElement img = M.to_canonical(M.act(sys.hecke->kl_basis_element(x), M.standard(sys.group->identity())));
            for (const auto& [y, f] : img.coords) {
              EXPECT_TRUE(f.is_bar_symmetric());
              EXPECT_TRUE(f.has_nonnegative_coefficients());
            }
          }
        }
      }
    }
  }
}

TEST(ParabolicCanonical, AffineNeedsFiniteParabolic) {
  System affine("C~2");
  EXPECT_THROW(ParabolicModule(*affine.hecke, {0, 1, 2}, ParabolicKind::spherical), std::invalid_argument);
  ParabolicModule M(*affine.hecke, {1, 2}, ParabolicKind::spherical);
  for (ElementId x : affine.group->enumerate(7))
    if (M.contains(x)) expect_canonical_shape(M, *affine.group, x, M.canonical_basis_element(x));
}
