#include <gtest/gtest.h>

#include <random>

#include "hecke/cartan_types.hpp"
#include "hecke/hecke_algebra.hpp"

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
const LaurentPolynomial vinv = LaurentPolynomial::v_power(-1);

HeckeElement random_element(const System& sys, std::mt19937& rng, int max_len) {
  auto elems = sys.group->enumerate(max_len);
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3), expo(-3, 3);
  HeckeElement h;
  for (int i = 0; i < 4; ++i) h.add(elems[pick(rng)], LaurentPolynomial::monomial(coeff(rng), expo(rng)));
  return h;
}

// Gaussian elimination over Q; returns the unique solution or nullopt.
std::optional<std::vector<mpq_class>> solve(std::vector<std::vector<mpq_class>> a, std::vector<mpq_class> b,
                                            std::size_t unknowns) {
  std::size_t rows = a.size(), row = 0;
  std::vector<int> pivot_col;
  for (std::size_t col = 0; col < unknowns && row < rows; ++col) {
    std::size_t p = row;
    while (p < rows && a[p][col] == 0) ++p;
    if (p == rows) return std::nullopt;  // free variable -> not unique
    std::swap(a[p], a[row]);
    std::swap(b[p], b[row]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][col] == 0) continue;
      mpq_class f = a[r][col] / a[row][col];
      for (std::size_t c = 0; c < unknowns; ++c) a[r][c] -= f * a[row][c];
      b[r] -= f * b[row];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  if (row < unknowns) return std::nullopt;
  for (std::size_t r = row; r < rows; ++r)
    if (b[r] != 0) return std::nullopt;
  std::vector<mpq_class> x(unknowns);
  for (std::size_t r = 0; r < row; ++r) x[pivot_col[r]] = b[r] / a[r][pivot_col[r]];
  return x;
}

}  // namespace

TEST(Laurent, Arithmetic) {
  LaurentPolynomial p = v + vinv;
  EXPECT_EQ(p * p, LaurentPolynomial::v_power(2) + LaurentPolynomial(2) + LaurentPolynomial::v_power(-2));
  EXPECT_EQ(p.bar(), p);
  EXPECT_EQ((v - vinv).bar(), vinv - v);
  EXPECT_TRUE((v - v).is_zero());
  EXPECT_EQ((LaurentPolynomial::v_power(2) + 1 + LaurentPolynomial::v_power(-2)).to_string(), "v^2 + 1 + v^-2");
  EXPECT_EQ((-v + LaurentPolynomial::monomial(3, -1)).to_string(), "-v + 3v^-1");
}

TEST(Multiply, QuadraticRelation) {
  System a2("A2");
  auto& H = *a2.hecke;
  ElementId s = a2.el({0}), t = a2.el({1});
  HeckeElement expect = H.delta(a2.group->identity());
  expect.add(s, vinv - v);
  EXPECT_EQ(H.multiply(H.delta(s), H.delta(s)), expect);
  EXPECT_EQ(H.multiply(H.delta(s), H.delta(t)), H.delta(a2.el({0, 1})));
  HeckeElement bs = H.kl_basis_element(s);
  HeckeElement bs2 = bs;
  bs2 *= v + vinv;
  EXPECT_EQ(H.multiply(bs, bs), bs2);
}

TEST(Multiply, Associative) {
  System b2("B2");
  std::mt19937 rng(11);
  for (int i = 0; i < 30; ++i) {
    auto a = random_element(b2, rng, 4), b = random_element(b2, rng, 4), c = random_element(b2, rng, 4);
    EXPECT_EQ(b2.hecke->multiply(b2.hecke->multiply(a, b), c), b2.hecke->multiply(a, b2.hecke->multiply(b, c)));
  }
}

TEST(Bar, Examples) {
  System a2("A2");
  auto& H = *a2.hecke;
  ElementId s = a2.el({0});
  EXPECT_EQ(H.bar(H.delta(a2.group->identity())), H.delta(a2.group->identity()));
  HeckeElement bar_s = H.delta(s);
  bar_s.add(a2.group->identity(), v - vinv);
  EXPECT_EQ(H.bar(H.delta(s)), bar_s);
  EXPECT_EQ(H.bar(H.kl_basis_element(s)), H.kl_basis_element(s));
}

TEST(Bar, InvolutiveAndMultiplicative) {
  System b3("B3");
  std::mt19937 rng(5);
  for (int i = 0; i < 1000; ++i) {
    auto a = random_element(b3, rng, 9);
    ASSERT_EQ(b3.hecke->bar(b3.hecke->bar(a)), a);
  }
  for (int i = 0; i < 20; ++i) {
    auto a = random_element(b3, rng, 4), b = random_element(b3, rng, 4);
    EXPECT_EQ(b3.hecke->bar(b3.hecke->multiply(a, b)), b3.hecke->multiply(b3.hecke->bar(a), b3.hecke->bar(b)));
  }
}

TEST(KL, SmallExamples) {
  System a2("A2");
  auto& H = *a2.hecke;
  ElementId e = a2.group->identity(), s = a2.el({0}), st = a2.el({0, 1});
  EXPECT_EQ(H.kl_basis_element(e), H.delta(e));
  HeckeElement bs = H.delta(s);
  bs.add(e, v);
  EXPECT_EQ(H.kl_basis_element(s), bs);
  EXPECT_EQ(H.mu_coefficient(e, s), 1);
  EXPECT_EQ(H.mu_coefficient(s, st), 1);
  EXPECT_EQ(H.mu_coefficient(e, st), 0);
  EXPECT_EQ(H.kl_polynomial(e, st), LaurentPolynomial::v_power(2));
  EXPECT_THROW((void)H.mu_coefficient(st, s), std::invalid_argument);
}

// Oracle: solve bar-invariance plus the degree bound as a linear system over
// the unknown coefficients of h_{y,x}, y < x, for x = w0 in A2.
TEST(KL, A2LongestByLinearSolve) {
  System a2("A2");
  auto& H = *a2.hecke;
  ElementId w0 = a2.el({0, 1, 0});
  std::vector<ElementId> below;
  for (ElementId y : a2.group->enumerate(3))
    if (y != w0) below.push_back(y);
  // unknown c[y][k] = coefficient of v^{k+1}, k < l(x) - l(y)
  std::vector<std::pair<ElementId, int>> unknowns;
  for (ElementId y : below)
    for (int k = 1; k <= 3 - a2.group->length(y); ++k) unknowns.emplace_back(y, k);
  // bar(delta_w0 + sum c delta_y) - (same) = 0, coordinatewise in (z, exponent)
  std::map<std::pair<ElementId, int>, std::size_t> eq_index;
  std::vector<std::vector<mpq_class>> rows;
  std::vector<mpq_class> rhs;
  auto row_for = [&](ElementId z, int e) -> std::size_t {
    auto [it, fresh] = eq_index.try_emplace({z, e}, rows.size());
    if (fresh) {
      rows.emplace_back(unknowns.size(), 0);
      rhs.emplace_back(0);
    }
    return it->second;
  };
  auto accumulate = [&](const HeckeElement& h, int col, int sign) {
    for (const auto& [z, f] : h.coords)
      for (const auto& [e, c] : f.terms()) {
        std::size_t r = row_for(z, e);
        if (col < 0)
          rhs[r] -= sign * mpq_class(c);
        else
          rows[r][col] += sign * mpq_class(c);
      }
  };
  accumulate(H.bar(H.delta(w0)), -1, 1);
  accumulate(H.delta(w0), -1, -1);
  for (std::size_t i = 0; i < unknowns.size(); ++i) {
    auto [y, k] = unknowns[i];
    HeckeElement d = H.delta(y);
    d *= LaurentPolynomial::v_power(k);
    accumulate(H.bar(d), static_cast<int>(i), 1);
    accumulate(d, static_cast<int>(i), -1);
  }
  auto sol = solve(rows, rhs, unknowns.size());
  ASSERT_TRUE(sol);
  HeckeElement expect = H.delta(w0);
  for (std::size_t i = 0; i < unknowns.size(); ++i)
    expect.add(unknowns[i].first, LaurentPolynomial::monomial((*sol)[i].get_num(), unknowns[i].second));
  EXPECT_EQ(H.kl_basis_element(w0), expect);
  // closed form: sum_y v^{3 - l(y)} delta_y
  for (ElementId y : a2.group->enumerate(3))
    EXPECT_EQ(H.kl_polynomial(y, w0), LaurentPolynomial::v_power(3 - a2.group->length(y)));
}

TEST(KL, PropertiesAcrossTypes) {
  for (std::string type : {"A1", "A2", "A3", "A4", "B2", "B3", "C3", "G2"}) {
    System sys(type);
    auto& H = *sys.hecke;
    auto all = sys.group->enumerate(100);
    for (ElementId x : all) {
      const HeckeElement& b = H.kl_basis_element(x);
      ASSERT_EQ(H.bar(b), b) << type << " " << sys.group->format(x);
      for (const auto& [y, h] : b.coords) {
        ASSERT_TRUE(sys.group->bruhat_leq(y, x));
        ASSERT_TRUE(h.has_nonnegative_coefficients());
        if (y == x)
          ASSERT_EQ(h, LaurentPolynomial(1));
        else
          ASSERT_TRUE(h.exponents_within(1, sys.group->length(x) - sys.group->length(y)));
      }
    }
  }
  System affine("C~2");
  for (ElementId x : affine.group->enumerate(8)) {
    const HeckeElement& b = affine.hecke->kl_basis_element(x);
    ASSERT_EQ(affine.hecke->bar(b), b);
    for (const auto& [y, h] : b.coords) ASSERT_TRUE(h.has_nonnegative_coefficients());
  }
}

TEST(KL, BasisConversionsInverse) {
  System b3("B3");
  std::mt19937 rng(2);
  for (int i = 0; i < 100; ++i) {
    auto a = random_element(b3, rng, 9);
    EXPECT_EQ(b3.hecke->to_standard(b3.hecke->to_kl(a)), a);
  }
}

TEST(Inversion, HoldsInFiniteTypes) {
  for (std::string type : {"A1", "A2", "A3", "B2", "B3"}) {
    System sys(type);
    EXPECT_TRUE(sys.hecke->verify_inversion().empty()) << type;
  }
  System affine("A~2");
  EXPECT_THROW((void)affine.hecke->verify_inversion(), std::invalid_argument);
}

TEST(Deodhar, BottSamelsonExpansion) {
  std::mt19937 rng(9);
  for (std::string type : {"A2", "B2", "B3", "C~2"}) {
    System sys(type);
    std::uniform_int_distribution<int> len(0, 8), gen(0, static_cast<int>(sys.group->rank()) - 1);
    for (int trial = 0; trial < 40; ++trial) {
      Word w(static_cast<std::size_t>(len(rng)));
      for (auto& g : w) g = static_cast<Generator>(gen(rng));
      HeckeElement expect;
      for (const auto& sub : sys.group->subexpressions(w)) expect.add(sub.endpoint, LaurentPolynomial::v_power(sub.defect));
      EXPECT_EQ(sys.hecke->bott_samelson(w), expect);
    }
  }
}
