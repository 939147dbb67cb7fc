#pragma once

#include <numeric>
#include <vector>

#include "hecke/hecke_algebra.hpp"
#include "hecke/rational_function.hpp"

namespace hecke {

// Realization over Z: lattice h_Z of the given rank, simple roots alpha_s
// in coordinates of the dual basis (the variables of R), coroots in h_Z.
struct Realization {
  std::size_t rank = 0;
  std::vector<std::vector<long>> roots;
  std::vector<std::vector<long>> coroots;

  [[nodiscard]] long pairing(std::size_t s, std::size_t t) const {  // <coroot_s, root_t>
    long acc = 0;
    for (std::size_t i = 0; i < rank; ++i) acc += coroots[s][i] * roots[t][i];
    return acc;
  }

  [[nodiscard]] static bool is_primitive(const std::vector<long>& v) {
    long g = 0;
    for (long c : v) g = std::gcd(g, c < 0 ? -c : c);
    return g == 1;
  }
  [[nodiscard]] bool demazure_surjective() const {
    for (std::size_t s = 0; s < roots.size(); ++s)
      if (!is_primitive(roots[s]) || !is_primitive(coroots[s])) return false;
    return true;
  }

  // Throws unless the realization matches the Cartan matrix and is
  // Demazure surjective.
  void validate(const CartanMatrix& c) const {
    if (roots.size() != c.rank() || coroots.size() != c.rank())
      throw std::invalid_argument("realization: one root and one coroot per generator required");
    for (std::size_t s = 0; s < c.rank(); ++s) {
      if (roots[s].size() != rank || coroots[s].size() != rank)
        throw std::invalid_argument("realization: root/coroot vectors must have length rank");
    }
    for (std::size_t s = 0; s < c.rank(); ++s)
      for (std::size_t t = 0; t < c.rank(); ++t)
        if (pairing(s, t) != c(s, t))
          throw std::invalid_argument("realization: <coroot_s, root_t> does not match the Cartan matrix");
    if (!demazure_surjective()) throw std::invalid_argument("realization is not Demazure surjective");
  }

  [[nodiscard]] GradedPolynomial root(std::size_t s) const { return GradedPolynomial::linear(roots[s]); }

  // Default: the root lattice (roots = basis, coroots = rows of C) when that
  // is Demazure surjective, otherwise the doubled lattice with
  // coroot_s = (row s of C, e_s).
  static Realization standard(const CartanMatrix& c) {
    const std::size_t n = c.rank();
    Realization r;
    r.rank = n;
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<long> a(n, 0), row(n);
      a[s] = 1;
      for (std::size_t t = 0; t < n; ++t) row[t] = c(s, t);
      r.roots.push_back(a);
      r.coroots.push_back(row);
    }
    if (r.demazure_surjective()) return r;
    Realization ext;
    ext.rank = 2 * n;
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<long> a(2 * n, 0), co(2 * n, 0);
      a[s] = 1;
      for (std::size_t t = 0; t < n; ++t) co[t] = c(s, t);
      co[n + s] = 1;
      ext.roots.push_back(a);
      ext.coroots.push_back(co);
    }
    return ext;
  }
};

// The polynomial ring R = Sym(h*) with its W-action and Demazure operators.
class RealizationRing {
 public:
  RealizationRing(const CoxeterGroup& group, Realization realization)
      : group_(group), real_(std::move(realization)) {
    real_.validate(group.cartan());
    // s(x_i) = x_i - <x_i, coroot_s> alpha_s
    for (std::size_t s = 0; s < group.rank(); ++s) {
      std::vector<GradedPolynomial> imgs;
      for (std::size_t i = 0; i < real_.rank; ++i) {
        GradedPolynomial xi = GradedPolynomial::variable(real_.rank, i);
        imgs.push_back(xi - real_.root(s) * mpz_class(real_.coroots[s][i]));
      }
      images_.push_back(std::move(imgs));
    }
  }

  [[nodiscard]] const Realization& realization() const { return real_; }
  [[nodiscard]] const CoxeterGroup& group() const { return group_; }
  [[nodiscard]] std::size_t nvars() const { return real_.rank; }
  [[nodiscard]] GradedPolynomial root(Generator s) const { return real_.root(s); }
  [[nodiscard]] const std::vector<GradedPolynomial>& reflection_images(Generator s) const { return images_.at(s); }

  [[nodiscard]] GradedPolynomial reflect(Generator s, const GradedPolynomial& f) const {
    return f.substitute(images_.at(s));
  }
  [[nodiscard]] RationalFunction reflect(Generator s, const RationalFunction& f) const {
    return f.substitute_linear(images_.at(s));
  }
  // w(f) for a group element, applying letters right to left.
  [[nodiscard]] GradedPolynomial act(ElementId w, const GradedPolynomial& f) const {
    GradedPolynomial g = f;
    const Word& word = group_.word(w);
    for (auto it = word.rbegin(); it != word.rend(); ++it) g = reflect(*it, g);
    return g;
  }

  // (f - s f) / alpha_s; exact by construction.
  [[nodiscard]] GradedPolynomial demazure(Generator s, const GradedPolynomial& f) const {
    GradedPolynomial diff = f - reflect(s, f);
    if (diff.is_zero()) return GradedPolynomial(nvars());
    auto q = diff.divide_exact(root(s));
    if (!q) throw InternalError("Demazure operator: alpha_s does not divide f - s(f)");
    return *q;
  }

  // x(alpha_s) as a linear form in h*.
  [[nodiscard]] std::vector<long> root_form(ElementId x, Generator s) const {
    auto coords = group_.root_image(x, s);
    std::vector<long> out(real_.rank, 0);
    for (std::size_t t = 0; t < coords.size(); ++t)
      for (std::size_t i = 0; i < real_.rank; ++i) out[i] += static_cast<long>(coords[t]) * real_.roots[t][i];
    return out;
  }

 private:
  const CoxeterGroup& group_;
  Realization real_;
  std::vector<std::vector<GradedPolynomial>> images_;
};

// Restriction of the Schubert class of x to the fixed point y, as a
// polynomial in the simple roots (variable t <-> alpha_t): sum over reduced
// subwords of the normal form of y with product x of prod beta_j, where
// beta_j = s_{i_1} ... s_{i_{j-1}} (alpha_{i_j}).
inline GradedPolynomial billey_restriction(const CoxeterGroup& W, ElementId x, ElementId y,
                                           std::span<const Generator> y_word) {
  const std::size_t n = W.rank();
  if (W.from_word(y_word) != y || static_cast<int>(y_word.size()) != W.length(y))
    throw std::invalid_argument("billey_restriction: word is not a reduced word of y");
  std::map<ElementId, GradedPolynomial> partial;
  partial.emplace(W.identity(), GradedPolynomial::constant(n, 1));
  ElementId prefix = W.identity();
  for (Generator s : y_word) {
    GradedPolynomial beta = GradedPolynomial::linear(W.root_image(prefix, s));
    std::map<ElementId, GradedPolynomial> next = partial;
    for (const auto& [z, f] : partial) {
      if (W.is_right_descent(z, s)) continue;  // reduced subwords only
      ElementId zs = W.right_multiply(z, s);
      if (!W.bruhat_leq(zs, x)) continue;
      auto [it, fresh] = next.try_emplace(zs, GradedPolynomial(n));
      it->second += f * beta;
    }
    partial = std::move(next);
    prefix = W.right_multiply(prefix, s);
  }
  auto it = partial.find(x);
  return it == partial.end() ? GradedPolynomial(n) : it->second;
}

inline GradedPolynomial billey_restriction(const CoxeterGroup& W, ElementId x, ElementId y) {
  if (!W.longest_element()) throw std::invalid_argument("billey_restriction needs a finite Coxeter group");
  return billey_restriction(W, x, y, W.word(y));
}

// Numerator n(y, x) of the equivariant multiplicity of the Schubert variety
// of x at the point y, for rationally smooth pairs. Uses the opposite
// Schubert class of w0 x restricted at w0 y divided by the tangent weights
// prod_{beta > 0} (-w0 y beta); after cancellation the fraction is n / prod of
// roots. p-smoothness at (y, x) holds iff p does not divide n.
inline mpz_class p_smooth_numerator(const HeckeAlgebra& H, ElementId y, ElementId x) {
  const CoxeterGroup& W = H.group();
  auto w0 = W.longest_element();
  if (!w0) throw std::invalid_argument("p_smooth_numerator needs a finite Coxeter group");
  if (!W.bruhat_leq(y, x)) throw std::invalid_argument("p_smooth_numerator requires y <= x");
  if (H.kl_polynomial(y, x) != LaurentPolynomial::v_power(W.length(x) - W.length(y)))
    throw std::invalid_argument("p_smooth_numerator: (y, x) is not rationally smooth");
  const std::size_t n = W.rank();
  ElementId xp = W.multiply(*w0, x), yp = W.multiply(*w0, y);
  RationalFunction e(billey_restriction(W, xp, yp));
  // positive roots as w0 runs through a reduced word: beta_j = prefix(alpha)
  ElementId prefix = W.identity();
  for (Generator s : W.word(*w0)) {
    auto beta = W.root_image(prefix, s);  // a positive root
    std::vector<long> img(n, 0);
    for (std::size_t t = 0; t < n; ++t) {
      auto col = W.root_image(yp, static_cast<Generator>(t));
      for (std::size_t i = 0; i < n; ++i) img[i] -= static_cast<long>(beta[t] * col[i]);
    }
    e /= RationalFunction(GradedPolynomial::linear(img));
    prefix = W.right_multiply(prefix, s);
  }
  if (!e.numerator().is_constant()) throw InternalError("equivariant multiplicity numerator is not constant");
  if (e.denominator_constant() != 1) throw InternalError("equivariant multiplicity has a non-integral numerator");
  int roots_left = 0;
  for (const auto& [l, m] : e.denominator_factors()) roots_left += m;
  check_internal(roots_left == W.length(x), "equivariant multiplicity has the wrong number of tangent weights");
  return abs(e.numerator().constant_term());
}

}  // namespace hecke
