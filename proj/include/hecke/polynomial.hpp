#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hecke/errors.hpp"
#include "hecke/fields.hpp"

namespace hecke {

using Exponents = std::vector<std::uint16_t>;

// Graded-lex order: total degree first, then lexicographic.
struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = std::accumulate(a.begin(), a.end(), 0U), db = std::accumulate(b.begin(), b.end(), 0U);
    if (da != db) return da < db;
    return a < b;
  }
};

// Multivariate integer polynomial in a fixed number of variables. Linear
// forms have degree 2 in the grading of R; total_degree() reports the
// ordinary polynomial degree.
class GradedPolynomial {
 public:
  using Terms = std::map<Exponents, mpz_class, GradedLexLess>;

  GradedPolynomial() = default;
  explicit GradedPolynomial(std::size_t nvars) : n_(nvars) {}

  static GradedPolynomial constant(std::size_t nvars, const mpz_class& c) {
    GradedPolynomial p(nvars);
    if (c != 0) p.terms_.emplace(Exponents(nvars, 0), c);
    return p;
  }
  static GradedPolynomial variable(std::size_t nvars, std::size_t i) {
    GradedPolynomial p(nvars);
    Exponents e(nvars, 0);
    e.at(i) = 1;
    p.terms_.emplace(std::move(e), 1);
    return p;
  }
  template <class Int>
  static GradedPolynomial linear(const std::vector<Int>& coeffs) {
    GradedPolynomial p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      Exponents e(coeffs.size(), 0);
      e[i] = 1;
      p.terms_.emplace(std::move(e), mpz_class(coeffs[i]));
    }
    return p;
  }

  [[nodiscard]] std::size_t nvars() const { return n_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
  }
  [[nodiscard]] mpz_class constant_term() const {
    auto it = terms_.find(Exponents(n_, 0));
    return it == terms_.end() ? mpz_class(0) : it->second;
  }
  [[nodiscard]] int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(total(terms_.rbegin()->first)); }
  [[nodiscard]] bool is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = total(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (total(e) != d) return false;
    return true;
  }
  // Degree in R's grading (linear forms in degree 2); -1 for zero.
  [[nodiscard]] int degree() const { return terms_.empty() ? -1 : 2 * total_degree(); }

  [[nodiscard]] const std::pair<const Exponents, mpz_class>& leading_term() const { return *terms_.rbegin(); }

  [[nodiscard]] mpz_class content() const {
    mpz_class g = 0;
    for (const auto& [e, c] : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
  }

  GradedPolynomial& operator+=(const GradedPolynomial& o) {
    adopt(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  GradedPolynomial& operator-=(const GradedPolynomial& o) {
    adopt(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  GradedPolynomial operator-() const {
    GradedPolynomial p = *this;
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
  }
  GradedPolynomial& operator*=(const mpz_class& k) {
    if (k == 0) terms_.clear();
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }
  friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) { return a += b; }
  friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) { return a -= b; }
  friend GradedPolynomial operator*(GradedPolynomial a, const mpz_class& k) { return a *= k; }
  friend GradedPolynomial operator*(const GradedPolynomial& a, const GradedPolynomial& b) {
    GradedPolynomial p(std::max(a.n_, b.n_));
    if (a.n_ && b.n_ && a.n_ != b.n_) throw std::invalid_argument("polynomials in different rings");
    Exponents e(p.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < p.n_; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
        p.add_term(e, ca * cb);
      }
    return p;
  }
  GradedPolynomial& operator*=(const GradedPolynomial& o) { return *this = *this * o; }
  friend bool operator==(const GradedPolynomial& a, const GradedPolynomial& b) { return a.terms_ == b.terms_; }

  // Divide every coefficient by k (must be exact).
  void divide_coefficients(const mpz_class& k) {
    for (auto& [e, c] : terms_) {
      if (!mpz_divisible_p(c.get_mpz_t(), k.get_mpz_t())) throw InternalError("inexact coefficient division");
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), k.get_mpz_t());
    }
  }

  // Exact division; nullopt when d does not divide *this.
  [[nodiscard]] std::optional<GradedPolynomial> divide_exact(const GradedPolynomial& d) const {
    if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
    GradedPolynomial q(std::max(n_, d.n_)), r = *this;
    const auto& [ld_e, ld_c] = d.leading_term();
    Exponents e(q.n_);
    while (!r.is_zero()) {
      const auto& [lr_e, lr_c] = r.leading_term();
      for (std::size_t i = 0; i < q.n_; ++i) {
        if (lr_e[i] < ld_e[i]) return std::nullopt;
        e[i] = static_cast<std::uint16_t>(lr_e[i] - ld_e[i]);
      }
      if (!mpz_divisible_p(lr_c.get_mpz_t(), ld_c.get_mpz_t())) return std::nullopt;
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), lr_c.get_mpz_t(), ld_c.get_mpz_t());
      GradedPolynomial t(q.n_);
      t.terms_.emplace(e, c);
      q.add_term(e, c);
      r -= t * d;
    }
    return q;
  }

  // Ring map sending variable i to images[i] (all polynomials).
  [[nodiscard]] GradedPolynomial substitute(const std::vector<GradedPolynomial>& images) const {
    if (images.size() != n_) throw std::invalid_argument("substitute: wrong number of images");
    std::size_t m = images.empty() ? 0 : images[0].n_;
    GradedPolynomial out(m);
    std::vector<std::vector<GradedPolynomial>> powers(n_);
    for (const auto& [e, c] : terms_) {
      GradedPolynomial t = GradedPolynomial::constant(m, c);
      for (std::size_t i = 0; i < n_; ++i) {
        if (e[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(GradedPolynomial::constant(m, 1));
        while (pw.size() <= e[i]) pw.push_back(pw.back() * images[i]);
        t *= pw[e[i]];
      }
      out += t;
    }
    return out;
  }

  template <class F>
  [[nodiscard]] F evaluate(const std::vector<F>& point) const {
    F acc = field_from_mpz<F>(0);
    for (const auto& [e, c] : terms_) {
      F t = field_from_mpz<F>(c);
      for (std::size_t i = 0; i < n_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
      acc += t;
    }
    return acc;
  }

  [[nodiscard]] std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      mpz_class a = abs(c);
      os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
      first = false;
      bool unit = total(e) > 0 && a == 1;
      if (!unit) os << a.get_str();
      bool need_star = !unit;
      for (std::size_t i = 0; i < n_; ++i) {
        if (e[i] == 0) continue;
        if (need_star) os << '*';
        need_star = true;
        os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
        if (e[i] > 1) os << '^' << e[i];
      }
    }
    return os.str();
  }

  // Deterministic total order (for use as a map key).
  friend bool operator<(const GradedPolynomial& a, const GradedPolynomial& b) {
    return std::lexicographical_compare(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
                                        [](const auto& x, const auto& y) {
                                          if (x.first != y.first) return GradedLexLess{}(x.first, y.first);
                                          return x.second < y.second;
                                        });
  }

 private:
  static unsigned total(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0U); }
  void adopt(const GradedPolynomial& o) {
    if (n_ == 0) n_ = o.n_;
    if (o.n_ && o.n_ != n_) throw std::invalid_argument("polynomials in different rings");
  }
  void add_term(const Exponents& e, const mpz_class& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::size_t n_ = 0;
  Terms terms_;
};

}  // namespace hecke
