#pragma once

#include <map>
#include <string>
#include <vector>

#include "hecke/polynomial.hpp"

namespace hecke {

// Primitive integer linear form with positive leading coordinate.
using LinearForm = std::vector<long>;

// Fraction num / (c * prod l_i^{k_i}) with c > 0 and l_i primitive linear
// forms. Localization matrices only ever divide by roots, so denominators
// stay products of linear forms. Normal form: no l_i divides num and
// gcd(content(num), c) = 1, which makes the representation unique.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(GradedPolynomial num) : num_(std::move(num)) { normalize(); }
  static RationalFunction constant(std::size_t nvars, const mpz_class& c) {
    return RationalFunction(GradedPolynomial::constant(nvars, c));
  }

  // 1 / l for a nonzero linear form (any content, any sign).
  static RationalFunction inverse_linear(const std::vector<long>& l) {
    auto [form, scale] = normalize_linear(l);
    RationalFunction r;
    r.num_ = GradedPolynomial::constant(l.size(), scale < 0 ? -1 : 1);
    r.den_const_ = scale < 0 ? -scale : scale;
    r.den_[form] = 1;
    return r;
  }

  [[nodiscard]] const GradedPolynomial& numerator() const { return num_; }
  [[nodiscard]] const mpz_class& denominator_constant() const { return den_const_; }
  [[nodiscard]] const std::map<LinearForm, int>& denominator_factors() const { return den_; }
  [[nodiscard]] std::size_t nvars() const { return num_.nvars(); }

  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] bool is_polynomial() const { return den_.empty() && den_const_ == 1; }
  [[nodiscard]] bool is_constant() const { return den_.empty() && num_.is_constant(); }
  [[nodiscard]] bool is_homogeneous() const { return num_.is_homogeneous(); }
  // Degree in R's grading; meaningless for zero.
  [[nodiscard]] int degree() const {
    int k = 0;
    for (const auto& [l, m] : den_) k += m;
    return num_.degree() - 2 * k;
  }
  [[nodiscard]] GradedPolynomial denominator() const {
    GradedPolynomial d = GradedPolynomial::constant(num_.nvars(), den_const_);
    for (const auto& [l, m] : den_)
      for (int i = 0; i < m; ++i) d *= GradedPolynomial::linear(l);
    return d;
  }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    RationalFunction r;
    r.num_ = a.num_ * b.num_;
    r.den_const_ = a.den_const_ * b.den_const_;
    r.den_ = a.den_;
    for (const auto& [l, m] : b.den_) r.den_[l] += m;
    r.normalize();
    return r;
  }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    RationalFunction r;
    // common denominator: lcm of constants, max multiplicities
    mpz_lcm(r.den_const_.get_mpz_t(), a.den_const_.get_mpz_t(), b.den_const_.get_mpz_t());
    r.den_ = a.den_;
    for (const auto& [l, m] : b.den_) r.den_[l] = std::max(r.den_[l], m);
    r.num_ = a.scaled_to(r) + b.scaled_to(r);
    r.normalize();
    return r;
  }
  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  // Division is supported when the divisor's numerator is a constant or a
  // linear form; that covers every denominator arising in localization.
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    RationalFunction inv;
    inv.num_ = GradedPolynomial::constant(b.nvars(), 1);
    for (const auto& [l, m] : b.den_) inv.num_ *= power(GradedPolynomial::linear(l), m);
    inv.num_ *= b.den_const_;
    if (b.num_.is_constant()) {
      mpz_class c = b.num_.constant_term();
      if (c < 0) {
        inv.num_ = -inv.num_;
        c = -c;
      }
      inv.den_const_ = c;
    } else if (b.num_.total_degree() == 1 && b.num_.is_homogeneous()) {
      std::vector<long> l(b.nvars(), 0);
      for (const auto& [e, c] : b.num_.terms())
        for (std::size_t i = 0; i < e.size(); ++i)
          if (e[i]) l[i] = c.get_si();
      auto [form, scale] = normalize_linear(l);
      if (scale < 0) inv.num_ = -inv.num_;
      inv.den_const_ = scale < 0 ? -scale : scale;
      inv.den_[form] = 1;
    } else {
      throw UnsupportedError("rational function division by a non-linear polynomial");
    }
    inv.normalize();
    return a * inv;
  }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_const_ == b.den_const_ && a.den_ == b.den_;
  }

  // Ring map on numerator and denominator; images of the variables are
  // linear forms (as for the W-action on R).
  [[nodiscard]] RationalFunction substitute_linear(const std::vector<GradedPolynomial>& images) const {
    RationalFunction r(num_.substitute(images));
    RationalFunction d = RationalFunction::constant(nvars(), 1);
    for (const auto& [l, m] : den_) {
      GradedPolynomial img = GradedPolynomial::linear(l).substitute(images);
      RationalFunction f(img);
      for (int i = 0; i < m; ++i) d *= f;
    }
    d *= RationalFunction::constant(nvars(), den_const_);
    return r / d;
  }

  template <class F>
  [[nodiscard]] F evaluate(const std::vector<F>& point) const {
    F d = field_from_mpz<F>(den_const_);
    for (const auto& [l, m] : den_) {
      F lv = GradedPolynomial::linear(l).evaluate(point);
      for (int i = 0; i < m; ++i) d *= lv;
    }
    return num_.evaluate(point) / d;
  }

  [[nodiscard]] std::string to_string(const std::vector<std::string>& names = {}) const {
    std::string s = num_.to_string(names);
    if (is_polynomial()) return s;
    std::string d = den_const_ == 1 ? "" : den_const_.get_str();
    for (const auto& [l, m] : den_) {
      if (!d.empty()) d += "*";
      d += "(" + GradedPolynomial::linear(l).to_string(names) + ")";
      if (m > 1) d += "^" + std::to_string(m);
    }
    return "(" + s + ")/(" + d + ")";
  }

  // (primitive form with positive leading coordinate, signed scale)
  static std::pair<LinearForm, long> normalize_linear(const std::vector<long>& l) {
    long g = 0;
    for (long c : l) g = std::gcd(g, c < 0 ? -c : c);
    if (g == 0) throw std::domain_error("zero linear form");
    LinearForm f(l.size());
    long sign = 0;
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (sign == 0 && l[i] != 0) sign = l[i] > 0 ? 1 : -1;
      f[i] = l[i] / g * sign;
    }
    return {f, g * sign};
  }

 private:
  static GradedPolynomial power(const GradedPolynomial& p, int k) {
    GradedPolynomial r = GradedPolynomial::constant(p.nvars(), 1);
    for (int i = 0; i < k; ++i) r *= p;
    return r;
  }

  // Numerator rewritten over the (larger) denominator of target.
  [[nodiscard]] GradedPolynomial scaled_to(const RationalFunction& target) const {
    GradedPolynomial n = num_;
    mpz_class k = target.den_const_ / den_const_;
    n *= k;
    for (const auto& [l, m] : target.den_) {
      auto it = den_.find(l);
      int have = it == den_.end() ? 0 : it->second;
      if (m > have) n *= power(GradedPolynomial::linear(l), m - have);
    }
    return n;
  }

  void normalize() {
    if (num_.is_zero()) {
      den_.clear();
      den_const_ = 1;
      return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
      GradedPolynomial lf = GradedPolynomial::linear(it->first);
      while (it->second > 0) {
        auto q = num_.divide_exact(lf);
        if (!q) break;
        num_ = std::move(*q);
        --it->second;
      }
      it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
    mpz_class g = num_.content();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_const_.get_mpz_t());
    if (g != 1) {
      num_.divide_coefficients(g);
      den_const_ /= g;
    }
  }

  GradedPolynomial num_;
  mpz_class den_const_ = 1;
  std::map<LinearForm, int> den_;
};

}  // namespace hecke
