#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hecke {

// Integer Laurent polynomial in v, stored densely from the lowest nonzero
// exponent. The zero polynomial has no coefficients.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  LaurentPolynomial(long c) {  // NOLINT(implicit): constants
    if (c != 0) coeffs_.emplace_back(c);
  }
  static LaurentPolynomial monomial(const mpz_class& c, int exponent) {
    LaurentPolynomial p;
    if (c != 0) {
      p.low_ = exponent;
      p.coeffs_.push_back(c);
    }
    return p;
  }
  static LaurentPolynomial v_power(int exponent) { return monomial(1, exponent); }
  static LaurentPolynomial from_terms(const std::map<int, mpz_class>& terms) {
    LaurentPolynomial p;
    if (terms.empty()) return p;
    p.low_ = terms.begin()->first;
    p.coeffs_.assign(static_cast<std::size_t>(terms.rbegin()->first - p.low_ + 1), 0);
    for (const auto& [e, c] : terms) p.coeffs_[static_cast<std::size_t>(e - p.low_)] += c;
    p.trim();
    return p;
  }

  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] int low_degree() const { return low_; }
  [[nodiscard]] int high_degree() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }

  [[nodiscard]] mpz_class coefficient(int exponent) const {
    if (is_zero() || exponent < low_ || exponent > high_degree()) return 0;
    return coeffs_[static_cast<std::size_t>(exponent - low_)];
  }

  [[nodiscard]] std::map<int, mpz_class> terms() const {
    std::map<int, mpz_class> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) out.emplace(low_ + static_cast<int>(i), coeffs_[i]);
    return out;
  }

  // v -> v^{-1}
  [[nodiscard]] LaurentPolynomial bar() const {
    LaurentPolynomial p;
    if (is_zero()) return p;
    p.low_ = -high_degree();
    p.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
    return p;
  }

  [[nodiscard]] bool is_bar_symmetric() const { return *this == bar(); }
  [[nodiscard]] bool has_nonnegative_coefficients() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpz_class& c) { return c >= 0; });
  }
  // True when every exponent lies in [lo, hi].
  [[nodiscard]] bool exponents_within(int lo, int hi) const {
    return is_zero() || (low_ >= lo && high_degree() <= hi);
  }

  // v^k * p
  [[nodiscard]] LaurentPolynomial shifted(int k) const {
    LaurentPolynomial p = *this;
    if (!p.is_zero()) p.low_ += k;
    return p;
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    int lo = std::min(low_, o.low_);
    int hi = std::max(high_degree(), o.high_degree());
    if (lo < low_) coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - lo), 0);
    low_ = lo;
    coeffs_.resize(static_cast<std::size_t>(hi - lo + 1), 0);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
      coeffs_[static_cast<std::size_t>(o.low_ - low_) + i] += o.coeffs_[i];
    trim();
    return *this;
  }
  LaurentPolynomial& operator-=(const LaurentPolynomial& o) { return *this += -o; }
  LaurentPolynomial operator-() const {
    LaurentPolynomial p = *this;
    for (auto& c : p.coeffs_) c = -c;
    return p;
  }
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial p;
    if (a.is_zero() || b.is_zero()) return p;
    p.low_ = a.low_ + b.low_;
    p.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) p.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    p.trim();
    return p;
  }
  LaurentPolynomial& operator*=(const LaurentPolynomial& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.coeffs_.size() == b.coeffs_.size() && (a.is_zero() || a.low_ == b.low_) &&
           a.coeffs_ == b.coeffs_;
  }

  // Evaluate at v = 1.
  [[nodiscard]] mpz_class at_one() const {
    mpz_class s = 0;
    for (const auto& c : coeffs_) s += c;
    return s;
  }

  // Human readable, highest power first: "v^2 + 1 + v^-2", "-v + 3v^-1".
  [[nodiscard]] std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int e = high_degree(); e >= low_; --e) {
      mpz_class c = coefficient(e);
      if (c == 0) continue;
      mpz_class a = abs(c);
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (e == 0) {
        os << a.get_str();
        continue;
      }
      if (a != 1) os << a.get_str();
      os << 'v';
      if (e != 1) os << '^' << e;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const LaurentPolynomial& p) { return os << p.to_string(); }

 private:
  void trim() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      low_ = 0;
      return;
    }
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<int>(lead);
    while (coeffs_.back() == 0) coeffs_.pop_back();
  }

  int low_ = 0;
  std::vector<mpz_class> coeffs_;
};

}  // namespace hecke
