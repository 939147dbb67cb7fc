#pragma once

#include <map>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "hecke/coxeter.hpp"
#include "hecke/laurent.hpp"

namespace hecke {

enum class HeckeBasis { standard, kl };

// Finitely supported map W -> Z[v, v^-1] with an explicit basis tag.
struct HeckeElement {
  HeckeBasis basis = HeckeBasis::standard;
  std::map<ElementId, LaurentPolynomial> coords;

  [[nodiscard]] LaurentPolynomial coefficient(ElementId x) const {
    auto it = coords.find(x);
    return it == coords.end() ? LaurentPolynomial{} : it->second;
  }
  void add(ElementId x, const LaurentPolynomial& f) {
    if (f.is_zero()) return;
    auto [it, fresh] = coords.try_emplace(x, f);
    if (!fresh) {
      it->second += f;
      if (it->second.is_zero()) coords.erase(it);
    }
  }
  HeckeElement& operator+=(const HeckeElement& o) {
    require_same_basis(o);
    for (const auto& [x, f] : o.coords) add(x, f);
    return *this;
  }
  HeckeElement& operator-=(const HeckeElement& o) {
    require_same_basis(o);
    for (const auto& [x, f] : o.coords) add(x, -f);
    return *this;
  }
  // scalar multiplication
  HeckeElement& operator*=(const LaurentPolynomial& f) {
    if (f.is_zero()) {
      coords.clear();
      return *this;
    }
    for (auto& [x, g] : coords) g *= f;
    return *this;
  }
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  friend HeckeElement operator*(const LaurentPolynomial& f, HeckeElement a) { return a *= f; }
  friend bool operator==(const HeckeElement&, const HeckeElement&) = default;

  [[nodiscard]] bool is_zero() const { return coords.empty(); }

  void require_same_basis(const HeckeElement& o) const {
    if (basis != o.basis) throw std::invalid_argument("Hecke elements in different bases");
  }
};

struct InversionFailure {
  ElementId x, z;
  LaurentPolynomial value;
};

// Hecke algebra of a Coxeter group, normalized as in Soergel's conventions:
// delta_s^2 = (v^-1 - v) delta_s + 1, b_s = delta_s + v.
// The KL memo is filled on demand; entries only depend on smaller
// elements, so the fill order never affects results.
class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(const CoxeterGroup& group) : group_(group) {}
  HeckeAlgebra(const HeckeAlgebra&) = delete;
  HeckeAlgebra& operator=(const HeckeAlgebra&) = delete;

  [[nodiscard]] const CoxeterGroup& group() const { return group_; }

  [[nodiscard]] HeckeElement delta(ElementId x) const {
    HeckeElement h;
    h.coords.emplace(x, LaurentPolynomial(1));
    return h;
  }
  [[nodiscard]] HeckeElement kl_element(ElementId x) const {
    HeckeElement h{HeckeBasis::kl, {}};
    h.coords.emplace(x, LaurentPolynomial(1));
    return h;
  }

  // a * delta_s, a in standard coordinates
  [[nodiscard]] HeckeElement times_delta(const HeckeElement& a, Generator s) const {
    require_standard(a);
    HeckeElement out;
    const LaurentPolynomial quad = LaurentPolynomial::v_power(-1) - LaurentPolynomial::v_power(1);
    for (const auto& [z, f] : a.coords) {
      ElementId zs = group_.right_multiply(z, s);
      out.add(zs, f);
      if (group_.is_right_descent(z, s)) out.add(z, quad * f);
    }
    return out;
  }

  // a * b_s, a in standard coordinates
  [[nodiscard]] HeckeElement times_b(const HeckeElement& a, Generator s) const {
    require_standard(a);
    HeckeElement out;
    for (const auto& [z, f] : a.coords) {
      out.add(group_.right_multiply(z, s), f);
      out.add(z, f.shifted(group_.is_right_descent(z, s) ? -1 : 1));
    }
    return out;
  }

  // b_s * a, a in standard coordinates
  [[nodiscard]] HeckeElement b_times(Generator s, const HeckeElement& a) const {
    require_standard(a);
    HeckeElement out;
    for (const auto& [z, f] : a.coords) {
      out.add(group_.left_multiply(s, z), f);
      out.add(z, f.shifted(group_.is_left_descent(z, s) ? -1 : 1));
    }
    return out;
  }

  // Product in standard coordinates (inputs converted if needed).
  [[nodiscard]] HeckeElement multiply(const HeckeElement& a0, const HeckeElement& b0) const {
    HeckeElement a = to_standard(a0), b = to_standard(b0);
    HeckeElement out;
    for (const auto& [y, g] : b.coords) {
      HeckeElement t = a;
      for (Generator s : group_.word(y)) t = times_delta(t, s);
      t *= g;
      out += t;
    }
    return out;
  }

  // b_{s_1} ... b_{s_k}
  [[nodiscard]] HeckeElement bott_samelson(std::span<const Generator> w) const {
    HeckeElement h = delta(group_.identity());
    for (Generator s : w) h = times_b(h, s);
    return h;
  }

  // bar involution: v -> v^-1, delta_x -> delta_{x^-1}^{-1}
  [[nodiscard]] HeckeElement bar(const HeckeElement& a) const {
    HeckeElement out{a.basis, {}};
    if (a.basis == HeckeBasis::kl) {
      for (const auto& [x, f] : a.coords) out.add(x, f.bar());
      return out;
    }
    for (const auto& [x, f] : a.coords) {
      HeckeElement t = bar_delta(x);
      t *= f.bar();
      out += t;
    }
    return out;
  }

  [[nodiscard]] const HeckeElement& bar_delta(ElementId x) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = bar_memo_.find(x); it != bar_memo_.end()) return it->second;
    }
    HeckeElement r;
    if (group_.length(x) == 0) {
      r = delta(x);
    } else {
      Generator s = group_.word(x).back();
      const HeckeElement& prev = bar_delta(group_.right_multiply(x, s));
      r = times_delta(prev, s);
      HeckeElement corr = prev;
      corr *= LaurentPolynomial::v_power(1) - LaurentPolynomial::v_power(-1);
      r += corr;
    }
    std::lock_guard lock(mutex_);
    return bar_memo_.try_emplace(x, std::move(r)).first->second;
  }

  // b_x in standard coordinates, by the inductive rule
  // b_{x'} b_s = b_x + sum_{z < x', zs < z} mu(z, x') b_z  (x = x's > x').
  [[nodiscard]] const HeckeElement& kl_basis_element(ElementId x) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = kl_memo_.find(x); it != kl_memo_.end()) return it->second;
    }
    HeckeElement r;
    if (group_.length(x) == 0) {
      r = delta(x);
    } else {
      Generator s = group_.word(x).back();
      ElementId xp = group_.right_multiply(x, s);
      const HeckeElement& bxp = kl_basis_element(xp);
      r = times_b(bxp, s);
      for (const auto& [z, h] : bxp.coords) {
        if (z == xp || !group_.is_right_descent(z, s)) continue;
        mpz_class mu = h.coefficient(1);
        if (mu == 0) continue;
        HeckeElement bz = kl_basis_element(z);
        bz *= LaurentPolynomial::monomial(mu, 0);
        r -= bz;
      }
    }
    std::lock_guard lock(mutex_);
    return kl_memo_.try_emplace(x, std::move(r)).first->second;
  }

  // h_{y,x}: coefficient of delta_y in b_x
  [[nodiscard]] LaurentPolynomial kl_polynomial(ElementId y, ElementId x) const {
    return kl_basis_element(x).coefficient(y);
  }

  [[nodiscard]] mpz_class mu_coefficient(ElementId y, ElementId x) const {
    if (y == x || !group_.bruhat_leq(y, x)) throw std::invalid_argument("mu_coefficient requires y < x");
    return kl_polynomial(y, x).coefficient(1);
  }

  [[nodiscard]] HeckeElement to_standard(const HeckeElement& a) const {
    if (a.basis == HeckeBasis::standard) return a;
    HeckeElement out;
    for (const auto& [x, f] : a.coords) {
      HeckeElement t = kl_basis_element(x);
      t *= f;
      out += t;
    }
    return out;
  }

  // Triangular peel: the top element of the support fixes the next KL
  // coefficient.
  [[nodiscard]] HeckeElement to_kl(const HeckeElement& a) const {
    if (a.basis == HeckeBasis::kl) return a;
    HeckeElement rest = a, out{HeckeBasis::kl, {}};
    while (!rest.is_zero()) {
      ElementId top = top_of(rest);
      LaurentPolynomial c = rest.coefficient(top);
      out.add(top, c);
      HeckeElement t = kl_basis_element(top);
      t *= c;
      rest -= t;
    }
    return out;
  }

  // Largest support element under (length, lex).
  [[nodiscard]] ElementId top_of(const HeckeElement& a) const {
    ElementId best = a.coords.begin()->first;
    for (const auto& [x, f] : a.coords)
      if (group_.less(best, x)) best = x;
    return best;
  }

  // sum_y (-1)^{l(x)+l(y)} h_{y,x} h_{yw0,zw0} = delta_{x,z} for all x, z.
  [[nodiscard]] std::vector<InversionFailure> verify_inversion() const {
    auto w0 = group_.longest_element();
    if (!w0) throw std::invalid_argument("verify_inversion needs a finite Coxeter group");
    std::vector<ElementId> all = group_.enumerate(group_.length(*w0));
    std::vector<InversionFailure> failures;
    for (ElementId x : all) {
      const HeckeElement& bx = kl_basis_element(x);
      for (ElementId z : all) {
        LaurentPolynomial sum;
        for (const auto& [y, h] : bx.coords) {
          LaurentPolynomial g = kl_polynomial(group_.multiply(y, *w0), group_.multiply(z, *w0));
          if (g.is_zero()) continue;
          LaurentPolynomial term = h * g;
          if ((group_.length(x) + group_.length(y)) % 2) term = -term;
          sum += term;
        }
        if (sum != LaurentPolynomial(x == z ? 1 : 0)) failures.push_back({x, z, sum});
      }
    }
    return failures;
  }

 private:
  static void require_standard(const HeckeElement& a) {
    if (a.basis != HeckeBasis::standard) throw std::invalid_argument("expected standard coordinates");
  }

  const CoxeterGroup& group_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<ElementId, HeckeElement> kl_memo_;
  mutable std::unordered_map<ElementId, HeckeElement> bar_memo_;
};

}  // namespace hecke
