#pragma once

#include <map>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "hecke/hecke_algebra.hpp"

namespace hecke {

enum class ParabolicKind { spherical, antispherical };
enum class ParabolicBasis { standard, canonical };

// Element of M_I (spherical) or N_I (antispherical), supported on W^I.
struct ParabolicElement {
  ParabolicKind kind = ParabolicKind::spherical;
  ParabolicBasis basis = ParabolicBasis::standard;
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
  void add_scaled(const ParabolicElement& o, const LaurentPolynomial& f) {
    if (o.kind != kind || o.basis != basis) throw std::invalid_argument("parabolic elements of different kinds");
    for (const auto& [x, g] : o.coords) add(x, g * f);
  }
  [[nodiscard]] bool is_zero() const { return coords.empty(); }
  friend bool operator==(const ParabolicElement&, const ParabolicElement&) = default;
};

// Left H-module H (x)_{H_I} triv_v (spherical, delta_s -> v^-1 for s in I)
// or sgn_v (antispherical, delta_s -> -v). Requires W_I finite.
class ParabolicModule {
 public:
  ParabolicModule(const HeckeAlgebra& hecke, std::vector<Generator> subset, ParabolicKind kind)
      : hecke_(hecke), group_(hecke.group()), subset_(std::move(subset)), kind_(kind) {
    std::sort(subset_.begin(), subset_.end());
    subset_.erase(std::unique(subset_.begin(), subset_.end()), subset_.end());
    for (Generator s : subset_) group_.check_generator(s);
    auto wI = group_.longest_element(subset_);
    if (!wI) throw std::invalid_argument("parabolic subgroup W_I is infinite");
    longest_ = *wI;
  }
  ParabolicModule(const ParabolicModule&) = delete;
  ParabolicModule& operator=(const ParabolicModule&) = delete;

  [[nodiscard]] ParabolicKind kind() const { return kind_; }
  [[nodiscard]] const std::vector<Generator>& subset() const { return subset_; }
  [[nodiscard]] ElementId longest_parabolic() const { return longest_; }
  [[nodiscard]] const HeckeAlgebra& hecke() const { return hecke_; }

  [[nodiscard]] bool contains(ElementId x) const { return group_.is_min_coset_rep(x, subset_); }
  void require_member(ElementId x) const {
    if (!contains(x)) throw std::invalid_argument(group_.format(x) + " is not a minimal coset representative");
  }

  [[nodiscard]] ParabolicElement standard(ElementId x) const {
    require_member(x);
    ParabolicElement m{kind_, ParabolicBasis::standard, {}};
    m.coords.emplace(x, LaurentPolynomial(1));
    return m;
  }

  // delta_s . m
  [[nodiscard]] ParabolicElement act_generator(Generator s, const ParabolicElement& m) const {
    require_standard(m);
    ParabolicElement out{kind_, ParabolicBasis::standard, {}};
    const LaurentPolynomial quad = LaurentPolynomial::v_power(-1) - LaurentPolynomial::v_power(1);
    const LaurentPolynomial stuck =
        kind_ == ParabolicKind::spherical ? LaurentPolynomial::v_power(-1) : -LaurentPolynomial::v_power(1);
    for (const auto& [x, f] : m.coords) {
      ElementId sx = group_.left_multiply(s, x);
      if (!contains(sx)) {
        out.add(x, stuck * f);
        continue;
      }
      out.add(sx, f);
      if (group_.length(sx) < group_.length(x)) out.add(x, quad * f);
    }
    return out;
  }

  // b_s . m
  [[nodiscard]] ParabolicElement act_b(Generator s, const ParabolicElement& m) const {
    ParabolicElement out = act_generator(s, m);
    out.add_scaled(m, LaurentPolynomial::v_power(1));
    return out;
  }

  // h . m for h in any basis
  [[nodiscard]] ParabolicElement act(const HeckeElement& h0, const ParabolicElement& m0) const {
    HeckeElement h = hecke_.to_standard(h0);
    ParabolicElement m = to_standard(m0);
    ParabolicElement out{kind_, ParabolicBasis::standard, {}};
    for (const auto& [y, f] : h.coords) {
      ParabolicElement t = m;
      const Word& w = group_.word(y);
      for (auto it = w.rbegin(); it != w.rend(); ++it) t = act_generator(*it, t);
      out.add_scaled(t, f);
    }
    return out;
  }

  [[nodiscard]] ParabolicElement bar(const ParabolicElement& m) const {
    ParabolicElement out{kind_, m.basis, {}};
    if (m.basis == ParabolicBasis::canonical) {
      for (const auto& [x, f] : m.coords) out.add(x, f.bar());
      return out;
    }
    for (const auto& [x, f] : m.coords) out.add_scaled(bar_standard(x), f.bar());
    return out;
  }

  // bar(mu_x) via mu_x = delta_s mu_{sx} for a left descent s.
  [[nodiscard]] const ParabolicElement& bar_standard(ElementId x) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = bar_memo_.find(x); it != bar_memo_.end()) return it->second;
    }
    ParabolicElement r;
    if (group_.length(x) == 0) {
      r = standard(x);
    } else {
      Generator s = group_.word(x).front();
      const ParabolicElement& prev = bar_standard(group_.left_multiply(s, x));
      r = act_generator(s, prev);
      r.add_scaled(prev, LaurentPolynomial::v_power(1) - LaurentPolynomial::v_power(-1));
    }
    std::lock_guard lock(mutex_);
    return bar_memo_.try_emplace(x, std::move(r)).first->second;
  }

  // Canonical basis element (c_x or d_x) in standard coordinates.
  [[nodiscard]] const ParabolicElement& canonical_basis_element(ElementId x) const {
    require_member(x);
    {
      std::lock_guard lock(mutex_);
      if (auto it = canon_memo_.find(x); it != canon_memo_.end()) return it->second;
    }
    ParabolicElement r;
    if (group_.length(x) == 0) {
      r = standard(x);
    } else {
      Generator s = group_.word(x).front();
      r = act_b(s, canonical_basis_element(group_.left_multiply(s, x)));
      // descending (length, lex): each correction only touches smaller terms
      std::vector<ElementId> support;
      for (const auto& [y, f] : r.coords)
        if (y != x) support.push_back(y);
      group_.sort_canonical(support);
      for (auto it = support.rbegin(); it != support.rend(); ++it) {
        LaurentPolynomial g = r.coefficient(*it);
        LaurentPolynomial p = symmetric_nonpositive_part(g);
        if (!p.is_zero()) r.add_scaled(canonical_basis_element(*it), -p);
      }
    }
    std::lock_guard lock(mutex_);
    return canon_memo_.try_emplace(x, std::move(r)).first->second;
  }

  [[nodiscard]] ParabolicElement to_standard(const ParabolicElement& m) const {
    check_kind(m);
    if (m.basis == ParabolicBasis::standard) return m;
    ParabolicElement out{kind_, ParabolicBasis::standard, {}};
    for (const auto& [x, f] : m.coords) out.add_scaled(canonical_basis_element(x), f);
    return out;
  }

  [[nodiscard]] ParabolicElement to_canonical(const ParabolicElement& m) const {
    check_kind(m);
    if (m.basis == ParabolicBasis::canonical) return m;
    ParabolicElement rest = m, out{kind_, ParabolicBasis::canonical, {}};
    while (!rest.is_zero()) {
      ElementId top = rest.coords.begin()->first;
      for (const auto& [x, f] : rest.coords)
        if (group_.less(top, x)) top = x;
      LaurentPolynomial c = rest.coefficient(top);
      out.add(top, c);
      rest.add_scaled(canonical_basis_element(top), -c);
    }
    return out;
  }

  // p with p = bar(p) and g - p in vZ[v].
  static LaurentPolynomial symmetric_nonpositive_part(const LaurentPolynomial& g) {
    std::map<int, mpz_class> terms;
    for (const auto& [e, c] : g.terms()) {
      if (e > 0) continue;
      terms[e] += c;
      if (e < 0) terms[-e] += c;
    }
    return LaurentPolynomial::from_terms(terms);
  }

 private:
  void check_kind(const ParabolicElement& m) const {
    if (m.kind != kind_) throw std::invalid_argument("parabolic element of the wrong kind");
  }
  void require_standard(const ParabolicElement& m) const {
    check_kind(m);
    if (m.basis != ParabolicBasis::standard) throw std::invalid_argument("expected standard coordinates");
  }

  const HeckeAlgebra& hecke_;
  const CoxeterGroup& group_;
  std::vector<Generator> subset_;
  ParabolicKind kind_;
  ElementId longest_ = 0;
  mutable std::mutex mutex_;
  mutable std::unordered_map<ElementId, ParabolicElement> bar_memo_;
  mutable std::unordered_map<ElementId, ParabolicElement> canon_memo_;
};

}  // namespace hecke
