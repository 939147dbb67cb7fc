#pragma once

#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "hecke/fields.hpp"
#include "hecke/realization.hpp"

namespace hecke {

// ---------------------------------------------------------------------------
// Root values y(alpha_s) in a coefficient field.

// Numeric: simple roots evaluated at a point where every positive root is
// positive, so no root value vanishes.
template <class F>
class PointRoots {
 public:
  using Field = F;
  PointRoots(const CoxeterGroup& group, std::vector<F> simple_values)
      : group_(group), simple_(std::move(simple_values)) {
    if (simple_.size() != group.rank()) throw std::invalid_argument("PointRoots: one value per simple root");
  }
  // Default point: alpha_t -> 2t + 3 (all positive).
  static std::vector<F> default_point(std::size_t rank, long offset = 3) {
    std::vector<F> v;
    for (std::size_t t = 0; t < rank; ++t) v.push_back(FieldTraits<F>::from_int(static_cast<long>(2 * t) + offset));
    return v;
  }

  [[nodiscard]] const CoxeterGroup& group() const { return group_; }

  const F& value(ElementId y, Generator s) {
    std::size_t key = static_cast<std::size_t>(y) * group_.rank() + s;
    if (key >= cache_.size()) {
      cache_.resize(std::max(key + 1, cache_.size() * 2));
      known_.resize(cache_.size(), false);
    }
    if (!known_[key]) {
      auto coords = group_.root_image(y, s);
      F acc = FieldTraits<F>::from_int(0);
      for (std::size_t t = 0; t < coords.size(); ++t)
        if (coords[t] != 0) acc += FieldTraits<F>::from_int(coords[t]) * simple_[t];
      if (FieldTraits<F>::is_zero(acc)) throw InternalError("root value vanishes at the evaluation point");
      cache_[key] = acc;
      known_[key] = true;
    }
    return cache_[key];
  }
  F one() const { return FieldTraits<F>::from_int(1); }
  F zero() const { return FieldTraits<F>::from_int(0); }

 private:
  const CoxeterGroup& group_;
  std::vector<F> simple_;
  std::vector<F> cache_;
  std::vector<bool> known_;
};

// Symbolic: root values as linear forms over the realization.
class SymbolicRoots {
 public:
  using Field = RationalFunction;
  explicit SymbolicRoots(const RealizationRing& ring) : ring_(ring) {}

  [[nodiscard]] const CoxeterGroup& group() const { return ring_.group(); }
  [[nodiscard]] const RealizationRing& ring() const { return ring_; }

  const RationalFunction& value(ElementId y, Generator s) {
    auto key = std::make_pair(y, s);
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, RationalFunction(GradedPolynomial::linear(ring_.root_form(y, s)))).first;
    return it->second;
  }
  RationalFunction one() const { return RationalFunction::constant(ring_.nvars(), 1); }
  RationalFunction zero() const { return RationalFunction(GradedPolynomial(ring_.nvars())); }

  // y(f)
  RationalFunction twist(ElementId y, const RationalFunction& f) const {
    RationalFunction g = f;
    const Word& w = ring_.group().word(y);
    for (auto it = w.rbegin(); it != w.rend(); ++it) g = ring_.reflect(*it, g);
    return g;
  }

 private:
  const RealizationRing& ring_;
  std::map<std::pair<ElementId, Generator>, RationalFunction> cache_;
};

template <class F>
bool field_is_zero(const F& x) {
  if constexpr (std::is_same_v<F, RationalFunction>) {
    return x.is_zero();
  } else {
    return FieldTraits<F>::is_zero(x);
  }
}

// ---------------------------------------------------------------------------
// Generators and their local matrices.

enum class GeneratorKind { dot_in, dot_out, merge, split, braid };

struct GeneratorSpec {
  GeneratorKind kind;
  Generator s;
  Generator t = 0;  // braid only

  static GeneratorSpec dot_in(Generator s) { return {GeneratorKind::dot_in, s, 0}; }
  static GeneratorSpec dot_out(Generator s) { return {GeneratorKind::dot_out, s, 0}; }
  static GeneratorSpec merge(Generator s) { return {GeneratorKind::merge, s, 0}; }
  static GeneratorSpec split(Generator s) { return {GeneratorKind::split, s, 0}; }
  static GeneratorSpec braid(Generator s, Generator t) { return {GeneratorKind::braid, s, t}; }

  [[nodiscard]] int degree() const {
    switch (kind) {
      case GeneratorKind::dot_in:
      case GeneratorKind::dot_out: return 1;
      case GeneratorKind::merge:
      case GeneratorKind::split: return -1;
      case GeneratorKind::braid: return 0;
    }
    return 0;
  }
  [[nodiscard]] Word source(const CoxeterGroup& W) const {
    switch (kind) {
      case GeneratorKind::dot_in: return {};
      case GeneratorKind::dot_out: return {s};
      case GeneratorKind::merge: return {s, s};
      case GeneratorKind::split: return {s};
      case GeneratorKind::braid: return alternating(s, t, checked_order(W));
    }
    return {};
  }
  [[nodiscard]] Word target(const CoxeterGroup& W) const {
    switch (kind) {
      case GeneratorKind::dot_in: return {s};
      case GeneratorKind::dot_out: return {};
      case GeneratorKind::merge: return {s};
      case GeneratorKind::split: return {s, s};
      case GeneratorKind::braid: return alternating(t, s, checked_order(W));
    }
    return {};
  }
  [[nodiscard]] int checked_order(const CoxeterGroup& W) const {
    if (s == t) throw std::invalid_argument("braid generator needs two distinct colours");
    int m = W.braid_order(s, t);
    if (m != 2 && m != 3 && m != 4 && m != 6)
      throw UnsupportedError("braid generator: unsupported order m = " + (m == 0 ? std::string("infinity") : std::to_string(m)));
    return m;
  }
  static Word alternating(Generator a, Generator b, int m) {
    Word w;
    for (int i = 0; i < m; ++i) w.push_back(i % 2 == 0 ? a : b);
    return w;
  }
};

template <class F>
struct LocalEntry {
  Mask target;
  Mask source;
  F value;
};

// Product of the letters of w selected by mask g.
inline ElementId mask_product(const CoxeterGroup& W, std::span<const Generator> w, Mask g, ElementId start = 0) {
  ElementId x = start;
  for (std::size_t i = 0; i < w.size(); ++i)
    if ((g >> i) & 1U) x = W.right_multiply(x, w[i]);
  return x;
}

// Euler weight zeta_g = prod_i 1 / (y pi_i(g))(alpha_{w_i}), pi_i including
// step i; y is the prefix label (twist). Returned as its inverse.
template <class Roots>
typename Roots::Field inverse_zeta(Roots& roots, std::span<const Generator> w, Mask g, ElementId y) {
  const CoxeterGroup& W = roots.group();
  auto acc = roots.one();
  ElementId x = y;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if ((g >> i) & 1U) x = W.right_multiply(x, w[i]);
    acc = acc * roots.value(x, w[i]);
  }
  return acc;
}

// zeta_g itself, as a product of inverse roots (keeps symbolic division linear).
template <class Roots>
typename Roots::Field zeta(Roots& roots, std::span<const Generator> w, Mask g, ElementId y) {
  const CoxeterGroup& W = roots.group();
  auto acc = roots.one();
  ElementId x = y;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if ((g >> i) & 1U) x = W.right_multiply(x, w[i]);
    acc = acc * (roots.one() / roots.value(x, w[i]));
  }
  return acc;
}

// Local matrix of a generator placed after a prefix with label y. Masks are
// local to the generator's own source/target words (bit i = letter i).
//
// Conventions (Q_e + Q_s decomposition of B_s, alpha = y(alpha_s)):
//   dot_out : 1 <- e
//   dot_in  : e <- alpha
//   merge   : e <- (ee - ss)/alpha, s <- (es - se)/alpha
//   split   : ee, ss <- e and es, se <- s
//   braid   : g' <- g with coefficient zeta_g prod_{beta > 0} (y pi(g))(beta)
//             whenever pi(g') = pi(g); the unique degree-0 map fixing 1 x ... x 1.
template <class Roots>
std::vector<LocalEntry<typename Roots::Field>> generator_entries(Roots& roots, const GeneratorSpec& gen, ElementId y) {
  using F = typename Roots::Field;
  const CoxeterGroup& W = roots.group();
  std::vector<LocalEntry<F>> out;
  const Generator s = gen.s;
  switch (gen.kind) {
    case GeneratorKind::dot_out:
      out.push_back({0, 0, roots.one()});
      break;
    case GeneratorKind::dot_in:
      out.push_back({0, 0, roots.value(y, s)});
      break;
    case GeneratorKind::merge: {
      F inv = roots.one() / roots.value(y, s);
      F neg = roots.zero() - inv;
      out.push_back({0, 0b00, inv});
      out.push_back({0, 0b11, neg});
      out.push_back({1, 0b10, inv});
      out.push_back({1, 0b01, neg});
      break;
    }
    case GeneratorKind::split:
      out.push_back({0b00, 0, roots.one()});
      out.push_back({0b11, 0, roots.one()});
      out.push_back({0b10, 1, roots.one()});
      out.push_back({0b01, 1, roots.one()});
      break;
    case GeneratorKind::braid: {
      const int m = gen.checked_order(W);
      Word src = gen.source(W), tgt = gen.target(W);
      std::map<ElementId, std::vector<Mask>> by_label;
      for (Mask g = 0; g < (Mask{1} << m); ++g) by_label[mask_product(W, tgt, g)].push_back(g);
      for (Mask g = 0; g < (Mask{1} << m); ++g) {
        ElementId z = mask_product(W, src, g);
        ElementId yz = W.multiply(y, z);
        F c = zeta(roots, src, g, y);
        ElementId pre = yz;
        for (Generator u : src) {  // positive roots of the dihedral group
          c = c * roots.value(pre, u);
          pre = W.right_multiply(pre, u);
        }
        for (Mask gp : by_label[z]) out.push_back({gp, g, c});
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Localized morphisms between Bott-Samelson objects.

template <class F>
struct LocalizedMorphism {
  Word source;
  Word target;
  int degree = 0;
  std::map<Mask, std::map<Mask, F>> rows;  // target mask -> source mask -> entry

  void add(Mask t, Mask s, const F& v) {
    if (field_is_zero(v)) return;
    auto& row = rows[t];
    auto [it, fresh] = row.try_emplace(s, v);
    if (!fresh) {
      it->second = it->second + v;
      if (field_is_zero(it->second)) row.erase(it);
    }
    if (row.empty()) rows.erase(t);
  }
  [[nodiscard]] const F* entry(Mask t, Mask s) const {
    auto r = rows.find(t);
    if (r == rows.end()) return nullptr;
    auto c = r->second.find(s);
    return c == r->second.end() ? nullptr : &c->second;
  }
  [[nodiscard]] bool is_zero() const { return rows.empty(); }
  friend bool operator==(const LocalizedMorphism& a, const LocalizedMorphism& b) {
    return a.source == b.source && a.target == b.target && a.degree == b.degree && a.rows == b.rows;
  }
};

// The localized category: builds and manipulates localized morphisms for a
// fixed Coxeter group and coefficient field.
template <class Roots>
class LocalizedCategory {
 public:
  using F = typename Roots::Field;
  using Morphism = LocalizedMorphism<F>;

  explicit LocalizedCategory(Roots& roots) : roots_(roots), group_(roots.group()) {}

  [[nodiscard]] const CoxeterGroup& group() const { return group_; }
  Roots& roots() { return roots_; }

  Morphism identity(const Word& w) const {
    check_length(w);
    Morphism m{w, w, 0, {}};
    for (Mask g = 0; g < (Mask{1} << w.size()); ++g) m.add(g, g, roots_.one());
    return m;
  }

  Morphism generator(const GeneratorSpec& gen) { return placed(gen, {}, {}); }

  // id_left (x) gen (x) id_right
  Morphism placed(const GeneratorSpec& gen, const Word& left, const Word& right) {
    Word src = concat(left, gen.source(group_), right), tgt = concat(left, gen.target(group_), right);
    check_length(src);
    check_length(tgt);
    Morphism m{src, tgt, gen.degree(), {}};
    const std::size_t l = left.size(), ls = gen.source(group_).size(), lt = gen.target(group_).size();
    std::map<ElementId, std::vector<LocalEntry<F>>> local;
    for (Mask a = 0; a < (Mask{1} << l); ++a) {
      ElementId y = mask_product(group_, left, a);
      auto it = local.find(y);
      if (it == local.end()) it = local.emplace(y, generator_entries(roots_, gen, y)).first;
      for (Mask c = 0; c < (Mask{1} << right.size()); ++c)
        for (const auto& e : it->second)
          m.add(a | (e.target << l) | (c << (l + lt)), a | (e.source << l) | (c << (l + ls)), e.value);
    }
    return m;
  }

  Morphism compose(const Morphism& g, const Morphism& f) const {
    if (g.source != f.target) throw std::invalid_argument("compose: source/target mismatch");
    Morphism out{f.source, g.target, g.degree + f.degree, {}};
    for (const auto& [t, grow] : g.rows)
      for (const auto& [mid, a] : grow) {
        auto fr = f.rows.find(mid);
        if (fr == f.rows.end()) continue;
        for (const auto& [s, b] : fr->second) out.add(t, s, a * b);
      }
    return out;
  }

  Morphism add(const Morphism& a, const Morphism& b) const {
    if (a.source != b.source || a.target != b.target) throw std::invalid_argument("add: shape mismatch");
    Morphism out = a;
    for (const auto& [t, row] : b.rows)
      for (const auto& [s, v] : row) out.add(t, s, v);
    return out;
  }
  Morphism scale(const Morphism& a, const F& c) const {
    Morphism out{a.source, a.target, a.degree, {}};
    for (const auto& [t, row] : a.rows)
      for (const auto& [s, v] : row) out.add(t, s, v * c);
    return out;
  }

  // Vertical flip: flip(phi)[g][g'] = phi[g'][g] zeta_{g'} / zeta_g.
  Morphism flip(const Morphism& phi) {
    Morphism out{phi.target, phi.source, phi.degree, {}};
    for (const auto& [t, row] : phi.rows)
      for (const auto& [s, v] : row)
        out.add(s, t, v * zeta(roots_, phi.target, t, group_.identity()) *
                          inverse_zeta(roots_, phi.source, s, group_.identity()));
    return out;
  }

  // f (x) g; needs a field with a W-action (symbolic coefficients).
  Morphism tensor(const Morphism& f, const Morphism& g) const
    requires requires(Roots r, ElementId y, F x) { r.twist(y, x); }
  {
    Morphism out{concat(f.source, g.source, {}), concat(f.target, g.target, {}), f.degree + g.degree, {}};
    const std::size_t ls = f.source.size(), lt = f.target.size();
    for (const auto& [ft, frow] : f.rows)
      for (const auto& [fs, a] : frow) {
        ElementId y = mask_product(group_, f.source, fs);
        for (const auto& [gt, grow] : g.rows)
          for (const auto& [gs, b] : grow) out.add(ft | (gt << lt), fs | (gs << ls), a * roots_.twist(y, b));
      }
    return out;
  }

  // Multiplication by a homogeneous f in the region after the first `region`
  // strands; the morphism has f's degree.
  Morphism polynomial(const Word& w, std::size_t region, const F& f) const
    requires requires(Roots r, ElementId y, F x) { r.twist(y, x); }
  {
    Morphism out{w, w, f.is_zero() ? 0 : f.degree(), {}};
    Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(region));
    for (Mask g = 0; g < (Mask{1} << w.size()); ++g) {
      ElementId y = mask_product(group_, prefix, g & ((Mask{1} << region) - 1));
      out.add(g, g, roots_.twist(y, f));
    }
    return out;
  }

  // Every entry must have the endpoint labels of its masks equal; for
  // symbolic fields also deg(entry) = degree + N(target) - N(source), with
  // N(g) = |word| - l(pi(g)).
  [[nodiscard]] std::vector<std::string> check_invariants(const Morphism& phi) const {
    std::vector<std::string> problems;
    for (const auto& [t, row] : phi.rows)
      for (const auto& [s, v] : row) {
        ElementId lt = mask_product(group_, phi.target, t), ls = mask_product(group_, phi.source, s);
        if (lt != ls) problems.push_back("entry between masks with different endpoints");
        if constexpr (std::is_same_v<F, RationalFunction>) {
          int nt = static_cast<int>(phi.target.size()) - group_.length(lt);
          int ns = static_cast<int>(phi.source.size()) - group_.length(ls);
          if (!v.is_homogeneous() || v.degree() != phi.degree + nt - ns)
            problems.push_back("entry of unexpected degree");
        }
      }
    return problems;
  }

  static Word concat(const Word& a, const Word& b, const Word& c) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    w.insert(w.end(), c.begin(), c.end());
    return w;
  }

 private:
  static void check_length(const Word& w) {
    if (w.size() > 20) throw ResourceLimitError("localized morphism on a word longer than 20 letters");
  }

  Roots& roots_;
  const CoxeterGroup& group_;
};

}  // namespace hecke
