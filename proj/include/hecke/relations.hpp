#pragma once

#include <string>
#include <vector>

#include "hecke/localization.hpp"

namespace hecke {

struct RelationCheck {
  std::string name;
  bool holds = false;
};

// Evaluates both sides of the defining relations of the diagrammatic Hecke
// category as localized matrices over the given realization.
//   one colour: Frobenius unit/counit, (co)associativity, H = I, needle,
//               barbell, polynomial forcing (also after a twisting prefix)
//   two colour: associativity and Jones-Wenzl for m = 2, 3
//   braid:      flip symmetry, top entry 1, degree/support invariants (all finite m)
inline std::vector<RelationCheck> verify_relations(const RealizationRing& ring) {
  using RF = RationalFunction;
  const CoxeterGroup& W = ring.group();
  SymbolicRoots roots(ring);
  LocalizedCategory<SymbolicRoots> cat(roots);
  std::vector<RelationCheck> out;
  auto check = [&](std::string name, bool ok) { out.push_back({std::move(name), ok}); };
  auto nm = [&](Generator s) { return W.names()[s]; };
  using G = GeneratorSpec;
  const std::size_t n = W.rank();
  const std::size_t nv = ring.nvars();

  for (Generator s = 0; s < n; ++s) {
    std::vector<Word> prefixes{{}};
    for (Generator t = 0; t < n; ++t)
      if (t != s) prefixes.push_back({t});
    for (const Word& l : prefixes) {
      const std::string tag = "(" + nm(s) + (l.empty() ? "" : " after " + W.format_word(l)) + ")";
      auto P = [&](const G& g, const Word& left, const Word& right) {
        return cat.placed(g, LocalizedCategory<SymbolicRoots>::concat(l, left, {}), right);
      };
      auto id = [&](const Word& w) { return cat.identity(LocalizedCategory<SymbolicRoots>::concat(l, w, {})); };
      Word s1{s}, s2{s, s};
      // unit: merge o (id (x) dot_in) = id = merge o (dot_in (x) id)
      auto m = P(G::merge(s), {}, {});
      check("frobenius-unit-right" + tag, cat.compose(m, P(G::dot_in(s), s1, {})) == id(s1));
      check("frobenius-unit-left" + tag, cat.compose(m, P(G::dot_in(s), {}, s1)) == id(s1));
      auto sp = P(G::split(s), {}, {});
      check("frobenius-counit" + tag, cat.compose(P(G::dot_out(s), s1, {}), sp) == id(s1));
      check("associativity" + tag, cat.compose(m, P(G::merge(s), {}, s1)) == cat.compose(m, P(G::merge(s), s1, {})));
      check("coassociativity" + tag,
            cat.compose(P(G::split(s), {}, s1), sp) == cat.compose(P(G::split(s), s1, {}), sp));
      auto h = cat.compose(sp, m);
      check("H=I" + tag, h == cat.compose(P(G::merge(s), s1, {}), P(G::split(s), {}, s1)) &&
                             h == cat.compose(P(G::merge(s), {}, s1), P(G::split(s), s1, {})));
      check("needle" + tag, cat.compose(m, sp).is_zero());
      auto bar = cat.compose(P(G::dot_out(s), {}, {}), P(G::dot_in(s), {}, {}));
      auto expect = cat.polynomial(l, l.size(), RF(ring.root(s)));
      check("barbell" + tag, bar == expect);

      // polynomial forcing: f | = | s(f) + d_s(f) (dot_in o dot_out)
      std::vector<GradedPolynomial> sample;
      for (std::size_t i = 0; i < nv; ++i) {
        auto xi = GradedPolynomial::variable(nv, i);
        sample.push_back(xi);
        for (std::size_t j = i; j < nv; ++j) sample.push_back(xi * GradedPolynomial::variable(nv, j));
      }
      bool forcing = true;
      for (const auto& f : sample) {
        // regions counted in the full word l.s
        auto lhs = cat.polynomial(id(s1).source, l.size(), RF(f));
        auto rhs = cat.add(cat.polynomial(id(s1).source, l.size() + 1, RF(ring.reflect(s, f))),
                           cat.compose(cat.polynomial(id(s1).source, l.size(), RF(ring.demazure(s, f))),
                                       cat.compose(P(G::dot_in(s), {}, {}), P(G::dot_out(s), {}, {}))));
        forcing = forcing && lhs == rhs;
      }
      check("polynomial-forcing" + tag, forcing);
    }
  }

  for (Generator s = 0; s < n; ++s)
    for (Generator t = 0; t < n; ++t) {
      if (s == t) continue;
      const int mst = W.braid_order(s, t);
      if (mst != 2 && mst != 3 && mst != 4 && mst != 6) continue;
      const std::string tag = "(" + nm(s) + "," + nm(t) + ")";
      auto bst = cat.generator(G::braid(s, t));
      auto bts = cat.generator(G::braid(t, s));
      check("braid-flip" + tag, cat.flip(bst) == bts);
      const Mask top = (Mask{1} << mst) - 1;
      const RF* e = bst.entry(top, top);
      check("braid-top-entry" + tag, e && *e == roots.one());
      check("braid-invariants" + tag, cat.check_invariants(bst).empty());

      const Word b{s}, r{t};
      if (mst == 2) {
        // B_b B_r -> B_r B_b B_b
        auto lhs = cat.compose(cat.placed(G::split(s), r, {}), bst);
        auto rhs = cat.compose(cat.placed(G::braid(s, t), {}, b),
                               cat.compose(cat.placed(G::braid(s, t), b, {}), cat.placed(G::split(s), {}, r)));
        check("two-colour-associativity-m2" + tag, lhs == rhs);
        check("jones-wenzl-m2" + tag,
              cat.compose(bst, cat.placed(G::dot_in(s), {}, r)) == cat.placed(G::dot_in(s), r, {}));
      } else if (mst == 3) {
        // B_r B_b B_r -> B_b B_r B_b B_b, with (b, r) = (s, t)
        auto brb = cat.generator(G::braid(t, s));  // rbr -> brb
        auto lhs = cat.compose(cat.placed(G::split(s), {s, t}, {}), brb);
        auto rhs = cat.compose(cat.placed(G::braid(t, s), {}, b),
                               cat.compose(cat.placed(G::braid(t, s), r, {}), cat.placed(G::split(t), {}, {s, t})));
        check("two-colour-associativity-m3" + tag, lhs == rhs);
        // B_r B_b -> B_r B_b B_r
        auto jl = cat.compose(cat.generator(G::braid(s, t)), cat.placed(G::dot_in(s), {}, {t, s}));
        auto jr1 = cat.compose(cat.placed(G::dot_in(s), r, r),
                               cat.compose(cat.generator(G::split(t)), cat.placed(G::dot_out(s), r, {})));
        auto jr2 = cat.placed(G::dot_in(t), {t, s}, {});
        check("jones-wenzl-m3" + tag, jl == cat.add(jr1, jr2));
      }
    }
  return out;
}

inline std::vector<std::string> failed_relations(const std::vector<RelationCheck>& checks) {
  std::vector<std::string> bad;
  for (const auto& c : checks)
    if (!c.holds) bad.push_back(c.name);
  return bad;
}

}  // namespace hecke
