#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hecke/localization.hpp"
#include "hecke/smith.hpp"

namespace hecke {

// Order in which braid moves are tried when searching for a reduced word
// ending in a given letter: leftmost position first (lex) or rightmost first.
enum class TieBreak { lex, reverse };

struct RexMove {
  std::size_t pos = 0;
  Generator a = 0;  // letters pos..pos+m-1 read a, b, a, ... and become b, a, b, ...
  Generator b = 0;
  int m = 0;
  friend bool operator==(const RexMove&, const RexMove&) = default;
};

inline Word apply_rex_move(Word w, const RexMove& mv) {
  for (int i = 0; i < mv.m; ++i) w[mv.pos + static_cast<std::size_t>(i)] = i % 2 == 0 ? mv.b : mv.a;
  return w;
}

// Shortest sequence of braid moves taking a reduced word to one ending in s
// (breadth-first; ties resolved by move position in the TieBreak order).
class RexGraph {
 public:
  RexGraph(const CoxeterGroup& group, TieBreak tie) : group_(group), tie_(tie) {}

  [[nodiscard]] TieBreak tie_break() const { return tie_; }

  const std::vector<RexMove>& path_to_suffix(const Word& rex, Generator s) {
    auto key = std::make_pair(rex, s);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::vector<RexMove> path;
    if (rex.empty() || rex.back() != s) {
      std::map<Word, std::pair<Word, RexMove>> parent;
      std::deque<Word> queue{rex};
      parent.emplace(rex, std::make_pair(Word{}, RexMove{}));
      std::optional<Word> found;
      while (!queue.empty() && !found) {
        Word w = std::move(queue.front());
        queue.pop_front();
        for (const RexMove& mv : moves(w)) {
          Word n = apply_rex_move(w, mv);
          if (!parent.emplace(n, std::make_pair(w, mv)).second) continue;
          if (n.back() == s) {
            found = n;
            break;
          }
          queue.push_back(std::move(n));
        }
      }
      if (!found) throw InternalError("no reduced expression ends in the requested descent");
      for (Word w = *found; w != rex;) {
        const auto& [prev, mv] = parent.at(w);
        path.push_back(mv);
        w = prev;
      }
      std::reverse(path.begin(), path.end());
    }
    return cache_.emplace(std::move(key), std::move(path)).first->second;
  }

  // All braid moves applicable to w, in tie-break order.
  [[nodiscard]] std::vector<RexMove> moves(const Word& w) const {
    std::vector<RexMove> out;
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
      Generator a = w[p], b = w[p + 1];
      if (a == b) continue;
      int m = group_.braid_order(a, b);
      if (m == 0 || p + static_cast<std::size_t>(m) > w.size()) continue;
      bool alt = true;
      for (int i = 0; i < m && alt; ++i) alt = w[p + static_cast<std::size_t>(i)] == (i % 2 == 0 ? a : b);
      if (alt) out.push_back({p, a, b, m});
    }
    if (tie_ == TieBreak::reverse) std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  const CoxeterGroup& group_;
  TieBreak tie_;
  std::map<std::pair<Word, Generator>, std::vector<RexMove>> cache_;
};

// ---------------------------------------------------------------------------
// Slow route: light leaves as full localized matrices.

template <class Roots>
LocalizedMorphism<typename Roots::Field> extend_by_identity(const LocalizedMorphism<typename Roots::Field>& phi,
                                                            Generator s) {
  LocalizedMorphism<typename Roots::Field> out{phi.source, phi.target, phi.degree, {}};
  out.source.push_back(s);
  out.target.push_back(s);
  const std::size_t ls = phi.source.size(), lt = phi.target.size();
  for (const auto& [t, row] : phi.rows)
    for (const auto& [g, v] : row)
      for (Mask c = 0; c < 2; ++c) out.add(t | (c << lt), g | (c << ls), v);
  return out;
}

template <class Roots>
LocalizedMorphism<typename Roots::Field> rex_move_morphism(LocalizedCategory<Roots>& cat, const Word& w,
                                                           const RexMove& mv) {
  Word left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(mv.pos));
  Word right(w.begin() + static_cast<std::ptrdiff_t>(mv.pos) + mv.m, w.end());
  return cat.placed(GeneratorSpec::braid(mv.a, mv.b), left, right);
}

// Light leaf LL_e : B_w -> B_{rex}, where rex is the reduced word of the
// endpoint reached by the construction. Optionally finish with braid moves
// to the normal form of the endpoint.
template <class Roots>
LocalizedMorphism<typename Roots::Field> light_leaf(LocalizedCategory<Roots>& cat, RexGraph& rexes, const Word& w,
                                                    Mask e, bool to_normal_form = false) {
  const CoxeterGroup& W = cat.group();
  auto phi = cat.identity({});
  Word rex;
  ElementId x = W.identity();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Generator s = w[i];
    const bool bit = (e >> i) & 1U;
    if (!W.is_right_descent(x, s)) {
      phi = extend_by_identity<Roots>(phi, s);
      rex.push_back(s);
      if (bit) {
        x = W.right_multiply(x, s);
      } else {
        rex.pop_back();
        phi = cat.compose(cat.placed(GeneratorSpec::dot_out(s), rex, {}), phi);
      }
      continue;
    }
    for (const RexMove& mv : rexes.path_to_suffix(rex, s)) {
      phi = cat.compose(rex_move_morphism(cat, rex, mv), phi);
      rex = apply_rex_move(rex, mv);
    }
    phi = extend_by_identity<Roots>(phi, s);
    Word head(rex.begin(), rex.end() - 1);
    phi = cat.compose(cat.placed(GeneratorSpec::merge(s), head, {}), phi);
    if (bit) {
      phi = cat.compose(cat.placed(GeneratorSpec::dot_out(s), head, {}), phi);
      rex = head;
      x = W.right_multiply(x, s);
    }
  }
  if (to_normal_form) {
    // breadth-first search for the normal form itself
    const Word& target = W.word(x);
    std::map<Word, std::pair<Word, RexMove>> parent{{rex, {Word{}, RexMove{}}}};
    std::deque<Word> queue{rex};
    while (!queue.empty() && !parent.contains(target)) {
      Word cur = std::move(queue.front());
      queue.pop_front();
      for (const RexMove& mv : rexes.moves(cur)) {
        Word n = apply_rex_move(cur, mv);
        if (parent.emplace(n, std::make_pair(cur, mv)).second) queue.push_back(std::move(n));
      }
    }
    std::vector<RexMove> path;
    for (Word cur = target; cur != rex;) {
      const auto& [prev, mv] = parent.at(cur);
      path.push_back(mv);
      cur = prev;
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      phi = cat.compose(rex_move_morphism(cat, rex, *it), phi);
      rex = apply_rex_move(rex, *it);
    }
  }
  return phi;
}

// ---------------------------------------------------------------------------
// Intersection forms.

struct FormBlock {
  std::vector<Mask> rows;  // leaves of defect -j
  std::vector<Mask> cols;  // leaves of defect +j
  IntegerMatrix matrix;
};

struct IntersectionForms {
  Word word;
  // endpoint y -> degree j -> block
  std::map<ElementId, std::map<int, FormBlock>> blocks;
};

// Slow route: pair light leaves through compose(LL_f, flip(LL_e)) and read
// the coefficient of the identity on the top summand of B_{rex(y)}.
template <class Roots>
IntegerMatrix slow_intersection_form(LocalizedCategory<Roots>& cat, RexGraph& rexes, const Word& w, ElementId y,
                                     int j) {
  const CoxeterGroup& W = cat.group();
  std::vector<Mask> rows, cols;
  for (const auto& sub : W.subexpressions(w)) {
    if (sub.endpoint != y) continue;
    if (sub.defect == -j) rows.push_back(sub.mask);
    if (sub.defect == j) cols.push_back(sub.mask);
  }
  using F = typename Roots::Field;
  std::map<Mask, LocalizedMorphism<F>> leaves;
  for (Mask e : rows) leaves.try_emplace(e, light_leaf(cat, rexes, w, e, true));
  for (Mask f : cols) leaves.try_emplace(f, light_leaf(cat, rexes, w, f, true));
  const Mask top = (Mask{1} << W.length(y)) - 1;
  IntegerMatrix m(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto flipped = cat.flip(leaves.at(rows[r]));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      auto pair = cat.compose(leaves.at(cols[c]), flipped);
      const F* v = pair.entry(top, top);
      if (!v) continue;
      if constexpr (std::is_same_v<F, RationalFunction>) {
        if (!v->is_constant()) throw InternalError("intersection form entry is not a constant");
        m.at(r, c) = v->numerator().constant_term();
      } else {
        auto z = FieldTraits<F>::to_integer(*v);
        if (!z) throw InternalError("intersection form entry is not an integer");
        m.at(r, c) = *z;
      }
    }
  }
  return m;
}

// Fast route: depth-first over e-masks, carrying for every source mask g the
// column LL_e[-][g] as a sparse vector; numeric coefficients.
template <class F>
class LightLeafEngine {
 public:
  LightLeafEngine(const CoxeterGroup& group, std::vector<F> point, TieBreak tie)
      : group_(group), roots_(group, std::move(point)), rexes_(group, tie) {}
  LightLeafEngine(const CoxeterGroup& group, TieBreak tie)
      : LightLeafEngine(group, PointRoots<F>::default_point(group.rank()), tie) {}

  struct Leaf {
    Mask mask = 0;
    ElementId endpoint = 0;
    int defect = 0;
    std::vector<std::pair<Mask, F>> top_row;  // g -> LL_e[top][g], sorted by g
  };

  std::vector<Leaf> leaves(const Word& w) {
    if (w.size() > kMaxWord) throw ResourceLimitError("light leaves: word longer than " + std::to_string(kMaxWord));
    for (Generator s : w) group_.check_generator(s);
    std::vector<Leaf> out;
    std::vector<Column> start{Column{0, {{0, roots_.one()}}}};
    descend(w, 0, 0, group_.identity(), 0, Word{}, std::move(start), out);
    return out;
  }

  // nullopt when a numeric value cannot be trusted as an integer.
  std::optional<IntersectionForms> forms(const Word& w) {
    auto all = leaves(w);
    std::sort(all.begin(), all.end(), [](const Leaf& a, const Leaf& b) { return a.mask < b.mask; });
    IntersectionForms res;
    res.word = w;
    std::map<ElementId, std::vector<const Leaf*>> by_end;
    for (const auto& l : all) by_end[l.endpoint].push_back(&l);
    std::unordered_map<Mask, F> weight;  // 1 / zeta_g
    for (const auto& [y, ls] : by_end) {
      const Word& ry = group_.word(y);
      F top_inv = inverse_zeta(roots_, ry, (Mask{1} << ry.size()) - 1, group_.identity());
      std::map<int, std::vector<const Leaf*>> by_def;
      for (const Leaf* l : ls) by_def[l->defect].push_back(l);
      for (const auto& [d, cols] : by_def) {
        const int j = d;
        auto rit = by_def.find(-j);
        if (rit == by_def.end()) continue;
        const auto& rows = rit->second;
        FormBlock block;
        block.matrix = IntegerMatrix(rows.size(), cols.size());
        for (const Leaf* l : rows) block.rows.push_back(l->mask);
        for (const Leaf* l : cols) block.cols.push_back(l->mask);
        for (std::size_t r = 0; r < rows.size(); ++r)
          for (std::size_t c = 0; c < cols.size(); ++c) {
            F acc = roots_.zero();
            auto a = rows[r]->top_row.begin(), ae = rows[r]->top_row.end();
            auto b = cols[c]->top_row.begin(), be = cols[c]->top_row.end();
            while (a != ae && b != be) {
              if (a->first < b->first) {
                ++a;
              } else if (b->first < a->first) {
                ++b;
              } else {
                auto wit = weight.find(a->first);
                if (wit == weight.end())
                  wit = weight.emplace(a->first, inverse_zeta(roots_, w, a->first, group_.identity())).first;
                acc += a->second * b->second * wit->second;
                ++a;
                ++b;
              }
            }
            acc = acc / top_inv;
            auto z = FieldTraits<F>::to_integer(acc);
            if (!z) return std::nullopt;
            block.matrix.at(r, c) = *z;
          }
        res.blocks[y][j] = std::move(block);
      }
    }
    return res;
  }

  static constexpr std::size_t kMaxWord = 22;

 private:
  struct Column {
    Mask source;
    std::vector<std::pair<Mask, F>> entries;  // target mask -> value
  };

  ElementId prefix_label(const Word& w, Mask h, std::size_t upto) const {
    ElementId x = group_.identity();
    for (std::size_t i = 0; i < upto; ++i)
      if ((h >> i) & 1U) x = group_.right_multiply(x, w[i]);
    return x;
  }

  static void normalize(std::vector<std::pair<Mask, F>>& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t k = 0;
    for (std::size_t i = 0; i < v.size();) {
      Mask m = v[i].first;
      F acc = v[i].second;
      for (++i; i < v.size() && v[i].first == m; ++i) acc += v[i].second;
      if (!FieldTraits<F>::is_zero(acc)) v[k++] = {m, acc};
    }
    v.resize(k);
  }

  // braid(a, b) placed after a prefix labelled y, indexed by local source mask
  const std::vector<std::vector<std::pair<Mask, F>>>& braid_table(ElementId y, Generator a, Generator b) {
    std::uint64_t key = (static_cast<std::uint64_t>(y) << 16) | (static_cast<std::uint64_t>(a) << 8) | b;
    auto it = braid_cache_.find(key);
    if (it != braid_cache_.end()) return it->second;
    auto spec = GeneratorSpec::braid(a, b);
    std::vector<std::vector<std::pair<Mask, F>>> table(std::size_t{1} << spec.checked_order(group_));
    for (auto& e : generator_entries(roots_, spec, y)) table[e.source].emplace_back(e.target, e.value);
    return braid_cache_.emplace(key, std::move(table)).first->second;
  }

  void apply_move(std::vector<Column>& cols, const Word& w, const RexMove& mv) {
    const Mask low = (Mask{1} << mv.pos) - 1;
    const Mask mid_mask = (Mask{1} << mv.m) - 1;
    for (auto& col : cols) {
      std::vector<std::pair<Mask, F>> next;
      for (const auto& [h, v] : col.entries) {
        Mask pre = h & low, mid = (h >> mv.pos) & mid_mask, post = h & ~((mid_mask << mv.pos) | low);
        const auto& table = braid_table(prefix_label(w, pre, mv.pos), mv.a, mv.b);
        for (const auto& [t, c] : table[mid]) next.emplace_back(pre | (t << mv.pos) | post, v * c);
      }
      normalize(next);
      col.entries = std::move(next);
    }
    std::erase_if(cols, [](const Column& c) { return c.entries.empty(); });
  }

  void descend(const Word& w, std::size_t i, Mask e, ElementId x, int defect, Word rex, std::vector<Column> cols,
               std::vector<Leaf>& out) {
    if (cols.empty()) return;  // cannot happen for a genuine light leaf
    if (i == w.size()) {
      Leaf leaf{e, x, defect, {}};
      const Mask top = (Mask{1} << rex.size()) - 1;
      for (const auto& col : cols)
        for (const auto& [h, v] : col.entries)
          if (h == top) leaf.top_row.emplace_back(col.source, v);
      std::sort(leaf.top_row.begin(), leaf.top_row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      out.push_back(std::move(leaf));
      return;
    }
    const Generator s = w[i];
    const Mask here = Mask{1} << i;
    const std::size_t L = rex.size();
    if (!group_.is_right_descent(x, s)) {
      // U1: both g-bits extend the target word
      std::vector<Column> up;
      up.reserve(2 * cols.size());
      for (const auto& col : cols)
        for (Mask c = 0; c < 2; ++c) {
          Column n{col.source | (c ? here : 0), col.entries};
          for (auto& [h, v] : n.entries) h |= c << L;
          up.push_back(std::move(n));
        }
      Word rex1 = rex;
      rex1.push_back(s);
      descend(w, i + 1, e | here, group_.right_multiply(x, s), defect, std::move(rex1), std::move(up), out);
      // U0: the dot keeps only g-bit 0
      descend(w, i + 1, e, x, defect + 1, std::move(rex), std::move(cols), out);
      return;
    }
    for (const RexMove& mv : rexes_.path_to_suffix(rex, s)) {
      apply_move(cols, rex, mv);
      rex = apply_rex_move(rex, mv);
    }
    // merge at positions (L-1, L); prefix r' = rex minus its last letter
    const Mask low = (Mask{1} << (L - 1)) - 1;
    std::vector<Column> d0, d1;
    for (const auto& col : cols)
      for (Mask c = 0; c < 2; ++c) {
        Column n0{col.source | (c ? here : 0), {}}, n1{n0.source, {}};
        for (const auto& [h, v] : col.entries) {
          Mask a = (h >> (L - 1)) & 1U, base = h & low;
          F q = v / roots_.value(prefix_label(rex, base, L - 1), s);
          if (a == 0 && c == 0) {
            n0.entries.emplace_back(base, q);
            n1.entries.emplace_back(base, q);
          } else if (a == 1 && c == 1) {
            n0.entries.emplace_back(base, -q);
            n1.entries.emplace_back(base, -q);
          } else {
            n0.entries.emplace_back(base | (Mask{1} << (L - 1)), a == 0 ? q : -q);
          }
        }
        normalize(n0.entries);
        normalize(n1.entries);
        if (!n0.entries.empty()) d0.push_back(std::move(n0));
        if (!n1.entries.empty()) d1.push_back(std::move(n1));
      }
    Word head(rex.begin(), rex.end() - 1);
    descend(w, i + 1, e | here, group_.right_multiply(x, s), defect, std::move(head), std::move(d1), out);
    descend(w, i + 1, e, x, defect - 1, std::move(rex), std::move(d0), out);
  }

  const CoxeterGroup& group_;
  PointRoots<F> roots_;
  RexGraph rexes_;
  std::unordered_map<std::uint64_t, std::vector<std::vector<std::pair<Mask, F>>>> braid_cache_;
};

// Intersection forms of B_w at every endpoint and degree. Runs modulo a
// large prime and falls back to exact rationals if a value looks untrusted.
inline IntersectionForms intersection_forms(const CoxeterGroup& W, const Word& w, TieBreak tie = TieBreak::lex) {
  {
    LightLeafEngine<ModP> fast(W, tie);
    if (auto r = fast.forms(w)) return std::move(*r);
  }
  LightLeafEngine<mpq_class> exact(W, tie);
  auto r = exact.forms(w);
  if (!r) throw InternalError("intersection form entry is not an integer");
  return std::move(*r);
}

}  // namespace hecke
