#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hecke/errors.hpp"

namespace hecke {

using Generator = std::uint8_t;
using Word = std::vector<Generator>;
using ElementId = std::uint32_t;
using Mask = std::uint32_t;

inline constexpr int kInfiniteOrder = 0;

// Generalized Cartan matrix; entry(s, t) = <coroot_s, root_t>.
class CartanMatrix {
 public:
  CartanMatrix() = default;
  explicit CartanMatrix(std::vector<std::vector<int>> entries) : c_(std::move(entries)) {
    const std::size_t n = c_.size();
    if (n == 0 || n > 31) throw std::invalid_argument("Cartan matrix: rank must be between 1 and 31");
    for (std::size_t s = 0; s < n; ++s) {
      if (c_[s].size() != n) throw std::invalid_argument("Cartan matrix: not square");
      if (c_[s][s] != 2) throw std::invalid_argument("Cartan matrix: diagonal entries must be 2");
    }
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        if (s == t) continue;
        if (c_[s][t] > 0) throw std::invalid_argument("Cartan matrix: off-diagonal entries must be nonpositive");
        if ((c_[s][t] == 0) != (c_[t][s] == 0))
          throw std::invalid_argument("Cartan matrix: zero pattern must be symmetric");
      }
  }

  [[nodiscard]] std::size_t rank() const { return c_.size(); }
  [[nodiscard]] int operator()(std::size_t s, std::size_t t) const { return c_[s][t]; }
  [[nodiscard]] const std::vector<std::vector<int>>& entries() const { return c_; }

  // Order of st; kInfiniteOrder when infinite.
  [[nodiscard]] int braid_order(std::size_t s, std::size_t t) const {
    if (s == t) return 1;
    switch (c_[s][t] * c_[t][s]) {
      case 0: return 2;
      case 1: return 3;
      case 2: return 4;
      case 3: return 6;
      default: return kInfiniteOrder;
    }
  }

  friend bool operator==(const CartanMatrix&, const CartanMatrix&) = default;

 private:
  std::vector<std::vector<int>> c_;
};

// Value-level group element: lex-least reduced word plus the id of the
// system it belongs to.
class CoxeterElement {
 public:
  CoxeterElement() = default;
  CoxeterElement(Word nf, std::uint64_t system) : nf_(std::move(nf)), system_(system) {}

  [[nodiscard]] const Word& normal_form() const { return nf_; }
  [[nodiscard]] std::size_t length() const { return nf_.size(); }
  [[nodiscard]] std::uint64_t system() const { return system_; }
  [[nodiscard]] bool is_identity() const { return nf_.empty(); }

  friend bool operator==(const CoxeterElement&, const CoxeterElement&) = default;
  friend std::strong_ordering operator<=>(const CoxeterElement& a, const CoxeterElement& b) {
    if (auto c = a.nf_.size() <=> b.nf_.size(); c != 0) return c;
    if (auto c = a.nf_ <=> b.nf_; c != 0) return c;
    return a.system_ <=> b.system_;
  }

 private:
  Word nf_;
  std::uint64_t system_ = 0;
};

struct Subexpression {
  Mask mask = 0;
  ElementId endpoint = 0;
  int defect = 0;
};

struct ParabolicData {
  std::vector<Generator> subset;
  std::optional<ElementId> longest;  // present iff W_I is finite
  std::vector<ElementId> min_reps;   // W^I up to the length cap, sorted
};

// Coxeter group of a generalized Cartan matrix. Elements are interned:
// each gets a dense id the first time it is reached. Arithmetic runs on
// the geometric representation in simple-root coordinates, where
// l(xs) > l(x) iff x(alpha_s) is a positive root.
//
// Safe to share between threads; interning is serialized internally.
class CoxeterGroup {
 public:
  static constexpr std::size_t kDefaultSubexpressionCap = 24;
  static constexpr std::size_t kDefaultSafetyBound = 2'000'000;

  explicit CoxeterGroup(CartanMatrix cartan, std::vector<std::string> names = {})
      : cartan_(std::move(cartan)), n_(cartan_.rank()), names_(std::move(names)), tag_(next_tag()) {
    if (names_.empty()) names_ = default_names(n_);
    if (names_.size() != n_) throw std::invalid_argument("generator names do not match the rank");
    std::set<std::string> uniq(names_.begin(), names_.end());
    if (uniq.size() != n_ || uniq.count("") || uniq.count("e"))
      throw std::invalid_argument("generator names must be distinct, nonempty and not 'e'");
    chunks_.resize(kMaxChunks);
    std::vector<std::int64_t> id(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i) id[i * n_ + i] = 1;
    std::lock_guard lock(mutex_);
    intern_locked(id, id);
  }

  CoxeterGroup(const CoxeterGroup&) = delete;
  CoxeterGroup& operator=(const CoxeterGroup&) = delete;

  static std::vector<std::string> default_names(std::size_t n) {
    static const char* small[] = {"s", "t", "u"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(n <= 3 ? small[i] : "s" + std::to_string(i + 1));
    return out;
  }

  [[nodiscard]] const CartanMatrix& cartan() const { return cartan_; }
  [[nodiscard]] std::size_t rank() const { return n_; }
  [[nodiscard]] std::uint64_t tag() const { return tag_; }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] int braid_order(Generator s, Generator t) const { return cartan_.braid_order(s, t); }
  [[nodiscard]] std::size_t size_interned() const { return size_.load(std::memory_order_acquire); }

  [[nodiscard]] ElementId identity() const { return 0; }
  [[nodiscard]] const Word& word(ElementId x) const { return node(x).word; }
  [[nodiscard]] int length(ElementId x) const { return static_cast<int>(node(x).word.size()); }

  // x(alpha_s) in simple-root coordinates.
  [[nodiscard]] std::vector<std::int64_t> root_image(ElementId x, Generator s) const {
    const Node& nd = node(x);
    std::vector<std::int64_t> col(n_);
    for (std::size_t i = 0; i < n_; ++i) col[i] = nd.mat[i * n_ + s];
    return col;
  }

  [[nodiscard]] bool is_right_descent(ElementId x, Generator s) const {
    const Node& nd = node(x);
    return column_negative(nd.mat, s);
  }
  [[nodiscard]] bool is_left_descent(ElementId x, Generator s) const {
    const Node& nd = node(x);
    return column_negative(nd.inv, s);
  }

  [[nodiscard]] ElementId right_multiply(ElementId x, Generator s) const {
    check_generator(s);
    const Node& nd = node(x);
    ElementId cached = nd.right[s].load(std::memory_order_acquire);
    if (cached != kNone) return cached;
    std::vector<std::int64_t> mat = nd.mat, inv = nd.inv;
    apply_right(mat, s);
    apply_left(inv, s);
    ElementId y;
    {
      std::lock_guard lock(mutex_);
      y = intern_locked(mat, inv);
    }
    nd.right[s].store(y, std::memory_order_release);
    node(y).right[s].store(x, std::memory_order_release);
    return y;
  }

  [[nodiscard]] ElementId left_multiply(Generator s, ElementId x) const {
    check_generator(s);
    const Node& nd = node(x);
    ElementId cached = nd.left[s].load(std::memory_order_acquire);
    if (cached != kNone) return cached;
    std::vector<std::int64_t> mat = nd.mat, inv = nd.inv;
    apply_left(mat, s);
    apply_right(inv, s);
    ElementId y;
    {
      std::lock_guard lock(mutex_);
      y = intern_locked(mat, inv);
    }
    nd.left[s].store(y, std::memory_order_release);
    node(y).left[s].store(x, std::memory_order_release);
    return y;
  }

  [[nodiscard]] ElementId from_word(std::span<const Generator> w) const {
    ElementId x = identity();
    for (Generator s : w) x = right_multiply(x, s);
    return x;
  }
  [[nodiscard]] ElementId multiply(ElementId x, ElementId y) const {
    for (Generator s : word(y)) x = right_multiply(x, s);
    return x;
  }
  [[nodiscard]] ElementId inverse(ElementId x) const {
    Word w = word(x);
    std::reverse(w.begin(), w.end());
    return from_word(w);
  }

  // Bruhat order: peel a right descent s of x; if ys < y compare ys with
  // xs, otherwise compare y with xs.
  [[nodiscard]] bool bruhat_leq(ElementId y, ElementId x) const {
    while (true) {
      if (y == x) return true;
      int lx = length(x), ly = length(y);
      if (ly >= lx) return false;
      if (ly == 0) return true;
      Generator s = word(x).back();
      x = right_multiply(x, s);
      if (is_right_descent(y, s)) y = right_multiply(y, s);
    }
  }

  [[nodiscard]] std::set<Word> reduced_expressions(ElementId x) const {
    std::set<Word> out;
    if (length(x) == 0) {
      out.insert(Word{});
      return out;
    }
    for (Generator s = 0; s < n_; ++s) {
      if (!is_right_descent(x, s)) continue;
      for (Word w : reduced_expressions(right_multiply(x, s))) {
        w.push_back(s);
        out.insert(std::move(w));
      }
    }
    return out;
  }

  // All 2^k masks of a word with endpoint and defect (U0 +1, D0 -1).
  [[nodiscard]] std::vector<Subexpression> subexpressions(std::span<const Generator> w,
                                                          std::size_t cap = kDefaultSubexpressionCap) const {
    if (w.size() > cap || w.size() > 30)
      throw ResourceLimitError("subexpressions: word length " + std::to_string(w.size()) + " exceeds cap");
    for (Generator s : w) check_generator(s);
    std::vector<Subexpression> out;
    out.reserve(std::size_t{1} << w.size());
    for (Mask m = 0; m < (Mask{1} << w.size()); ++m) out.push_back(walk(w, m));
    return out;
  }

  [[nodiscard]] Subexpression walk(std::span<const Generator> w, Mask m) const {
    Subexpression e{m, identity(), 0};
    for (std::size_t i = 0; i < w.size(); ++i) {
      bool up = !is_right_descent(e.endpoint, w[i]);
      bool take = (m >> i) & 1U;
      if (!take) e.defect += up ? 1 : -1;
      if (take) e.endpoint = right_multiply(e.endpoint, w[i]);
    }
    return e;
  }

  // Elements of length <= cap, sorted by (length, lex).
  [[nodiscard]] std::vector<ElementId> enumerate(int length_cap, std::size_t safety = kDefaultSafetyBound) const {
    return enumerate_in(all_generators(), length_cap, safety);
  }

  // Elements of the parabolic subgroup W_I up to the length cap.
  [[nodiscard]] std::vector<ElementId> enumerate_in(const std::vector<Generator>& subset, int length_cap,
                                                    std::size_t safety = kDefaultSafetyBound) const {
    std::vector<ElementId> out{identity()};
    std::vector<ElementId> layer{identity()};
    for (int len = 1; len <= length_cap && !layer.empty(); ++len) {
      std::vector<ElementId> next;
      std::unordered_set<ElementId> seen;
      for (ElementId x : layer)
        for (Generator s : subset) {
          if (is_right_descent(x, s)) continue;
          ElementId y = right_multiply(x, s);
          if (seen.insert(y).second) next.push_back(y);
        }
      std::sort(next.begin(), next.end(), [&](ElementId a, ElementId b) { return word(a) < word(b); });
      out.insert(out.end(), next.begin(), next.end());
      if (out.size() > safety) throw ResourceLimitError("enumeration exceeded the safety bound");
      layer = std::move(next);
    }
    return out;
  }

  // Longest element of W_I, or nullopt when W_I is infinite (detected once
  // the enumeration passes the safety bound without terminating).
  [[nodiscard]] std::optional<ElementId> longest_element(const std::vector<Generator>& subset,
                                                        std::size_t safety = kDefaultSafetyBound) const {
    ElementId x = identity();
    std::size_t steps = 0;
    // climb: any element with an ascent in I can be extended; W_I finite iff
    // this terminates.
    while (true) {
      bool grew = false;
      for (Generator s : subset) {
        if (!is_right_descent(x, s)) {
          x = right_multiply(x, s);
          grew = true;
          break;
        }
      }
      if (!grew) return x;
      // finite Weyl groups of rank n have l(w0) <= n^2 + 120 (E8 is the worst case)
      if (++steps > safety || static_cast<std::size_t>(length(x)) > n_ * n_ + 120) return std::nullopt;
      if (is_infinite_subgroup(subset)) return std::nullopt;
    }
  }

  [[nodiscard]] std::optional<ElementId> longest_element(std::size_t safety = kDefaultSafetyBound) const {
    return longest_element(all_generators(), safety);
  }

  [[nodiscard]] bool is_min_coset_rep(ElementId x, const std::vector<Generator>& subset) const {
    return std::none_of(subset.begin(), subset.end(), [&](Generator s) { return is_right_descent(x, s); });
  }

  [[nodiscard]] ParabolicData parabolic_data(const std::vector<Generator>& subset, int length_cap,
                                             std::size_t safety = kDefaultSafetyBound) const {
    for (Generator s : subset) check_generator(s);
    ParabolicData pd;
    pd.subset = subset;
    std::sort(pd.subset.begin(), pd.subset.end());
    pd.subset.erase(std::unique(pd.subset.begin(), pd.subset.end()), pd.subset.end());
    pd.longest = longest_element(pd.subset, safety);
    for (ElementId x : enumerate(length_cap, safety))
      if (is_min_coset_rep(x, pd.subset)) pd.min_reps.push_back(x);
    return pd;
  }

  // All y <= x, sorted by (length, lex).
  [[nodiscard]] std::vector<ElementId> bruhat_interval(ElementId x) const {
    std::unordered_set<ElementId> seen{identity()};
    std::vector<ElementId> frontier{identity()};
    const Word& w = word(x);
    // subword products of a reduced word of x
    for (Generator s : w) {
      std::vector<ElementId> add;
      for (ElementId y : frontier) {
        ElementId z = right_multiply(y, s);
        if (seen.insert(z).second) add.push_back(z);
      }
      frontier.insert(frontier.end(), add.begin(), add.end());
    }
    std::vector<ElementId> out(frontier.begin(), frontier.end());
    sort_canonical(out);
    return out;
  }

  void sort_canonical(std::vector<ElementId>& xs) const {
    std::sort(xs.begin(), xs.end(), [&](ElementId a, ElementId b) { return less(a, b); });
  }
  [[nodiscard]] bool less(ElementId a, ElementId b) const {
    const Word &wa = word(a), &wb = word(b);
    if (wa.size() != wb.size()) return wa.size() < wb.size();
    return wa < wb;
  }

  [[nodiscard]] std::vector<Generator> all_generators() const {
    std::vector<Generator> g(n_);
    for (std::size_t i = 0; i < n_; ++i) g[i] = static_cast<Generator>(i);
    return g;
  }

  // ---- value-level API ----
  [[nodiscard]] CoxeterElement element(ElementId x) const { return CoxeterElement(word(x), tag_); }
  [[nodiscard]] ElementId id(const CoxeterElement& x) const {
    check_system(x);
    return from_word(x.normal_form());
  }
  [[nodiscard]] CoxeterElement normal_form(std::span<const Generator> w) const {
    for (Generator s : w) check_generator(s);
    return element(from_word(w));
  }
  [[nodiscard]] CoxeterElement multiply(const CoxeterElement& x, const CoxeterElement& y) const {
    return element(multiply(id(x), id(y)));
  }
  [[nodiscard]] bool bruhat_leq(const CoxeterElement& y, const CoxeterElement& x) const {
    return bruhat_leq(id(y), id(x));
  }
  void check_system(const CoxeterElement& x) const {
    if (x.system() != tag_) throw std::invalid_argument("element belongs to a different Coxeter system");
  }

  // ---- names ----
  [[nodiscard]] std::string format(ElementId x, const std::string& sep = "", const std::string& identity_name = "e") const {
    return format_word(word(x), sep, identity_name);
  }
  [[nodiscard]] std::string format_word(std::span<const Generator> w, const std::string& sep = "",
                                        const std::string& identity_name = "e") const {
    if (w.empty()) return identity_name;
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += sep;
      out += names_[w[i]];
    }
    return out;
  }
  [[nodiscard]] Generator generator(const std::string& name) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (names_[i] == name) return static_cast<Generator>(i);
    throw std::invalid_argument("unknown generator '" + name + "'");
  }
  // Parses "s.t.s" or, when every name is one character, "sts". "" and "e"
  // denote the identity.
  [[nodiscard]] Word parse_word(const std::string& text) const {
    Word w;
    if (text.empty() || text == "e") return w;
    if (text.find('.') != std::string::npos || text.find(',') != std::string::npos) {
      std::string cur;
      for (char c : text + ".") {
        if (c == '.' || c == ',') {
          if (cur.empty()) throw std::invalid_argument("empty letter in word '" + text + "'");
          w.push_back(generator(cur));
          cur.clear();
        } else {
          cur += c;
        }
      }
      return w;
    }
    bool single = std::all_of(names_.begin(), names_.end(), [](const std::string& s) { return s.size() == 1; });
    if (single) {
      for (char c : text) w.push_back(generator(std::string(1, c)));
      return w;
    }
    // greedy longest-name match
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t best = 0;
      Generator g = 0;
      for (std::size_t i = 0; i < n_; ++i)
        if (names_[i].size() > best && text.compare(pos, names_[i].size(), names_[i]) == 0) {
          best = names_[i].size();
          g = static_cast<Generator>(i);
        }
      if (best == 0) throw std::invalid_argument("cannot parse word '" + text + "'");
      w.push_back(g);
      pos += best;
    }
    return w;
  }

  void check_generator(Generator s) const {
    if (s >= n_) throw std::invalid_argument("unknown generator index " + std::to_string(s));
  }

 private:
  static constexpr ElementId kNone = ~ElementId{0};
  static constexpr std::size_t kChunkBits = 12;
  static constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
  static constexpr std::size_t kMaxChunks = std::size_t{1} << 14;

  struct Node {
    Word word;
    std::vector<std::int64_t> mat;  // x, row-major, acting on simple-root coordinates
    std::vector<std::int64_t> inv;  // x^{-1}
    std::unique_ptr<std::atomic<ElementId>[]> right, left;
  };

  static std::uint64_t next_tag() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
  }

  const Node& node(ElementId x) const {
    if (x >= size_.load(std::memory_order_acquire)) throw std::out_of_range("unknown element id");
    return chunks_[x >> kChunkBits][x & (kChunkSize - 1)];
  }

  bool column_negative(const std::vector<std::int64_t>& m, Generator s) const {
    for (std::size_t i = 0; i < n_; ++i) {
      std::int64_t v = m[i * n_ + s];
      if (v != 0) return v < 0;
    }
    throw InternalError("zero root image");
  }

  static std::int64_t checked_mul_sub(std::int64_t a, std::int64_t c, std::int64_t b) {
    std::int64_t p, r;
    if (__builtin_mul_overflow(c, b, &p) || __builtin_sub_overflow(a, p, &r))
      throw ResourceLimitError("root coordinates overflow 64 bits");
    return r;
  }

  // m <- m * S_s, where S_s(alpha_t) = alpha_t - c_st alpha_s.
  void apply_right(std::vector<std::int64_t>& m, Generator s) const {
    for (std::size_t t = 0; t < n_; ++t) {
      int c = cartan_(s, t);
      if (c == 0 || t == s) continue;
      for (std::size_t i = 0; i < n_; ++i) m[i * n_ + t] = checked_mul_sub(m[i * n_ + t], c, m[i * n_ + s]);
    }
    for (std::size_t i = 0; i < n_; ++i) m[i * n_ + s] = -m[i * n_ + s];
  }
  // m <- S_s * m
  void apply_left(std::vector<std::int64_t>& m, Generator s) const {
    std::vector<std::int64_t> row(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      std::int64_t acc = m[s * n_ + j];
      for (std::size_t t = 0; t < n_; ++t) {
        int c = cartan_(s, t);
        if (c != 0) acc = checked_mul_sub(acc, c, m[t * n_ + j]);
      }
      row[j] = acc;
    }
    for (std::size_t j = 0; j < n_; ++j) m[s * n_ + j] = row[j];
  }

  // Lex-least reduced word from the inverse matrix: repeatedly strip the
  // smallest left descent.
  Word normal_form_of(std::vector<std::int64_t> inv) const {
    Word w;
    while (true) {
      bool found = false;
      for (std::size_t s = 0; s < n_; ++s) {
        if (column_negative(inv, static_cast<Generator>(s))) {
          w.push_back(static_cast<Generator>(s));
          apply_right(inv, static_cast<Generator>(s));
          found = true;
          break;
        }
      }
      if (!found) return w;
    }
  }

  ElementId intern_locked(const std::vector<std::int64_t>& mat, const std::vector<std::int64_t>& inv) const {
    Word w = normal_form_of(inv);
    std::string key(w.begin(), w.end());
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    std::size_t id = size_.load(std::memory_order_relaxed);
    if (id >= kMaxChunks * kChunkSize) throw ResourceLimitError("too many group elements");
    auto& chunk = chunks_[id >> kChunkBits];
    if (!chunk) chunk = std::make_unique<Node[]>(kChunkSize);
    Node& nd = chunk[id & (kChunkSize - 1)];
    nd.word = std::move(w);
    nd.mat = mat;
    nd.inv = inv;
    nd.right = std::make_unique<std::atomic<ElementId>[]>(n_);
    nd.left = std::make_unique<std::atomic<ElementId>[]>(n_);
    for (std::size_t s = 0; s < n_; ++s) {
      nd.right[s].store(kNone, std::memory_order_relaxed);
      nd.left[s].store(kNone, std::memory_order_relaxed);
    }
    index_.emplace(std::move(key), static_cast<ElementId>(id));
    size_.store(static_cast<std::uint32_t>(id + 1), std::memory_order_release);
    return static_cast<ElementId>(id);
  }

  // W_I is infinite iff its Cartan submatrix is not of finite type; we use
  // the cheap sufficient test of an infinite rank-2 parabolic plus a length
  // guard in longest_element.
  bool is_infinite_subgroup(const std::vector<Generator>& subset) const {
    for (Generator a : subset)
      for (Generator b : subset)
        if (a != b && braid_order(a, b) == kInfiniteOrder) return true;
    return false;
  }

  CartanMatrix cartan_;
  std::size_t n_;
  std::vector<std::string> names_;
  std::uint64_t tag_;
  mutable std::mutex mutex_;
  mutable std::vector<std::unique_ptr<Node[]>> chunks_;
  mutable std::unordered_map<std::string, ElementId> index_;
  mutable std::atomic<std::uint32_t> size_{0};
};

}  // namespace hecke
