#pragma once

#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>
#include <vector>

#include "hecke/light_leaves.hpp"
#include "hecke/parabolic.hpp"

namespace hecke {

// Elementary divisors of one intersection form of B_w.
struct FormCell {
  ElementId y = 0;
  int degree = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> divisors;
  friend bool operator==(const FormCell&, const FormCell&) = default;
};
using DivisorLedger = std::vector<FormCell>;

// Persistent storage for per-word ledgers (implemented on top of the cache).
class FormLedgerStore {
 public:
  virtual ~FormLedgerStore() = default;
  virtual std::optional<DivisorLedger> load(const Word& w) = 0;
  virtual void save(const Word& w, const DivisorLedger& ledger) = 0;
};

inline DivisorLedger ledger_from_forms(const IntersectionForms& forms) {
  DivisorLedger out;
  for (const auto& [y, by_j] : forms.blocks)
    for (const auto& [j, block] : by_j)
      out.push_back({y, j, block.matrix.rows, block.matrix.cols, elementary_divisors(block.matrix)});
  return out;
}

struct GradedMultiplicityTable {
  Word word;
  unsigned long p = 0;
  std::map<ElementId, std::map<int, std::size_t>> entries;  // y -> j -> m_y^j

  [[nodiscard]] LaurentPolynomial multiplicity(ElementId y) const {
    auto it = entries.find(y);
    if (it == entries.end()) return {};
    std::map<int, mpz_class> t;
    for (const auto& [j, m] : it->second) t[j] += static_cast<unsigned long>(m);
    return LaurentPolynomial::from_terms(t);
  }
  friend bool operator==(const GradedMultiplicityTable& a, const GradedMultiplicityTable& b) {
    return a.p == b.p && a.entries == b.entries;
  }
};

inline GradedMultiplicityTable table_from_ledger(const Word& w, const DivisorLedger& ledger, unsigned long p) {
  GradedMultiplicityTable t{w, p, {}};
  for (const auto& cell : ledger) {
    std::size_t r = rank_mod(cell.divisors, p);
    if (r) t.entries[cell.y][cell.degree] = r;
  }
  for (const auto& [y, by_j] : t.entries)
    for (const auto& [j, m] : by_j) {
      auto it = by_j.find(-j);
      check_internal(it != by_j.end() && it->second == m, "graded multiplicities are not palindromic");
    }
  return t;
}

struct PCanonicalColumn {
  ElementId x = 0;
  unsigned long p = 0;
  HeckeElement kl;        // pb_x = sum_y pa_{y,x} b_y
  HeckeElement standard;  // pb_x = sum_y ph_{y,x} delta_y

  [[nodiscard]] LaurentPolynomial a(ElementId y) const { return kl.coefficient(y); }
  [[nodiscard]] LaurentPolynomial h(ElementId y) const { return standard.coefficient(y); }
  [[nodiscard]] bool equals_kl(ElementId self) const {
    return kl.coords.size() == 1 && kl.coords.begin()->first == self;
  }
};

struct TorsionReport {
  std::map<unsigned long, std::vector<ElementId>> torsion;  // p -> {x : pb_x != b_x}
  int length_cap = 0;
  int completed_length = -1;  // all elements up to this length were examined
  bool complete = false;
};

// p-canonical basis via Bott-Samelson decomposition. Intersection forms are
// computed once per element (for its lex-least reduced word) and reused for
// every prime through their elementary divisors.
class PCanonical {
 public:
  explicit PCanonical(const HeckeAlgebra& hecke, TieBreak tie = TieBreak::lex, FormLedgerStore* store = nullptr)
      : hecke_(hecke), group_(hecke.group()), tie_(tie), store_(store) {}
  PCanonical(const PCanonical&) = delete;
  PCanonical& operator=(const PCanonical&) = delete;

  [[nodiscard]] const HeckeAlgebra& hecke() const { return hecke_; }

  // Ledger of B_w for an arbitrary word (not memoized unless w is a normal form).
  DivisorLedger ledger(const Word& w) {
    if (group_.word(group_.from_word(w)) == w) return element_ledger(group_.from_word(w));
    return compute_ledger(w);
  }

  const DivisorLedger& element_ledger(ElementId x) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = ledgers_.find(x); it != ledgers_.end()) return it->second;
    }
    DivisorLedger l = compute_ledger(group_.word(x));
    std::lock_guard lock(mutex_);
    return ledgers_.try_emplace(x, std::move(l)).first->second;
  }

  // Fill ledgers for many elements on a thread pool.
  void precompute(const std::vector<ElementId>& xs, unsigned threads = 0) {
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex fail_mutex;
    auto worker = [&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= xs.size()) return;
        try {
          element_ledger(xs[i]);
        } catch (...) {
          std::lock_guard lock(fail_mutex);
          if (!failure) failure = std::current_exception();
          next = xs.size();
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  // m_y^j for B_w over F_p (p = 0: Q); checks character conservation.
  GradedMultiplicityTable decompose_bs(const Word& w, unsigned long p) {
    check_prime(p);
    auto table = table_from_ledger(w, ledger(w), p);
    HeckeElement sum{HeckeBasis::kl, {}};
    for (const auto& [y, by_j] : table.entries) {
      HeckeElement c = column(y, p).kl;
      c *= table.multiplicity(y);
      sum += c;
    }
    check_internal(sum == hecke_.to_kl(hecke_.bott_samelson(w)), "character conservation failed");
    return table;
  }

  const PCanonicalColumn& column(ElementId x, unsigned long p) {
    check_prime(p);
    {
      std::lock_guard lock(mutex_);
      if (auto it = columns_.find({x, p}); it != columns_.end()) return it->second;
    }
    const Word& w = group_.word(x);
    auto table = table_from_ledger(w, element_ledger(x), p);
    check_internal(table.multiplicity(x) == LaurentPolynomial(1), "top multiplicity of a reduced word is not 1");
    HeckeElement pb = hecke_.to_kl(hecke_.bott_samelson(w));
    for (const auto& [y, by_j] : table.entries) {
      if (y == x) continue;
      HeckeElement c = column(y, p).kl;
      c *= -table.multiplicity(y);
      pb += c;
    }
    PCanonicalColumn col{x, p, pb, hecke_.to_standard(pb)};
    for (const auto& [y, a] : pb.coords) {
      check_internal(a.is_bar_symmetric(), "p-canonical coefficient is not bar-symmetric");
      check_internal(a.has_nonnegative_coefficients(), "p-canonical coefficient has a negative coefficient");
    }
    check_internal(col.a(x) == LaurentPolynomial(1), "leading p-canonical coefficient is not 1");
    std::lock_guard lock(mutex_);
    return columns_.try_emplace({x, p}, std::move(col)).first->second;
  }

  // Coordinates of h in the p-canonical basis (triangular elimination from
  // the top element down).
  std::map<ElementId, LaurentPolynomial> expand(const HeckeElement& h, unsigned long p) {
    HeckeElement rest = hecke_.to_kl(h);
    std::map<ElementId, LaurentPolynomial> out;
    while (!rest.is_zero()) {
      ElementId top = rest.coords.begin()->first;
      for (const auto& [z, f] : rest.coords)
        if (group_.less(top, z)) top = z;
      LaurentPolynomial c = rest.coefficient(top);
      out[top] = c;
      HeckeElement t = column(top, p).kl;
      t *= -c;
      rest += t;
    }
    return out;
  }

  // Primes p with pb_x != b_x. Candidates are the primes dividing an
  // elementary divisor met in the recursion; outside them all ranks agree
  // with the rational ones, so pb_x = b_x there.
  std::set<unsigned long> bad_primes(ElementId x) {
    std::set<unsigned long> candidates;
    for (ElementId y : group_.bruhat_interval(x))
      for (const auto& cell : element_ledger(y))
        for (const auto& d : cell.divisors) add_prime_factors(d, candidates);
    std::set<unsigned long> bad;
    for (unsigned long p : candidates)
      if (!column(x, p).equals_kl(x)) bad.insert(p);
    return bad;
  }

  TorsionReport torsion_report(int length_cap, const std::vector<unsigned long>& primes, unsigned threads = 0) {
    TorsionReport rep;
    rep.length_cap = length_cap;
    for (unsigned long p : primes) {
      check_prime(p);
      rep.torsion[p];
    }
    std::vector<ElementId> xs;
    try {
      xs = group_.enumerate(length_cap);
    } catch (const ResourceLimitError&) {
      return rep;  // incomplete, nothing examined
    }
    precompute(xs, threads);
    for (ElementId x : xs) {
      for (unsigned long p : primes)
        if (!column(x, p).equals_kl(x)) rep.torsion[p].push_back(x);
    }
    rep.completed_length = length_cap;
    rep.complete = true;
    return rep;
  }

  static bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }
  static void check_prime(unsigned long p) {
    if (p != 0 && !is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not a prime (use 0 for characteristic zero)");
  }

 private:
  DivisorLedger compute_ledger(const Word& w) {
    if (store_) {
      std::lock_guard lock(store_mutex_);
      if (auto l = store_->load(w)) return *l;
    }
    DivisorLedger l = ledger_from_forms(intersection_forms(group_, w, tie_));
    if (store_) {
      std::lock_guard lock(store_mutex_);
      store_->save(w, l);
    }
    return l;
  }

  static void add_prime_factors(mpz_class d, std::set<unsigned long>& out) {
    if (d < 2) return;
    for (unsigned long q = 2; mpz_class(q) * q <= d; ++q)
      while (mpz_divisible_ui_p(d.get_mpz_t(), q)) {
        out.insert(q);
        d /= q;
      }
    if (d > 1) {
      if (!d.fits_ulong_p()) throw ResourceLimitError("elementary divisor with a huge prime factor");
      out.insert(d.get_ui());
    }
  }

  const HeckeAlgebra& hecke_;
  const CoxeterGroup& group_;
  TieBreak tie_;
  FormLedgerStore* store_;
  std::mutex mutex_;
  std::mutex store_mutex_;
  std::unordered_map<ElementId, DivisorLedger> ledgers_;
  std::map<std::pair<ElementId, unsigned long>, PCanonicalColumn> columns_;
};

// p-canonical elements of the parabolic modules, in the canonical basis
// {c_y} / {d_y} and in the standard basis.
struct PParabolicElement {
  ParabolicElement canonical;
  ParabolicElement standard;
};

inline PParabolicElement p_parabolic_basis(PCanonical& pc, const ParabolicModule& module, ElementId x,
                                           unsigned long p) {
  const CoxeterGroup& W = pc.hecke().group();
  module.require_member(x);
  const ElementId wI = module.longest_parabolic();
  ParabolicElement can{module.kind(), ParabolicBasis::canonical, {}};
  if (module.kind() == ParabolicKind::spherical) {
    const auto& col = pc.column(W.multiply(x, wI), p);
    for (const auto& [yp, a] : col.kl.coords) {
      // y' = y w_I with y in W^I exactly when y' has every s in I as a right descent
      ElementId y = W.multiply(yp, W.inverse(wI));
      if (module.contains(y) && W.length(yp) == W.length(y) + W.length(wI)) can.add(y, a);
    }
  } else {
    const auto& col = pc.column(x, p);
    for (const auto& [y, a] : col.kl.coords)
      if (module.contains(y)) can.add(y, a);
  }
  return {can, module.to_standard(can)};
}

}  // namespace hecke
