#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace hecke {

struct IntegerMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> data;

  IntegerMatrix() = default;
  IntegerMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  mpz_class& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  [[nodiscard]] const mpz_class& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  [[nodiscard]] IntegerMatrix transposed() const {
    IntegerMatrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }
  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;
};

// Nonzero elementary divisors d_1 | d_2 | ... (all positive) of the Smith
// normal form.
inline std::vector<mpz_class> elementary_divisors(IntegerMatrix a) {
  std::vector<mpz_class> out;
  const std::size_t r = a.rows, c = a.cols;
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i != j)
      for (std::size_t k = 0; k < c; ++k) std::swap(a.at(i, k), a.at(j, k));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i != j)
      for (std::size_t k = 0; k < r; ++k) std::swap(a.at(k, i), a.at(k, j));
  };
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    // smallest nonzero entry in the trailing block becomes the pivot
    std::size_t pi = r, pj = c;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (a.at(i, j) != 0 && (pi == r || abs(a.at(i, j)) < abs(a.at(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == r) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    while (true) {
      bool clean = true;
      mpz_class q;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a.at(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a.at(i, t).get_mpz_t(), a.at(t, t).get_mpz_t());
        for (std::size_t k = t; k < c; ++k) a.at(i, k) -= q * a.at(t, k);
        if (a.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a.at(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a.at(t, j).get_mpz_t(), a.at(t, t).get_mpz_t());
        for (std::size_t k = t; k < r; ++k) a.at(k, j) -= q * a.at(k, t);
        if (a.at(t, j) != 0) clean = false;
      }
      if (!clean) {
        // a remainder smaller than the pivot: move it into the pivot slot
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < r; ++i)
          if (a.at(i, t) != 0 && abs(a.at(i, t)) < abs(a.at(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < c; ++j)
          if (a.at(t, j) != 0 && abs(a.at(t, j)) < abs(a.at(bi, bj))) bi = t, bj = j;
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // divisibility of the rest of the block
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!mpz_divisible_p(a.at(i, j).get_mpz_t(), a.at(t, t).get_mpz_t())) {
            for (std::size_t k = t; k < c; ++k) a.at(t, k) += a.at(i, k);
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(abs(a.at(t, t)));
  }
  return out;
}

// Rank over F_p (p = 0 for Q) from the elementary divisors.
inline std::size_t rank_mod(const std::vector<mpz_class>& divisors, unsigned long p) {
  std::size_t k = 0;
  for (const auto& d : divisors)
    if (p == 0 || !mpz_divisible_ui_p(d.get_mpz_t(), p)) ++k;
  return k;
}

inline std::size_t rank_mod(const IntegerMatrix& m, unsigned long p) { return rank_mod(elementary_divisors(m), p); }

}  // namespace hecke
