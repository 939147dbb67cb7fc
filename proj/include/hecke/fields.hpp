#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <stdexcept>
#include <gmpxx.h>

namespace hecke {

// Integers modulo the Mersenne prime 2^61 - 1. Used by the numeric
// light-leaf engine; results are lifted back to Z symmetrically.
class ModP {
 public:
  static constexpr std::uint64_t kModulus = (std::uint64_t{1} << 61) - 1;

  constexpr ModP() = default;
  constexpr ModP(std::int64_t x) : v_(reduce_signed(x)) {}  // NOLINT(implicit)

  static ModP from_mpz(const mpz_class& z) {
    mpz_class r = z % mpz_class(std::to_string(kModulus));
    if (r < 0) r += mpz_class(std::to_string(kModulus));
    ModP out;
    out.v_ = std::stoull(r.get_str());
    return out;
  }

  [[nodiscard]] std::uint64_t raw() const { return v_; }
  [[nodiscard]] bool is_zero() const { return v_ == 0; }

  friend ModP operator+(ModP a, ModP b) {
    std::uint64_t s = a.v_ + b.v_;
    if (s >= kModulus) s -= kModulus;
    return from_raw(s);
  }
  friend ModP operator-(ModP a, ModP b) {
    return from_raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + kModulus - b.v_);
  }
  ModP operator-() const { return from_raw(v_ == 0 ? 0 : kModulus - v_); }
  friend ModP operator*(ModP a, ModP b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a.v_) * b.v_;
    std::uint64_t lo = static_cast<std::uint64_t>(p & kModulus);
    std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
    std::uint64_t s = lo + hi;
    if (s >= kModulus) s -= kModulus;
    return from_raw(s);
  }
  [[nodiscard]] ModP inverse() const {
    if (v_ == 0) throw std::domain_error("ModP: inverse of zero");
    return pow(kModulus - 2);
  }
  friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
  ModP& operator+=(ModP o) { return *this = *this + o; }
  ModP& operator-=(ModP o) { return *this = *this - o; }
  ModP& operator*=(ModP o) { return *this = *this * o; }
  ModP& operator/=(ModP o) { return *this = *this / o; }
  friend bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }

  [[nodiscard]] ModP pow(std::uint64_t e) const {
    ModP base = *this, acc = from_raw(1);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  // Symmetric representative in (-p/2, p/2).
  [[nodiscard]] std::int64_t lift() const {
    return v_ > kModulus / 2 ? -static_cast<std::int64_t>(kModulus - v_)
                             : static_cast<std::int64_t>(v_);
  }

 private:
  static constexpr ModP from_raw(std::uint64_t x) {
    ModP m;
    m.v_ = x;
    return m;
  }
  static constexpr std::uint64_t reduce_signed(std::int64_t x) {
    if (x >= 0) return static_cast<std::uint64_t>(x) % kModulus;
    std::uint64_t m = static_cast<std::uint64_t>(-(x + 1)) % kModulus;  // avoids INT64_MIN overflow
    return m == kModulus - 1 ? 0 : kModulus - 1 - m;
  }
  std::uint64_t v_ = 0;
};

// Field traits used by the localization code: everything needed to move
// between a concrete field and exact integers.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<ModP> {
  static ModP from_int(std::int64_t x) { return ModP(x); }
  static bool is_zero(const ModP& x) { return x.is_zero(); }
  // Values beyond this bound are treated as suspicious lifts.
  static constexpr std::int64_t kTrustedBound = std::int64_t{1} << 40;
  static std::optional<mpz_class> to_integer(const ModP& x) {
    std::int64_t l = x.lift();
    if (l > kTrustedBound || l < -kTrustedBound) return std::nullopt;
    return mpz_class(static_cast<long>(l));
  }
};

template <>
struct FieldTraits<mpq_class> {
  static mpq_class from_int(std::int64_t x) { return mpq_class(static_cast<long>(x)); }
  static bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
  static std::optional<mpz_class> to_integer(const mpq_class& x) {
    if (x.get_den() != 1) return std::nullopt;
    return x.get_num();
  }
};

template <class F>
F field_from_mpz(const mpz_class& z) {
  if constexpr (std::is_same_v<F, ModP>) {
    return ModP::from_mpz(z);
  } else {
    return F(z);
  }
}

}  // namespace hecke
