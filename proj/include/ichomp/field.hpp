#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "ichomp/error.hpp"

namespace ichomp {

/// The prime field F_p. Only the modulus is stored, so this is a cheap value
/// type that can be passed around and compared freely.
class PrimeField {
 public:
  /// Largest supported modulus; element coordinates are stored in bytes.
  static constexpr std::uint32_t kMaxModulus = 251;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) {
      throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    }
    if (p > kMaxModulus) {
      throw Error(ErrorCode::InvalidArgument,
                  "modulus " + std::to_string(p) + " exceeds " +
                      std::to_string(kMaxModulus));
    }
  }

  std::uint32_t modulus() const noexcept { return p_; }

  std::uint32_t reduce(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    auto s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return (a * b) % p_;
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a % p_ == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    // Fermat: a^(p-2)
    return pow(a, p_ - 2);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept {
    std::uint32_t result = 1 % p_;
    std::uint32_t base = a % p_;
    while (e > 0) {
      if (e & 1U) result = mul(result, base);
      base = mul(base, base);
      e >>= 1U;
    }
    return result;
  }

  static bool is_prime(std::uint32_t n) noexcept {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

/// An element of F_p carrying its own modulus, so values from different
/// fields can coexist; mixing them is an error.
class Fp {
 public:
  Fp(PrimeField field, std::int64_t value)
      : field_(field), value_(field.reduce(value)) {}

  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t value() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_ == 0; }

  Fp inv() const { return Fp(field_, field_.inv(value_)); }

  friend Fp operator+(const Fp& a, const Fp& b) {
    check(a, b);
    return Fp(a.field_, a.field_.add(a.value_, b.value_));
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    check(a, b);
    return Fp(a.field_, a.field_.sub(a.value_, b.value_));
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    check(a, b);
    return Fp(a.field_, a.field_.mul(a.value_, b.value_));
  }
  friend Fp operator/(const Fp& a, const Fp& b) {
    check(a, b);
    return a * b.inv();
  }
  Fp operator-() const { return Fp(field_, field_.neg(value_)); }

  friend bool operator==(const Fp& a, const Fp& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Fp& a) {
    return os << a.value_;
  }

 private:
  static void check(const Fp& a, const Fp& b) {
    if (!(a.field_ == b.field_)) {
      throw Error(ErrorCode::ModulusMismatch,
                  "F_" + std::to_string(a.field_.modulus()) + " vs F_" +
                      std::to_string(b.field_.modulus()));
    }
  }

  PrimeField field_;
  std::uint32_t value_;
};

}  // namespace ichomp
