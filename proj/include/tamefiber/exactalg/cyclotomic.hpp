#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tamefiber/exactalg/integer.hpp"

namespace tamefiber::exactalg {

/// Integer coefficients of the m-th cyclotomic polynomial, low to high (cached).
const std::vector<Integer>& cyclotomic_poly(std::uint64_t m);

/// Element of Q(zeta_m), stored as rational coefficients of 1, zeta, ...,
/// zeta^{phi(m)-1}, always reduced modulo Phi_m.
class CyclotomicNumber {
public:
  CyclotomicNumber() : CyclotomicNumber(1) {}
  explicit CyclotomicNumber(std::uint64_t conductor);
  CyclotomicNumber(std::uint64_t conductor, const Rational& value);

  /// zeta_m^k.
  static CyclotomicNumber zeta(std::uint64_t m, long long k);

  std::uint64_t conductor() const { return m_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  CyclotomicNumber operator+(const CyclotomicNumber& o) const;
  CyclotomicNumber operator-(const CyclotomicNumber& o) const;
  CyclotomicNumber operator*(const CyclotomicNumber& o) const;
  CyclotomicNumber operator-() const;
  CyclotomicNumber& operator+=(const CyclotomicNumber& o) { return *this = *this + o; }
  CyclotomicNumber& operator*=(const CyclotomicNumber& o) { return *this = *this * o; }

  /// Complex conjugation, the Galois map zeta -> zeta^{-1}.
  CyclotomicNumber conj() const;
  /// Galois automorphism zeta -> zeta^k, gcd(k, m) = 1.
  CyclotomicNumber galois(long long k) const;
  /// Throws NonUnitError for zero.
  CyclotomicNumber inverse() const;
  /// Same number viewed in Q(zeta_M), m | M.
  CyclotomicNumber lift_to(std::uint64_t big) const;

  bool is_zero() const;
  bool is_rational() const;
  /// Throws unless is_rational().
  Rational rational_value() const;

  /// Values in different fields compare after lifting to the common field.
  bool operator==(const CyclotomicNumber& o) const;

  std::string str() const;

private:
  static CyclotomicNumber from_powers(std::uint64_t m, const std::vector<Rational>& powers);

  std::uint64_t m_;
  std::vector<Rational> c_;
};

/// Ring context for a fixed Q(zeta_m).
class CyclotomicField {
public:
  using value_type = CyclotomicNumber;

  explicit CyclotomicField(std::uint64_t m) : m_(m) {}
  std::uint64_t conductor() const { return m_; }

  value_type zero() const { return CyclotomicNumber(m_); }
  value_type one() const { return CyclotomicNumber(m_, 1); }
  value_type from_int(long long v) const { return CyclotomicNumber(m_, v); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  bool is_zero(const value_type& a) const { return a.is_zero(); }
  bool is_unit(const value_type& a) const { return !a.is_zero(); }
  value_type inv(const value_type& a) const { return a.inverse(); }

private:
  std::uint64_t m_;
};

} // namespace tamefiber::exactalg
