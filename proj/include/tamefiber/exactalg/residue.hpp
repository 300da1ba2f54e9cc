#pragma once

#include <string>

#include "tamefiber/exactalg/integer.hpp"

namespace tamefiber::exactalg {

/// Element of Z/N for an arbitrary-precision modulus N >= 2, kept reduced in [0, N).
class ResidueRingElem {
public:
  ResidueRingElem(Integer modulus, Integer value);

  const Integer& modulus() const { return modulus_; }
  const Integer& value() const { return value_; }

  ResidueRingElem operator+(const ResidueRingElem& o) const;
  ResidueRingElem operator-(const ResidueRingElem& o) const;
  ResidueRingElem operator*(const ResidueRingElem& o) const;
  ResidueRingElem operator-() const;

  bool is_unit() const;
  /// Throws NonUnitError unless gcd(value, N) = 1.
  ResidueRingElem inverse() const;
  ResidueRingElem pow(Integer e) const;

  bool operator==(const ResidueRingElem& o) const = default;
  std::string str() const;

private:
  void check_same(const ResidueRingElem& o) const;

  Integer modulus_;
  Integer value_;
};

/// Ring context for Z/N, usable with the generic matrix/polynomial templates.
class ResidueRing {
public:
  using value_type = Integer;

  explicit ResidueRing(Integer modulus);

  const Integer& modulus() const { return modulus_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1 % modulus_; }
  value_type from_int(long long v) const;
  value_type add(const value_type& a, const value_type& b) const;
  value_type sub(const value_type& a, const value_type& b) const;
  value_type neg(const value_type& a) const;
  value_type mul(const value_type& a, const value_type& b) const;
  bool is_zero(const value_type& a) const { return a == 0; }
  bool is_unit(const value_type& a) const;
  value_type inv(const value_type& a) const;

private:
  Integer modulus_;
};

} // namespace tamefiber::exactalg
