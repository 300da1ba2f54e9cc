#pragma once

// Ring contexts used by the generic matrix and polynomial code.  A context
// exposes value_type, zero/one/from_int, add/sub/neg/mul, is_zero, is_unit
// and inv (which throws NonUnitError).  Values compare with ==.

#include "tamefiber/exactalg/integer.hpp"

namespace tamefiber::exactalg {

class IntegerRing {
public:
  using value_type = Integer;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const { return v; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  bool is_zero(const value_type& a) const { return a == 0; }
  bool is_unit(const value_type& a) const { return a == 1 || a == -1; }
  value_type inv(const value_type& a) const
  {
    if (!is_unit(a))
      throw NonUnitError("integer is not a unit");
    return a;
  }
};

class RationalField {
public:
  using value_type = Rational;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const { return v; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  bool is_zero(const value_type& a) const { return a == 0; }
  bool is_unit(const value_type& a) const { return a != 0; }
  value_type inv(const value_type& a) const
  {
    if (a == 0)
      throw NonUnitError("division by zero");
    return 1 / a;
  }
};

} // namespace tamefiber::exactalg
