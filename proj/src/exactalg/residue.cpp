#include "tamefiber/exactalg/residue.hpp"

#include <boost/integer/mod_inverse.hpp>

namespace tamefiber::exactalg {

namespace {

Integer reduce(const Integer& v, const Integer& n)
{
  Integer r = v % n;
  if (r < 0)
    r += n;
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& n)
{
  // extended Euclid
  Integer r0 = n, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 != 1)
    throw NonUnitError("residue is not a unit");
  return reduce(t0, n);
}

} // namespace

ResidueRingElem::ResidueRingElem(Integer modulus, Integer value)
  : modulus_(std::move(modulus))
{
  if (modulus_ < 2)
    throw std::invalid_argument("residue ring modulus must be >= 2");
  value_ = reduce(value, modulus_);
}

void ResidueRingElem::check_same(const ResidueRingElem& o) const
{
  if (modulus_ != o.modulus_)
    throw std::invalid_argument("residue ring moduli differ");
}

ResidueRingElem ResidueRingElem::operator+(const ResidueRingElem& o) const
{
  check_same(o);
  return {modulus_, value_ + o.value_};
}

ResidueRingElem ResidueRingElem::operator-(const ResidueRingElem& o) const
{
  check_same(o);
  return {modulus_, value_ - o.value_};
}

ResidueRingElem ResidueRingElem::operator*(const ResidueRingElem& o) const
{
  check_same(o);
  return {modulus_, value_ * o.value_};
}

ResidueRingElem ResidueRingElem::operator-() const { return {modulus_, -value_}; }

bool ResidueRingElem::is_unit() const { return gcd(value_, modulus_) == 1; }

ResidueRingElem ResidueRingElem::inverse() const { return {modulus_, inverse_mod(value_, modulus_)}; }

ResidueRingElem ResidueRingElem::pow(Integer e) const
{
  ResidueRingElem base = *this;
  if (e < 0) {
    base = base.inverse();
    e = -e;
  }
  ResidueRingElem r(modulus_, 1);
  while (e > 0) {
    if ((e & 1) != 0)
      r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

std::string ResidueRingElem::str() const { return value_.str() + " mod " + modulus_.str(); }

ResidueRing::ResidueRing(Integer modulus) : modulus_(std::move(modulus))
{
  if (modulus_ < 2)
    throw std::invalid_argument("residue ring modulus must be >= 2");
}

ResidueRing::value_type ResidueRing::from_int(long long v) const { return reduce(Integer(v), modulus_); }

ResidueRing::value_type ResidueRing::add(const value_type& a, const value_type& b) const
{
  return reduce(a + b, modulus_);
}

ResidueRing::value_type ResidueRing::sub(const value_type& a, const value_type& b) const
{
  return reduce(a - b, modulus_);
}

ResidueRing::value_type ResidueRing::neg(const value_type& a) const { return reduce(-a, modulus_); }

ResidueRing::value_type ResidueRing::mul(const value_type& a, const value_type& b) const
{
  return reduce(a * b, modulus_);
}

bool ResidueRing::is_unit(const value_type& a) const { return gcd(a, modulus_) == 1; }

ResidueRing::value_type ResidueRing::inv(const value_type& a) const { return inverse_mod(a, modulus_); }

} // namespace tamefiber::exactalg
