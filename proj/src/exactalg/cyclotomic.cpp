#include "tamefiber/exactalg/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace tamefiber::exactalg {

namespace {

using IPoly = std::vector<Integer>;

// exact quotient of a by monic b over Z
IPoly exact_div(IPoly a, const IPoly& b)
{
  IPoly q(a.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer c = a[k + b.size() - 1];
    q[k] = c;
    for (std::size_t j = 0; j < b.size(); ++j)
      a[k + j] -= c * b[j];
  }
  for (const auto& x : a)
    if (x != 0)
      throw std::logic_error("cyclotomic_poly: inexact division");
  return q;
}

std::uint64_t reduce_exp(long long k, std::uint64_t m)
{
  long long r = k % static_cast<long long>(m);
  if (r < 0)
    r += static_cast<long long>(m);
  return static_cast<std::uint64_t>(r);
}

} // namespace

const std::vector<Integer>& cyclotomic_poly(std::uint64_t m)
{
  static std::mutex mu;
  static std::map<std::uint64_t, IPoly> cache;
  if (m == 0)
    throw std::invalid_argument("cyclotomic_poly: m must be positive");
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end())
      return it->second;
  }
  IPoly f(m + 1, 0);
  f[0] = -1;
  f[m] = 1;
  for (auto d : divisors(m))
    if (d < m)
      f = exact_div(f, cyclotomic_poly(d));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(m, std::move(f)).first->second;
}

CyclotomicNumber::CyclotomicNumber(std::uint64_t conductor) : m_(conductor)
{
  if (m_ == 0)
    throw std::invalid_argument("CyclotomicNumber: conductor must be positive");
  c_.assign(euler_phi(m_), Rational(0));
}

CyclotomicNumber::CyclotomicNumber(std::uint64_t conductor, const Rational& value) : CyclotomicNumber(conductor)
{
  c_[0] = value;
}

CyclotomicNumber CyclotomicNumber::from_powers(std::uint64_t m, const std::vector<Rational>& powers)
{
  // powers indexed by exponent, any length; reduce modulo Phi_m
  const auto& phi = cyclotomic_poly(m);
  const std::size_t d = phi.size() - 1;
  std::vector<Rational> a = powers;
  for (std::size_t k = a.size(); k-- > d;) {
    const Rational c = a[k];
    if (c == 0)
      continue;
    for (std::size_t j = 0; j <= d; ++j)
      a[k - d + j] -= c * Rational(phi[j]);
  }
  CyclotomicNumber out(m);
  for (std::size_t i = 0; i < d && i < a.size(); ++i)
    out.c_[i] = a[i];
  return out;
}

CyclotomicNumber CyclotomicNumber::zeta(std::uint64_t m, long long k)
{
  std::vector<Rational> p(m, Rational(0));
  p[reduce_exp(k, m)] = 1;
  return from_powers(m, p);
}

CyclotomicNumber CyclotomicNumber::operator+(const CyclotomicNumber& o) const
{
  if (m_ != o.m_) {
    const auto l = lcm_u64(m_, o.m_);
    return lift_to(l) + o.lift_to(l);
  }
  CyclotomicNumber r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i)
    r.c_[i] += o.c_[i];
  return r;
}

CyclotomicNumber CyclotomicNumber::operator-() const
{
  CyclotomicNumber r = *this;
  for (auto& x : r.c_)
    x = -x;
  return r;
}

CyclotomicNumber CyclotomicNumber::operator-(const CyclotomicNumber& o) const { return *this + (-o); }

CyclotomicNumber CyclotomicNumber::operator*(const CyclotomicNumber& o) const
{
  if (m_ != o.m_) {
    const auto l = lcm_u64(m_, o.m_);
    return lift_to(l) * o.lift_to(l);
  }
  std::vector<Rational> prod(2 * c_.size(), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0)
      continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      if (o.c_[j] != 0)
        prod[i + j] += c_[i] * o.c_[j];
  }
  return from_powers(m_, prod);
}

CyclotomicNumber CyclotomicNumber::galois(long long k) const
{
  const std::uint64_t kk = reduce_exp(k, m_);
  if (gcd_u64(kk, m_) != 1)
    throw std::invalid_argument("CyclotomicNumber::galois: exponent not coprime to conductor");
  std::vector<Rational> p(m_, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0)
      p[(i * kk) % m_] += c_[i];
  return from_powers(m_, p);
}

CyclotomicNumber CyclotomicNumber::conj() const { return galois(static_cast<long long>(m_) - 1); }

CyclotomicNumber CyclotomicNumber::inverse() const
{
  if (is_zero())
    throw NonUnitError("CyclotomicNumber: inverse of zero");
  // product of the nontrivial conjugates is norm / x
  CyclotomicNumber others(m_, 1);
  for (std::uint64_t k = 2; k < m_; ++k)
    if (gcd_u64(k, m_) == 1)
      others = others * galois(static_cast<long long>(k));
  const CyclotomicNumber norm = others * *this;
  const Rational n = norm.rational_value();
  CyclotomicNumber r = others;
  for (auto& x : r.c_)
    x /= n;
  return r;
}

CyclotomicNumber CyclotomicNumber::lift_to(std::uint64_t big) const
{
  if (big % m_ != 0)
    throw std::invalid_argument("CyclotomicNumber::lift_to: conductor does not divide target");
  if (big == m_)
    return *this;
  const std::uint64_t step = big / m_;
  std::vector<Rational> p(big, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    p[i * step] = c_[i];
  return from_powers(big, p);
}

bool CyclotomicNumber::is_zero() const
{
  for (const auto& x : c_)
    if (x != 0)
      return false;
  return true;
}

bool CyclotomicNumber::is_rational() const
{
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0)
      return false;
  return true;
}

Rational CyclotomicNumber::rational_value() const
{
  if (!is_rational())
    throw std::domain_error("CyclotomicNumber: value is not rational");
  return c_[0];
}

bool CyclotomicNumber::operator==(const CyclotomicNumber& o) const
{
  if (m_ == o.m_)
    return c_ == o.c_;
  const auto l = lcm_u64(m_, o.m_);
  return lift_to(l).c_ == o.lift_to(l).c_;
}

std::string CyclotomicNumber::str() const
{
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0)
      continue;
    if (!first)
      os << " + ";
    first = false;
    os << "(" << c_[i] << ")";
    if (i > 0)
      os << "*z" << m_ << "^" << i;
  }
  if (first)
    os << "0";
  return os.str();
}

} // namespace tamefiber::exactalg
