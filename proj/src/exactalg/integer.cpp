#include "tamefiber/exactalg/integer.hpp"

#include <numeric>

namespace tamefiber::exactalg {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

bool is_prime_u64(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

std::uint64_t ipow_u64(std::uint64_t base, unsigned exp)
{
  std::uint64_t r = 1;
  while (exp-- > 0)
    r *= base;
  return r;
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod)
{
  unsigned __int128 r = 1 % mod;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1)
      r = r * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

unsigned valuation_u64(std::uint64_t n, std::uint64_t prime)
{
  if (n == 0)
    throw std::invalid_argument("valuation of zero");
  unsigned v = 0;
  while (n % prime == 0) {
    n /= prime;
    ++v;
  }
  return v;
}

unsigned valuation(const Integer& n, std::uint64_t prime)
{
  if (n == 0)
    throw std::invalid_argument("valuation of zero");
  Integer m = abs(n);
  unsigned v = 0;
  while (m % prime == 0) {
    m /= prime;
    ++v;
  }
  return v;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0)
        n /= d;
    }
  }
  if (n > 1)
    out.push_back(n);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n)
{
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d)
        large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::uint64_t euler_phi(std::uint64_t n)
{
  std::uint64_t r = n;
  for (auto p : prime_divisors(n))
    r = r / p * (p - 1);
  return r;
}

std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t n)
{
  auto ps = prime_divisors(n);
  if (ps.size() != 1)
    return {0, 0};
  return {ps[0], valuation_u64(n, ps[0])};
}

Integer factorial(unsigned n)
{
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i)
    r *= i;
  return r;
}

} // namespace tamefiber::exactalg
