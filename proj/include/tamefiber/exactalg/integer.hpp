#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tamefiber::exactalg {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when an element that must be a unit is not.
class NonUnitError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
bool is_prime_u64(std::uint64_t n);
std::uint64_t ipow_u64(std::uint64_t base, unsigned exp);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

/// Exponent of `prime` in `n` (n > 0).
unsigned valuation_u64(std::uint64_t n, std::uint64_t prime);
unsigned valuation(const Integer& n, std::uint64_t prime);

/// Distinct prime divisors, ascending.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);

/// n = p^e with p prime; returns {p, e} or {0, 0} if n is not a prime power.
std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t n);

Integer factorial(unsigned n);

} // namespace tamefiber::exactalg
