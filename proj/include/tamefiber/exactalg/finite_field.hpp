#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tamefiber/exactalg/integer.hpp"

namespace tamefiber::exactalg {

/// The field F_{p^e}, p^e <= 2^16.  Elements are indices sum c_i p^i of their
/// coefficient vectors in the basis 1, x, ..., x^{e-1}, x a root of the
/// defining polynomial.  Prime-field elements are therefore the integers 0..p-1.
class FiniteField {
public:
  using value_type = std::uint32_t;

  /// Cached instance; the defining polynomial is the least monic irreducible
  /// of degree e when non-leading coefficient vectors are ordered by index.
  static std::shared_ptr<const FiniteField> get(std::uint32_t p, unsigned e);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  std::uint32_t size() const { return q_; }
  /// Monic defining polynomial over F_p, coefficients low to high (length e+1).
  const std::vector<std::uint32_t>& defining_poly() const { return modulus_; }
  /// The primitive element of least index.
  value_type primitive() const { return exp_.size() > 1 ? exp_[1] : 1; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const;
  value_type add(value_type a, value_type b) const;
  value_type sub(value_type a, value_type b) const { return add(a, neg_[b]); }
  value_type neg(value_type a) const { return neg_[a]; }
  value_type mul(value_type a, value_type b) const;
  bool is_zero(value_type a) const { return a == 0; }
  bool is_unit(value_type a) const { return a != 0; }
  value_type inv(value_type a) const;
  value_type pow(value_type a, long long k) const;
  value_type frobenius(value_type a) const { return pow(a, p_); }

  /// Discrete logarithm to the base primitive(), in [0, q-1); a != 0.
  std::uint32_t log(value_type a) const;
  value_type exp(long long k) const;
  /// Multiplicative order of a != 0.
  std::uint32_t order(value_type a) const;

  std::vector<std::uint32_t> coeffs(value_type a) const;
  value_type from_coeffs(const std::vector<std::uint32_t>& c) const;
  /// Absolute trace to the prime field, as an integer in [0, p).
  std::uint32_t trace(value_type a) const;

  std::string name() const;

  /// Embedding F_{p^e} -> F_{p^e'} (e | e'), as a table indexed by small-field elements.
  /// x is sent to the least-index root of its defining polynomial.
  static std::vector<value_type> embedding(const FiniteField& small, const FiniteField& big);

  FiniteField(std::uint32_t p, unsigned e);

private:
  value_type slow_mul(value_type a, value_type b) const;

  std::uint32_t p_;
  unsigned e_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<value_type> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<value_type> neg_;
  std::vector<std::uint16_t> add_table_;
};

/// All monic irreducible polynomials test; used for the defining polynomial search.
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& f, std::uint32_t p);

} // namespace tamefiber::exactalg
