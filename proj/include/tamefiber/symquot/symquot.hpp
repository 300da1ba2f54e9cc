#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tamefiber/exactalg/integer.hpp"
#include "tamefiber/exactalg/poly.hpp"

namespace tamefiber::symquot {

using exactalg::Integer;
using exactalg::Rational;

/// Weakly decreasing sequence of positive integers.
class Partition {
public:
  Partition() = default;
  /// Sorts and drops zero parts.
  explicit Partition(std::vector<unsigned> parts);

  const std::vector<unsigned>& parts() const { return parts_; }
  unsigned size() const;
  std::size_t length() const { return parts_.size(); }
  /// Number of parts equal to j.
  unsigned multiplicity(unsigned j) const;
  Partition conjugate() const;
  std::string str() const;

  auto operator<=>(const Partition&) const = default;

private:
  std::vector<unsigned> parts_;
};

/// a dominates b (same size assumed): partial sums of a are >= those of b.
bool dominates(const Partition& a, const Partition& b);

/// Partitions of d with parts <= max_part and at most max_length parts, in
/// decreasing lexicographic order.
std::vector<Partition> partitions(unsigned d, unsigned max_part, unsigned max_length);

/// Exponent vector (a_1, ..., a_n) of e_1^{a_1} ... e_n^{a_n}; a_n may be negative.
using EMonomial = std::vector<long>;

long weight(const EMonomial& a);
/// Partition with a_j parts equal to j (a_n >= 0 required).
Partition partition_of(const EMonomial& a);
/// Exponent vector of e_mu.
EMonomial monomial_of(const Partition& mu, unsigned n);

/// Integer combination of monomials in e_1..e_n (e_n invertible), tagged with (q, n).
class SymPolynomialE {
public:
  SymPolynomialE(unsigned q, unsigned n);

  static SymPolynomialE constant(unsigned q, unsigned n, const Integer& c);
  static SymPolynomialE monomial(unsigned q, unsigned n, const EMonomial& a, const Integer& c = 1);
  /// The generator e_i.
  static SymPolynomialE e(unsigned q, unsigned n, unsigned i);

  unsigned q() const { return q_; }
  unsigned n() const { return n_; }
  const std::map<EMonomial, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const EMonomial& a, const Integer& c);

  SymPolynomialE operator+(const SymPolynomialE& o) const;
  SymPolynomialE operator-(const SymPolynomialE& o) const;
  SymPolynomialE operator*(const SymPolynomialE& o) const;
  SymPolynomialE scaled(const Integer& c) const;
  bool operator==(const SymPolynomialE& o) const = default;

  std::string str() const;

private:
  void check_compatible(const SymPolynomialE& o) const;

  unsigned q_;
  unsigned n_;
  std::map<EMonomial, Integer> terms_;
};

/// e_mu = sum_lambda T(mu, lambda) m_lambda in n variables; rows mu have parts
/// <= n, columns lambda have at most n parts.  Entries count 0-1 matrices with
/// row sums mu and column sums lambda.
struct TransitionMatrix {
  std::vector<Partition> rows;
  std::vector<Partition> cols;
  std::vector<std::vector<Integer>> entries;
};

TransitionMatrix e_to_m_transition(unsigned d, unsigned n);

/// The monomial symmetric function m_lambda written in the e-basis (lambda with at most n parts).
SymPolynomialE m_in_e_basis(const Partition& lambda, unsigned q, unsigned n);

/// Replacement for e_i^q modulo the ideal: e_i - sum_{mu != (i^q)} c_mu e_mu,
/// where m_{(q^i)} = sum_mu c_mu e_mu.
SymPolynomialE rewrite_rule(unsigned i, unsigned q, unsigned n);

/// Generator e_i(x_1^q, ..., x_n^q) - e_i of the ideal, expressed in the e-basis.
SymPolynomialE ideal_generator(unsigned i, unsigned q, unsigned n);

bool is_canonical(const EMonomial& a, unsigned q);

/// Canonical representative modulo the ideal: a_j <= q-1 for j < n and 0 <= a_n <= q-2.
SymPolynomialE normal_form(const SymPolynomialE& x);

/// Canonical monomials in increasing lexicographic order; q^{n-1}(q-1) of them.
std::vector<EMonomial> basis(unsigned q, unsigned n);

/// "a_1,...,a_n:coeff" records in basis (lexicographic) order.
std::vector<std::string> serialize(const SymPolynomialE& x);
SymPolynomialE parse(unsigned q, unsigned n, const std::vector<std::string>& records);

/// Image of an integer in a ring context with only from_int(long long).
template <class R>
typename R::value_type integer_to_ring(const R& r, const Integer& c)
{
  if (c >= std::numeric_limits<long long>::min() && c <= std::numeric_limits<long long>::max())
    return r.from_int(static_cast<long long>(c));
  const bool negative = c < 0;
  Integer x = negative ? Integer(-c) : c;
  const auto base = r.from_int(1LL << 30);
  std::vector<long long> digits;
  while (x != 0) {
    digits.push_back(static_cast<long long>(x & ((Integer(1) << 30) - 1)));
    x >>= 30;
  }
  auto acc = r.zero();
  for (std::size_t k = digits.size(); k-- > 0;)
    acc = r.add(r.mul(acc, base), r.from_int(digits[k]));
  return negative ? r.neg(acc) : acc;
}

/// Value at the multiset `point` of n invertible scalars: e_i is sent to the
/// i-th elementary symmetric function of the entries.  Throws NonUnitError if
/// the product of the entries is not a unit and a negative e_n power occurs,
/// or if any entry is not a unit.
template <class R>
typename R::value_type evaluate(const R& r, const SymPolynomialE& x, const std::vector<typename R::value_type>& point)
{
  using V = typename R::value_type;
  const unsigned n = x.n();
  if (point.size() != n)
    throw std::invalid_argument("evaluate: point has the wrong number of entries");
  for (const auto& z : point)
    if (!r.is_unit(z))
      throw exactalg::NonUnitError("evaluate: point entry is not invertible");
  const auto charp = exactalg::poly_from_roots(r, point);
  std::vector<V> e(n + 1, r.zero());
  for (unsigned i = 1; i <= n; ++i) {
    const V c = n - i < charp.size() ? charp[n - i] : r.zero();
    e[i] = (i % 2 == 0) ? c : r.neg(c);
  }
  const V en_inv = r.inv(e[n]);
  V total = r.zero();
  for (const auto& [a, c] : x.terms()) {
    V term = integer_to_ring(r, c);
    for (unsigned j = 1; j <= n; ++j) {
      const long k = a[j - 1];
      const V& base = k >= 0 ? e[j] : en_inv;
      for (long s = 0; s < (k >= 0 ? k : -k); ++s)
        term = r.mul(term, base);
    }
    total = r.add(total, term);
  }
  return total;
}

/// A root of unity j/m in Q/Z.
using RootFraction = std::pair<std::uint64_t, std::uint64_t>;

/// Nonsingularity of the evaluation pairing basis x points, certified by the
/// rank of its image under Z[zeta_M] -> F_P (P = 1 mod M prime).
struct PairingCertificate {
  std::size_t basis_size = 0;
  std::size_t point_count = 0;
  std::uint64_t conductor = 0;
  std::uint64_t prime = 0;
  std::size_t rank_mod_prime = 0;
  bool nonsingular = false;
};

PairingCertificate certify_pairing(unsigned q, unsigned n, const std::vector<std::vector<RootFraction>>& points);

/// Rank of the same pairing matrix computed exactly over Q(zeta_M).
std::size_t exact_pairing_rank(unsigned q, unsigned n, const std::vector<std::vector<RootFraction>>& points);

} // namespace tamefiber::symquot
