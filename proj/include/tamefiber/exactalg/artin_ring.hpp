#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tamefiber/exactalg/finite_field.hpp"
#include "tamefiber/exactalg/poly.hpp"

namespace tamefiber::exactalg {

/// Finite commutative local ring of characteristic l^a, given by a basis
/// b_0 = 1, b_1, ... with per-coordinate moduli (powers of l dividing l^a) and
/// structure constants.  Elements are mixed-radix indices of coordinate vectors.
///
/// The constructor checks the ring axioms (exhaustively on small rings,
/// otherwise on a deterministic sample), that the residue map is a ring
/// homomorphism onto a field, that every element outside the maximal ideal is
/// a unit, and that the maximal ideal is nilpotent.
class ArtinLocalRing {
public:
  using value_type = std::uint32_t;

  struct Spec {
    std::string name;
    std::uint64_t ell = 0;
    unsigned a = 1;
    std::vector<std::uint64_t> moduli;
    /// c[i][j][k]: coefficient of b_k in b_i * b_j
    std::vector<std::vector<std::vector<std::uint64_t>>> structure;
    unsigned residue_degree = 1;
    /// residue field element (as coefficient vector over F_l) of each basis vector
    std::vector<std::vector<std::uint32_t>> residue_of_basis;
    /// additive generators of the maximal ideal, as coordinate vectors
    std::vector<std::vector<std::uint64_t>> max_ideal_generators;
  };

  explicit ArtinLocalRing(Spec spec);

  /// Z/l^a.
  static std::shared_ptr<const ArtinLocalRing> integers_mod(std::uint64_t ell, unsigned a);
  /// F_{l^e}[t]/(t^b); b = 1 gives the field itself.
  static std::shared_ptr<const ArtinLocalRing> truncated_poly(std::uint64_t ell, unsigned e, unsigned b);
  /// Z/l^a[t]/(t^b, l^{a-1} t), a >= 2, b >= 2.
  static std::shared_ptr<const ArtinLocalRing> truncated_mixed(std::uint64_t ell, unsigned a, unsigned b);

  const std::string& name() const { return spec_.name; }
  std::uint64_t ell() const { return spec_.ell; }
  unsigned char_exponent() const { return spec_.a; }
  std::uint32_t size() const { return size_; }
  std::size_t rank() const { return spec_.moduli.size(); }
  const std::vector<std::uint64_t>& moduli() const { return spec_.moduli; }
  const FiniteField& residue_field() const { return *field_; }
  std::shared_ptr<const FiniteField> residue_field_ptr() const { return field_; }

  value_type zero() const { return 0; }
  value_type one() const { return one_; }
  value_type from_int(long long v) const;
  value_type add(value_type x, value_type y) const;
  value_type sub(value_type x, value_type y) const { return add(x, neg(y)); }
  value_type neg(value_type x) const { return neg_[x]; }
  value_type mul(value_type x, value_type y) const;
  bool is_zero(value_type x) const { return x == 0; }
  bool is_unit(value_type x) const { return residue_[x] != 0; }
  value_type inv(value_type x) const;
  value_type pow(value_type x, unsigned long long k) const;

  std::vector<std::uint64_t> coords(value_type x) const;
  value_type from_coords(const std::vector<std::uint64_t>& c) const;

  /// Residue map A -> F_{l^e}.
  FiniteField::value_type residue(value_type x) const { return residue_[x]; }
  /// A fixed set-theoretic section F_{l^e} -> A of the residue map.
  value_type section(FiniteField::value_type y) const { return section_[y]; }
  bool in_max_ideal(value_type x) const { return residue_[x] == 0; }
  const std::vector<value_type>& max_ideal() const { return max_ideal_; }
  /// Least k with m^k = 0.
  unsigned nilpotency_index() const { return static_cast<unsigned>(ideal_powers_.size()) - 1; }
  /// Largest k with x in m^k (nilpotency_index() for x = 0).
  unsigned valuation(value_type x) const { return valuation_[x]; }
  /// Some c with c * x = y, if one exists.
  std::optional<value_type> divide(value_type y, value_type x) const;
  /// True if m is principal (A is a chain ring); uniformizer() is then a generator.
  bool is_chain_ring() const { return uniformizer_.has_value(); }
  value_type uniformizer() const;

  /// Teichmuller representative: the unique root of unity of order prime to l reducing to y.
  value_type teichmuller(FiniteField::value_type y) const;

private:
  value_type mul_coords(value_type x, value_type y) const;
  void verify();

  Spec spec_;
  std::shared_ptr<const FiniteField> field_;
  std::uint32_t size_ = 0;
  value_type one_ = 0;
  std::vector<std::uint64_t> radix_;
  std::vector<value_type> neg_;
  std::vector<value_type> add_table_;
  std::vector<value_type> mul_table_;
  std::vector<FiniteField::value_type> residue_;
  std::vector<value_type> section_;
  std::vector<value_type> inverse_;
  std::vector<value_type> max_ideal_;
  std::vector<std::vector<bool>> ideal_powers_;
  std::vector<unsigned> valuation_;
  std::optional<value_type> uniformizer_;
};

/// Ring homomorphism between finite local rings, as a table.
struct RingHom {
  std::shared_ptr<const ArtinLocalRing> source;
  std::shared_ptr<const ArtinLocalRing> target;
  std::vector<ArtinLocalRing::value_type> table;

  ArtinLocalRing::value_type operator()(ArtinLocalRing::value_type x) const { return table[x]; }

  /// Checks unit, additivity and multiplicativity (exhaustive).
  bool is_homomorphism() const;

  /// F_{l^e}[t]/(t^b') -> F_{l^e}[t]/(t^b), b <= b'.
  static RingHom truncation(std::shared_ptr<const ArtinLocalRing> src, std::shared_ptr<const ArtinLocalRing> dst);
  /// Reduction Z/l^a' -> Z/l^a, a <= a'.
  static RingHom reduction(std::shared_ptr<const ArtinLocalRing> src, std::shared_ptr<const ArtinLocalRing> dst);
};

/// Surjection A' -> A whose kernel kappa satisfies m_{A'} kappa = 0.
class SquareZeroExtension {
public:
  explicit SquareZeroExtension(RingHom map);

  const ArtinLocalRing& big() const { return *map_.source; }
  const ArtinLocalRing& small() const { return *map_.target; }
  const RingHom& map() const { return map_; }
  /// Kernel elements, ascending.
  const std::vector<ArtinLocalRing::value_type>& kernel() const { return kernel_; }
  /// Least preimage of each element of the small ring.
  ArtinLocalRing::value_type lift(ArtinLocalRing::value_type x) const { return section_[x]; }
  std::string name() const { return big().name() + " -> " + small().name(); }

private:
  RingHom map_;
  std::vector<ArtinLocalRing::value_type> kernel_;
  std::vector<ArtinLocalRing::value_type> section_;
};

using APoly = std::vector<ArtinLocalRing::value_type>;
using FPoly = std::vector<FiniteField::value_type>;

/// Reduction of a polynomial over A to the residue field.
FPoly reduce_poly(const ArtinLocalRing& A, const APoly& p);
/// Lift of a residue polynomial through the ring's section.
APoly lift_poly(const ArtinLocalRing& A, const FPoly& p);

/// Unique factorization P = P_1 ... P_k over A into monic factors with
/// P_i = residue_factors[i] mod m.  Throws std::domain_error if the residue
/// factors are not pairwise coprime or do not multiply to P mod m.
std::vector<APoly> hensel_factor_lift(const ArtinLocalRing& A, const APoly& P, const std::vector<FPoly>& residue_factors);

/// Inverse of u modulo monic P over A, given u invertible modulo (P mod m).
APoly inverse_mod_poly(const ArtinLocalRing& A, const APoly& u, const APoly& P);

} // namespace tamefiber::exactalg
