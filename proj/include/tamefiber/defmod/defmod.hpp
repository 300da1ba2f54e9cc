#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tamefiber/exactalg/artin_ring.hpp"
#include "tamefiber/exactalg/matrix.hpp"

namespace tamefiber::defmod {

using exactalg::ArtinLocalRing;
using exactalg::FiniteField;
using exactalg::SquareZeroExtension;
using AVal = ArtinLocalRing::value_type;
using AMat = exactalg::MatOf<ArtinLocalRing>;
using FMat = exactalg::MatOf<FiniteField>;
using RingPtr = std::shared_ptr<const ArtinLocalRing>;

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

/// Residual representation over the residue field: Phi Sigma Phi^{-1} = Sigma^q.
struct ResidualPoint {
  std::shared_ptr<const FiniteField> field;
  FMat sigma;
  FMat phi;
  std::uint64_t q = 0;

  std::size_t n() const { return sigma.rows(); }
};

/// (Sigma, Phi) over A with Phi Sigma = Sigma^q Phi, both invertible.
struct WeilPoint {
  RingPtr ring;
  AMat sigma;
  AMat phi;
  std::uint64_t q = 0;

  std::size_t n() const { return sigma.rows(); }
  bool operator==(const WeilPoint& o) const { return sigma == o.sigma && phi == o.phi && q == o.q; }
};

/// Throws std::invalid_argument if the relation or the shapes fail.
void validate(const ResidualPoint& r);
bool satisfies_relation(const WeilPoint& pt);
void validate(const WeilPoint& pt);

/// Matrix over A to the residue field, and through the ring's section back.
FMat reduce(const ArtinLocalRing& A, const AMat& m);
AMat lift(const ArtinLocalRing& A, const FMat& m);
ResidualPoint residual_of(const WeilPoint& pt);

/// All lifts of rho-bar to A, by enumerating Sigma-bar + m, Phi-bar + m and
/// testing the relation.  Parallel over Sigma; sorted by (Sigma, Phi) entries.
/// Throws std::length_error when |m|^{2n^2} exceeds the budget.
std::vector<WeilPoint> enumerate_points(const RingPtr& A, const ResidualPoint& rbar,
                                        std::uint64_t budget = kDefaultBudget);

/// (e_1, ..., e_n): signed coefficients of char_poly(Sigma).  Throws
/// std::logic_error if char_poly(Sigma^q) differs from char_poly(Sigma).
std::vector<AVal> char_I(const WeilPoint& pt);

/// True if the tuple (e_1..e_n), e_n a unit, satisfies the q-fixed equations
/// of the symmetric-function quotient (each ideal generator evaluates to 0).
bool in_q_fixed_locus(const ArtinLocalRing& A, const std::vector<AVal>& e, std::uint64_t q);
/// Same test through char_poly(C^q) = char_poly(C) for the companion matrix C.
bool in_q_fixed_locus_companion(const ArtinLocalRing& A, const std::vector<AVal>& e, std::uint64_t q);

/// Tuples (a_1..a_n) with a_i = residue[i] mod m and prod (X - a_i) = prod (X - a_i^q).
std::vector<std::vector<AVal>> z_points(const ArtinLocalRing& A, const std::vector<FiniteField::value_type>& residue,
                                        std::uint64_t q);
/// Tuples (e_1..e_n) reducing to `residue` in the q-fixed locus.
std::vector<std::vector<AVal>> s_points(const ArtinLocalRing& A, const std::vector<FiniteField::value_type>& residue,
                                        std::uint64_t q);

struct Diagonalization {
  AMat delta;
  AMat gamma;
  std::vector<AMat> idempotents;
};

/// gamma^{-1} g gamma = delta block diagonal with gamma = I mod m, for g whose
/// residue is block diagonal (block sizes `blocks`) with pairwise coprime
/// block characteristic polynomials.  Asserts the idempotent identities.
/// Throws std::domain_error on a coprimality failure.
Diagonalization hensel_diagonalize(const ArtinLocalRing& A, const AMat& g, const std::vector<std::size_t>& blocks);

/// a_i on the diagonal, 1 on the superdiagonal.
AMat normalized_sigma(const ArtinLocalRing& A, const std::vector<AVal>& roots);
bool is_normalized(const ArtinLocalRing& A, const AMat& sigma);

struct Normalization {
  WeilPoint point;
  AMat gamma;
};

/// gamma from f_n = e_n, f_{i-1} = (Sigma - a_i) f_i; returns gamma^{-1} rho gamma,
/// which has Sigma normalized with diagonal `roots`.  gamma has last column e_n
/// and gamma = I mod m.  Throws std::invalid_argument if the roots do not give
/// char_poly(Sigma), are not q-stable, or Sigma-bar is not J_n(1)-shaped.
Normalization companion_normalize(const WeilPoint& pt, const std::vector<AVal>& roots);
/// gamma rho gamma^{-1}.
WeilPoint conjugate(const WeilPoint& pt, const AMat& gamma);

/// Phi from its last column v via Phi(e_{i-1}) = (Sigma^q - a_i) Phi(e_i).
/// Asserts Phi Sigma = Sigma^q Phi.
AMat phi_reconstruct(const ArtinLocalRing& A, const AMat& sigma, const std::vector<AVal>& roots,
                     const std::vector<AVal>& v, std::uint64_t q);

/// Block cycle w with identity blocks at (i, i+1) and (d, 1), r x r blocks.
AMat block_cycle(const ArtinLocalRing& A, std::size_t r, std::size_t d);

struct DegreeDData {
  WeilPoint small;        ///< (Sigma_1, (Phi^d)_1) over GL_r with parameter q^d
  std::vector<AMat> psi;  ///< Psi_2, ..., Psi_d
};

/// Forward map for Sigma block diagonal and Phi = w Psi, Psi block diagonal.
/// Asserts (Phi^d)_1 = Psi_2 ... Psi_d Psi_1.  Throws std::invalid_argument on a
/// shape violation.
DegreeDData degree_d_restrict(const WeilPoint& pt, std::size_t r, std::size_t d);
/// Inverse: Sigma'_1 = Sigma, Sigma'_i = Psi_i^{-1} Sigma'_{i-1}^q Psi_i,
/// Psi'_1 = (Psi_2 ... Psi_d)^{-1} Phi.
WeilPoint degree_d_extend(const DegreeDData& data, std::uint64_t q);

enum class Family { Full, Normalized, PhiInLevi };
std::string family_name(Family f);

struct ProbeReport {
  std::string family;
  std::string ring_tower;
  std::uint64_t predicted = 0;
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  std::uint64_t family_points = 0;
  std::uint64_t base_pairs = 0;
  std::uint64_t unlifted_base = 0;  ///< family points whose base image has no lift
  bool pass = false;
};

/// For every A-point x of the family and every A'-point y of the base with
/// matching image, count the lifts of x to A' lying over y.  Base: q-fixed
/// coefficient tuples (Full), Z-tuples (Normalized), per-block q-fixed tuples
/// (PhiInLevi, blocks given by `levi`).  Predicted count |kernel|^{reldim}
/// with reldim n^2, n, sum r_i^2 respectively.  Parallel over x.
ProbeReport smoothness_probe(Family family, const SquareZeroExtension& ext, const ResidualPoint& rbar,
                             const std::vector<std::size_t>& levi = {}, std::uint64_t budget = kDefaultBudget);

/// Every lift over A with Phi block diagonal (shape `levi`) has Sigma block
/// diagonal.  Returns the number of such lifts; throws std::logic_error on a
/// counterexample.
std::uint64_t check_sigma_in_levi(const RingPtr& A, const ResidualPoint& rbar, const std::vector<std::size_t>& levi,
                                  std::uint64_t budget = kDefaultBudget);

/// Every h in GL_n(A) with h g h^{-1} = g^q lies in the block Levi, for each
/// block-diagonal lift g of g-bar.  Returns the number of (g, h) pairs found.
std::uint64_t check_conjugator_in_levi(const RingPtr& A, const FMat& gbar, const std::vector<std::size_t>& levi,
                                       std::uint64_t q, std::uint64_t budget = kDefaultBudget);

namespace reference {

std::vector<WeilPoint> enumerate_points(const RingPtr& A, const ResidualPoint& rbar,
                                        std::uint64_t budget = kDefaultBudget);
ProbeReport smoothness_probe(Family family, const SquareZeroExtension& ext, const ResidualPoint& rbar,
                             const std::vector<std::size_t>& levi = {}, std::uint64_t budget = kDefaultBudget);

} // namespace reference

} // namespace tamefiber::defmod
