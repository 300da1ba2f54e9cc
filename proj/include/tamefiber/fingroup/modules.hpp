#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "tamefiber/exactalg/artin_ring.hpp"
#include "tamefiber/exactalg/matrix.hpp"
#include "tamefiber/exactalg/rings.hpp"
#include "tamefiber/fingroup/group.hpp"

namespace tamefiber::fingroup {

using exactalg::ArtinLocalRing;
using exactalg::Integer;
using exactalg::Mat;
using exactalg::MatOf;

/// A representation of G given by one matrix per element of FqGroup::generators().
template <class R>
struct MatrixModule {
  std::vector<MatOf<R>> gens;
  std::size_t dim = 0;
};

using IntModule = MatrixModule<exactalg::IntegerRing>;
using IntMat = Mat<Integer>;

/// h -> k x k integer matrix, a homomorphism on H.
using BlockRep = std::function<IntMat(Elem)>;

/// Ind_H^G of an integral block representation, on the basis x_i (x) e_a for
/// the left coset representatives x_i.  Checks multiplicativity of beta on H
/// and rho(s) rho(t) = rho(st) for generator pairs.
IntModule induced_module(const FqGroup& g, const std::vector<Elem>& h, std::size_t k, const BlockRep& beta);

/// Ind_U of Z[zeta_p] with u acting by zeta_p^{c(u)}, written over Z via the
/// companion matrix of Phi_p.  Rank (p-1)|G/U|; over a splitting ring it is
/// the sum of the p-1 Galois twists of Gamma, all isomorphic to Gamma.
IntModule gelfand_graev_lattice(const FqGroup& g);
/// p - 1, the multiplicity of Gamma in gelfand_graev_lattice.
unsigned gelfand_graev_multiplicity(const FqGroup& g);

/// Standard lattice of Ind_B theta, theta(b) = prod (-1)^{k_i log b_ii}-type
/// character with exponents j (requires 2 j_i = 0 mod q-1 so values are +-1).
IntModule principal_series_lattice(const FqGroup& g, const std::vector<std::uint32_t>& j);

/// The G-stable lattice Z[G] x + ell L inside the lattice L of m, expressed
/// in a Hermite-normal-form basis.  Throws unless ell L < L' < L strictly.
IntModule sublattice_module(const IntModule& m, const std::vector<Integer>& x, std::uint64_t ell);

/// Reduce an integral module into another ring context.
template <class R>
MatrixModule<R> change_ring(const R& r, const IntModule& m)
{
  MatrixModule<R> out;
  out.dim = m.dim;
  for (const auto& a : m.gens) {
    MatOf<R> b(a.rows(), a.cols(), r.zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (a(i, j) > 1000000 || a(i, j) < -1000000)
          throw std::invalid_argument("change_ring: entry too large");
        b(i, j) = r.from_int(static_cast<long long>(a(i, j)));
      }
    out.gens.push_back(std::move(b));
  }
  return out;
}

/// Coefficient matrix of T rho_a(s) - rho_b(s) T = 0 over all generators;
/// unknown T(i, j) sits in column i * a.dim + j.
template <class R>
MatOf<R> intertwiner_system(const R& r, const MatrixModule<R>& a, const MatrixModule<R>& b)
{
  if (a.gens.size() != b.gens.size())
    throw std::invalid_argument("intertwiner_system: generator count mismatch");
  const std::size_t da = a.dim, db = b.dim, unknowns = da * db;
  MatOf<R> sys(a.gens.size() * unknowns, unknowns, r.zero());
  for (std::size_t s = 0; s < a.gens.size(); ++s) {
    const auto& ra = a.gens[s];
    const auto& rb = b.gens[s];
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < da; ++j) {
        const std::size_t row = s * unknowns + i * da + j;
        // sum_k T(i,k) ra(k,j) - sum_k rb(i,k) T(k,j)
        for (std::size_t k = 0; k < da; ++k)
          sys(row, i * da + k) = r.add(sys(row, i * da + k), ra(k, j));
        for (std::size_t k = 0; k < db; ++k)
          sys(row, k * da + j) = r.sub(sys(row, k * da + j), rb(i, k));
      }
  }
  return sys;
}

/// dim Hom_G(a, b) over a field context.
template <class F>
std::size_t hom_dim(const F& f, const MatrixModule<F>& a, const MatrixModule<F>& b)
{
  const auto sys = intertwiner_system(f, a, b);
  return sys.cols() - exactalg::rank(f, sys);
}

/// Solution module of the intertwiner system over a chain ring: free rank and
/// the valuations of the non-unit, nonzero invariant factors (torsion).
struct HomProfile {
  std::size_t unknowns = 0;
  std::size_t free_rank = 0;
  std::vector<unsigned> torsion;

  bool is_free() const { return torsion.empty(); }
};

/// Diagonal valuations of the Smith form; zero entries reported as the nilpotency index.
std::vector<unsigned> smith_valuations(const ArtinLocalRing& A, MatOf<ArtinLocalRing> m);

HomProfile hom_profile(const ArtinLocalRing& A, const MatrixModule<ArtinLocalRing>& a,
                       const MatrixModule<ArtinLocalRing>& b);

} // namespace tamefiber::fingroup
