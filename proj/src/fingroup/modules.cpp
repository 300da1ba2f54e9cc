#include "tamefiber/fingroup/modules.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "tamefiber/exactalg/integer.hpp"
#include "tamefiber/fingroup/characters.hpp"

namespace tamefiber::fingroup {

namespace {

using exactalg::IntegerRing;
using exactalg::Rational;
using exactalg::RationalField;

IntMat int_identity(std::size_t k)
{
  return exactalg::mat_identity(IntegerRing{}, k);
}

// rho(x) for a single element, block (i, j) = beta(x_i^{-1} x x_j)
IntMat induced_matrix(const FqGroup& g, const CosetDecomposition& cd, std::size_t k, const BlockRep& beta, Elem x)
{
  const std::size_t m = cd.reps.size();
  IntMat out(m * k, m * k, Integer(0));
  for (std::size_t j = 0; j < m; ++j) {
    const Elem y = g.mul(x, cd.reps[j]);
    const std::size_t i = cd.coset_of[y];
    const Elem h = g.mul(g.inv(cd.reps[i]), y);
    exactalg::mat_set_block<IntegerRing>(out, i * k, j * k, beta(h));
  }
  return out;
}

std::vector<std::vector<Integer>> hermite_rows(std::vector<std::vector<Integer>> rows, std::size_t d)
{
  std::size_t r = 0;
  for (std::size_t c = 0; c < d && r < rows.size(); ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])))
          best = i;
      if (best == rows.size())
        break;
      std::swap(rows[r], rows[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0)
          continue;
        const Integer f = rows[i][c] / rows[r][c];
        for (std::size_t j = c; j < d; ++j)
          rows[i][j] -= f * rows[r][j];
        if (rows[i][c] != 0)
          clean = false;
      }
      if (clean)
        break;
    }
    if (r < rows.size() && rows[r][c] != 0) {
      if (rows[r][c] < 0)
        for (auto& v : rows[r])
          v = -v;
      ++r;
    }
  }
  rows.resize(r);
  // reduce entries above each pivot into [0, pivot)
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t c = 0;
    while (rows[i][c] == 0)
      ++c;
    for (std::size_t u = 0; u < i; ++u) {
      Integer f = rows[u][c] / rows[i][c];
      if (rows[u][c] - f * rows[i][c] < 0)
        --f;
      if (f != 0)
        for (std::size_t j = c; j < d; ++j)
          rows[u][j] -= f * rows[i][j];
    }
  }
  return rows;
}

MatOf<RationalField> to_rational(const IntMat& a)
{
  MatOf<RationalField> out(a.rows(), a.cols(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(i, j) = Rational(a(i, j));
  return out;
}

} // namespace

IntModule induced_module(const FqGroup& g, const std::vector<Elem>& h, std::size_t k, const BlockRep& beta)
{
  if (h.size() * h.size() <= (std::size_t{1} << 20))
    for (Elem a : h)
      for (Elem b : h)
        if (exactalg::mat_mul(IntegerRing{}, beta(a), beta(b)) != beta(g.mul(a, b)))
          throw std::invalid_argument("induced_module: block representation is not multiplicative");
  if (beta(g.identity()) != int_identity(k))
    throw std::invalid_argument("induced_module: identity does not act trivially");
  const auto cd = left_cosets(g, h);
  IntModule out;
  out.dim = cd.reps.size() * k;
  for (Elem s : g.generators())
    out.gens.push_back(induced_matrix(g, cd, k, beta, s));
  const auto& gens = g.generators();
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = 0; b < gens.size(); ++b)
      if (exactalg::mat_mul(IntegerRing{}, out.gens[a], out.gens[b]) !=
          induced_matrix(g, cd, k, beta, g.mul(gens[a], gens[b])))
        throw std::logic_error("induced_module: not a representation");
  return out;
}

unsigned gelfand_graev_multiplicity(const FqGroup& g)
{
  return g.field().characteristic() - 1;
}

IntModule gelfand_graev_lattice(const FqGroup& g)
{
  const unsigned p = g.field().characteristic();
  const std::size_t k = p - 1;
  // multiplication by zeta_p on 1, zeta, ..., zeta^{p-2}
  IntMat c(k, k, Integer(0));
  for (std::size_t i = 0; i + 1 < k; ++i)
    c(i + 1, i) = 1;
  for (std::size_t i = 0; i < k; ++i)
    c(i, k - 1) = -1;
  std::vector<IntMat> powers{int_identity(k)};
  for (unsigned e = 1; e < p; ++e)
    powers.push_back(exactalg::mat_mul(IntegerRing{}, powers.back(), c));
  const BlockRep beta = [&g, powers](Elem u) { return powers[psi_exponent(g, u)]; };
  return induced_module(g, g.unipotent_radical(), k, beta);
}

IntModule principal_series_lattice(const FqGroup& g, const std::vector<std::uint32_t>& j)
{
  const std::uint64_t m = g.q() - 1;
  if (j.size() != g.n())
    throw std::invalid_argument("principal_series_lattice: need one exponent per diagonal entry");
  for (auto v : j)
    if ((2 * std::uint64_t{v}) % m != 0)
      throw std::invalid_argument("principal_series_lattice: character values are not +-1");
  const FiniteField& f = g.field();
  const BlockRep beta = [&g, &f, j, m](Elem b) {
    std::uint64_t k = 0;
    for (unsigned i = 0; i < g.n(); ++i)
      k += std::uint64_t{j[i]} * f.log(g.entry(b, i, i));
    IntMat out(1, 1, Integer(1));
    // zeta_m^k with zeta_m^{m/2} = -1
    if (m % 2 == 0 && (k % m) == m / 2)
      out(0, 0) = -1;
    return out;
  };
  return induced_module(g, g.borel(), 1, beta);
}

IntModule sublattice_module(const IntModule& m, const std::vector<Integer>& x, std::uint64_t ell)
{
  const std::size_t d = m.dim;
  if (x.size() != d)
    throw std::invalid_argument("sublattice_module: vector has wrong length");
  // orbit of x under the monoid generated by the generators, i.e. G x
  std::set<std::vector<Integer>> orbit{x};
  std::deque<std::vector<Integer>> todo{x};
  while (!todo.empty()) {
    const auto v = todo.front();
    todo.pop_front();
    for (const auto& a : m.gens) {
      auto w = exactalg::mat_vec(IntegerRing{}, a, v);
      if (orbit.insert(w).second)
        todo.push_back(std::move(w));
    }
  }
  std::vector<std::vector<Integer>> rows(orbit.begin(), orbit.end());
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Integer> e(d, 0);
    e[i] = Integer(ell);
    rows.push_back(std::move(e));
  }
  const auto basis = hermite_rows(std::move(rows), d);
  if (basis.size() != d)
    throw std::logic_error("sublattice_module: lattice is not of full rank");
  IntMat b(d, d, Integer(0));
  Integer index = 1;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t r = 0; r < d; ++r)
      b(r, i) = basis[i][r];
    index *= basis[i][i];
  }
  const Integer full = exactalg::ipow_u64(ell, static_cast<unsigned>(d));
  if (index == 1 || index == full)
    throw std::logic_error("sublattice_module: lattice equals L or ell L");
  const RationalField qf;
  const auto bq = to_rational(b);
  const auto binv = exactalg::invert(qf, bq);
  IntModule out;
  out.dim = d;
  for (const auto& a : m.gens) {
    const auto mq = exactalg::mat_mul(qf, exactalg::mat_mul(qf, binv, to_rational(a)), bq);
    IntMat mi(d, d, Integer(0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (denominator(mq(i, j)) != 1)
          throw std::logic_error("sublattice_module: lattice is not G-stable");
        mi(i, j) = numerator(mq(i, j));
      }
    out.gens.push_back(std::move(mi));
  }
  return out;
}

std::vector<unsigned> smith_valuations(const ArtinLocalRing& A, MatOf<ArtinLocalRing> m)
{
  if (!A.is_chain_ring())
    throw std::invalid_argument("smith_valuations: ring is not a chain ring");
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<unsigned> out;
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    std::size_t pr = rows, pc = cols;
    unsigned best = A.nilpotency_index();
    for (std::size_t i = k; i < rows && best > 0; ++i)
      for (std::size_t j = k; j < cols; ++j)
        if (!A.is_zero(m(i, j)) && A.valuation(m(i, j)) < best) {
          best = A.valuation(m(i, j));
          pr = i;
          pc = j;
          if (best == 0)
            break;
        }
    if (pr == rows)
      break;
    if (pr != k)
      for (std::size_t j = 0; j < cols; ++j)
        std::swap(m(pr, j), m(k, j));
    if (pc != k)
      for (std::size_t i = 0; i < rows; ++i)
        std::swap(m(i, pc), m(i, k));
    const auto piv = m(k, k);
    for (std::size_t i = k + 1; i < rows; ++i) {
      if (A.is_zero(m(i, k)))
        continue;
      const auto c = A.divide(m(i, k), piv);
      if (!c)
        throw std::logic_error("smith_valuations: pivot does not divide column entry");
      for (std::size_t j = k; j < cols; ++j)
        m(i, j) = A.sub(m(i, j), A.mul(*c, m(k, j)));
    }
    for (std::size_t j = k + 1; j < cols; ++j) {
      if (A.is_zero(m(k, j)))
        continue;
      const auto c = A.divide(m(k, j), piv);
      if (!c)
        throw std::logic_error("smith_valuations: pivot does not divide row entry");
      m(k, j) = A.zero();
    }
    out.push_back(A.valuation(piv));
  }
  return out;
}

HomProfile hom_profile(const ArtinLocalRing& A, const MatrixModule<ArtinLocalRing>& a,
                       const MatrixModule<ArtinLocalRing>& b)
{
  const auto sys = intertwiner_system(A, a, b);
  HomProfile out;
  out.unknowns = sys.cols();
  const auto vals = smith_valuations(A, sys);
  out.free_rank = out.unknowns - vals.size();
  for (unsigned v : vals)
    if (v > 0)
      out.torsion.push_back(v);
  return out;
}

} // namespace tamefiber::fingroup
