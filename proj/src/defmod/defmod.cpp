#include "tamefiber/defmod/defmod.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "tamefiber/exactalg/poly.hpp"
#include "tamefiber/symquot/symquot.hpp"

namespace tamefiber::defmod {

namespace {

using FVal = FiniteField::value_type;

AMat mat_mul(const ArtinLocalRing& A, const AMat& a, const AMat& b)
{
  return exactalg::mat_mul(A, a, b);
}

AMat mat_pow(const ArtinLocalRing& A, const AMat& a, std::uint64_t k)
{
  return exactalg::mat_pow(A, a, k);
}

bool point_less(const WeilPoint& a, const WeilPoint& b)
{
  if (a.sigma.data() != b.sigma.data())
    return a.sigma.data() < b.sigma.data();
  return a.phi.data() < b.phi.data();
}

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t budget)
{
  std::uint64_t out = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (base != 0 && out > budget / base)
      throw std::length_error("enumeration exceeds the budget");
    out *= base;
  }
  if (out > budget)
    throw std::length_error("enumeration exceeds the budget");
  return out;
}

// Fill the free entries of `base` with deltas according to the mixed-radix index.
AMat perturb(const ArtinLocalRing& A, const AMat& base, const std::vector<std::size_t>& free_pos,
             const std::vector<AVal>& deltas, std::uint64_t index)
{
  AMat m = base;
  for (std::size_t pos : free_pos) {
    const AVal d = deltas[index % deltas.size()];
    index /= deltas.size();
    m.data()[pos] = A.add(m.data()[pos], d);
  }
  return m;
}

std::vector<std::size_t> all_positions(std::size_t n)
{
  std::vector<std::size_t> out(n * n);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = i;
  return out;
}

std::vector<std::size_t> block_positions(const std::vector<std::size_t>& levi)
{
  std::size_t n = 0;
  for (auto r : levi)
    n += r;
  std::vector<std::size_t> out;
  std::size_t start = 0;
  for (auto r : levi) {
    for (std::size_t i = start; i < start + r; ++i)
      for (std::size_t j = start; j < start + r; ++j)
        out.push_back(i * n + j);
    start += r;
  }
  return out;
}

bool is_block_diag(const ArtinLocalRing& A, const AMat& m, const std::vector<std::size_t>& levi)
{
  return exactalg::is_block_diagonal(A, m, levi);
}

AMat block_of(const AMat& m, std::size_t start, std::size_t r)
{
  return exactalg::mat_block<ArtinLocalRing>(m, start, start, r, r);
}

// Lifts (s0 + ds, p0 + dp) with ds, dp supported on the free positions and
// entries in `deltas`, satisfying the relation.
std::vector<WeilPoint> lift_search(const RingPtr& ring, const AMat& s0, const AMat& p0,
                                   const std::vector<std::size_t>& sfree, const std::vector<std::size_t>& pfree,
                                   const std::vector<AVal>& deltas, std::uint64_t q, std::uint64_t budget, bool parallel)
{
  const ArtinLocalRing& A = *ring;
  const std::uint64_t ns = checked_power(deltas.size(), sfree.size(), budget);
  const std::uint64_t np = checked_power(deltas.size(), pfree.size(), budget);
  if (ns != 0 && np > budget / ns)
    throw std::length_error("enumeration exceeds the budget");
  std::vector<std::vector<WeilPoint>> found(ns);
  const auto body = [&](std::int64_t si) {
    const AMat s = perturb(A, s0, sfree, deltas, static_cast<std::uint64_t>(si));
    const AMat sq = mat_pow(A, s, q);
    for (std::uint64_t pi = 0; pi < np; ++pi) {
      const AMat p = perturb(A, p0, pfree, deltas, pi);
      if (mat_mul(A, p, s) == mat_mul(A, sq, p))
        found[si].push_back({ring, s, p, q});
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t si = 0; si < static_cast<std::int64_t>(ns); ++si)
      body(si);
  } else {
    for (std::int64_t si = 0; si < static_cast<std::int64_t>(ns); ++si)
      body(si);
  }
  std::vector<WeilPoint> out;
  for (auto& v : found)
    for (auto& pt : v)
      out.push_back(std::move(pt));
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

std::vector<AVal> signed_coeffs(const ArtinLocalRing& A, const AMat& m)
{
  const auto c = exactalg::char_poly(A, m);
  const std::size_t n = m.rows();
  std::vector<AVal> e(n);
  for (std::size_t i = 1; i <= n; ++i)
    e[i - 1] = (i % 2 == 0) ? c[n - i] : A.neg(c[n - i]);
  return e;
}

// prod over entries of e_j^{a_j}, times the integer coefficient
AVal evaluate_e(const ArtinLocalRing& A, const symquot::SymPolynomialE& x, const std::vector<AVal>& e)
{
  const std::size_t n = e.size();
  const AVal en_inv = A.inv(e[n - 1]);
  AVal total = A.zero();
  for (const auto& [a, c] : x.terms()) {
    AVal term = symquot::integer_to_ring(A, c);
    for (std::size_t j = 0; j < n; ++j) {
      const long k = a[j];
      const AVal base = k >= 0 ? e[j] : en_inv;
      term = A.mul(term, A.pow(base, static_cast<unsigned long long>(k >= 0 ? k : -k)));
    }
    total = A.add(total, term);
  }
  return total;
}

const std::vector<symquot::SymPolynomialE>& ideal_generators(unsigned q, unsigned n)
{
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::vector<symquot::SymPolynomialE>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({q, n});
  if (it != cache.end())
    return it->second;
  std::vector<symquot::SymPolynomialE> gens;
  for (unsigned i = 1; i <= n; ++i)
    gens.push_back(symquot::ideal_generator(i, q, n));
  return cache.emplace(std::make_pair(q, n), std::move(gens)).first->second;
}

// Every tuple with entries section(residue_i) + m.
std::vector<std::vector<AVal>> residue_cell(const ArtinLocalRing& A, const std::vector<FVal>& residue)
{
  const auto& m = A.max_ideal();
  std::vector<std::vector<AVal>> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < residue.size(); ++i)
    total *= m.size();
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t idx = k;
    std::vector<AVal> t;
    for (auto r : residue) {
      t.push_back(A.add(A.section(r), m[idx % m.size()]));
      idx /= m.size();
    }
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct FamilySpec {
  Family family;
  std::vector<std::size_t> levi;
  std::uint64_t q;

  bool contains(const ArtinLocalRing& A, const WeilPoint& pt) const
  {
    switch (family) {
    case Family::Full:
      return true;
    case Family::Normalized:
      return is_normalized(A, pt.sigma);
    case Family::PhiInLevi:
      return is_block_diag(A, pt.phi, levi);
    }
    return false;
  }

  std::vector<AVal> base(const ArtinLocalRing& A, const WeilPoint& pt) const
  {
    switch (family) {
    case Family::Full:
      return char_I(pt);
    case Family::Normalized: {
      std::vector<AVal> d;
      for (std::size_t i = 0; i < pt.n(); ++i)
        d.push_back(pt.sigma(i, i));
      return d;
    }
    case Family::PhiInLevi: {
      if (!is_block_diag(A, pt.sigma, levi))
        throw std::logic_error("smoothness_probe: Phi in Levi but Sigma is not");
      std::vector<AVal> out;
      std::size_t start = 0;
      for (auto r : levi) {
        const auto e = signed_coeffs(A, block_of(pt.sigma, start, r));
        out.insert(out.end(), e.begin(), e.end());
        start += r;
      }
      return out;
    }
    }
    return {};
  }

  std::vector<std::vector<AVal>> base_points(const ArtinLocalRing& A, const ResidualPoint& rbar) const
  {
    const FiniteField& f = *rbar.field;
    switch (family) {
    case Family::Full: {
      const auto c = exactalg::char_poly(f, rbar.sigma);
      const std::size_t n = rbar.n();
      std::vector<FVal> e;
      for (std::size_t i = 1; i <= n; ++i)
        e.push_back((i % 2 == 0) ? c[n - i] : f.neg(c[n - i]));
      return s_points(A, e, q);
    }
    case Family::Normalized: {
      std::vector<FVal> d;
      for (std::size_t i = 0; i < rbar.n(); ++i)
        d.push_back(rbar.sigma(i, i));
      return z_points(A, d, q);
    }
    case Family::PhiInLevi: {
      std::vector<std::vector<AVal>> acc{{}};
      std::size_t start = 0;
      for (auto r : levi) {
        const auto blk = exactalg::mat_block<FiniteField>(rbar.sigma, start, start, r, r);
        const auto c = exactalg::char_poly(f, blk);
        std::vector<FVal> e;
        for (std::size_t i = 1; i <= r; ++i)
          e.push_back((i % 2 == 0) ? c[r - i] : f.neg(c[r - i]));
        const auto pts = s_points(A, e, q);
        std::vector<std::vector<AVal>> next;
        for (const auto& a : acc)
          for (const auto& b : pts) {
            auto t = a;
            t.insert(t.end(), b.begin(), b.end());
            next.push_back(std::move(t));
          }
        acc = std::move(next);
        start += r;
      }
      return acc;
    }
    }
    return {};
  }

  std::size_t relative_dim(std::size_t n) const
  {
    switch (family) {
    case Family::Full:
      return n * n;
    case Family::Normalized:
      return n;
    case Family::PhiInLevi: {
      std::size_t d = 0;
      for (auto r : levi)
        d += r * r;
      return d;
    }
    }
    return 0;
  }

  std::vector<std::size_t> phi_free(std::size_t n) const
  {
    return family == Family::PhiInLevi ? block_positions(levi) : all_positions(n);
  }
};

FamilySpec make_family(Family family, const ResidualPoint& rbar, const std::vector<std::size_t>& levi)
{
  FamilySpec spec{family, levi, rbar.q};
  if (family == Family::PhiInLevi) {
    std::size_t n = 0;
    for (auto r : levi)
      n += r;
    if (n != rbar.n() || levi.empty())
      throw std::invalid_argument("smoothness_probe: Levi shape does not match n");
    if (!exactalg::is_block_diagonal(*rbar.field, rbar.phi, levi))
      throw std::invalid_argument("smoothness_probe: Phi-bar is not in the Levi");
  }
  return spec;
}

std::vector<WeilPoint> family_points(const RingPtr& A, const ResidualPoint& rbar, const FamilySpec& spec,
                                     std::uint64_t budget, bool parallel)
{
  const std::size_t n = rbar.n();
  const auto pts = lift_search(A, lift(*A, rbar.sigma), lift(*A, rbar.phi), all_positions(n), spec.phi_free(n),
                               A->max_ideal(), rbar.q, budget, parallel);
  std::vector<WeilPoint> out;
  for (const auto& p : pts)
    if (spec.contains(*A, p))
      out.push_back(p);
  return out;
}

AMat lift_through(const SquareZeroExtension& ext, const AMat& m)
{
  AMat out = m;
  for (auto& x : out.data())
    x = ext.lift(x);
  return out;
}

std::vector<AVal> map_vec(const SquareZeroExtension& ext, const std::vector<AVal>& v)
{
  std::vector<AVal> out;
  for (auto x : v)
    out.push_back(ext.map()(x));
  return out;
}

std::string tower_name(const SquareZeroExtension& ext)
{
  return ext.name();
}

RingPtr big_ring(const SquareZeroExtension& ext)
{
  return ext.map().source;
}

RingPtr small_ring(const SquareZeroExtension& ext)
{
  return ext.map().target;
}

ProbeReport probe_impl(Family family, const SquareZeroExtension& ext, const ResidualPoint& rbar,
                       const std::vector<std::size_t>& levi, std::uint64_t budget, bool parallel)
{
  validate(rbar);
  const FamilySpec spec = make_family(family, rbar, levi);
  const RingPtr big = big_ring(ext), small = small_ring(ext);
  const std::size_t n = rbar.n();
  const auto xs = family_points(small, rbar, spec, budget, parallel);
  const auto ys = spec.base_points(*big, rbar);
  std::map<std::vector<AVal>, std::vector<std::size_t>> ys_over;
  for (std::size_t i = 0; i < ys.size(); ++i)
    ys_over[map_vec(ext, ys[i])].push_back(i);

  ProbeReport rep;
  rep.family = family_name(family);
  rep.ring_tower = tower_name(ext);
  rep.family_points = xs.size();
  rep.predicted = checked_power(ext.kernel().size(), spec.relative_dim(n), ~std::uint64_t{0});

  std::vector<std::vector<std::uint64_t>> counts(xs.size());
  const auto body = [&](std::int64_t k) {
    const auto& x = xs[k];
    const auto key = spec.base(*small, x);
    auto it = ys_over.find(key);
    if (it == ys_over.end())
      return;
    const auto lifts = lift_search(big, lift_through(ext, x.sigma), lift_through(ext, x.phi), all_positions(n),
                                   spec.phi_free(n), ext.kernel(), rbar.q, budget, false);
    if (parallel) {
      std::map<std::vector<AVal>, std::uint64_t> bucket;
      for (const auto& xl : lifts)
        if (spec.contains(*big, xl))
          ++bucket[spec.base(*big, xl)];
      for (std::size_t yi : it->second) {
        auto b = bucket.find(ys[yi]);
        counts[k].push_back(b == bucket.end() ? 0 : b->second);
      }
    } else {
      for (std::size_t yi : it->second) {
        std::uint64_t c = 0;
        for (const auto& xl : lifts)
          if (spec.contains(*big, xl) && spec.base(*big, xl) == ys[yi])
            ++c;
        counts[k].push_back(c);
      }
    }
  };
  std::string error;
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(xs.size()); ++k) {
      try {
        body(k);
      } catch (const std::exception& e) {
#pragma omp critical
        error = e.what();
      }
    }
  } else {
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(xs.size()); ++k)
      body(k);
  }
  if (!error.empty())
    throw std::logic_error(error);

  bool first = true;
  for (const auto& v : counts) {
    if (v.empty())
      ++rep.unlifted_base;
    for (auto c : v) {
      rep.min = first ? c : std::min(rep.min, c);
      rep.max = first ? c : std::max(rep.max, c);
      first = false;
      ++rep.base_pairs;
    }
  }
  rep.pass = !first && rep.min == rep.predicted && rep.max == rep.predicted;
  return rep;
}

} // namespace

void validate(const ResidualPoint& r)
{
  if (!r.field || !r.sigma.square() || !r.phi.square() || r.sigma.rows() != r.phi.rows())
    throw std::invalid_argument("ResidualPoint: bad shapes");
  const FiniteField& f = *r.field;
  if (!exactalg::is_invertible(f, r.sigma) || !exactalg::is_invertible(f, r.phi))
    throw std::invalid_argument("ResidualPoint: matrices must be invertible");
  if (exactalg::mat_mul(f, r.phi, r.sigma) != exactalg::mat_mul(f, exactalg::mat_pow(f, r.sigma, r.q), r.phi))
    throw std::invalid_argument("ResidualPoint: Phi Sigma Phi^{-1} != Sigma^q");
}

bool satisfies_relation(const WeilPoint& pt)
{
  const ArtinLocalRing& A = *pt.ring;
  return mat_mul(A, pt.phi, pt.sigma) == mat_mul(A, mat_pow(A, pt.sigma, pt.q), pt.phi);
}

void validate(const WeilPoint& pt)
{
  if (!pt.ring || !pt.sigma.square() || !pt.phi.square() || pt.sigma.rows() != pt.phi.rows())
    throw std::invalid_argument("WeilPoint: bad shapes");
  if (!exactalg::is_invertible(*pt.ring, pt.sigma) || !exactalg::is_invertible(*pt.ring, pt.phi))
    throw std::invalid_argument("WeilPoint: matrices must be invertible");
  if (!satisfies_relation(pt))
    throw std::invalid_argument("WeilPoint: Phi Sigma Phi^{-1} != Sigma^q");
}

FMat reduce(const ArtinLocalRing& A, const AMat& m)
{
  FMat out(m.rows(), m.cols(), 0);
  for (std::size_t i = 0; i < m.data().size(); ++i)
    out.data()[i] = A.residue(m.data()[i]);
  return out;
}

AMat lift(const ArtinLocalRing& A, const FMat& m)
{
  AMat out(m.rows(), m.cols(), A.zero());
  for (std::size_t i = 0; i < m.data().size(); ++i)
    out.data()[i] = A.section(m.data()[i]);
  return out;
}

ResidualPoint residual_of(const WeilPoint& pt)
{
  return {pt.ring->residue_field_ptr(), reduce(*pt.ring, pt.sigma), reduce(*pt.ring, pt.phi), pt.q};
}

std::vector<WeilPoint> enumerate_points(const RingPtr& A, const ResidualPoint& rbar, std::uint64_t budget)
{
  validate(rbar);
  const std::size_t n = rbar.n();
  return lift_search(A, lift(*A, rbar.sigma), lift(*A, rbar.phi), all_positions(n), all_positions(n),
                     A->max_ideal(), rbar.q, budget, true);
}

std::vector<AVal> char_I(const WeilPoint& pt)
{
  const ArtinLocalRing& A = *pt.ring;
  const auto c = exactalg::char_poly(A, pt.sigma);
  if (exactalg::char_poly(A, mat_pow(A, pt.sigma, pt.q)) != c)
    throw std::logic_error("char_I: char_poly(Sigma^q) != char_poly(Sigma)");
  return signed_coeffs(A, pt.sigma);
}

bool in_q_fixed_locus(const ArtinLocalRing& A, const std::vector<AVal>& e, std::uint64_t q)
{
  if (e.empty() || !A.is_unit(e.back()))
    return false;
  for (const auto& g : ideal_generators(static_cast<unsigned>(q), static_cast<unsigned>(e.size())))
    if (!A.is_zero(evaluate_e(A, g, e)))
      return false;
  return true;
}

bool in_q_fixed_locus_companion(const ArtinLocalRing& A, const std::vector<AVal>& e, std::uint64_t q)
{
  const std::size_t n = e.size();
  if (n == 0 || !A.is_unit(e.back()))
    return false;
  // companion of X^n - e_1 X^{n-1} + ... + (-1)^n e_n
  AMat c(n, n, A.zero());
  for (std::size_t i = 0; i + 1 < n; ++i)
    c(i + 1, i) = A.one();
  for (std::size_t i = 0; i < n; ++i) {
    // coefficient of X^i is (-1)^{n-i} e_{n-i}
    const std::size_t k = n - i;
    const AVal coef = (k % 2 == 0) ? e[k - 1] : A.neg(e[k - 1]);
    c(i, n - 1) = A.neg(coef);
  }
  return exactalg::char_poly(A, mat_pow(A, c, q)) == exactalg::char_poly(A, c);
}

std::vector<std::vector<AVal>> z_points(const ArtinLocalRing& A, const std::vector<FVal>& residue, std::uint64_t q)
{
  std::vector<std::vector<AVal>> out;
  for (auto& t : residue_cell(A, residue)) {
    std::vector<AVal> tq;
    for (auto a : t)
      tq.push_back(A.pow(a, q));
    if (exactalg::poly_equal(A, exactalg::poly_from_roots(A, t), exactalg::poly_from_roots(A, tq)))
      out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::vector<AVal>> s_points(const ArtinLocalRing& A, const std::vector<FVal>& residue, std::uint64_t q)
{
  std::vector<std::vector<AVal>> out;
  for (auto& e : residue_cell(A, residue))
    if (in_q_fixed_locus(A, e, q))
      out.push_back(std::move(e));
  return out;
}

Diagonalization hensel_diagonalize(const ArtinLocalRing& A, const AMat& g, const std::vector<std::size_t>& blocks)
{
  const std::size_t n = g.rows();
  std::size_t total = 0;
  for (auto r : blocks)
    total += r;
  if (!g.square() || total != n)
    throw std::invalid_argument("hensel_diagonalize: block sizes do not match");
  const FiniteField& f = A.residue_field();
  const FMat gbar = reduce(A, g);
  if (!exactalg::is_block_diagonal(f, gbar, blocks))
    throw std::invalid_argument("hensel_diagonalize: residue is not block diagonal");

  const exactalg::APoly P = exactalg::char_poly(A, g);
  std::vector<exactalg::FPoly> residue_factors;
  std::size_t start = 0;
  for (auto r : blocks) {
    residue_factors.push_back(exactalg::char_poly(f, exactalg::mat_block<FiniteField>(gbar, start, start, r, r)));
    start += r;
  }
  const auto factors = exactalg::hensel_factor_lift(A, P, residue_factors);

  Diagonalization out;
  const AMat id = exactalg::mat_identity(A, n);
  AMat sum(n, n, A.zero());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    exactalg::APoly others{A.one()};
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (j != i)
        others = exactalg::poly_mul(A, others, factors[j]);
    const auto u = exactalg::inverse_mod_poly(A, others, factors[i]);
    const auto ri = exactalg::poly_mod(A, exactalg::poly_mul(A, others, u), P);
    out.idempotents.push_back(exactalg::poly_eval_matrix(A, ri, g));
    sum = exactalg::mat_add(A, sum, out.idempotents.back());
  }
  if (sum != id)
    throw std::logic_error("hensel_diagonalize: idempotents do not sum to I");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& e = out.idempotents[i];
    if (mat_mul(A, e, e) != e)
      throw std::logic_error("hensel_diagonalize: R_i(g) is not idempotent");
    if (mat_mul(A, e, g) != mat_mul(A, g, e))
      throw std::logic_error("hensel_diagonalize: R_i(g) does not commute with g");
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (j != i && mat_mul(A, e, out.idempotents[j]) != AMat(n, n, A.zero()))
        throw std::logic_error("hensel_diagonalize: idempotents are not orthogonal");
  }

  out.gamma = AMat(n, n, A.zero());
  start = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t c = start; c < start + blocks[i]; ++c)
      for (std::size_t r = 0; r < n; ++r)
        out.gamma(r, c) = out.idempotents[i](r, c);
    start += blocks[i];
  }
  if (reduce(A, out.gamma) != exactalg::mat_identity(f, n))
    throw std::logic_error("hensel_diagonalize: gamma is not I mod m");
  out.delta = mat_mul(A, exactalg::invert(A, out.gamma), mat_mul(A, g, out.gamma));
  if (!exactalg::is_block_diagonal(A, out.delta, blocks))
    throw std::logic_error("hensel_diagonalize: result is not block diagonal");
  return out;
}

AMat normalized_sigma(const ArtinLocalRing& A, const std::vector<AVal>& roots)
{
  const std::size_t n = roots.size();
  AMat s(n, n, A.zero());
  for (std::size_t i = 0; i < n; ++i) {
    s(i, i) = roots[i];
    if (i + 1 < n)
      s(i, i + 1) = A.one();
  }
  return s;
}

bool is_normalized(const ArtinLocalRing& A, const AMat& sigma)
{
  std::vector<AVal> d;
  for (std::size_t i = 0; i < sigma.rows(); ++i)
    d.push_back(sigma(i, i));
  return sigma == normalized_sigma(A, d);
}

WeilPoint conjugate(const WeilPoint& pt, const AMat& gamma)
{
  const ArtinLocalRing& A = *pt.ring;
  const AMat gi = exactalg::invert(A, gamma);
  return {pt.ring, mat_mul(A, gamma, mat_mul(A, pt.sigma, gi)), mat_mul(A, gamma, mat_mul(A, pt.phi, gi)), pt.q};
}

Normalization companion_normalize(const WeilPoint& pt, const std::vector<AVal>& roots)
{
  const ArtinLocalRing& A = *pt.ring;
  const std::size_t n = pt.n();
  if (roots.size() != n)
    throw std::invalid_argument("companion_normalize: wrong number of roots");
  const auto cp = exactalg::char_poly(A, pt.sigma);
  if (!exactalg::poly_equal(A, exactalg::poly_from_roots(A, roots), cp))
    throw std::invalid_argument("companion_normalize: roots do not give char_poly(Sigma)");
  std::vector<AVal> rq;
  for (auto a : roots)
    rq.push_back(A.pow(a, pt.q));
  if (!exactalg::poly_equal(A, exactalg::poly_from_roots(A, rq), cp))
    throw std::invalid_argument("companion_normalize: root multiset is not q-stable");
  const FMat sbar = reduce(A, pt.sigma);
  std::vector<FVal> rbar;
  for (auto a : roots)
    rbar.push_back(A.residue(a));
  FMat shape(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    shape(i, i) = rbar[i];
    if (i + 1 < n)
      shape(i, i + 1) = 1;
  }
  if (sbar != shape)
    throw std::invalid_argument("companion_normalize: Sigma-bar is not in normalized shape");

  // columns f_n = e_n, f_{i-1} = (Sigma - a_i) f_i
  std::vector<std::vector<AVal>> f(n);
  f[n - 1].assign(n, A.zero());
  f[n - 1][n - 1] = A.one();
  const AMat id = exactalg::mat_identity(A, n);
  for (std::size_t i = n - 1; i > 0; --i) {
    const AMat shifted = exactalg::mat_sub(A, pt.sigma, exactalg::mat_scale(A, roots[i], id));
    f[i - 1] = exactalg::mat_vec(A, shifted, f[i]);
  }
  // Cayley-Hamilton tail: (Sigma - a_1) f_1 = 0
  const auto tail = exactalg::mat_vec(A, exactalg::mat_sub(A, pt.sigma, exactalg::mat_scale(A, roots[0], id)), f[0]);
  for (auto x : tail)
    if (!A.is_zero(x))
      throw std::logic_error("companion_normalize: (Sigma - a_1) f_1 != 0");
  AMat gamma(n, n, A.zero());
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r)
      gamma(r, c) = f[c][r];
  Normalization out;
  out.gamma = gamma;
  out.point = conjugate(pt, exactalg::invert(A, gamma));
  if (out.point.sigma != normalized_sigma(A, roots))
    throw std::logic_error("companion_normalize: conjugated Sigma is not normalized");
  return out;
}

AMat phi_reconstruct(const ArtinLocalRing& A, const AMat& sigma, const std::vector<AVal>& roots,
                     const std::vector<AVal>& v, std::uint64_t q)
{
  const std::size_t n = sigma.rows();
  if (roots.size() != n || v.size() != n)
    throw std::invalid_argument("phi_reconstruct: size mismatch");
  const AMat sq = mat_pow(A, sigma, q);
  const AMat id = exactalg::mat_identity(A, n);
  std::vector<std::vector<AVal>> cols(n);
  cols[n - 1] = v;
  for (std::size_t i = n - 1; i > 0; --i)
    cols[i - 1] = exactalg::mat_vec(A, exactalg::mat_sub(A, sq, exactalg::mat_scale(A, roots[i], id)), cols[i]);
  AMat phi(n, n, A.zero());
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r)
      phi(r, c) = cols[c][r];
  if (mat_mul(A, phi, sigma) != mat_mul(A, sq, phi))
    throw std::logic_error("phi_reconstruct: Phi Sigma != Sigma^q Phi");
  return phi;
}

AMat block_cycle(const ArtinLocalRing& A, std::size_t r, std::size_t d)
{
  const std::size_t n = r * d;
  AMat w(n, n, A.zero());
  for (std::size_t b = 0; b < d; ++b) {
    const std::size_t col = ((b + 1) % d) * r;
    for (std::size_t k = 0; k < r; ++k)
      w(b * r + k, col + k) = A.one();
  }
  return w;
}

DegreeDData degree_d_restrict(const WeilPoint& pt, std::size_t r, std::size_t d)
{
  const ArtinLocalRing& A = *pt.ring;
  const std::size_t n = pt.n();
  if (r == 0 || d == 0 || r * d != n)
    throw std::invalid_argument("degree_d_restrict: n != r d");
  const std::vector<std::size_t> shape(d, r);
  if (!exactalg::is_block_diagonal(A, pt.sigma, shape))
    throw std::invalid_argument("degree_d_restrict: Sigma is not block diagonal");
  const AMat w = block_cycle(A, r, d);
  const AMat psi = mat_mul(A, exactalg::mat_transpose<ArtinLocalRing>(w), pt.phi);
  if (!exactalg::is_block_diagonal(A, psi, shape))
    throw std::invalid_argument("degree_d_restrict: Phi is not w times a block-diagonal matrix");
  std::vector<AMat> blocks;
  for (std::size_t b = 0; b < d; ++b)
    blocks.push_back(block_of(psi, b * r, r));
  AMat prod = exactalg::mat_identity(A, r);
  for (std::size_t b = 1; b < d; ++b)
    prod = mat_mul(A, prod, blocks[b]);
  prod = mat_mul(A, prod, blocks[0]);
  const AMat phid = block_of(mat_pow(A, pt.phi, d), 0, r);
  if (phid != prod)
    throw std::logic_error("degree_d_restrict: (Phi^d)_1 != Psi_2 ... Psi_d Psi_1");
  std::uint64_t qd = 1;
  for (std::size_t k = 0; k < d; ++k)
    qd *= pt.q;
  DegreeDData out{{pt.ring, block_of(pt.sigma, 0, r), phid, qd}, {blocks.begin() + 1, blocks.end()}};
  if (!satisfies_relation(out.small))
    throw std::logic_error("degree_d_restrict: restricted point fails the relation");
  return out;
}

WeilPoint degree_d_extend(const DegreeDData& data, std::uint64_t q)
{
  const ArtinLocalRing& A = *data.small.ring;
  const std::size_t r = data.small.n();
  const std::size_t d = data.psi.size() + 1;
  std::vector<AMat> sig{data.small.sigma};
  for (std::size_t i = 1; i < d; ++i) {
    const AMat& p = data.psi[i - 1];
    sig.push_back(mat_mul(A, exactalg::invert(A, p), mat_mul(A, mat_pow(A, sig.back(), q), p)));
  }
  AMat prod = exactalg::mat_identity(A, r);
  for (const auto& p : data.psi)
    prod = mat_mul(A, prod, p);
  std::vector<AMat> psi{mat_mul(A, exactalg::invert(A, prod), data.small.phi)};
  psi.insert(psi.end(), data.psi.begin(), data.psi.end());
  const AMat w = block_cycle(A, r, d);
  WeilPoint out{data.small.ring, exactalg::mat_direct_sum(A, sig),
                mat_mul(A, w, exactalg::mat_direct_sum(A, psi)), q};
  if (!satisfies_relation(out))
    throw std::logic_error("degree_d_extend: reconstructed point fails the relation");
  return out;
}

std::string family_name(Family f)
{
  switch (f) {
  case Family::Full:
    return "full";
  case Family::Normalized:
    return "normalized";
  case Family::PhiInLevi:
    return "phi-in-levi";
  }
  return "";
}

ProbeReport smoothness_probe(Family family, const SquareZeroExtension& ext, const ResidualPoint& rbar,
                             const std::vector<std::size_t>& levi, std::uint64_t budget)
{
  return probe_impl(family, ext, rbar, levi, budget, true);
}

std::uint64_t check_sigma_in_levi(const RingPtr& A, const ResidualPoint& rbar, const std::vector<std::size_t>& levi,
                                  std::uint64_t budget)
{
  validate(rbar);
  const FamilySpec spec = make_family(Family::PhiInLevi, rbar, levi);
  const auto pts = family_points(A, rbar, spec, budget, true);
  for (const auto& p : pts)
    if (!is_block_diag(*A, p.sigma, levi))
      throw std::logic_error("check_sigma_in_levi: Phi in the Levi but Sigma is not");
  return pts.size();
}

std::uint64_t check_conjugator_in_levi(const RingPtr& ring, const FMat& gbar, const std::vector<std::size_t>& levi,
                                       std::uint64_t q, std::uint64_t budget)
{
  const ArtinLocalRing& A = *ring;
  const std::size_t n = gbar.rows();
  if (!exactalg::is_block_diagonal(A.residue_field(), gbar, levi))
    throw std::invalid_argument("check_conjugator_in_levi: g-bar is not in the Levi");
  const auto gpos = block_positions(levi);
  const std::uint64_t ng = checked_power(A.max_ideal().size(), gpos.size(), budget);
  std::vector<AVal> all(A.size());
  for (AVal x = 0; x < A.size(); ++x)
    all[x] = x;
  const std::uint64_t nh = checked_power(A.size(), n * n, budget);
  if (ng != 0 && nh > budget / ng)
    throw std::length_error("enumeration exceeds the budget");
  const AMat zero(n, n, A.zero());
  std::uint64_t found = 0;
  std::string error;
  for (std::uint64_t gi = 0; gi < ng; ++gi) {
    const AMat g = perturb(A, lift(A, gbar), gpos, A.max_ideal(), gi);
    const AMat gq = mat_pow(A, g, q);
    std::uint64_t local = 0;
#pragma omp parallel for schedule(static) reduction(+ : local)
    for (std::int64_t hi = 0; hi < static_cast<std::int64_t>(nh); ++hi) {
      const AMat h = perturb(A, zero, all_positions(n), all, static_cast<std::uint64_t>(hi));
      if (!A.is_unit(exactalg::det(A, h)) || mat_mul(A, h, g) != mat_mul(A, gq, h))
        continue;
      ++local;
      if (!is_block_diag(A, h, levi)) {
#pragma omp critical
        error = "check_conjugator_in_levi: conjugator outside the Levi";
      }
    }
    found += local;
  }
  if (!error.empty())
    throw std::logic_error(error);
  return found;
}

namespace reference {

std::vector<WeilPoint> enumerate_points(const RingPtr& A, const ResidualPoint& rbar, std::uint64_t budget)
{
  validate(rbar);
  const std::size_t n = rbar.n();
  const auto& m = A->max_ideal();
  const std::uint64_t ns = checked_power(m.size(), n * n, budget);
  if (ns != 0 && ns > budget / ns)
    throw std::length_error("enumeration exceeds the budget");
  const AMat s0 = lift(*A, rbar.sigma), p0 = lift(*A, rbar.phi);
  std::vector<WeilPoint> out;
  for (std::uint64_t si = 0; si < ns; ++si)
    for (std::uint64_t pi = 0; pi < ns; ++pi) {
      WeilPoint pt{A, perturb(*A, s0, all_positions(n), m, si), perturb(*A, p0, all_positions(n), m, pi), rbar.q};
      if (satisfies_relation(pt))
        out.push_back(std::move(pt));
    }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

ProbeReport smoothness_probe(Family family, const SquareZeroExtension& ext, const ResidualPoint& rbar,
                             const std::vector<std::size_t>& levi, std::uint64_t budget)
{
  return probe_impl(family, ext, rbar, levi, budget, false);
}

} // namespace reference

} // namespace tamefiber::defmod
