#include "checks.hpp"

#include <random>
#include <set>

#include "tamefiber/exactalg/integer.hpp"
#include "tamefiber/exactalg/poly.hpp"
#include "tamefiber/params/params.hpp"

namespace tamefiber::cli::checks {

namespace {

using defmod::AMat;
using defmod::AVal;
using defmod::FMat;
using exactalg::ArtinLocalRing;
using exactalg::FiniteField;

// all k-tuples over `values`, first coordinate slowest
std::vector<std::vector<AVal>> tuples(const std::vector<AVal>& values, std::size_t k, std::uint64_t budget)
{
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    count *= values.size();
    if (count > budget)
      throw std::length_error("tuple enumeration exceeds the budget");
  }
  std::vector<std::vector<AVal>> out{{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::vector<AVal>> next;
    next.reserve(out.size() * values.size());
    for (const auto& t : out)
      for (AVal v : values) {
        auto u = t;
        u.push_back(v);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<AVal> key_of(const defmod::WeilPoint& p)
{
  auto k = p.sigma.data();
  k.insert(k.end(), p.phi.data().begin(), p.phi.data().end());
  return k;
}

unsigned f_of(const RunConfig& c)
{
  return c.f ? *c.f : params::min_large_f(c.n, c.q, c.ell);
}

} // namespace

void normalization_roundtrip(Report& rep, const RunConfig& cfg, const defmod::ResidualPoint& rbar)
{
  const auto A = ArtinLocalRing::truncated_poly(cfg.ell, rbar.field->degree(), cfg.a);
  const std::size_t n = rbar.n();
  const auto pts = defmod::enumerate_points(A, rbar, cfg.budget);
  std::vector<FiniteField::value_type> diag;
  for (std::size_t i = 0; i < n; ++i)
    diag.push_back(rbar.sigma(i, i));
  const auto zs = defmod::z_points(*A, diag, cfg.q);
  const auto& m = A->max_ideal();

  std::size_t pairs = 0, ok = 0, covered = 0;
  std::set<std::vector<AVal>> normalized;
  std::vector<defmod::WeilPoint> normalized_pts;
  for (const auto& p : pts) {
    if (defmod::is_normalized(*A, p.sigma) && normalized.insert(key_of(p)).second)
      normalized_pts.push_back(p);
    const auto cp = exactalg::char_poly(*A, p.sigma);
    bool any = false;
    for (const auto& z : zs) {
      if (!exactalg::poly_equal(*A, exactalg::poly_from_roots(*A, z), cp))
        continue;
      any = true;
      ++pairs;
      try {
        const auto nm = defmod::companion_normalize(p, z);
        if (defmod::is_normalized(*A, nm.point.sigma) && defmod::conjugate(nm.point, nm.gamma) == p)
          ++ok;
      } catch (const std::exception&) {
      }
    }
    covered += any ? 1 : 0;
  }
  rep.details["roundtrip"] = {{"ring", A->name()}, {"points", pts.size()}, {"z_points", zs.size()},
                              {"normalized", normalized.size()}, {"points_with_roots", covered}};
  rep.check("companion normalization round trip", "gamma y gamma^{-1} recovers the point", pairs, ok);

  // (roots, last column) -> normalized points
  std::set<std::vector<AVal>> rebuilt;
  std::size_t reconstructed = 0;
  const auto vs = tuples(m, n, cfg.budget);
  for (const auto& z : zs)
    for (auto v : vs) {
      v[n - 1] = A->add(A->one(), v[n - 1]);
      try {
        const auto s = defmod::normalized_sigma(*A, z);
        const auto phi = defmod::phi_reconstruct(*A, s, z, v, cfg.q);
        rebuilt.insert(key_of({A, s, phi, cfg.q}));
        ++reconstructed;
      } catch (const std::exception&) {
      }
    }
  rep.check("Phi reconstruction", "every (roots, last column) gives a point", zs.size() * vs.size(), reconstructed);
  rep.check("Phi reconstruction is a bijection", "normalized points correspond to (roots, last column)", true,
            rebuilt == normalized && rebuilt.size() == zs.size() * vs.size());

  // mirabolic conjugators: last column e_n, gamma = I mod m
  std::vector<std::pair<std::size_t, std::size_t>> free;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j)
      free.emplace_back(i, j);
  const auto gs = tuples(m, free.size(), cfg.budget);
  if (gs.size() * normalized_pts.size() > cfg.budget)
    throw std::length_error("mirabolic round trip exceeds the budget");
  std::size_t tried = 0, back = 0;
  for (const auto& y : normalized_pts) {
    std::vector<AVal> roots;
    for (std::size_t i = 0; i < n; ++i)
      roots.push_back(y.sigma(i, i));
    for (const auto& t : gs) {
      AMat gamma = exactalg::mat_identity(*A, n);
      for (std::size_t k = 0; k < free.size(); ++k)
        gamma(free[k].first, free[k].second) = A->add(gamma(free[k].first, free[k].second), t[k]);
      ++tried;
      try {
        const auto r = defmod::companion_normalize(defmod::conjugate(y, gamma), roots);
        if (r.point == y && r.gamma == gamma)
          ++back;
      } catch (const std::exception&) {
      }
    }
  }
  rep.check("mirabolic round trip", "normalizing gamma y gamma^{-1} returns (y, gamma)", tried, back);
}

void hensel_exhaustive(Report& rep, const RunConfig& cfg, const defmod::ResidualPoint& rbar)
{
  const auto A = ArtinLocalRing::truncated_poly(cfg.ell, rbar.field->degree(), cfg.a);
  const FiniteField& f = A->residue_field();
  FiniteField::value_type c0 = 0, c1 = 0;
  bool found = false;
  for (FiniteField::value_type a0 = 1; a0 < f.size() && !found; ++a0)
    for (FiniteField::value_type a1 = 0; a1 < f.size() && !found; ++a1) {
      bool root = false;
      for (FiniteField::value_type r = 0; r < f.size(); ++r)
        if (f.add(f.add(f.mul(r, r), f.mul(a1, r)), a0) == 0)
          root = true;
      if (!root) {
        c0 = a0;
        c1 = a1;
        found = true;
      }
    }
  FMat gbar(3, 3, 0);
  gbar(0, 1) = f.neg(c0);
  gbar(1, 0) = 1;
  gbar(1, 1) = f.neg(c1);
  gbar(2, 2) = 1;
  const AMat base = defmod::lift(*A, gbar);
  const auto deltas = tuples(A->max_ideal(), 9, cfg.budget);
  std::size_t ok = 0;
  for (const auto& d : deltas) {
    AMat g = base;
    for (std::size_t k = 0; k < 9; ++k)
      g.data()[k] = A->add(g.data()[k], d[k]);
    try {
      const auto r = defmod::hensel_diagonalize(*A, g, {2, 1});
      if (exactalg::is_block_diagonal(*A, r.delta, {2, 1}) &&
          exactalg::mat_mul(*A, g, r.gamma) == exactalg::mat_mul(*A, r.gamma, r.delta) && r.idempotents.size() == 2)
        ++ok;
    } catch (const std::exception&) {
    }
  }
  rep.details["hensel"] = {{"ring", A->name()}, {"lifts", deltas.size()}};
  rep.check("Hensel diagonalization", "idempotent identities hold on every lift of diag(C, 1)", deltas.size(), ok);
}

void sigma_in_levi(Report& rep, const RunConfig& cfg)
{
  const std::size_t n = cfg.n;
  if (n < 2)
    return;
  const unsigned f = f_of(cfg);
  unsigned e = cfg.e;
  while (f % (exactalg::ipow_u64(cfg.ell, e) - 1) == 0)
    ++e;
  const auto field = FiniteField::get(static_cast<std::uint32_t>(cfg.ell), e);
  FMat sigma(n, n, 0), phi(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    sigma(i, i) = 1;
    phi(i, i) = i == 0 ? 1 : field->primitive();
  }
  const defmod::ResidualPoint rbar{field, sigma, phi, cfg.q};
  const auto A = ArtinLocalRing::truncated_poly(cfg.ell, e, cfg.a);
  std::uint64_t lifts = 0;
  int counterexamples = 0;
  try {
    lifts = defmod::check_sigma_in_levi(A, rbar, {1, n - 1}, cfg.budget);
  } catch (const std::logic_error& ex) {
    if (dynamic_cast<const std::length_error*>(&ex))
      throw;
    counterexamples = 1;
  }
  rep.details["sigma_in_levi"] = {{"ring", A->name()}, {"lifts", lifts}};
  rep.check("Sigma in Levi", "Phi block diagonal forces Sigma block diagonal", 0, counterexamples);
}

} // namespace tamefiber::cli::checks

namespace tamefiber::cli::checks {

void degree_d_roundtrip(Report& rep, const RunConfig& cfg, std::size_t samples)
{
  const std::uint64_t ell = require_ell(cfg);
  const unsigned n = cfg.n;
  std::shared_ptr<const ArtinLocalRing> A;
  FiniteField::value_type x = 0;
  for (unsigned e = 1; e <= 6 && !A; ++e) {
    const auto fp = FiniteField::get(static_cast<std::uint32_t>(ell), e);
    const FiniteField& f = *fp;
    for (FiniteField::value_type y = 1; y < f.size(); ++y) {
      auto z = y;
      unsigned orbit = 0;
      do {
        z = f.pow(z, static_cast<long long>(cfg.q));
        ++orbit;
      } while (z != y && orbit <= n);
      if (orbit == n) {
        A = e == 1 ? ArtinLocalRing::integers_mod(ell, cfg.a) : ArtinLocalRing::truncated_poly(ell, e, cfg.a);
        x = y;
        break;
      }
    }
  }
  if (!A) {
    rep.details["degree_d"] = "no residue field of degree <= 6 has a Frobenius orbit of size n";
    return;
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<AVal> any(0, A->size() - 1);
  const auto unit = [&] {
    for (;;) {
      const AVal u = any(rng);
      if (A->is_unit(u))
        return u;
    }
  };
  const AVal s1 = A->teichmuller(x);
  const std::uint64_t qd = exactalg::ipow_u64(cfg.q, n);
  std::size_t forward = 0, conjugated = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    defmod::DegreeDData data{{A, AMat(1, 1, s1), AMat(1, 1, unit()), qd}, {}};
    for (unsigned i = 1; i < n; ++i)
      data.psi.emplace_back(1, 1, unit());
    AMat h(n, n, A->zero());
    for (unsigned i = 0; i < n; ++i)
      h(i, i) = unit();
    try {
      const auto pt = defmod::degree_d_extend(data, cfg.q);
      const auto back = defmod::degree_d_restrict(pt, 1, n);
      if (back.small == data.small && back.psi == data.psi)
        ++forward;
      const auto moved = defmod::conjugate(pt, h);
      if (defmod::degree_d_extend(defmod::degree_d_restrict(moved, 1, n), cfg.q) == moved)
        ++conjugated;
    } catch (const std::exception&) {
    }
  }
  rep.details["degree_d"] = {{"ring", A->name()}, {"d", n}, {"samples", samples}, {"seed", cfg.seed}};
  rep.check("degree-d restriction then extension", "extend(restrict) is the identity on data", samples, forward);
  rep.check("degree-d extension after Levi conjugation", "restrict(extend) is the identity on points", samples,
            conjugated);
}

} // namespace tamefiber::cli::checks
