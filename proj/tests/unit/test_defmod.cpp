#include "doctest.h"

#include <random>
#include <set>

#include "tamefiber/defmod/defmod.hpp"
#include "tamefiber/exactalg/poly.hpp"

using namespace tamefiber::defmod;
using tamefiber::exactalg::RingHom;

namespace {

ResidualPoint jordan_model(std::uint64_t q = 3)
{
  auto f2 = FiniteField::get(2, 1);
  FMat s(2, 2, 0), p(2, 2, 0);
  s(0, 0) = s(0, 1) = s(1, 1) = 1;
  p(0, 0) = p(1, 1) = 1;
  return {f2, s, p, q};
}

RingPtr f2t(unsigned b)
{
  return ArtinLocalRing::truncated_poly(2, 1, b);
}

// all tuples of ring elements of length k
std::vector<std::vector<AVal>> all_tuples(const ArtinLocalRing& A, std::size_t k)
{
  std::vector<std::vector<AVal>> out{{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::vector<AVal>> next;
    for (const auto& t : out)
      for (AVal x = 0; x < A.size(); ++x) {
        auto u = t;
        u.push_back(x);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

} // namespace

TEST_CASE("point enumeration")
{
  const auto rbar = jordan_model();
  const auto field = f2t(1);
  const auto trivial = enumerate_points(field, rbar);
  REQUIRE(trivial.size() == 1);
  CHECK(reduce(*field, trivial[0].sigma) == rbar.sigma);

  const auto a2 = f2t(2);
  const auto pts = enumerate_points(a2, rbar);
  CHECK(pts == reference::enumerate_points(a2, rbar));
  for (const auto& p : pts) {
    CHECK(satisfies_relation(p));
    CHECK(residual_of(p).sigma == rbar.sigma);
    CHECK_NOTHROW(char_I(p));
  }
  // formal smoothness from the residue field: each base point has |m|^{n^2} points over it
  const auto base = s_points(*a2, {0, 1}, 3);
  CHECK(pts.size() == base.size() * 16);

  // n = 1: all pairs of units (u, v) with u^{q-1} = 1
  const auto z4 = ArtinLocalRing::integers_mod(2, 2);
  const auto z9 = ArtinLocalRing::integers_mod(3, 2);
  for (const auto& [ring, q] : std::vector<std::pair<RingPtr, std::uint64_t>>{{z4, 3}, {z9, 5}, {z9, 7}}) {
    const FiniteField& f = ring->residue_field();
    std::size_t via_residues = 0;
    for (FiniteField::value_type u = 1; u < f.size(); ++u)
      for (FiniteField::value_type v = 1; v < f.size(); ++v) {
        if (f.pow(u, static_cast<long long>(q - 1)) != 1)
          continue;
        ResidualPoint r{ring->residue_field_ptr(), FMat(1, 1, u), FMat(1, 1, v), q};
        via_residues += enumerate_points(ring, r).size();
      }
    std::size_t brute = 0;
    for (AVal u = 0; u < ring->size(); ++u)
      for (AVal v = 0; v < ring->size(); ++v)
        if (ring->is_unit(u) && ring->is_unit(v) && ring->pow(u, q - 1) == ring->one())
          ++brute;
    CHECK(via_residues == brute);
  }
  CHECK_THROWS_AS(enumerate_points(f2t(3), rbar, 1000), std::length_error);
}

TEST_CASE("char_I")
{
  const auto a2 = f2t(2);
  const WeilPoint id{a2, tamefiber::exactalg::mat_identity(*a2, 3), tamefiber::exactalg::mat_identity(*a2, 3), 3};
  // binomial(3, i) mod 2
  CHECK(char_I(id) == std::vector<AVal>{a2->one(), a2->one(), a2->one()});
  const auto rbar = jordan_model();
  const WeilPoint j{f2t(1), lift(*f2t(1), rbar.sigma), lift(*f2t(1), rbar.phi), 3};
  CHECK(char_I(j) == std::vector<AVal>{0, 1});

  const auto z9 = ArtinLocalRing::integers_mod(3, 2);
  const WeilPoint bad{z9, tamefiber::exactalg::mat_from_ints(*z9, 1, 1, {4}), tamefiber::exactalg::mat_from_ints(*z9, 1, 1, {1}), 2};
  CHECK_THROWS_AS(char_I(bad), std::logic_error);
}

TEST_CASE("q-fixed locus: symmetric-function equations agree with the companion test")
{
  for (const auto& ring : {f2t(2), ArtinLocalRing::integers_mod(2, 2), ArtinLocalRing::integers_mod(3, 2)})
    for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
      if (q % ring->ell() == 0)
        continue;
      for (std::size_t n : {1u, 2u}) {
        for (const auto& e : all_tuples(*ring, n))
          CHECK(in_q_fixed_locus(*ring, e, q) == in_q_fixed_locus_companion(*ring, e, q));
      }
    }
  // Z-points map into the q-fixed locus
  const auto a3 = f2t(3);
  for (const auto& z : z_points(*a3, {1, 1}, 3)) {
    const auto p = tamefiber::exactalg::poly_from_roots(*a3, z);
    CHECK(in_q_fixed_locus(*a3, {a3->neg(p[1]), p[0]}, 3));
  }
}

TEST_CASE("Hensel diagonalization")
{
  const auto f5 = ArtinLocalRing::truncated_poly(5, 1, 1);
  const auto g0 = tamefiber::exactalg::mat_from_ints(*f5, 2, 2, {1, 0, 0, 2});
  const auto d0 = hensel_diagonalize(*f5, g0, {1, 1});
  CHECK(d0.gamma == tamefiber::exactalg::mat_identity(*f5, 2));

  const auto z9 = ArtinLocalRing::integers_mod(3, 2);
  std::size_t tested = 0;
  for (long long a : {1, 4, 7})
    for (long long d : {2, 5, 8})
      for (long long b : {0, 3, 6})
        for (long long c : {0, 3, 6}) {
          const auto g = tamefiber::exactalg::mat_from_ints(*z9, 2, 2, {a, b, c, d});
          const auto r = hensel_diagonalize(*z9, g, {1, 1});
          CHECK(r.delta(0, 1) == 0);
          CHECK(r.delta(1, 0) == 0);
          CHECK(tamefiber::exactalg::mat_mul(*z9, g, r.gamma) == tamefiber::exactalg::mat_mul(*z9, r.gamma, r.delta));
          CHECK(r.idempotents.size() == 2);
          ++tested;
        }
  CHECK(tested == 81);

  const auto z4 = ArtinLocalRing::integers_mod(2, 2);
  CHECK_THROWS_AS(hensel_diagonalize(*z4, tamefiber::exactalg::mat_from_ints(*z4, 2, 2, {1, 0, 0, 3}), {1, 1}),
                  std::domain_error);

  // 2x2 block against a 1x1 block over F_2[t]/t^2
  const auto a2 = f2t(2);
  const AVal t = a2->max_ideal()[1];
  AMat g(3, 3, a2->zero());
  g(0, 0) = g(0, 1) = g(1, 0) = a2->one();
  g(2, 2) = a2->one();
  g(0, 2) = t;
  g(2, 1) = t;
  const auto r = hensel_diagonalize(*a2, g, {2, 1});
  CHECK(tamefiber::exactalg::is_block_diagonal(*a2, r.delta, {2, 1}));

  // conjugators of g into g^q stay diagonal
  FMat gbar(2, 2, 0);
  gbar(0, 0) = 1;
  gbar(1, 1) = 2;
  CHECK(check_conjugator_in_levi(z9, gbar, {1, 1}, 5) > 0);
}

TEST_CASE("companion normalization and Phi reconstruction")
{
  const auto rbar = jordan_model();
  for (unsigned b : {2u, 3u}) {
    CAPTURE(b);
    const auto A = f2t(b);
    const auto pts = enumerate_points(A, rbar);
    const auto zs = z_points(*A, {1, 1}, 3);
    std::set<std::vector<AVal>> normalized;
    std::size_t pairs = 0;
    for (const auto& p : pts) {
      if (is_normalized(*A, p.sigma)) {
        auto key = p.sigma.data();
        key.insert(key.end(), p.phi.data().begin(), p.phi.data().end());
        normalized.insert(key);
      }
      const auto cp = tamefiber::exactalg::char_poly(*A, p.sigma);
      for (const auto& z : zs) {
        if (!tamefiber::exactalg::poly_equal(*A, tamefiber::exactalg::poly_from_roots(*A, z), cp))
          continue;
        const auto nm = companion_normalize(p, z);
        ++pairs;
        CHECK(is_normalized(*A, nm.point.sigma));
        CHECK(satisfies_relation(nm.point));
        CHECK(nm.gamma(0, 1) == 0);
        CHECK(nm.gamma(1, 1) == A->one());
        CHECK(reduce(*A, nm.gamma) == tamefiber::exactalg::mat_identity(*FiniteField::get(2, 1), 2));
        CHECK(conjugate(nm.point, nm.gamma) == p);
      }
    }
    CHECK(pairs > 0);

    // (roots, v) <-> normalized points
    std::set<std::vector<AVal>> rebuilt;
    const auto& m = A->max_ideal();
    for (const auto& z : zs)
      for (AVal x : m)
        for (AVal y : m) {
          const std::vector<AVal> v{x, A->add(A->one(), y)};
          const auto s = normalized_sigma(*A, z);
          const auto phi = phi_reconstruct(*A, s, z, v, 3);
          CHECK(phi(0, 1) == v[0]);
          CHECK(phi(1, 1) == v[1]);
          auto key = s.data();
          key.insert(key.end(), phi.data().begin(), phi.data().end());
          rebuilt.insert(key);
        }
    CHECK(rebuilt.size() == zs.size() * m.size() * m.size());
    CHECK(rebuilt == normalized);

    // beta(alpha(y, gamma)) = (y, gamma) for gamma in the mirabolic cell
    for (const auto& p : pts) {
      if (!is_normalized(*A, p.sigma))
        continue;
      const std::vector<AVal> roots{p.sigma(0, 0), p.sigma(1, 1)};
      for (AVal a : m)
        for (AVal c : m) {
          AMat gamma = tamefiber::exactalg::mat_identity(*A, 2);
          gamma(0, 0) = A->add(A->one(), a);
          gamma(1, 0) = c;
          const auto moved = conjugate(p, gamma);
          const auto back = companion_normalize(moved, roots);
          CHECK(back.point == p);
          CHECK(back.gamma == gamma);
        }
    }
  }
  const auto a2 = f2t(2);
  const WeilPoint off{a2, tamefiber::exactalg::mat_identity(*a2, 2), tamefiber::exactalg::mat_identity(*a2, 2), 3};
  CHECK_THROWS_AS(companion_normalize(off, {1, 1}), std::invalid_argument);
}

TEST_CASE("degree-d restriction round trip")
{
  const auto A = ArtinLocalRing::integers_mod(7, 3);
  const std::uint64_t q = 2;
  std::mt19937_64 rng(20240607);
  const auto& m = A->max_ideal();
  std::uniform_int_distribution<std::size_t> pick(0, m.size() - 1);
  std::uniform_int_distribution<AVal> any(0, A->size() - 1);
  const AVal s1 = A->teichmuller(2);
  std::size_t done = 0;
  while (done < 1000) {
    const AVal phi1 = A->add(A->one(), m[pick(rng)]);
    const AVal psi2 = A->add(A->one(), m[pick(rng)]);
    DegreeDData data{{A, AMat(1, 1, s1), AMat(1, 1, phi1), 4}, {AMat(1, 1, psi2)}};
    REQUIRE(satisfies_relation(data.small));
    const auto pt = degree_d_extend(data, q);
    CHECK(reduce(*A, pt.sigma)(0, 0) == 2);
    CHECK(reduce(*A, pt.sigma)(1, 1) == 4);
    const auto back = degree_d_restrict(pt, 1, 2);
    CHECK(back.small == data.small);
    CHECK(back.psi == data.psi);
    // conjugating by the Levi keeps the shape; forward then inverse is the identity
    AVal h1 = any(rng), h2 = any(rng);
    if (!A->is_unit(h1) || !A->is_unit(h2))
      continue;
    AMat h(2, 2, A->zero());
    h(0, 0) = h1;
    h(1, 1) = h2;
    const auto moved = conjugate(pt, h);
    CHECK(degree_d_extend(degree_d_restrict(moved, 1, 2), q) == moved);
    ++done;
  }
  // d = 1 is the identity
  const auto rbar = jordan_model();
  for (const auto& p : enumerate_points(f2t(2), rbar)) {
    const auto r = degree_d_restrict(p, 2, 1);
    CHECK(r.small == p);
    CHECK(degree_d_extend(r, 3) == p);
  }
  const auto a2 = f2t(2);
  AMat full(2, 2, a2->one());
  const WeilPoint bad{a2, full, tamefiber::exactalg::mat_identity(*a2, 2), 3};
  CHECK_THROWS_AS(degree_d_restrict(bad, 1, 2), std::invalid_argument);
}

TEST_CASE("smoothness probes")
{
  const auto rbar = jordan_model();
  const SquareZeroExtension ext(RingHom::truncation(f2t(3), f2t(2)));
  const auto full = smoothness_probe(Family::Full, ext, rbar);
  CHECK(full.predicted == 16);
  CHECK(full.min == 16);
  CHECK(full.max == 16);
  CHECK(full.pass);
  const auto ref = reference::smoothness_probe(Family::Full, ext, rbar);
  CHECK(ref.min == full.min);
  CHECK(ref.max == full.max);
  CHECK(ref.base_pairs == full.base_pairs);

  const auto nrm = smoothness_probe(Family::Normalized, ext, rbar);
  CHECK(nrm.predicted == 4);
  CHECK(nrm.pass);

  const SquareZeroExtension first(RingHom::truncation(f2t(2), f2t(1)));
  CHECK(smoothness_probe(Family::Full, first, rbar).pass);

  // n = 1: relative dimension 1
  const auto f2 = FiniteField::get(2, 1);
  const ResidualPoint one{f2, FMat(1, 1, 1), FMat(1, 1, 1), 3};
  const auto torus = smoothness_probe(Family::Full, ext, one);
  CHECK(torus.predicted == 2);
  CHECK(torus.pass);

  // Phi in the diagonal torus forces Sigma diagonal
  const auto f4 = FiniteField::get(2, 2);
  FMat s(2, 2, 0), p(2, 2, 0);
  s(0, 0) = s(1, 1) = 1;
  p(0, 0) = 1;
  p(1, 1) = f4->primitive();
  const ResidualPoint split{f4, s, p, 3};
  const auto b2 = ArtinLocalRing::truncated_poly(2, 2, 2);
  CHECK(check_sigma_in_levi(b2, split, {1, 1}) > 0);
  const SquareZeroExtension ext4(RingHom::truncation(ArtinLocalRing::truncated_poly(2, 2, 3), b2));
  const auto levi = smoothness_probe(Family::PhiInLevi, ext4, split, {1, 1});
  CHECK(levi.predicted == 16);
  CHECK(levi.pass);
}
