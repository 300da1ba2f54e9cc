#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "tamefiber/exactalg/cyclotomic.hpp"
#include "tamefiber/exactalg/residue.hpp"
#include "tamefiber/exactalg/rings.hpp"
#include "tamefiber/symquot/symquot.hpp"

using namespace tamefiber::symquot;
using tamefiber::exactalg::Integer;

namespace {

// polynomials in x_1..x_n as exponent-vector maps
using XPoly = std::map<std::vector<unsigned>, Integer>;

XPoly xmul(const XPoly& a, const XPoly& b)
{
  XPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      auto e = ea;
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] += eb[i];
      out[e] += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

XPoly xelem(unsigned i, unsigned n)
{
  XPoly out;
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    if (static_cast<unsigned>(__builtin_popcount(mask)) == i) {
      std::vector<unsigned> e(n, 0);
      for (unsigned k = 0; k < n; ++k)
        e[k] = mask >> k & 1u;
      out[e] += 1;
    }
  return out;
}

// expansion of a polynomial in e_1..e_n (nonnegative exponents) into x-monomials
XPoly expand(const SymPolynomialE& x)
{
  const unsigned n = x.n();
  XPoly out;
  for (const auto& [a, c] : x.terms()) {
    XPoly term{{std::vector<unsigned>(n, 0), c}};
    for (unsigned j = 0; j < n; ++j)
      for (long k = 0; k < a[j]; ++k)
        term = xmul(term, xelem(j + 1, n));
    for (const auto& [e, d] : term)
      out[e] += d;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

XPoly xmonomial_symmetric(const Partition& lambda, unsigned n)
{
  std::vector<unsigned> e = lambda.parts();
  e.resize(n, 0);
  std::sort(e.begin(), e.end());
  XPoly out;
  do
    out[e] = 1;
  while (std::next_permutation(e.begin(), e.end()));
  return out;
}

// multisets of n roots of unity (as fractions j/M) stable under z -> z^q, built from q-orbits
std::vector<std::vector<RootFraction>> stable_points(unsigned q, unsigned n)
{
  std::uint64_t m = 1;
  for (unsigned r = 1; r <= n; ++r)
    m = tamefiber::exactalg::lcm_u64(m, tamefiber::exactalg::ipow_u64(q, r) - 1);
  std::vector<std::vector<std::uint64_t>> orbits;
  std::set<std::uint64_t> seen;
  for (std::uint64_t j = 0; j < m; ++j) {
    if (seen.count(j))
      continue;
    std::vector<std::uint64_t> orb;
    std::uint64_t k = j;
    do {
      orb.push_back(k);
      seen.insert(k);
      k = k * q % m;
    } while (k != j);
    if (orb.size() <= n)
      orbits.push_back(orb);
  }
  std::vector<std::vector<RootFraction>> out;
  std::vector<RootFraction> cur;
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t start, unsigned left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t o = start; o < orbits.size(); ++o) {
      if (orbits[o].size() > left)
        continue;
      for (auto j : orbits[o])
        cur.emplace_back(j, m);
      rec(o, left - static_cast<unsigned>(orbits[o].size()));
      cur.resize(cur.size() - orbits[o].size());
    }
  };
  rec(0, n);
  return out;
}

SymPolynomialE random_poly(std::mt19937_64& rng, unsigned q, unsigned n, int terms)
{
  std::uniform_int_distribution<long> exp(0, 2 * q);
  std::uniform_int_distribution<long> top(-static_cast<long>(q), 2 * q);
  std::uniform_int_distribution<int> coef(-5, 5);
  SymPolynomialE x(q, n);
  for (int t = 0; t < terms; ++t) {
    EMonomial a(n);
    for (unsigned j = 0; j + 1 < n; ++j)
      a[j] = exp(rng);
    a[n - 1] = top(rng);
    x.add_term(a, coef(rng));
  }
  return x;
}

struct ModPEvaluator {
  tamefiber::exactalg::ResidueRing fp;
  Integer zeta;
  std::uint64_t m;

  ModPEvaluator(std::uint64_t conductor, std::uint64_t p) : fp(Integer(p)), m(conductor)
  {
    std::uint64_t g = 2;
    for (;; ++g) {
      bool ok = true;
      for (auto r : tamefiber::exactalg::prime_divisors(p - 1))
        if (tamefiber::exactalg::powmod_u64(g, (p - 1) / r, p) == 1)
          ok = false;
      if (ok)
        break;
    }
    zeta = Integer(tamefiber::exactalg::powmod_u64(g, (p - 1) / m, p));
  }

  Integer operator()(const SymPolynomialE& x, const std::vector<RootFraction>& pt) const
  {
    std::vector<Integer> vals;
    for (const auto& [j, d] : pt)
      vals.push_back(Integer(tamefiber::exactalg::powmod_u64(static_cast<std::uint64_t>(zeta), j * (m / d), static_cast<std::uint64_t>(fp.modulus()))));
    return evaluate(fp, x, vals);
  }
};

std::uint64_t prime_one_mod(std::uint64_t m)
{
  std::uint64_t p = 1000 * m + 1;
  while (!tamefiber::exactalg::is_prime_u64(p))
    p += m;
  return p;
}

} // namespace

TEST_CASE("partitions and dominance")
{
  const auto ps = partitions(5, 5, 5);
  CHECK(ps.size() == 7);
  CHECK(ps.front() == Partition({5}));
  CHECK(ps.back() == Partition({1, 1, 1, 1, 1}));
  CHECK(partitions(6, 3, 2) == std::vector<Partition>{Partition({3, 3})});
  CHECK(Partition({3, 1}).conjugate() == Partition({2, 1, 1}));
  CHECK(dominates(Partition({3, 1}), Partition({2, 2})));
  CHECK_FALSE(dominates(Partition({2, 2}), Partition({3, 1})));
  CHECK_FALSE(dominates(Partition({3, 3}), Partition({4, 1, 1})));
  CHECK_FALSE(dominates(Partition({4, 1, 1}), Partition({3, 3})));
  for (const auto& p : partitions(7, 7, 7))
    CHECK(p.conjugate().conjugate() == p);
}

TEST_CASE("e-to-m transition matches direct expansion")
{
  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned d = 1; d <= 6; ++d) {
      const auto t = e_to_m_transition(d, n);
      REQUIRE(t.rows.size() == t.cols.size());
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const XPoly e = expand(SymPolynomialE::monomial(2, n, monomial_of(t.rows[i], n)));
        for (std::size_t j = 0; j < t.cols.size(); ++j) {
          std::vector<unsigned> ex = t.cols[j].parts();
          ex.resize(n, 0);
          auto it = e.find(ex);
          CHECK(t.entries[i][j] == (it == e.end() ? Integer(0) : it->second));
        }
      }
    }
}

TEST_CASE("monomial symmetric functions in the e-basis")
{
  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned d = 1; d <= 6; ++d)
      for (const auto& lambda : partitions(d, d, n))
        CHECK(expand(m_in_e_basis(lambda, 3, n)) == xmonomial_symmetric(lambda, n));
  // power sums: m_(2) = e1^2 - 2 e2
  const auto p2 = m_in_e_basis(Partition({2}), 2, 2);
  CHECK(p2 == SymPolynomialE::monomial(2, 2, {2, 0}) - SymPolynomialE::monomial(2, 2, {0, 1}, 2));
}

TEST_CASE("small normal forms")
{
  const auto e1 = SymPolynomialE::e(2, 2, 1);
  CHECK(normal_form(e1 * e1) == e1 + SymPolynomialE::constant(2, 2, 2));
  CHECK(normal_form(SymPolynomialE::e(2, 2, 2)).str() == "1");

  const auto f1 = SymPolynomialE::e(3, 1, 1);
  CHECK(normal_form(f1 * f1 * f1 - f1).is_zero());
  CHECK(basis(3, 1) == std::vector<EMonomial>{{0}, {1}});

  tamefiber::exactalg::IntegerRing zz;
  CHECK(evaluate(zz, f1 * f1 * f1 - f1, {Integer(1)}) == 0);
  CHECK(evaluate(zz, f1 * f1 * f1 - f1, {Integer(-1)}) == 0);
  CHECK_THROWS_AS(evaluate(zz, f1, {Integer(2)}), tamefiber::exactalg::NonUnitError);
}

TEST_CASE("ideal generators reduce to zero")
{
  for (unsigned q : {2u, 3u, 4u, 5u})
    for (unsigned n = 1; n <= 4; ++n) {
      if (q == 5 && n == 4)
        continue;
      for (unsigned i = 1; i <= n; ++i) {
        CAPTURE(q);
        CAPTURE(n);
        CAPTURE(i);
        CHECK(normal_form(ideal_generator(i, q, n)).is_zero());
      }
    }
}

TEST_CASE("basis size and canonicity")
{
  for (unsigned q : {2u, 3u, 4u})
    for (unsigned n = 1; n <= 4; ++n) {
      const auto b = basis(q, n);
      CHECK(b.size() == tamefiber::exactalg::ipow_u64(q, n - 1) * (q - 1));
      CHECK(std::is_sorted(b.begin(), b.end()));
      for (const auto& a : b) {
        CHECK(is_canonical(a, q));
        CHECK(normal_form(SymPolynomialE::monomial(q, n, a)) == SymPolynomialE::monomial(q, n, a));
      }
    }
}

TEST_CASE("normal form properties on random input")
{
  std::mt19937_64 rng(20240611);
  for (auto [q, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {3, 2}, {2, 3}, {3, 3}, {4, 2}}) {
    const auto pts = stable_points(q, n);
    std::uint64_t m = pts.front().front().second;
    ModPEvaluator ev(m, prime_one_mod(m));
    for (int trial = 0; trial < 15; ++trial) {
      const auto x = random_poly(rng, q, n, 4);
      const auto y = random_poly(rng, q, n, 3);
      const auto nx = normal_form(x), ny = normal_form(y);
      for (const auto& [a, c] : nx.terms())
        CHECK(is_canonical(a, q));
      CHECK(normal_form(nx) == nx);
      CHECK(normal_form(x + y.scaled(3)) == nx + ny.scaled(3));
      CHECK(normal_form(nx * ny) == normal_form(x * y));
      for (const auto& pt : pts)
        CHECK(ev(x, pt) == ev(nx, pt));
    }
  }
}

TEST_CASE("serialization round trip")
{
  std::mt19937_64 rng(7);
  const auto x = normal_form(random_poly(rng, 3, 3, 6));
  const auto recs = serialize(x);
  CHECK(parse(3, 3, recs) == x);
  CHECK(serialize(normal_form(SymPolynomialE::e(2, 2, 1) * SymPolynomialE::e(2, 2, 1))) ==
        std::vector<std::string>{"0,0:2", "1,0:1"});
  CHECK_THROWS(parse(3, 3, {"1,2"}));
}

TEST_CASE("evaluation pairing is nonsingular")
{
  for (auto [q, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {2, 2}, {3, 2}, {2, 3}, {4, 2}, {3, 3}}) {
    CAPTURE(q);
    CAPTURE(n);
    const auto pts = stable_points(q, n);
    CHECK(pts.size() == tamefiber::exactalg::ipow_u64(q, n - 1) * (q - 1));
    const auto cert = certify_pairing(q, n, pts);
    CHECK(cert.nonsingular);
    CHECK((cert.prime - 1) % cert.conductor == 0);
    if (q * n <= 6)
      CHECK(exact_pairing_rank(q, n, pts) == cert.basis_size);
  }
  // dropping a point breaks squareness
  auto pts = stable_points(2, 2);
  pts.pop_back();
  CHECK_FALSE(certify_pairing(2, 2, pts).nonsingular);
}
