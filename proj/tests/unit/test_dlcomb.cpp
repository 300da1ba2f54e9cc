#include "doctest.h"

#include <random>

#include "tamefiber/dlcomb/dlcomb.hpp"

using namespace tamefiber::dlcomb;
using tamefiber::params::FrobOrbit;
using tamefiber::params::Partition;

namespace {

RootOfUnityLabel lab(std::uint64_t j, std::uint64_t m)
{
  return RootOfUnityLabel(j, m);
}

const Perm kSwap{1, 0};
const Perm kId2{0, 1};

std::vector<InertialParam> inertial_params(unsigned n, std::uint64_t q)
{
  // every assignment of partitions to the orbits of every semisimple parameter
  std::vector<InertialParam> out;
  for (const auto& s : tamefiber::params::enumerate_ss_params(n, q)) {
    std::vector<std::vector<Partition>> choices;
    for (const auto& [o, k] : s.parts())
      choices.push_back(tamefiber::symquot::partitions(k, k, k));
    std::vector<std::size_t> idx(choices.size(), 0);
    for (;;) {
      std::vector<std::pair<FrobOrbit, Partition>> parts;
      for (std::size_t i = 0; i < idx.size(); ++i)
        parts.emplace_back(s.parts()[i].first, choices[i][idx[i]]);
      out.emplace_back(q, parts);
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == choices[pos].size())
        idx[pos++] = 0;
      if (pos == idx.size())
        break;
    }
  }
  return out;
}

} // namespace

TEST_CASE("stabilizers and cosets")
{
  const auto& s2 = symmetric_group(2);
  const TorusTuple ones{lab(0, 1), lab(0, 1)};
  CHECK(stabilizer(ones, s2).size() == 2);
  CHECK(coset(ones, 5, s2).size() == 2);

  const TorusTuple z3{lab(1, 3), lab(2, 3)};
  CHECK(stabilizer(z3, s2) == std::vector<Perm>{kId2});
  CHECK(coset(z3, 2, s2) == std::vector<Perm>{kSwap});

  const TorusTuple pm{lab(0, 1), lab(1, 2)};
  CHECK(stabilizer(pm, s2) == std::vector<Perm>{kId2});
  CHECK(coset(pm, 3, s2) == std::vector<Perm>{kId2});

  // W(s) = W(s^q) and W(s, s^q) is a coset of W(s)
  for (const auto& t : gg_constituent_labels(3, 3)) {
    const auto& w = symmetric_group(3);
    const auto st = stabilizer(t, w);
    CHECK(st == stabilizer(frob(t, 3), w));
    const auto c = coset(t, 3, w);
    REQUIRE(!c.empty());
    std::vector<Perm> left;
    for (const auto& v : st)
      left.push_back(compose(c.front(), v));
    std::sort(left.begin(), left.end());
    CHECK(left == c);
  }
}

TEST_CASE("Deligne-Lusztig pairing")
{
  const TorusTuple ones3(3, lab(0, 1));
  CHECK(dl_pairing({identity_perm(3), ones3}, {identity_perm(3), ones3}) == 6);
  const TorusTuple z3{lab(1, 3), lab(2, 3)};
  CHECK(dl_pairing({kSwap, z3}, {kSwap, z3}) == 1);
  const TorusTuple pm{lab(0, 1), lab(1, 2)};
  CHECK(dl_pairing({kId2, pm}, {kSwap, pm}) == 0);

  // diagonal value |Z_W(w) cap W(s)| and symmetry
  std::mt19937_64 rng(11);
  for (auto [n, q] : std::vector<std::pair<unsigned, std::uint64_t>>{{2, 3}, {3, 2}, {3, 3}, {4, 2}}) {
    const auto labels = gg_constituent_labels(n, q);
    const auto& w = symmetric_group(n);
    std::vector<DLPair> pairs;
    for (const auto& t : labels)
      for (const auto& x : coset(t, q, w))
        pairs.push_back({x, t});
    for (const auto& a : pairs) {
      CHECK(is_compatible(a, q));
      std::size_t expect = 0;
      for (const auto& v : w)
        if (compose(v, a.w) == compose(a.w, v) && act(v, a.s) == a.s)
          ++expect;
      CHECK(dl_pairing(a, a) == expect);
    }
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    for (int k = 0; k < 200; ++k) {
      const auto& a = pairs[pick(rng)];
      const auto& b = pairs[pick(rng)];
      CHECK(dl_pairing(a, b) == dl_pairing(b, a));
    }
  }
}

TEST_CASE("signs")
{
  for (unsigned n = 1; n <= 5; ++n)
    for (const auto& p : symmetric_group(n)) {
      CHECK(sign(p) == reflection_sign(p));
      CHECK(sign(p) == (((n - cycle_count(p)) % 2) ? -1 : 1));
      CHECK(compose(p, inverse(p)) == identity_perm(n));
    }
}

TEST_CASE("generic constituents have norm one and are orthogonal")
{
  CHECK(pi_norm({lab(0, 1), lab(0, 1)}, 3) == 1);
  CHECK(pi_norm({lab(1, 3), lab(2, 3)}, 2) == 1);
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u})
    CHECK(gg_constituent_labels(1, q).size() == q - 1);
  for (auto [n, q] : std::vector<std::pair<unsigned, std::uint64_t>>{
           {2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}}) {
    CAPTURE(n);
    CAPTURE(q);
    const auto labels = gg_constituent_labels(n, q);
    CHECK(labels.size() == tamefiber::exactalg::ipow_u64(q, n - 1) * (q - 1));
    Rational total = 0;
    for (const auto& s : labels) {
      const auto nrm = pi_norm(s, q);
      CHECK(nrm == 1);
      total += nrm;
    }
    CHECK(total == labels.size());
    if (labels.size() <= 12)
      for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
          CHECK(pi_pairing(labels[i], labels[j], q) == 0);
  }
}

TEST_CASE("multiplicities")
{
  const TorusTuple ones{lab(0, 1), lab(0, 1)};
  const InertialParam reg(3, {{FrobOrbit(lab(0, 1), 3), Partition({2})}});
  const InertialParam triv(3, {{FrobOrbit(lab(0, 1), 3), Partition({1, 1})}});
  CHECK(multiplicity(ones, reg) == 1);
  CHECK(multiplicity(ones, triv) == 1);
  const InertialParam triv2(2, {{FrobOrbit(lab(0, 1), 2), Partition({1, 1})}});
  CHECK(multiplicity({lab(1, 3), lab(2, 3)}, triv2) == 0);
  CHECK_THROWS_AS(multiplicity({lab(0, 1)}, triv), std::invalid_argument);

  // m(sigma, tau) is 1 exactly on the geometric class of the semisimple part of tau
  for (auto [n, q] : std::vector<std::pair<unsigned, std::uint64_t>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {3, 3}}) {
    CAPTURE(n);
    CAPTURE(q);
    const auto labels = gg_constituent_labels(n, q);
    const auto taus = inertial_params(n, q);
    const auto table = multiplicity_table(labels, taus);
    CHECK(table == reference::multiplicity_table(labels, taus));
    for (std::size_t j = 0; j < taus.size(); ++j) {
      const auto st = tuple_of(taus[j].semisimple_part());
      for (std::size_t i = 0; i < labels.size(); ++i)
        CHECK(table[i][j] == (labels[i] == st ? 1 : 0));
    }
  }
}

TEST_CASE("cuspidal support pairing")
{
  using tamefiber::params::SemisimpleParam;
  CHECK(cuspidal_support_pairing(SemisimpleParam::from_labels(2, {lab(1, 3), lab(2, 3)})) == 1);
  CHECK(cuspidal_support_pairing(SemisimpleParam::from_labels(3, {lab(0, 1), lab(0, 1)})) == 1);
  CHECK(cuspidal_support_pairing(SemisimpleParam::from_labels(2, {lab(1, 7), lab(2, 7), lab(4, 7)})) == 1);
  for (auto [n, q] : std::vector<std::pair<unsigned, std::uint64_t>>{{2, 3}, {3, 2}, {3, 3}, {4, 2}})
    for (const auto& s : tamefiber::params::enumerate_ss_params(n, q))
      if (s.parts().size() == 1)
        CHECK(cuspidal_support_pairing(s) == 1);
}

TEST_CASE("Gelfand-Graev meets every Deligne-Lusztig character once")
{
  for (std::uint64_t q : {2u, 3u, 4u, 5u})
    for (std::uint32_t a = 0; a + 1 < q; ++a)
      for (std::uint32_t b = 0; b + 1 < q; ++b)
        CHECK(gg_dl_pairing({kId2, {lab(a, q - 1), lab(b, q - 1)}}, q) == 1);
  for (auto [n, q] : std::vector<std::pair<unsigned, std::uint64_t>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}})
    for (const auto& t : gg_constituent_labels(n, q))
      for (const auto& x : coset(t, q, symmetric_group(n)))
        CHECK(gg_dl_pairing({x, t}, q) == 1);
  CHECK_THROWS_AS(gg_dl_pairing({kId2, {lab(1, 3), lab(2, 3)}}, 2), std::invalid_argument);
}
