#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "tamefiber/exactalg/integer.hpp"
#include "tamefiber/params/params.hpp"

using namespace tamefiber::params;
using tamefiber::exactalg::FiniteField;
using tamefiber::exactalg::ipow_u64;

namespace {

std::vector<std::string> texts(const std::vector<SemisimpleParam>& v)
{
  std::vector<std::string> out;
  for (const auto& s : v)
    out.push_back(s.str());
  return out;
}

// brute force: sorted n-tuples of residues mod M whose multiset is stable under x -> qx
std::set<std::vector<std::uint64_t>> stable_multisets(unsigned n, std::uint64_t q)
{
  std::uint64_t m = 1;
  for (unsigned r = 1; r <= n; ++r)
    m = tamefiber::exactalg::lcm_u64(m, ipow_u64(q, r) - 1);
  std::set<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> cur(n, 0);
  std::function<void(unsigned, std::uint64_t)> rec = [&](unsigned i, std::uint64_t lo) {
    if (i == n) {
      std::vector<std::uint64_t> img;
      for (auto x : cur)
        img.push_back(x * q % m);
      std::sort(img.begin(), img.end());
      if (img == cur)
        out.insert(cur);
      return;
    }
    for (std::uint64_t x = lo; x < m; ++x) {
      cur[i] = x;
      rec(i + 1, x);
    }
  };
  rec(0, 0);
  return out;
}

std::vector<std::uint64_t> as_residues(const SemisimpleParam& s, std::uint64_t m)
{
  std::vector<std::uint64_t> out;
  for (const auto& x : s.labels())
    out.push_back(x.num() * (m / x.order()));
  std::sort(out.begin(), out.end());
  return out;
}

FMat from_ints(const FiniteField& f, std::size_t n, const std::vector<long long>& v)
{
  return tamefiber::exactalg::mat_from_ints(f, n, n, v);
}

InertialParam single(std::uint64_t q, RootOfUnityLabel x, std::vector<unsigned> parts)
{
  return InertialParam(q, {{FrobOrbit(x, q), Partition(parts)}});
}

} // namespace

TEST_CASE("labels and orbits")
{
  CHECK(RootOfUnityLabel(4, 6).str() == "3/2");
  CHECK(RootOfUnityLabel(6, 6).str() == "1/0");
  const FrobOrbit o(RootOfUnityLabel(2, 3), 2);
  CHECK(o.str() == "3/1");
  CHECK(o.size() == 2);
  CHECK(o.contains(RootOfUnityLabel(1, 3)));
  CHECK_THROWS_AS(FrobOrbit(RootOfUnityLabel(1, 3), 3), std::invalid_argument);
  CHECK(RootOfUnityLabel(1, 2).plus(RootOfUnityLabel(1, 3)) == RootOfUnityLabel(5, 6));

  // prime-to-ell part: the remainder has ell-power order and the part has order prime to ell
  for (std::uint64_t ell : {2u, 3u, 5u})
    for (std::uint64_t m = 1; m <= 60; ++m)
      for (std::uint64_t j = 0; j < m; ++j) {
        const RootOfUnityLabel x(j, m);
        const auto p = x.prime_to_part(ell);
        CHECK(p.order() % ell != 0);
        const auto rest = x.plus(p.times(p.order() - 1));
        CHECK(tamefiber::exactalg::prime_power(rest.order()).first == (rest.order() == 1 ? 0 : ell));
      }
}

TEST_CASE("discreteness and Levi shapes")
{
  CHECK(is_discrete(single(3, {0, 1}, {2})));
  CHECK_FALSE(is_discrete(single(3, {0, 1}, {1, 1})));
  CHECK(is_discrete(single(2, {1, 3}, {1})));

  const auto triv = InertialParam::from_semisimple(SemisimpleParam(5, {{FrobOrbit({0, 1}, 5), 3}}));
  CHECK(levi_of(triv) == LeviShape{1, 1, 1});
  CHECK(levi_of(single(2, {1, 3}, {2})) == LeviShape{4});
  CHECK(levi_of(single(3, {0, 1}, {2, 1})) == LeviShape{2, 1});

  const InertialParam mixed(3, {{FrobOrbit({1, 8}, 3), Partition({2})}, {FrobOrbit({0, 1}, 3), Partition({1, 1})}});
  const auto comps = levi_components(mixed);
  const auto shape = levi_of(mixed);
  REQUIRE(comps.size() == shape.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    CHECK(is_discrete(comps[i]));
    CHECK(comps[i].rank() == shape[i]);
  }
}

TEST_CASE("semisimple enumeration")
{
  CHECK(texts(enumerate_ss_params(1, 3)) == std::vector<std::string>{"1/0:1", "2/1:1"});
  CHECK(texts(enumerate_ss_params(2, 2)) == std::vector<std::string>{"1/0:1,1", "3/1:1"});
  CHECK(enumerate_ss_params(2, 3).size() == 6);

  for (auto [n, q] : std::vector<std::pair<unsigned, std::uint64_t>>{
           {1, 2}, {1, 5}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}, {4, 2}, {2, 7}}) {
    CAPTURE(n);
    CAPTURE(q);
    const auto all = enumerate_ss_params(n, q);
    CHECK(all.size() == ipow_u64(q, n - 1) * (q - 1));
    const auto t = texts(all);
    CHECK(std::is_sorted(t.begin(), t.end()));
    CHECK(std::adjacent_find(t.begin(), t.end()) == t.end());
    for (const auto& s : all) {
      CHECK(s.rank() == n);
      CHECK(InertialParam::from_semisimple(s).semisimple_part() == s);
      CHECK(SemisimpleParam::from_labels(q, s.labels()) == s);
    }
    if (n <= 3 && ipow_u64(q, n) <= 27) {
      std::uint64_t m = 1;
      for (unsigned r = 1; r <= n; ++r)
        m = tamefiber::exactalg::lcm_u64(m, ipow_u64(q, r) - 1);
      std::set<std::vector<std::uint64_t>> got;
      for (const auto& s : all)
        got.insert(as_residues(s, m));
      CHECK(got == stable_multisets(n, q));
    }
  }
  CHECK_THROWS_AS(SemisimpleParam::from_labels(2, {RootOfUnityLabel(1, 3), RootOfUnityLabel(0, 1)}),
                  std::invalid_argument);
}

TEST_CASE("reduction modulo ell and fibers")
{
  const auto one = enumerate_ss_params(1, 3);
  for (const auto& s : one)
    CHECK(reduce_mod_ell(s, 2).str() == "1/0:1");
  CHECK(fiber(one.front(), 1, 3, 2).size() == 2);

  const auto two = enumerate_ss_params(2, 3);
  for (const auto& s : two)
    CHECK(reduce_mod_ell(s, 2).str() == "1/0:1,1");
  CHECK(fiber(reduce_mod_ell(two.front(), 2), 2, 3, 2).size() == 6);

  const auto z3 = SemisimpleParam::from_labels(2, {RootOfUnityLabel(1, 3), RootOfUnityLabel(2, 3)});
  CHECK(reduce_mod_ell(z3, 5) == z3);
  CHECK(fiber(z3, 2, 2, 5) == std::vector<SemisimpleParam>{z3});
  CHECK_THROWS_AS(fiber(z3, 2, 2, 3), std::invalid_argument);

  for (auto [n, q, ell] : std::vector<std::tuple<unsigned, std::uint64_t, std::uint64_t>>{
           {2, 3, 2}, {2, 5, 3}, {2, 2, 3}, {3, 2, 7}, {3, 3, 2}, {2, 4, 5}, {2, 7, 2}}) {
    CAPTURE(n);
    CAPTURE(q);
    CAPTURE(ell);
    const auto all = enumerate_ss_params(n, q);
    std::map<std::string, SemisimpleParam> images;
    for (const auto& s : all) {
      const auto r = reduce_mod_ell(s, ell);
      CHECK(r.rank() == n);
      for (const auto& [o, k] : r.parts())
        CHECK(o.order() % ell != 0);
      images.emplace(r.str(), r);
      if (std::all_of(s.parts().begin(), s.parts().end(), [&](const auto& p) { return p.first.order() % ell != 0; }))
        CHECK(r == s);
    }
    std::size_t total = 0;
    std::set<std::string> seen;
    for (const auto& [name, sbar] : images) {
      for (const auto& s : fiber(sbar, n, q, ell)) {
        CHECK(seen.insert(s.str()).second);
        ++total;
      }
    }
    CHECK(total == all.size());
  }
}

TEST_CASE("inertial reduction merges Jordan data")
{
  const InertialParam tau(3, {{FrobOrbit({1, 2}, 3), Partition({2})}, {FrobOrbit({0, 1}, 3), Partition({1})}});
  CHECK(reduce_mod_ell(tau, 2).str() == "1/0:2,1");
  CHECK(reduce_mod_ell(tau, 2).semisimple_part() == reduce_mod_ell(tau.semisimple_part(), 2));
  // an orbit of size 2 collapsing to size 1 doubles each part
  const auto tau2 = single(3, {1, 8}, {2});
  CHECK(reduce_mod_ell(tau2, 2).str() == "1/0:2,2");
}

TEST_CASE("twists commute with reduction")
{
  for (auto [n, q, ell] : std::vector<std::tuple<unsigned, std::uint64_t, std::uint64_t>>{
           {2, 3, 2}, {2, 5, 2}, {2, 4, 3}, {3, 3, 2}, {2, 7, 3}}) {
    for (std::uint64_t j = 0; j < q - 1; ++j) {
      const RootOfUnityLabel t(j, q - 1);
      for (const auto& s : enumerate_ss_params(n, q)) {
        const auto tw = twist_by(s, t);
        CHECK(tw.rank() == n);
        CHECK(reduce_mod_ell(tw, ell) == twist_by(reduce_mod_ell(s, ell), t.prime_to_part(ell)));
      }
    }
  }
  CHECK_THROWS_AS(twist_by(enumerate_ss_params(1, 2).front(), RootOfUnityLabel(1, 3)), std::invalid_argument);
}

TEST_CASE("least large f")
{
  CHECK(min_large_f(2, 3, 2) == 2);
  CHECK(min_large_f(2, 5, 3) == 2);
  CHECK(min_large_f(2, 2, 7) == 3);
  // brute force with machine integers
  for (unsigned n = 1; n <= 5; ++n)
    for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 9u})
      for (std::uint64_t ell : {2u, 3u, 5u, 7u}) {
        if (q % ell == 0)
          continue;
        unsigned need = 0;
        for (unsigned k = 2; k <= n; ++k)
          need += tamefiber::exactalg::valuation_u64(k, ell);
        unsigned f = 1;
        while (tamefiber::exactalg::valuation_u64(ipow_u64(q, f) - 1, ell) <= need)
          ++f;
        CHECK(min_large_f(n, q, ell) == f);
      }
}

TEST_CASE("f-distinguished checks")
{
  const auto f2 = FiniteField::get(2, 1);
  CHECK(is_f_distinguished(*f2, from_ints(*f2, 2, {1, 1, 0, 1}), from_ints(*f2, 2, {1, 0, 0, 1}), 3, 2, {2}));
  const auto f5 = FiniteField::get(5, 1);
  const FMat id5 = from_ints(*f5, 2, {1, 0, 0, 1});
  CHECK_FALSE(is_f_distinguished(*f5, id5, id5, 3, 1, {1, 1}));
  CHECK(is_f_distinguished(*f5, id5, from_ints(*f5, 2, {1, 0, 0, 2}), 3, 1, {1, 1}));
  // relation fails: sigma = diag(1, 2), sigma^3 = diag(1, 3) but phi = I
  CHECK_THROWS_AS(is_f_distinguished(*f5, from_ints(*f5, 2, {1, 0, 0, 2}), id5, 3, 1, {1, 1}),
                  std::invalid_argument);
  // not block diagonal for the torus
  CHECK_FALSE(is_f_distinguished(*f5, id5, from_ints(*f5, 2, {1, 1, 0, 1}), 3, 1, {1, 1}));
  // J_2 over F_2 with q = 3 at the torus: blocks 1 and 1 collide
  CHECK_FALSE(is_f_distinguished(*f2, from_ints(*f2, 2, {1, 0, 0, 1}), from_ints(*f2, 2, {1, 0, 0, 1}), 3, 2, {2}));
}

TEST_CASE("f-distinguished construction examples")
{
  {
    const auto pt = make_f_distinguished(single(3, {0, 1}, {2}), 2, 2, 1);
    const auto& F = *pt.field;
    CHECK(F.size() == 2);
    CHECK(pt.sigma == from_ints(F, 2, {1, 1, 0, 1}));
    CHECK(pt.phi == from_ints(F, 2, {1, 0, 0, 1}));
    CHECK(pt.levi == LeviShape{2});
  }
  {
    const auto triv = InertialParam::from_semisimple(SemisimpleParam(3, {{FrobOrbit({0, 1}, 3), 2}}));
    const auto pt = make_f_distinguished(triv, 1, 5, 1);
    const auto& F = *pt.field;
    CHECK(pt.sigma == from_ints(F, 2, {1, 0, 0, 1}));
    CHECK(pt.phi == from_ints(F, 2, {1, 0, 0, 2}));
  }
  {
    const auto pt = make_f_distinguished(single(2, {1, 3}, {1}), min_large_f(2, 2, 7), 7, 1);
    const auto& F = *pt.field;
    CHECK(F.size() == 7);
    CHECK(pt.sigma == from_ints(F, 2, {2, 0, 0, 4}));
    CHECK(pt.phi == from_ints(F, 2, {0, 1, 1, 0}));
  }
}

TEST_CASE("f-distinguished construction certifies itself")
{
  for (auto [n, q, ell] : std::vector<std::tuple<unsigned, std::uint64_t, std::uint64_t>>{
           {2, 3, 2}, {2, 2, 7}, {2, 3, 5}, {2, 5, 3}, {3, 2, 3}, {3, 3, 2}, {2, 4, 3}}) {
    CAPTURE(n);
    CAPTURE(q);
    CAPTURE(ell);
    const unsigned f = min_large_f(n, q, ell);
    std::set<std::string> done;
    for (const auto& s : enumerate_ss_params(n, q)) {
      const auto sbar = reduce_mod_ell(s, ell);
      std::vector<InertialParam> taus{InertialParam::from_semisimple(sbar)};
      std::vector<std::pair<FrobOrbit, Partition>> regular;
      for (const auto& [o, k] : sbar.parts())
        regular.emplace_back(o, Partition({k}));
      taus.emplace_back(q, regular);
      for (const auto& tau : taus) {
        if (!done.insert(tau.str()).second)
          continue;
        CAPTURE(tau.str());
        const auto pt = make_f_distinguished(tau, f, ell, 1);
        CHECK(pt.levi == levi_of(tau));
        CHECK(is_f_distinguished(*pt.field, pt.sigma, pt.phi, q, f, pt.levi));
        CHECK(inertial_type(*pt.field, pt.sigma, q) == tau);
      }
    }
  }
}

TEST_CASE("inertial type of explicit matrices")
{
  const auto f7 = FiniteField::get(7, 1);
  // J_2(2) + (4): label of 2 in F_7 is 1/3 (2 = 3^2)
  const FMat m = from_ints(*f7, 3, {2, 1, 0, 0, 2, 0, 0, 0, 4});
  CHECK_THROWS_AS(inertial_type(*f7, m, 2), std::domain_error);
  const FMat m2 = from_ints(*f7, 4, {2, 1, 0, 0, 0, 2, 0, 0, 0, 0, 4, 1, 0, 0, 0, 4});
  CHECK(inertial_type(*f7, m2, 2).str() == "3/1:2");
  CHECK(label_of(*f7, 2) == RootOfUnityLabel(1, 3));
  CHECK(root_of(*f7, RootOfUnityLabel(1, 3)) == 2);
  const FMat rot = from_ints(*f7, 2, {0, 1, 6, 0}); // x^2 + 1, irreducible over F_7
  CHECK_THROWS_AS(inertial_type(*f7, rot, 3), std::domain_error);
}
