#include "doctest.h"

#include "tamefiber/bmcheck/bmcheck.hpp"

using namespace tamefiber::bmcheck;
using tamefiber::fingroup::FqGroup;
using tamefiber::params::FrobOrbit;
using tamefiber::params::RootOfUnityLabel;
using tamefiber::symquot::Partition;

namespace {

InertialParam unipotent_type(std::uint64_t q, unsigned n)
{
  return InertialParam(q, {{FrobOrbit(RootOfUnityLabel(0, 1), q), Partition({n})}});
}

} // namespace

TEST_CASE("tau of a semisimple parameter")
{
  const auto s = SemisimpleParam::from_labels(3, {RootOfUnityLabel(0, 1), RootOfUnityLabel(0, 1)});
  const auto t = tau_of(s);
  CHECK(tamefiber::params::is_discrete(t));
  CHECK(t == unipotent_type(3, 2));
  const auto split = SemisimpleParam::from_labels(3, {RootOfUnityLabel(0, 1), RootOfUnityLabel(1, 2)});
  CHECK(tau_of(split) == InertialParam::from_semisimple(split));
}

TEST_CASE("fiber partition")
{
  for (auto [n, q, ell] : std::vector<std::tuple<unsigned, std::uint64_t, std::uint64_t>>{
           {1, 3, 2}, {2, 2, 3}, {2, 3, 2}, {2, 3, 5}, {2, 4, 3}, {2, 5, 2}, {2, 5, 3}, {3, 2, 3}, {3, 3, 2}}) {
    CAPTURE(n);
    CAPTURE(q);
    CHECK(fiber_partition_holds(n, q, ell));
  }
}

TEST_CASE("model at J_2(1), q = 3, l = 2")
{
  const auto model = make_local_model(unipotent_type(3, 2), 2);
  CHECK(model.f == 2);
  CHECK(model.rho.field->size() == 2);
  CHECK(model.fiber.size() == 6);
  const auto labels = generic_labels(model);
  CHECK(labels.size() == 6);
  for (const auto& s : labels) {
    CHECK(in_block(s, model));
    const auto v = cyc(s, model);
    CHECK(v.index.size() == 6);
    CHECK(red_cycles(v) == bar_cyc_fiber(s, model));
    CHECK(bar_cyc_fiber(s, model) == 1);
  }
  // sigma = [1, 1]: the unit vector at J_2(1)
  const GenericLabel one{RootOfUnityLabel(0, 1), RootOfUnityLabel(0, 1)};
  const auto v = cyc(one, model);
  for (std::size_t k = 0; k < v.index.size(); ++k)
    CHECK(v.coeffs[k] == (v.index[k].str() == "tau:" + unipotent_type(3, 2).str() ? 1 : 0));
  const auto rep = check_model(model);
  CHECK(rep.pass);
  CHECK(rep.fiber_partition);

  CHECK(red_cycles(CycleVector{}) == 0);
  CHECK(red_cycles(CycleVector{{ComponentLabel{model.sbar}}, {1}}) == 1);

  // principal series of GL_2(F_3) with values +-1
  const FqGroup g(2, 3);
  for (std::uint32_t a : {0u, 1u})
    for (std::uint32_t b : {0u, 1u}) {
      const auto m = principal_series_module(g, {a, b});
      const auto r = theta_dim_oracle(g, m, model);
      CAPTURE(m.name);
      CHECK(r.consistent);
      CHECK(r.residue_l2.has_value());
      CHECK(r.lattice_independent);
      CHECK(r.value == 1);
      CHECK(r.value == bar_cyc_fiber(m.label, model));
    }
  CHECK_THROWS_AS(theta_dim_oracle(FqGroup(2, 2), principal_series_module(FqGroup(2, 2), {0, 0}), model),
                  std::invalid_argument);
}

TEST_CASE("model at J_2(1), q = 2, l = 3")
{
  const auto model = make_local_model(unipotent_type(2, 2), 3);
  CHECK(model.fiber.size() == 2);
  const auto rep = check_model(model);
  CHECK(rep.pass);
  const FqGroup g(2, 2);
  const auto sign = cuspidal_sign_module(g);
  CHECK(sign.lattice.dim == 1);
  const auto rs = theta_dim_oracle(g, sign, model);
  CHECK(rs.consistent);
  CHECK_FALSE(rs.residue_l2.has_value());
  CHECK(rs.value == 1);
  CHECK(bar_cyc_fiber(sign.label, model) == 1);
  const auto st = principal_series_module(g, {0, 0});
  const auto rp = theta_dim_oracle(g, st, model);
  CHECK(rp.consistent);
  CHECK(rp.value == 1);
  CHECK_THROWS_AS(cuspidal_sign_module(FqGroup(2, 3)), std::invalid_argument);
}

TEST_CASE("blocks away from the model")
{
  const auto model = make_local_model(unipotent_type(5, 2), 3);
  const auto rep = check_model(model);
  CHECK(rep.pass);
  std::size_t outside = 0;
  for (const auto& row : rep.rows) {
    if (!row.in_block) {
      ++outside;
      for (const auto& c : row.cyc.coeffs)
        CHECK(c == 0);
    }
  }
  CHECK(outside > 0);
  CHECK(outside + model.fiber.size() == rep.rows.size());

  // n = 1: cyc of a character is the indicator of its own component
  const auto m1 = make_local_model(unipotent_type(3, 1), 2);
  CHECK(m1.fiber.size() == 2);
  for (const auto& s : generic_labels(m1)) {
    const auto v = cyc(s, m1);
    for (std::size_t k = 0; k < v.index.size(); ++k)
      CHECK(v.coeffs[k] == (m1.fiber[k] == SemisimpleParam::from_labels(3, s) ? 1 : 0));
    CHECK(bar_cyc_fiber(s, m1) == 1);
  }
}
