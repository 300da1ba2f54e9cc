#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "checks.hpp"
#include "tamefiber/bmcheck/bmcheck.hpp"
#include "tamefiber/cli/cli.hpp"
#include "tamefiber/defmod/defmod.hpp"
#include "tamefiber/dlcomb/dlcomb.hpp"
#include "tamefiber/exactalg/integer.hpp"
#include "tamefiber/exactalg/poly.hpp"
#include "tamefiber/fingroup/characters.hpp"
#include "tamefiber/fingroup/group.hpp"
#include "tamefiber/fingroup/modules.hpp"
#include "tamefiber/params/params.hpp"
#include "tamefiber/symquot/symquot.hpp"

namespace tamefiber::cli {

namespace {

using exactalg::ArtinLocalRing;
using exactalg::FiniteField;
using exactalg::Integer;
using params::InertialParam;
using params::SemisimpleParam;

Json int_json(const Integer& x)
{
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

std::uint64_t rank_of(const RunConfig& c)
{
  return exactalg::ipow_u64(c.q, c.n - 1) * (c.q - 1);
}

InertialParam unipotent_type(const RunConfig& c)
{
  return InertialParam(c.q, {{params::FrobOrbit(params::RootOfUnityLabel(0, 1), c.q), symquot::Partition({c.n})}});
}

unsigned f_of(const RunConfig& c)
{
  return c.f ? *c.f : params::min_large_f(c.n, c.q, c.ell);
}

fingroup::FqGroup make_group(const RunConfig& c)
{
  try {
    return fingroup::FqGroup(c.n, c.q);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("group outside the enumeration range: ") + e.what());
  }
}

Json strings(const std::vector<std::string>& v)
{
  Json j = Json::array();
  for (const auto& s : v)
    j.push_back(s);
  return j;
}

Json int_row(const std::vector<Integer>& v)
{
  Json j = Json::array();
  for (const auto& x : v)
    j.push_back(int_json(x));
  return j;
}

std::string mono_str(const symquot::EMonomial& a)
{
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (i ? "," : "") + std::to_string(a[i]);
  return s;
}

// ---- bqn

void cmd_bqn(Report& rep, const std::string& sub, const RunConfig& c)
{
  const auto b = symquot::basis(static_cast<unsigned>(c.q), c.n);
  rep.check("basis size", "rank of B_{q,n} equals q^{n-1}(q-1)", rank_of(c), b.size());
  if (sub == "rank")
    return;
  std::vector<std::string> names;
  for (const auto& m : b)
    names.push_back(mono_str(m));
  rep.details["basis"] = strings(names);
  std::vector<std::vector<symquot::RootFraction>> pts;
  for (const auto& s : params::enumerate_ss_params(c.n, c.q)) {
    std::vector<symquot::RootFraction> p;
    for (const auto& x : s.labels())
      p.emplace_back(x.num(), x.order());
    pts.push_back(std::move(p));
  }
  const auto cert = symquot::certify_pairing(static_cast<unsigned>(c.q), c.n, pts);
  rep.details["pairing"] = {{"points", cert.point_count}, {"conductor", cert.conductor}, {"prime", cert.prime}};
  rep.check("evaluation pairing rank", "pairing of the basis with the q-stable points is nonsingular", b.size(),
            cert.rank_mod_prime);
  rep.check("evaluation pairing square", "one q-stable point per basis element", b.size(), cert.point_count);
}

// ---- params

void cmd_params(Report& rep, const std::string& sub, const RunConfig& c)
{
  if (sub == "enumerate") {
    const auto all = params::enumerate_ss_params(c.n, c.q);
    std::vector<std::string> names;
    std::size_t stable = 0;
    for (const auto& s : all) {
      names.push_back(s.str());
      if (SemisimpleParam::from_labels(c.q, s.labels()) == s)
        ++stable;
    }
    rep.details["params"] = strings(names);
    rep.check("q-stable orbit count", "orbit count equals q^{n-1}(q-1)", rank_of(c), all.size());
    rep.check("canonical round trip", "from_labels recovers each parameter", all.size(), stable);
    return;
  }
  const std::uint64_t ell = require_ell(c);
  if (sub == "fiber") {
    std::set<std::string> seen;
    Json fibers = Json::array();
    std::size_t total = 0;
    for (const auto& s : params::enumerate_ss_params(c.n, c.q)) {
      const auto r = params::reduce_mod_ell(s, ell);
      if (!seen.insert(r.str()).second)
        continue;
      std::vector<std::string> names;
      for (const auto& t : params::fiber(r, c.n, c.q, ell))
        names.push_back(t.str());
      total += names.size();
      fibers.push_back({{"sbar", r.str()}, {"fiber", strings(names)}});
    }
    rep.details["fibers"] = std::move(fibers);
    rep.check("fiber total", "fibers over the residue parameters partition the orbits", rank_of(c), total);
    rep.check("fiber partition", "every fiber member reduces to its residue parameter", true,
              bmcheck::fiber_partition_holds(c.n, c.q, ell));
    return;
  }
  if (sub == "distinguished") {
    const unsigned f = f_of(c);
    Json rows = Json::array();
    std::size_t expected = 0, ok = 0;
    for (const auto& s : params::enumerate_ss_params(c.n, c.q)) {
      if (s.parts().size() != 1 || !(params::reduce_mod_ell(s, ell) == s))
        continue;
      ++expected;
      const auto tau = bmcheck::tau_of(s);
      Json row{{"tau", tau.str()}};
      try {
        const auto pt = params::make_f_distinguished(tau, f, ell, c.e);
        const bool good = params::is_f_distinguished(*pt.field, pt.sigma, pt.phi, c.q, f, pt.levi) &&
                          params::inertial_type(*pt.field, pt.sigma, c.q) == tau;
        row["field"] = pt.field->size();
        row["ok"] = good;
        ok += good ? 1 : 0;
      } catch (const std::runtime_error& e) {
        row["ok"] = false;
        row["error"] = e.what();
      }
      rows.push_back(std::move(row));
    }
    rep.details["f"] = f;
    rep.details["constructions"] = std::move(rows);
    rep.check("f-distinguished constructions", "each discrete residual type has an f-distinguished point", expected,
              ok);
    return;
  }
  throw ConfigError("unknown params subcommand: " + sub);
}

// ---- dl

void cmd_dl(Report& rep, const std::string& sub, const RunConfig& c)
{
  const auto labels = dlcomb::gg_constituent_labels(c.n, c.q);
  std::vector<std::string> names;
  for (const auto& t : labels)
    names.push_back(bmcheck::label_str(t));
  rep.details["labels"] = strings(names);
  if (sub == "norm") {
    std::size_t ones = 0;
    for (const auto& t : labels)
      ones += dlcomb::pi_norm(t, c.q) == 1 ? 1 : 0;
    rep.check("pi_G(s) norms", "every generalized Steinberg has norm 1", labels.size(), ones);
    std::size_t discrete = 0, cusp = 0;
    for (const auto& s : params::enumerate_ss_params(c.n, c.q)) {
      if (s.parts().size() != 1)
        continue;
      ++discrete;
      cusp += dlcomb::cuspidal_support_pairing(s) == 1 ? 1 : 0;
    }
    rep.check("cuspidal support pairings", "pi_G(s) meets eps(w0) R(w0, s) once for single-orbit s", discrete, cusp);
    return;
  }
  if (sub == "mult") {
    std::vector<InertialParam> taus;
    std::vector<std::string> tnames;
    for (const auto& s : params::enumerate_ss_params(c.n, c.q)) {
      taus.push_back(bmcheck::tau_of(s));
      tnames.push_back(taus.back().str());
    }
    const auto table = dlcomb::multiplicity_table(labels, taus);
    const auto ref = dlcomb::reference::multiplicity_table(labels, taus);
    Json rows = Json::array();
    bool nonneg = true, identity = true;
    for (std::size_t i = 0; i < table.size(); ++i) {
      rows.push_back(int_row(table[i]));
      for (std::size_t j = 0; j < table[i].size(); ++j) {
        nonneg = nonneg && table[i][j] >= 0;
        identity = identity && table[i][j] == (i == j ? 1 : 0);
      }
    }
    rep.details["taus"] = strings(tnames);
    rep.details["table"] = std::move(rows);
    rep.check("parallel table equals serial table", "multiplicity table is independent of evaluation order", true,
              table == ref);
    rep.check("multiplicities nonnegative", "m(sigma, tau) >= 0", true, nonneg);
    rep.check("generic constituent once", "m(sigma, tau_[s]) is 1 exactly when sigma = [s]", true, identity);
    return;
  }
  if (sub == "gg") {
    std::size_t pairs = 0, ones = 0;
    for (const auto& t : labels)
      for (const auto& w : dlcomb::coset(t, c.q, dlcomb::symmetric_group(c.n))) {
        ++pairs;
        ones += dlcomb::gg_dl_pairing({w, t}, c.q) == 1 ? 1 : 0;
      }
    rep.details["pairs"] = pairs;
    rep.check("Gelfand-Graev against R(w, s)", "<Gamma, eps(w) R(w, s)> = 1 for every compatible pair", pairs, ones);
    return;
  }
  throw ConfigError("unknown dl subcommand: " + sub);
}

// ---- group

void theta_oracle_records(Report& rep, const fingroup::FqGroup& g, const bmcheck::LocalModel& model,
                          const RunConfig& c, bool block_only)
{
  std::vector<bmcheck::ExplicitModule> mods;
  const std::uint32_t half = c.q % 2 == 1 ? static_cast<std::uint32_t>((c.q - 1) / 2) : 0;
  std::vector<std::vector<std::uint32_t>> js{{}};
  for (unsigned i = 0; i < c.n; ++i) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& j : js)
      for (std::uint32_t v : std::set<std::uint32_t>{0, half}) {
        auto k = j;
        k.push_back(v);
        next.push_back(std::move(k));
      }
    js = std::move(next);
  }
  for (const auto& j : js)
    mods.push_back(bmcheck::principal_series_module(g, j));
  if (c.n == 2 && c.q == 2)
    mods.push_back(bmcheck::cuspidal_sign_module(g));
  const std::size_t gamma_dim = (g.field().characteristic() - 1) * (g.order() / g.unipotent_radical().size());
  Json rows = Json::array();
  for (const auto& m : mods) {
    const bool inside = bmcheck::in_block(m.label, model);
    Json row{{"module", m.name}, {"label", bmcheck::label_str(m.label)}, {"in_block", inside}};
    if (gamma_dim * m.lattice.dim > 4096) {
      row["skipped"] = "intertwiner system too large";
      rows.push_back(std::move(row));
      continue;
    }
    if (block_only && !inside) {
      rows.push_back(std::move(row));
      continue;
    }
    const auto r = bmcheck::theta_dim_oracle(g, m, model, c.a);
    row["char0"] = r.char0;
    row["residue_l1"] = r.residue_l1;
    row["residue_l2"] = r.residue_l2 ? Json(*r.residue_l2) : Json(nullptr);
    row["truncation_rank"] = r.truncation_rank;
    rows.push_back(std::move(row));
    const Json expected = inside ? int_json(bmcheck::bar_cyc_fiber(m.label, model)) : Json(1);
    rep.check("theta dimension " + m.name, "dim Hom(Gamma, sigma) equals the fiber sum of multiplicities", expected,
              r.value);
    rep.check("theta coefficients agree " + m.name, "Hom dimension over Q, F_l and Z/l^a coincide", true,
              r.consistent);
    if (r.residue_l2)
      rep.check("lattice independence " + m.name, "F_l Hom dimension is the same for two lattices", r.residue_l1,
                *r.residue_l2);
  }
  rep.details["oracle"] = std::move(rows);
}

void cmd_group(Report& rep, const std::string& sub, const RunConfig& c)
{
  const auto g = make_group(c);
  rep.details["order"] = g.order();
  if (sub == "classes") {
    const auto cls = fingroup::conjugacy_classes(g);
    rep.details["classes"] = cls.reps.size();
    rep.check("semisimple classes", "semisimple class count equals q^{n-1}(q-1)", rank_of(c),
              fingroup::semisimple_class_count(g, cls));
    rep.check("q-stable orbits", "q-stable orbit count equals q^{n-1}(q-1)", rank_of(c),
              params::enumerate_ss_params(c.n, c.q).size());
    rep.check("basis size", "rank of B_{q,n} equals q^{n-1}(q-1)", rank_of(c),
              symquot::basis(static_cast<unsigned>(c.q), c.n).size());
    return;
  }
  if (sub == "gg") {
    const auto cls = fingroup::conjugacy_classes(g);
    const auto r = fingroup::gelfand_graev_selfpairing(g, cls);
    rep.details["double_cosets"] = r.double_cosets;
    rep.check("Gelfand-Graev self-pairing (Mackey)", "<Gamma, Gamma> = q^{n-1}(q-1)", rank_of(c), int_json(r.mackey));
    rep.check("Gelfand-Graev self-pairing (characters)", "<Gamma, Gamma> = q^{n-1}(q-1)", rank_of(c),
              int_json(r.character));
    return;
  }
  if (sub == "homdim") {
    const auto cls = fingroup::conjugacy_classes(g);
    const auto gamma = fingroup::induced_character(g, cls, fingroup::psi_character(g));
    std::size_t ones = 0;
    const auto js = fingroup::torus_exponents(g);
    for (const auto& j : js) {
      const auto chi = fingroup::induced_character(g, cls, fingroup::borel_character(g, j));
      ones += fingroup::inner_product(g, cls, gamma, chi) == 1 ? 1 : 0;
    }
    rep.check("<Gamma, Ind_B theta>", "Gelfand-Graev meets every principal series once", js.size(), ones);
    if (c.ell != 0) {
      const auto model = bmcheck::make_local_model(unipotent_type(c), c.ell, c.f.value_or(0), c.e);
      theta_oracle_records(rep, g, model, c, false);
    }
    return;
  }
  throw ConfigError("unknown group subcommand: " + sub);
}

// ---- defo

defmod::ResidualPoint residual_point(const RunConfig& c)
{
  const auto pt = params::make_f_distinguished(unipotent_type(c), f_of(c), c.ell, c.e);
  return {pt.field, pt.sigma, pt.phi, c.q};
}

void cmd_defo(Report& rep, const std::string& sub, const RunConfig& c)
{
  require_ell(c);
  const auto rbar = residual_point(c);
  const unsigned deg = rbar.field->degree();
  rep.details["residue_field"] = rbar.field->size();
  try {
    if (sub == "probe") {
      const auto small = ArtinLocalRing::truncated_poly(c.ell, deg, c.a);
      const auto big = ArtinLocalRing::truncated_poly(c.ell, deg, c.a + 1);
      const exactalg::SquareZeroExtension ext(exactalg::RingHom::truncation(big, small));
      Json probes = Json::array();
      for (auto fam : {defmod::Family::Full, defmod::Family::Normalized}) {
        const auto r = defmod::smoothness_probe(fam, ext, rbar, {}, c.budget);
        probes.push_back({{"family", r.family},
                          {"tower", r.ring_tower},
                          {"family_points", r.family_points},
                          {"base_pairs", r.base_pairs},
                          {"unlifted_base", r.unlifted_base},
                          {"predicted", r.predicted},
                          {"min", r.min},
                          {"max", r.max}});
        rep.check(r.family + " lifts (min)", "lift count over a base point is |kernel|^{relative dimension}",
                  r.predicted, r.min);
        rep.check(r.family + " lifts (max)", "lift count over a base point is |kernel|^{relative dimension}",
                  r.predicted, r.max);
      }
      rep.details["probes"] = std::move(probes);
      return;
    }
    if (sub == "roundtrip") {
      checks::normalization_roundtrip(rep, c, rbar);
      checks::hensel_exhaustive(rep, c, rbar);
      checks::sigma_in_levi(rep, c);
      checks::degree_d_roundtrip(rep, c, 1000);
      return;
    }
  } catch (const std::length_error& e) {
    throw ConfigError(std::string("enumeration budget exceeded: ") + e.what());
  }
  throw ConfigError("unknown defo subcommand: " + sub);
}

// ---- bm

void cmd_bm(Report& rep, const std::string& sub, const RunConfig& c)
{
  if (sub != "check")
    throw ConfigError("unknown bm subcommand: " + sub);
  require_ell(c);
  const auto model = bmcheck::make_local_model(unipotent_type(c), c.ell, c.f.value_or(0), c.e);
  const auto mr = bmcheck::check_model(model);
  std::vector<std::string> fiber, taus;
  for (std::size_t k = 0; k < model.fiber.size(); ++k) {
    fiber.push_back(model.fiber[k].str());
    taus.push_back(model.taus[k].str());
  }
  rep.details["f"] = model.f;
  rep.details["sbar"] = model.sbar.str();
  rep.details["residue_field"] = model.rho.field->size();
  rep.details["fiber"] = strings(fiber);
  rep.details["taus"] = strings(taus);
  Json cyc = Json::array();
  Json red = Json::array();
  Json bar = Json::array();
  std::size_t in_block = 0;
  for (const auto& row : mr.rows) {
    cyc.push_back({{"label", bmcheck::label_str(row.label)}, {"in_block", row.in_block}, {"cyc", int_row(row.cyc.coeffs)}});
    red.push_back(int_json(row.red));
    bar.push_back(int_json(row.bar));
    in_block += row.in_block ? 1 : 0;
  }
  rep.details["cyc"] = std::move(cyc);
  rep.details["red_cyc"] = std::move(red);
  rep.details["bar_cyc"] = std::move(bar);
  rep.check("fiber partition", "fibers over the residue parameters partition the orbits", true, mr.fiber_partition);
  rep.check("fiber size", "generic labels in the block are the fiber", in_block, model.fiber.size());
  for (const auto& row : mr.rows) {
    const auto name = bmcheck::label_str(row.label);
    rep.check("red(cyc) " + name, "red(cyc(sigma)) = bar-cyc(sigma)", int_json(row.bar), int_json(row.red));
    rep.check("bar-cyc " + name, "bar-cyc(sigma) is 1 inside the block and 0 outside", row.in_block ? 1 : 0,
              int_json(row.bar));
    rep.check("cyc nonnegative " + name, "cycle coefficients are nonnegative", true, row.nonnegative);
  }
  try {
    const fingroup::FqGroup g(c.n, c.q);
    theta_oracle_records(rep, g, model, c, true);
  } catch (const std::invalid_argument&) {
    rep.details["oracle"] = "group outside the enumeration range";
  }
}

} // namespace

Report run_command(const std::string& group, const std::string& sub, const RunConfig& cfg)
{
  validate(cfg);
  Report rep;
  rep.command = group + " " + sub;
  rep.config = cfg;
  static const std::map<std::string, std::function<void(Report&, const std::string&, const RunConfig&)>> table{
      {"bqn", cmd_bqn}, {"params", cmd_params}, {"dl", cmd_dl},
      {"group", cmd_group}, {"defo", cmd_defo}, {"bm", cmd_bm}};
  const auto it = table.find(group);
  if (it == table.end())
    throw ConfigError("unknown command: " + group);
  if (group == "bqn" && sub != "basis" && sub != "rank")
    throw ConfigError("unknown bqn subcommand: " + sub);
  it->second(rep, sub, cfg);
  return rep;
}

} // namespace tamefiber::cli
