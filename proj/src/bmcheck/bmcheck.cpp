#include "tamefiber/bmcheck/bmcheck.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "tamefiber/exactalg/artin_ring.hpp"
#include "tamefiber/exactalg/rings.hpp"

namespace tamefiber::bmcheck {

namespace {

using exactalg::ArtinLocalRing;
using exactalg::FiniteField;
using exactalg::RationalField;
using fingroup::FqGroup;
using params::RootOfUnityLabel;

std::uint64_t ipow(std::uint64_t b, unsigned e)
{
  std::uint64_t r = 1;
  while (e--)
    r *= b;
  return r;
}

std::uint64_t divide_by_multiplicity(std::uint64_t d, unsigned mult, const char* what)
{
  if (d % mult != 0)
    throw std::logic_error(std::string("theta_dim_oracle: ") + what + " not divisible by the Gelfand-Graev multiplicity");
  return d / mult;
}

} // namespace

std::string ComponentLabel::str() const
{
  if (const auto* t = std::get_if<InertialParam>(&value))
    return "tau:" + t->str();
  return "sbar:" + std::get<SemisimpleParam>(value).str();
}

std::string label_str(const GenericLabel& s)
{
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i)
      out += ",";
    out += s[i].str();
  }
  return out + "]";
}

InertialParam tau_of(const SemisimpleParam& s)
{
  std::vector<std::pair<params::FrobOrbit, symquot::Partition>> parts;
  for (const auto& [orbit, k] : s.parts())
    parts.emplace_back(orbit, symquot::Partition({k}));
  return InertialParam(s.q(), std::move(parts));
}

LocalModel make_local_model(const InertialParam& taubar, std::uint64_t ell, unsigned f, unsigned e)
{
  LocalModel m;
  m.n = taubar.rank();
  m.q = taubar.q();
  m.ell = ell;
  m.f = f == 0 ? params::min_large_f(m.n, m.q, ell) : f;
  m.taubar = taubar;
  m.rho = params::make_f_distinguished(taubar, m.f, ell, e);
  m.sbar = params::reduce_mod_ell(taubar.semisimple_part(), ell);
  if (!(m.sbar == taubar.semisimple_part()))
    throw std::invalid_argument("make_local_model: residual type has eigenvalues of order divisible by ell");
  m.fiber = params::fiber(m.sbar, m.n, m.q, ell);
  for (const auto& s : m.fiber)
    m.taus.push_back(tau_of(s));
  return m;
}

std::vector<GenericLabel> generic_labels(const LocalModel& model)
{
  return dlcomb::gg_constituent_labels(model.n, model.q);
}

bool in_block(const GenericLabel& sigma, const LocalModel& model)
{
  const auto s = SemisimpleParam::from_labels(model.q, sigma);
  return params::reduce_mod_ell(s, model.ell) == model.sbar;
}

CycleVector cyc(const GenericLabel& sigma, const LocalModel& model)
{
  CycleVector v;
  for (const auto& tau : model.taus) {
    v.index.push_back({tau});
    v.coeffs.push_back(dlcomb::multiplicity(sigma, tau));
  }
  return v;
}

Integer red_cycles(const CycleVector& v)
{
  Integer s = 0;
  for (const auto& c : v.coeffs)
    s += c;
  return s;
}

Integer bar_cyc_fiber(const GenericLabel& sigma, const LocalModel& model)
{
  const auto table = dlcomb::reference::multiplicity_table({sigma}, model.taus);
  Integer s = 0;
  for (const auto& c : table.front())
    s += c;
  return s;
}

ExplicitModule principal_series_module(const FqGroup& g, const std::vector<std::uint32_t>& j)
{
  ExplicitModule m;
  m.name = "Ind_B theta(";
  for (std::size_t i = 0; i < j.size(); ++i)
    m.name += (i ? "," : "") + std::to_string(j[i]);
  m.name += ")";
  m.lattice = fingroup::principal_series_lattice(g, j);
  for (auto v : j)
    m.label.emplace_back(v, g.q() - 1);
  m.label = dlcomb::canonical_tuple(m.label);
  return m;
}

ExplicitModule cuspidal_sign_module(const FqGroup& g)
{
  if (g.n() != 2 || g.q() != 2)
    throw std::invalid_argument("cuspidal_sign_module: only GL_2(F_2)");
  const fingroup::BlockRep beta = [&g](fingroup::Elem x) {
    // nonzero vectors 1, 2, 3 as bit patterns (v_0 + 2 v_1)
    std::vector<unsigned> image;
    for (unsigned v = 1; v <= 3; ++v) {
      unsigned w = 0;
      for (unsigned i = 0; i < 2; ++i) {
        unsigned bit = 0;
        for (unsigned k = 0; k < 2; ++k)
          bit ^= g.entry(x, i, k) & ((v >> k) & 1u);
        w |= bit << i;
      }
      image.push_back(w);
    }
    int inversions = 0;
    for (unsigned a = 0; a < 3; ++a)
      for (unsigned b = a + 1; b < 3; ++b)
        if (image[a] > image[b])
          ++inversions;
    return fingroup::IntMat(1, 1, Integer(inversions % 2 ? -1 : 1));
  };
  std::vector<fingroup::Elem> all(g.order());
  for (std::size_t i = 0; i < all.size(); ++i)
    all[i] = static_cast<fingroup::Elem>(i);
  ExplicitModule m;
  m.name = "sign";
  m.lattice = fingroup::induced_module(g, all, 1, beta);
  m.label = dlcomb::canonical_tuple({RootOfUnityLabel(1, 3), RootOfUnityLabel(2, 3)});
  return m;
}

OracleResult theta_dim_oracle(const FqGroup& g, const ExplicitModule& sigma, const LocalModel& model, unsigned a)
{
  if (g.n() != model.n || g.q() != model.q)
    throw std::invalid_argument("theta_dim_oracle: group does not match the model");
  if (model.rho.levi != params::LeviShape{model.n})
    throw std::invalid_argument("theta_dim_oracle: only models whose Levi is all of GL_n");
  const auto gamma = fingroup::gelfand_graev_lattice(g);
  const unsigned mult = fingroup::gelfand_graev_multiplicity(g);
  const auto& l1 = sigma.lattice;

  OracleResult r;
  const RationalField qf;
  r.char0 = divide_by_multiplicity(
      fingroup::hom_dim(qf, fingroup::change_ring(qf, gamma), fingroup::change_ring(qf, l1)), mult, "Q dimension");

  const auto fl = FiniteField::get(static_cast<unsigned>(model.ell), 1);
  const auto gf = fingroup::change_ring(*fl, gamma);
  r.residue_l1 = divide_by_multiplicity(fingroup::hom_dim(*fl, gf, fingroup::change_ring(*fl, l1)), mult, "F_l dimension");

  if (l1.dim > 1) {
    // first vector whose orbit lattice sits strictly between l L1 and L1
    std::vector<std::vector<Integer>> candidates;
    std::vector<Integer> x(l1.dim, 0);
    x[0] = 1;
    x[1] = -1;
    candidates.push_back(x);
    x[1] = 0;
    candidates.push_back(x);
    x[1] = 1;
    candidates.push_back(x);
    for (const auto& c : candidates) {
      try {
        const auto l2 = fingroup::sublattice_module(l1, c, model.ell);
        r.residue_l2 = divide_by_multiplicity(fingroup::hom_dim(*fl, gf, fingroup::change_ring(*fl, l2)), mult,
                                              "F_l dimension");
        break;
      } catch (const std::logic_error&) {
      }
    }
  }

  const auto za = ArtinLocalRing::integers_mod(static_cast<unsigned>(model.ell), a);
  const auto prof =
      fingroup::hom_profile(*za, fingroup::change_ring(*za, gamma), fingroup::change_ring(*za, l1));
  r.truncation_free = prof.is_free();
  r.truncation_rank = divide_by_multiplicity(prof.free_rank, mult, "Z/l^a rank");

  r.lattice_independent = !r.residue_l2 || *r.residue_l2 == r.residue_l1;
  r.value = r.char0;
  r.consistent = r.residue_l1 == r.char0 && r.lattice_independent && r.truncation_free && r.truncation_rank == r.char0;
  return r;
}

bool fiber_partition_holds(unsigned n, std::uint64_t q, std::uint64_t ell)
{
  const auto all = params::enumerate_ss_params(n, q);
  std::set<std::string> seen;
  std::vector<SemisimpleParam> residues;
  for (const auto& s : all) {
    const auto r = params::reduce_mod_ell(s, ell);
    if (seen.insert(r.str()).second)
      residues.push_back(r);
  }
  std::size_t total = 0;
  for (const auto& r : residues) {
    const auto fib = params::fiber(r, n, q, ell);
    for (const auto& s : fib)
      if (!(params::reduce_mod_ell(s, ell) == r))
        return false;
    total += fib.size();
  }
  return total == all.size() && total == ipow(q, n - 1) * (q - 1);
}

ModelReport check_model(const LocalModel& model)
{
  ModelReport rep;
  const auto labels = generic_labels(model);
  rep.rows.resize(labels.size());
  std::string error;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(labels.size()); ++i) {
    try {
      LabelRow row;
      row.label = labels[i];
      row.in_block = in_block(row.label, model);
      row.cyc = cyc(row.label, model);
      row.red = red_cycles(row.cyc);
      row.bar = bar_cyc_fiber(row.label, model);
      row.nonnegative = std::all_of(row.cyc.coeffs.begin(), row.cyc.coeffs.end(), [](const Integer& c) { return c >= 0; });
      row.consistent = row.red == row.bar && row.bar == Integer(row.in_block ? 1 : 0);
      rep.rows[i] = std::move(row);
    } catch (const std::exception& e) {
#pragma omp critical
      error = e.what();
    }
  }
  if (!error.empty())
    throw std::runtime_error(error);
  rep.fiber_partition = fiber_partition_holds(model.n, model.q, model.ell);
  rep.pass = rep.fiber_partition && std::all_of(rep.rows.begin(), rep.rows.end(), [](const LabelRow& r) {
               return r.nonnegative && r.consistent;
             });
  return rep;
}

} // namespace tamefiber::bmcheck
