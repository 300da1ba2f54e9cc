#include "tamefiber/fingroup/characters.hpp"

#include <algorithm>
#include <stdexcept>

namespace tamefiber::fingroup {

namespace {

std::vector<bool> membership(const FqGroup& g, const std::vector<Elem>& h)
{
  std::vector<bool> in(g.order(), false);
  for (Elem x : h)
    in[x] = true;
  return in;
}

std::vector<std::uint32_t> psi_table(const FqGroup& g, const std::vector<Elem>& u)
{
  std::vector<std::uint32_t> out(g.order(), 0);
  for (Elem x : u)
    out[x] = psi_exponent(g, x);
  return out;
}

bool psi_agrees(const FqGroup& g, Elem x, const std::vector<bool>& in_u, const std::vector<Elem>& u,
                const std::vector<std::uint32_t>& psi, std::size_t* overlap)
{
  const Elem xi = g.inv(x);
  std::size_t count = 0;
  bool ok = true;
  for (Elem y : u) {
    const Elem z = g.mul(g.mul(xi, y), x);
    if (!in_u[z])
      continue;
    ++count;
    if (psi[y] != psi[z])
      ok = false;
  }
  if (overlap)
    *overlap = count;
  return ok;
}

std::vector<Elem> double_coset_reps(const FqGroup& g, const std::vector<Elem>& u)
{
  // least element of each U x U
  std::vector<bool> seen(g.order(), false);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x])
      continue;
    reps.push_back(x);
    for (Elem a : u)
      for (Elem b : u)
        seen[g.mul(g.mul(a, x), b)] = true;
  }
  return reps;
}

} // namespace

std::uint32_t psi_exponent(const FqGroup& g, Elem u)
{
  const FiniteField& f = g.field();
  FiniteField::value_type s = 0;
  for (unsigned i = 0; i + 1 < g.n(); ++i)
    s = f.add(s, g.entry(u, i, i + 1));
  return f.trace(s);
}

SubgroupCharacter psi_character(const FqGroup& g)
{
  SubgroupCharacter chi;
  chi.elements = g.unipotent_radical();
  const std::uint64_t p = g.field().characteristic();
  for (Elem u : chi.elements)
    chi.values.push_back(CyclotomicNumber::zeta(p, psi_exponent(g, u)));
  return chi;
}

void check_general_position(const FqGroup& g)
{
  const auto u = g.unipotent_radical();
  const auto center = g.center();
  std::vector<Elem> stab;
  for (Elem t : g.torus()) {
    bool fixes = true;
    for (Elem x : u)
      if (psi_exponent(g, g.conj(t, x)) != psi_exponent(g, x)) {
        fixes = false;
        break;
      }
    if (fixes)
      stab.push_back(t);
  }
  if (stab != center)
    throw std::logic_error("psi is not in general position");
}

SubgroupCharacter borel_character(const FqGroup& g, const std::vector<std::uint32_t>& j)
{
  if (j.size() != g.n())
    throw std::invalid_argument("borel_character: need one exponent per diagonal entry");
  const FiniteField& f = g.field();
  const std::uint64_t m = g.q() - 1;
  SubgroupCharacter chi;
  chi.elements = g.borel();
  for (Elem b : chi.elements) {
    std::uint64_t k = 0;
    for (unsigned i = 0; i < g.n(); ++i)
      k += std::uint64_t{j[i]} * f.log(g.entry(b, i, i));
    chi.values.push_back(CyclotomicNumber::zeta(m, static_cast<long long>(k % m)));
  }
  return chi;
}

std::vector<std::vector<std::uint32_t>> torus_exponents(const FqGroup& g)
{
  const auto m = static_cast<std::uint32_t>(g.q() - 1);
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> j(g.n(), 0);
  for (;;) {
    out.push_back(j);
    std::size_t pos = g.n();
    while (pos > 0 && ++j[pos - 1] == m)
      j[--pos] = 0;
    if (pos == 0)
      break;
  }
  return out;
}

CharacterVector induced_character(const FqGroup&, const ClassData& c, const SubgroupCharacter& chi)
{
  const std::uint64_t conductor = chi.values.empty() ? 1 : chi.values.front().conductor();
  CharacterVector sums(c.reps.size(), CyclotomicNumber(conductor));
  for (std::size_t i = 0; i < chi.elements.size(); ++i)
    sums[c.class_of[chi.elements[i]]] += chi.values[i];
  const Rational h(chi.elements.size());
  for (std::size_t k = 0; k < sums.size(); ++k)
    sums[k] = sums[k] * CyclotomicNumber(conductor, Rational(c.centralizer_orders[k]) / h);
  return sums;
}

Rational inner_product(const FqGroup& g, const ClassData& c, const CharacterVector& a, const CharacterVector& b)
{
  CyclotomicNumber total;
  for (std::size_t k = 0; k < c.reps.size(); ++k)
    total += CyclotomicNumber(1, Rational(c.sizes[k])) * a[k] * b[k].conj();
  return total.rational_value() / Rational(g.order());
}

Integer mackey_selfpairing(const FqGroup& g)
{
  const auto u = g.unipotent_radical();
  const auto in_u = membership(g, u);
  const auto psi = psi_table(g, u);
  const auto reps = double_coset_reps(g, u);
  const long k = static_cast<long>(reps.size());
  std::vector<std::uint8_t> pass(reps.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < k; ++i)
    pass[i] = psi_agrees(g, reps[i], in_u, u, psi, nullptr) ? 1 : 0;
  Integer count = 0;
  for (auto v : pass)
    count += v;
  return count;
}

GGSelfPairing gelfand_graev_selfpairing(const FqGroup& g, const ClassData& c)
{
  check_general_position(g);
  GGSelfPairing out;
  out.mackey = mackey_selfpairing(g);
  const auto gamma = induced_character(g, c, psi_character(g));
  const Rational norm = inner_product(g, c, gamma, gamma);
  if (denominator(norm) != 1)
    throw std::logic_error("Gelfand-Graev norm is not an integer");
  out.character = numerator(norm);
  out.double_cosets = double_coset_reps(g, g.unipotent_radical()).size();
  return out;
}

namespace reference {

CharacterVector induced_character(const FqGroup& g, const ClassData& c, const SubgroupCharacter& chi)
{
  const std::uint64_t conductor = chi.values.empty() ? 1 : chi.values.front().conductor();
  std::vector<long> pos(g.order(), -1);
  for (std::size_t i = 0; i < chi.elements.size(); ++i)
    pos[chi.elements[i]] = static_cast<long>(i);
  CharacterVector out;
  for (Elem r : c.reps) {
    CyclotomicNumber s(conductor);
    for (Elem x = 0; x < g.order(); ++x) {
      const Elem y = g.conj(x, r);
      if (pos[y] >= 0)
        s += chi.values[pos[y]];
    }
    out.push_back(s * CyclotomicNumber(conductor, Rational(1) / Rational(chi.elements.size())));
  }
  return out;
}

Integer mackey_selfpairing(const FqGroup& g)
{
  const auto u = g.unipotent_radical();
  const auto in_u = membership(g, u);
  const auto psi = psi_table(g, u);
  Rational total = 0;
  for (Elem x = 0; x < g.order(); ++x) {
    std::size_t overlap = 0;
    if (psi_agrees(g, x, in_u, u, psi, &overlap))
      total += Rational(overlap) / Rational(u.size() * u.size());
  }
  if (denominator(total) != 1)
    throw std::logic_error("reference::mackey_selfpairing: non-integral total");
  return numerator(total);
}

} // namespace reference

} // namespace tamefiber::fingroup
