#include "tamefiber/dlcomb/dlcomb.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace tamefiber::dlcomb {

Perm identity_perm(unsigned n)
{
  Perm p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

Perm compose(const Perm& v, const Perm& w)
{
  if (v.size() != w.size())
    throw std::invalid_argument("compose: size mismatch");
  Perm out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = v[w[i]];
  return out;
}

Perm inverse(const Perm& p)
{
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    out[p[i]] = static_cast<unsigned>(i);
  return out;
}

int sign(const Perm& p)
{
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j])
        s = -s;
  return s;
}

namespace {

std::vector<unsigned> cycle_lengths(const Perm& p)
{
  std::vector<bool> seen(p.size(), false);
  std::vector<unsigned> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i])
      continue;
    unsigned len = 0;
    for (std::size_t k = i; !seen[k]; k = p[k]) {
      seen[k] = true;
      ++len;
    }
    out.push_back(len);
  }
  return out;
}

} // namespace

unsigned cycle_count(const Perm& p)
{
  return static_cast<unsigned>(cycle_lengths(p).size());
}

int reflection_sign(const Perm& p)
{
  int s = 1;
  for (unsigned len : cycle_lengths(p))
    if (len % 2 == 0)
      s = -s;
  return s;
}

const std::vector<Perm>& symmetric_group(unsigned n)
{
  static std::mutex mu;
  static std::map<unsigned, std::vector<Perm>> cache;
  if (n > 8)
    throw std::invalid_argument("symmetric_group: n too large");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end())
    return it->second;
  std::vector<Perm> all;
  Perm p = identity_perm(n);
  do
    all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return cache.emplace(n, std::move(all)).first->second;
}

std::vector<Perm> young_subgroup(const LeviShape& shape)
{
  std::vector<unsigned> block;
  for (std::size_t b = 0; b < shape.size(); ++b)
    block.insert(block.end(), shape[b], static_cast<unsigned>(b));
  std::vector<Perm> out;
  for (const auto& p : symmetric_group(static_cast<unsigned>(block.size()))) {
    bool ok = true;
    for (std::size_t i = 0; i < p.size() && ok; ++i)
      ok = block[p[i]] == block[i];
    if (ok)
      out.push_back(p);
  }
  return out;
}

TorusTuple act(const Perm& v, const TorusTuple& s)
{
  if (v.size() != s.size())
    throw std::invalid_argument("act: size mismatch");
  TorusTuple out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    out[v[i]] = s[i];
  return out;
}

TorusTuple frob(const TorusTuple& s, std::uint64_t q)
{
  TorusTuple out;
  for (const auto& x : s)
    out.push_back(x.times(q));
  return out;
}

bool is_compatible(const DLPair& a, std::uint64_t q)
{
  return act(a.w, a.s) == frob(a.s, q);
}

std::vector<Perm> stabilizer(const TorusTuple& s, const std::vector<Perm>& group)
{
  std::vector<Perm> out;
  for (const auto& v : group)
    if (act(v, s) == s)
      out.push_back(v);
  return out;
}

std::vector<Perm> coset(const TorusTuple& s, std::uint64_t q, const std::vector<Perm>& group)
{
  const TorusTuple sq = frob(s, q);
  std::vector<Perm> out;
  for (const auto& w : group)
    if (act(w, s) == sq)
      out.push_back(w);
  return out;
}

Integer dl_pairing(const DLPair& a, const DLPair& b)
{
  const unsigned n = static_cast<unsigned>(a.w.size());
  if (b.w.size() != n || a.s.size() != n || b.s.size() != n)
    throw std::invalid_argument("dl_pairing: rank mismatch");
  Integer count = 0;
  for (const auto& v : symmetric_group(n))
    if (compose(compose(v, a.w), inverse(v)) == b.w && act(v, a.s) == b.s)
      ++count;
  return count;
}

TorusTuple canonical_tuple(TorusTuple s)
{
  std::sort(s.begin(), s.end());
  return s;
}

namespace {

// sum over w in W_1(s, s^q), w' in W(t, t^q) of eps(w) eps(w') <R(w, s), R(w', t)>
Integer signed_pairing_sum(const std::vector<Perm>& left, const TorusTuple& s, const std::vector<Perm>& right,
                           const TorusTuple& t)
{
  Integer total = 0;
  for (const auto& w : left)
    for (const auto& w2 : right) {
      const Integer d = dl_pairing({w, s}, {w2, t});
      if (d != 0)
        total += sign(w) * sign(w2) * d;
    }
  return total;
}

} // namespace

Rational pi_pairing(const TorusTuple& s, const TorusTuple& t, std::uint64_t q)
{
  const auto& w = symmetric_group(static_cast<unsigned>(s.size()));
  const auto cs = coset(s, q, w), ct = coset(t, q, w);
  if (cs.empty() || ct.empty())
    throw std::invalid_argument("pi_pairing: tuple is not q-stable up to W");
  const Integer ds = stabilizer(s, w).size(), dt = stabilizer(t, w).size();
  return Rational(signed_pairing_sum(cs, s, ct, t), ds * dt);
}

Rational pi_norm(const TorusTuple& s, std::uint64_t q)
{
  return pi_pairing(s, s, q);
}

TorusTuple levi_tuple(const InertialParam& tau)
{
  TorusTuple s;
  for (const auto& [o, p] : tau.parts()) {
    const auto elems = o.elements();
    for (unsigned m : p.parts())
      for (unsigned c = 0; c < m; ++c)
        s.insert(s.end(), elems.begin(), elems.end());
  }
  return s;
}

Rational multiplicity_exact(const TorusTuple& sigma, const InertialParam& tau)
{
  const std::uint64_t q = tau.q();
  if (sigma.size() != tau.rank())
    throw std::invalid_argument("multiplicity: rank mismatch");
  const TorusTuple st = levi_tuple(tau);
  const auto wl = young_subgroup(params::levi_of(tau));
  const auto& w = symmetric_group(static_cast<unsigned>(sigma.size()));
  const auto ct = coset(st, q, wl), cs = coset(sigma, q, w);
  if (ct.empty() || cs.empty())
    throw std::invalid_argument("multiplicity: tuple is not q-stable");
  const Integer dt = stabilizer(st, wl).size(), ds = stabilizer(sigma, w).size();
  return Rational(signed_pairing_sum(ct, st, cs, sigma), dt * ds);
}

Integer multiplicity(const TorusTuple& sigma, const InertialParam& tau)
{
  const Rational m = multiplicity_exact(sigma, tau);
  if (denominator(m) != 1 || m < 0)
    throw std::logic_error("multiplicity: not a nonnegative integer: " + m.str());
  return numerator(m);
}

std::vector<std::vector<Integer>> multiplicity_table(const std::vector<TorusTuple>& sigmas,
                                                     const std::vector<InertialParam>& taus)
{
  const long rows = static_cast<long>(sigmas.size()), cols = static_cast<long>(taus.size());
  std::vector<std::vector<Integer>> out(sigmas.size(), std::vector<Integer>(taus.size()));
  if (!sigmas.empty())
    symmetric_group(static_cast<unsigned>(sigmas.front().size()));
  std::string error;
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < rows * cols; ++k) {
    try {
      out[k / cols][k % cols] = multiplicity(sigmas[k / cols], taus[k % cols]);
    } catch (const std::exception& e) {
#pragma omp critical
      error = e.what();
    }
  }
  if (!error.empty())
    throw std::logic_error(error);
  return out;
}

namespace reference {

std::vector<std::vector<Integer>> multiplicity_table(const std::vector<TorusTuple>& sigmas,
                                                     const std::vector<InertialParam>& taus)
{
  std::vector<std::vector<Integer>> out;
  for (const auto& s : sigmas) {
    out.emplace_back();
    for (const auto& t : taus)
      out.back().push_back(multiplicity(s, t));
  }
  return out;
}

} // namespace reference

TorusTuple tuple_of(const SemisimpleParam& s)
{
  return canonical_tuple(s.labels());
}

std::vector<TorusTuple> gg_constituent_labels(unsigned n, std::uint64_t q)
{
  std::vector<TorusTuple> out;
  for (const auto& s : params::enumerate_ss_params(n, q))
    out.push_back(tuple_of(s));
  return out;
}

Rational gg_dl_pairing(const DLPair& a, std::uint64_t q)
{
  if (!is_compatible(a, q))
    throw std::invalid_argument("gg_dl_pairing: (w, s) is not compatible");
  const unsigned n = static_cast<unsigned>(a.w.size());
  const auto& w = symmetric_group(n);
  Rational total = 0;
  for (const auto& t : gg_constituent_labels(n, q)) {
    const Integer dt = stabilizer(t, w).size();
    total += Rational(signed_pairing_sum(coset(t, q, w), t, {a.w}, a.s), dt);
  }
  return total;
}

Rational cuspidal_support_pairing(const SemisimpleParam& s)
{
  const std::uint64_t q = s.q();
  TorusTuple t;
  Perm w0;
  for (const auto& [o, k] : s.parts()) {
    const auto elems = o.elements();
    const unsigned start = static_cast<unsigned>(t.size());
    const unsigned len = o.size() * k;
    for (unsigned c = 0; c < k; ++c)
      t.insert(t.end(), elems.begin(), elems.end());
    // w0(i + 1) = i inside the block
    for (unsigned i = 0; i < len; ++i)
      w0.push_back(start + (i + len - 1) % len);
  }
  if (!is_compatible({w0, t}, q))
    throw std::logic_error("cuspidal_support_pairing: w0 not in W(s, s^q)");
  const auto& w = symmetric_group(static_cast<unsigned>(t.size()));
  const auto cs = coset(t, q, w);
  const Integer ds = stabilizer(t, w).size();
  return Rational(signed_pairing_sum(cs, t, {w0}, t), ds);
}

} // namespace tamefiber::dlcomb
