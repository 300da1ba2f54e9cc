#include "tamefiber/params/params.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "tamefiber/exactalg/poly.hpp"

namespace tamefiber::params {

using exactalg::FiniteField;
using exactalg::gcd_u64;
using exactalg::lcm_u64;

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// inverse of a mod m, gcd(a, m) = 1
std::uint64_t invmod(std::uint64_t a, std::uint64_t m)
{
  if (m == 1)
    return 0;
  __int128 t = 0, nt = 1, r = m, nr = a % m;
  while (nr != 0) {
    const __int128 k = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - k * nt);
    std::tie(r, nr) = std::make_pair(nr, r - k * nr);
  }
  if (r != 1)
    throw std::invalid_argument("invmod: not invertible");
  if (t < 0)
    t += m;
  return static_cast<std::uint64_t>(t);
}

std::string partition_text(const Partition& p)
{
  std::string s;
  for (std::size_t i = 0; i < p.parts().size(); ++i) {
    if (i)
      s += ",";
    s += std::to_string(p.parts()[i]);
  }
  return s;
}

} // namespace

RootOfUnityLabel::RootOfUnityLabel(std::uint64_t j, std::uint64_t m)
{
  if (m == 0)
    throw std::invalid_argument("RootOfUnityLabel: zero denominator");
  j %= m;
  const std::uint64_t g = gcd_u64(j, m);
  j_ = j / g;
  m_ = m / g;
}

RootOfUnityLabel RootOfUnityLabel::plus(const RootOfUnityLabel& o) const
{
  const std::uint64_t m = lcm_u64(m_, o.m_);
  return RootOfUnityLabel((mulmod(j_, m / m_, m) + mulmod(o.j_, m / o.m_, m)) % m, m);
}

RootOfUnityLabel RootOfUnityLabel::times(std::uint64_t k) const
{
  return RootOfUnityLabel(mulmod(j_, k % m_, m_), m_);
}

RootOfUnityLabel RootOfUnityLabel::prime_to_part(std::uint64_t ell) const
{
  std::uint64_t lk = 1, mp = m_;
  while (mp % ell == 0) {
    mp /= ell;
    lk *= ell;
  }
  if (mp == 1)
    return RootOfUnityLabel(0, 1);
  // j/m = a/l^k + b/m' with j = a m' + b l^k
  return RootOfUnityLabel(mulmod(j_ % mp, invmod(lk % mp, mp), mp), mp);
}

std::string RootOfUnityLabel::str() const
{
  return std::to_string(m_) + "/" + std::to_string(j_);
}

FrobOrbit::FrobOrbit(const RootOfUnityLabel& x, std::uint64_t q) : m_(x.order()), q_(q)
{
  if (gcd_u64(q, m_) != 1)
    throw std::invalid_argument("FrobOrbit: order of the root of unity must be prime to q");
  std::uint64_t k = x.num();
  do {
    elements_.push_back(k);
    k = mulmod(k, q % m_, m_);
  } while (k != x.num());
  const auto it = std::min_element(elements_.begin(), elements_.end());
  std::rotate(elements_.begin(), it, elements_.end());
  rep_ = elements_.front();
}

std::vector<RootOfUnityLabel> FrobOrbit::elements() const
{
  std::vector<RootOfUnityLabel> out;
  for (auto k : elements_)
    out.emplace_back(k, m_);
  return out;
}

bool FrobOrbit::contains(const RootOfUnityLabel& x) const
{
  return x.order() == m_ && std::find(elements_.begin(), elements_.end(), x.num()) != elements_.end();
}

std::string FrobOrbit::str() const
{
  return std::to_string(m_) + "/" + std::to_string(rep_);
}

SemisimpleParam::SemisimpleParam(std::uint64_t q, std::vector<std::pair<FrobOrbit, unsigned>> parts) : q_(q)
{
  std::map<FrobOrbit, unsigned> merged;
  for (const auto& [o, k] : parts) {
    if (o.q() != q)
      throw std::invalid_argument("SemisimpleParam: orbit built for a different q");
    if (k == 0)
      throw std::invalid_argument("SemisimpleParam: zero multiplicity");
    merged[o] += k;
  }
  parts_.assign(merged.begin(), merged.end());
}

SemisimpleParam SemisimpleParam::from_labels(std::uint64_t q, const std::vector<RootOfUnityLabel>& labels)
{
  std::map<RootOfUnityLabel, unsigned> count;
  for (const auto& x : labels)
    ++count[x];
  std::map<FrobOrbit, unsigned> mult;
  for (const auto& [x, k] : count) {
    const FrobOrbit o(x, q);
    for (const auto& y : o.elements()) {
      auto it = count.find(y);
      if (it == count.end() || it->second != k)
        throw std::invalid_argument("SemisimpleParam::from_labels: multiset is not q-stable");
    }
    mult[o] = k;
  }
  return SemisimpleParam(q, {mult.begin(), mult.end()});
}

unsigned SemisimpleParam::rank() const
{
  unsigned n = 0;
  for (const auto& [o, k] : parts_)
    n += o.size() * k;
  return n;
}

std::vector<RootOfUnityLabel> SemisimpleParam::labels() const
{
  std::vector<RootOfUnityLabel> out;
  for (const auto& [o, k] : parts_)
    for (unsigned c = 0; c < k; ++c)
      for (const auto& x : o.elements())
        out.push_back(x);
  return out;
}

std::string SemisimpleParam::str() const
{
  return InertialParam::from_semisimple(*this).str();
}

InertialParam::InertialParam(std::uint64_t q, std::vector<std::pair<FrobOrbit, Partition>> parts) : q_(q)
{
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].first.q() != q)
      throw std::invalid_argument("InertialParam: orbit built for a different q");
    if (parts[i].second.size() == 0)
      throw std::invalid_argument("InertialParam: empty partition");
    if (i > 0 && parts[i].first == parts[i - 1].first)
      throw std::invalid_argument("InertialParam: repeated orbit");
  }
  parts_ = std::move(parts);
}

InertialParam InertialParam::from_semisimple(const SemisimpleParam& s)
{
  std::vector<std::pair<FrobOrbit, Partition>> parts;
  for (const auto& [o, k] : s.parts())
    parts.emplace_back(o, Partition(std::vector<unsigned>(k, 1)));
  return InertialParam(s.q(), std::move(parts));
}

unsigned InertialParam::rank() const
{
  unsigned n = 0;
  for (const auto& [o, p] : parts_)
    n += o.size() * p.size();
  return n;
}

SemisimpleParam InertialParam::semisimple_part() const
{
  std::vector<std::pair<FrobOrbit, unsigned>> parts;
  for (const auto& [o, p] : parts_)
    parts.emplace_back(o, p.size());
  return SemisimpleParam(q_, std::move(parts));
}

std::string InertialParam::str() const
{
  std::vector<std::string> recs;
  for (const auto& [o, p] : parts_)
    recs.push_back(o.str() + ":" + partition_text(p));
  std::sort(recs.begin(), recs.end());
  std::string s;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (i)
      s += ";";
    s += recs[i];
  }
  return s;
}

bool is_discrete(const InertialParam& tau)
{
  return tau.parts().size() == 1 && tau.parts().front().second.length() == 1;
}

LeviShape levi_of(const InertialParam& tau)
{
  LeviShape shape;
  for (const auto& [o, p] : tau.parts())
    for (unsigned m : p.parts())
      shape.push_back(o.size() * m);
  return shape;
}

std::vector<InertialParam> levi_components(const InertialParam& tau)
{
  std::vector<InertialParam> out;
  for (const auto& [o, p] : tau.parts())
    for (unsigned m : p.parts())
      out.emplace_back(tau.q(), std::vector<std::pair<FrobOrbit, Partition>>{{o, Partition({m})}});
  return out;
}

std::vector<SemisimpleParam> enumerate_ss_params(unsigned n, std::uint64_t q)
{
  if (n == 0 || q < 2)
    throw std::invalid_argument("enumerate_ss_params: need n >= 1, q >= 2");
  if (exactalg::prime_power(q).first == 0)
    throw std::invalid_argument("enumerate_ss_params: q must be a prime power");
  // orbits of exact size r live in Z/(q^r - 1); keep the least element of each
  std::vector<FrobOrbit> orbits;
  for (unsigned r = 1; r <= n; ++r) {
    const std::uint64_t mr = exactalg::ipow_u64(q, r) - 1;
    for (std::uint64_t j = 0; j < mr; ++j) {
      std::uint64_t k = j;
      unsigned size = 0;
      bool minimal = true;
      do {
        k = mulmod(k, q, mr);
        ++size;
        if (k < j)
          minimal = false;
      } while (k != j && minimal && size <= r);
      if (minimal && size == r)
        orbits.emplace_back(RootOfUnityLabel(j, mr), q);
    }
  }
  std::vector<SemisimpleParam> out;
  std::vector<std::pair<FrobOrbit, unsigned>> cur;
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t start, unsigned left) {
    if (left == 0) {
      out.emplace_back(q, cur);
      return;
    }
    for (std::size_t o = start; o < orbits.size(); ++o) {
      const unsigned r = orbits[o].size();
      for (unsigned k = 1; r * k <= left; ++k) {
        cur.emplace_back(orbits[o], k);
        rec(o + 1, left - r * k);
        cur.pop_back();
      }
    }
  };
  rec(0, n);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.str() < b.str(); });
  return out;
}

SemisimpleParam reduce_mod_ell(const SemisimpleParam& s, std::uint64_t ell)
{
  if (s.q() % ell == 0)
    throw std::invalid_argument("reduce_mod_ell: ell must not divide q");
  std::vector<std::pair<FrobOrbit, unsigned>> parts;
  for (const auto& [o, k] : s.parts()) {
    const FrobOrbit red(RootOfUnityLabel(o.rep(), o.order()).prime_to_part(ell), s.q());
    parts.emplace_back(red, k * (o.size() / red.size()));
  }
  return SemisimpleParam(s.q(), std::move(parts));
}

InertialParam reduce_mod_ell(const InertialParam& tau, std::uint64_t ell)
{
  if (tau.q() % ell == 0)
    throw std::invalid_argument("reduce_mod_ell: ell must not divide q");
  std::map<FrobOrbit, std::vector<unsigned>> merged;
  for (const auto& [o, p] : tau.parts()) {
    const FrobOrbit red(RootOfUnityLabel(o.rep(), o.order()).prime_to_part(ell), tau.q());
    auto& parts = merged[red];
    for (unsigned c = 0; c < o.size() / red.size(); ++c)
      parts.insert(parts.end(), p.parts().begin(), p.parts().end());
  }
  std::vector<std::pair<FrobOrbit, Partition>> parts;
  for (auto& [o, v] : merged)
    parts.emplace_back(o, Partition(v));
  return InertialParam(tau.q(), std::move(parts));
}

std::vector<SemisimpleParam> fiber(const SemisimpleParam& sbar, unsigned n, std::uint64_t q, std::uint64_t ell)
{
  if (sbar.q() != q || sbar.rank() != n)
    throw std::invalid_argument("fiber: residue parameter has the wrong q or rank");
  for (const auto& [o, k] : sbar.parts())
    if (o.order() % ell == 0)
      throw std::invalid_argument("fiber: residue parameter has a root of unity of order divisible by ell");
  std::vector<SemisimpleParam> out;
  for (auto& s : enumerate_ss_params(n, q))
    if (reduce_mod_ell(s, ell) == sbar)
      out.push_back(std::move(s));
  return out;
}

SemisimpleParam twist_by(const SemisimpleParam& s, const RootOfUnityLabel& t)
{
  if (t.times(s.q()) != t)
    throw std::invalid_argument("twist_by: twisting root of unity is not q-fixed");
  std::vector<RootOfUnityLabel> labels;
  for (const auto& x : s.labels())
    labels.push_back(x.plus(t));
  return SemisimpleParam::from_labels(s.q(), labels);
}

unsigned min_large_f(unsigned n, std::uint64_t q, std::uint64_t ell)
{
  if (q % ell == 0)
    throw std::invalid_argument("min_large_f: ell must not divide q");
  const unsigned target = exactalg::valuation(exactalg::factorial(n), ell);
  exactalg::Integer qf = 1;
  for (unsigned f = 1;; ++f) {
    qf *= q;
    if (exactalg::valuation(qf - 1, ell) > target)
      return f;
  }
}

RootOfUnityLabel label_of(const FiniteField& field, FiniteField::value_type z)
{
  return RootOfUnityLabel(field.log(z), field.size() - 1);
}

FiniteField::value_type root_of(const FiniteField& field, const RootOfUnityLabel& x)
{
  const std::uint64_t g = field.size() - 1;
  if (g % x.order() != 0)
    throw std::invalid_argument("root_of: " + field.name() + " has no root of unity of order " +
                                std::to_string(x.order()));
  return field.exp(static_cast<long long>(x.num() * (g / x.order())));
}

namespace {

using FPolyF = exactalg::PolyOf<FiniteField>;

// roots in the field with multiplicities
std::vector<std::pair<FiniteField::value_type, unsigned>> roots_with_multiplicity(const FiniteField& f, FPolyF p)
{
  std::vector<std::pair<FiniteField::value_type, unsigned>> out;
  for (FiniteField::value_type z = 0; z < f.size(); ++z) {
    unsigned mult = 0;
    for (;;) {
      if (exactalg::poly_degree(f, p) < 1)
        break;
      auto [quo, rem] = exactalg::poly_divmod(f, p, FPolyF{f.neg(z), f.one()});
      exactalg::poly_trim(f, rem);
      if (!rem.empty())
        break;
      p = std::move(quo);
      ++mult;
    }
    if (mult)
      out.emplace_back(z, mult);
  }
  return out;
}

FMat shifted(const FiniteField& f, const FMat& a, FiniteField::value_type lambda)
{
  FMat out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    out(i, i) = f.sub(out(i, i), lambda);
  return out;
}

Partition jordan_partition(const FiniteField& f, const FMat& a, FiniteField::value_type lambda)
{
  const std::size_t n = a.rows();
  const FMat b = shifted(f, a, lambda);
  std::vector<std::size_t> ranks{n};
  FMat power = exactalg::mat_identity(f, n);
  for (std::size_t k = 1; k <= n; ++k) {
    power = exactalg::mat_mul(f, power, b);
    ranks.push_back(exactalg::rank(f, power));
  }
  // number of blocks of size >= k is ranks[k-1] - ranks[k]
  std::vector<unsigned> parts;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t at_least_k = ranks[k - 1] - ranks[k];
    const std::size_t at_least_next = k < n ? ranks[k] - ranks[k + 1] : 0;
    parts.insert(parts.end(), at_least_k - at_least_next, static_cast<unsigned>(k));
  }
  return Partition(parts);
}

FMat map_matrix(const FMat& a, const std::vector<FiniteField::value_type>& table)
{
  FMat out(a.rows(), a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(i, j) = table[a(i, j)];
  return out;
}

// one q-orbit of eigenvalues, each with a single Jordan block, computed over a splitting field
bool block_is_discrete(const FiniteField& field, const FMat& block, std::uint64_t q)
{
  const std::size_t d = block.rows();
  for (unsigned k = 1;; ++k) {
    const std::uint64_t size = exactalg::ipow_u64(field.characteristic(), field.degree() * k);
    if (size > (1u << 16))
      throw std::runtime_error("is_f_distinguished: splitting field too large");
    const auto big = FiniteField::get(field.characteristic(), field.degree() * k);
    const auto table = FiniteField::embedding(field, *big);
    const FMat b = map_matrix(block, table);
    const auto roots = roots_with_multiplicity(*big, exactalg::char_poly(*big, b));
    std::size_t total = 0;
    for (const auto& [z, m] : roots)
      total += m;
    if (total != d)
      continue;
    std::set<FiniteField::value_type> eig, orbit;
    for (const auto& [z, m] : roots) {
      eig.insert(z);
      if (d - exactalg::rank(*big, shifted(*big, b, z)) != 1)
        return false;
    }
    FiniteField::value_type z = roots.front().first;
    do {
      orbit.insert(z);
      z = big->pow(z, static_cast<long long>(q));
    } while (!orbit.count(z));
    return orbit == eig;
  }
}

void check_relation(const FiniteField& f, const FMat& sigma, const FMat& phi, std::uint64_t q)
{
  if (!sigma.square() || !phi.square() || sigma.rows() != phi.rows())
    throw std::invalid_argument("is_f_distinguished: matrix shapes differ");
  if (!exactalg::is_invertible(f, phi) || !exactalg::is_invertible(f, sigma))
    throw std::invalid_argument("is_f_distinguished: phi and sigma must be invertible");
  if (exactalg::mat_mul(f, phi, sigma) != exactalg::mat_mul(f, exactalg::mat_pow(f, sigma, q), phi))
    throw std::invalid_argument("is_f_distinguished: phi sigma phi^-1 != sigma^q");
}

FMat krylov(const FiniteField& f, const FMat& a)
{
  const std::size_t n = a.rows();
  FMat k(n, n, 0);
  std::vector<FiniteField::value_type> v(n, f.one());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i)
      k(i, j) = v[i];
    v = exactalg::mat_vec(f, a, v);
  }
  return k;
}

} // namespace

InertialParam inertial_type(const FiniteField& field, const FMat& sigma, std::uint64_t q)
{
  const auto roots = roots_with_multiplicity(field, exactalg::char_poly(field, sigma));
  std::size_t total = 0;
  for (const auto& [z, m] : roots)
    total += m;
  if (total != sigma.rows())
    throw std::domain_error("inertial_type: characteristic polynomial does not split over " + field.name());
  std::map<RootOfUnityLabel, Partition> jordan;
  for (const auto& [z, m] : roots)
    jordan[label_of(field, z)] = jordan_partition(field, sigma, z);
  std::map<FrobOrbit, Partition> by_orbit;
  for (const auto& [x, p] : jordan) {
    const FrobOrbit o(x, q);
    for (const auto& y : o.elements()) {
      auto it = jordan.find(y);
      if (it == jordan.end() || it->second != p)
        throw std::domain_error("inertial_type: eigenvalue data is not q-stable");
    }
    by_orbit.emplace(o, p);
  }
  return InertialParam(q, {by_orbit.begin(), by_orbit.end()});
}

bool is_f_distinguished(const FiniteField& field, const FMat& sigma, const FMat& phi, std::uint64_t q, unsigned f,
                        const LeviShape& levi)
{
  check_relation(field, sigma, phi, q);
  std::vector<std::size_t> sizes(levi.begin(), levi.end());
  std::size_t total = 0;
  for (auto s : sizes)
    total += s;
  if (total != sigma.rows() || std::find(sizes.begin(), sizes.end(), 0u) != sizes.end())
    throw std::invalid_argument("is_f_distinguished: Levi shape does not match matrix size");
  if (!exactalg::is_block_diagonal(field, sigma, sizes) || !exactalg::is_block_diagonal(field, phi, sizes))
    return false;
  const FMat phif = exactalg::mat_pow(field, phi, f);
  std::vector<FPolyF> charpolys;
  std::size_t off = 0;
  for (auto s : sizes) {
    if (!block_is_discrete(field, exactalg::mat_block<FiniteField>(sigma, off, off, s, s), q))
      return false;
    charpolys.push_back(exactalg::char_poly(field, exactalg::mat_block<FiniteField>(phif, off, off, s, s)));
    off += s;
  }
  for (std::size_t i = 0; i < charpolys.size(); ++i)
    for (std::size_t j = i + 1; j < charpolys.size(); ++j)
      if (exactalg::poly_degree(field, exactalg::poly_gcd(field, charpolys[i], charpolys[j])) != 0)
        return false;
  return true;
}

DistinguishedPoint make_f_distinguished(const InertialParam& taubar, unsigned f, std::uint64_t ell, unsigned e,
                                        unsigned max_e)
{
  const std::uint64_t q = taubar.q();
  if (q % ell == 0 || !exactalg::is_prime_u64(ell))
    throw std::invalid_argument("make_f_distinguished: need a prime ell not dividing q");
  std::uint64_t need = 1;
  for (const auto& [o, p] : taubar.parts()) {
    if (o.order() % ell == 0)
      throw std::invalid_argument("make_f_distinguished: residue parameter has ell-power torsion");
    need = lcm_u64(need, o.order());
  }
  const LeviShape levi = levi_of(taubar);
  constexpr std::uint64_t kTwistBudget = 200000;
  for (unsigned deg = std::max(e, 1u); deg <= max_e; ++deg) {
    const std::uint64_t size = exactalg::ipow_u64(ell, deg);
    if (size > (1u << 16))
      break;
    if ((size - 1) % need != 0)
      continue;
    const auto field = FiniteField::get(static_cast<std::uint32_t>(ell), deg);
    const FiniteField& F = *field;

    std::vector<FMat> sig_blocks, phi_blocks;
    for (const auto& [o, p] : taubar.parts())
      for (unsigned m : p.parts()) {
        std::vector<FMat> jordans;
        for (const auto& x : o.elements())
          jordans.push_back(exactalg::jordan_block(F, root_of(F, x), m));
        FMat s = exactalg::mat_direct_sum(F, jordans);
        const FMat sq = exactalg::mat_pow(F, s, q);
        FMat ph = exactalg::mat_mul(F, krylov(F, sq), exactalg::invert(F, krylov(F, s)));
        if (exactalg::mat_mul(F, ph, s) != exactalg::mat_mul(F, sq, ph))
          throw std::logic_error("make_f_distinguished: Krylov intertwiner failed");
        sig_blocks.push_back(std::move(s));
        phi_blocks.push_back(std::move(ph));
      }
    const FMat sigma = exactalg::mat_direct_sum(F, sig_blocks);
    const std::size_t k = phi_blocks.size();
    std::vector<FiniteField::value_type> twist(k, 1);
    for (std::uint64_t tried = 0; tried < kTwistBudget; ++tried) {
      std::vector<FMat> scaled;
      for (std::size_t b = 0; b < k; ++b)
        scaled.push_back(exactalg::mat_scale(F, twist[b], phi_blocks[b]));
      FMat phi = exactalg::mat_direct_sum(F, scaled);
      if (is_f_distinguished(F, sigma, phi, q, f, levi))
        return DistinguishedPoint{field, sigma, std::move(phi), levi, twist};
      // next tuple, last coordinate fastest, entries 1..|F|-1
      std::size_t pos = k;
      while (pos > 0) {
        --pos;
        if (twist[pos] + 1 < F.size()) {
          ++twist[pos];
          break;
        }
        twist[pos] = 1;
        if (pos == 0) {
          pos = k + 1;
          break;
        }
      }
      if (pos == k + 1)
        break;
    }
  }
  throw std::runtime_error("make_f_distinguished: no central twist found up to degree " + std::to_string(max_e));
}

} // namespace tamefiber::params
