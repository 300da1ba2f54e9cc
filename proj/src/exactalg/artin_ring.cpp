#include "tamefiber/exactalg/artin_ring.hpp"

#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

namespace tamefiber::exactalg {

namespace {

constexpr std::uint32_t kMaxRingSize = 1u << 16;
constexpr std::uint32_t kTableLimit = 1024;

// additive subgroup generated by gens, as a membership mask
std::vector<bool> additive_span(const ArtinLocalRing& A, const std::vector<ArtinLocalRing::value_type>& gens)
{
  std::vector<bool> in(A.size(), false);
  std::vector<ArtinLocalRing::value_type> frontier{0};
  in[0] = true;
  while (!frontier.empty()) {
    std::vector<ArtinLocalRing::value_type> next;
    for (auto x : frontier)
      for (auto g : gens) {
        const auto y = A.add(x, g);
        if (!in[y]) {
          in[y] = true;
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return in;
}

std::string pow_name(std::uint64_t ell, unsigned a)
{
  return a == 1 ? std::to_string(ell) : std::to_string(ell) + "^" + std::to_string(a);
}

template <class Make>
std::shared_ptr<const ArtinLocalRing> cached(const std::string& key, Make make)
{
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const ArtinLocalRing>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (!slot)
    slot = std::make_shared<const ArtinLocalRing>(make());
  return slot;
}

} // namespace

ArtinLocalRing::ArtinLocalRing(Spec spec) : spec_(std::move(spec))
{
  const std::size_t k = spec_.moduli.size();
  if (k == 0 || spec_.structure.size() != k || spec_.residue_of_basis.size() != k)
    throw std::invalid_argument("ArtinLocalRing: inconsistent specification");
  if (!is_prime_u64(spec_.ell))
    throw std::invalid_argument("ArtinLocalRing: characteristic base must be prime");
  const std::uint64_t top = ipow_u64(spec_.ell, spec_.a);
  std::uint64_t size = 1;
  radix_.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t m = spec_.moduli[i];
    if (m < 2 || top % m != 0)
      throw std::invalid_argument("ArtinLocalRing: coordinate modulus must be a power of l dividing l^a");
    radix_[i] = size;
    size *= m;
    if (size > kMaxRingSize)
      throw std::invalid_argument("ArtinLocalRing: ring too large (limit 2^16 elements)");
  }
  size_ = static_cast<std::uint32_t>(size);
  field_ = FiniteField::get(static_cast<std::uint32_t>(spec_.ell), spec_.residue_degree);

  std::vector<std::uint64_t> unit(k, 0);
  unit[0] = 1;
  one_ = from_coords(unit);

  neg_.resize(size_);
  for (value_type x = 0; x < size_; ++x) {
    auto c = coords(x);
    for (std::size_t i = 0; i < k; ++i)
      c[i] = (spec_.moduli[i] - c[i]) % spec_.moduli[i];
    neg_[x] = from_coords(c);
  }
  if (size_ <= kTableLimit) {
    add_table_.resize(static_cast<std::size_t>(size_) * size_);
    mul_table_.resize(static_cast<std::size_t>(size_) * size_);
    for (value_type x = 0; x < size_; ++x) {
      const auto cx = coords(x);
      for (value_type y = 0; y < size_; ++y) {
        const auto cy = coords(y);
        std::vector<std::uint64_t> s(k);
        for (std::size_t i = 0; i < k; ++i)
          s[i] = (cx[i] + cy[i]) % spec_.moduli[i];
        add_table_[static_cast<std::size_t>(x) * size_ + y] = from_coords(s);
        mul_table_[static_cast<std::size_t>(x) * size_ + y] = mul_coords(x, y);
      }
    }
  }

  const std::uint32_t ell32 = static_cast<std::uint32_t>(spec_.ell);
  residue_.resize(size_);
  for (value_type x = 0; x < size_; ++x) {
    const auto c = coords(x);
    std::vector<std::uint32_t> acc(spec_.residue_degree, 0);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& r = spec_.residue_of_basis[i];
      for (std::size_t t = 0; t < r.size() && t < acc.size(); ++t)
        acc[t] = static_cast<std::uint32_t>((acc[t] + (c[i] % ell32) * r[t]) % ell32);
    }
    residue_[x] = field_->from_coeffs(acc);
  }
  section_.assign(field_->size(), size_);
  for (value_type x = 0; x < size_; ++x)
    if (section_[residue_[x]] == size_)
      section_[residue_[x]] = x;
  for (auto s : section_)
    if (s == size_)
      throw std::invalid_argument("ArtinLocalRing: residue map is not surjective");

  for (value_type x = 0; x < size_; ++x)
    if (residue_[x] == 0)
      max_ideal_.push_back(x);

  verify();
}

void ArtinLocalRing::verify()
{
  const std::size_t k = spec_.moduli.size();
  auto check_triple = [&](value_type x, value_type y, value_type z) {
    if (mul(x, y) != mul(y, x))
      throw std::invalid_argument("ArtinLocalRing: multiplication not commutative");
    if (mul(mul(x, y), z) != mul(x, mul(y, z)))
      throw std::invalid_argument("ArtinLocalRing: multiplication not associative");
    if (mul(x, add(y, z)) != add(mul(x, y), mul(x, z)))
      throw std::invalid_argument("ArtinLocalRing: distributivity fails");
    if (residue_[mul(x, y)] != field_->mul(residue_[x], residue_[y]) ||
        residue_[add(x, y)] != field_->add(residue_[x], residue_[y]))
      throw std::invalid_argument("ArtinLocalRing: residue map is not a ring homomorphism");
  };
  if (size_ <= 64) {
    for (value_type x = 0; x < size_; ++x)
      for (value_type y = 0; y < size_; ++y)
        for (value_type z = 0; z < size_; ++z)
          check_triple(x, y, z);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<value_type> pick(0, size_ - 1);
    for (int s = 0; s < 20000; ++s)
      check_triple(pick(rng), pick(rng), pick(rng));
  }
  for (value_type x = 0; x < size_; ++x)
    if (mul(one_, x) != x)
      throw std::invalid_argument("ArtinLocalRing: basis vector 0 is not the identity");

  // units: Newton iteration from a lifted residue inverse
  inverse_.assign(size_, 0);
  for (value_type x = 0; x < size_; ++x) {
    if (residue_[x] == 0)
      continue;
    value_type y = section_[field_->inv(residue_[x])];
    bool ok = false;
    for (int it = 0; it < 64; ++it) {
      const value_type xy = mul(x, y);
      if (xy == one_) {
        ok = true;
        break;
      }
      y = mul(y, sub(add(one_, one_), xy));
    }
    if (!ok)
      throw std::invalid_argument("ArtinLocalRing: element outside the maximal ideal is not a unit");
    inverse_[x] = y;
  }

  // maximal ideal and its powers
  std::vector<value_type> gens;
  for (const auto& g : spec_.max_ideal_generators) {
    if (g.size() != k)
      throw std::invalid_argument("ArtinLocalRing: bad maximal ideal generator");
    gens.push_back(from_coords(g));
  }
  const auto span = additive_span(*this, gens);
  for (value_type x = 0; x < size_; ++x)
    if (span[x] != (residue_[x] == 0))
      throw std::invalid_argument("ArtinLocalRing: generators do not span the maximal ideal");

  ideal_powers_.clear();
  ideal_powers_.push_back(std::vector<bool>(size_, true));
  ideal_powers_.push_back(span);
  std::vector<value_type> cur = gens;
  while (true) {
    const auto& last = ideal_powers_.back();
    bool is_zero_ideal = true;
    for (value_type x = 1; x < size_; ++x)
      if (last[x]) {
        is_zero_ideal = false;
        break;
      }
    if (is_zero_ideal)
      break;
    if (ideal_powers_.size() > size_ + 1)
      throw std::invalid_argument("ArtinLocalRing: maximal ideal is not nilpotent");
    std::vector<value_type> next;
    std::vector<bool> seen(size_, false);
    for (auto a : cur)
      for (auto b : gens) {
        const auto c = mul(a, b);
        if (c != 0 && !seen[c]) {
          seen[c] = true;
          next.push_back(c);
        }
      }
    auto power = additive_span(*this, next);
    if (power == last)
      throw std::invalid_argument("ArtinLocalRing: maximal ideal is not nilpotent");
    ideal_powers_.push_back(std::move(power));
    cur = std::move(next);
  }
  const unsigned n = static_cast<unsigned>(ideal_powers_.size()) - 1;
  valuation_.assign(size_, 0);
  for (value_type x = 0; x < size_; ++x) {
    unsigned v = 0;
    while (v + 1 <= n && ideal_powers_[v + 1][x])
      ++v;
    valuation_[x] = v;
  }

  if (max_ideal_.size() == 1) {
    uniformizer_ = 0;
  } else if (size_ <= 4096) {
    for (auto pi : max_ideal_) {
      std::vector<bool> hit(size_, false);
      std::size_t count = 0;
      for (value_type a = 0; a < size_; ++a) {
        const auto c = mul(a, pi);
        if (!hit[c]) {
          hit[c] = true;
          ++count;
        }
      }
      if (count == max_ideal_.size()) {
        uniformizer_ = pi;
        break;
      }
    }
  }
}

std::shared_ptr<const ArtinLocalRing> ArtinLocalRing::integers_mod(std::uint64_t ell, unsigned a)
{
  return cached("Z/" + std::to_string(ell) + "^" + std::to_string(a), [&] {
    Spec s;
    s.ell = ell;
    s.a = a;
    s.name = "Z/" + pow_name(ell, a);
    s.moduli = {ipow_u64(ell, a)};
    s.structure = {{{1}}};
    s.residue_degree = 1;
    s.residue_of_basis = {{1}};
    s.max_ideal_generators = {{ell % ipow_u64(ell, a)}};
    return ArtinLocalRing(std::move(s));
  });
}

std::shared_ptr<const ArtinLocalRing> ArtinLocalRing::truncated_poly(std::uint64_t ell, unsigned e, unsigned b)
{
  if (e == 0 || b == 0)
    throw std::invalid_argument("truncated_poly: e and b must be positive");
  return cached("F" + std::to_string(ell) + "^" + std::to_string(e) + "[t]/" + std::to_string(b), [&] {
    const auto F = FiniteField::get(static_cast<std::uint32_t>(ell), e);
    const auto& f = F->defining_poly();
    // x^k as coefficient vectors over F_l for k < 2e - 1
    std::vector<std::vector<std::uint64_t>> xpow;
    std::vector<std::uint64_t> cur(e, 0);
    cur[0] = 1;
    for (unsigned kk = 0; kk + 1 < 2 * e; ++kk) {
      xpow.push_back(cur);
      // multiply by x and reduce with the monic defining polynomial
      std::vector<std::uint64_t> nxt(e, 0);
      const std::uint64_t top = cur[e - 1];
      for (unsigned i = e - 1; i > 0; --i)
        nxt[i] = cur[i - 1];
      nxt[0] = 0;
      for (unsigned i = 0; i < e; ++i)
        nxt[i] = (nxt[i] + (ell - f[i] % ell) * top) % ell;
      cur = nxt;
    }
    Spec s;
    s.ell = ell;
    s.a = 1;
    s.name = b == 1 ? F->name() : F->name() + "[t]/(t^" + std::to_string(b) + ")";
    const std::size_t k = static_cast<std::size_t>(e) * b;
    s.moduli.assign(k, ell);
    s.structure.assign(k, std::vector<std::vector<std::uint64_t>>(k, std::vector<std::uint64_t>(k, 0)));
    for (unsigned j1 = 0; j1 < b; ++j1)
      for (unsigned i1 = 0; i1 < e; ++i1)
        for (unsigned j2 = 0; j2 < b; ++j2)
          for (unsigned i2 = 0; i2 < e; ++i2) {
            if (j1 + j2 >= b)
              continue;
            auto& out = s.structure[i1 + e * j1][i2 + e * j2];
            const auto& xv = xpow[i1 + i2];
            for (unsigned i = 0; i < e; ++i)
              out[i + e * (j1 + j2)] = xv[i];
          }
    s.residue_degree = e;
    s.residue_of_basis.assign(k, std::vector<std::uint32_t>(e, 0));
    for (unsigned i = 0; i < e; ++i)
      s.residue_of_basis[i][i] = 1;
    for (std::size_t idx = e; idx < k; ++idx) {
      std::vector<std::uint64_t> g(k, 0);
      g[idx] = 1;
      s.max_ideal_generators.push_back(g);
    }
    return ArtinLocalRing(std::move(s));
  });
}

std::shared_ptr<const ArtinLocalRing> ArtinLocalRing::truncated_mixed(std::uint64_t ell, unsigned a, unsigned b)
{
  if (a < 2 || b < 2)
    throw std::invalid_argument("truncated_mixed: need a >= 2 and b >= 2");
  return cached("Z" + std::to_string(ell) + "^" + std::to_string(a) + "[t]/" + std::to_string(b), [&] {
    Spec s;
    s.ell = ell;
    s.a = a;
    s.name = "Z/" + pow_name(ell, a) + "[t]/(t^" + std::to_string(b) + ", " + pow_name(ell, a - 1) + "t)";
    s.moduli.assign(b, ipow_u64(ell, a - 1));
    s.moduli[0] = ipow_u64(ell, a);
    s.structure.assign(b, std::vector<std::vector<std::uint64_t>>(b, std::vector<std::uint64_t>(b, 0)));
    for (unsigned i = 0; i < b; ++i)
      for (unsigned j = 0; i + j < b; ++j)
        s.structure[i][j][i + j] = 1;
    s.residue_degree = 1;
    s.residue_of_basis.assign(b, std::vector<std::uint32_t>{0});
    s.residue_of_basis[0] = {1};
    std::vector<std::uint64_t> g(b, 0);
    g[0] = ell;
    s.max_ideal_generators.push_back(g);
    for (unsigned j = 1; j < b; ++j) {
      std::vector<std::uint64_t> h(b, 0);
      h[j] = 1;
      s.max_ideal_generators.push_back(h);
    }
    return ArtinLocalRing(std::move(s));
  });
}

ArtinLocalRing::value_type ArtinLocalRing::from_int(long long v) const
{
  const long long m = static_cast<long long>(spec_.moduli[0]);
  long long r = v % m;
  if (r < 0)
    r += m;
  std::vector<std::uint64_t> c(spec_.moduli.size(), 0);
  c[0] = static_cast<std::uint64_t>(r);
  return from_coords(c);
}

std::vector<std::uint64_t> ArtinLocalRing::coords(value_type x) const
{
  std::vector<std::uint64_t> c(spec_.moduli.size());
  std::uint64_t rest = x;
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = rest % spec_.moduli[i];
    rest /= spec_.moduli[i];
  }
  return c;
}

ArtinLocalRing::value_type ArtinLocalRing::from_coords(const std::vector<std::uint64_t>& c) const
{
  if (c.size() != spec_.moduli.size())
    throw std::invalid_argument("ArtinLocalRing::from_coords: wrong length");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    idx += (c[i] % spec_.moduli[i]) * radix_[i];
  return static_cast<value_type>(idx);
}

ArtinLocalRing::value_type ArtinLocalRing::add(value_type x, value_type y) const
{
  if (!add_table_.empty())
    return add_table_[static_cast<std::size_t>(x) * size_ + y];
  auto cx = coords(x);
  const auto cy = coords(y);
  for (std::size_t i = 0; i < cx.size(); ++i)
    cx[i] = (cx[i] + cy[i]) % spec_.moduli[i];
  return from_coords(cx);
}

ArtinLocalRing::value_type ArtinLocalRing::mul_coords(value_type x, value_type y) const
{
  const auto cx = coords(x), cy = coords(y);
  const std::size_t k = cx.size();
  const std::uint64_t top = ipow_u64(spec_.ell, spec_.a);
  std::vector<std::uint64_t> out(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (cx[i] == 0)
      continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (cy[j] == 0)
        continue;
      const std::uint64_t xy = (cx[i] * cy[j]) % top;
      const auto& c = spec_.structure[i][j];
      for (std::size_t t = 0; t < k; ++t)
        if (c[t] != 0)
          out[t] = (out[t] + xy * c[t]) % top;
    }
  }
  return from_coords(out);
}

ArtinLocalRing::value_type ArtinLocalRing::mul(value_type x, value_type y) const
{
  if (!mul_table_.empty())
    return mul_table_[static_cast<std::size_t>(x) * size_ + y];
  return mul_coords(x, y);
}

ArtinLocalRing::value_type ArtinLocalRing::inv(value_type x) const
{
  if (residue_[x] == 0)
    throw NonUnitError("ArtinLocalRing: element of the maximal ideal is not a unit");
  return inverse_[x];
}

ArtinLocalRing::value_type ArtinLocalRing::pow(value_type x, unsigned long long k) const
{
  value_type acc = one_;
  while (k > 0) {
    if (k & 1)
      acc = mul(acc, x);
    k >>= 1;
    if (k > 0)
      x = mul(x, x);
  }
  return acc;
}

std::optional<ArtinLocalRing::value_type> ArtinLocalRing::divide(value_type y, value_type x) const
{
  if (is_unit(x))
    return mul(y, inverse_[x]);
  for (value_type c = 0; c < size_; ++c)
    if (mul(c, x) == y)
      return c;
  return std::nullopt;
}

ArtinLocalRing::value_type ArtinLocalRing::uniformizer() const
{
  if (!uniformizer_)
    throw std::logic_error("ArtinLocalRing: not a chain ring");
  return *uniformizer_;
}

ArtinLocalRing::value_type ArtinLocalRing::teichmuller(FiniteField::value_type y) const
{
  if (y == 0)
    return 0;
  const std::uint64_t Q = field_->size();
  value_type z = section_[y];
  for (unsigned it = 0; it < 4 * size_ + 8; ++it) {
    const value_type w = pow(z, Q);
    if (w == z)
      return z;
    z = w;
  }
  throw std::logic_error("ArtinLocalRing: Teichmuller iteration did not stabilize");
}

bool RingHom::is_homomorphism() const
{
  const auto& A = *source;
  const auto& B = *target;
  if (table.size() != A.size() || table[A.one()] != B.one() || table[0] != 0)
    return false;
  for (ArtinLocalRing::value_type x = 0; x < A.size(); ++x)
    for (ArtinLocalRing::value_type y = 0; y < A.size(); ++y)
      if (table[A.add(x, y)] != B.add(table[x], table[y]) || table[A.mul(x, y)] != B.mul(table[x], table[y]))
        return false;
  return true;
}

RingHom RingHom::truncation(std::shared_ptr<const ArtinLocalRing> src, std::shared_ptr<const ArtinLocalRing> dst)
{
  const unsigned e = src->residue_field().degree();
  if (src->ell() != dst->ell() || dst->residue_field().degree() != e || src->rank() % e != 0 ||
      dst->rank() % e != 0 || dst->rank() > src->rank() || src->char_exponent() != 1)
    throw std::invalid_argument("RingHom::truncation: incompatible rings");
  RingHom h{src, dst, std::vector<ArtinLocalRing::value_type>(src->size())};
  for (ArtinLocalRing::value_type x = 0; x < src->size(); ++x) {
    auto c = src->coords(x);
    c.resize(dst->rank());
    h.table[x] = dst->from_coords(c);
  }
  return h;
}

RingHom RingHom::reduction(std::shared_ptr<const ArtinLocalRing> src, std::shared_ptr<const ArtinLocalRing> dst)
{
  if (src->ell() != dst->ell() || src->rank() != 1 || dst->rank() != 1 ||
      dst->char_exponent() > src->char_exponent())
    throw std::invalid_argument("RingHom::reduction: incompatible rings");
  RingHom h{src, dst, std::vector<ArtinLocalRing::value_type>(src->size())};
  for (ArtinLocalRing::value_type x = 0; x < src->size(); ++x)
    h.table[x] = dst->from_int(x);
  return h;
}

SquareZeroExtension::SquareZeroExtension(RingHom map) : map_(std::move(map))
{
  if (!map_.is_homomorphism())
    throw std::invalid_argument("SquareZeroExtension: map is not a ring homomorphism");
  const auto& B = *map_.source;
  const auto& A = *map_.target;
  section_.assign(A.size(), B.size());
  for (ArtinLocalRing::value_type x = 0; x < B.size(); ++x) {
    const auto y = map_.table[x];
    if (section_[y] == B.size())
      section_[y] = x;
    if (y == 0)
      kernel_.push_back(x);
  }
  for (auto s : section_)
    if (s == B.size())
      throw std::invalid_argument("SquareZeroExtension: map is not surjective");
  for (auto m : B.max_ideal())
    for (auto k : kernel_)
      if (B.mul(m, k) != 0)
        throw std::invalid_argument("SquareZeroExtension: kernel is not killed by the maximal ideal");
}

FPoly reduce_poly(const ArtinLocalRing& A, const APoly& p)
{
  FPoly out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    out[i] = A.residue(p[i]);
  poly_trim(A.residue_field(), out);
  return out;
}

APoly lift_poly(const ArtinLocalRing& A, const FPoly& p)
{
  APoly out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    out[i] = A.section(p[i]);
  if (!out.empty() && p.back() == 1)
    out.back() = A.one();
  poly_trim(A, out);
  return out;
}

namespace {

std::pair<APoly, APoly> lift_two(const ArtinLocalRing& A, const APoly& P, const FPoly& g, const FPoly& h)
{
  const auto& F = A.residue_field();
  auto [d, s_bar, t_bar] = poly_xgcd(F, g, h);
  if (d != FPoly{F.one()})
    throw std::domain_error("hensel_factor_lift: residue factors are not coprime");
  APoly G = lift_poly(A, g), H = lift_poly(A, h);
  const APoly s = lift_poly(A, s_bar), t = lift_poly(A, t_bar);
  for (unsigned it = 0; it <= A.nilpotency_index() + 2; ++it) {
    const APoly e = poly_sub(A, P, poly_mul(A, G, H));
    if (e.empty())
      return {G, H};
    G = poly_add(A, G, poly_mod(A, poly_mul(A, t, e), G));
    H = poly_add(A, H, poly_mod(A, poly_mul(A, s, e), H));
  }
  throw std::logic_error("hensel_factor_lift: lifting did not converge");
}

} // namespace

std::vector<APoly> hensel_factor_lift(const ArtinLocalRing& A, const APoly& P, const std::vector<FPoly>& residue_factors)
{
  const auto& F = A.residue_field();
  APoly p = P;
  poly_trim(A, p);
  if (p.empty() || p.back() != A.one())
    throw std::invalid_argument("hensel_factor_lift: polynomial must be monic");
  FPoly prod{F.one()};
  for (const auto& f : residue_factors) {
    FPoly g = f;
    poly_trim(F, g);
    if (g.empty() || g.back() != F.one())
      throw std::invalid_argument("hensel_factor_lift: residue factors must be monic");
    prod = poly_mul(F, prod, g);
  }
  if (prod != reduce_poly(A, p))
    throw std::domain_error("hensel_factor_lift: residue factors do not multiply to P mod m");
  for (std::size_t i = 0; i < residue_factors.size(); ++i)
    for (std::size_t j = i + 1; j < residue_factors.size(); ++j)
      if (poly_gcd(F, residue_factors[i], residue_factors[j]) != FPoly{F.one()})
        throw std::domain_error("hensel_factor_lift: residue factors are not pairwise coprime");

  std::vector<APoly> out;
  APoly rest = p;
  for (std::size_t i = 0; i + 1 < residue_factors.size(); ++i) {
    FPoly others{F.one()};
    for (std::size_t j = i + 1; j < residue_factors.size(); ++j)
      others = poly_mul(F, others, residue_factors[j]);
    auto [G, H] = lift_two(A, rest, residue_factors[i], others);
    out.push_back(G);
    rest = H;
  }
  out.push_back(rest);
  return out;
}

APoly inverse_mod_poly(const ArtinLocalRing& A, const APoly& u, const APoly& P)
{
  const auto& F = A.residue_field();
  auto [d, s_bar, t_bar] = poly_xgcd(F, reduce_poly(A, u), reduce_poly(A, P));
  (void)t_bar;
  if (d != FPoly{F.one()})
    throw NonUnitError("inverse_mod_poly: not invertible modulo P");
  APoly v = lift_poly(A, s_bar);
  const APoly one{A.one()};
  const APoly two{A.add(A.one(), A.one())};
  for (unsigned it = 0; it <= A.nilpotency_index() + 2; ++it) {
    const APoly uv = poly_mod(A, poly_mul(A, u, v), P);
    if (poly_equal(A, uv, one))
      return poly_mod(A, v, P);
    v = poly_mod(A, poly_mul(A, v, poly_sub(A, two, uv)), P);
  }
  throw std::logic_error("inverse_mod_poly: Newton iteration did not converge");
}

} // namespace tamefiber::exactalg
