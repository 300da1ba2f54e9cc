#include "tamefiber/exactalg/finite_field.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace tamefiber::exactalg {

namespace {

using Coeffs = std::vector<std::uint32_t>;

void trim(Coeffs& a)
{
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

// remainder of a modulo monic b over F_p
Coeffs mod_p(Coeffs a, const Coeffs& b, std::uint32_t p)
{
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t c = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j)
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + (p - c) * static_cast<std::uint64_t>(b[j])) % p);
    trim(a);
  }
  return a;
}

Coeffs index_to_coeffs(std::uint32_t idx, std::uint32_t p, unsigned len)
{
  Coeffs c(len, 0);
  for (unsigned i = 0; i < len; ++i) {
    c[i] = idx % p;
    idx /= p;
  }
  return c;
}

} // namespace

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& f, std::uint32_t p)
{
  Coeffs g = f;
  trim(g);
  if (g.size() < 2)
    return false;
  const unsigned deg = static_cast<unsigned>(g.size() - 1);
  if (deg == 1)
    return true;
  if (g.back() != 1)
    throw std::invalid_argument("is_irreducible_mod_p: polynomial must be monic");
  for (unsigned d = 1; 2 * d <= deg; ++d) {
    const std::uint64_t count = ipow_u64(p, d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Coeffs h = index_to_coeffs(static_cast<std::uint32_t>(idx), p, d);
      h.push_back(1);
      if (mod_p(g, h, p).empty())
        return false;
    }
  }
  return true;
}

FiniteField::FiniteField(std::uint32_t p, unsigned e) : p_(p), e_(e)
{
  if (!is_prime_u64(p) || e == 0)
    throw std::invalid_argument("FiniteField: need prime p and e >= 1");
  const std::uint64_t q = ipow_u64(p, e);
  if (q > (1u << 16))
    throw std::invalid_argument("FiniteField: field too large (limit 2^16)");
  q_ = static_cast<std::uint32_t>(q);

  const std::uint32_t lower = q_;
  for (std::uint32_t idx = 0; idx < lower; ++idx) {
    Coeffs f = index_to_coeffs(idx, p, e);
    f.push_back(1);
    if (is_irreducible_mod_p(f, p)) {
      modulus_ = f;
      break;
    }
  }
  if (modulus_.empty())
    throw std::logic_error("FiniteField: no irreducible polynomial found");

  neg_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    Coeffs c = index_to_coeffs(a, p, e);
    for (auto& x : c)
      x = (p - x) % p;
    neg_[a] = from_coeffs(c);
  }
  if (q_ <= 1024) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b) {
        Coeffs ca = index_to_coeffs(a, p, e), cb = index_to_coeffs(b, p, e);
        for (unsigned i = 0; i < e; ++i)
          ca[i] = (ca[i] + cb[i]) % p;
        add_table_[static_cast<std::size_t>(a) * q_ + b] = static_cast<std::uint16_t>(from_coeffs(ca));
      }
  }

  const std::uint32_t group = q_ - 1;
  for (std::uint32_t g = 1; g < q_; ++g) {
    std::vector<value_type> powers;
    powers.reserve(group);
    value_type x = 1;
    do {
      powers.push_back(x);
      x = slow_mul(x, g);
    } while (x != 1 && powers.size() <= group);
    if (powers.size() == group) {
      exp_ = std::move(powers);
      break;
    }
  }
  log_.assign(q_, 0);
  for (std::uint32_t k = 0; k < group; ++k)
    log_[exp_[k]] = k;
}

std::shared_ptr<const FiniteField> FiniteField::get(std::uint32_t p, unsigned e)
{
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, unsigned>, std::shared_ptr<const FiniteField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, e}];
  if (!slot)
    slot = std::make_shared<const FiniteField>(p, e);
  return slot;
}

FiniteField::value_type FiniteField::from_int(long long v) const
{
  long long r = v % static_cast<long long>(p_);
  if (r < 0)
    r += p_;
  return static_cast<value_type>(r);
}

FiniteField::value_type FiniteField::add(value_type a, value_type b) const
{
  if (!add_table_.empty())
    return add_table_[static_cast<std::size_t>(a) * q_ + b];
  value_type out = 0, scale = 1;
  for (unsigned i = 0; i < e_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

FiniteField::value_type FiniteField::slow_mul(value_type a, value_type b) const
{
  Coeffs ca = index_to_coeffs(a, p_, e_), cb = index_to_coeffs(b, p_, e_);
  Coeffs prod(2 * e_, 0);
  for (unsigned i = 0; i < e_; ++i)
    for (unsigned j = 0; j < e_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
  return from_coeffs(mod_p(prod, modulus_, p_));
}

FiniteField::value_type FiniteField::mul(value_type a, value_type b) const
{
  if (a == 0 || b == 0)
    return 0;
  std::uint32_t k = log_[a] + log_[b];
  if (k >= q_ - 1)
    k -= q_ - 1;
  return exp_[k];
}

FiniteField::value_type FiniteField::inv(value_type a) const
{
  if (a == 0)
    throw NonUnitError("FiniteField: inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FiniteField::value_type FiniteField::pow(value_type a, long long k) const
{
  if (a == 0) {
    if (k < 0)
      throw NonUnitError("FiniteField: negative power of zero");
    return k == 0 ? 1 : 0;
  }
  return exp(static_cast<long long>(log_[a]) * k);
}

std::uint32_t FiniteField::log(value_type a) const
{
  if (a == 0)
    throw std::domain_error("FiniteField: log of zero");
  return log_[a];
}

FiniteField::value_type FiniteField::exp(long long k) const
{
  const long long g = q_ - 1;
  long long r = k % g;
  if (r < 0)
    r += g;
  return exp_[static_cast<std::size_t>(r)];
}

std::uint32_t FiniteField::order(value_type a) const
{
  const std::uint32_t g = q_ - 1;
  return static_cast<std::uint32_t>(g / gcd_u64(g, log(a)));
}

std::vector<std::uint32_t> FiniteField::coeffs(value_type a) const { return index_to_coeffs(a, p_, e_); }

FiniteField::value_type FiniteField::from_coeffs(const std::vector<std::uint32_t>& c) const
{
  value_type out = 0, scale = 1;
  for (unsigned i = 0; i < e_; ++i) {
    if (i < c.size())
      out += (c[i] % p_) * scale;
    scale *= p_;
  }
  return out;
}

std::uint32_t FiniteField::trace(value_type a) const
{
  value_type acc = 0, x = a;
  for (unsigned i = 0; i < e_; ++i) {
    acc = add(acc, x);
    x = frobenius(x);
  }
  if (acc >= p_)
    throw std::logic_error("FiniteField: trace not in prime field");
  return acc;
}

std::string FiniteField::name() const
{
  return "F_" + std::to_string(q_);
}

std::vector<FiniteField::value_type> FiniteField::embedding(const FiniteField& small, const FiniteField& big)
{
  if (small.p_ != big.p_ || big.e_ % small.e_ != 0)
    throw std::invalid_argument("FiniteField::embedding: not a subfield");
  // image of the generator x of the small field: least root of its defining polynomial
  value_type root = 0;
  bool found = false;
  for (value_type z = 0; z < big.q_ && !found; ++z) {
    value_type acc = 0;
    for (std::size_t k = small.modulus_.size(); k-- > 0;)
      acc = big.add(big.mul(acc, z), small.modulus_[k]);
    if (acc == 0) {
      root = z;
      found = true;
    }
  }
  if (!found)
    throw std::logic_error("FiniteField::embedding: no root found");
  std::vector<value_type> table(small.q_);
  for (value_type a = 0; a < small.q_; ++a) {
    const auto c = small.coeffs(a);
    value_type acc = 0;
    for (std::size_t k = c.size(); k-- > 0;)
      acc = big.add(big.mul(acc, root), c[k]);
    table[a] = acc;
  }
  return table;
}

} // namespace tamefiber::exactalg
