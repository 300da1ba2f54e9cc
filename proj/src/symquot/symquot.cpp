#include "tamefiber/symquot/symquot.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

#include "tamefiber/exactalg/cyclotomic.hpp"
#include "tamefiber/exactalg/matrix.hpp"
#include "tamefiber/exactalg/residue.hpp"
#include "tamefiber/exactalg/rings.hpp"

namespace tamefiber::symquot {

Partition::Partition(std::vector<unsigned> parts)
{
  parts.erase(std::remove(parts.begin(), parts.end(), 0u), parts.end());
  std::sort(parts.begin(), parts.end(), std::greater<>());
  parts_ = std::move(parts);
}

unsigned Partition::size() const
{
  return std::accumulate(parts_.begin(), parts_.end(), 0u);
}

unsigned Partition::multiplicity(unsigned j) const
{
  return static_cast<unsigned>(std::count(parts_.begin(), parts_.end(), j));
}

Partition Partition::conjugate() const
{
  std::vector<unsigned> out;
  if (parts_.empty())
    return Partition();
  for (unsigned k = 1; k <= parts_.front(); ++k) {
    unsigned c = 0;
    for (unsigned p : parts_)
      if (p >= k)
        ++c;
    out.push_back(c);
  }
  return Partition(out);
}

std::string Partition::str() const
{
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i)
      s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

bool dominates(const Partition& a, const Partition& b)
{
  unsigned sa = 0, sb = 0;
  const std::size_t len = std::max(a.length(), b.length());
  for (std::size_t i = 0; i < len; ++i) {
    sa += i < a.length() ? a.parts()[i] : 0;
    sb += i < b.length() ? b.parts()[i] : 0;
    if (sa < sb)
      return false;
  }
  return true;
}

std::vector<Partition> partitions(unsigned d, unsigned max_part, unsigned max_length)
{
  std::vector<Partition> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned rest, unsigned bound) {
    if (rest == 0) {
      out.emplace_back(cur);
      return;
    }
    if (cur.size() >= max_length)
      return;
    for (unsigned p = std::min(rest, bound); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(d, max_part);
  return out;
}

long weight(const EMonomial& a)
{
  long w = 0;
  for (std::size_t j = 0; j < a.size(); ++j)
    w += static_cast<long>(j + 1) * a[j];
  return w;
}

Partition partition_of(const EMonomial& a)
{
  std::vector<unsigned> parts;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < 0)
      throw std::invalid_argument("partition_of: negative exponent");
    parts.insert(parts.end(), static_cast<std::size_t>(a[j]), static_cast<unsigned>(j + 1));
  }
  return Partition(parts);
}

EMonomial monomial_of(const Partition& mu, unsigned n)
{
  EMonomial a(n, 0);
  for (unsigned p : mu.parts()) {
    if (p == 0 || p > n)
      throw std::invalid_argument("monomial_of: part exceeds n");
    ++a[p - 1];
  }
  return a;
}

SymPolynomialE::SymPolynomialE(unsigned q, unsigned n) : q_(q), n_(n)
{
  if (q < 2 || n < 1)
    throw std::invalid_argument("SymPolynomialE: need q >= 2 and n >= 1");
}

SymPolynomialE SymPolynomialE::constant(unsigned q, unsigned n, const Integer& c)
{
  SymPolynomialE x(q, n);
  x.add_term(EMonomial(n, 0), c);
  return x;
}

SymPolynomialE SymPolynomialE::monomial(unsigned q, unsigned n, const EMonomial& a, const Integer& c)
{
  SymPolynomialE x(q, n);
  x.add_term(a, c);
  return x;
}

SymPolynomialE SymPolynomialE::e(unsigned q, unsigned n, unsigned i)
{
  if (i < 1 || i > n)
    throw std::invalid_argument("SymPolynomialE::e: index out of range");
  EMonomial a(n, 0);
  a[i - 1] = 1;
  return monomial(q, n, a);
}

void SymPolynomialE::add_term(const EMonomial& a, const Integer& c)
{
  if (a.size() != n_)
    throw std::invalid_argument("SymPolynomialE: exponent vector has wrong length");
  for (unsigned j = 0; j + 1 < n_; ++j)
    if (a[j] < 0)
      throw std::invalid_argument("SymPolynomialE: only e_n may have a negative exponent");
  if (c == 0)
    return;
  auto it = terms_.find(a);
  if (it == terms_.end()) {
    terms_.emplace(a, c);
    return;
  }
  it->second += c;
  if (it->second == 0)
    terms_.erase(it);
}

void SymPolynomialE::check_compatible(const SymPolynomialE& o) const
{
  if (q_ != o.q_ || n_ != o.n_)
    throw std::invalid_argument("SymPolynomialE: mismatched (q, n)");
}

SymPolynomialE SymPolynomialE::operator+(const SymPolynomialE& o) const
{
  check_compatible(o);
  SymPolynomialE out = *this;
  for (const auto& [a, c] : o.terms_)
    out.add_term(a, c);
  return out;
}

SymPolynomialE SymPolynomialE::operator-(const SymPolynomialE& o) const
{
  return *this + o.scaled(-1);
}

SymPolynomialE SymPolynomialE::operator*(const SymPolynomialE& o) const
{
  check_compatible(o);
  SymPolynomialE out(q_, n_);
  for (const auto& [a, c] : terms_)
    for (const auto& [b, d] : o.terms_) {
      EMonomial s(n_);
      for (unsigned j = 0; j < n_; ++j)
        s[j] = a[j] + b[j];
      out.add_term(s, c * d);
    }
  return out;
}

SymPolynomialE SymPolynomialE::scaled(const Integer& c) const
{
  SymPolynomialE out(q_, n_);
  if (c == 0)
    return out;
  for (const auto& [a, d] : terms_)
    out.terms_.emplace(a, c * d);
  return out;
}

std::string SymPolynomialE::str() const
{
  if (terms_.empty())
    return "0";
  std::string s;
  bool first = true;
  for (const auto& [a, c] : terms_) {
    Integer mag = c < 0 ? Integer(-c) : c;
    if (first)
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    first = false;
    std::string mono;
    for (unsigned j = 0; j < n_; ++j) {
      if (a[j] == 0)
        continue;
      if (!mono.empty())
        mono += "*";
      mono += "e" + std::to_string(j + 1);
      if (a[j] != 1)
        mono += "^" + std::to_string(a[j]);
    }
    if (mono.empty())
      s += mag.str();
    else if (mag == 1)
      s += mono;
    else
      s += mag.str() + "*" + mono;
  }
  return s;
}

namespace {

// number of 0-1 matrices with the given row sums and column capacities
class ZeroOneCounter {
public:
  ZeroOneCounter(std::vector<unsigned> rows, unsigned ncols) : rows_(std::move(rows)), ncols_(ncols) {}

  Integer count(const std::vector<unsigned>& colsums) { return rec(0, colsums); }

private:
  Integer rec(std::size_t i, const std::vector<unsigned>& caps)
  {
    if (i == rows_.size())
      return std::all_of(caps.begin(), caps.end(), [](unsigned c) { return c == 0; }) ? 1 : 0;
    auto key = std::make_pair(i, caps);
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    Integer total = 0;
    for (unsigned mask = 0; mask < (1u << ncols_); ++mask) {
      if (static_cast<unsigned>(__builtin_popcount(mask)) != rows_[i])
        continue;
      std::vector<unsigned> next = caps;
      bool ok = true;
      for (unsigned c = 0; c < ncols_ && ok; ++c)
        if (mask >> c & 1u) {
          if (next[c] == 0)
            ok = false;
          else
            --next[c];
        }
      if (ok)
        total += rec(i + 1, next);
    }
    memo_.emplace(std::move(key), total);
    return total;
  }

  std::vector<unsigned> rows_;
  unsigned ncols_;
  std::map<std::pair<std::size_t, std::vector<unsigned>>, Integer> memo_;
};

struct InverseTransition {
  std::vector<Partition> rows; // lambda
  std::vector<Partition> cols; // mu
  std::vector<std::vector<Integer>> entries; // m_lambda = sum_mu entries * e_mu
};

const InverseTransition& inverse_transition(unsigned d, unsigned n)
{
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, InverseTransition> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({d, n});
  if (it != cache.end())
    return it->second;

  const TransitionMatrix t = e_to_m_transition(d, n);
  const std::size_t k = t.rows.size();
  if (t.cols.size() != k)
    throw std::logic_error("inverse_transition: transition matrix not square");
  exactalg::RationalField qf;
  exactalg::MatOf<exactalg::RationalField> m(k, k, Rational(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      m(i, j) = Rational(t.entries[i][j]);
  const auto inv = exactalg::invert(qf, m);
  InverseTransition out;
  out.rows = t.cols;
  out.cols = t.rows;
  out.entries.assign(k, std::vector<Integer>(k));
  // m = T^{-1} e, so (m_lambda) row lambda of T^{-1}
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const Rational& v = inv(i, j);
      if (denominator(v) != 1)
        throw std::logic_error("inverse_transition: non-integral inverse");
      out.entries[i][j] = numerator(v);
    }
  return cache.emplace(std::make_pair(d, n), std::move(out)).first->second;
}

} // namespace

TransitionMatrix e_to_m_transition(unsigned d, unsigned n)
{
  if (n == 0 || n > 16)
    throw std::invalid_argument("e_to_m_transition: n out of range");
  TransitionMatrix t;
  t.rows = partitions(d, n, d);
  t.cols = partitions(d, d, n);
  t.entries.assign(t.rows.size(), std::vector<Integer>(t.cols.size()));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    ZeroOneCounter counter(t.rows[i].parts(), n);
    for (std::size_t j = 0; j < t.cols.size(); ++j) {
      std::vector<unsigned> caps = t.cols[j].parts();
      caps.resize(n, 0);
      t.entries[i][j] = counter.count(caps);
    }
  }
  return t;
}

SymPolynomialE m_in_e_basis(const Partition& lambda, unsigned q, unsigned n)
{
  if (lambda.length() > n)
    throw std::invalid_argument("m_in_e_basis: too many parts");
  SymPolynomialE out(q, n);
  if (lambda.size() == 0)
    return SymPolynomialE::constant(q, n, 1);
  const auto& inv = inverse_transition(lambda.size(), n);
  const auto row = std::find(inv.rows.begin(), inv.rows.end(), lambda);
  const std::size_t i = static_cast<std::size_t>(row - inv.rows.begin());
  for (std::size_t j = 0; j < inv.cols.size(); ++j)
    out.add_term(monomial_of(inv.cols[j], n), inv.entries[i][j]);
  return out;
}

SymPolynomialE rewrite_rule(unsigned i, unsigned q, unsigned n)
{
  if (i < 1 || i > n)
    throw std::invalid_argument("rewrite_rule: index out of range");
  if (i == n)
    return SymPolynomialE::e(q, n, n);
  const SymPolynomialE m = m_in_e_basis(Partition(std::vector<unsigned>(i, q)), q, n);
  EMonomial lead(n, 0);
  lead[i - 1] = static_cast<long>(q);
  auto it = m.terms().find(lead);
  if (it == m.terms().end() || it->second != 1)
    throw std::logic_error("rewrite_rule: leading coefficient is not 1");
  SymPolynomialE rest = m - SymPolynomialE::monomial(q, n, lead);
  return SymPolynomialE::e(q, n, i) - rest;
}

SymPolynomialE ideal_generator(unsigned i, unsigned q, unsigned n)
{
  return m_in_e_basis(Partition(std::vector<unsigned>(i, q)), q, n) - SymPolynomialE::e(q, n, i);
}

bool is_canonical(const EMonomial& a, unsigned q)
{
  const std::size_t n = a.size();
  for (std::size_t j = 0; j + 1 < n; ++j)
    if (a[j] < 0 || a[j] >= static_cast<long>(q))
      return false;
  return a[n - 1] >= 0 && a[n - 1] <= static_cast<long>(q) - 2;
}

namespace {

// e_n^{q-1} = 1 in the quotient
void reduce_top(EMonomial& a, unsigned q)
{
  const long period = static_cast<long>(q) - 1;
  long& an = a.back();
  an %= period;
  if (an < 0)
    an += period;
}

// rewriting either lowers the degree or, at equal degree, replaces the
// underlying partition by a strictly dominating (hence lex-larger) one
struct WorkKey {
  long degree;
  Partition part;
  bool operator<(const WorkKey& o) const
  {
    if (degree != o.degree)
      return degree > o.degree;
    return part < o.part;
  }
};

} // namespace

SymPolynomialE normal_form(const SymPolynomialE& x)
{
  const unsigned q = x.q(), n = x.n();
  std::vector<SymPolynomialE> rules;
  for (unsigned i = 1; i < n; ++i)
    rules.push_back(rewrite_rule(i, q, n));

  std::map<WorkKey, Integer> work;
  auto push = [&](EMonomial a, const Integer& c) {
    reduce_top(a, q);
    const WorkKey key{weight(a), partition_of(a)};
    auto it = work.find(key);
    if (it == work.end()) {
      work.emplace(key, c);
      return;
    }
    it->second += c;
    if (it->second == 0)
      work.erase(it);
  };
  for (const auto& [a, c] : x.terms())
    push(a, c);

  SymPolynomialE out(q, n);
  while (!work.empty()) {
    auto node = work.extract(work.begin());
    const EMonomial a = monomial_of(node.key().part, n);
    const Integer& c = node.mapped();
    if (is_canonical(a, q)) {
      out.add_term(a, c);
      continue;
    }
    std::size_t j = 0;
    while (a[j] < static_cast<long>(q))
      ++j;
    EMonomial base = a;
    base[j] -= static_cast<long>(q);
    for (const auto& [b, d] : rules[j].terms()) {
      EMonomial s(n);
      for (unsigned k = 0; k < n; ++k)
        s[k] = base[k] + b[k];
      push(s, c * d);
    }
  }
  return out;
}

std::vector<EMonomial> basis(unsigned q, unsigned n)
{
  std::vector<EMonomial> out;
  EMonomial a(n, 0);
  std::function<void(unsigned)> rec = [&](unsigned j) {
    if (j == n) {
      out.push_back(a);
      return;
    }
    const long top = j + 1 == n ? static_cast<long>(q) - 2 : static_cast<long>(q) - 1;
    for (long v = 0; v <= top; ++v) {
      a[j] = v;
      rec(j + 1);
    }
    a[j] = 0;
  };
  rec(0);
  return out;
}

std::vector<std::string> serialize(const SymPolynomialE& x)
{
  std::vector<std::string> out;
  for (const auto& [a, c] : x.terms()) {
    std::string rec;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j)
        rec += ",";
      rec += std::to_string(a[j]);
    }
    out.push_back(rec + ":" + c.str());
  }
  return out;
}

SymPolynomialE parse(unsigned q, unsigned n, const std::vector<std::string>& records)
{
  SymPolynomialE out(q, n);
  for (const auto& rec : records) {
    const auto colon = rec.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("parse: missing ':' in record " + rec);
    EMonomial a;
    std::stringstream ss(rec.substr(0, colon));
    std::string tok;
    while (std::getline(ss, tok, ','))
      a.push_back(std::stol(tok));
    out.add_term(a, Integer(rec.substr(colon + 1)));
  }
  return out;
}

namespace {

std::uint64_t conductor_of(const std::vector<std::vector<RootFraction>>& points)
{
  std::uint64_t m = 1;
  for (const auto& pt : points)
    for (const auto& [j, d] : pt) {
      if (d == 0)
        throw std::invalid_argument("pairing: zero denominator");
      m = exactalg::lcm_u64(m, d);
    }
  return m;
}

std::uint64_t primitive_root_mod(std::uint64_t p)
{
  const auto primes = exactalg::prime_divisors(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& r : primes)
      if (exactalg::powmod_u64(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    if (ok)
      return g;
  }
  throw std::logic_error("primitive_root_mod: none found");
}

template <class R, class Zeta>
exactalg::MatOf<R> pairing_matrix(const R& r, unsigned q, unsigned n, const std::vector<std::vector<RootFraction>>& points,
                                  std::uint64_t m, Zeta zeta)
{
  const auto b = basis(q, n);
  exactalg::MatOf<R> mat(b.size(), points.size(), r.zero());
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    if (points[pi].size() != n)
      throw std::invalid_argument("pairing: point has the wrong number of entries");
    std::vector<typename R::value_type> pt;
    for (const auto& [j, d] : points[pi])
      pt.push_back(zeta((j % d) * (m / d)));
    for (std::size_t bi = 0; bi < b.size(); ++bi)
      mat(bi, pi) = evaluate(r, SymPolynomialE::monomial(q, n, b[bi]), pt);
  }
  return mat;
}

} // namespace

PairingCertificate certify_pairing(unsigned q, unsigned n, const std::vector<std::vector<RootFraction>>& points)
{
  PairingCertificate cert;
  cert.basis_size = basis(q, n).size();
  cert.point_count = points.size();
  cert.conductor = conductor_of(points);
  const std::uint64_t m = cert.conductor;
  std::uint64_t p = ((1u << 20) / m + 1) * m + 1;
  while (!exactalg::is_prime_u64(p))
    p += m;
  cert.prime = p;
  const std::uint64_t g = primitive_root_mod(p);
  const std::uint64_t z = exactalg::powmod_u64(g, (p - 1) / m, p);
  exactalg::ResidueRing fp{Integer(p)};
  const auto mat = pairing_matrix(fp, q, n, points, m,
                                  [&](std::uint64_t k) { return Integer(exactalg::powmod_u64(z, k, p)); });
  cert.rank_mod_prime = exactalg::rank(fp, mat);
  cert.nonsingular = cert.basis_size == cert.point_count && cert.rank_mod_prime == cert.basis_size;
  return cert;
}

std::size_t exact_pairing_rank(unsigned q, unsigned n, const std::vector<std::vector<RootFraction>>& points)
{
  const std::uint64_t m = conductor_of(points);
  exactalg::CyclotomicField k(m);
  const auto mat = pairing_matrix(k, q, n, points, m, [&](std::uint64_t e) {
    return exactalg::CyclotomicNumber::zeta(m, static_cast<long long>(e));
  });
  return exactalg::rank(k, mat);
}

} // namespace tamefiber::symquot
