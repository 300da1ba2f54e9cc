#include "tamefiber/fingroup/group.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "tamefiber/exactalg/integer.hpp"

namespace tamefiber::fingroup {

namespace {

using FV = FiniteField::value_type;

void decode(std::uint32_t code, unsigned nn, std::uint32_t q, FV* out)
{
  for (unsigned k = 0; k < nn; ++k) {
    out[k] = code % q;
    code /= q;
  }
}

std::uint32_t encode(const FV* m, unsigned nn, std::uint32_t q)
{
  std::uint32_t code = 0;
  for (unsigned k = nn; k-- > 0;)
    code = code * q + m[k];
  return code;
}

bool nonsingular(const FiniteField& f, FV* a, unsigned n)
{
  for (unsigned c = 0; c < n; ++c) {
    unsigned piv = n;
    for (unsigned r = c; r < n; ++r)
      if (a[r * n + c] != 0) {
        piv = r;
        break;
      }
    if (piv == n)
      return false;
    if (piv != c)
      for (unsigned j = 0; j < n; ++j)
        std::swap(a[piv * n + j], a[c * n + j]);
    const FV s = f.inv(a[c * n + c]);
    for (unsigned r = c + 1; r < n; ++r) {
      if (a[r * n + c] == 0)
        continue;
      const FV x = f.mul(a[r * n + c], s);
      for (unsigned j = c; j < n; ++j)
        a[r * n + j] = f.sub(a[r * n + j], f.mul(x, a[c * n + j]));
    }
  }
  return true;
}

std::shared_ptr<const FiniteField> field_for(std::uint64_t q)
{
  const auto [p, e] = exactalg::prime_power(q);
  if (p == 0)
    throw std::invalid_argument("FqGroup: q must be a prime power");
  return FiniteField::get(static_cast<std::uint32_t>(p), e);
}

void check_budget(unsigned n, std::uint64_t q)
{
  if (n == 0)
    throw std::invalid_argument("FqGroup: n must be positive");
  std::uint64_t codes = 1;
  for (unsigned k = 0; k < n * n; ++k) {
    codes *= q;
    if (codes > kMaxMatrixCodes)
      throw std::invalid_argument("FqGroup: q^(n^2) exceeds the enumeration budget");
  }
  if (gl_order(n, q) > kMaxGroupOrder)
    throw std::invalid_argument("FqGroup: group order exceeds the budget");
}

} // namespace

std::uint64_t gl_order(unsigned n, std::uint64_t q)
{
  std::uint64_t qn = exactalg::ipow_u64(q, n), out = 1, qi = 1;
  for (unsigned i = 0; i < n; ++i) {
    out *= qn - qi;
    qi *= q;
  }
  return out;
}

namespace reference {

std::vector<std::uint32_t> enumerate_codes(unsigned n, std::uint64_t q)
{
  check_budget(n, q);
  const auto f = field_for(q);
  const unsigned nn = n * n;
  const auto total = static_cast<std::uint32_t>(exactalg::ipow_u64(q, nn));
  std::vector<std::uint32_t> out;
  std::vector<FV> buf(nn);
  for (std::uint32_t code = 0; code < total; ++code) {
    decode(code, nn, static_cast<std::uint32_t>(q), buf.data());
    if (nonsingular(*f, buf.data(), n))
      out.push_back(code);
  }
  return out;
}

} // namespace reference

std::vector<std::uint32_t> enumerate_codes(unsigned n, std::uint64_t q)
{
  check_budget(n, q);
  const auto f = field_for(q);
  const unsigned nn = n * n;
  const auto total = static_cast<std::int64_t>(exactalg::ipow_u64(q, nn));
  std::vector<std::uint8_t> keep(static_cast<std::size_t>(total), 0);
#pragma omp parallel
  {
    std::vector<FV> buf(nn);
#pragma omp for schedule(static)
    for (std::int64_t code = 0; code < total; ++code) {
      decode(static_cast<std::uint32_t>(code), nn, static_cast<std::uint32_t>(q), buf.data());
      keep[static_cast<std::size_t>(code)] = nonsingular(*f, buf.data(), n) ? 1 : 0;
    }
  }
  std::vector<std::uint32_t> out;
  for (std::int64_t code = 0; code < total; ++code)
    if (keep[static_cast<std::size_t>(code)])
      out.push_back(static_cast<std::uint32_t>(code));
  return out;
}

FqGroup::FqGroup(unsigned n, std::uint64_t q) : n_(n), q_(q), field_(field_for(q))
{
  codes_ = enumerate_codes(n, q);
  if (codes_.size() != gl_order(n, q))
    throw std::logic_error("FqGroup: element count differs from |GL_n(F_q)|");
  const unsigned nn = n * n;
  index_of_code_.assign(exactalg::ipow_u64(q, nn), -1);
  entries_.resize(codes_.size() * nn);
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    index_of_code_[codes_[i]] = static_cast<std::int32_t>(i);
    decode(codes_[i], nn, static_cast<std::uint32_t>(q), &entries_[i * nn]);
  }
  std::vector<FV> id(nn, 0);
  for (unsigned i = 0; i < n; ++i)
    id[i * n + i] = 1;
  identity_ = index_of(id);

  // inverses: pair each element with the one whose product is the identity
  inverse_.assign(codes_.size(), 0);
  std::vector<bool> done(codes_.size(), false);
  for (Elem a = 0; a < codes_.size(); ++a) {
    if (done[a])
      continue;
    // Gauss-Jordan on [A | I]
    std::vector<FV> aug(2 * nn, 0);
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j)
        aug[i * 2 * n + j] = entry(a, i, j);
      aug[i * 2 * n + n + i] = 1;
    }
    const FiniteField& f = *field_;
    for (unsigned c = 0; c < n; ++c) {
      unsigned piv = c;
      while (aug[piv * 2 * n + c] == 0)
        ++piv;
      for (unsigned j = 0; j < 2 * n; ++j)
        std::swap(aug[piv * 2 * n + j], aug[c * 2 * n + j]);
      const FV s = f.inv(aug[c * 2 * n + c]);
      for (unsigned j = 0; j < 2 * n; ++j)
        aug[c * 2 * n + j] = f.mul(s, aug[c * 2 * n + j]);
      for (unsigned r = 0; r < n; ++r) {
        if (r == c || aug[r * 2 * n + c] == 0)
          continue;
        const FV x = aug[r * 2 * n + c];
        for (unsigned j = 0; j < 2 * n; ++j)
          aug[r * 2 * n + j] = f.sub(aug[r * 2 * n + j], f.mul(x, aug[c * 2 * n + j]));
      }
    }
    std::vector<FV> m(nn);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        m[i * n + j] = aug[i * 2 * n + n + j];
    const Elem b = index_of(m);
    inverse_[a] = b;
    inverse_[b] = a;
    done[a] = done[b] = true;
  }

  std::vector<FV> g = id;
  g[0] = field_->primitive();
  if (q > 2)
    generators_.push_back(index_of(g));
  const unsigned e = field_->degree();
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      if (i == j)
        continue;
      std::uint32_t basis = 1;
      for (unsigned k = 0; k < e; ++k) {
        std::vector<FV> t = id;
        t[i * n + j] = basis;
        generators_.push_back(index_of(t));
        basis *= field_->characteristic();
      }
    }
  if (generators_.empty())
    generators_.push_back(identity_);

  // generation check
  std::vector<bool> seen(codes_.size(), false);
  std::deque<Elem> todo{identity_};
  seen[identity_] = true;
  std::size_t reached = 1;
  while (!todo.empty()) {
    const Elem x = todo.front();
    todo.pop_front();
    for (Elem s : generators_) {
      const Elem y = mul(s, x);
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        todo.push_back(y);
      }
    }
  }
  if (reached != codes_.size())
    throw std::logic_error("FqGroup: generators do not generate the group");
}

Elem FqGroup::mul(Elem a, Elem b) const
{
  const unsigned n = n_;
  const FiniteField& f = *field_;
  FV m[64];
  const FV* x = &entries_[a * n * n];
  const FV* y = &entries_[b * n * n];
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      FV acc = 0;
      for (unsigned k = 0; k < n; ++k)
        acc = f.add(acc, f.mul(x[i * n + k], y[k * n + j]));
      m[i * n + j] = acc;
    }
  return static_cast<Elem>(index_of_code_[encode(m, n * n, static_cast<std::uint32_t>(q_))]);
}

std::vector<FV> FqGroup::matrix(Elem a) const
{
  return {entries_.begin() + a * n_ * n_, entries_.begin() + (a + 1) * n_ * n_};
}

Elem FqGroup::index_of(const std::vector<FV>& m) const
{
  if (m.size() != n_ * n_)
    throw std::invalid_argument("FqGroup::index_of: wrong size");
  const std::int32_t idx = index_of_code_[encode(m.data(), n_ * n_, static_cast<std::uint32_t>(q_))];
  if (idx < 0)
    throw std::invalid_argument("FqGroup::index_of: singular matrix");
  return static_cast<Elem>(idx);
}

std::uint32_t FqGroup::order_of(Elem a) const
{
  std::uint32_t k = 1;
  for (Elem x = a; x != identity_; x = mul(x, a))
    ++k;
  return k;
}

std::vector<Elem> FqGroup::unipotent_radical() const
{
  std::vector<Elem> out;
  for (Elem a = 0; a < order(); ++a) {
    bool ok = true;
    for (unsigned i = 0; i < n_ && ok; ++i)
      for (unsigned j = 0; j <= i && ok; ++j)
        ok = entry(a, i, j) == (i == j ? 1u : 0u);
    if (ok)
      out.push_back(a);
  }
  return out;
}

std::vector<Elem> FqGroup::borel() const
{
  std::vector<Elem> out;
  for (Elem a = 0; a < order(); ++a) {
    bool ok = true;
    for (unsigned i = 0; i < n_ && ok; ++i)
      for (unsigned j = 0; j < i && ok; ++j)
        ok = entry(a, i, j) == 0;
    if (ok)
      out.push_back(a);
  }
  return out;
}

std::vector<Elem> FqGroup::torus() const
{
  std::vector<Elem> out;
  for (Elem a = 0; a < order(); ++a) {
    bool ok = true;
    for (unsigned i = 0; i < n_ && ok; ++i)
      for (unsigned j = 0; j < n_ && ok; ++j)
        ok = i == j || entry(a, i, j) == 0;
    if (ok)
      out.push_back(a);
  }
  return out;
}

std::vector<Elem> FqGroup::center() const
{
  std::vector<Elem> out;
  for (Elem a : torus()) {
    bool ok = true;
    for (unsigned i = 1; i < n_ && ok; ++i)
      ok = entry(a, i, i) == entry(a, 0, 0);
    if (ok)
      out.push_back(a);
  }
  return out;
}

ClassData conjugacy_classes(const FqGroup& g)
{
  ClassData c;
  const std::uint32_t none = ~0u;
  c.class_of.assign(g.order(), none);
  std::vector<Elem> inv_gens;
  for (Elem s : g.generators())
    inv_gens.push_back(s);
  for (Elem a = 0; a < g.order(); ++a) {
    if (c.class_of[a] != none)
      continue;
    const auto id = static_cast<std::uint32_t>(c.reps.size());
    c.reps.push_back(a);
    std::uint64_t size = 0;
    std::deque<Elem> todo{a};
    c.class_of[a] = id;
    while (!todo.empty()) {
      const Elem x = todo.front();
      todo.pop_front();
      ++size;
      for (Elem s : inv_gens) {
        const Elem y = g.conj(s, x);
        if (c.class_of[y] == none) {
          c.class_of[y] = id;
          todo.push_back(y);
        }
      }
    }
    c.sizes.push_back(size);
  }
  const long k = static_cast<long>(c.reps.size());
  c.element_orders.assign(c.reps.size(), 0);
  c.centralizer_orders.assign(c.reps.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < k; ++i) {
    c.element_orders[i] = g.order_of(c.reps[i]);
    c.centralizer_orders[i] = g.order() / c.sizes[i];
  }
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < c.sizes.size(); ++i) {
    total += c.sizes[i];
    if (c.sizes[i] * c.centralizer_orders[i] != g.order())
      throw std::logic_error("conjugacy_classes: class size does not divide |G|");
  }
  if (total != g.order())
    throw std::logic_error("conjugacy_classes: class equation fails");
  return c;
}

std::uint64_t semisimple_class_count(const FqGroup& g, const ClassData& c)
{
  const std::uint64_t p = g.field().characteristic();
  std::uint64_t count = 0;
  for (auto o : c.element_orders)
    if (o % p != 0)
      ++count;
  return count;
}

CosetDecomposition left_cosets(const FqGroup& g, const std::vector<Elem>& subgroup)
{
  CosetDecomposition d;
  const std::uint32_t none = ~0u;
  d.coset_of.assign(g.order(), none);
  for (Elem x = 0; x < g.order(); ++x) {
    if (d.coset_of[x] != none)
      continue;
    const auto id = static_cast<std::uint32_t>(d.reps.size());
    d.reps.push_back(x);
    for (Elem h : subgroup)
      d.coset_of[g.mul(x, h)] = id;
  }
  if (d.reps.size() * subgroup.size() != g.order())
    throw std::logic_error("left_cosets: subgroup order does not divide |G|");
  return d;
}

} // namespace tamefiber::fingroup
