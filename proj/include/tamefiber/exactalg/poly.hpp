#pragma once

// Dense univariate polynomials as coefficient vectors, lowest degree first.
// The zero polynomial is the empty vector.

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "tamefiber/exactalg/matrix.hpp"

namespace tamefiber::exactalg {

template <class R>
using PolyOf = std::vector<typename R::value_type>;

template <class R>
void poly_trim(const R& r, PolyOf<R>& p)
{
  while (!p.empty() && r.is_zero(p.back()))
    p.pop_back();
}

template <class R>
long poly_degree(const R& r, PolyOf<R> p)
{
  poly_trim(r, p);
  return static_cast<long>(p.size()) - 1;
}

template <class R>
PolyOf<R> poly_add(const R& r, const PolyOf<R>& a, const PolyOf<R>& b)
{
  PolyOf<R> c(std::max(a.size(), b.size()), r.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i)
    c[i] = r.add(c[i], b[i]);
  poly_trim(r, c);
  return c;
}

template <class R>
PolyOf<R> poly_sub(const R& r, const PolyOf<R>& a, const PolyOf<R>& b)
{
  PolyOf<R> c(std::max(a.size(), b.size()), r.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i)
    c[i] = r.sub(c[i], b[i]);
  poly_trim(r, c);
  return c;
}

template <class R>
PolyOf<R> poly_scale(const R& r, const typename R::value_type& s, PolyOf<R> a)
{
  for (auto& x : a)
    x = r.mul(s, x);
  poly_trim(r, a);
  return a;
}

template <class R>
PolyOf<R> poly_mul(const R& r, const PolyOf<R>& a, const PolyOf<R>& b)
{
  if (a.empty() || b.empty())
    return {};
  PolyOf<R> c(a.size() + b.size() - 1, r.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (r.is_zero(a[i]))
      continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = r.add(c[i + j], r.mul(a[i], b[j]));
  }
  poly_trim(r, c);
  return c;
}

/// Division by a polynomial whose leading coefficient is a unit.
template <class R>
std::pair<PolyOf<R>, PolyOf<R>> poly_divmod(const R& r, PolyOf<R> a, PolyOf<R> b)
{
  poly_trim(r, a);
  poly_trim(r, b);
  if (b.empty())
    throw std::domain_error("poly_divmod: division by zero polynomial");
  const auto lead_inv = r.inv(b.back());
  if (a.size() < b.size())
    return {PolyOf<R>{}, a};
  PolyOf<R> q(a.size() - b.size() + 1, r.zero());
  for (std::size_t k = q.size(); k-- > 0;) {
    const auto c = r.mul(a[k + b.size() - 1], lead_inv);
    q[k] = c;
    if (r.is_zero(c))
      continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      a[k + j] = r.sub(a[k + j], r.mul(c, b[j]));
  }
  a.resize(b.size() - 1);
  poly_trim(r, a);
  poly_trim(r, q);
  return {q, a};
}

template <class R>
PolyOf<R> poly_mod(const R& r, const PolyOf<R>& a, const PolyOf<R>& b)
{
  return poly_divmod(r, a, b).second;
}

template <class R>
PolyOf<R> poly_monic(const R& r, PolyOf<R> a)
{
  poly_trim(r, a);
  if (a.empty())
    return a;
  return poly_scale(r, r.inv(a.back()), a);
}

template <class R>
typename R::value_type poly_eval(const R& r, const PolyOf<R>& p, const typename R::value_type& x)
{
  auto acc = r.zero();
  for (std::size_t k = p.size(); k-- > 0;)
    acc = r.add(r.mul(acc, x), p[k]);
  return acc;
}

template <class R>
MatOf<R> poly_eval_matrix(const R& r, const PolyOf<R>& p, const MatOf<R>& m)
{
  MatOf<R> acc = mat_zero(r, m.rows(), m.cols());
  for (std::size_t k = p.size(); k-- > 0;) {
    acc = mat_mul(r, acc, m);
    for (std::size_t i = 0; i < m.rows(); ++i)
      acc(i, i) = r.add(acc(i, i), p[k]);
  }
  return acc;
}

/// Monic gcd over a field.
template <class F>
PolyOf<F> poly_gcd(const F& f, PolyOf<F> a, PolyOf<F> b)
{
  poly_trim(f, a);
  poly_trim(f, b);
  while (!b.empty()) {
    auto rem = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(rem);
  }
  return poly_monic(f, a);
}

/// Over a field: returns (g, s, t) with s a + t b = g, g monic.
template <class F>
std::tuple<PolyOf<F>, PolyOf<F>, PolyOf<F>> poly_xgcd(const F& f, PolyOf<F> a, PolyOf<F> b)
{
  poly_trim(f, a);
  poly_trim(f, b);
  PolyOf<F> s0{f.one()}, s1{}, t0{}, t1{f.one()};
  while (!b.empty()) {
    auto [q, rem] = poly_divmod(f, a, b);
    auto s2 = poly_sub(f, s0, poly_mul(f, q, s1));
    auto t2 = poly_sub(f, t0, poly_mul(f, q, t1));
    a = std::move(b);
    b = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (a.empty())
    return {a, s0, t0};
  const auto li = f.inv(a.back());
  return {poly_scale(f, li, a), poly_scale(f, li, s0), poly_scale(f, li, t0)};
}

template <class R>
PolyOf<R> poly_from_roots(const R& r, const std::vector<typename R::value_type>& roots)
{
  PolyOf<R> p{r.one()};
  for (const auto& a : roots)
    p = poly_mul(r, p, PolyOf<R>{r.neg(a), r.one()});
  return p;
}

template <class R>
bool poly_equal(const R& r, PolyOf<R> a, PolyOf<R> b)
{
  poly_trim(r, a);
  poly_trim(r, b);
  return a == b;
}

} // namespace tamefiber::exactalg
