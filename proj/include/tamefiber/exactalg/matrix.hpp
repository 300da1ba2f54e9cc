#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tamefiber/exactalg/integer.hpp"

namespace tamefiber::exactalg {

/// Dense row-major matrix.  Arithmetic goes through a ring context.
template <class T>
class Mat {
public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  bool operator==(const Mat& o) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class R>
using MatOf = Mat<typename R::value_type>;

template <class R>
MatOf<R> mat_zero(const R& r, std::size_t rows, std::size_t cols)
{
  return MatOf<R>(rows, cols, r.zero());
}

template <class R>
MatOf<R> mat_identity(const R& r, std::size_t n)
{
  MatOf<R> m(n, n, r.zero());
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = r.one();
  return m;
}

template <class R>
MatOf<R> mat_from_ints(const R& r, std::size_t rows, std::size_t cols, const std::vector<long long>& v)
{
  if (v.size() != rows * cols)
    throw std::invalid_argument("mat_from_ints: wrong entry count");
  MatOf<R> m(rows, cols, r.zero());
  for (std::size_t k = 0; k < v.size(); ++k)
    m.data()[k] = r.from_int(v[k]);
  return m;
}

template <class R>
MatOf<R> mat_add(const R& r, const MatOf<R>& a, const MatOf<R>& b)
{
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("mat_add: shape mismatch");
  MatOf<R> c = a;
  for (std::size_t k = 0; k < c.data().size(); ++k)
    c.data()[k] = r.add(a.data()[k], b.data()[k]);
  return c;
}

template <class R>
MatOf<R> mat_sub(const R& r, const MatOf<R>& a, const MatOf<R>& b)
{
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("mat_sub: shape mismatch");
  MatOf<R> c = a;
  for (std::size_t k = 0; k < c.data().size(); ++k)
    c.data()[k] = r.sub(a.data()[k], b.data()[k]);
  return c;
}

template <class R>
MatOf<R> mat_scale(const R& r, const typename R::value_type& s, const MatOf<R>& a)
{
  MatOf<R> c = a;
  for (auto& x : c.data())
    x = r.mul(s, x);
  return c;
}

template <class R>
MatOf<R> mat_mul(const R& r, const MatOf<R>& a, const MatOf<R>& b)
{
  if (a.cols() != b.rows())
    throw std::invalid_argument("mat_mul: shape mismatch");
  MatOf<R> c(a.rows(), b.cols(), r.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (r.is_zero(aik))
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c(i, j) = r.add(c(i, j), r.mul(aik, b(k, j)));
    }
  return c;
}

template <class R>
std::vector<typename R::value_type> mat_vec(const R& r, const MatOf<R>& a, const std::vector<typename R::value_type>& v)
{
  if (a.cols() != v.size())
    throw std::invalid_argument("mat_vec: shape mismatch");
  std::vector<typename R::value_type> out(a.rows(), r.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out[i] = r.add(out[i], r.mul(a(i, j), v[j]));
  return out;
}

template <class R>
MatOf<R> mat_pow(const R& r, MatOf<R> base, unsigned long long e)
{
  if (!base.square())
    throw std::invalid_argument("mat_pow: non-square matrix");
  MatOf<R> acc = mat_identity(r, base.rows());
  while (e > 0) {
    if (e & 1)
      acc = mat_mul(r, acc, base);
    e >>= 1;
    if (e > 0)
      base = mat_mul(r, base, base);
  }
  return acc;
}

template <class R>
MatOf<R> mat_transpose(const MatOf<R>& a)
{
  if (a.rows() == 0 || a.cols() == 0)
    return MatOf<R>(a.cols(), a.rows(), typename R::value_type{});
  MatOf<R> t(a.cols(), a.rows(), a(0, 0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      t(j, i) = a(i, j);
  return t;
}

template <class R>
MatOf<R> mat_block(const MatOf<R>& a, std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc)
{
  if (r0 + nr > a.rows() || c0 + nc > a.cols())
    throw std::out_of_range("mat_block: out of range");
  MatOf<R> b;
  if (nr == 0 || nc == 0)
    return b;
  b = MatOf<R>(nr, nc, a(r0, c0));
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      b(i, j) = a(r0 + i, c0 + j);
  return b;
}

template <class R>
void mat_set_block(MatOf<R>& a, std::size_t r0, std::size_t c0, const MatOf<R>& b)
{
  if (r0 + b.rows() > a.rows() || c0 + b.cols() > a.cols())
    throw std::out_of_range("mat_set_block: out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      a(r0 + i, c0 + j) = b(i, j);
}

/// Block-diagonal sum of square blocks.
template <class R>
MatOf<R> mat_direct_sum(const R& r, const std::vector<MatOf<R>>& blocks)
{
  std::size_t n = 0;
  for (const auto& b : blocks)
    n += b.rows();
  MatOf<R> m(n, n, r.zero());
  std::size_t off = 0;
  for (const auto& b : blocks) {
    mat_set_block<R>(m, off, off, b);
    off += b.rows();
  }
  return m;
}

/// Characteristic polynomial det(X*I - M), coefficients low to high, via the
/// division-free Berkowitz recursion.
template <class R>
std::vector<typename R::value_type> char_poly(const R& r, const MatOf<R>& m)
{
  using V = typename R::value_type;
  if (!m.square())
    throw std::invalid_argument("char_poly: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0)
    return {r.one()};
  // hi-to-lo coefficients of the trailing k x k principal submatrix
  std::vector<V> poly{r.one(), r.neg(m(n - 1, n - 1))};
  for (std::size_t k = 2; k <= n; ++k) {
    const std::size_t s = n - k; // top-left corner of current submatrix
    const V& a = m(s, s);
    const std::size_t d = k - 1;
    // t_0 = 1, t_1 = -a, t_j = -R A'^{j-2} C
    std::vector<V> t(k + 1, r.zero());
    t[0] = r.one();
    t[1] = r.neg(a);
    std::vector<V> col(d);
    for (std::size_t i = 0; i < d; ++i)
      col[i] = m(s + 1 + i, s);
    for (std::size_t j = 2; j <= k; ++j) {
      V dot = r.zero();
      for (std::size_t i = 0; i < d; ++i)
        dot = r.add(dot, r.mul(m(s, s + 1 + i), col[i]));
      t[j] = r.neg(dot);
      if (j < k) {
        std::vector<V> next(d, r.zero());
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t l = 0; l < d; ++l)
            next[i] = r.add(next[i], r.mul(m(s + 1 + i, s + 1 + l), col[l]));
        col = std::move(next);
      }
    }
    std::vector<V> out(k + 1, r.zero());
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = 0; j <= d && j <= i; ++j)
        out[i] = r.add(out[i], r.mul(t[i - j], poly[j]));
    poly = std::move(out);
  }
  return std::vector<V>(poly.rbegin(), poly.rend());
}

template <class R>
typename R::value_type det(const R& r, const MatOf<R>& m)
{
  auto cp = char_poly(r, m);
  return (m.rows() % 2 == 0) ? cp[0] : r.neg(cp[0]);
}

/// Inverse over a local ring or field by Gauss-Jordan with unit pivots.
/// Throws NonUnitError when no unit pivot exists (residue matrix singular).
template <class R>
MatOf<R> invert(const R& r, const MatOf<R>& m)
{
  if (!m.square())
    throw std::invalid_argument("invert: matrix is not square");
  const std::size_t n = m.rows();
  MatOf<R> a = m;
  MatOf<R> inv = mat_identity(r, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (r.is_unit(a(i, c))) {
        piv = i;
        break;
      }
    if (piv == n)
      throw NonUnitError("invert: matrix is not invertible");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    const auto s = r.inv(a(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) = r.mul(s, a(c, j));
      inv(c, j) = r.mul(s, inv(c, j));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || r.is_zero(a(i, c)))
        continue;
      const auto f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = r.sub(a(i, j), r.mul(f, a(c, j)));
        inv(i, j) = r.sub(inv(i, j), r.mul(f, inv(c, j)));
      }
    }
  }
  return inv;
}

template <class R>
bool is_invertible(const R& r, const MatOf<R>& m)
{
  try {
    invert(r, m);
    return true;
  } catch (const NonUnitError&) {
    return false;
  }
}

/// Reduced row echelon form over a field; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(const F& f, MatOf<F>& a)
{
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t piv = a.rows();
    for (std::size_t i = row; i < a.rows(); ++i)
      if (!f.is_zero(a(i, c))) {
        piv = i;
        break;
      }
    if (piv == a.rows())
      continue;
    if (piv != row)
      for (std::size_t j = 0; j < a.cols(); ++j)
        std::swap(a(piv, j), a(row, j));
    const auto s = f.inv(a(row, c));
    for (std::size_t j = c; j < a.cols(); ++j)
      a(row, j) = f.mul(s, a(row, j));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || f.is_zero(a(i, c)))
        continue;
      const auto x = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        a(i, j) = f.sub(a(i, j), f.mul(x, a(row, j)));
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

template <class F>
std::size_t rank(const F& f, MatOf<F> a)
{
  return rref(f, a).size();
}

/// Basis of the right kernel {x : a x = 0} over a field, one vector per free column.
template <class F>
std::vector<std::vector<typename F::value_type>> nullspace(const F& f, MatOf<F> a)
{
  const auto pivots = rref(f, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots)
    is_pivot[c] = true;
  std::vector<std::vector<typename F::value_type>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free])
      continue;
    std::vector<typename F::value_type> v(a.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = f.neg(a(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves a x = b over a field; nullopt if inconsistent.
template <class F>
std::optional<std::vector<typename F::value_type>> solve(const F& f, const MatOf<F>& a,
                                                         const std::vector<typename F::value_type>& b)
{
  MatOf<F> aug(a.rows(), a.cols() + 1, f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto pivots = rref(f, aug);
  if (!pivots.empty() && pivots.back() == a.cols())
    return std::nullopt;
  std::vector<typename F::value_type> x(a.cols(), f.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    x[pivots[i]] = aug(i, a.cols());
  return x;
}

/// Jordan block of size n with eigenvalue lambda (ones on the superdiagonal).
template <class R>
MatOf<R> jordan_block(const R& r, const typename R::value_type& lambda, std::size_t n)
{
  MatOf<R> m(n, n, r.zero());
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = lambda;
    if (i + 1 < n)
      m(i, i + 1) = r.one();
  }
  return m;
}

template <class R>
bool is_block_diagonal(const R& r, const MatOf<R>& m, const std::vector<std::size_t>& sizes)
{
  std::vector<std::size_t> block_of;
  for (std::size_t b = 0; b < sizes.size(); ++b)
    for (std::size_t k = 0; k < sizes[b]; ++k)
      block_of.push_back(b);
  if (block_of.size() != m.rows() || !m.square())
    throw std::invalid_argument("is_block_diagonal: block sizes do not match matrix");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (block_of[i] != block_of[j] && !r.is_zero(m(i, j)))
        return false;
  return true;
}

} // namespace tamefiber::exactalg
