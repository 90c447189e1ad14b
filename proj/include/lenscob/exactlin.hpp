#pragma once

// Exact integer linear algebra on dense arbitrary-precision matrices:
// fraction-free determinants, Smith normal form, direct-summand tests,
// Bezout solvers and basis extension.  Everything here is exact; no
// floating point is used anywhere in this library.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lenscob {

using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

// gcd of absolute values, never negative.
inline Int gcd_int(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(abs_int(a), abs_int(b));
}

// gcd of a list; the empty list gives 0.
inline Int gcd_many(const std::vector<Int>& xs) {
  Int g = 0;
  for (const auto& x : xs) {
    g = gcd_int(g, x);
    if (g == 1) break;
  }
  return g;
}

struct Bezout {
  Int g, x, y;  // a*x + b*y == g == gcd(|a|, |b|) >= 0
};

inline Bezout extended_gcd(Int a, Int b) {
  Int old_r = std::move(a), r = std::move(b);
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int quot = old_r / r;
    old_r -= quot * r;
    std::swap(old_r, r);
    old_s -= quot * s;
    std::swap(old_s, s);
    old_t -= quot * t;
    std::swap(old_t, t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a - q * b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

// Reduce a into [0, |m|).
inline Int mod_floor(const Int& a, const Int& m) {
  Int mm = abs_int(m);
  Int r = a % mm;
  if (r < 0) r += mm;
  return r;
}

inline std::optional<Int> inverse_mod(const Int& a, const Int& p) {
  Bezout e = extended_gcd(mod_floor(a, p), p);
  if (e.g != 1) return std::nullopt;
  return mod_floor(e.x, p);
}

// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {
    if (rows == 0 || cols == 0)
      throw std::invalid_argument("IntMatrix: dimensions must be positive");
  }

  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows)
      : rows_(rows.size()), cols_(rows.begin() == rows.end() ? 0 : rows.begin()->size()) {
    if (rows_ == 0 || cols_ == 0)
      throw std::invalid_argument("IntMatrix: dimensions must be positive");
    a_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_)
        throw std::invalid_argument("IntMatrix: ragged initializer");
      a_.insert(a_.end(), row.begin(), row.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_columns(const std::vector<std::vector<Int>>& cols) {
    if (cols.empty() || cols.front().empty())
      throw std::invalid_argument("IntMatrix: dimensions must be positive");
    const std::size_t m = cols.front().size();
    IntMatrix out(m, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m)
        throw std::invalid_argument("IntMatrix: columns of unequal length");
      for (std::size_t i = 0; i < m; ++i) out(i, j) = cols[j][i];
    }
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<Int> column(std::size_t j) const {
    std::vector<Int> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("IntMatrix: incompatible shapes for product");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend std::vector<Int> operator*(const IntMatrix& a, const std::vector<Int>& x) {
    if (a.cols_ != x.size())
      throw std::invalid_argument("IntMatrix: incompatible shapes for product");
    std::vector<Int> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * x[j];
    return out;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Int> a_;
};

// Fraction-free determinant (Bareiss).  Every division is exact.
inline Int det(const IntMatrix& m) {
  if (!m.square()) throw std::invalid_argument("det: matrix must be square");
  const std::size_t n = m.rows();
  IntMatrix w = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && w(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      w.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / prev;
    prev = w(k, k);
  }
  return sign * w(n - 1, n - 1);
}

inline IntMatrix adjugate(const IntMatrix& m) {
  if (!m.square()) throw std::invalid_argument("adjugate: matrix must be square");
  const std::size_t n = m.rows();
  if (n == 1) return IntMatrix::identity(1);
  IntMatrix adj(n, n);
  IntMatrix sub(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // adj(i, j) is the (j, i) cofactor
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          sub(rr, cc) = m(r, c);
          ++cc;
        }
        ++rr;
      }
      Int d = det(sub);
      adj(i, j) = ((i + j) % 2 == 0) ? d : -d;
    }
  return adj;
}

struct SmithForm {
  IntMatrix u, d, v;  // u * input * v == d
};

// Smith normal form with deterministic pivoting: the minimal-absolute-value
// nonzero entry of the trailing block, ties broken by lowest (row, col).
inline SmithForm smith_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  auto row_sub = [&](std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t c = 0; c < cols; ++c) d(i, c) -= q * d(j, c);
    for (std::size_t c = 0; c < rows; ++c) u(i, c) -= q * u(j, c);
  };
  auto col_sub = [&](std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t r = 0; r < rows; ++r) d(r, i) -= q * d(r, j);
    for (std::size_t r = 0; r < cols; ++r) v(r, i) -= q * v(r, j);
  };

  const std::size_t t_max = std::min(rows, cols);
  for (std::size_t t = 0; t < t_max; ++t) {
    bool block_is_zero = false;
    for (;;) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (d(i, j) != 0 && (pi == rows || abs_int(d(i, j)) < abs_int(d(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) {
        block_is_zero = true;
        break;
      }
      if (pi != t) {
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
      }
      if (pj != t) {
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
      }
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        row_sub(i, t, d(i, t) / d(t, t));
        if (d(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        col_sub(j, t, d(t, j) / d(t, t));
        if (d(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      // the pivot must divide the rest of the trailing block
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_sub(t, bad, Int(-1));
    }
    if (block_is_zero) break;
  }
  for (std::size_t t = 0; t < t_max; ++t)
    if (d(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) d(t, c) = -d(t, c);
      for (std::size_t c = 0; c < rows; ++c) u(t, c) = -u(t, c);
    }
  return {std::move(u), std::move(d), std::move(v)};
}

inline std::vector<Int> elementary_divisors(const IntMatrix& m) {
  SmithForm sf = smith_form(m);
  const std::size_t k = std::min(m.rows(), m.cols());
  std::vector<Int> out(k);
  for (std::size_t t = 0; t < k; ++t) out[t] = sf.d(t, t);
  return out;
}

inline std::size_t lattice_rank(const IntMatrix& m) {
  std::size_t r = 0;
  for (const Int& d : elementary_divisors(m))
    if (d != 0) ++r;
  return r;
}

// True iff the vectors generate a rank-k direct summand of Z^m, i.e. all
// Smith elementary divisors equal 1.
inline bool is_part_of_basis(const std::vector<std::vector<Int>>& vectors) {
  if (vectors.empty()) return true;
  const std::size_t m = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != m)
      throw std::invalid_argument("is_part_of_basis: vectors of unequal length");
  const std::size_t k = vectors.size();
  if (k > m)
    throw std::invalid_argument("is_part_of_basis: more vectors than ambient rank");
  SmithForm sf = smith_form(IntMatrix::from_columns(vectors));
  for (std::size_t t = 0; t < k; ++t)
    if (sf.d(t, t) != 1) return false;
  return true;
}

// Integer solution of c1*x + c2*y + c3*z == 1, when one exists.
inline std::optional<std::array<Int, 3>> bezout3(const Int& c1, const Int& c2,
                                                 const Int& c3) {
  Bezout e12 = extended_gcd(c1, c2);
  Bezout e = extended_gcd(e12.g, c3);
  if (e.g != 1) return std::nullopt;
  return std::array<Int, 3>{e.x * e12.x, e.x * e12.y, e.y};
}

// Exact inverse of a matrix with determinant +-1.
inline IntMatrix inverse_unimodular(const IntMatrix& m) {
  Int dd = det(m);
  if (dd != 1 && dd != -1)
    throw std::invalid_argument("inverse_unimodular: determinant is not a unit");
  IntMatrix adj = adjugate(m);
  if (dd == -1)
    for (std::size_t i = 0; i < adj.rows(); ++i)
      for (std::size_t j = 0; j < adj.cols(); ++j) adj(i, j) = -adj(i, j);
  return adj;
}

// Completes k part-of-basis vectors in Z^m to the columns of a unimodular
// m x m matrix; the first k columns reproduce the input verbatim.
inline IntMatrix unimodular_extend(const std::vector<std::vector<Int>>& vectors) {
  if (vectors.empty())
    throw std::invalid_argument("unimodular_extend: need at least one vector");
  const std::size_t m = vectors.front().size();
  const std::size_t k = vectors.size();
  for (const auto& v : vectors)
    if (v.size() != m)
      throw std::invalid_argument("unimodular_extend: vectors of unequal length");
  if (k > m)
    throw std::invalid_argument("unimodular_extend: more vectors than ambient rank");

  IntMatrix a = IntMatrix::from_columns(vectors);
  SmithForm sf = smith_form(a);
  for (std::size_t t = 0; t < k; ++t)
    if (sf.d(t, t) != 1)
      throw std::invalid_argument("unimodular_extend: input is not part of a basis");

  // a == u^-1 [I_k; 0] v^-1, so u^-1 * blockdiag(v^-1, I) is unimodular and
  // starts with the input columns.
  IntMatrix u_inv = inverse_unimodular(sf.u);
  IntMatrix v_inv = inverse_unimodular(sf.v);
  IntMatrix block = IntMatrix::identity(m);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) block(i, j) = v_inv(i, j);
  IntMatrix out = u_inv * block;

  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i)
      if (out(i, j) != vectors[j][i])
        throw std::logic_error("unimodular_extend: failed to reproduce input columns");
  if (abs_int(det(out)) != 1)
    throw std::logic_error("unimodular_extend: result is not unimodular");
  return out;
}

}  // namespace lenscob
