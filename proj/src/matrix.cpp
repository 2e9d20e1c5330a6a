#include "torint/matrix.hpp"

#include <algorithm>

namespace torint {

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

namespace {

// Locates the entry of smallest nonzero absolute value in d[t.., t..].
bool find_pivot(const IntegerMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Integer v = abs(d(i, j));
      if (!found || v < best) {
        best = v;
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

}  // namespace

namespace {

// Extended gcd: returns g = gcd(a, b) >= 0 with x*a + y*b = g.
Integer ext_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

// Rows (r1, r2) <- [[x, y], [u, v]] (r1, r2) for a unimodular 2x2 block.
void combine_rows(IntegerMatrix& m, std::size_t r1, std::size_t r2, const Integer& x, const Integer& y,
                  const Integer& u, const Integer& v) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer a = m(r1, j), b = m(r2, j);
    m(r1, j) = x * a + y * b;
    m(r2, j) = u * a + v * b;
  }
}

void combine_cols(IntegerMatrix& m, std::size_t c1, std::size_t c2, const Integer& x, const Integer& y,
                  const Integer& u, const Integer& v) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer a = m(i, c1), b = m(i, c2);
    m(i, c1) = x * a + y * b;
    m(i, c2) = u * a + v * b;
  }
}

void clear_column(IntegerMatrix& d, IntegerMatrix& left, std::size_t t) {
  for (std::size_t i = t + 1; i < d.rows(); ++i) {
    if (d(i, t) == 0) continue;
    const Integer a = d(t, t), b = d(i, t);
    if (b % a == 0) {
      Integer q = b / a;
      d.add_row(i, t, -q);
      left.add_row(i, t, -q);
      continue;
    }
    Integer x, y;
    Integer g = ext_gcd(a, b, x, y);
    Integer u = -b / g, v = a / g;
    combine_rows(d, t, i, x, y, u, v);
    combine_rows(left, t, i, x, y, u, v);
  }
}

void clear_row(IntegerMatrix& d, IntegerMatrix& right, std::size_t t) {
  for (std::size_t j = t + 1; j < d.cols(); ++j) {
    if (d(t, j) == 0) continue;
    const Integer a = d(t, t), b = d(t, j);
    if (b % a == 0) {
      Integer q = b / a;
      d.add_col(j, t, -q);
      right.add_col(j, t, -q);
      continue;
    }
    Integer x, y;
    Integer g = ext_gcd(a, b, x, y);
    Integer u = -b / g, v = a / g;
    combine_cols(d, t, j, x, y, u, v);
    combine_cols(right, t, j, x, y, u, v);
  }
}

}  // namespace

SmithDecomposition smith_decompose(const IntegerMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntegerMatrix d = a;
  IntegerMatrix left = IntegerMatrix::identity(m);
  IntegerMatrix right = IntegerMatrix::identity(n);
  std::size_t t = 0;

  for (; t < std::min(m, n); ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(d, t, pi, pj)) break;
    d.swap_rows(t, pi);
    left.swap_rows(t, pi);
    d.swap_cols(t, pj);
    right.swap_cols(t, pj);

    for (;;) {
      clear_column(d, left, t);
      clear_row(d, right, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m && clean; ++i)
        if (d(i, t) != 0) clean = false;
      if (!clean) continue;

      // Row and column are clear; enforce divisibility of the remainder.
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n && !fixed; ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.add_row(t, i, Integer(1));
            left.add_row(t, i, Integer(1));
            fixed = true;
          }
      if (!fixed) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < m; ++j) left(t, j) = -left(t, j);
    }
  }

  SmithDecomposition out;
  out.rank = t;
  out.invariants.assign(std::min(m, n), Integer(0));
  for (std::size_t i = 0; i < t; ++i) out.invariants[i] = d(i, i);
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

CokernelStructure cokernel_structure(const IntegerMatrix& a) {
  SmithDecomposition s = smith_decompose(a);
  CokernelStructure c;
  c.rank = a.rows() - s.rank;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.invariants[i] > 1) c.torsion.push_back(s.invariants[i]);
  return c;
}

IntegerMatrix integer_kernel(const IntegerMatrix& a) {
  SmithDecomposition s = smith_decompose(a);
  const std::size_t n = a.cols();
  IntegerMatrix k(n, n - s.rank);
  for (std::size_t j = s.rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) k(i, j - s.rank) = s.right(i, j);
  return k;
}

IntegerMatrix saturated_column_span(const IntegerMatrix& a) {
  SmithDecomposition s = smith_decompose(a);
  // left is unimodular; the span of A is left^{-1} * (span of the first rank
  // coordinate vectors) after saturation.
  auto inv = inverse(to_rational(s.left));
  const std::size_t m = a.rows();
  IntegerMatrix basis(m, s.rank);
  for (std::size_t j = 0; j < s.rank; ++j)
    for (std::size_t i = 0; i < m; ++i) basis(i, j) = numerator((*inv)(i, j));
  return basis;
}

std::size_t rank(const RationalMatrix& a) {
  RationalMatrix m = a;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      m.add_row(i, r, -m(i, c) / m(r, c));
    }
    ++r;
  }
  return r;
}

std::size_t rank(const IntegerMatrix& a) { return rank(to_rational(a)); }

Integer determinant(const IntegerMatrix& a) {
  RationalMatrix m = to_rational(a);
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(c, p);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      m.add_row(i, c, -m(i, c) / m(c, c));
    }
  }
  return numerator(det);
}

std::optional<RatVector> solve(const RationalMatrix& a, const RatVector& b) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  RationalMatrix m(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = a(i, j);
    m(i, cols) = b[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) return std::nullopt;  // column rank deficient
    m.swap_rows(r, p);
    Rational inv = Rational(1) / m(r, c);
    for (std::size_t j = 0; j <= cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      m.add_row(i, r, -m(i, c));
    }
    pivots.push_back(c);
    ++r;
  }
  if (pivots.size() != cols) return std::nullopt;
  for (std::size_t i = r; i < rows; ++i)
    if (m(i, cols) != 0) return std::nullopt;
  RatVector x(cols);
  for (std::size_t i = 0; i < cols; ++i) x[i] = m(i, cols);
  return x;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) return std::nullopt;
  RationalMatrix m = a;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    m.swap_rows(c, p);
    inv.swap_rows(c, p);
    Rational f = Rational(1) / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) *= f;
      inv(c, j) *= f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      Rational g = -m(i, c);
      m.add_row(i, c, g);
      inv.add_row(i, c, g);
    }
  }
  return inv;
}

}  // namespace torint
