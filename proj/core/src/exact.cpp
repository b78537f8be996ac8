#include "kato/exact.hpp"

#include <algorithm>
#include <stdexcept>

namespace kato {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat parse_rat(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec sub(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVec scale(const Int& c, const IntVec& v) {
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

Int vec_gcd(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<IntVec>& rows) {
  if (rows.empty()) return IntMat();
  IntMat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (rows[i].size() != static_cast<size_t>(m.cols()))
      throw std::invalid_argument("from_rows: ragged rows");
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMat IntMat::from_cols(const std::vector<IntVec>& cols) {
  if (cols.empty()) return IntMat();
  IntMat m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j) {
    if (cols[j].size() != static_cast<size_t>(m.rows()))
      throw std::invalid_argument("from_cols: ragged columns");
    for (int i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

IntMat IntMat::from_ints(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVec> rv;
  for (const auto& r : rows) {
    IntVec v;
    for (long x : r) v.emplace_back(x);
    rv.push_back(std::move(v));
  }
  return from_rows(rv);
}

IntVec IntMat::row(int i) const {
  IntVec r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

IntVec IntMat::col(int j) const {
  IntVec c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

IntMat IntMat::transpose() const {
  IntMat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMat operator*(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  IntMat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

IntMat operator+(const IntMat& a, const IntMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matadd: shape mismatch");
  IntMat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
  return c;
}

IntMat operator-(const IntMat& a, const IntMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matsub: shape mismatch");
  IntMat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
  return c;
}

IntVec operator*(const IntMat& a, const IntVec& v) {
  if (a.cols() != static_cast<int>(v.size())) throw std::invalid_argument("matvec: shape mismatch");
  IntVec r(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r[i] += a.at(i, j) * v[j];
  return r;
}

RatMat RatMat::from(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = Rat(m.at(i, j));
  return r;
}

RatVec operator*(const RatMat& a, const RatVec& v) {
  if (a.cols() != static_cast<int>(v.size())) throw std::invalid_argument("matvec: shape mismatch");
  RatVec r(a.rows(), Rat(0));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r[i] += a.at(i, j) * v[j];
  return r;
}

Int det(const IntMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: non-square matrix");
  int n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

IntMat inverse_unimodular(const IntMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: non-square matrix");
  Int d = det(m);
  if (d != 1 && d != -1) throw std::invalid_argument("inverse_unimodular: |det| != 1");
  int n = m.rows();
  // Solve m * X = I column by column over Q; entries come out integral.
  RatMat a = RatMat::from(m);
  IntMat inv(n, n);
  for (int j = 0; j < n; ++j) {
    RatVec e(n, Rat(0));
    e[j] = 1;
    auto x = rat_solve(a, e);
    if (!x) throw std::logic_error("inverse_unimodular: singular");
    for (int i = 0; i < n; ++i) {
      if ((*x)[i].get_den() != 1) throw std::logic_error("inverse_unimodular: non-integral inverse");
      inv.at(i, j) = (*x)[i].get_num();
    }
  }
  return inv;
}

IntMat mat_pow(const IntMat& m, long k) {
  if (m.rows() != m.cols()) throw std::invalid_argument("mat_pow: non-square matrix");
  IntMat base = k >= 0 ? m : inverse_unimodular(m);
  unsigned long e = k >= 0 ? static_cast<unsigned long>(k) : static_cast<unsigned long>(-k);
  IntMat r = IntMat::identity(m.rows());
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

namespace {

// In-place elementary operations that keep u*m_orig*v == d.
struct SnfWork {
  IntMat d, u, v;

  void row_swap(int i, int j) {
    for (int k = 0; k < d.cols(); ++k) std::swap(d.at(i, k), d.at(j, k));
    for (int k = 0; k < u.cols(); ++k) std::swap(u.at(i, k), u.at(j, k));
  }
  void col_swap(int i, int j) {
    for (int k = 0; k < d.rows(); ++k) std::swap(d.at(k, i), d.at(k, j));
    for (int k = 0; k < v.rows(); ++k) std::swap(v.at(k, i), v.at(k, j));
  }
  void row_add(int dst, int src, const Int& c) {  // row_dst += c*row_src
    for (int k = 0; k < d.cols(); ++k) d.at(dst, k) += c * d.at(src, k);
    for (int k = 0; k < u.cols(); ++k) u.at(dst, k) += c * u.at(src, k);
  }
  void col_add(int dst, int src, const Int& c) {
    for (int k = 0; k < d.rows(); ++k) d.at(k, dst) += c * d.at(k, src);
    for (int k = 0; k < v.rows(); ++k) v.at(k, dst) += c * v.at(k, src);
  }
  void row_neg(int i) {
    for (int k = 0; k < d.cols(); ++k) d.at(i, k) = -d.at(i, k);
    for (int k = 0; k < u.cols(); ++k) u.at(i, k) = -u.at(i, k);
  }
};

}  // namespace

SnfResult snf(const IntMat& m) {
  SnfWork w{m, IntMat::identity(m.rows()), IntMat::identity(m.cols())};
  int rows = m.rows(), cols = m.cols();
  int t = 0;
  int steps = std::min(rows, cols);
  while (t < steps) {
    // Find a pivot of minimal absolute value in the trailing submatrix.
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (w.d.at(i, j) != 0 &&
            (pi < 0 || mpz_cmpabs(w.d.at(i, j).get_mpz_t(), w.d.at(pi, pj).get_mpz_t()) < 0)) {
          pi = i; pj = j;
        }
    if (pi < 0) break;  // trailing block is zero
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      if (w.d.at(i, t) == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), w.d.at(i, t).get_mpz_t(), w.d.at(t, t).get_mpz_t());
      w.row_add(i, t, -q);
      if (w.d.at(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      if (w.d.at(t, j) == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), w.d.at(t, j).get_mpz_t(), w.d.at(t, t).get_mpz_t());
      w.col_add(j, t, -q);
      if (w.d.at(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // remainders left; pick a smaller pivot next round

    // Divisibility: pivot must divide the whole trailing block.
    bool divides = true;
    for (int i = t + 1; i < rows && divides; ++i)
      for (int j = t + 1; j < cols && divides; ++j)
        if (!mpz_divisible_p(w.d.at(i, j).get_mpz_t(), w.d.at(t, t).get_mpz_t())) {
          w.row_add(t, i, 1);
          divides = false;
        }
    if (!divides) continue;

    if (w.d.at(t, t) < 0) w.row_neg(t);
    ++t;
  }
  return SnfResult{w.d, w.u, w.v};
}

std::vector<IntVec> int_kernel(const IntMat& m) {
  SnfResult s = snf(m);
  std::vector<IntVec> basis;
  int steps = std::min(m.rows(), m.cols());
  for (int j = 0; j < m.cols(); ++j) {
    bool zero_col = j >= steps || s.d.at(j, j) == 0;
    if (zero_col) basis.push_back(s.v.col(j));
  }
  return basis;
}

std::optional<DiophSolution> solve_diophantine(const IntMat& m, const IntVec& b) {
  if (m.rows() != static_cast<int>(b.size()))
    throw std::invalid_argument("solve_diophantine: shape mismatch");
  SnfResult s = snf(m);
  IntVec c = s.u * b;
  IntVec y(m.cols(), Int(0));
  int steps = std::min(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    const Int di = i < steps ? s.d.at(i, i) : Int(0);
    if (di == 0) {
      if (c[i] != 0) return std::nullopt;
    } else {
      if (!mpz_divisible_p(c[i].get_mpz_t(), di.get_mpz_t())) return std::nullopt;
      if (i < m.cols()) mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), di.get_mpz_t());
    }
  }
  DiophSolution sol;
  sol.particular = s.v * y;
  sol.kernel = int_kernel(m);
  return sol;
}

namespace {

// Reduced row echelon form; returns pivot columns.
std::vector<int> rref(RatMat& a) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int p = -1;
    for (int i = r; i < a.rows(); ++i)
      if (a.at(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < a.cols(); ++j) std::swap(a.at(r, j), a.at(p, j));
    Rat inv = a.at(r, c);
    for (int j = 0; j < a.cols(); ++j) a.at(r, j) /= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, c) == 0) continue;
      Rat f = a.at(i, c);
      for (int j = 0; j < a.cols(); ++j) a.at(i, j) -= f * a.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rat_rank(const RatMat& m) {
  RatMat a = m;
  return static_cast<int>(rref(a).size());
}

std::optional<RatVec> rat_solve(const RatMat& m, const RatVec& b) {
  if (m.rows() != static_cast<int>(b.size())) throw std::invalid_argument("rat_solve: shape mismatch");
  RatMat a(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) a.at(i, j) = m.at(i, j);
    a.at(i, m.cols()) = b[i];
  }
  std::vector<int> pivots = rref(a);
  for (int c : pivots)
    if (c == m.cols()) return std::nullopt;  // inconsistent
  RatVec x(m.cols(), Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a.at(static_cast<int>(r), m.cols());
  return x;
}

std::vector<RatVec> rat_kernel(const RatMat& m) {
  RatMat a = m;
  std::vector<int> pivots = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVec v(m.cols(), Rat(0));
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a.at(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<IntVec> left_kernel_int(const RatMat& m) {
  RatMat t(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
  std::vector<IntVec> rows;
  for (const RatVec& v : rat_kernel(t)) {
    Int l = 1;
    for (const Rat& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    IntVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
      Rat q = v[i] * Rat(l);
      w[i] = q.get_num();
    }
    rows.push_back(std::move(w));
  }
  return rows;
}

bool in_rational_span(const RatVec& x, const RatMat& m) {
  if (m.rows() != static_cast<int>(x.size()))
    throw std::invalid_argument("in_rational_span: shape mismatch");
  for (const IntVec& c : left_kernel_int(m)) {
    Rat s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += Rat(c[i]) * x[i];
    if (s != 0) return false;
  }
  return true;
}

bool affine_lattice_membership(const RatVec& x, const RatMat& m) {
  if (m.rows() != static_cast<int>(x.size()))
    throw std::invalid_argument("affine_lattice_membership: shape mismatch");
  // x = M w + k with w rational, k integral. Kill the span part with the
  // left kernel C of M, then decide C k = C x over the integers.
  std::vector<IntVec> c = left_kernel_int(m);
  if (c.empty()) return true;  // M spans everything
  int r = static_cast<int>(c.size()), n = m.rows();
  RatVec cx(r, Rat(0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) cx[i] += Rat(c[i][j]) * x[j];
  Int l = 1;
  for (const Rat& q : cx) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  IntMat lc(r, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) lc.at(i, j) = l * c[i][j];
  IntVec rhs(r);
  for (int i = 0; i < r; ++i) {
    Rat q = cx[i] * Rat(l);
    rhs[i] = q.get_num();
  }
  return solve_diophantine(lc, rhs).has_value();
}

}  // namespace kato
