#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace kato {

// Exact arithmetic over Z and Q. GMP supplies the arbitrary-precision
// integers and canonical rationals (lowest terms, positive denominator);
// everything on top of that lives here.
using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

Rat make_rat(const Int& num, const Int& den);
Rat parse_rat(const std::string& s);  // "p/q" or "p"
std::string rat_to_string(const Rat& q);

Int dot(const IntVec& a, const IntVec& b);
Rat dot(const RatVec& a, const RatVec& b);
IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(const Int& c, const IntVec& v);
bool is_zero(const IntVec& v);
Int vec_gcd(const IntVec& v);  // gcd of entries, nonnegative

RatVec to_rat(const IntVec& v);

class IntMat {
 public:
  IntMat() = default;
  IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static IntMat identity(int n);
  static IntMat from_rows(const std::vector<IntVec>& rows);
  static IntMat from_cols(const std::vector<IntVec>& cols);
  static IntMat from_ints(std::initializer_list<std::initializer_list<long>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  IntVec row(int i) const;
  IntVec col(int j) const;
  IntMat transpose() const;
  bool operator==(const IntMat& o) const = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

IntMat operator*(const IntMat& a, const IntMat& b);
IntMat operator+(const IntMat& a, const IntMat& b);
IntMat operator-(const IntMat& a, const IntMat& b);
IntVec operator*(const IntMat& a, const IntVec& v);

class RatMat {
 public:
  RatMat() = default;
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static RatMat from(const IntMat& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

RatVec operator*(const RatMat& a, const RatVec& v);

/// Exact determinant by Bareiss fraction-free elimination.
Int det(const IntMat& m);

/// M^k with binary exponentiation; k < 0 requires |det M| = 1.
IntMat mat_pow(const IntMat& m, long k);

/// Exact inverse of a matrix with |det| = 1.
IntMat inverse_unimodular(const IntMat& m);

struct SnfResult {
  IntMat d;  // diagonal, nonnegative, d_i | d_{i+1}
  IntMat u;  // unimodular, rows x rows
  IntMat v;  // unimodular, cols x cols; u*m*v == d
};
SnfResult snf(const IntMat& m);

/// Basis of the integer kernel {x : Mx = 0}.
std::vector<IntVec> int_kernel(const IntMat& m);

struct DiophSolution {
  IntVec particular;            // M * particular == b
  std::vector<IntVec> kernel;   // lattice basis of M x == 0
};
/// All integer solutions of Mx = b, or absence.
std::optional<DiophSolution> solve_diophantine(const IntMat& m, const IntVec& b);

// Rational linear algebra (Gaussian elimination, exact).
int rat_rank(const RatMat& m);
std::optional<RatVec> rat_solve(const RatMat& m, const RatVec& b);
std::vector<RatVec> rat_kernel(const RatMat& m);
/// Rows spanning {c : c^T M = 0}, cleared to integers.
std::vector<IntVec> left_kernel_int(const RatMat& m);

/// True iff x lies in the rational column span of M (no lattice part).
bool in_rational_span(const RatVec& x, const RatMat& m);

/// Decides x in M*Q^k + Z^n: a rational offset by an integer vector.
bool affine_lattice_membership(const RatVec& x, const RatMat& m);

}  // namespace kato
