#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kato/fan.hpp"

namespace kato {

/// Exact log-parameter: lambda = e^{2 pi i (re + i im)}.
struct GaussRat {
  Rat re, im;
  bool operator==(const GaussRat&) const = default;
};

enum class KatoKind { Hopf, Parabolic, Hyperbolic };
std::string to_string(KatoKind k);

/// True iff |det A| = 1 and each column is strictly positive or standard.
bool is_kato_matrix(const IntMat& a);

struct PaData {
  std::vector<int> p;       // sorted, 0-based
  std::map<int, int> s;     // permutation of p: column j equals e_{s(j)}
  int m0 = 1;               // stabilization index of the S_m iteration
};

/// Fixed point of S_m(A) = S_{m-1}(A) n k^{-1}(S_{m-1}(A)).
PaData pa_set(const IntMat& a);

KatoKind classify(const IntMat& a);

/// Validated Kato matrix with its cached column-permutation data.
class KatoMatrix {
 public:
  explicit KatoMatrix(IntMat a);

  const IntMat& mat() const { return a_; }
  int n() const { return a_.rows(); }
  const PaData& pa() const { return pa_; }
  KatoKind kind() const { return kind_; }
  std::vector<int> p_complement() const;
  int order_s() const;  // order of the permutation s (1 when P empty)
  std::vector<std::vector<int>> cycles() const;
  bool is_permutation() const;

 private:
  IntMat a_;
  PaData pa_;
  KatoKind kind_;
};

struct PerronData {
  double alpha = 0;
  std::vector<double> f;       // right eigenvector, <f*, f> = 1
  std::vector<double> f_star;  // left eigenvector, zero on P(A)
  double residual_f = 0;       // ||A f - alpha f||_inf
  double residual_f_star = 0;  // ||A^T f* - alpha f*||_inf
};

struct PerronResult {
  KatoKind kind;
  std::optional<PerronData> data;    // present iff hyperbolic
  std::optional<int> parabolic_j;    // the index with P(A)^c = {j}
};

PerronResult perron(const KatoMatrix& a, double tol = 1e-12);

/// Erase rows and columns J (subset of P(A), s-invariant, |J| < n-1).
IntMat sub_kato(const KatoMatrix& a, const std::vector<int>& j);

/// Full combinatorial Kato data: modification fan, distinguished cone with
/// its chart matrix, optional exact torus parameter.
struct KatoData {
  Fan sigma_hat;
  KatoMatrix a;                  // columns generate tau_a in declared order
  std::optional<std::vector<GaussRat>> ell;

  int n() const { return a.n(); }
  Cone tau_a() const;
  /// chart ambiguity: tau_a().gens[chart_perm()[k]] is column k of a
  std::vector<int> chart_perm() const;
};

KatoData make_kato_data(Fan sigma_hat, IntMat a,
                        std::optional<std::vector<GaussRat>> ell = std::nullopt);

struct ValidationReport {
  bool ok = false;
  std::vector<std::string> violations;
};

ValidationReport validate_kato_data(const KatoData& d);

/// Data of the k-th power germ: matrix A^k, the collapsed fan between 0 and
/// k, and the composed log-parameter (id + A + ... + A^{k-1}) ell.
KatoData power_data(const KatoData& d, int k);

/// The finite regular fan union_{l <= j < m} A^j (Sigma_hat \ A Sigma)
/// capped with A^m Sigma.
Fan collapsed_fan(const KatoData& d, long l, long m);

enum class Membership { In, Out, Unknown };

/// Membership of v in the support of the infinite fan: exact search of
/// A^k v in C_0, with the Perron half-space deciding the outside.
Membership support_membership(const KatoData& d, const IntVec& v, int max_iter = 64);

struct GermReport {
  std::vector<int> p_complement;  // 0-based indices of the H_infty hyperplanes
  std::string h_infty;
  std::string inv;
  IntMat b;                       // A restricted to P(A)^c
  std::string splitting;
  std::string germ;
};

GermReport germ_report(const KatoData& d);

}  // namespace kato
