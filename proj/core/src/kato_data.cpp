#include "kato/kato_data.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kato {

std::string to_string(KatoKind k) {
  switch (k) {
    case KatoKind::Hopf: return "Hopf";
    case KatoKind::Parabolic: return "parabolic";
    case KatoKind::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

namespace {

// -1 if not standard, else the index of the 1.
int standard_index(const IntMat& a, int col) {
  int idx = -1;
  for (int i = 0; i < a.rows(); ++i) {
    const Int& x = a.at(i, col);
    if (x == 0) continue;
    if (x != 1 || idx >= 0) return -1;
    idx = i;
  }
  return idx;
}

bool column_positive(const IntMat& a, int col) {
  for (int i = 0; i < a.rows(); ++i)
    if (a.at(i, col) <= 0) return false;
  return true;
}

}  // namespace

bool is_kato_matrix(const IntMat& a) {
  if (a.rows() != a.cols() || a.rows() == 0) return false;
  for (int j = 0; j < a.cols(); ++j)
    if (!column_positive(a, j) && standard_index(a, j) < 0) return false;
  Int d = det(a);
  return d == 1 || d == -1;
}

PaData pa_set(const IntMat& a) {
  if (!is_kato_matrix(a)) throw std::invalid_argument("pa_set: not a Kato matrix");
  int n = a.rows();
  std::map<int, int> k;  // j -> index with column j = e_{k(j)}
  std::set<int> s1;
  for (int j = 0; j < n; ++j) {
    int idx = standard_index(a, j);
    if (idx >= 0) {
      s1.insert(j);
      k[j] = idx;
    }
  }
  PaData out;
  std::set<int> cur = s1;
  int m = 1;
  for (;;) {
    std::set<int> next;
    for (int j : cur)
      if (cur.count(k[j])) next.insert(j);
    if (next == cur) break;
    cur = next;
    ++m;
  }
  out.m0 = m;
  out.p.assign(cur.begin(), cur.end());
  for (int j : out.p) out.s[j] = k[j];
  return out;
}

KatoKind classify(const IntMat& a) {
  PaData pa = pa_set(a);
  int n = a.rows();
  int size = static_cast<int>(pa.p.size());
  if (size == n) return KatoKind::Hopf;
  if (size == n - 1) return KatoKind::Parabolic;
  return KatoKind::Hyperbolic;
}

KatoMatrix::KatoMatrix(IntMat a) : a_(std::move(a)) {
  if (!is_kato_matrix(a_)) throw std::invalid_argument("KatoMatrix: not a Kato matrix");
  pa_ = pa_set(a_);
  int size = static_cast<int>(pa_.p.size());
  kind_ = size == n() ? KatoKind::Hopf : size == n() - 1 ? KatoKind::Parabolic : KatoKind::Hyperbolic;
}

std::vector<int> KatoMatrix::p_complement() const {
  std::vector<int> out;
  for (int j = 0; j < n(); ++j)
    if (!std::binary_search(pa_.p.begin(), pa_.p.end(), j)) out.push_back(j);
  return out;
}

std::vector<std::vector<int>> KatoMatrix::cycles() const {
  std::vector<std::vector<int>> out;
  std::set<int> seen;
  for (int j : pa_.p) {
    if (seen.count(j)) continue;
    std::vector<int> cyc;
    int cur = j;
    do {
      cyc.push_back(cur);
      seen.insert(cur);
      cur = pa_.s.at(cur);
    } while (cur != j);
    out.push_back(std::move(cyc));
  }
  return out;
}

int KatoMatrix::order_s() const {
  long ord = 1;
  for (const auto& cyc : cycles()) ord = std::lcm(ord, static_cast<long>(cyc.size()));
  return static_cast<int>(ord);
}

bool KatoMatrix::is_permutation() const { return static_cast<int>(pa_.p.size()) == n(); }

PerronResult perron(const KatoMatrix& a, double tol) {
  PerronResult res;
  res.kind = a.kind();
  if (a.kind() != KatoKind::Hyperbolic) {
    if (a.kind() == KatoKind::Parabolic) res.parabolic_j = a.p_complement()[0];
    return res;
  }

  int n = a.n();
  // Power so that the P block is the identity and the complement is positive.
  int d = a.order_s();
  int m = 0;
  IntMat am;
  auto pc = a.p_complement();
  for (int mult = 1; mult <= 64 * std::max(1, a.pa().m0); ++mult) {
    m = d * mult;
    am = mat_pow(a.mat(), m);
    bool ok = true;
    for (int j : pc)
      for (int i = 0; i < n && ok; ++i)
        if (am.at(i, j) <= 0) ok = false;
    if (ok) break;
    m = 0;
  }
  if (m == 0) throw std::logic_error("perron: positivity power not found");

  std::vector<std::vector<double>> md(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) md[i][j] = am.at(i, j).get_d();

  auto iterate = [&](bool transpose) {
    std::vector<double> x(n, 1.0), y(n);
    for (int it = 0; it < 100000; ++it) {
      for (int i = 0; i < n; ++i) {
        double s = 0;
        for (int j = 0; j < n; ++j) s += (transpose ? md[j][i] : md[i][j]) * x[j];
        y[i] = s;
      }
      double mx = 0;
      for (double v : y) mx = std::max(mx, std::fabs(v));
      for (int i = 0; i < n; ++i) y[i] /= mx;
      double delta = 0;
      for (int i = 0; i < n; ++i) delta = std::max(delta, std::fabs(y[i] - x[i]));
      x = y;
      if (delta < tol * 1e-3) break;
    }
    return x;
  };

  std::vector<double> f = iterate(false), fs = iterate(true);

  std::vector<std::vector<double>> ad(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ad[i][j] = a.mat().at(i, j).get_d();
  // Two-sided Rayleigh quotient on A itself.
  double num = 0, den = 0;
  for (int i = 0; i < n; ++i) {
    double Afi = 0;
    for (int j = 0; j < n; ++j) Afi += ad[i][j] * f[j];
    num += fs[i] * Afi;
    den += fs[i] * f[i];
  }
  double alpha = num / den;

  PerronData pd;
  pd.alpha = alpha;
  // normalize ||f||_inf = 1, then <f*, f> = 1
  double fmax = 0;
  for (double v : f) fmax = std::max(fmax, std::fabs(v));
  for (double& v : f) v /= fmax;
  double pair = 0;
  for (int i = 0; i < n; ++i) pair += fs[i] * f[i];
  for (double& v : fs) v /= pair;
  pd.f = f;
  pd.f_star = fs;
  for (int i = 0; i < n; ++i) {
    double Afi = 0, Atfi = 0;
    for (int j = 0; j < n; ++j) {
      Afi += ad[i][j] * f[j];
      Atfi += ad[j][i] * fs[j];
    }
    pd.residual_f = std::max(pd.residual_f, std::fabs(Afi - alpha * f[i]));
    pd.residual_f_star = std::max(pd.residual_f_star, std::fabs(Atfi - alpha * fs[i]));
  }
  res.data = pd;
  return res;
}

IntMat sub_kato(const KatoMatrix& a, const std::vector<int>& j) {
  std::set<int> js(j.begin(), j.end());
  int n = a.n();
  if (static_cast<int>(js.size()) >= n - 1)
    throw std::invalid_argument("sub_kato: |J| must be < n-1");
  for (int x : js) {
    if (!std::binary_search(a.pa().p.begin(), a.pa().p.end(), x))
      throw std::invalid_argument("sub_kato: J not contained in P(A)");
    if (!js.count(a.pa().s.at(x)))
      throw std::invalid_argument("sub_kato: J not s-invariant");
  }
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (!js.count(i)) keep.push_back(i);
  IntMat out(static_cast<int>(keep.size()), static_cast<int>(keep.size()));
  for (size_t r = 0; r < keep.size(); ++r)
    for (size_t c = 0; c < keep.size(); ++c) out.at(static_cast<int>(r), static_cast<int>(c)) = a.mat().at(keep[r], keep[c]);
  if (!is_kato_matrix(out)) throw std::logic_error("sub_kato: result is not a Kato matrix");
  return out;
}

Cone KatoData::tau_a() const {
  std::vector<IntVec> cols;
  for (int j = 0; j < a.n(); ++j) cols.push_back(a.mat().col(j));
  return Cone::make(a.n(), std::move(cols));
}

std::vector<int> KatoData::chart_perm() const {
  Cone t = tau_a();
  std::vector<int> perm(a.n());
  for (int j = 0; j < a.n(); ++j) {
    IntVec c = a.mat().col(j);
    auto it = std::lower_bound(t.gens.begin(), t.gens.end(), c);
    perm[j] = static_cast<int>(it - t.gens.begin());
  }
  return perm;
}

KatoData make_kato_data(Fan sigma_hat, IntMat a, std::optional<std::vector<GaussRat>> ell) {
  return KatoData{std::move(sigma_hat), KatoMatrix(std::move(a)), std::move(ell)};
}

ValidationReport validate_kato_data(const KatoData& d) {
  ValidationReport rep;
  int n = d.n();
  if (d.sigma_hat.ambient() != n) {
    rep.violations.push_back("fan ambient dimension differs from matrix size");
    return rep;
  }
  FanReport fr = fan_validate(d.sigma_hat);
  if (!fr.ok) {
    rep.violations.push_back("fan invalid: " + fr.message);
    return rep;
  }
  if (!fr.all_regular) rep.violations.push_back("fan has a non-regular cone");
  if (!d.sigma_hat.pure(n)) rep.violations.push_back("fan is not pure of full dimension");
  else if (!refines(d.sigma_hat, c0_fan(n)))
    rep.violations.push_back("fan does not refine the C^n fan");

  for (const IntVec& r : d.sigma_hat.rays()) {
    bool standard = false;
    for (int i = 0; i < n; ++i) {
      IntVec e(n, Int(0));
      e[i] = 1;
      if (r == e) standard = true;
    }
    if (standard) continue;
    bool positive = std::all_of(r.begin(), r.end(), [](const Int& x) { return x > 0; });
    if (!positive) rep.violations.push_back("new ray with a non-positive component");
  }

  Cone tau = d.tau_a();
  const auto& mc = d.sigma_hat.max_cones();
  if (std::find(mc.begin(), mc.end(), tau) == mc.end())
    rep.violations.push_back("tau_A is not a maximal cone of the fan");

  if (mc.size() == 1 && !d.a.is_permutation())
    rep.violations.push_back("trivial modification requires a permutation matrix");

  if (d.ell) {
    if (static_cast<int>(d.ell->size()) != n) {
      rep.violations.push_back("ell has wrong length");
    } else {
      // Contraction criterion in ord coordinates: rows of sum 1 need Im l_j > 0.
      for (int i = 0; i < n; ++i) {
        Int row_sum = 0;
        for (int j = 0; j < n; ++j) row_sum += d.a.mat().at(i, j);
        if (row_sum == 1 && (*d.ell)[i].im <= 0)
          rep.violations.push_back("row " + std::to_string(i + 1) +
                                   " has sum 1 but Im(ell) is not positive");
      }
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

Fan collapsed_fan(const KatoData& d, long l, long m) {
  if (l > m) throw std::invalid_argument("collapsed_fan: l > m");
  int n = d.n();
  Cone tau = d.tau_a();
  std::vector<Cone> cones;
  for (long k = l; k < m; ++k) {
    IntMat ak = mat_pow(d.a.mat(), k);
    for (const Cone& c : d.sigma_hat.max_cones()) {
      if (c == tau) continue;
      cones.push_back(apply(ak, c));
    }
  }
  cones.push_back(apply(mat_pow(d.a.mat(), m), c0_fan(n).max_cones()[0]));
  return Fan(n, std::move(cones));
}

KatoData power_data(const KatoData& d, int k) {
  if (k < 1) throw std::invalid_argument("power_data: k must be >= 1");
  Fan fan = collapsed_fan(d, 0, k);
  IntMat ak = mat_pow(d.a.mat(), k);
  std::optional<std::vector<GaussRat>> ell;
  if (d.ell) {
    IntMat s(d.n(), d.n());
    IntMat pow = IntMat::identity(d.n());
    for (int i = 0; i < k; ++i) {
      s = s + pow;
      pow = pow * d.a.mat();
    }
    std::vector<GaussRat> e(d.n());
    for (int i = 0; i < d.n(); ++i)
      for (int j = 0; j < d.n(); ++j) {
        e[i].re += Rat(s.at(i, j)) * (*d.ell)[j].re;
        e[i].im += Rat(s.at(i, j)) * (*d.ell)[j].im;
      }
    ell = std::move(e);
  }
  return make_kato_data(std::move(fan), std::move(ak), std::move(ell));
}

Membership support_membership(const KatoData& d, const IntVec& v, int max_iter) {
  int n = d.n();
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument("support_membership: dimension mismatch");
  auto nonneg = [](const IntVec& x) {
    return std::all_of(x.begin(), x.end(), [](const Int& t) { return t >= 0; });
  };
  auto has_zero = [](const IntVec& x) {
    return std::any_of(x.begin(), x.end(), [](const Int& t) { return t == 0; });
  };

  if (d.a.kind() == KatoKind::Hopf)
    return nonneg(v) && has_zero(v) ? Membership::In : Membership::Out;

  if (d.a.kind() == KatoKind::Parabolic) {
    int j = d.a.p_complement()[0];
    if (v[j] > 0) return Membership::In;
    if (v[j] == 0) return nonneg(v) ? Membership::In : Membership::Out;
    return Membership::Out;
  }

  // hyperbolic: search A^k v in C_0 (exact; a lattice point can never lie in
  // the deleted half-line region R_{>0} f_A + tau_P)
  IntMat ainv = inverse_unimodular(d.a.mat());
  IntVec fwd = v, bwd = v;
  if (nonneg(v)) return Membership::In;
  for (int k = 1; k <= max_iter; ++k) {
    fwd = d.a.mat() * fwd;
    bwd = ainv * bwd;
    if (nonneg(fwd) || nonneg(bwd)) return Membership::In;
  }
  PerronResult pr = perron(d.a);
  double pairing = 0, vnorm = 1;
  for (int i = 0; i < n; ++i) {
    pairing += pr.data->f_star[i] * v[i].get_d();
    vnorm = std::max(vnorm, std::fabs(v[i].get_d()));
  }
  double margin = 1e-6 * vnorm;
  if (pairing < -margin) return Membership::Out;
  return Membership::Unknown;
}

GermReport germ_report(const KatoData& d) {
  GermReport rep;
  rep.p_complement = d.a.p_complement();
  int n = d.n();

  std::ostringstream h, inv;
  if (rep.p_complement.empty()) {
    h << "empty";
    inv << "C^" << n;
  } else {
    for (size_t i = 0; i < rep.p_complement.size(); ++i)
      h << (i ? " u " : "") << "{z_" << rep.p_complement[i] + 1 << " = 0}";
    inv << "{z in C^" << n << " : ";
    for (size_t i = 0; i < rep.p_complement.size(); ++i)
      inv << (i ? ", " : "") << "z_" << rep.p_complement[i] + 1 << " != 0";
    inv << "}";
  }
  rep.h_infty = h.str();
  rep.inv = inv.str();

  auto pc = rep.p_complement;
  rep.b = IntMat(static_cast<int>(pc.size()), static_cast<int>(pc.size()));
  for (size_t r = 0; r < pc.size(); ++r)
    for (size_t c = 0; c < pc.size(); ++c)
      rep.b.at(static_cast<int>(r), static_cast<int>(c)) = d.a.mat().at(pc[r], pc[c]);

  std::ostringstream split;
  int psize = n - static_cast<int>(pc.size());
  if (d.a.kind() == KatoKind::Parabolic)
    split << "W_T(F) = T_N (parabolic)";
  else if (d.a.kind() == KatoKind::Hopf)
    split << "W_T(F) = T_N (Hopf)";
  else
    split << "W_T(F) = T_P x W_T(F'), dim T_P = " << psize
          << ", F' the germ of the " << pc.size() << "x" << pc.size() << " block";
  rep.splitting = split.str();

  std::ostringstream g;
  g << "(";
  for (int i = 0; i < n; ++i) {
    if (i) g << ", ";
    g << "l_" << i + 1;
    for (int j = 0; j < n; ++j) {
      const Int& e = d.a.mat().at(i, j);
      if (e == 0) continue;
      g << " z_" << j + 1;
      if (e != 1) g << "^" << e;
    }
  }
  g << ")";
  rep.germ = g.str();
  return rep;
}

}  // namespace kato
