#include "kato/invariants.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kato {

namespace {

Int binom(unsigned long n, unsigned long k) {
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace

std::vector<Int> betti(const KatoData& d) {
  int n = d.n();
  std::vector<long> a = d.sigma_hat.cone_counts();
  std::vector<Int> b(2 * n + 1, Int(0));
  b[0] = b[1] = b[2 * n - 1] = b[2 * n] = 1;
  for (int j = 1; j <= n - 1; ++j) {
    Int s = -1;
    for (int t = j; t <= n; ++t) {
      Int term = binom(t, j) * (Int(a[n - t]) + binom(n, t + 1));
      if ((t - j) % 2 == 0)
        s += term;
      else
        s -= term;
    }
    b[2 * j] = s;
  }
  return b;
}

Int euler(const KatoData& d) {
  std::vector<long> a = d.sigma_hat.cone_counts();
  return Int(a[d.n()]) - 1;
}

HodgeTable hodge(const KatoData& d) {
  int n = d.n();
  HodgeTable t;
  bool primary_hopf = d.a.kind() == KatoKind::Hopf && d.a.cycles().size() == 1;
  switch (d.a.kind()) {
    case KatoKind::Hyperbolic: t.status = HodgeStatus::Exact; break;
    case KatoKind::Parabolic: t.status = HodgeStatus::ConditionalParabolic; break;
    case KatoKind::Hopf:
      t.status = primary_hopf ? HodgeStatus::Exact : HodgeStatus::NotComputed;
      break;
  }
  if (t.status == HodgeStatus::NotComputed) return t;

  long sharp_d = d.sigma_hat.cone_counts()[1] - n;
  t.h.assign(n + 1, std::vector<long>(n + 1, -1));
  t.h[0][0] = 1;
  t.h[0][1] = 1;
  for (int q = 2; q <= n; ++q) t.h[0][q] = 0;
  for (int p = 1; p <= n; ++p) t.h[p][0] = 0;
  for (int q = 0; q <= n; ++q) t.h[1][q] = q == 1 ? sharp_d : 0;
  return t;
}

LogCohomology log_sheaf_cohomology(const KatoData& d) {
  int n = d.n();
  IntMat am = d.a.mat() - IntMat::identity(n);
  int rank = rat_rank(RatMat::from(am));
  LogCohomology lc;
  lc.h0 = n - rank;
  if (d.a.kind() == KatoKind::Hyperbolic) {
    lc.h1 = n - rank;
    lc.higher_vanish = true;
  }
  return lc;
}

CanonicalReport canonical_report(const KatoData& d) {
  CanonicalReport rep;
  rep.det_sign = det(d.a.mat()) > 0 ? 1 : -1;
  rep.sharp_d = d.sigma_hat.cone_counts()[1] - d.n();
  rep.sharp_dt = rep.sharp_d + static_cast<long>(d.a.cycles().size());
  rep.bundle = "K_X (x) L_{det A} = O_X(-D_T)";
  rep.kodaira = "negative";
  return rep;
}

CensusResult curve_census(const KatoData& d, int depth) {
  int n = d.n();
  int ord = d.a.order_s();
  int translates = std::max(1, depth) * ord;

  // (n-1)-cones of the truncation union_{0<=k<=translates} A^k Sigma_hat_0.
  // Sigma_hat_0 drops only the top cone tau_A, so its (n-1)-cones are all
  // (n-1)-faces of Sigma_hat.
  std::set<Cone> base;
  for (const Cone& c : d.sigma_hat.all_faces())
    if (c.dim() == n - 1) base.insert(c);

  std::set<Cone> cones;
  for (int k = 0; k <= translates; ++k) {
    IntMat ak = mat_pow(d.a.mat(), k);
    for (const Cone& c : base) cones.insert(apply(ak, c));
  }

  // orbits under tau ~ A tau inside the truncation
  std::vector<Cone> list(cones.begin(), cones.end());
  std::map<Cone, int> index;
  for (size_t i = 0; i < list.size(); ++i) index[list[i]] = static_cast<int>(i);
  std::vector<int> parent(list.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < list.size(); ++i) {
    Cone img = apply(d.a.mat(), list[i]);
    auto it = index.find(img);
    if (it != index.end()) parent[find(static_cast<int>(i))] = find(it->second);
  }

  std::map<int, Cone> reps;
  for (size_t i = 0; i < list.size(); ++i) reps.emplace(find(static_cast<int>(i)), list[i]);

  CensusResult res;
  res.depth = depth;
  int invariance_cap = ord * n;
  for (const auto& [root, rep] : reps) {
    bool elliptic = false;
    Cone cur = rep;
    for (int k = 1; k <= invariance_cap && !elliptic; ++k) {
      cur = apply(d.a.mat(), cur);
      if (cur == rep) elliptic = true;
    }
    if (elliptic)
      res.elliptic += 1;
    else
      res.rational += 1;
  }

  switch (d.a.kind()) {
    case KatoKind::Hopf:
      if (res.rational != 0) throw std::logic_error("census: Hopf data with a rational curve");
      res.hopf_orbit_caveat = ord > 1;
      break;
    case KatoKind::Hyperbolic:
      if (res.elliptic != 0) throw std::logic_error("census: hyperbolic data with an elliptic curve");
      break;
    case KatoKind::Parabolic:
      if (res.elliptic != 1) throw std::logic_error("census: parabolic data needs one elliptic curve");
      break;
  }
  return res;
}

ConnectivityReport divisor_connectivity(const KatoData& d) {
  if (d.a.kind() == KatoKind::Hopf)
    throw std::invalid_argument("divisor_connectivity: Hopf data has no exceptional divisor");
  ConnectivityReport rep;
  if (d.n() >= 3) return rep;  // all connected
  if (d.a.kind() == KatoKind::Parabolic) {
    rep.components_d = 1;
    rep.components_dt = 2;  // D plus the elliptic curve
    return rep;
  }
  bool det_neg = det(d.a.mat()) < 0;
  rep.components_d = det_neg ? 1 : 2;
  rep.components_dt = rep.components_d;  // no cycles in the hyperbolic case
  return rep;
}

ConnectivityReport divisor_connectivity_truncated(const KatoData& d, int window) {
  int n = d.n();
  int ord = d.a.order_s();
  int k_max = window * std::max(1, ord);
  Cone tau = d.tau_a();

  // rays and ray adjacencies of Sigma_hat_0 = Sigma_hat \ {tau_A}
  std::vector<Cone> base_rays, base_edges;
  for (const Cone& c : d.sigma_hat.all_faces()) {
    if (c == tau) continue;
    if (c.dim() == 1) base_rays.push_back(c);
    if (c.dim() == 2) base_edges.push_back(c);
  }

  std::set<IntVec> rays;
  std::set<std::pair<IntVec, IntVec>> edges;
  for (int k = -k_max; k <= k_max; ++k) {
    IntMat ak = mat_pow(d.a.mat(), k);
    for (const Cone& c : base_rays) rays.insert(ak * c.gens[0]);
    for (const Cone& c : base_edges) {
      Cone img = apply(ak, c);
      edges.insert({img.gens[0], img.gens[1]});
    }
  }

  std::set<IntVec> tau_p_rays;  // rays inside tau_{P(A)}: the e_k, k in P
  for (int k : d.a.pa().p) {
    IntVec e(n, Int(0));
    e[k] = 1;
    tau_p_rays.insert(e);
  }

  auto components = [&](bool include_tau_p) {
    std::vector<IntVec> verts;
    for (const IntVec& r : rays)
      if (include_tau_p || !tau_p_rays.count(r)) verts.push_back(r);
    std::map<IntVec, int> idx;
    for (size_t i = 0; i < verts.size(); ++i) idx[verts[i]] = static_cast<int>(i);
    std::vector<int> parent(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto join = [&](int a, int b) { parent[find(a)] = find(b); };
    for (const auto& [a, b] : edges)
      if (idx.count(a) && idx.count(b)) join(idx[a], idx[b]);
    // the gamma action identifies a ray with its image
    for (const IntVec& r : verts) {
      IntVec img = d.a.mat() * r;
      if (idx.count(img)) join(idx[r], idx[img]);
    }
    std::set<int> roots;
    for (size_t i = 0; i < verts.size(); ++i) roots.insert(find(static_cast<int>(i)));
    return static_cast<int>(roots.size());
  };

  ConnectivityReport rep;
  rep.components_d = components(false);
  rep.components_dt = components(true);
  return rep;
}

MetricVerdicts metric_report(const KatoData& d) {
  MetricVerdicts v;
  v.lck = is_projective(complete_to_pn(d.sigma_hat)).has_value();
  if (d.n() >= 3 && d.a.kind() == KatoKind::Hyperbolic)
    v.pluriclosed = "nonexistent";
  else if (d.n() == 2)
    v.pluriclosed = "unknown (some Kato surfaces admit pluriclosed metrics)";
  else
    v.pluriclosed = "unknown";
  return v;
}

InvariantReport invariant_report(const KatoData& d, int census_depth) {
  InvariantReport rep;
  rep.betti = betti(d);
  rep.euler = euler(d);
  rep.canonical = canonical_report(d);
  rep.sharp_d = rep.canonical.sharp_d;
  rep.sharp_dt = rep.canonical.sharp_dt;
  rep.hodge = hodge(d);
  rep.log_cohomology = log_sheaf_cohomology(d);
  rep.census = curve_census(d, census_depth);
  if (d.a.kind() != KatoKind::Hopf) rep.connectivity = divisor_connectivity(d);
  rep.metrics = metric_report(d);
  return rep;
}

}  // namespace kato
