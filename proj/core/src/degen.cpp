#include "kato/degen.hpp"

#include <algorithm>
#include <stdexcept>

namespace kato {

namespace {

IntVec ones(int n) { return IntVec(n, Int(1)); }

IntVec lift(const IntVec& v, const Int& last) {
  IntVec w = v;
  w.push_back(last);
  return w;
}

// Maximal cones of Sigma~_0: one prism cone per top cone of the punctured
// modification fan, and one wedge per facet of C_0 reaching back to nu_{-1}.
std::vector<Cone> sigma_tilde0(const KatoData& d, const IntVec& nu0, const IntVec& nu_m1) {
  int n = d.n();
  Cone tau = d.tau_a();
  std::vector<Cone> cones;
  for (const Cone& c : d.sigma_hat.max_cones()) {
    if (c == tau) continue;
    std::vector<IntVec> gens;
    for (const IntVec& g : c.gens) gens.push_back(lift(g, 0));
    gens.push_back(nu0);
    cones.push_back(Cone::make(n + 1, std::move(gens)));
  }
  for (int skip = 0; skip < n; ++skip) {
    std::vector<IntVec> gens;
    for (int i = 0; i < n; ++i) {
      if (i == skip) continue;
      IntVec e(n, Int(0));
      e[i] = 1;
      gens.push_back(lift(e, 0));
    }
    gens.push_back(nu0);
    gens.push_back(nu_m1);
    cones.push_back(Cone::make(n + 1, std::move(gens)));
  }
  return cones;
}

Fan truncate(const IntMat& atilde, const std::vector<Cone>& base, int window, int ambient) {
  std::vector<Cone> cones;
  for (int k = -window; k <= window; ++k) {
    IntMat ak = mat_pow(atilde, k);
    for (const Cone& c : base) cones.push_back(apply(ak, c));
  }
  return Fan(ambient, std::move(cones));
}

// Completion cones glued to the punctured fan along the boundary facets.
std::vector<Cone> central_cones(const KatoData& d, const IntVec& ray_out, const IntVec& ray_in) {
  // ray_out spans the cones A tau_J (image side), ray_in the -side
  int n = d.n();
  Cone tau = d.tau_a();
  std::vector<Cone> cones;
  for (const Cone& c : d.sigma_hat.max_cones())
    if (!(c == tau)) cones.push_back(c);
  for (int skip = 0; skip < n; ++skip) {
    std::vector<IntVec> gens_out{ray_out}, gens_in{ray_in};
    for (int i = 0; i < n; ++i) {
      if (i == skip) continue;
      IntVec e(n, Int(0));
      e[i] = 1;
      gens_out.push_back(d.a.mat() * e);
      gens_in.push_back(e);
    }
    cones.push_back(Cone::make(n, std::move(gens_out)));
    cones.push_back(Cone::make(n, std::move(gens_in)));
  }
  return cones;
}

}  // namespace

DegenerationFan nakamura_fan(const KatoData& d, int window) {
  int n = d.n();
  IntVec c = ones(n);
  IntVec ac = d.a.mat() * c;

  DegenerationFan out;
  out.ambient = n + 1;
  out.kind = DegenKind::Nakamura;
  out.atilde = IntMat(n + 1, n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.atilde.at(i, j) = d.a.mat().at(i, j);
  for (int i = 0; i < n; ++i) out.atilde.at(i, n) = ac[i];
  out.atilde.at(n, n) = 1;

  IntVec nu0(n + 1, Int(0));
  nu0[n] = 1;
  IntVec nu_m1 = inverse_unimodular(out.atilde) * nu0;  // = (-c, 1)
  out.truncation = truncate(out.atilde, sigma_tilde0(d, nu0, nu_m1), window, n + 1);

  IntVec minus_c(n, Int(-1));
  out.central_fiber = Fan(n, central_cones(d, ac, minus_c));
  out.smooth = fan_validate(out.central_fiber).all_regular;
  out.u = c;
  return out;
}

IsotrivialU isotrivial_u(const KatoData& d, long bound) {
  int n = d.n();
  IsotrivialU res;
  if (d.a.kind() != KatoKind::Hyperbolic) {
    IntVec cert(n, Int(0));
    if (d.a.kind() == KatoKind::Parabolic)
      cert[d.a.p_complement()[0]] = 1;  // Im(id - A) lies in ker e_j^*
    else
      cert = ones(n);  // permutation case: the coordinate-sum functional
    res.certificate = cert;
    return res;
  }

  IntMat id_minus_a = IntMat::identity(n) - d.a.mat();
  auto in_image = [&](const IntVec& u) { return solve_diophantine(id_minus_a, u).has_value(); };

  IntVec c = ones(n);
  if (in_image(c)) {
    res.u = c;
    return res;
  }

  // constructive vector (A^l - id)(e_j + e_k) for j, k outside P(A)
  auto pc = d.a.p_complement();
  IntVec ejk(n, Int(0));
  ejk[pc[0]] = 1;
  ejk[pc[1]] += 1;
  for (int l = 1; l <= 64 * std::max(1, d.a.pa().m0) * d.a.order_s(); ++l) {
    IntVec w = sub(mat_pow(d.a.mat(), l) * ejk, ejk);
    if (!std::all_of(w.begin(), w.end(), [](const Int& x) { return x > 0; })) continue;
    IntVec u0 = primitive(w);
    if (in_image(u0)) {
      res.u = u0;
      return res;
    }
    break;
  }

  // smallest sup-norm primitive interior point of the image lattice
  for (long b = 1; b <= bound; ++b) {
    std::vector<IntVec> found;
    IntVec u(n, Int(1));
    for (;;) {
      bool on_shell = std::any_of(u.begin(), u.end(), [&](const Int& x) { return x == b; });
      if (on_shell && is_primitive(u) && in_image(u)) found.push_back(u);
      int i = 0;
      while (i < n && u[i] == b) u[i++] = 1;
      if (i == n) break;
      u[i] += 1;
    }
    if (!found.empty()) {
      res.u = *std::min_element(found.begin(), found.end());
      return res;
    }
  }
  throw std::runtime_error("isotrivial_u: no primitive interior image vector within bound");
}

DegenerationFan isotrivial_fan(const KatoData& d, const IntVec& u, int window) {
  int n = d.n();
  if (static_cast<int>(u.size()) != n || !is_primitive(u))
    throw std::invalid_argument("isotrivial_fan: u must be primitive of the right dimension");
  if (!std::all_of(u.begin(), u.end(), [](const Int& x) { return x > 0; }))
    throw std::invalid_argument("isotrivial_fan: u must be interior to C_0");
  IntVec au = d.a.mat() * u;
  IntMat a_minus_id = d.a.mat() - IntMat::identity(n);
  auto sol = solve_diophantine(a_minus_id, au);
  if (!sol) throw std::invalid_argument("isotrivial_fan: u is not in Im(id - A)");

  // pick v = particular + kernel combo with minimal sup-norm, lex tie-break
  IntVec best = sol->particular;
  auto sup = [](const IntVec& v) {
    Int m = 0;
    for (const Int& x : v)
      if (abs(x) > m) m = abs(x);
    return m;
  };
  if (!sol->kernel.empty()) {
    int k = static_cast<int>(sol->kernel.size());
    std::vector<int> t(k, -3);
    for (;;) {
      IntVec v = sol->particular;
      for (int i = 0; i < k; ++i)
        if (t[i] != 0) v = add(v, scale(Int(t[i]), sol->kernel[i]));
      if (sup(v) < sup(best) || (sup(v) == sup(best) && v < best)) best = v;
      int i = 0;
      while (i < k && t[i] == 3) t[i++] = -3;
      if (i == k) break;
      ++t[i];
    }
  }
  IntVec v = best;

  DegenerationFan out;
  out.ambient = n + 1;
  out.kind = DegenKind::Isotrivial;
  out.u = u;
  out.v = v;
  out.atilde = IntMat(n + 1, n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.atilde.at(i, j) = d.a.mat().at(i, j);
  out.atilde.at(n, n) = 1;  // A~' e = e

  IntVec nu0 = lift(v, 1);
  IntVec nu_m1 = lift(inverse_unimodular(d.a.mat()) * v, 1);
  out.truncation = truncate(out.atilde, sigma_tilde0(d, nu0, nu_m1), window, n + 1);

  IntVec minus_u(n);
  for (int i = 0; i < n; ++i) minus_u[i] = -u[i];
  out.central_fiber = Fan(n, central_cones(d, au, minus_u));

  bool all_regular = fan_validate(out.central_fiber).all_regular;
  bool u_is_c = u == ones(n);
  if (all_regular != u_is_c)
    throw std::logic_error("isotrivial_fan: smoothness flag disagrees with cone regularity");
  out.smooth = u_is_c;
  return out;
}

}  // namespace kato
