#include "kato/fan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kato/lp.hpp"

namespace kato {

namespace {

bool subset(const std::vector<IntVec>& a, const std::vector<IntVec>& b) {
  // both sorted
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string vec_str(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string cone_str(const Cone& c) {
  std::ostringstream os;
  os << "<";
  for (size_t i = 0; i < c.gens.size(); ++i) os << (i ? "," : "") << vec_str(c.gens[i]);
  os << ">";
  return os.str();
}

}  // namespace

Fan::Fan(int ambient, std::vector<Cone> cones) : ambient_(ambient) {
  for (const Cone& c : cones)
    if (c.ambient != ambient) throw std::invalid_argument("Fan: ambient dimension mismatch");
  std::sort(cones.begin(), cones.end());
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  for (size_t i = 0; i < cones.size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; j < cones.size() && maximal; ++j)
      if (i != j && subset(cones[i].gens, cones[j].gens)) maximal = false;
    if (maximal) max_.push_back(cones[i]);
  }
}

std::vector<Cone> Fan::all_faces() const {
  std::set<Cone> faces;
  faces.insert(Cone::make(ambient_, {}));
  for (const Cone& c : max_) {
    int k = c.dim();
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      std::vector<IntVec> gens;
      for (int i = 0; i < k; ++i)
        if (mask & (1u << i)) gens.push_back(c.gens[i]);
      faces.insert(Cone::make(ambient_, std::move(gens)));
    }
  }
  return {faces.begin(), faces.end()};
}

std::vector<IntVec> Fan::rays() const {
  std::set<IntVec> r;
  for (const Cone& c : max_) r.insert(c.gens.begin(), c.gens.end());
  return {r.begin(), r.end()};
}

std::vector<long> Fan::cone_counts() const {
  std::vector<long> counts(ambient_ + 1, 0);
  for (const Cone& c : all_faces()) counts[c.dim()] += 1;
  return counts;
}

bool Fan::pure(int d) const {
  return std::all_of(max_.begin(), max_.end(), [d](const Cone& c) { return c.dim() == d; });
}

bool Fan::contains_cone(const Cone& c) const {
  if (c.dim() == 0) return true;
  return std::any_of(max_.begin(), max_.end(),
                     [&](const Cone& m) { return subset(c.gens, m.gens); });
}

FanReport fan_validate(const Fan& f) {
  FanReport rep;
  for (const Cone& c : f.max_cones()) {
    if (!cone_gens_primitive(c)) {
      rep.message = "non-primitive generator in " + cone_str(c);
      return rep;
    }
    if (!cone_gens_independent(c)) {
      rep.message = "dependent generators in " + cone_str(c);
      return rep;
    }
  }
  const auto& mc = f.max_cones();
  for (size_t i = 0; i < mc.size(); ++i)
    for (size_t j = i + 1; j < mc.size(); ++j)
      if (!cones_compatible(mc[i], mc[j])) {
        rep.message = "incompatible cones " + cone_str(mc[i]) + " and " + cone_str(mc[j]);
        return rep;
      }
  rep.ok = true;
  rep.counts = f.cone_counts();
  rep.all_regular = std::all_of(mc.begin(), mc.end(), cone_regular);
  return rep;
}

Fan c0_fan(int n) {
  std::vector<IntVec> gens;
  for (int i = 0; i < n; ++i) {
    IntVec e(n, Int(0));
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return Fan(n, {Cone::make(n, std::move(gens))});
}

Fan star_subdivide(const Fan& f, const IntVec& v) {
  if (!is_primitive(v)) throw std::invalid_argument("star_subdivide: v not primitive");
  std::vector<Cone> out;
  bool hit = false;
  for (const Cone& c : f.max_cones()) {
    if (cone_contains(c, v) == Region::Outside) {
      out.push_back(c);
      continue;
    }
    hit = true;
    // coordinates of v in the generator basis; support = positive coords
    RatMat m(c.ambient, c.dim());
    for (int j = 0; j < c.dim(); ++j)
      for (int i = 0; i < c.ambient; ++i) m.at(i, j) = Rat(c.gens[j][i]);
    auto coords = rat_solve(m, to_rat(v));
    for (int g = 0; g < c.dim(); ++g) {
      if ((*coords)[g] == 0) continue;
      std::vector<IntVec> gens;
      for (int k = 0; k < c.dim(); ++k)
        if (k != g) gens.push_back(c.gens[k]);
      gens.push_back(v);
      out.push_back(Cone::make(c.ambient, std::move(gens)));
    }
  }
  if (!hit) throw std::invalid_argument("star_subdivide: v outside the support");
  return Fan(f.ambient(), std::move(out));
}

namespace {

// Section volume of a full-dimensional simplicial cone against a functional
// w positive on its generators: |det| / prod <w, g_i>. Additive over fans.
Rat section_volume(const Cone& c, const IntVec& w) {
  Rat vol(abs(det(IntMat::from_cols(c.gens))));
  for (const IntVec& g : c.gens) {
    Int p = dot(w, g);
    if (p <= 0) throw std::logic_error("section_volume: functional not positive");
    vol /= Rat(p);
  }
  return vol;
}

std::optional<IntVec> positive_functional(const std::vector<IntVec>& gens, int n) {
  IntVec w(n, Int(0));
  for (const IntVec& g : gens) w = add(w, g);
  if (std::all_of(gens.begin(), gens.end(), [&](const IntVec& g) { return dot(w, g) > 0; }))
    return w;
  std::vector<LinearConstraint> ineqs;
  for (const IntVec& g : gens) ineqs.push_back({to_rat(g), Rat(1)});
  auto sol = lp_feasible({}, ineqs);
  if (!sol) return std::nullopt;
  Int l = 1;
  for (const Rat& q : *sol) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  for (int i = 0; i < n; ++i) {
    Rat q = (*sol)[i] * Rat(l);
    w[i] = q.get_num();
  }
  return w;
}

}  // namespace

Fan remove_ray(const Fan& f, const IntVec& v) {
  int n = f.ambient();
  auto rays = f.rays();
  if (!std::binary_search(rays.begin(), rays.end(), v))
    throw std::invalid_argument("remove_ray: not a ray of the fan");

  std::vector<Cone> star, rest;
  for (const Cone& c : f.max_cones())
    (c.has_gen(v) ? star : rest).push_back(c);
  for (const Cone& c : star)
    if (c.dim() != n)
      throw std::invalid_argument("remove_ray: star has a non-full-dimensional cone");

  std::set<IntVec> link_set;
  for (const Cone& c : star)
    for (const IntVec& g : c.gens)
      if (g != v) link_set.insert(g);
  std::vector<IntVec> link(link_set.begin(), link_set.end());

  std::vector<IntVec> wgens = link;
  wgens.push_back(v);
  auto w = positive_functional(wgens, n);
  if (!w) throw std::invalid_argument("remove_ray: star region is not pointed");
  Rat target(0);
  for (const Cone& c : star) target += section_volume(c, *w);

  // Candidate replacement cones: independent n-subsets of the link rays.
  std::vector<Cone> cands;
  int r = static_cast<int>(link.size());
  if (r >= n) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (;;) {
      std::vector<IntVec> gens;
      for (int i : idx) gens.push_back(link[i]);
      Cone c = Cone::make(n, std::move(gens));
      if (det(IntMat::from_cols(c.gens)) != 0) cands.push_back(c);
      int i = n - 1;
      while (i >= 0 && idx[i] == r - n + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  std::sort(cands.begin(), cands.end());

  // Search exact-volume collections, smallest first, then lexicographic.
  std::vector<Cone> chosen;
  std::optional<Fan> found;
  auto dfs = [&](auto&& self, size_t start, const Rat& vol, size_t want) -> bool {
    if (vol == target && chosen.size() == want) {
      std::vector<Cone> all = rest;
      all.insert(all.end(), chosen.begin(), chosen.end());
      Fan cand(n, all);
      if (fan_validate(cand).ok) {
        found = cand;
        return true;
      }
      return false;
    }
    if (chosen.size() >= want || vol >= target) return false;
    for (size_t i = start; i < cands.size(); ++i) {
      bool comp = std::all_of(chosen.begin(), chosen.end(),
                              [&](const Cone& c) { return cones_compatible(c, cands[i]); });
      if (!comp) continue;
      chosen.push_back(cands[i]);
      if (self(self, i + 1, vol + section_volume(cands[i], *w), want)) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (size_t want = 1; want <= star.size() && !found; ++want) {
    chosen.clear();
    dfs(dfs, 0, Rat(0), want);
  }
  if (!found)
    throw std::invalid_argument("remove_ray: no valid merge of the star of " + vec_str(v));
  return *found;
}

Fan regularize(const Fan& f, long max_steps) {
  Fan cur = f;
  for (long step = 0; step <= max_steps; ++step) {
    const Cone* bad = nullptr;
    for (const Cone& c : cur.max_cones())
      if (!cone_regular(c)) { bad = &c; break; }
    if (!bad) return cur;
    IntVec b(cur.ambient(), Int(0));
    for (const IntVec& g : bad->gens) b = add(b, g);
    cur = star_subdivide(cur, primitive(b));
  }
  throw std::runtime_error("regularize: step cap exceeded");
}

bool refines(const Fan& fine, const Fan& coarse) {
  if (fine.ambient() != coarse.ambient())
    throw std::invalid_argument("refines: ambient dimension mismatch");
  int n = fine.ambient();
  if (!fine.pure(n) || !coarse.pure(n))
    throw std::invalid_argument("refines: fans must be pure full-dimensional");

  for (const Cone& c : fine.max_cones()) {
    bool inside = std::any_of(coarse.max_cones().begin(), coarse.max_cones().end(),
                              [&](const Cone& big) {
                                return std::all_of(c.gens.begin(), c.gens.end(),
                                                   [&](const IntVec& g) {
                                                     return cone_contains(big, g) != Region::Outside;
                                                   });
                              });
    if (!inside) return false;
  }
  // |fine| subset of |coarse| now; equality by section volume.
  std::vector<IntVec> gens;
  for (const Fan* f : {&fine, &coarse})
    for (const Cone& c : f->max_cones()) gens.insert(gens.end(), c.gens.begin(), c.gens.end());
  auto w = positive_functional(gens, n);
  if (!w) {
    if (is_complete(fine) && is_complete(coarse)) return true;
    throw std::invalid_argument("refines: supports are not pointed");
  }
  Rat vf(0), vc(0);
  for (const Cone& c : fine.max_cones()) vf += section_volume(c, *w);
  for (const Cone& c : coarse.max_cones()) vc += section_volume(c, *w);
  return vf == vc;
}

namespace {

std::map<Cone, std::vector<int>> facet_incidence(const Fan& f) {
  std::map<Cone, std::vector<int>> facets;
  const auto& mc = f.max_cones();
  for (size_t i = 0; i < mc.size(); ++i) {
    const Cone& c = mc[i];
    for (int skip = 0; skip < c.dim(); ++skip) {
      std::vector<IntVec> gens;
      for (int k = 0; k < c.dim(); ++k)
        if (k != skip) gens.push_back(c.gens[k]);
      facets[Cone::make(f.ambient(), std::move(gens))].push_back(static_cast<int>(i));
    }
  }
  return facets;
}

}  // namespace

bool is_complete(const Fan& f) {
  int n = f.ambient();
  if (f.max_cones().empty()) return false;
  if (!f.pure(n)) throw std::invalid_argument("is_complete: fan is not pure full-dimensional");

  auto facets = facet_incidence(f);
  size_t k = f.max_cones().size();
  std::vector<std::vector<int>> adj(k);
  for (const auto& [facet, owners] : facets) {
    if (owners.size() != 2) return false;
    adj[owners[0]].push_back(owners[1]);
    adj[owners[1]].push_back(owners[0]);
  }
  std::vector<bool> seen(k, false);
  std::vector<int> stack{0};
  seen[0] = true;
  size_t cnt = 0;
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    ++cnt;
    for (int nb : adj[c])
      if (!seen[nb]) {
        seen[nb] = true;
        stack.push_back(nb);
      }
  }
  return cnt == k;
}

std::optional<ProjectivityWitness> is_projective(const Fan& f) {
  if (!is_complete(f)) throw std::invalid_argument("is_projective: fan must be complete");
  int n = f.ambient();
  const auto& mc = f.max_cones();
  int k = static_cast<int>(mc.size());
  int nvars = k * n;

  std::vector<LinearConstraint> eqs, ineqs;
  auto form = [&](int cone_idx, const IntVec& g, Rat sign, RatVec& row) {
    for (int j = 0; j < n; ++j) row[cone_idx * n + j] += sign * Rat(g[j]);
  };

  for (const auto& [facet, owners] : facet_incidence(f)) {
    for (const IntVec& g : facet.gens) {
      RatVec row(nvars, Rat(0));
      form(owners[0], g, Rat(1), row);
      form(owners[1], g, Rat(-1), row);
      eqs.push_back({std::move(row), Rat(0)});
    }
  }

  std::map<IntVec, int> home;  // ray -> some maximal cone containing it
  for (int i = 0; i < k; ++i)
    for (const IntVec& g : mc[i].gens)
      if (!home.count(g)) home[g] = i;
  for (int i = 0; i < k; ++i)
    for (const auto& [ray, owner] : home) {
      if (mc[i].has_gen(ray)) continue;
      // <m_home - m_i, ray> >= 1: strict convexity across cones
      RatVec row(nvars, Rat(0));
      form(owner, ray, Rat(1), row);
      form(i, ray, Rat(-1), row);
      ineqs.push_back({std::move(row), Rat(1)});
    }

  auto sol = lp_feasible(eqs, ineqs);
  if (!sol) return std::nullopt;
  ProjectivityWitness wit;
  for (int i = 0; i < k; ++i) {
    RatVec m(n);
    for (int j = 0; j < n; ++j) m[j] = (*sol)[i * n + j];
    wit.forms.push_back(std::move(m));
  }

  // Re-verify the witness independently of the LP bookkeeping.
  auto value = [&](int i, const IntVec& g) {
    Rat s(0);
    for (int j = 0; j < n; ++j) s += wit.forms[i][j] * Rat(g[j]);
    return s;
  };
  for (const auto& [ray, owner] : home) {
    Rat v0 = value(owner, ray);
    for (int i = 0; i < k; ++i) {
      if (mc[i].has_gen(ray)) {
        if (value(i, ray) != v0) throw std::logic_error("is_projective: inconsistent witness");
      } else if (value(i, ray) > v0 - 1) {
        throw std::logic_error("is_projective: witness not strictly convex");
      }
    }
  }
  return wit;
}

Fan complete_to_pn(const Fan& f) {
  int n = f.ambient();
  if (!refines(f, c0_fan(n)))
    throw std::invalid_argument("complete_to_pn: fan is not a refinement of the C^n fan");
  IntVec e0(n, Int(-1));
  std::vector<Cone> cones = f.max_cones();
  for (int skip = 0; skip < n; ++skip) {
    std::vector<IntVec> gens{e0};
    for (int i = 0; i < n; ++i) {
      if (i == skip) continue;
      IntVec e(n, Int(0));
      e[i] = 1;
      gens.push_back(std::move(e));
    }
    cones.push_back(Cone::make(n, std::move(gens)));
  }
  return Fan(n, std::move(cones));
}

Fan apply(const IntMat& m, const Fan& f) {
  std::vector<Cone> cones;
  for (const Cone& c : f.max_cones()) cones.push_back(apply(m, c));
  return Fan(m.rows(), std::move(cones));
}

}  // namespace kato
