#include "kato/cone.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "kato/lp.hpp"

namespace kato {

IntVec primitive(const IntVec& v) {
  Int g = vec_gcd(v);
  if (g == 0) throw std::invalid_argument("primitive: zero vector");
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) mpz_divexact(r[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return r;
}

bool is_primitive(const IntVec& v) { return vec_gcd(v) == 1; }

Cone Cone::make(int ambient, std::vector<IntVec> gens) {
  for (const IntVec& g : gens)
    if (static_cast<int>(g.size()) != ambient)
      throw std::invalid_argument("Cone::make: generator dimension mismatch");
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return Cone{ambient, std::move(gens)};
}

bool Cone::has_gen(const IntVec& v) const {
  return std::binary_search(gens.begin(), gens.end(), v);
}

bool cone_gens_primitive(const Cone& c) {
  return std::all_of(c.gens.begin(), c.gens.end(), [](const IntVec& g) { return is_primitive(g); });
}

bool cone_gens_independent(const Cone& c) {
  if (c.gens.empty()) return true;
  RatMat m(c.ambient, c.dim());
  for (int j = 0; j < c.dim(); ++j)
    for (int i = 0; i < c.ambient; ++i) m.at(i, j) = Rat(c.gens[j][i]);
  return rat_rank(m) == c.dim();
}

bool cone_regular(const Cone& c) {
  int k = c.dim(), n = c.ambient;
  if (k == 0) return true;
  if (k == n) {
    Int d = det(IntMat::from_cols(c.gens));
    return d == 1 || d == -1;
  }
  // gcd over all k x k minors of the n x k generator matrix
  IntMat m = IntMat::from_cols(c.gens);
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  Int g = 0;
  for (;;) {
    IntMat sub(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub.at(i, j) = m.at(idx[i], j);
    Int d = det(sub);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    if (g == 1) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return g == 1;
}

namespace {

Region contains_impl(const Cone& c, const RatVec& v) {
  // Unique rational coordinates of v in the span of the generators.
  RatMat m(c.ambient, c.dim());
  for (int j = 0; j < c.dim(); ++j)
    for (int i = 0; i < c.ambient; ++i) m.at(i, j) = Rat(c.gens[j][i]);
  auto coords = rat_solve(m, v);
  if (!coords) return Region::Outside;
  bool all_pos = true;
  for (const Rat& x : *coords) {
    if (x < 0) return Region::Outside;
    if (x == 0) all_pos = false;
  }
  if (c.dim() == 0) return Region::Boundary;  // only v = 0 reaches here
  return all_pos ? Region::Interior : Region::Boundary;
}

}  // namespace

Region cone_contains(const Cone& c, const IntVec& v) { return contains_impl(c, to_rat(v)); }
Region cone_contains(const Cone& c, const RatVec& v) { return contains_impl(c, v); }

bool cones_compatible(const Cone& c1, const Cone& c2) {
  if (c1.ambient != c2.ambient)
    throw std::invalid_argument("cones_compatible: ambient dimension mismatch");
  std::set<IntVec> shared;
  for (const IntVec& g : c1.gens)
    if (c2.has_gen(g)) shared.insert(g);
  if (shared.size() == c1.gens.size() && shared.size() == c2.gens.size()) return true;

  std::vector<LinearConstraint> eqs, ineqs;
  auto row = [&](const IntVec& g) {
    RatVec r(g.size());
    for (size_t i = 0; i < g.size(); ++i) r[i] = Rat(g[i]);
    return r;
  };
  for (const IntVec& g : shared) eqs.push_back({row(g), Rat(0)});
  for (const IntVec& g : c1.gens)
    if (!shared.count(g)) ineqs.push_back({row(g), Rat(1)});
  for (const IntVec& g : c2.gens)
    if (!shared.count(g)) {
      RatVec r = row(g);
      for (Rat& x : r) x = -x;
      ineqs.push_back({std::move(r), Rat(1)});  // <l,g> <= -1
    }
  return lp_feasible(eqs, ineqs).has_value();
}

Cone apply(const IntMat& m, const Cone& c) {
  std::vector<IntVec> gens;
  gens.reserve(c.gens.size());
  for (const IntVec& g : c.gens) gens.push_back(m * g);
  return Cone::make(m.rows(), std::move(gens));
}

}  // namespace kato
