#pragma once

#include <vector>

#include "kato/exact.hpp"

namespace kato {

/// v divided by the gcd of its entries. Rejects the zero vector.
IntVec primitive(const IntVec& v);
bool is_primitive(const IntVec& v);

/// Simplicial rational cone spanned by linearly independent primitive
/// generators. Canonical form: generators sorted lexicographically.
struct Cone {
  int ambient = 0;
  std::vector<IntVec> gens;

  static Cone make(int ambient, std::vector<IntVec> gens);
  int dim() const { return static_cast<int>(gens.size()); }
  bool has_gen(const IntVec& v) const;

  auto operator<=>(const Cone&) const = default;
};

enum class Region { Interior, Boundary, Outside };

bool cone_gens_primitive(const Cone& c);
bool cone_gens_independent(const Cone& c);

/// True iff the generators extend to a Z-basis (gcd of maximal minors = 1).
bool cone_regular(const Cone& c);

/// Position of v relative to c: in the relative interior, on the boundary
/// (including 0), or outside.
Region cone_contains(const Cone& c, const IntVec& v);
Region cone_contains(const Cone& c, const RatVec& v);

/// True iff the two cones intersect in a common face. Decided by an exact
/// separation LP: a functional vanishing on the shared generators, >= 1 on
/// the rest of c1 and <= -1 on the rest of c2.
bool cones_compatible(const Cone& c1, const Cone& c2);

Cone apply(const IntMat& m, const Cone& c);

}  // namespace kato
