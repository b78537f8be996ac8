#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kato/cone.hpp"

namespace kato {

/// Finite simplicial fan, stored by its maximal cones in canonical order.
/// Construction dedupes and drops cones that are faces of others; validity
/// (pairwise compatibility etc.) is checked separately by fan_validate.
class Fan {
 public:
  Fan() = default;
  Fan(int ambient, std::vector<Cone> cones);

  int ambient() const { return ambient_; }
  const std::vector<Cone>& max_cones() const { return max_; }
  bool operator==(const Fan&) const = default;

  std::vector<Cone> all_faces() const;  // including the zero cone
  std::vector<IntVec> rays() const;     // sorted primitive generators
  std::vector<long> cone_counts() const;  // a_0..a_n indexed by dimension
  bool pure(int d) const;
  bool contains_cone(const Cone& c) const;  // face of some maximal cone

 private:
  int ambient_ = 0;
  std::vector<Cone> max_;
};

struct FanReport {
  bool ok = false;
  std::string message;          // first violation when not ok
  std::vector<long> counts;     // a_0..a_n
  bool all_regular = false;
};

FanReport fan_validate(const Fan& f);

/// Fan of C^n: the positive orthant and its faces.
Fan c0_fan(int n);

/// Replace every cone containing v by the joins of its faces missing v
/// with the new ray. v must be primitive and lie in the support.
Fan star_subdivide(const Fan& f, const IntVec& v);

/// Coarsest valid re-triangulation of the star of v that omits the ray v.
/// Errors when v is not a ray or when no valid merge exists.
Fan remove_ray(const Fan& f, const IntVec& v);

/// Iterated star subdivision at primitive barycenters until every cone is
/// regular. Throws past the step cap.
Fan regularize(const Fan& f, long max_steps = 10000);

/// True iff supports are equal and every cone of fine sits inside a cone of
/// coarse. Both fans must be valid and pure of full dimension.
bool refines(const Fan& fine, const Fan& coarse);

/// Every (n-1)-face belongs to exactly two maximal cones and the adjacency
/// graph is connected.
bool is_complete(const Fan& f);

struct ProjectivityWitness {
  // One linear functional per maximal cone, in the order of max_cones().
  std::vector<RatVec> forms;
};

/// Strictly convex support function via exact LP; absence is exact too.
std::optional<ProjectivityWitness> is_projective(const Fan& f);

/// Adjoin e_0 = -(1,...,1) and the cones <e_0> + tau_J over proper subsets
/// of the standard rays. Input must refine the C^n fan.
Fan complete_to_pn(const Fan& f);

Fan apply(const IntMat& m, const Fan& f);

}  // namespace kato
