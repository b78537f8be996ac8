#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kato/kato_data.hpp"

namespace kato {

/// b_0..b_{2n} of the Kato manifold from the cone counts of its
/// modification fan.
std::vector<Int> betti(const KatoData& d);

/// Euler characteristic a_n - 1.
Int euler(const KatoData& d);

enum class HodgeStatus { Exact, ConditionalParabolic, NotComputed };

struct HodgeTable {
  HodgeStatus status = HodgeStatus::NotComputed;
  // h[p][q]; -1 marks entries outside the proved range
  std::vector<std::vector<long>> h;
};

HodgeTable hodge(const KatoData& d);

struct LogCohomology {
  long h0 = 0;                  // dim ker(A - id), both sheaves
  std::optional<long> h1;      // hyperbolic only: dim coker(A - id)
  bool higher_vanish = false;   // hyperbolic only: h^{>=2} = 0
};

LogCohomology log_sheaf_cohomology(const KatoData& d);

struct CanonicalReport {
  int det_sign = 1;
  long sharp_d = 0;    // a_1 - n
  long sharp_dt = 0;   // sharp_d + number of cycles of s
  std::string bundle;  // canonical bundle statement
  std::string kodaira; // always negative
};

CanonicalReport canonical_report(const KatoData& d);

struct CensusResult {
  long elliptic = 0;
  long rational = 0;
  int depth = 0;
  // Hopf with nontrivial permutation: the elliptic count is the orbit count
  // of s, which the classification theorem does not pin down per curve.
  bool hopf_orbit_caveat = false;
};

CensusResult curve_census(const KatoData& d, int depth = 2);

struct ConnectivityReport {
  int components_d = 1;
  int components_dt = 1;
};

/// Closed-form component counts (n >= 3 always connected; n = 2 by type
/// and det A). Rejects Hopf data.
ConnectivityReport divisor_connectivity(const KatoData& d);

/// Component counts recomputed from the dual graph of a finite truncation
/// of the infinite fan, for cross-checking the closed form.
ConnectivityReport divisor_connectivity_truncated(const KatoData& d, int window = 3);

struct MetricVerdicts {
  bool lck = false;
  std::string balanced = "nonexistent";
  std::string strongly_gauduchon = "nonexistent";
  std::string hermitian_symplectic = "nonexistent";
  std::string pluriclosed;
};

MetricVerdicts metric_report(const KatoData& d);

struct InvariantReport {
  std::vector<Int> betti;
  Int euler;
  long sharp_d = 0;
  long sharp_dt = 0;
  HodgeTable hodge;
  LogCohomology log_cohomology;
  CanonicalReport canonical;
  CensusResult census;
  std::optional<ConnectivityReport> connectivity;  // absent for Hopf
  MetricVerdicts metrics;
};

InvariantReport invariant_report(const KatoData& d, int census_depth = 2);

}  // namespace kato
