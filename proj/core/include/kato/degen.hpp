#pragma once

#include <optional>
#include <string>

#include "kato/kato_data.hpp"

namespace kato {

enum class DegenKind { Nakamura, Isotrivial };

struct DegenerationFan {
  int ambient = 0;        // n + 1
  IntMat atilde;          // the extended action on N + Ze
  Fan truncation;         // finite window of the infinite fan
  Fan central_fiber;      // Sigma_c or Sigma_u, complete fan in Z^n
  DegenKind kind = DegenKind::Nakamura;
  std::optional<IntVec> u;
  std::optional<IntVec> v;  // solves Au = Av - v (isotrivial)
  bool smooth = false;      // central fiber regular everywhere
};

/// One-parameter toric family degenerating the Kato manifold to two glued
/// hypersurfaces of the blown-up completed modification.
DegenerationFan nakamura_fan(const KatoData& d, int window = 3);

struct IsotrivialU {
  std::optional<IntVec> u;            // primitive, in Im(id - A) and Int C_0
  std::optional<IntVec> certificate;  // vanishing functional when absent
};

/// A primitive interior lattice vector in Im(id - A), which exists exactly
/// in the hyperbolic case; otherwise the certificate functional that kills
/// the image.
IsotrivialU isotrivial_u(const KatoData& d, long bound = 6);

DegenerationFan isotrivial_fan(const KatoData& d, const IntVec& u, int window = 3);

}  // namespace kato
