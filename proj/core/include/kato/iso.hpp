#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kato/kato_data.hpp"

namespace kato {

/// Integer basis of the commutant lattice {Q : QA = BQ}.
std::vector<IntMat> commutant_basis(const IntMat& a, const IntMat& b);

/// The lattice condition Q ell - m in Im(B - id) + Z^n, split into an exact
/// rational-span test on the imaginary part and an affine lattice test on
/// the real part.
bool lambda_condition(const IntMat& q, const std::vector<GaussRat>& ell_x,
                      const std::vector<GaussRat>& ell_y, const IntMat& b);

enum class IsoAnswer { Yes, No, Unknown };

struct IsoVerdict {
  IsoAnswer answer = IsoAnswer::Unknown;
  std::optional<IntMat> witness_q;
  std::optional<long> shift;
  std::string certificate;
};

/// Sound but deliberately incomplete equivariant-isomorphism decision:
/// Yes with a verified witness, No with a Q-independence certificate,
/// otherwise Unknown. shift_bound < 0 selects the default 2 ord(s) + 4.
IsoVerdict find_equivariant_iso(const KatoData& dx, const KatoData& dy,
                                int coeff_bound = 8, int shift_bound = -1);

}  // namespace kato
