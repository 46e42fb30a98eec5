#pragma once

// Frozen regression floors for the suspension's submersion margin.
//
// Measured with the default differencing step 1e-5 on the extreme rings
// |t| = 0.99: min sigma_{n+1} = 5.84e-21, identically for n = 2, 4, 8
// (the minimum is set by the radial bump profile, which does not depend
// on n).  The committed floor keeps a ~6x margin.  A run dipping below it
// means the smoothing profile, the normalization, or the differencing
// scheme changed behaviour, not that the inputs were unlucky.

#include "hopfcrit/hopf.hpp"

namespace hopfcrit {

inline constexpr double kOffpoleSigmaFloorMeasured = 5.84e-21;

inline double offpole_sigma_floor(int n) {
  require_hopf_n(n);
  return 1e-21;
}

/// Secondary guard: min sigma_{n+1}/sigma_1 over |t| <= 0.99 measured at
/// 2.0e-2; anything under this would make the criticality tolerance 1e-6
/// start flagging regular points.
inline double offpole_ratio_floor(int n) {
  require_hopf_n(n);
  return 1e-3;
}

}  // namespace hopfcrit
