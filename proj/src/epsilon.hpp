#pragma once

#include <cstdint>

namespace scfr {

/// One knob set for every tolerance in the pipeline.  All comparisons in the
/// library reference a profile instance rather than ad-hoc literals.
struct EpsilonProfile {
  double unit = 1e-12;        // |value| == 1 slack for unit complexes
  double zero = 1e-9;         // character-sum zero test (X membership, amplitude kind)
  double structural = 1e-10;  // algebraic identities (coefficient sums, pair norm)
  double eig = 1e-8;          // eigensolver comparisons and oracle agreement
  double phase = 1e-9;        // unit-phase equality in revival conditions
  double residual = 1e-8;     // row / matrix residuals for certificates
  double integral = 1e-9;     // integer-rounding tolerance for eigenvalues
  int64_t oracle_cap = 512;   // max matrix order accepted by the dense oracle
};

}  // namespace scfr
