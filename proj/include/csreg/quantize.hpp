#pragma once

// Closed-form scalar quantizers. Both solve min ||w - levels||_2^2 over the
// indicated level family exactly; the oracle variant recomputes the ternary
// answer by brute enumeration so the two routes can be compared.

#include "csreg/core.hpp"

namespace csreg {

struct QuantResult {
  DenseVector levels;
  double scale = 0.0;      // common magnitude of the nonzero levels
  double threshold = 0.0;  // magnitudes below this quantize to zero
  double objective = 0.0;  // ||w - levels||_2^2
};

// Nearest vector with entries in {-a, +a}, a free. Zeros map to +a.
QuantResult binarize(const DenseVector& w);

// Nearest vector with entries in {-a, 0, +a}, a free. The threshold is
// chosen among the distinct nonzero magnitudes of w; ties pick the larger
// threshold (sparser answer).
QuantResult ternarize(const DenseVector& w);

// Same problem solved by scoring every candidate support directly.
QuantResult ternarize_oracle(const DenseVector& w);

}  // namespace csreg
