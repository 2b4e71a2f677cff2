#pragma once

#include "ogaprox/core.hpp"

namespace ogaprox {

struct SpectralNormOptions {
  int max_iter = 200;
  double rel_tol = 1e-12;
  double inflation = 1.001;  // safety factor so the result is an upper bound
};

/// Largest singular value of `a` by power iteration on AᵀA, inflated by
/// options.inflation. Deterministic: the start vector is the all-ones vector
/// plus a fixed ramp (so it is not orthogonal to the top singular vector in
/// the common symmetric cases).
double spectral_norm(const Matrix& a, const SpectralNormOptions& options = {});

/// Smallest-to-largest singular value ratio check used for full-row-rank tests.
bool has_full_row_rank(const Matrix& a, double rel_tol = 1e-8);

}  // namespace ogaprox
