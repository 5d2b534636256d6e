#pragma once

#include <cstdint>

#include "pradar/types.hpp"

namespace pradar::numerics {

/// Standard Kronecker product: out((i*rB + k), (j*cB + l)) = A(i, j) * B(k, l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Deterministic decorrelated stream seed (SplitMix64 step). Restarts,
/// schemes and sweeps derive their generators from one base seed through
/// this so that runs are reproducible bit for bit.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

struct EigenPair {
  double value = 0.0;
  ComplexVector vector;
  int iterations = 0;
};

/// Strongest eigenpair of a Hermitian PSD matrix by power iteration.
///
/// Starts from the normalized all-ones vector and applies a small
/// deterministic perturbation on stagnation, so the result is reproducible.
/// Returns with ||H v - lambda v|| <= tol * lambda (or lambda = 0 and the
/// start vector when ||H|| <= tol). The returned vector is unit norm with its
/// largest component rotated to the positive real axis. Throws on non-square
/// or visibly non-Hermitian input, and on non-convergence within max_iter.
EigenPair top_hermitian_eigenpair(const ComplexMatrix& h, double tol = 1e-10,
                                  int max_iter = 10000);

}  // namespace pradar::numerics
