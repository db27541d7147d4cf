// eigensolver.hpp: Hermitian eigensolver facade.
//
// Dense baseline: Eigen's self-adjoint solver (real symmetric path when the
// matrix has no imaginary part). Extremal path: Lanczos with full
// reorthogonalization on a sparse copy of the matrix, for sweeps that only
// need the bottom of the spectrum of large spaces.
//
// Both paths return eigenvectors with the largest-magnitude component real
// and positive, and are deterministic for identical input.

#pragma once

#include "dicke/operators.hpp"

#include <optional>

namespace dicke {

struct SpectrumResult {
    Eigen::VectorXd eigenvalues;  // ascending
    CMatrix eigenvectors;         // columns
    double residual{0.0};         // max_k |H v_k - E_k v_k|

    Eigen::Index size() const noexcept { return eigenvalues.size(); }
    double spectral_range() const;
};

/// Full (or lowest-k) decomposition of a Hermitian operator.
SpectrumResult diagonalize(const OperatorMatrix& h, std::optional<int> k = std::nullopt);

struct LanczosOptions {
    double tolerance{1e-11};  // residual bound relative to max(1, |E|)
    int max_iterations{0};    // 0 -> min(dim, 600)
};

/// Lowest k eigenpairs by Lanczos. Throws NumericalError on non-convergence.
SpectrumResult lowest_eigenpairs(const OperatorMatrix& h, int k, LanczosOptions options = {});

/// Rotates every column so its largest-magnitude entry is real and positive.
void fix_phases(CMatrix& vectors);

}  // namespace dicke
