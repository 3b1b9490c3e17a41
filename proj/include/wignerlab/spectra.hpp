#pragma once

#include <cstdint>
#include <vector>

#include "wignerlab/ensemble.hpp"

namespace wigner {

/// Sorted spectrum together with its generating metadata.
struct SpectralSample {
    std::vector<double> eigenvalues;  // nondecreasing
    Convention convention = Convention::support2;
    std::uint64_t seed = 0;
    double residual_bound = 0.0;

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// All eigenvalues of a Hermitian matrix, sorted ascending.
/// Throws std::invalid_argument for non-Hermitian input (asymmetry above
/// 1e-12 relative to the matrix scale) and std::runtime_error if the
/// QR iteration fails to converge.
SpectralSample hermitian_eigenvalues(const WignerMatrix& h);

}  // namespace wigner
