#pragma once

/// Soft-assignment coding of orientation labels against an OrientationGrid
/// and weighted-least-squares decoding back to a single quaternion.

#include <span>
#include <utility>
#include <vector>

#include "sopose/grid.hpp"
#include "sopose/quaternion.hpp"

namespace sopose {

/// Kernel parameters. sigma_sq is the quantization-error approximation
/// (delta/m)^2 / 12 and is always computed from delta and m, never stored.
struct KernelParams {
    double delta = 6.0;  // smoothing factor, > 0
    int m_per_dim = 16;

    double sigma_sq() const {
        const double step = delta / static_cast<double>(m_per_dim);
        return step * step / 12.0;
    }
};

/// Normalized nonnegative activation vector over a grid's bins.
struct SoftAssignment {
    std::vector<double> values;

    double sum() const;
    std::size_t size() const { return values.size(); }
};

/// Gaussian kernel on the normalized angular difference,
/// exp(-d^2 / (2 sigma_sq)) with d = normalized_distance(x, y).
/// Throws std::invalid_argument for sigma_sq <= 0.
double kernel(const Quaternion& x, const Quaternion& y, double sigma_sq);

/// Soft assignment of a label: values[i] = K(b_i, q) / sum_j K(b_j, q).
SoftAssignment encode(const OrientationGrid& grid, const Quaternion& q_gt,
                      const KernelParams& params);

/// Weighted average of per-label encodings, renormalized. Weights must be
/// nonnegative with positive sum; the label list must not be empty.
SoftAssignment encode_multi(const OrientationGrid& grid,
                            std::span<const std::pair<Quaternion, double>> labels,
                            const KernelParams& params);

/// Weighted-least-squares decode: the unit eigenvector of
/// A = sum_i w_i b_i b_i^T for the largest eigenvalue, canonicalized.
/// Throws std::runtime_error("indeterminate average") when the top two
/// eigenvalues of A differ by less than 1e-12.
Quaternion decode(const OrientationGrid& grid, const SoftAssignment& activations);

/// Same solver with explicit quaternions as the basis. Used for the
/// ensemble-style averaging of per-model estimates.
Quaternion average_quaternions(std::span<const Quaternion> qs, std::span<const double> weights);

/// Equal-weight overload.
Quaternion average_quaternions(std::span<const Quaternion> qs);

/// Shared core of decode/average_quaternions: Markley weighted average via
/// a fixed-iteration cyclic Jacobi eigensolver on the 4x4 accumulator.
Quaternion markley_average(std::span<const Quaternion> qs, std::span<const double> weights);

}  // namespace sopose
