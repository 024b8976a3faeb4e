#pragma once

/// Discrete orientation output space: the 3D histogram of Euler-angle bins
/// with pole/border redundancy removed in quaternion space.

#include <cstddef>
#include <vector>

#include "sopose/quaternion.hpp"

namespace sopose {

struct OrientationGrid {
    std::vector<Quaternion> bins;  // canonical-hemisphere, pairwise farther than merge_tolerance
    int m_per_dim = 0;
    double merge_tolerance = 0.0;

    std::size_t size() const { return bins.size(); }
};

/// Merge tolerance used when none is given: one fifth of the normalized
/// one-dimensional bin step 2/M.
constexpr double default_merge_tolerance(int m_per_dim) {
    return 0.2 * (2.0 / static_cast<double>(m_per_dim));
}

/// Build the M^3 Euler-product grid with centers offset by half a step so
/// the gimbal-lock plane is never sampled, then greedily drop (in
/// generation order: yaw outer, pitch, roll inner) any candidate within
/// merge_tolerance of an already kept bin.
/// Throws std::invalid_argument("grid too coarse") for m_per_dim < 2.
OrientationGrid build_grid(int m_per_dim, double merge_tolerance);

inline OrientationGrid build_grid(int m_per_dim) {
    return build_grid(m_per_dim, default_merge_tolerance(m_per_dim));
}

struct NearestBin {
    std::size_t index = 0;
    double distance = 0.0;  // normalized distance
};

/// Argmin of normalized_distance over the bins; ties break to the lowest
/// index. Throws std::invalid_argument on an empty grid.
NearestBin nearest_bin(const OrientationGrid& grid, const Quaternion& q);

}  // namespace sopose
