#include "sopose/grid.hpp"

#include <stdexcept>

namespace sopose {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

OrientationGrid build_grid(int m_per_dim, double merge_tolerance) {
    if (m_per_dim < 2) throw std::invalid_argument("grid too coarse");
    if (merge_tolerance < 0.0) throw std::invalid_argument("negative merge tolerance");

    const int m = m_per_dim;
    OrientationGrid grid;
    grid.m_per_dim = m;
    grid.merge_tolerance = merge_tolerance;
    grid.bins.reserve(static_cast<std::size_t>(m) * m * m);

    const double yaw_step = 2.0 * kPi / m;
    const double pitch_step = kPi / m;
    for (int i = 0; i < m; ++i) {
        const double yaw = -kPi + (i + 0.5) * yaw_step;
        for (int j = 0; j < m; ++j) {
            const double pitch = -kPi / 2.0 + (j + 0.5) * pitch_step;
            for (int k = 0; k < m; ++k) {
                const double roll = -kPi + (k + 0.5) * yaw_step;
                const Quaternion cand = euler_to_quat({yaw, pitch, roll});
                bool keep = true;
                for (const Quaternion& kept : grid.bins) {
                    if (normalized_distance(cand, kept) <= merge_tolerance) {
                        keep = false;
                        break;
                    }
                }
                if (keep) grid.bins.push_back(cand);
            }
        }
    }
    return grid;
}

NearestBin nearest_bin(const OrientationGrid& grid, const Quaternion& q) {
    if (grid.bins.empty()) throw std::invalid_argument("empty grid");
    NearestBin best{0, normalized_distance(grid.bins[0], q)};
    for (std::size_t i = 1; i < grid.bins.size(); ++i) {
        const double d = normalized_distance(grid.bins[i], q);
        if (d < best.distance) best = {i, d};
    }
    return best;
}

}  // namespace sopose
