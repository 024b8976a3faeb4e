#include "sopose/codec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace sopose {

double SoftAssignment::sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

double kernel(const Quaternion& x, const Quaternion& y, double sigma_sq) {
    if (!(sigma_sq > 0.0)) throw std::invalid_argument("sigma_sq must be positive");
    const double d = normalized_distance(x, y);
    return std::exp(-d * d / (2.0 * sigma_sq));
}

SoftAssignment encode(const OrientationGrid& grid, const Quaternion& q_gt,
                      const KernelParams& params) {
    const Quaternion q = canonicalize(q_gt);
    const double s2 = params.sigma_sq();
    SoftAssignment out;
    out.values.resize(grid.size());
    double total = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.values[i] = kernel(grid.bins[i], q, s2);
        total += out.values[i];
    }
    // The kernel is strictly positive, but exp can underflow for all bins
    // at extreme sigma; fall back to a one-hot on the nearest bin.
    if (total <= 0.0) {
        const NearestBin nb = nearest_bin(grid, q);
        std::fill(out.values.begin(), out.values.end(), 0.0);
        out.values[nb.index] = 1.0;
        return out;
    }
    for (double& v : out.values) v /= total;
    return out;
}

SoftAssignment encode_multi(const OrientationGrid& grid,
                            std::span<const std::pair<Quaternion, double>> labels,
                            const KernelParams& params) {
    if (labels.empty()) throw std::invalid_argument("empty label list");
    double wsum = 0.0;
    for (const auto& [q, w] : labels) {
        if (w < 0.0) throw std::invalid_argument("negative label weight");
        wsum += w;
    }
    if (!(wsum > 0.0)) throw std::invalid_argument("label weights sum to zero");

    SoftAssignment out;
    out.values.assign(grid.size(), 0.0);
    for (const auto& [q, w] : labels) {
        if (w == 0.0) continue;
        const SoftAssignment enc = encode(grid, q, params);
        for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] += w * enc.values[i];
    }
    for (double& v : out.values) v /= wsum;
    return out;
}

namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;

struct Eigen4 {
    std::array<double, 4> values{};          // unsorted
    std::array<std::array<double, 4>, 4> vectors{};  // vectors[c] is column c
};

/// Cyclic Jacobi for a symmetric 4x4: at most 30 sweeps, stops when the
/// off-diagonal Frobenius norm drops below 1e-14.
Eigen4 jacobi_eigen4(Mat4 a) {
    std::array<std::array<double, 4>, 4> v{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
    for (int sweep = 0; sweep < 30; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off += a[p][q] * a[p][q];
        if (std::sqrt(2.0 * off) < 1e-14) break;
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 4; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 4; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    Eigen4 out;
    for (int c = 0; c < 4; ++c) {
        out.values[static_cast<std::size_t>(c)] = a[c][c];
        for (int r = 0; r < 4; ++r) out.vectors[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] = v[r][c];
    }
    return out;
}

}  // namespace

Quaternion markley_average(std::span<const Quaternion> qs, std::span<const double> weights) {
    if (qs.empty()) throw std::invalid_argument("empty quaternion set");
    if (qs.size() != weights.size()) throw std::invalid_argument("weight count mismatch");

    Mat4 a{};
    bool any_positive = false;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const double w = weights[i];
        if (w < 0.0) throw std::invalid_argument("negative weight");
        if (w == 0.0) continue;
        any_positive = true;
        const std::array<double, 4> b{qs[i].w, qs[i].x, qs[i].y, qs[i].z};
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) a[r][c] += w * b[static_cast<std::size_t>(r)] * b[static_cast<std::size_t>(c)];
    }
    if (!any_positive) throw std::invalid_argument("no positive weight");

    const Eigen4 eig = jacobi_eigen4(a);
    int best = 0, second = -1;
    for (int c = 1; c < 4; ++c) {
        if (eig.values[static_cast<std::size_t>(c)] > eig.values[static_cast<std::size_t>(best)]) best = c;
    }
    for (int c = 0; c < 4; ++c) {
        if (c == best) continue;
        if (second < 0 || eig.values[static_cast<std::size_t>(c)] > eig.values[static_cast<std::size_t>(second)]) second = c;
    }
    if (eig.values[static_cast<std::size_t>(best)] - eig.values[static_cast<std::size_t>(second)] < 1e-12) {
        throw std::runtime_error("indeterminate average");
    }
    const auto& vec = eig.vectors[static_cast<std::size_t>(best)];
    return canonicalize({vec[0], vec[1], vec[2], vec[3]});
}

Quaternion decode(const OrientationGrid& grid, const SoftAssignment& activations) {
    if (activations.size() != grid.size())
        throw std::invalid_argument("activation length does not match grid");
    return markley_average(grid.bins, activations.values);
}

Quaternion average_quaternions(std::span<const Quaternion> qs, std::span<const double> weights) {
    return markley_average(qs, weights);
}

Quaternion average_quaternions(std::span<const Quaternion> qs) {
    std::vector<double> w(qs.size(), 1.0);
    return markley_average(qs, w);
}

}  // namespace sopose
