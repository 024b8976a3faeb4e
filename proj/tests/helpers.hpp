#pragma once

/// Shared test utilities and independent oracles. Everything here stays
/// deliberately dumb (brute force, direct formula evaluation) so it cannot
/// share a failure mode with the library code it checks.

#include <array>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "sopose/quaternion.hpp"
#include "sopose/random.hpp"

namespace sopose::testing {

constexpr double kPi = 3.14159265358979323846;

inline double deg(double rad) { return rad * 180.0 / kPi; }
inline double rad(double degrees) { return degrees * kPi / 180.0; }

/// Rotation-angle difference of two quaternions, direct formula.
inline double angle_between(const Quaternion& a, const Quaternion& b) {
    const double d = std::min(std::abs(a.dot(b)), 1.0);
    return 2.0 * std::acos(d);
}

/// Same angle through the chord, 4 asin(||a -+ b|| / 2). acos(|dot|) cannot
/// resolve below ~3e-8; this form is exact down to zero and is what tight
/// (1e-9) recovery checks must use.
inline double angle_between_precise(const Quaternion& a, const Quaternion& b) {
    const Quaternion bs = a.dot(b) >= 0.0 ? b : b.negated();
    const double dw = a.w - bs.w, dx = a.x - bs.x, dy = a.y - bs.y, dz = a.z - bs.z;
    const double chord = std::sqrt(dw * dw + dx * dx + dy * dy + dz * dz);
    return 4.0 * std::asin(std::min(chord / 2.0, 1.0));
}

/// Objective of the weighted least-squares decode, evaluated through the
/// 4x4 accumulator: sum_i w_i (b_i . q)^2 == q^T A q.
struct QuadraticObjective {
    std::array<std::array<double, 4>, 4> a{};

    QuadraticObjective(std::span<const Quaternion> basis, std::span<const double> weights) {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const std::array<double, 4> b{basis[i].w, basis[i].x, basis[i].y, basis[i].z};
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] +=
                        weights[i] * b[static_cast<std::size_t>(r)] * b[static_cast<std::size_t>(c)];
        }
    }

    double operator()(const Quaternion& q) const {
        const std::array<double, 4> v{q.w, q.x, q.y, q.z};
        double s = 0.0;
        for (int r = 0; r < 4; ++r) {
            double row = 0.0;
            for (int c = 0; c < 4; ++c)
                row += a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
                       v[static_cast<std::size_t>(c)];
            s += v[static_cast<std::size_t>(r)] * row;
        }
        return s;
    }
};

/// Best objective value over `samples` random unit quaternions.
inline double random_search_best(const QuadraticObjective& obj, std::size_t samples,
                                 std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double best = -1.0;
    for (std::size_t i = 0; i < samples; ++i) {
        double w = normal_double(rng), x = normal_double(rng), y = normal_double(rng),
               z = normal_double(rng);
        const double n = std::sqrt(w * w + x * x + y * y + z * z);
        if (n < 1e-12) continue;
        best = std::max(best, obj({w / n, x / n, y / n, z / n}));
    }
    return best;
}

/// Central finite difference of f at x (scalar-valued, vector argument).
template <typename F>
std::vector<double> finite_difference_gradient(F&& f, std::vector<double> x, double h) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double orig = x[i];
        x[i] = orig + h;
        const double fp = f(x);
        x[i] = orig - h;
        const double fm = f(x);
        x[i] = orig;
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

}  // namespace sopose::testing
