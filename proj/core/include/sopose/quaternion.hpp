#pragma once

/// Quaternion and rotation geometry primitives.
///
/// Conventions used throughout the library:
///  - Quaternions are Hamilton, scalar first (w, x, y, z), unit norm,
///    canonicalized to one hemisphere: w > 0, or w == 0 and the first
///    nonzero of (x, y, z) > 0. +q and -q denote the same rotation.
///  - Euler angles are intrinsic Z-Y-X (yaw about z, then pitch about the
///    rotated y, then roll about the twice-rotated x), with
///    yaw, roll in [-pi, pi) and pitch in [-pi/2, pi/2].
///  - Rotation matrices act on column vectors, R(q)*v == rotate_vec(q, v).

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

namespace sopose {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

struct Quaternion {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    static constexpr Quaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }

    constexpr double dot(const Quaternion& o) const {
        return w * o.w + x * o.x + y * o.y + z * o.z;
    }
    double norm() const { return std::sqrt(dot(*this)); }
    constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }
    constexpr Quaternion negated() const { return {-w, -x, -y, -z}; }
};

struct EulerAngles {
    double yaw = 0.0;    // rad, [-pi, pi)
    double pitch = 0.0;  // rad, [-pi/2, pi/2]
    double roll = 0.0;   // rad, [-pi, pi)
};

/// 3x3 rotation matrix, row major. Exists as a conversion target for the
/// homography warp and the keypoint alignment; not a general matrix API.
struct RotationMatrix {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }
    double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }
    Vec3 operator*(const Vec3& v) const;
    RotationMatrix transposed() const;
};

/// Normalize and pick the canonical-hemisphere representative of q.
/// Throws std::invalid_argument("degenerate quaternion") for zero norm.
Quaternion canonicalize(const Quaternion& q);

/// Normalized angular difference 2*acos(|a.b|)/pi in [0, 1].
/// Sign-flip invariant in both arguments; the dot product is clamped to
/// [0, 1] before acos to absorb roundoff.
double normalized_distance(const Quaternion& a, const Quaternion& b);

/// Rotation angle of the relative rotation, 2*acos(|a.b|) in [0, pi].
/// Equals pi * normalized_distance(a, b) exactly.
double geodesic_angle(const Quaternion& a, const Quaternion& b);

/// Hamilton product a*b followed by canonicalization.
Quaternion compose(const Quaternion& a, const Quaternion& b);

/// Raw Hamilton product, no canonicalization.
Quaternion hamilton(const Quaternion& a, const Quaternion& b);

/// Rotate v by q (equivalent to to_rotation_matrix(q) * v).
Vec3 rotate_vec(const Quaternion& q, const Vec3& v);

Quaternion from_axis_angle(const Vec3& axis, double angle_rad);

Quaternion euler_to_quat(const EulerAngles& e);

/// Inverse of euler_to_quat. At |pitch| = pi/2 the yaw/roll split is not
/// unique; the representative with roll = 0 is returned.
EulerAngles quat_to_euler(const Quaternion& q);

RotationMatrix to_rotation_matrix(const Quaternion& q);

/// Rotation matrix -> canonical quaternion (Shepperd's branch selection).
Quaternion from_rotation_matrix(const RotationMatrix& r);

/// Uniform random rotation (Shoemake subgroup algorithm), canonicalized.
/// Consumes exactly three draws from rng; deterministic for a fixed seed.
Quaternion sample_uniform(std::mt19937_64& rng);

}  // namespace sopose
