#include "sopose/quaternion.hpp"

#include <algorithm>
#include <stdexcept>

#include "sopose/random.hpp"

namespace sopose {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Vec3 RotationMatrix::operator*(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
}

RotationMatrix RotationMatrix::transposed() const {
    RotationMatrix t;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) t(r, c) = (*this)(c, r);
    return t;
}

Quaternion canonicalize(const Quaternion& q) {
    const double n = q.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::invalid_argument("degenerate quaternion");
    }
    // Skip the division when already unit so repeated canonicalization is
    // bit-stable.
    Quaternion u = q;
    if (std::abs(n - 1.0) > 1e-12) u = {q.w / n, q.x / n, q.y / n, q.z / n};
    bool flip = false;
    if (u.w < 0.0) {
        flip = true;
    } else if (u.w == 0.0) {
        // Tie-break on the first nonzero vector component.
        if (u.x != 0.0) {
            flip = u.x < 0.0;
        } else if (u.y != 0.0) {
            flip = u.y < 0.0;
        } else {
            flip = u.z < 0.0;
        }
    }
    return flip ? u.negated() : u;
}

double normalized_distance(const Quaternion& a, const Quaternion& b) {
    const double d = std::clamp(std::abs(a.dot(b)), 0.0, 1.0);
    return 2.0 * std::acos(d) / kPi;
}

double geodesic_angle(const Quaternion& a, const Quaternion& b) {
    return kPi * normalized_distance(a, b);
}

Quaternion hamilton(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quaternion compose(const Quaternion& a, const Quaternion& b) {
    return canonicalize(hamilton(a, b));
}

Vec3 rotate_vec(const Quaternion& q, const Vec3& v) {
    // v' = v + 2 q_v x (q_v x v + w v)
    const Vec3 qv{q.x, q.y, q.z};
    const Vec3 t = cross(qv, cross(qv, v) + v * q.w);
    return v + t * 2.0;
}

Quaternion from_axis_angle(const Vec3& axis, double angle_rad) {
    const double n = norm(axis);
    if (!(n > 0.0)) throw std::invalid_argument("degenerate quaternion");
    const double h = 0.5 * angle_rad;
    const double s = std::sin(h) / n;
    return canonicalize({std::cos(h), axis.x * s, axis.y * s, axis.z * s});
}

Quaternion euler_to_quat(const EulerAngles& e) {
    const double cy = std::cos(0.5 * e.yaw), sy = std::sin(0.5 * e.yaw);
    const double cp = std::cos(0.5 * e.pitch), sp = std::sin(0.5 * e.pitch);
    const double cr = std::cos(0.5 * e.roll), sr = std::sin(0.5 * e.roll);
    // qz(yaw) * qy(pitch) * qx(roll)
    return canonicalize({cy * cp * cr + sy * sp * sr,
                         cy * cp * sr - sy * sp * cr,
                         cy * sp * cr + sy * cp * sr,
                         sy * cp * cr - cy * sp * sr});
}

namespace {
// Fold atan2 output into [-pi, pi).
double wrap_half_open(double a) { return a >= kPi ? a - 2.0 * kPi : a; }
}  // namespace

EulerAngles quat_to_euler(const Quaternion& qin) {
    const Quaternion q = canonicalize(qin);
    const double sin_pitch = std::clamp(2.0 * (q.w * q.y - q.x * q.z), -1.0, 1.0);
    EulerAngles e;
    if (std::abs(sin_pitch) >= 1.0 - 1e-12) {
        // Gimbal lock: only yaw -/+ roll is observable; report roll = 0.
        e.pitch = std::copysign(kPi / 2.0, sin_pitch);
        e.roll = 0.0;
        const double r01 = 2.0 * (q.x * q.y - q.w * q.z);
        const double r02 = 2.0 * (q.x * q.z + q.w * q.y);
        e.yaw = sin_pitch > 0.0 ? wrap_half_open(std::atan2(-r01, r02))
                                : wrap_half_open(std::atan2(-r01, -r02));
        return e;
    }
    e.pitch = std::asin(sin_pitch);
    e.yaw = wrap_half_open(std::atan2(2.0 * (q.x * q.y + q.w * q.z),
                                      1.0 - 2.0 * (q.y * q.y + q.z * q.z)));
    e.roll = wrap_half_open(std::atan2(2.0 * (q.y * q.z + q.w * q.x),
                                       1.0 - 2.0 * (q.x * q.x + q.y * q.y)));
    return e;
}

RotationMatrix to_rotation_matrix(const Quaternion& q) {
    const double w = q.w, x = q.x, y = q.y, z = q.z;
    RotationMatrix r;
    r.m = {1 - 2 * (y * y + z * z), 2 * (x * y - w * z),     2 * (x * z + w * y),
           2 * (x * y + w * z),     1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
           2 * (x * z - w * y),     2 * (y * z + w * x),     1 - 2 * (x * x + y * y)};
    return r;
}

Quaternion from_rotation_matrix(const RotationMatrix& r) {
    const double tr = r(0, 0) + r(1, 1) + r(2, 2);
    Quaternion q;
    if (tr > 0.0) {
        double s = std::sqrt(tr + 1.0) * 2.0;
        q = {0.25 * s, (r(2, 1) - r(1, 2)) / s, (r(0, 2) - r(2, 0)) / s,
             (r(1, 0) - r(0, 1)) / s};
    } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
        double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
        q = {(r(2, 1) - r(1, 2)) / s, 0.25 * s, (r(0, 1) + r(1, 0)) / s,
             (r(0, 2) + r(2, 0)) / s};
    } else if (r(1, 1) > r(2, 2)) {
        double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;
        q = {(r(0, 2) - r(2, 0)) / s, (r(0, 1) + r(1, 0)) / s, 0.25 * s,
             (r(1, 2) + r(2, 1)) / s};
    } else {
        double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;
        q = {(r(1, 0) - r(0, 1)) / s, (r(0, 2) + r(2, 0)) / s,
             (r(1, 2) + r(2, 1)) / s, 0.25 * s};
    }
    return canonicalize(q);
}

Quaternion sample_uniform(std::mt19937_64& rng) {
    const double u1 = uniform_double(rng);
    const double u2 = uniform_double(rng) * 2.0 * kPi;
    const double u3 = uniform_double(rng) * 2.0 * kPi;
    const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    return canonicalize({b * std::cos(u3), a * std::sin(u2), a * std::cos(u2), b * std::sin(u3)});
}

}  // namespace sopose
