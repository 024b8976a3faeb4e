#pragma once

/// Pinhole intrinsics. Pixel coordinates have integer pixel centers and
/// the camera looks down +z.

#include <array>
#include <stdexcept>

#include "sopose/quaternion.hpp"

namespace sopose {

struct CameraIntrinsics {
    double fx = 0.0, fy = 0.0;  // pixels
    double cx = 0.0, cy = 0.0;  // pixels
    int width = 0, height = 0;
};

/// Square-pixel intrinsics for a given horizontal field of view:
/// fx = fy = (width/2) / tan(hfov/2), principal point at the image center.
inline CameraIntrinsics intrinsics_from_hfov(int width, int height, double hfov_rad) {
    if (!(hfov_rad > 0.0) || !(hfov_rad < 3.14159265358979323846))
        throw std::invalid_argument("horizontal FOV must be in (0, pi)");
    CameraIntrinsics k;
    k.width = width;
    k.height = height;
    k.fx = k.fy = (width / 2.0) / std::tan(hfov_rad / 2.0);
    k.cx = width / 2.0;
    k.cy = height / 2.0;
    return k;
}

/// Perspective projection of a camera-frame point (requires z > 0).
inline std::array<double, 2> project(const CameraIntrinsics& k, const Vec3& p) {
    if (!(p.z > 0.0)) throw std::invalid_argument("point behind camera");
    return {k.fx * p.x / p.z + k.cx, k.fy * p.y / p.z + k.cy};
}

/// Camera-frame point at depth z projecting to pixel (u, v).
inline Vec3 backproject(const CameraIntrinsics& k, double u, double v, double z) {
    return {z * (u - k.cx) / k.fx, z * (v - k.cy) / k.fy, z};
}

}  // namespace sopose
