#pragma once

/// Label-preserving image augmentation: camera-rotation warps that update
/// the pose, in-plane rotation, and the sim-to-real appearance chain.

#include <array>
#include <cstdint>
#include <random>
#include <utility>

#include "sopose/camera.hpp"
#include "sopose/image.hpp"
#include "sopose/pose.hpp"

namespace sopose {

struct Sim2RealConfig {
    // out = clamp(gain * (in/255 - 0.5) + 0.5 + bias, 0, 1); gain is the
    // contrast factor, bias the exposure shift.
    std::array<double, 2> gain_range{0.7, 1.3};
    std::array<double, 2> bias_range{-0.1, 0.1};
    std::array<double, 2> awgn_sigma_range{0.0, 0.04};   // fraction of full intensity
    std::array<double, 2> blur_sigma_range{0.0, 1.5};    // px
    std::array<int, 2> patch_count_range{0, 3};
    std::array<double, 2> patch_size_range{0.05, 0.20};  // fraction of min(width, height)

    enum class FillMode { kConstant, kNoise };
    FillMode fill_mode = FillMode::kConstant;
    std::uint8_t fill_value = 0;
};

/// Identity configuration: gain 1, bias 0, no blur, no noise, no patches.
Sim2RealConfig sim2real_identity();

/// Warp by a pure camera rotation r_delta and update the pose to match:
/// each output pixel samples the input at K R(r_delta) K^-1 p' (bilinear,
/// zero outside the frame); t' = R(r_delta)^T t, q' = quat(R^T) * q.
std::pair<GrayImage, PoseSample> warp_rotation(const GrayImage& img, const CameraIntrinsics& k,
                                               const Quaternion& r_delta,
                                               const PoseSample& pose);

/// warp_rotation specialized to a rotation about the optical axis.
std::pair<GrayImage, PoseSample> inplane_rotate(const GrayImage& img, const CameraIntrinsics& k,
                                                double theta_rad, const PoseSample& pose);

/// Appearance chain, applied in order: contrast/exposure, Gaussian blur,
/// additive white Gaussian noise, patch dropout. Float math throughout,
/// quantized once at the end; deterministic for a fixed rng state.
GrayImage sim2real(const GrayImage& img, const Sim2RealConfig& cfg, std::mt19937_64& rng);

/// Uniform random axis, uniform angle in [0, max_angle_rad].
Quaternion random_rotation_perturbation(double max_angle_rad, std::mt19937_64& rng);

}  // namespace sopose
