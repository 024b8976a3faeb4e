#pragma once

/// Training-time losses (relative translation, quaternion regression
/// variants, soft cross-entropy with analytic gradient) and the
/// closed-form three-keypoint pose recovery.

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "sopose/codec.hpp"
#include "sopose/pose.hpp"

namespace sopose {

struct LossWeights {
    double beta1 = 1.0;
    double beta2 = 1.0;
};

/// Sum over the batch of ||t - t_gt|| / ||t_gt||. The batch is summed, not
/// averaged. Throws std::invalid_argument("undefined relative error") if
/// any ground-truth translation has zero norm.
double loss_translation_rel(std::span<const std::pair<Vec3, Vec3>> batch);

/// arccos(|q . q_gt|) with |dot| clamped to 1 - 1e-7 so the gradient of
/// acos stays finite at zero error.
double loss_alpha(const Quaternion& q, const Quaternion& q_gt);

/// 1 - |q . q_gt|.
double loss_cos_alpha(const Quaternion& q, const Quaternion& q_gt);

/// beta1 * loss_translation_rel(batch) + beta2 * ori_loss.
double loss_total(std::span<const std::pair<Vec3, Vec3>> batch, double ori_loss,
                  const LossWeights& w);

std::vector<double> softmax(std::span<const double> logits);

struct SoftCrossEntropy {
    double loss = 0.0;
    std::vector<double> grad_logits;  // softmax(logits) - target
};

/// Cross entropy of softmax(logits) against a soft target, with the
/// analytic logit gradient p - target.
SoftCrossEntropy soft_cross_entropy(const SoftAssignment& target,
                                    std::span<const double> logits);

struct KeypointAlignment {
    PoseSample pose;
    double max_residual = 0.0;  // max over points of ||R a_i + t - b_i||
};

/// Closed-form rigid alignment of three body-frame keypoints to their
/// camera-frame positions: centroid subtraction, SVD of the
/// cross-covariance, determinant-corrected rotation, t = b_bar - R a_bar.
/// Throws std::invalid_argument("degenerate keypoint set") when the body
/// points span a triangle of area <= 1e-9 m^2.
KeypointAlignment align_keypoints(const std::array<Vec3, 3>& body_pts,
                                  const std::array<Vec3, 3>& cam_pts);

}  // namespace sopose
