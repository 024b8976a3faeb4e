#include "sopose/losses.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sopose {

double loss_translation_rel(std::span<const std::pair<Vec3, Vec3>> batch) {
    double total = 0.0;
    for (const auto& [t, t_gt] : batch) {
        const double denom = norm(t_gt);
        if (!(denom > 0.0)) throw std::invalid_argument("undefined relative error");
        total += norm(t - t_gt) / denom;
    }
    return total;
}

double loss_alpha(const Quaternion& q, const Quaternion& q_gt) {
    const double d = std::min(std::abs(q.dot(q_gt)), 1.0 - 1e-7);
    return std::acos(d);
}

double loss_cos_alpha(const Quaternion& q, const Quaternion& q_gt) {
    return 1.0 - std::min(std::abs(q.dot(q_gt)), 1.0);
}

double loss_total(std::span<const std::pair<Vec3, Vec3>> batch, double ori_loss,
                  const LossWeights& w) {
    const double trans = w.beta1 != 0.0 ? loss_translation_rel(batch) : 0.0;
    return w.beta1 * trans + w.beta2 * ori_loss;
}

std::vector<double> softmax(std::span<const double> logits) {
    if (logits.empty()) throw std::invalid_argument("empty logits");
    const double m = *std::max_element(logits.begin(), logits.end());
    std::vector<double> p(logits.size());
    double total = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp(logits[i] - m);
        total += p[i];
    }
    for (double& v : p) v /= total;
    return p;
}

SoftCrossEntropy soft_cross_entropy(const SoftAssignment& target,
                                    std::span<const double> logits) {
    if (target.size() != logits.size())
        throw std::invalid_argument("target length does not match logits");
    SoftCrossEntropy out;
    out.grad_logits = softmax(logits);
    for (std::size_t i = 0; i < logits.size(); ++i) {
        const double t = target.values[i];
        if (t > 0.0) out.loss -= t * std::log(out.grad_logits[i] + 1e-12);
    }
    for (std::size_t i = 0; i < logits.size(); ++i) out.grad_logits[i] -= target.values[i];
    return out;
}

KeypointAlignment align_keypoints(const std::array<Vec3, 3>& body_pts,
                                  const std::array<Vec3, 3>& cam_pts) {
    const Vec3 e1 = body_pts[1] - body_pts[0];
    const Vec3 e2 = body_pts[2] - body_pts[0];
    if (0.5 * norm(cross(e1, e2)) <= 1e-9)
        throw std::invalid_argument("degenerate keypoint set");

    Vec3 a_bar{}, b_bar{};
    for (int i = 0; i < 3; ++i) {
        a_bar = a_bar + body_pts[static_cast<std::size_t>(i)];
        b_bar = b_bar + cam_pts[static_cast<std::size_t>(i)];
    }
    a_bar = a_bar / 3.0;
    b_bar = b_bar / 3.0;

    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i) {
        const Vec3 a = body_pts[static_cast<std::size_t>(i)] - a_bar;
        const Vec3 b = cam_pts[static_cast<std::size_t>(i)] - b_bar;
        const Eigen::Vector3d ea(a.x, a.y, a.z), eb(b.x, b.y, b.z);
        h += ea * eb.transpose();
    }

    Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d r = svd.matrixV() * svd.matrixU().transpose();
    if (r.determinant() < 0.0) {
        // Reflection case: flip the singular direction with least weight.
        Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
        flip(2, 2) = -1.0;
        r = svd.matrixV() * flip * svd.matrixU().transpose();
    }

    RotationMatrix rot;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) rot(i, j) = r(i, j);

    KeypointAlignment out;
    out.pose.q = from_rotation_matrix(rot);
    out.pose.t = b_bar - rot * a_bar;
    for (int i = 0; i < 3; ++i) {
        const Vec3 fit = rot * body_pts[static_cast<std::size_t>(i)] + out.pose.t;
        out.max_residual =
            std::max(out.max_residual, norm(fit - cam_pts[static_cast<std::size_t>(i)]));
    }
    return out;
}

}  // namespace sopose
