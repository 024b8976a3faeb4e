#include "sopose/augment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sopose/random.hpp"

namespace sopose {

namespace {

using Mat3 = std::array<double, 9>;

Mat3 mul3(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col)
            for (int k = 0; k < 3; ++k)
                c[static_cast<std::size_t>(3 * r + col)] +=
                    a[static_cast<std::size_t>(3 * r + k)] * b[static_cast<std::size_t>(3 * k + col)];
    return c;
}

double bilinear(const GrayImage& img, double x, double y) {
    if (x < 0.0 || y < 0.0 || x > img.width - 1.0 || y > img.height - 1.0) return 0.0;
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const int x1 = std::min(x0 + 1, img.width - 1);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const double fx = x - x0, fy = y - y0;
    const double top = (1.0 - fx) * img.at(x0, y0) + fx * img.at(x1, y0);
    const double bot = (1.0 - fx) * img.at(x0, y1) + fx * img.at(x1, y1);
    return (1.0 - fy) * top + fy * bot;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    if (hi <= lo) return lo;
    const int span = hi - lo + 1;
    const int v = lo + static_cast<int>(uniform_double(rng) * span);
    return std::min(v, hi);
}

}  // namespace

Sim2RealConfig sim2real_identity() {
    Sim2RealConfig cfg;
    cfg.gain_range = {1.0, 1.0};
    cfg.bias_range = {0.0, 0.0};
    cfg.awgn_sigma_range = {0.0, 0.0};
    cfg.blur_sigma_range = {0.0, 0.0};
    cfg.patch_count_range = {0, 0};
    return cfg;
}

std::pair<GrayImage, PoseSample> warp_rotation(const GrayImage& img, const CameraIntrinsics& k,
                                               const Quaternion& r_delta,
                                               const PoseSample& pose) {
    const Quaternion delta = canonicalize(r_delta);
    const RotationMatrix r = to_rotation_matrix(delta);

    // Source position for an output pixel: K R K^-1 p'.
    const Mat3 kmat{k.fx, 0.0, k.cx, 0.0, k.fy, k.cy, 0.0, 0.0, 1.0};
    const Mat3 kinv{1.0 / k.fx, 0.0, -k.cx / k.fx, 0.0, 1.0 / k.fy, -k.cy / k.fy, 0.0, 0.0, 1.0};
    const Mat3 rm{r(0, 0), r(0, 1), r(0, 2), r(1, 0), r(1, 1), r(1, 2), r(2, 0), r(2, 1), r(2, 2)};
    const Mat3 hinv = mul3(kmat, mul3(rm, kinv));

    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const double sx = hinv[0] * x + hinv[1] * y + hinv[2];
            const double sy = hinv[3] * x + hinv[4] * y + hinv[5];
            const double sz = hinv[6] * x + hinv[7] * y + hinv[8];
            if (sz <= 0.0) continue;  // wrapped past the horizon, leave black
            const double v = bilinear(img, sx / sz, sy / sz);
            out.at(x, y) = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
        }
    }

    PoseSample new_pose;
    new_pose.t = rotate_vec(delta.conjugate(), pose.t);
    new_pose.q = compose(delta.conjugate(), pose.q);
    return {std::move(out), new_pose};
}

std::pair<GrayImage, PoseSample> inplane_rotate(const GrayImage& img, const CameraIntrinsics& k,
                                                double theta_rad, const PoseSample& pose) {
    if (theta_rad == 0.0) return {img, {canonicalize(pose.q), pose.t}};
    return warp_rotation(img, k, from_axis_angle({0.0, 0.0, 1.0}, theta_rad), pose);
}

GrayImage sim2real(const GrayImage& img, const Sim2RealConfig& cfg, std::mt19937_64& rng) {
    const std::size_t n = img.pixels.size();
    std::vector<double> buf(n);

    // Contrast gain around mid-gray plus exposure bias.
    const double gain = uniform_double(rng, cfg.gain_range[0], cfg.gain_range[1]);
    const double bias = uniform_double(rng, cfg.bias_range[0], cfg.bias_range[1]);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = gain * (img.pixels[i] / 255.0 - 0.5) + 0.5 + bias;
        buf[i] = std::clamp(v, 0.0, 1.0);
    }

    // Separable Gaussian blur, replicate border, kernel radius 3 sigma.
    const double blur_sigma = uniform_double(rng, cfg.blur_sigma_range[0], cfg.blur_sigma_range[1]);
    if (blur_sigma > 1e-9) {
        const int radius = static_cast<int>(std::ceil(3.0 * blur_sigma));
        std::vector<double> kern(static_cast<std::size_t>(2 * radius + 1));
        double ksum = 0.0;
        for (int i = -radius; i <= radius; ++i) {
            kern[static_cast<std::size_t>(i + radius)] =
                std::exp(-0.5 * (i / blur_sigma) * (i / blur_sigma));
            ksum += kern[static_cast<std::size_t>(i + radius)];
        }
        for (double& v : kern) v /= ksum;

        std::vector<double> tmp(n);
        const int w = img.width, h = img.height;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int i = -radius; i <= radius; ++i) {
                    const int xi = std::clamp(x + i, 0, w - 1);
                    acc += kern[static_cast<std::size_t>(i + radius)] *
                           buf[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                               static_cast<std::size_t>(xi)];
                }
                tmp[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                    static_cast<std::size_t>(x)] = acc;
            }
        }
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int i = -radius; i <= radius; ++i) {
                    const int yi = std::clamp(y + i, 0, h - 1);
                    acc += kern[static_cast<std::size_t>(i + radius)] *
                           tmp[static_cast<std::size_t>(yi) * static_cast<std::size_t>(w) +
                               static_cast<std::size_t>(x)];
                }
                buf[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                    static_cast<std::size_t>(x)] = acc;
            }
        }
    }

    // Additive white Gaussian noise, clamped.
    const double awgn_sigma =
        uniform_double(rng, cfg.awgn_sigma_range[0], cfg.awgn_sigma_range[1]);
    if (awgn_sigma > 0.0) {
        for (std::size_t i = 0; i < n; ++i)
            buf[i] = std::clamp(buf[i] + awgn_sigma * normal_double(rng), 0.0, 1.0);
    }

    // Patch dropout.
    const int patches = uniform_int(rng, cfg.patch_count_range[0], cfg.patch_count_range[1]);
    const int min_dim = std::min(img.width, img.height);
    for (int p = 0; p < patches; ++p) {
        const double frac =
            uniform_double(rng, cfg.patch_size_range[0], cfg.patch_size_range[1]);
        const int size = std::max(1, std::min(min_dim, static_cast<int>(std::lround(frac * min_dim))));
        const int x0 = uniform_int(rng, 0, img.width - size);
        const int y0 = uniform_int(rng, 0, img.height - size);
        for (int y = y0; y < y0 + size; ++y) {
            for (int x = x0; x < x0 + size; ++x) {
                double v = cfg.fill_value / 255.0;
                if (cfg.fill_mode == Sim2RealConfig::FillMode::kNoise) v = uniform_double(rng);
                buf[static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width) +
                    static_cast<std::size_t>(x)] = v;
            }
        }
    }

    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < n; ++i)
        out.pixels[i] = static_cast<std::uint8_t>(std::lround(std::clamp(buf[i], 0.0, 1.0) * 255.0));
    return out;
}

Quaternion random_rotation_perturbation(double max_angle_rad, std::mt19937_64& rng) {
    if (max_angle_rad < 0.0) throw std::invalid_argument("negative perturbation magnitude");
    Vec3 axis{normal_double(rng), normal_double(rng), normal_double(rng)};
    while (norm(axis) < 1e-12) axis = {normal_double(rng), normal_double(rng), normal_double(rng)};
    const double angle = uniform_double(rng) * max_angle_rad;
    return from_axis_angle(axis, angle);
}

}  // namespace sopose
