#include "sopose/toyhead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "sopose/losses.hpp"
#include "sopose/random.hpp"

namespace sopose {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Generic, asymmetric generator points (roughly unit radius).
constexpr std::array<Vec3, 6> kGenerators{{{0.9, 0.1, 0.3},
                                           {-0.2, 0.8, -0.35},
                                           {0.4, -0.5, 0.7},
                                           {-0.7, -0.3, -0.2},
                                           {0.1, 0.6, 0.85},
                                           {0.75, 0.45, -0.5}}};
}  // namespace

std::vector<std::vector<Vec3>> toy_body_orbits(int symmetry) {
    if (symmetry < 1) throw std::invalid_argument("symmetry order must be >= 1");
    const int generators = (6 + symmetry - 1) / symmetry;
    std::vector<std::vector<Vec3>> orbits;
    for (int gi = 0; gi < generators; ++gi) {
        std::vector<Vec3> orbit;
        for (int j = 0; j < symmetry; ++j) {
            const double th = 2.0 * kPi * j / symmetry;
            const double c = std::cos(th), s = std::sin(th);
            const Vec3& g = kGenerators[static_cast<std::size_t>(gi)];
            orbit.push_back({c * g.x - s * g.y, s * g.x + c * g.y, g.z});
        }
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

std::vector<double> feature_of(const Quaternion& q, const std::vector<std::vector<Vec3>>& orbits) {
    std::vector<double> feat;
    std::vector<std::tuple<double, double, double>> cam;
    for (const auto& orbit : orbits) {
        cam.clear();
        for (const Vec3& p : orbit) {
            const Vec3 v = rotate_vec(q, p);
            cam.emplace_back(v.x, v.y, v.z);
        }
        std::sort(cam.begin(), cam.end());
        for (const auto& [x, y, z] : cam) {
            feat.push_back(x);
            feat.push_back(y);
            feat.push_back(z);
        }
    }
    return feat;
}

ToyDataset make_toy_dataset(int count, int symmetry, std::mt19937_64& rng) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    const auto orbits = toy_body_orbits(symmetry);
    ToyDataset ds;
    ds.symmetry = symmetry;
    ds.features.reserve(static_cast<std::size_t>(count));
    ds.labels.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const Quaternion q = sample_uniform(rng);
        ds.features.push_back(feature_of(q, orbits));
        ds.labels.push_back(q);
    }
    ds.feature_dim = static_cast<int>(ds.features.front().size());
    return ds;
}

ToyHead train(const ToyDataset& dataset, const OrientationGrid& grid, const KernelParams& params,
              int epochs, double lr, std::mt19937_64& rng) {
    if (dataset.features.empty()) throw std::invalid_argument("empty dataset");
    const std::size_t count = dataset.features.size();
    const std::size_t n = grid.size();
    const std::size_t d = static_cast<std::size_t>(dataset.feature_dim);

    // Encoded targets are reused every epoch; cache them up front.
    std::vector<SoftAssignment> targets;
    targets.reserve(count);
    for (const Quaternion& q : dataset.labels) targets.push_back(encode(grid, q, params));

    ToyHead head;
    head.n = static_cast<int>(n);
    head.d = static_cast<int>(d);
    head.weights.assign(n * d, 0.0);
    head.bias.assign(n, 0.0);

    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> logits(n);

    double first_epoch_loss = 0.0, last_epoch_loss = 0.0;
    for (int ep = 0; ep < epochs; ++ep) {
        // Fisher-Yates with the pinned uniform draw, seeded shuffle.
        for (std::size_t i = count - 1; i > 0; --i) {
            const std::size_t j =
                std::min(i, static_cast<std::size_t>(uniform_double(rng) * (i + 1)));
            std::swap(order[i], order[j]);
        }
        double epoch_loss = 0.0;
        for (const std::size_t s : order) {
            const std::vector<double>& x = dataset.features[s];
            for (std::size_t r = 0; r < n; ++r) {
                const double* wr = head.weights.data() + r * d;
                double acc = head.bias[r];
                for (std::size_t c = 0; c < d; ++c) acc += wr[c] * x[c];
                logits[r] = acc;
            }
            const SoftCrossEntropy ce = soft_cross_entropy(targets[s], logits);
            if (!std::isfinite(ce.loss))
                throw std::runtime_error("training diverged at epoch " + std::to_string(ep));
            epoch_loss += ce.loss;
            for (std::size_t r = 0; r < n; ++r) {
                const double g = lr * ce.grad_logits[r];
                if (g == 0.0) continue;
                double* wr = head.weights.data() + r * d;
                for (std::size_t c = 0; c < d; ++c) wr[c] -= g * x[c];
                head.bias[r] -= g;
            }
        }
        epoch_loss /= static_cast<double>(count);
        if (ep == 0) first_epoch_loss = epoch_loss;
        last_epoch_loss = epoch_loss;
    }
    if (epochs > 1 && !(last_epoch_loss < first_epoch_loss))
        throw std::runtime_error("training loss did not decrease");
    return head;
}

SoftAssignment predict(const ToyHead& head, std::span<const double> feature) {
    if (feature.size() != static_cast<std::size_t>(head.d))
        throw std::invalid_argument("feature dimension mismatch");
    std::vector<double> logits(static_cast<std::size_t>(head.n));
    const std::size_t n = static_cast<std::size_t>(head.n);
    const std::size_t d = static_cast<std::size_t>(head.d);
    for (std::size_t r = 0; r < n; ++r) {
        const double* wr = head.weights.data() + r * d;
        double acc = head.bias[r];
        for (std::size_t c = 0; c < d; ++c) acc += wr[c] * feature[c];
        logits[r] = acc;
    }
    SoftAssignment out;
    out.values = softmax(logits);
    return out;
}

}  // namespace sopose
