#pragma once

/// Desk-scale reproduction of the orientation-ambiguity experiment: a
/// linear-softmax head trained with soft cross-entropy on features that
/// collide under an s-fold body symmetry, evaluated Top-1 vs Top-2.

#include <random>
#include <vector>

#include "sopose/codec.hpp"
#include "sopose/grid.hpp"
#include "sopose/quaternion.hpp"

namespace sopose {

struct ToyDataset {
    std::vector<std::vector<double>> features;  // count x D
    std::vector<Quaternion> labels;             // the sampled orientation, one per sample
    int symmetry = 1;
    int feature_dim = 0;
};

struct ToyHead {
    std::vector<double> weights;  // N x D, row major
    std::vector<double> bias;     // N
    int n = 0, d = 0;
};

/// Body point set for symmetry order s: ceil(6/s) generic generator points
/// orbit-expanded under rotations of 2 pi / s about the body z axis.
/// Flattened orbit-major; see feature_of for the camera-frame ordering.
std::vector<std::vector<Vec3>> toy_body_orbits(int symmetry);

/// Camera-frame coordinates of the body points under q, sorted
/// lexicographically within each orbit so that orientations related by the
/// body symmetry produce identical features.
std::vector<double> feature_of(const Quaternion& q, const std::vector<std::vector<Vec3>>& orbits);

/// Uniformly sampled labels with their (symmetry-colliding) features.
ToyDataset make_toy_dataset(int count, int symmetry, std::mt19937_64& rng);

/// Per-sample SGD on soft cross-entropy against encode(label), shuffled
/// each epoch. Asserts the mean epoch loss improved; throws naming the
/// epoch if the loss turns non-finite.
ToyHead train(const ToyDataset& dataset, const OrientationGrid& grid, const KernelParams& params,
              int epochs, double lr, std::mt19937_64& rng);

/// softmax(W x + b) as a SoftAssignment over the grid.
SoftAssignment predict(const ToyHead& head, std::span<const double> feature);

}  // namespace sopose
