#pragma once

/// Multimodal orientation extraction: EM fit of a Gaussian mixture over
/// bin activations, with non-maximum-suppression initialization and
/// likelihood-gain model-count selection.
///
/// Component densities are isotropic Gaussians in normalized angular
/// distance around the mean, normalized over the three rotational degrees
/// of freedom: p(b|theta_j) = exp(-d^2/(2 s)) / (2 pi s)^(3/2) with
/// s = variance/3. The `variance` field keeps the update's units,
/// sigma_j^2 = sum_i w_ji d(b_i, q_j)^2, i.e. the total mean squared
/// normalized distance of the component.

#include <cstddef>
#include <span>
#include <vector>

#include "sopose/codec.hpp"
#include "sopose/grid.hpp"

namespace sopose {

struct MixtureComponent {
    Quaternion mean;
    double variance = 0.0;  // total squared normalized distance, >= variance_floor
    double prior = 0.0;
};

struct MixtureModel {
    std::vector<MixtureComponent> components;  // sorted by descending prior
    double log_likelihood = 0.0;

    std::size_t k() const { return components.size(); }
};

struct EmConfig {
    int k_max = 4;
    double nms_radius = 0.1875;       // normalized distance; default delta/(2M) at 6/16
    double ll_threshold = 0.15;       // nats; minimum gain to accept one more component
    int max_iter = 100;
    double variance_floor = 0.00390625;  // default (2/M)^2/4 at M=16
    double prior_floor = 1e-3;
    double mean_tol = 1e-4;           // normalized distance, convergence on mean movement
    double init_variance = 0.01171875;   // default (delta/M)^2/12 at 6/16
};

/// Defaults derived from the kernel: NMS radius of half the kernel width,
/// variance floor at quantization scale, initial variance per Eq.-style
/// quantization approximation.
EmConfig make_em_config(const KernelParams& params);

struct EmDiagnostics {
    std::vector<double> ll_iterations;  // accepted log-likelihood, index 0 = initial model
    int uniform_membership_bins = 0;    // bins whose responsibility denominator underflowed
    int dropped_components = 0;
    int mean_update_rejections = 0;     // iterations where the Markley step was not ascent
};

/// Per-component density of one bin distance.
double component_density(double normalized_dist, double variance);

/// Membership p(theta_j | b_i); result[j][i], sums to 1 over j for each i.
std::vector<std::vector<double>> e_step(const OrientationGrid& grid,
                                        const SoftAssignment& activations,
                                        const MixtureModel& model,
                                        EmDiagnostics* diag = nullptr);

/// One M step: priors from memberships, means by weighted Markley average,
/// variances as weighted mean squared distance (floored). Components whose
/// prior falls below prior_floor are dropped and priors renormalized.
MixtureModel m_step(const OrientationGrid& grid, const SoftAssignment& activations,
                    const std::vector<std::vector<double>>& membership,
                    const MixtureModel& model, const EmConfig& config,
                    EmDiagnostics* diag = nullptr);

double mixture_log_likelihood(const OrientationGrid& grid, const SoftAssignment& activations,
                              const MixtureModel& model);

/// Greedy peak selection: bins in descending activation order, skipping any
/// within `radius` of an already selected peak, up to max_peaks.
std::vector<std::size_t> nms_peaks(const OrientationGrid& grid, const SoftAssignment& activations,
                                   double radius, std::size_t max_peaks);

/// EM fit with exactly-k initialization (capped at the surviving NMS peak
/// count). Iterates until the mean movement drops below mean_tol or
/// max_iter; an M step that would lower the likelihood is replaced by its
/// ascent-guaranteed prior/variance sub-steps, so the recorded likelihood
/// never decreases.
MixtureModel fit_mixture_k(const OrientationGrid& grid, const SoftAssignment& activations,
                           const EmConfig& config, int k, EmDiagnostics* diag = nullptr);

/// Model-count selection: fit K = 1, 2, ... and return the model before the
/// first K whose likelihood gain is <= ll_threshold (or the K_max / peak
/// count fit). per_k_ll, when given, receives the fitted log-likelihoods.
MixtureModel fit_mixture(const OrientationGrid& grid, const SoftAssignment& activations,
                         const EmConfig& config, std::vector<double>* per_k_ll = nullptr,
                         EmDiagnostics* diag = nullptr);

}  // namespace sopose
