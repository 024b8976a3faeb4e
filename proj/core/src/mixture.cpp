#include "sopose/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sopose {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;

void sort_by_prior(MixtureModel& model) {
    std::stable_sort(model.components.begin(), model.components.end(),
                     [](const MixtureComponent& a, const MixtureComponent& b) {
                         return a.prior > b.prior;
                     });
}

void validate_activations(const OrientationGrid& grid, const SoftAssignment& a) {
    if (a.size() != grid.size())
        throw std::invalid_argument("activation length does not match grid");
}
}  // namespace

EmConfig make_em_config(const KernelParams& params) {
    EmConfig cfg;
    const double m = static_cast<double>(params.m_per_dim);
    cfg.nms_radius = params.delta / (2.0 * m);
    cfg.variance_floor = (2.0 / m) * (2.0 / m) / 4.0;
    cfg.init_variance = params.sigma_sq();
    return cfg;
}

double component_density(double normalized_dist, double variance) {
    const double per_axis = variance / 3.0;
    return std::exp(-normalized_dist * normalized_dist / (2.0 * per_axis)) /
           std::pow(kTwoPi * per_axis, 1.5);
}

std::vector<std::vector<double>> e_step(const OrientationGrid& grid,
                                        const SoftAssignment& activations,
                                        const MixtureModel& model, EmDiagnostics* diag) {
    validate_activations(grid, activations);
    const std::size_t k = model.k();
    const std::size_t n = grid.size();
    if (k == 0) throw std::invalid_argument("empty mixture model");

    std::vector<std::vector<double>> membership(k, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        double den = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double d = normalized_distance(grid.bins[i], model.components[j].mean);
            const double p = component_density(d, model.components[j].variance) *
                             model.components[j].prior;
            membership[j][i] = p;
            den += p;
        }
        if (den > 0.0) {
            for (std::size_t j = 0; j < k; ++j) membership[j][i] /= den;
        } else {
            // Underflow far from every component: uniform responsibility.
            for (std::size_t j = 0; j < k; ++j) membership[j][i] = 1.0 / static_cast<double>(k);
            if (diag) ++diag->uniform_membership_bins;
        }
    }
    return membership;
}

MixtureModel m_step(const OrientationGrid& grid, const SoftAssignment& activations,
                    const std::vector<std::vector<double>>& membership,
                    const MixtureModel& model, const EmConfig& config, EmDiagnostics* diag) {
    validate_activations(grid, activations);
    const std::size_t k = model.k();
    const std::size_t n = grid.size();
    if (membership.size() != k) throw std::invalid_argument("membership row count mismatch");

    std::vector<double> priors(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i) priors[j] += activations.values[i] * membership[j][i];
    }

    MixtureModel next;
    double prior_total = 0.0;
    std::vector<double> weights(n);
    for (std::size_t j = 0; j < k; ++j) {
        if (priors[j] < config.prior_floor) {
            if (diag) ++diag->dropped_components;
            continue;
        }
        for (std::size_t i = 0; i < n; ++i)
            weights[i] = activations.values[i] * membership[j][i] / priors[j];
        MixtureComponent comp;
        comp.mean = markley_average(grid.bins, weights);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = normalized_distance(grid.bins[i], comp.mean);
            var += weights[i] * d * d;
        }
        comp.variance = std::max(var, config.variance_floor);
        comp.prior = priors[j];
        prior_total += priors[j];
        next.components.push_back(comp);
    }
    if (next.components.empty()) throw std::runtime_error("all mixture components dropped");
    for (MixtureComponent& c : next.components) c.prior /= prior_total;
    sort_by_prior(next);
    next.log_likelihood = mixture_log_likelihood(grid, activations, next);
    return next;
}

double mixture_log_likelihood(const OrientationGrid& grid, const SoftAssignment& activations,
                              const MixtureModel& model) {
    validate_activations(grid, activations);
    double ll = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double a = activations.values[i];
        if (a <= 0.0) continue;
        double p = 0.0;
        for (const MixtureComponent& c : model.components) {
            const double d = normalized_distance(grid.bins[i], c.mean);
            p += component_density(d, c.variance) * c.prior;
        }
        ll += a * std::log(std::max(p, std::numeric_limits<double>::min()));
    }
    return ll;
}

std::vector<std::size_t> nms_peaks(const OrientationGrid& grid, const SoftAssignment& activations,
                                   double radius, std::size_t max_peaks) {
    validate_activations(grid, activations);
    std::vector<std::size_t> order(grid.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return activations.values[a] > activations.values[b];
    });

    std::vector<std::size_t> peaks;
    for (std::size_t idx : order) {
        if (peaks.size() >= max_peaks) break;
        bool suppressed = false;
        for (std::size_t p : peaks) {
            if (normalized_distance(grid.bins[idx], grid.bins[p]) <= radius) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) peaks.push_back(idx);
    }
    return peaks;
}

MixtureModel fit_mixture_k(const OrientationGrid& grid, const SoftAssignment& activations,
                           const EmConfig& config, int k, EmDiagnostics* diag) {
    validate_activations(grid, activations);
    if (k < 1) throw std::invalid_argument("k must be >= 1");

    const std::vector<std::size_t> peaks =
        nms_peaks(grid, activations, config.nms_radius, static_cast<std::size_t>(k));
    if (peaks.empty()) throw std::runtime_error("no activation peaks");

    MixtureModel model;
    for (std::size_t p : peaks) {
        model.components.push_back({grid.bins[p], config.init_variance,
                                    1.0 / static_cast<double>(peaks.size())});
    }
    model.log_likelihood = mixture_log_likelihood(grid, activations, model);
    if (diag) diag->ll_iterations.push_back(model.log_likelihood);

    for (int iter = 0; iter < config.max_iter; ++iter) {
        EmDiagnostics step_diag;
        const auto membership = e_step(grid, activations, model, &step_diag);
        MixtureModel candidate = m_step(grid, activations, membership, model, config, &step_diag);
        if (diag) {
            diag->uniform_membership_bins += step_diag.uniform_membership_bins;
            diag->dropped_components += step_diag.dropped_components;
        }

        bool converged = false;
        if (candidate.log_likelihood >= model.log_likelihood - 1e-12) {
            double move = 0.0;
            const bool same_k = candidate.k() == model.k();
            if (same_k) {
                for (std::size_t j = 0; j < candidate.k(); ++j)
                    move += normalized_distance(candidate.components[j].mean,
                                                model.components[j].mean);
                move /= static_cast<double>(candidate.k());
            }
            converged = same_k && move < config.mean_tol;
            model = std::move(candidate);
        } else {
            // The Markley mean step is not guaranteed ascent for this
            // likelihood. Keep the means and apply only the exact prior and
            // variance sub-steps, which are.
            if (diag) ++diag->mean_update_rejections;
            MixtureModel fallback = model;
            std::vector<double> priors(model.k(), 0.0);
            for (std::size_t j = 0; j < model.k(); ++j)
                for (std::size_t i = 0; i < grid.size(); ++i)
                    priors[j] += activations.values[i] * membership[j][i];
            double prior_total = 0.0;
            for (double p : priors) prior_total += p;
            for (std::size_t j = 0; j < model.k(); ++j) {
                double var = 0.0;
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    const double d =
                        normalized_distance(grid.bins[i], model.components[j].mean);
                    const double w = priors[j] > 0.0
                                         ? activations.values[i] * membership[j][i] / priors[j]
                                         : 0.0;
                    var += w * d * d;
                }
                fallback.components[j].variance = std::max(var, config.variance_floor);
                fallback.components[j].prior = priors[j] / prior_total;
            }
            sort_by_prior(fallback);
            fallback.log_likelihood = mixture_log_likelihood(grid, activations, fallback);
            if (fallback.log_likelihood >= model.log_likelihood - 1e-12) model = std::move(fallback);
            converged = true;
        }
        if (diag) diag->ll_iterations.push_back(model.log_likelihood);
        if (converged) break;
    }
    return model;
}

MixtureModel fit_mixture(const OrientationGrid& grid, const SoftAssignment& activations,
                         const EmConfig& config, std::vector<double>* per_k_ll,
                         EmDiagnostics* diag) {
    MixtureModel previous;
    bool have_previous = false;
    for (int k = 1; k <= config.k_max; ++k) {
        const std::size_t peak_count =
            nms_peaks(grid, activations, config.nms_radius, static_cast<std::size_t>(k)).size();
        if (peak_count < static_cast<std::size_t>(k)) break;  // cap K at surviving peaks
        MixtureModel model = fit_mixture_k(grid, activations, config, k, diag);
        if (per_k_ll) per_k_ll->push_back(model.log_likelihood);
        if (have_previous && model.log_likelihood - previous.log_likelihood <= config.ll_threshold)
            return previous;
        previous = std::move(model);
        have_previous = true;
    }
    if (!have_previous) throw std::runtime_error("no activation peaks");
    return previous;
}

}  // namespace sopose
