#pragma once

/// Evaluation metrics: location / angular errors per sample, the
/// challenge-style combined score, and distance-binned reports.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sopose/pose.hpp"

namespace sopose {

struct EvalRecord {
    std::string sample_id;
    double loc_err_m = 0.0;
    double rel_loc_err = 0.0;
    double ang_err_rad = 0.0;  // full geodesic rotation angle, 2*acos(|q.q_gt|)
    double gt_range_m = 0.0;
};

/// Throws std::invalid_argument on zero ground-truth range.
EvalRecord evaluate_pair(const PoseSample& pred, const PoseSample& gt,
                         const std::string& sample_id = {});

/// mean(rel_loc_err) + mean(ang_err_rad). Pairwise summation, so the score
/// is exactly permutation invariant. Throws on an empty list.
double esa_score(std::span<const EvalRecord> records);

struct DistanceBin {
    double lo_m = 0.0, hi_m = 0.0;  // half-open [lo, hi)
    std::size_t count = 0;
    std::optional<double> mean_loc_err_m;   // empty bins report no mean
    std::optional<double> mean_ang_err_rad;
};

struct DistanceReport {
    std::vector<DistanceBin> bins;
    std::size_t overflow_count = 0;  // records outside every bin
};

/// Bin records by gt_range_m into half-open intervals between consecutive
/// edges. Edges must be strictly increasing with at least two entries.
DistanceReport error_by_distance(std::span<const EvalRecord> records,
                                 std::span<const double> bin_edges_m);

}  // namespace sopose
