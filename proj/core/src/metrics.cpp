#include "sopose/metrics.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace sopose {

namespace {

/// Pairwise (cascade) summation of f(records[i]) over [lo, hi).
double pairwise_sum(std::span<const EvalRecord> records, std::size_t lo, std::size_t hi,
                    const std::function<double(const EvalRecord&)>& f) {
    const std::size_t n = hi - lo;
    if (n <= 4) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += f(records[i]);
        return s;
    }
    const std::size_t mid = lo + n / 2;
    return pairwise_sum(records, lo, mid, f) + pairwise_sum(records, mid, hi, f);
}

}  // namespace

EvalRecord evaluate_pair(const PoseSample& pred, const PoseSample& gt,
                         const std::string& sample_id) {
    const double range = norm(gt.t);
    if (!(range > 0.0)) throw std::invalid_argument("zero ground-truth range");
    EvalRecord rec;
    rec.sample_id = sample_id;
    rec.loc_err_m = norm(pred.t - gt.t);
    rec.rel_loc_err = rec.loc_err_m / range;
    rec.ang_err_rad = geodesic_angle(pred.q, gt.q);
    rec.gt_range_m = range;
    return rec;
}

double esa_score(std::span<const EvalRecord> records) {
    if (records.empty()) throw std::invalid_argument("empty record list");
    // Sorting by id before summing makes the score independent of input
    // order even at the last-ulp level.
    std::vector<EvalRecord> sorted(records.begin(), records.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const EvalRecord& a, const EvalRecord& b) {
                         return a.sample_id < b.sample_id;
                     });
    const double n = static_cast<double>(sorted.size());
    const double rel =
        pairwise_sum(sorted, 0, sorted.size(), [](const EvalRecord& r) { return r.rel_loc_err; });
    const double ang =
        pairwise_sum(sorted, 0, sorted.size(), [](const EvalRecord& r) { return r.ang_err_rad; });
    return rel / n + ang / n;
}

DistanceReport error_by_distance(std::span<const EvalRecord> records,
                                 std::span<const double> bin_edges_m) {
    if (bin_edges_m.size() < 2) throw std::invalid_argument("need at least two bin edges");
    for (std::size_t i = 1; i < bin_edges_m.size(); ++i) {
        if (!(bin_edges_m[i] > bin_edges_m[i - 1]))
            throw std::invalid_argument("bin edges must be strictly increasing");
    }

    DistanceReport report;
    report.bins.resize(bin_edges_m.size() - 1);
    std::vector<double> loc_sum(report.bins.size(), 0.0), ang_sum(report.bins.size(), 0.0);
    for (std::size_t b = 0; b < report.bins.size(); ++b) {
        report.bins[b].lo_m = bin_edges_m[b];
        report.bins[b].hi_m = bin_edges_m[b + 1];
    }

    for (const EvalRecord& r : records) {
        const auto it = std::upper_bound(bin_edges_m.begin(), bin_edges_m.end(), r.gt_range_m);
        const std::ptrdiff_t idx = it - bin_edges_m.begin() - 1;
        if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(report.bins.size())) {
            ++report.overflow_count;
            continue;
        }
        auto& bin = report.bins[static_cast<std::size_t>(idx)];
        ++bin.count;
        loc_sum[static_cast<std::size_t>(idx)] += r.loc_err_m;
        ang_sum[static_cast<std::size_t>(idx)] += r.ang_err_rad;
    }
    for (std::size_t b = 0; b < report.bins.size(); ++b) {
        if (report.bins[b].count > 0) {
            const double n = static_cast<double>(report.bins[b].count);
            report.bins[b].mean_loc_err_m = loc_sum[b] / n;
            report.bins[b].mean_ang_err_rad = ang_sum[b] / n;
        }
    }
    return report;
}

}  // namespace sopose
