#include "recnet/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "recnet/errors.hpp"
#include "recnet/neighbor_search.hpp"

namespace recnet {

std::size_t default_theiler_window(const DelayVectors& vectors) {
    return std::max<std::size_t>(1, vectors.delay() * vectors.dim());
}

DivergenceCurve divergence_curve(const DelayVectors& vectors, std::size_t theiler_window, std::size_t k_max) {
    const std::size_t m = vectors.size();
    if (m <= 2 * theiler_window + k_max) {
        throw InsufficientDataError("divergence_curve: " + std::to_string(m) + " vectors do not exceed 2*" +
                                    std::to_string(theiler_window) + " + " + std::to_string(k_max));
    }
    const std::size_t dim = vectors.dim();
    const KdTree tree(vectors.data(), dim);

    std::vector<double> sum(k_max + 1, 0.0);
    std::vector<std::size_t> count(k_max + 1, 0);
    DivergenceCurve curve;
    for (std::size_t j = 0; j < m; ++j) {
        const auto hit = tree.nearest(vectors[j], j, theiler_window);
        if (!hit) continue;
        if (hit->dist2 == 0.0) {
            ++curve.zero_distance_pairs;
            continue;
        }
        const std::size_t nb = hit->index;
        const std::size_t horizon = std::min(k_max, m - 1 - std::max(j, nb));
        sum[0] += 0.5 * std::log(hit->dist2);
        ++count[0];
        for (std::size_t k = 1; k <= horizon; ++k) {
            const double d2 = squared_distance(vectors[j + k], vectors[nb + k]);
            if (d2 == 0.0) continue;
            sum[k] += 0.5 * std::log(d2);
            ++count[k];
        }
    }
    if (count[0] == 0) throw PreconditionError("divergence_curve: all neighbour pairs coincide");
    for (std::size_t k = 0; k <= k_max; ++k) {
        curve.steps.push_back(k);
        curve.n_pairs.push_back(count[k]);
        curve.log_mean_div.push_back(count[k] > 0 ? sum[k] / static_cast<double>(count[k])
                                                  : std::numeric_limits<double>::quiet_NaN());
    }
    return curve;
}

namespace {

struct LineFit {
    double slope;
    double rms;
    std::size_t points;
};

LineFit least_squares(const DivergenceCurve& c, std::size_t lo, std::size_t hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = lo; i <= hi && i < c.steps.size(); ++i) {
        if (c.n_pairs[i] == 0) continue;
        const double x = static_cast<double>(c.steps[i]);
        const double y = c.log_mean_div[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return {0.0, 0.0, n};
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    const double slope = denom != 0.0 ? (dn * sxy - sx * sy) / denom : 0.0;
    const double intercept = (sy - slope * sx) / dn;
    double ss = 0.0;
    for (std::size_t i = lo; i <= hi && i < c.steps.size(); ++i) {
        if (c.n_pairs[i] == 0) continue;
        const double r = c.log_mean_div[i] - (intercept + slope * static_cast<double>(c.steps[i]));
        ss += r * r;
    }
    return {slope, std::sqrt(ss / dn), n};
}

// Longest run of per-step slopes that all stay within 20% of the run's median.
std::optional<FitRange> auto_range(const DivergenceCurve& c, std::size_t min_points) {
    std::size_t valid = 0;
    while (valid < c.n_pairs.size() && c.n_pairs[valid] > 0) ++valid;
    min_points = std::max<std::size_t>(3, min_points);
    if (valid < min_points) return std::nullopt;
    std::vector<double> slopes(valid - 1);
    for (std::size_t i = 0; i + 1 < valid; ++i) slopes[i] = c.log_mean_div[i + 1] - c.log_mean_div[i];

    std::optional<FitRange> best;
    std::size_t best_len = min_points - 2;  // slopes; a window of n points has n - 1
    std::vector<double> sorted;
    for (std::size_t a = 0; a < slopes.size(); ++a) {
        sorted.clear();
        for (std::size_t b = a; b < slopes.size(); ++b) {
            sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), slopes[b]), slopes[b]);
            const std::size_t len = b - a + 1;
            if (len <= best_len) continue;
            const std::size_t h = sorted.size() / 2;
            const double med = sorted.size() % 2 == 1 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
            const double tol = 0.2 * med;
            if (med > 0.0 && sorted.front() >= med - tol && sorted.back() <= med + tol) {
                best_len = len;
                best = FitRange{c.steps[a], c.steps[b + 1]};
            }
        }
    }
    return best;
}

}  // namespace

MleEstimate fit_mle(const DivergenceCurve& curve, std::optional<FitRange> range, double dt, std::size_t min_points) {
    if (curve.steps.empty()) throw PreconditionError("fit_mle: empty curve");
    MleEstimate est;
    if (!range) {
        range = auto_range(curve, min_points);
        if (!range) {
            est.no_linear_region = true;
            range = FitRange{curve.steps.front(), curve.steps.back()};
        }
    }
    if (range->k_max < range->k_min) throw PreconditionError("fit_mle: empty fit range");
    const auto lo = static_cast<std::size_t>(
        std::lower_bound(curve.steps.begin(), curve.steps.end(), range->k_min) - curve.steps.begin());
    const auto hi_it = std::upper_bound(curve.steps.begin(), curve.steps.end(), range->k_max);
    if (hi_it == curve.steps.begin()) throw PreconditionError("fit_mle: range outside curve");
    const auto hi = static_cast<std::size_t>(hi_it - curve.steps.begin()) - 1;
    const LineFit fit = least_squares(curve, lo, hi);
    if (fit.points < 3) throw PreconditionError("fit_mle: fewer than 3 usable points in range");
    est.lambda = fit.slope;
    est.lambda_per_time = fit.slope / dt;
    est.fit_range = *range;
    est.fit_residual = fit.rms;
    return est;
}

}  // namespace recnet
