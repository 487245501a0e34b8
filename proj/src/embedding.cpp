#include "recnet/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "recnet/errors.hpp"
#include "recnet/neighbor_search.hpp"

namespace recnet {

DelayVectors::DelayVectors(std::vector<double> coords, std::size_t dim, std::size_t delay, std::size_t source_len)
    : coords_(std::move(coords)), dim_(dim), delay_(delay), source_len_(source_len) {
    if (dim_ == 0 || coords_.size() % dim_ != 0) throw PreconditionError("DelayVectors: bad coordinate layout");
}

DelayVectors DelayVectors::from_points(std::vector<double> coords, std::size_t dim) {
    return DelayVectors(std::move(coords), dim, 0, 0);
}

DelayVectors embed(std::span<const double> series, std::size_t t_d, std::size_t d_emb) {
    if (d_emb == 0) throw PreconditionError("embed: d_emb must be at least 1");
    if (d_emb > 1 && t_d == 0) throw PreconditionError("embed: t_d must be positive");
    const std::size_t span = (d_emb - 1) * t_d;
    if (span >= series.size()) {
        throw PreconditionError("embed: (d_emb - 1) t_d = " + std::to_string(span) + " >= series length " +
                                std::to_string(series.size()));
    }
    const std::size_t m = series.size() - span;
    std::vector<double> coords(m * d_emb);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t c = 0; c < d_emb; ++c) coords[j * d_emb + c] = series[j + c * t_d];
    }
    return DelayVectors(std::move(coords), d_emb, t_d, series.size());
}

namespace {

struct Binned {
    std::vector<std::uint32_t> bins;
    bool constant{false};
};

Binned bin_series(std::span<const double> series, std::size_t n_bins) {
    Binned out;
    out.bins.resize(series.size());
    const auto [lo_it, hi_it] = std::minmax_element(series.begin(), series.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo)) {
        out.constant = true;
        return out;
    }
    const double scale = static_cast<double>(n_bins) / (hi - lo);
    for (std::size_t i = 0; i < series.size(); ++i) {
        auto b = static_cast<std::size_t>((series[i] - lo) * scale);
        out.bins[i] = static_cast<std::uint32_t>(std::min(b, n_bins - 1));
    }
    return out;
}

void check_lag(std::size_t m, std::size_t lag, std::size_t n_bins) {
    if (n_bins < 2) throw PreconditionError("AMI: n_bins must be at least 2");
    if (lag == 0) throw PreconditionError("AMI: lag must be positive");
    if (lag >= m || m - lag < 10 * n_bins) {
        throw PreconditionError("AMI: lag " + std::to_string(lag) + " too large for series of length " +
                                std::to_string(m) + " with " + std::to_string(n_bins) + " bins");
    }
}

double ami_from_bins(const std::vector<std::uint32_t>& bins, std::size_t lag, std::size_t n_bins,
                     std::vector<double>& joint) {
    const std::size_t pairs = bins.size() - lag;
    joint.assign(n_bins * n_bins, 0.0);
    std::vector<double> px(n_bins, 0.0);
    std::vector<double> py(n_bins, 0.0);
    for (std::size_t i = 0; i < pairs; ++i) {
        const std::size_t a = bins[i];
        const std::size_t b = bins[i + lag];
        joint[a * n_bins + b] += 1.0;
        px[a] += 1.0;
        py[b] += 1.0;
    }
    const double inv = 1.0 / static_cast<double>(pairs);
    double info = 0.0;
    for (std::size_t a = 0; a < n_bins; ++a) {
        if (px[a] == 0.0) continue;
        for (std::size_t b = 0; b < n_bins; ++b) {
            const double c = joint[a * n_bins + b];
            if (c == 0.0) continue;
            // p_ab log2(p_ab / (p_a p_b)) with counts: (c/N) log2(c N / (n_a n_b))
            info += c * inv * std::log2(c * static_cast<double>(pairs) / (px[a] * py[b]));
        }
    }
    return std::max(0.0, info);
}

}  // namespace

AmiValue average_mutual_information(std::span<const double> series, std::size_t lag, std::size_t n_bins) {
    check_lag(series.size(), lag, n_bins);
    const Binned b = bin_series(series, n_bins);
    if (b.constant) return {0.0, true};
    std::vector<double> joint;
    return {ami_from_bins(b.bins, lag, n_bins, joint), false};
}

AmiCurve ami_curve(std::span<const double> series, std::size_t max_lag, std::size_t n_bins) {
    check_lag(series.size(), max_lag, n_bins);
    AmiCurve curve;
    const Binned b = bin_series(series, n_bins);
    curve.constant_series = b.constant;
    std::vector<double> joint;
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        curve.lags.push_back(lag);
        curve.bits.push_back(b.constant ? 0.0 : ami_from_bins(b.bins, lag, n_bins, joint));
    }
    return curve;
}

DelayChoice find_delay(const AmiCurve& curve) {
    const auto& I = curve.bits;
    if (I.size() < 3 || curve.lags.size() != I.size()) throw PreconditionError("find_delay: need at least 3 points");
    for (std::size_t i = 1; i + 1 < I.size(); ++i) {
        if (I[i - 1] > I[i] && I[i] <= I[i + 1]) return {curve.lags[i], false};
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < I.size(); ++i) {
        if (I[i] < I[best]) best = i;
    }
    return {curve.lags[best], true};
}

DelayChoice estimate_delay(std::span<const double> series, std::size_t max_lag, std::size_t n_bins, AmiCurve* out) {
    if (series.size() <= 10 * n_bins) throw InsufficientDataError("estimate_delay: series too short");
    max_lag = std::min(max_lag, series.size() - 10 * n_bins);
    check_lag(series.size(), max_lag, n_bins);
    if (max_lag < 3) throw InsufficientDataError("estimate_delay: lag range too small");
    const Binned b = bin_series(series, n_bins);
    if (b.constant) throw ConstantSeriesError("estimate_delay: constant series has no delay structure");
    AmiCurve curve;
    std::vector<double> joint;
    DelayChoice choice{0, true};
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        curve.lags.push_back(lag);
        curve.bits.push_back(ami_from_bins(b.bins, lag, n_bins, joint));
        const auto& I = curve.bits;
        const std::size_t k = I.size();
        if (k >= 3 && I[k - 3] > I[k - 2] && I[k - 2] <= I[k - 1]) {
            choice = {curve.lags[k - 2], false};
            break;
        }
    }
    if (choice.no_local_minimum) choice = find_delay(curve);
    if (out != nullptr) *out = std::move(curve);
    return choice;
}

double false_nearest_neighbors(std::span<const double> series, std::size_t t_d, std::size_t d,
                               const FnnOptions& options) {
    if (t_d == 0) throw PreconditionError("FNN: t_d must be positive");
    if (d == 0) throw PreconditionError("FNN: dimension must be at least 1");
    if (series.size() <= d * t_d || series.size() - d * t_d < 100) {
        throw InsufficientDataError("FNN: fewer than 100 delay vectors at dimension " + std::to_string(d + 1));
    }
    const std::size_t m = series.size() - d * t_d;

    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(series.size());
    double var = 0.0;
    for (double v : series) var += (v - mean) * (v - mean);
    const double sigma = std::sqrt(var / static_cast<double>(series.size()));
    if (!(sigma > 0.0)) throw ConstantSeriesError("FNN: constant series");

    // Same index set in both dimensions: the first m vectors of the d-dimensional embedding.
    std::vector<double> coords(m * d);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t c = 0; c < d; ++c) coords[j * d + c] = series[j + c * t_d];
    }
    const KdTree tree(coords, d);
    std::size_t considered = 0;
    std::size_t false_count = 0;
    const std::span<const double> all(coords);
    for (std::size_t j = 0; j < m; ++j) {
        const auto hit = tree.nearest(all.subspan(j * d, d), j, options.theiler);
        if (!hit) continue;
        ++considered;
        const double rd = std::sqrt(hit->dist2);
        const double extra = std::abs(series[j + d * t_d] - series[hit->index + d * t_d]);
        const bool ratio_false = rd > 0.0 ? extra > options.r_tol * rd : extra > 0.0;
        const bool size_false = std::sqrt(hit->dist2 + extra * extra) > options.a_tol * sigma;
        if (ratio_false || size_false) ++false_count;
    }
    if (considered == 0) throw InsufficientDataError("FNN: no admissible neighbour pairs");
    return static_cast<double>(false_count) / static_cast<double>(considered);
}

DimensionChoice choose_embedding_dim(std::span<const double> series, std::size_t t_d, std::size_t d_max,
                                     double threshold, const FnnOptions& options) {
    if (d_max == 0) throw PreconditionError("choose_embedding_dim: d_max must be at least 1");
    DimensionChoice choice;
    for (std::size_t d = 1; d <= d_max; ++d) {
        choice.fnn_fraction.push_back(false_nearest_neighbors(series, t_d, d, options));
        if (choice.fnn_fraction.back() < threshold) {
            choice.d_emb = d;
            choice.threshold_met = true;
            return choice;
        }
    }
    choice.d_emb = d_max;
    choice.threshold_met = false;
    return choice;
}

}  // namespace recnet
