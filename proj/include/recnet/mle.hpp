// mle.hpp: maximal Lyapunov exponent from delay vectors (Rosenstein-style average
// log divergence of nearest-neighbour pairs, followed by a straight-line fit).
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "recnet/embedding.hpp"

namespace recnet {

struct DivergenceCurve {
    std::vector<std::size_t> steps;      // k = 0..k_max
    std::vector<double> log_mean_div;    // mean over pairs of ln d_k (NaN where n_pairs == 0)
    std::vector<std::size_t> n_pairs;
    std::size_t zero_distance_pairs{0};  // references whose neighbour coincided (d_0 = 0), excluded
};

// For every reference j the nearest neighbour j' with |j - j'| > theiler_window (ties to the
// lowest index) is tracked for k = 0..k_max steps while both j + k and j' + k stay in range.
// Throws InsufficientDataError if M' <= 2 theiler_window + k_max, PreconditionError if
// every admissible pair has d_0 = 0.
DivergenceCurve divergence_curve(const DelayVectors& vectors, std::size_t theiler_window, std::size_t k_max);

struct FitRange {
    std::size_t k_min{0};
    std::size_t k_max{0};
};

struct MleEstimate {
    double lambda{0.0};           // per sample
    double lambda_per_time{0.0};  // lambda / dt
    FitRange fit_range;
    double fit_residual{0.0};     // RMS of the least-squares line
    bool no_linear_region{false};
};

// Least-squares slope over `range` (points with n_pairs == 0 are skipped). Without a range,
// picks the longest window whose per-step slopes all lie within 20% of a positive window median;
// if no window of at least `min_points` points qualifies, fits the whole curve and sets the flag.
MleEstimate fit_mle(const DivergenceCurve& curve, std::optional<FitRange> range = std::nullopt, double dt = 1.0,
                    std::size_t min_points = 10);

// Default Theiler window t_d * d_emb (at least 1).
std::size_t default_theiler_window(const DelayVectors& vectors);

}  // namespace recnet
