// recurrence_stats.hpp: recurrence plots, return-time statistics to cells, return maps and
// periodograms of a scalar series.
#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "recnet/embedding.hpp"

namespace recnet {

// Recurrent index pairs (i, j), i < j, under the same rule as recurrence_matrix.
std::vector<std::pair<std::size_t, std::size_t>> recurrence_plot(const DelayVectors& vectors, double epsilon);

void write_recurrence_pairs(const std::filesystem::path& path,
                            std::span<const std::pair<std::size_t, std::size_t>> pairs);

// Binary PBM (P4), symmetric, diagonal set. Above `max_side` nodes, each pixel covers a
// ceil(n / max_side)-wide block and is set if any pair falls inside it.
void write_recurrence_bitmap(const std::filesystem::path& path, std::size_t n_nodes,
                             std::span<const std::pair<std::size_t, std::size_t>> pairs,
                             std::size_t max_side = 5000);

struct CellPartition {
    std::vector<double> edges;  // n_cells + 1 strictly increasing values covering [min, max]

    std::size_t n_cells() const noexcept { return edges.empty() ? 0 : edges.size() - 1; }
    std::size_t cell_of(double v) const;
};

// Equal-width cells over the range of the series. A constant series gets one unit-width
// range centred on its value.
CellPartition make_partition(std::span<const double> series, std::size_t n_cells = 50);

struct ReturnTimeHistogram {
    int order{1};
    std::map<std::size_t, std::size_t> counts;   // return time (samples) -> count
    std::optional<std::size_t> cell_id;          // empty: aggregated over all cells
    std::vector<std::size_t> unvisited_cells;    // cells the series never enters
    std::vector<std::size_t> visits;             // per-cell number of visits (maximal stays)
};

// A visit to a cell is a maximal run of consecutive samples inside it. The first return
// time of a visit is the number of samples from its start to the start of the next visit to
// the same cell; the second return time spans to the visit after that.
ReturnTimeHistogram return_time_distribution(std::span<const double> series, const CellPartition& partition,
                                             int order = 1, std::optional<std::size_t> cell = std::nullopt);

// Distinct points (s_i, s_{i+lag}) in order of first appearance.
std::vector<std::pair<double, double>> return_map(std::span<const double> series, std::size_t lag = 1);

struct Spectrum {
    std::vector<double> frequency;  // cycles per unit time, k / (M dt)
    std::vector<double> power;
};

// One-sided periodogram of the mean-removed series at the M/2 + 1 non-negative frequencies:
// |X_k|^2 / M, with bins other than 0 and M/2 doubled so that the total equals M * variance.
Spectrum power_spectrum(std::span<const double> series, double dt = 1.0);

}  // namespace recnet
