#include "recnet/recurrence_stats.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <string>

#include <fftw3.h>

#include "recnet/errors.hpp"
#include "recnet/recurrence_network.hpp"
#include "recnet/time_series.hpp"

namespace recnet {

std::vector<std::pair<std::size_t, std::size_t>> recurrence_plot(const DelayVectors& vectors, double epsilon) {
    return recurrence_matrix(vectors, epsilon).edge_list();
}

void write_recurrence_pairs(const std::filesystem::path& path,
                            std::span<const std::pair<std::size_t, std::size_t>> pairs) {
    std::string out;
    for (auto [i, j] : pairs) out += std::to_string(i) + ' ' + std::to_string(j) + '\n';
    write_text_file(path, out);
}

void write_recurrence_bitmap(const std::filesystem::path& path, std::size_t n_nodes,
                             std::span<const std::pair<std::size_t, std::size_t>> pairs, std::size_t max_side) {
    if (n_nodes == 0) throw PreconditionError("write_recurrence_bitmap: empty plot");
    max_side = std::max<std::size_t>(1, max_side);
    const std::size_t block = n_nodes > max_side ? (n_nodes + max_side - 1) / max_side : 1;
    const std::size_t side = (n_nodes + block - 1) / block;
    const std::size_t row_bytes = (side + 7) / 8;
    std::vector<unsigned char> bits(row_bytes * side, 0);
    auto set = [&](std::size_t r, std::size_t c) { bits[r * row_bytes + c / 8] |= static_cast<unsigned char>(0x80u >> (c % 8)); };
    for (std::size_t i = 0; i < side; ++i) set(i, i);
    for (auto [i, j] : pairs) {
        set(i / block, j / block);
        set(j / block, i / block);
    }
    std::string out = "P4\n" + std::to_string(side) + " " + std::to_string(side) + "\n";
    out.append(reinterpret_cast<const char*>(bits.data()), bits.size());
    write_text_file(path, out);
}

std::size_t CellPartition::cell_of(double v) const {
    if (edges.size() < 2) throw PreconditionError("CellPartition: no cells");
    if (v <= edges.front()) return 0;
    if (v >= edges.back()) return n_cells() - 1;
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    return static_cast<std::size_t>(it - edges.begin()) - 1;
}

CellPartition make_partition(std::span<const double> series, std::size_t n_cells) {
    if (series.empty()) throw PreconditionError("make_partition: empty series");
    if (n_cells == 0) throw PreconditionError("make_partition: need at least one cell");
    auto [lo_it, hi_it] = std::minmax_element(series.begin(), series.end());
    double lo = *lo_it;
    double hi = *hi_it;
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    CellPartition p;
    p.edges.resize(n_cells + 1);
    const double width = (hi - lo) / static_cast<double>(n_cells);
    for (std::size_t c = 0; c <= n_cells; ++c) p.edges[c] = lo + width * static_cast<double>(c);
    p.edges.back() = hi;
    return p;
}

ReturnTimeHistogram return_time_distribution(std::span<const double> series, const CellPartition& partition,
                                             int order, std::optional<std::size_t> cell) {
    if (series.size() < 2) throw PreconditionError("return_time_distribution: need at least 2 samples");
    if (order != 1 && order != 2) throw PreconditionError("return_time_distribution: order must be 1 or 2");
    const std::size_t n_cells = partition.n_cells();
    if (cell && *cell >= n_cells) throw PreconditionError("return_time_distribution: cell out of range");

    // Visit start times per cell.
    std::vector<std::vector<std::size_t>> starts(n_cells);
    std::size_t prev = n_cells;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const std::size_t c = partition.cell_of(series[i]);
        if (c != prev) starts[c].push_back(i);
        prev = c;
    }
    ReturnTimeHistogram h;
    h.order = order;
    h.cell_id = cell;
    h.visits.resize(n_cells);
    const auto step = static_cast<std::size_t>(order);
    for (std::size_t c = 0; c < n_cells; ++c) {
        h.visits[c] = starts[c].size();
        if (starts[c].empty()) h.unvisited_cells.push_back(c);
        if (cell && *cell != c) continue;
        for (std::size_t v = 0; v + step < starts[c].size(); ++v) ++h.counts[starts[c][v + step] - starts[c][v]];
    }
    return h;
}

std::vector<std::pair<double, double>> return_map(std::span<const double> series, std::size_t lag) {
    if (lag == 0 || lag >= series.size()) throw PreconditionError("return_map: lag must lie in [1, length)");
    std::vector<std::pair<double, double>> out;
    std::set<std::pair<double, double>> seen;
    for (std::size_t i = 0; i + lag < series.size(); ++i) {
        const std::pair<double, double> p{series[i], series[i + lag]};
        if (seen.insert(p).second) out.push_back(p);
    }
    return out;
}

Spectrum power_spectrum(std::span<const double> series, double dt) {
    const std::size_t m = series.size();
    if (m < 4) throw PreconditionError("power_spectrum: need at least 4 samples");
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(m);

    const bool constant = std::all_of(series.begin(), series.end(), [&](double v) { return v == series[0]; });
    std::vector<double> in(m, 0.0);
    if (!constant) {
        for (std::size_t i = 0; i < m; ++i) in[i] = series[i] - mean;
    }
    const std::size_t bins = m / 2 + 1;
    auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins));
    if (out == nullptr) throw Error("power_spectrum: allocation failed");
    // FFTW planning is not thread-safe; execution is.
    static std::mutex planner;
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), in.data(), out, FFTW_ESTIMATE);
    }
    fftw_execute(plan);

    Spectrum s;
    s.frequency.resize(bins);
    s.power.resize(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        const double re = out[k][0];
        const double im = out[k][1];
        double p = (re * re + im * im) / static_cast<double>(m);
        const bool unpaired = k == 0 || (m % 2 == 0 && k == m / 2);
        if (!unpaired) p *= 2.0;
        s.power[k] = p;
        s.frequency[k] = static_cast<double>(k) / (static_cast<double>(m) * dt);
    }
    {
        std::lock_guard lock(planner);
        fftw_destroy_plan(plan);
    }
    fftw_free(out);
    return s;
}

}  // namespace recnet
