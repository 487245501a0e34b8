// embedding.hpp: delay selection by average mutual information, false-nearest-neighbour
// dimension selection, and delay-vector reconstruction.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace recnet {

// M' = M - (d_emb - 1) t_d points x_j = [s(j), s(j + t_d), ..., s(j + (d_emb - 1) t_d)],
// stored row-major.
class DelayVectors {
public:
    DelayVectors() = default;
    DelayVectors(std::vector<double> coords, std::size_t dim, std::size_t delay, std::size_t source_len);

    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t delay() const noexcept { return delay_; }
    std::size_t source_length() const noexcept { return source_len_; }

    std::span<const double> operator[](std::size_t j) const {
        return std::span<const double>(coords_).subspan(j * dim_, dim_);
    }
    std::span<const double> data() const noexcept { return coords_; }

    // Plain point cloud (no source series); delay and source length are 0.
    static DelayVectors from_points(std::vector<double> coords, std::size_t dim);

private:
    std::vector<double> coords_;
    std::size_t dim_{0};
    std::size_t delay_{0};
    std::size_t source_len_{0};
};

DelayVectors embed(std::span<const double> series, std::size_t t_d, std::size_t d_emb);

struct AmiValue {
    double bits{0.0};
    bool constant_series{false};  // marginal entropy is zero; bits reported as 0
};

// Plug-in estimate (bits) from an equal-width n_bins x n_bins histogram of the pairs
// (s(i), s(i+lag)), i = 0..M-lag-1. Bins span the range of the whole series.
// Throws PreconditionError if lag == 0, n_bins < 2, or M - lag < 10 n_bins.
AmiValue average_mutual_information(std::span<const double> series, std::size_t lag, std::size_t n_bins = 64);

struct AmiCurve {
    std::vector<std::size_t> lags;
    std::vector<double> bits;
    bool constant_series{false};
};

// I(T) for T = 1..max_lag.
AmiCurve ami_curve(std::span<const double> series, std::size_t max_lag, std::size_t n_bins = 64);

struct DelayChoice {
    std::size_t t_d{0};
    bool no_local_minimum{false};
};

// First T with I(T-1) > I(T) <= I(T+1); otherwise the (lowest) argmin with the flag set.
DelayChoice find_delay(const AmiCurve& curve);

// Scans I(T) upward from T = 1 and stops one lag past the first local minimum, so long
// oversampled series need not evaluate the full lag range. `curve` receives the scanned part.
DelayChoice estimate_delay(std::span<const double> series, std::size_t max_lag, std::size_t n_bins = 64,
                           AmiCurve* curve = nullptr);

struct FnnOptions {
    double r_tol{15.0};
    double a_tol{2.0};
    std::size_t theiler{0};  // neighbours closer in time than this are skipped
};

// Kennel-style false-nearest-neighbour fraction for dimension d lifted to d + 1.
double false_nearest_neighbors(std::span<const double> series, std::size_t t_d, std::size_t d,
                               const FnnOptions& options = {});

struct DimensionChoice {
    std::size_t d_emb{1};
    bool threshold_met{true};
    std::vector<double> fnn_fraction;  // index d-1 holds FNN(d)
};

DimensionChoice choose_embedding_dim(std::span<const double> series, std::size_t t_d, std::size_t d_max = 10,
                                     double threshold = 0.01, const FnnOptions& options = {});

}  // namespace recnet
