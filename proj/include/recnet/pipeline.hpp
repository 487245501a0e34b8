// pipeline.hpp: sweeps of a nonlinearity parameter: series generation with an on-disk cache,
// embedding, MLE on the long series and its short prefix, recurrence-network indicators on
// the short prefix, and CSV export.
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "recnet/duffing_signal.hpp"
#include "recnet/quantum_signal.hpp"
#include "recnet/time_series.hpp"

namespace recnet {

enum class GeneratorKind { quantum, duffing, file };

std::string to_string(GeneratorKind g);
GeneratorKind generator_from_string(const std::string& s);

// "a,b,c" or "start:stop:count" (inclusive, evenly spaced).
std::vector<double> parse_grid(const std::string& text);

struct EmbeddingConfig {
    std::optional<std::size_t> t_d;
    std::optional<std::size_t> d_emb;
    std::size_t ami_bins{64};
    std::size_t max_lag{20000};
    std::size_t max_dim{10};
    double fnn_threshold{0.01};
};

struct MleConfig {
    std::size_t k_max{100};
    std::size_t min_fit_points{10};
};

struct NetworkConfig {
    std::optional<double> epsilon;  // empty: epsilon_c
    bool largest_component{false};
};

struct StatsConfig {
    std::size_t n_cells{50};
    std::size_t return_map_lag{1};
    std::size_t bitmap_side{5000};
};

struct SweepConfig {
    GeneratorKind generator{GeneratorKind::quantum};
    std::vector<double> grid;
    std::vector<std::filesystem::path> files;  // file generator: one series per grid value
    OptoParams quantum;
    DuffingParams duffing;
    std::size_t short_length{25000};
    EmbeddingConfig embedding;
    MleConfig mle;
    NetworkConfig network;
    StatsConfig stats;
    bool run_mle{true};
    bool run_network{true};
    bool run_stats{true};
    std::filesystem::path out_dir{"out"};
    std::size_t workers{1};

    // "kappa", "zeta" or "value".
    std::string parameter_name() const;
    // Throws ConfigError.
    void validate() const;
};

// Presets: "opto-long", "opto-short", "duffing".
SweepConfig preset_config(const std::string& name);

nlohmann::json to_json(const SweepConfig& c);
// Fields absent from `j` keep the values of `base`.
SweepConfig sweep_config_from_json(const nlohmann::json& j, SweepConfig base = {});

struct SweepRow {
    double param{0.0};
    std::optional<double> mle_long;
    std::optional<double> mle_short;
    std::optional<double> epsilon_c;
    std::optional<double> apl;
    std::optional<double> ld;
    std::optional<double> cc;
    std::optional<double> transitivity;
    std::optional<double> assortativity;
    std::vector<std::string> flags;
    bool failed{false};
};

struct IndicatorSweep {
    std::string parameter{"kappa"};
    std::vector<SweepRow> rows;  // sorted by param
};

// FNV-1a (64 bit) of the canonical JSON dump.
std::uint64_t content_hash(const nlohmann::json& j);

// Generator parameters for one grid point, as used for the cache key.
nlohmann::json generator_params(const SweepConfig& c, std::size_t point);

// Generates or loads the series of one grid point (transients already discarded).
TimeSeries point_series(const SweepConfig& c, std::size_t point, bool* cache_hit = nullptr);

// Runs one grid point and writes its artifacts below `dir`.
SweepRow analyze_series(const TimeSeries& series, double param, const SweepConfig& c,
                        const std::filesystem::path& dir);

// Runs every grid point, writes sweep.csv, config.json and plot data under out_dir.
// Per-point failures end up in the row's flags.
IndicatorSweep run_sweep(const SweepConfig& c);

void write_sweep_csv(const std::filesystem::path& path, const IndicatorSweep& sweep);
IndicatorSweep read_sweep_csv(const std::filesystem::path& path);

// mle_vs_<p>.csv, epsilon_c_vs_<p>.csv, indicators_vs_<p>.csv in `dir`; returns the paths.
// Throws PreconditionError on an empty sweep.
std::vector<std::filesystem::path> emit_plot_data(const IndicatorSweep& sweep, const std::filesystem::path& dir);

}  // namespace recnet
