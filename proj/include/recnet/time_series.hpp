// time_series.hpp: uniformly sampled scalar series and its CSV + JSON sidecar format.
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace recnet {

struct TimeSeries {
    std::vector<double> values;
    double dt{1.0};
    nlohmann::json meta = nlohmann::json::object();

    std::size_t size() const noexcept { return values.size(); }
    std::span<const double> view() const noexcept { return values; }

    // First `n` samples with the same dt and meta (plus a "prefix" note).
    TimeSeries prefix(std::size_t n) const;
};

// Throws PreconditionError on NaN/inf.
void require_finite(std::span<const double> values);

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double x);

// `index,value` CSV at `csv_path`; metadata (dt, meta) at the sidecar path.
void write_series(const std::filesystem::path& csv_path, const TimeSeries& series);
TimeSeries read_series(const std::filesystem::path& csv_path);

// x.csv -> x.json
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

// Writes `text` only through a temporary file + rename, so readers never see partial files.
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace recnet
