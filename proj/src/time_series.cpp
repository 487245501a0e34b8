#include "recnet/time_series.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "recnet/errors.hpp"

namespace recnet {

TimeSeries TimeSeries::prefix(std::size_t n) const {
    if (n > values.size()) {
        throw PreconditionError("prefix length " + std::to_string(n) + " exceeds series length " +
                                std::to_string(values.size()));
    }
    TimeSeries out;
    out.values.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n));
    out.dt = dt;
    out.meta = meta;
    out.meta["prefix_length"] = n;
    return out;
}

void require_finite(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw PreconditionError("non-finite sample at index " + std::to_string(i));
        }
    }
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
    auto p = csv_path;
    p.replace_extension(".json");
    return p;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
        os << text;
        if (!os) throw IoError("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_series(const std::filesystem::path& csv_path, const TimeSeries& series) {
    std::string out = "index,value\n";
    out.reserve(series.size() * 24 + 16);
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += format_double(series.values[i]);
        out += '\n';
    }
    write_text_file(csv_path, out);

    nlohmann::json side;
    side["dt"] = series.dt;
    side["length"] = series.size();
    side["meta"] = series.meta;
    write_text_file(sidecar_path(csv_path), side.dump(2) + "\n");
}

TimeSeries read_series(const std::filesystem::path& csv_path) {
    const std::string text = read_text_file(csv_path);
    TimeSeries ts;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string_view line(text.data() + pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line_no == 1 && line.find("index") != std::string_view::npos) continue;
        const auto comma = line.find(',');
        std::string_view field = comma == std::string_view::npos ? line : line.substr(comma + 1);
        double v = 0.0;
        auto res = std::from_chars(field.data(), field.data() + field.size(), v);
        if (res.ec != std::errc{}) {
            throw IoError(csv_path.string() + ":" + std::to_string(line_no) + ": bad value");
        }
        ts.values.push_back(v);
    }
    const auto side = sidecar_path(csv_path);
    if (std::filesystem::exists(side)) {
        auto j = nlohmann::json::parse(read_text_file(side));
        ts.dt = j.value("dt", 1.0);
        if (j.contains("meta")) ts.meta = j["meta"];
    }
    return ts;
}

}  // namespace recnet
