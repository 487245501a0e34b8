#include "recnet/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include "recnet/embedding.hpp"
#include "recnet/errors.hpp"
#include "recnet/mle.hpp"
#include "recnet/recurrence_network.hpp"
#include "recnet/recurrence_stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace recnet {

std::string to_string(GeneratorKind g) {
    switch (g) {
        case GeneratorKind::quantum: return "quantum";
        case GeneratorKind::duffing: return "duffing";
        case GeneratorKind::file: return "file";
    }
    return "quantum";
}

GeneratorKind generator_from_string(const std::string& s) {
    if (s == "quantum") return GeneratorKind::quantum;
    if (s == "duffing") return GeneratorKind::duffing;
    if (s == "file") return GeneratorKind::file;
    throw ConfigError("unknown generator '" + s + "' (expected quantum, duffing or file)");
}

namespace {

double parse_number(const std::string& tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ConfigError("grid: cannot parse '" + tok + "'");
    }
    while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
    if (used != tok.size() || !std::isfinite(v)) throw ConfigError("grid: cannot parse '" + tok + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError("grid: empty");
    if (t.find(':') != std::string::npos) {
        const auto parts = split(t, ':');
        if (parts.size() != 3) throw ConfigError("grid: range must be start:stop:count");
        const double start = parse_number(trim(parts[0]));
        const double stop = parse_number(trim(parts[1]));
        const double count_d = parse_number(trim(parts[2]));
        if (count_d < 1 || count_d != std::floor(count_d)) throw ConfigError("grid: count must be a positive integer");
        const auto count = static_cast<std::size_t>(count_d);
        if (count == 1 && start != stop) throw ConfigError("grid: a one-point range needs start == stop");
        std::vector<double> g(count);
        for (std::size_t i = 0; i < count; ++i) {
            g[i] = count == 1 ? start
                              : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
        }
        g.back() = stop;
        return g;
    }
    std::vector<double> g;
    for (const auto& tok : split(t, ',')) g.push_back(parse_number(trim(tok)));
    return g;
}

std::string SweepConfig::parameter_name() const {
    switch (generator) {
        case GeneratorKind::quantum: return "kappa";
        case GeneratorKind::duffing: return "zeta";
        case GeneratorKind::file: return "value";
    }
    return "value";
}

void SweepConfig::validate() const {
    if (grid.empty()) throw ConfigError("sweep: parameter grid is empty");
    for (double g : grid) {
        if (!std::isfinite(g)) throw ConfigError("sweep: grid values must be finite");
    }
    auto sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ConfigError("sweep: duplicate grid values");
    }
    switch (generator) {
        case GeneratorKind::quantum:
            for (double g : grid) {
                OptoParams p = quantum;
                p.kappa = g;
                p.validate();
            }
            break;
        case GeneratorKind::duffing:
            for (double g : grid) {
                DuffingParams p = duffing;
                p.zeta = g;
                p.validate();
            }
            break;
        case GeneratorKind::file:
            if (files.size() != grid.size()) {
                throw ConfigError("sweep: the file generator needs one input file per grid value");
            }
            break;
    }
    if (short_length < 2) throw ConfigError("sweep: short_length must be at least 2");
    if (embedding.t_d && *embedding.t_d == 0) throw ConfigError("sweep: t_d must be positive");
    if (embedding.d_emb && *embedding.d_emb == 0) throw ConfigError("sweep: d_emb must be positive");
    if (embedding.ami_bins < 2) throw ConfigError("sweep: ami_bins must be at least 2");
    if (embedding.max_dim == 0) throw ConfigError("sweep: max_dim must be positive");
    if (mle.k_max == 0) throw ConfigError("sweep: mle.k_max must be positive");
    if (mle.min_fit_points < 3) throw ConfigError("sweep: mle.min_fit_points must be at least 3");
    if (network.epsilon && !(std::isfinite(*network.epsilon) && *network.epsilon >= 0.0)) {
        throw ConfigError("sweep: epsilon must be a finite nonnegative number");
    }
    if (stats.n_cells == 0) throw ConfigError("sweep: stats.n_cells must be positive");
    if (stats.return_map_lag == 0) throw ConfigError("sweep: stats.return_map_lag must be positive");
    if (workers == 0) throw ConfigError("sweep: workers must be at least 1");
}

SweepConfig preset_config(const std::string& name) {
    SweepConfig c;
    if (name == "opto-long" || name == "opto-short") {
        c.generator = GeneratorKind::quantum;
        c.grid = parse_grid("0:0.1:101");
        for (double g : parse_grid("0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1")) c.grid.push_back(g);
        c.quantum.n_samples = (name == "opto-long" ? 300000 : 25000) + c.quantum.n_transient;
        return c;
    }
    if (name == "duffing") {
        c.generator = GeneratorKind::duffing;
        c.grid = parse_grid("0:1:11");
        c.duffing.dt = 0.01;
        c.duffing.stride = 10;
        c.duffing.n_transient = 10000;
        c.duffing.n_samples = 100000 + c.duffing.n_transient;
        return c;
    }
    throw ConfigError("unknown preset '" + name + "' (expected opto-long, opto-short or duffing)");
}

namespace {

json optional_json(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

template <class T>
void read_optional(const json& j, const char* key, std::optional<T>& out) {
    if (!j.contains(key)) return;
    if (j[key].is_null()) {
        out.reset();
    } else {
        out = j[key].get<T>();
    }
}

}  // namespace

json to_json(const SweepConfig& c) {
    json j;
    j["generator"] = to_string(c.generator);
    j["parameter"] = c.parameter_name();
    j["grid"] = c.grid;
    json files = json::array();
    for (const auto& f : c.files) files.push_back(f.string());
    j["files"] = files;
    j["quantum"] = to_json(c.quantum);
    j["duffing"] = to_json(c.duffing);
    j["short_length"] = c.short_length;
    j["embedding"] = {{"t_d", optional_json(c.embedding.t_d)},
                      {"d_emb", optional_json(c.embedding.d_emb)},
                      {"ami_bins", c.embedding.ami_bins},
                      {"max_lag", c.embedding.max_lag},
                      {"max_dim", c.embedding.max_dim},
                      {"fnn_threshold", c.embedding.fnn_threshold}};
    j["mle"] = {{"k_max", c.mle.k_max}, {"min_fit_points", c.mle.min_fit_points}};
    j["network"] = {{"epsilon", c.network.epsilon ? json(*c.network.epsilon) : json("auto")},
                    {"largest_component", c.network.largest_component}};
    j["stats"] = {{"n_cells", c.stats.n_cells},
                  {"return_map_lag", c.stats.return_map_lag},
                  {"bitmap_side", c.stats.bitmap_side}};
    j["analysis"] = {{"mle", c.run_mle}, {"network", c.run_network}, {"stats", c.run_stats}};
    j["out"] = c.out_dir.string();
    j["workers"] = c.workers;
    return j;
}

SweepConfig sweep_config_from_json(const json& j, SweepConfig c) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    try {
        if (j.contains("generator")) c.generator = generator_from_string(j["generator"].get<std::string>());
        if (j.contains("grid")) {
            if (j["grid"].is_string()) {
                c.grid = parse_grid(j["grid"].get<std::string>());
            } else {
                c.grid = j["grid"].get<std::vector<double>>();
            }
        }
        if (j.contains("files")) {
            c.files.clear();
            for (const auto& f : j["files"]) c.files.emplace_back(f.get<std::string>());
        }
        if (j.contains("quantum")) c.quantum = opto_params_from_json(j["quantum"], c.quantum);
        if (j.contains("duffing")) c.duffing = duffing_params_from_json(j["duffing"], c.duffing);
        c.short_length = j.value("short_length", c.short_length);
        if (j.contains("embedding")) {
            const auto& e = j["embedding"];
            read_optional(e, "t_d", c.embedding.t_d);
            read_optional(e, "d_emb", c.embedding.d_emb);
            c.embedding.ami_bins = e.value("ami_bins", c.embedding.ami_bins);
            c.embedding.max_lag = e.value("max_lag", c.embedding.max_lag);
            c.embedding.max_dim = e.value("max_dim", c.embedding.max_dim);
            c.embedding.fnn_threshold = e.value("fnn_threshold", c.embedding.fnn_threshold);
        }
        if (j.contains("mle")) {
            c.mle.k_max = j["mle"].value("k_max", c.mle.k_max);
            c.mle.min_fit_points = j["mle"].value("min_fit_points", c.mle.min_fit_points);
        }
        if (j.contains("network")) {
            const auto& n = j["network"];
            if (n.contains("epsilon")) {
                if (n["epsilon"].is_string()) {
                    if (n["epsilon"].get<std::string>() != "auto") throw ConfigError("config: epsilon must be \"auto\" or a number");
                    c.network.epsilon.reset();
                } else if (n["epsilon"].is_null()) {
                    c.network.epsilon.reset();
                } else {
                    c.network.epsilon = n["epsilon"].get<double>();
                }
            }
            c.network.largest_component = n.value("largest_component", c.network.largest_component);
        }
        if (j.contains("stats")) {
            c.stats.n_cells = j["stats"].value("n_cells", c.stats.n_cells);
            c.stats.return_map_lag = j["stats"].value("return_map_lag", c.stats.return_map_lag);
            c.stats.bitmap_side = j["stats"].value("bitmap_side", c.stats.bitmap_side);
        }
        if (j.contains("analysis")) {
            c.run_mle = j["analysis"].value("mle", c.run_mle);
            c.run_network = j["analysis"].value("network", c.run_network);
            c.run_stats = j["analysis"].value("stats", c.run_stats);
        }
        if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
        c.workers = j.value("workers", c.workers);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

std::uint64_t content_hash(const json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

json generator_params(const SweepConfig& c, std::size_t point) {
    const double g = c.grid.at(point);
    json j;
    j["generator"] = to_string(c.generator);
    switch (c.generator) {
        case GeneratorKind::quantum: {
            OptoParams p = c.quantum;
            p.kappa = g;
            j["params"] = to_json(p);
            break;
        }
        case GeneratorKind::duffing: {
            DuffingParams p = c.duffing;
            p.zeta = g;
            j["params"] = to_json(p);
            break;
        }
        case GeneratorKind::file:
            j["path"] = c.files.at(point).string();
            break;
    }
    return j;
}

TimeSeries point_series(const SweepConfig& c, std::size_t point, bool* cache_hit) {
    if (cache_hit != nullptr) *cache_hit = false;
    if (c.generator == GeneratorKind::file) return read_series(c.files.at(point));

    const json key = generator_params(c, point);
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(content_hash(key)));
    const fs::path csv = c.out_dir / "cache" / (std::string(hex) + ".csv");
    // The sidecar is written last, so its presence marks a complete entry.
    if (fs::exists(sidecar_path(csv))) {
        TimeSeries ts = read_series(csv);
        if (ts.meta.value("key", json()) == key) {
            if (cache_hit != nullptr) *cache_hit = true;
            return ts;
        }
    }
    TimeSeries ts;
    if (c.generator == GeneratorKind::quantum) {
        OptoParams p = c.quantum;
        p.kappa = c.grid[point];
        ts = generate_series(p);
    } else {
        DuffingParams p = c.duffing;
        p.zeta = c.grid[point];
        ts = integrate(p);
    }
    ts.meta["key"] = key;
    write_series(csv, ts);
    return ts;
}

namespace {

std::string error_code(const std::exception& e) {
    if (dynamic_cast<const InsufficientDataError*>(&e)) return "insufficient_data";
    if (dynamic_cast<const ConstantSeriesError*>(&e)) return "constant_series";
    if (dynamic_cast<const DisconnectedGraphError*>(&e)) return "disconnected";
    if (dynamic_cast<const UndefinedTransitivityError*>(&e)) return "undefined";
    if (dynamic_cast<const DegenerateVarianceError*>(&e)) return "degenerate_variance";
    if (dynamic_cast<const DivergenceError*>(&e)) return "divergence";
    if (dynamic_cast<const TruncationError*>(&e)) return "truncation";
    if (dynamic_cast<const ConfigError*>(&e)) return "config";
    if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
    if (dynamic_cast<const IoError*>(&e)) return "io";
    return "error";
}

struct PointLog {
    std::vector<std::string> flags;
    json detail = json::object();
    json errors = json::object();

    void flag(const std::string& f) {
        if (std::find(flags.begin(), flags.end(), f) == flags.end()) flags.push_back(f);
    }
    void fail(const std::string& stage, const std::exception& e) {
        flag(stage + ":" + error_code(e));
        errors[stage] = e.what();
    }
};

struct Embedding {
    std::size_t t_d{0};
    std::size_t d_emb{0};
};

Embedding choose_embedding(std::span<const double> s, const EmbeddingConfig& cfg, PointLog& log, const std::string& tag) {
    Embedding e;
    json& d = log.detail["embedding_" + tag];
    if (cfg.t_d) {
        e.t_d = *cfg.t_d;
    } else {
        const DelayChoice dc = estimate_delay(s, cfg.max_lag, cfg.ami_bins);
        e.t_d = dc.t_d;
        if (dc.no_local_minimum) log.flag("no_ami_minimum_" + tag);
    }
    if (cfg.d_emb) {
        e.d_emb = *cfg.d_emb;
    } else {
        FnnOptions fo;
        fo.theiler = e.t_d;
        const DimensionChoice dm = choose_embedding_dim(s, e.t_d, cfg.max_dim, cfg.fnn_threshold, fo);
        e.d_emb = dm.d_emb;
        d["fnn_fraction"] = dm.fnn_fraction;
        if (!dm.threshold_met) log.flag("fnn_threshold_not_met_" + tag);
    }
    d["t_d"] = e.t_d;
    d["d_emb"] = e.d_emb;
    return e;
}

std::string opt_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

void write_curve(const fs::path& path, const DivergenceCurve& c) {
    std::string out = "k,log_mean_divergence,n_pairs\n";
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
        out += std::to_string(c.steps[i]) + ',' + (c.n_pairs[i] > 0 ? format_double(c.log_mean_div[i]) : "") + ',' +
               std::to_string(c.n_pairs[i]) + '\n';
    }
    write_text_file(path, out);
}

double mle_for(const TimeSeries& ts, const Embedding& e, const SweepConfig& c, PointLog& log, const fs::path& dir,
               const std::string& tag) {
    const DelayVectors dv = embed(ts.view(), e.t_d, e.d_emb);
    const DivergenceCurve curve = divergence_curve(dv, default_theiler_window(dv), c.mle.k_max);
    write_curve(dir / ("divergence_" + tag + ".csv"), curve);
    const MleEstimate est = fit_mle(curve, std::nullopt, ts.dt, c.mle.min_fit_points);
    if (est.no_linear_region) log.flag("no_linear_region_" + tag);
    if (curve.zero_distance_pairs > 0) log.flag("zero_distance_pairs_" + tag);
    log.detail["mle_" + tag] = {{"lambda", est.lambda},
                                {"lambda_per_time", est.lambda_per_time},
                                {"fit_range", {est.fit_range.k_min, est.fit_range.k_max}},
                                {"fit_residual", est.fit_residual},
                                {"theiler_window", default_theiler_window(dv)},
                                {"zero_distance_pairs", curve.zero_distance_pairs}};
    return est.lambda;
}

void write_histogram(const fs::path& path, const ReturnTimeHistogram& h) {
    std::string out = "return_time,count\n";
    for (const auto& [t, n] : h.counts) out += std::to_string(t) + ',' + std::to_string(n) + '\n';
    write_text_file(path, out);
}

}  // namespace

SweepRow analyze_series(const TimeSeries& series, double param, const SweepConfig& c, const fs::path& dir) {
    SweepRow row;
    row.param = param;
    const bool any = c.run_mle || c.run_network || c.run_stats;
    if (!any) return row;
    fs::create_directories(dir);
    PointLog log;
    log.detail["param"] = param;
    log.detail["length"] = series.size();

    const std::size_t n_short = std::min(c.short_length, series.size());
    if (n_short < c.short_length) log.flag("short_series");
    const TimeSeries short_ts = series.prefix(n_short);
    const bool distinct_long = series.size() > n_short;

    std::optional<Embedding> emb_short;
    std::optional<Embedding> emb_long;
    if (c.run_mle || c.run_network) {
        try {
            emb_short = choose_embedding(short_ts.view(), c.embedding, log, "short");
        } catch (const std::exception& e) {
            log.fail("embedding_short", e);
        }
    }

    if (c.run_mle) {
        if (emb_short) {
            try {
                row.mle_short = mle_for(short_ts, *emb_short, c, log, dir, "short");
            } catch (const std::exception& e) {
                log.fail("mle_short", e);
            }
        }
        if (distinct_long) {
            try {
                emb_long = choose_embedding(series.view(), c.embedding, log, "long");
                row.mle_long = mle_for(series, *emb_long, c, log, dir, "long");
            } catch (const std::exception& e) {
                log.fail("mle_long", e);
            }
        } else {
            row.mle_long = row.mle_short;
        }
    }

    if (c.run_network && emb_short) {
        try {
            const DelayVectors dv = embed(short_ts.view(), emb_short->t_d, emb_short->d_emb);
            const CriticalEpsilon ce = epsilon_critical(dv);
            row.epsilon_c = ce.epsilon;
            if (ce.duplicate_collapse) log.flag("duplicate_collapse");
            const double eps = c.network.epsilon.value_or(ce.epsilon);
            RecurrenceNetwork net = recurrence_matrix(dv, eps);
            log.detail["epsilon"] = eps;
            log.detail["edges"] = net.edge_count();

            const auto pairs = net.edge_list();
            write_recurrence_pairs(dir / "recurrence_plot.txt", pairs);
            write_recurrence_bitmap(dir / "recurrence_plot.pbm", net.size(), pairs, c.stats.bitmap_side);

            const std::size_t n_comp = connected_components(net);
            log.detail["components"] = n_comp;
            if (n_comp > 1) {
                if (c.network.largest_component) {
                    net = largest_component(net);
                    log.flag("largest_component");
                    log.detail["largest_component_size"] = net.size();
                } else {
                    log.flag("disconnected");
                }
            }
            write_degree_histogram(dir / "degree_histogram.csv", degree_distribution(net));
            row.ld = link_density(net);
            row.cc = clustering(net).global;
            try {
                row.apl = average_path_length(net);
            } catch (const std::exception& e) {
                log.fail("apl", e);
            }
            try {
                row.transitivity = transitivity(net);
            } catch (const std::exception& e) {
                log.fail("transitivity", e);
            }
            try {
                row.assortativity = assortativity(net);
            } catch (const std::exception& e) {
                log.fail("assortativity", e);
            }
        } catch (const std::exception& e) {
            log.fail("network", e);
        }
    }

    if (c.run_stats) {
        try {
            const auto s = short_ts.view();
            const CellPartition part = make_partition(s, c.stats.n_cells);
            const auto first = return_time_distribution(s, part, 1);
            const auto second = return_time_distribution(s, part, 2);
            write_histogram(dir / "first_return_times.csv", first);
            write_histogram(dir / "second_return_times.csv", second);
            if (!first.unvisited_cells.empty()) log.flag("unvisited_cells");
            log.detail["unvisited_cells"] = first.unvisited_cells;

            std::string rm = "x,y\n";
            for (const auto& [x, y] : return_map(s, c.stats.return_map_lag)) {
                rm += format_double(x) + ',' + format_double(y) + '\n';
            }
            write_text_file(dir / "return_map.csv", rm);

            const Spectrum sp = power_spectrum(s, short_ts.dt);
            std::string ps = "frequency,power\n";
            for (std::size_t k = 0; k < sp.power.size(); ++k) {
                ps += format_double(sp.frequency[k]) + ',' + format_double(sp.power[k]) + '\n';
            }
            write_text_file(dir / "spectrum.csv", ps);
        } catch (const std::exception& e) {
            log.fail("stats", e);
        }
    }

    const bool has_value = row.mle_long || row.mle_short || row.epsilon_c || row.apl || row.ld || row.cc ||
                           row.transitivity || row.assortativity;
    const bool stats_failed = log.errors.contains("stats");
    if (!has_value && (!c.run_stats || stats_failed)) {
        row.failed = true;
        log.flag("failed");
    }
    row.flags = log.flags;
    log.detail["flags"] = log.flags;
    log.detail["errors"] = log.errors;
    write_text_file(dir / "point.json", log.detail.dump(2) + "\n");
    return row;
}

IndicatorSweep run_sweep(const SweepConfig& c) {
    c.validate();
    fs::create_directories(c.out_dir);
    write_text_file(c.out_dir / "config.json", to_json(c).dump(2) + "\n");

    const std::string pname = c.parameter_name();
    std::vector<SweepRow> rows(c.grid.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < c.grid.size(); i = next++) {
            const double g = c.grid[i];
            try {
                const TimeSeries ts = point_series(c, i);
                rows[i] = analyze_series(ts, g, c, c.out_dir / "points" / (pname + "_" + format_double(g)));
            } catch (const std::exception& e) {
                SweepRow r;
                r.param = g;
                r.failed = true;
                r.flags = {"series:" + error_code(e), "failed"};
                rows[i] = std::move(r);
            }
        }
    };
    const std::size_t n_threads = std::min(c.workers, c.grid.size());
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(work);
    work();
    pool.clear();

    IndicatorSweep sweep;
    sweep.parameter = pname;
    sweep.rows = std::move(rows);
    std::sort(sweep.rows.begin(), sweep.rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.param < b.param; });
    write_sweep_csv(c.out_dir / "sweep.csv", sweep);
    emit_plot_data(sweep, c.out_dir / "plot");
    return sweep;
}

namespace {

std::string join_flags(const std::vector<std::string>& flags) {
    std::string s;
    for (const auto& f : flags) {
        if (!s.empty()) s += ';';
        s += f;
    }
    return s;
}

}  // namespace

void write_sweep_csv(const fs::path& path, const IndicatorSweep& sweep) {
    std::string out = sweep.parameter + ",mle_long,mle_short,epsilon_c,apl,ld,cc,transitivity,assortativity,flags\n";
    for (const auto& r : sweep.rows) {
        out += format_double(r.param) + ',' + opt_cell(r.mle_long) + ',' + opt_cell(r.mle_short) + ',' +
               opt_cell(r.epsilon_c) + ',' + opt_cell(r.apl) + ',' + opt_cell(r.ld) + ',' + opt_cell(r.cc) + ',' +
               opt_cell(r.transitivity) + ',' + opt_cell(r.assortativity) + ',' + join_flags(r.flags) + '\n';
    }
    write_text_file(path, out);
}

IndicatorSweep read_sweep_csv(const fs::path& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty sweep file " + path.string());
    const auto header = split(trim(line), ',');
    if (header.size() != 10 || header[1] != "mle_long" || header[9] != "flags") {
        throw IoError("unexpected sweep header in " + path.string());
    }
    IndicatorSweep sweep;
    sweep.parameter = header[0];
    auto cell = [&](const std::string& s) -> std::optional<double> {
        if (s.empty()) return std::nullopt;
        try {
            return std::stod(s);
        } catch (const std::exception&) {
            throw IoError("bad number '" + s + "' in " + path.string());
        }
    };
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 10) throw IoError("bad sweep row in " + path.string() + ": " + line);
        SweepRow r;
        const auto p = cell(f[0]);
        if (!p) throw IoError("missing parameter value in " + path.string());
        r.param = *p;
        r.mle_long = cell(f[1]);
        r.mle_short = cell(f[2]);
        r.epsilon_c = cell(f[3]);
        r.apl = cell(f[4]);
        r.ld = cell(f[5]);
        r.cc = cell(f[6]);
        r.transitivity = cell(f[7]);
        r.assortativity = cell(f[8]);
        if (!f[9].empty()) r.flags = split(f[9], ';');
        r.failed = std::find(r.flags.begin(), r.flags.end(), "failed") != r.flags.end();
        sweep.rows.push_back(std::move(r));
    }
    return sweep;
}

std::vector<fs::path> emit_plot_data(const IndicatorSweep& sweep, const fs::path& dir) {
    if (sweep.rows.empty()) throw PreconditionError("emit_plot_data: empty sweep");
    const std::string& p = sweep.parameter;
    std::string mle = p + ",mle_long,mle_short,flags\n";
    std::string eps = p + ",epsilon_c,flags\n";
    std::string ind = p + ",apl,ld,cc,transitivity,assortativity,flags\n";
    for (const auto& r : sweep.rows) {
        const std::string x = format_double(r.param);
        const std::string fl = join_flags(r.flags);
        mle += x + ',' + opt_cell(r.mle_long) + ',' + opt_cell(r.mle_short) + ',' + fl + '\n';
        eps += x + ',' + opt_cell(r.epsilon_c) + ',' + fl + '\n';
        ind += x + ',' + opt_cell(r.apl) + ',' + opt_cell(r.ld) + ',' + opt_cell(r.cc) + ',' +
               opt_cell(r.transitivity) + ',' + opt_cell(r.assortativity) + ',' + fl + '\n';
    }
    std::vector<fs::path> out = {dir / ("mle_vs_" + p + ".csv"), dir / ("epsilon_c_vs_" + p + ".csv"),
                                 dir / ("indicators_vs_" + p + ".csv")};
    write_text_file(out[0], mle);
    write_text_file(out[1], eps);
    write_text_file(out[2], ind);
    return out;
}

}  // namespace recnet
