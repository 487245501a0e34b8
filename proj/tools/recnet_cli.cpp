// recnet: command-line front end: generate, analyze, sweep, metrics, plotdata.
//
// Exit codes: 0 success, 1 configuration or input error, 2 every sweep point failed.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "recnet/errors.hpp"
#include "recnet/pipeline.hpp"
#include "recnet/recurrence_network.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace recnet;

namespace {

struct CommonOptions {
    std::string preset;
    std::string config;
    std::string generator;
    std::string kappa;
    std::string zeta;
    std::optional<double> f_amp;
    std::string epsilon;
    bool largest_component{false};
    std::optional<std::size_t> workers;
    std::string out;
    std::optional<std::size_t> t_d;
    std::optional<std::size_t> d_emb;
    bool no_mle{false};
    bool no_network{false};
    bool no_stats{false};
};

void add_config_flags(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--paper-preset", o.preset, "opto-long, opto-short or duffing")
        ->check(CLI::IsMember({"opto-long", "opto-short", "duffing"}));
    cmd->add_option("--config", o.config, "JSON config file (flags override its fields)");
    cmd->add_option("--generator", o.generator, "quantum, duffing or file");
    cmd->add_option("--kappa", o.kappa, "kappa grid: list a,b,c or range start:stop:count");
    cmd->add_option("--zeta", o.zeta, "zeta grid: list a,b,c or range start:stop:count");
    cmd->add_option("--f-amp", o.f_amp, "Duffing drive amplitude (required for the Duffing generator)");
}

void add_analysis_flags(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--epsilon", o.epsilon, "recurrence threshold: auto (epsilon_c) or a value");
    cmd->add_flag("--largest-component", o.largest_component, "compute indicators on the largest component");
    cmd->add_option("--td", o.t_d, "delay override");
    cmd->add_option("--demb", o.d_emb, "embedding dimension override");
    cmd->add_flag("--no-mle", o.no_mle);
    cmd->add_flag("--no-network", o.no_network);
    cmd->add_flag("--no-stats", o.no_stats);
}

SweepConfig resolve(const CommonOptions& o) {
    SweepConfig c = o.preset.empty() ? SweepConfig{} : preset_config(o.preset);
    if (!o.config.empty()) {
        json j;
        try {
            j = json::parse(read_text_file(o.config));
        } catch (const json::exception& e) {
            throw ConfigError("config " + o.config + ": " + e.what());
        }
        c = sweep_config_from_json(j, c);
    }
    if (!o.generator.empty()) c.generator = generator_from_string(o.generator);
    if (!o.kappa.empty() && !o.zeta.empty()) throw ConfigError("give either --kappa or --zeta, not both");
    if (!o.kappa.empty()) {
        if (c.generator != GeneratorKind::quantum) throw ConfigError("--kappa applies to the quantum generator");
        c.grid = parse_grid(o.kappa);
    }
    if (!o.zeta.empty()) {
        if (c.generator != GeneratorKind::duffing) throw ConfigError("--zeta applies to the duffing generator");
        c.grid = parse_grid(o.zeta);
    }
    if (o.f_amp) c.duffing.f_amp = *o.f_amp;
    if (!o.epsilon.empty()) {
        if (o.epsilon == "auto") {
            c.network.epsilon.reset();
        } else {
            json v;
            try {
                v = json::parse(o.epsilon);
            } catch (const json::exception&) {
                throw ConfigError("--epsilon must be auto or a number");
            }
            if (!v.is_number()) throw ConfigError("--epsilon must be auto or a number");
            c.network.epsilon = v.get<double>();
        }
    }
    if (o.largest_component) c.network.largest_component = true;
    if (o.workers) c.workers = *o.workers;
    if (!o.out.empty()) c.out_dir = o.out;
    if (o.t_d) c.embedding.t_d = *o.t_d;
    if (o.d_emb) c.embedding.d_emb = *o.d_emb;
    if (o.no_mle) c.run_mle = false;
    if (o.no_network) c.run_network = false;
    if (o.no_stats) c.run_stats = false;
    return c;
}

json row_json(const SweepRow& r) {
    auto v = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };
    return {{"param", r.param},         {"mle_long", v(r.mle_long)},
            {"mle_short", v(r.mle_short)}, {"epsilon_c", v(r.epsilon_c)},
            {"apl", v(r.apl)},          {"ld", v(r.ld)},
            {"cc", v(r.cc)},            {"transitivity", v(r.transitivity)},
            {"assortativity", v(r.assortativity)}, {"flags", r.flags}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Recurrence-network and Lyapunov analysis of generated or recorded time series"};
    app.require_subcommand(1);

    CommonOptions gen_o;
    double gen_value = 0.0;
    std::string gen_file;
    auto* gen = app.add_subcommand("generate", "write one series (CSV + JSON sidecar)");
    add_config_flags(gen, gen_o);
    gen->add_option("--value", gen_value, "kappa or zeta for this series (default: first grid value)");
    gen->add_option("--out", gen_file, "output CSV path")->required();

    CommonOptions an_o;
    std::string an_input;
    double an_param = 0.0;
    auto* analyze = app.add_subcommand("analyze", "analyze one series file");
    add_analysis_flags(analyze, an_o);
    analyze->add_option("--config", an_o.config, "JSON config file");
    analyze->add_option("--input", an_input, "series CSV")->required()->check(CLI::ExistingFile);
    analyze->add_option("--param", an_param, "parameter value recorded in the output");
    analyze->add_option("--out", an_o.out, "artifact directory")->required();

    CommonOptions sw_o;
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    add_config_flags(sweep, sw_o);
    add_analysis_flags(sweep, sw_o);
    sweep->add_option("--workers", sw_o.workers, "grid points processed in parallel");
    sweep->add_option("--out", sw_o.out, "output directory");

    std::string mt_edges;
    std::size_t mt_nodes = 0;
    bool mt_largest = false;
    auto* metrics = app.add_subcommand("metrics", "indicators of an edge-list network");
    metrics->add_option("--edges", mt_edges, "edge list, one `i j` pair per line")->required()->check(CLI::ExistingFile);
    metrics->add_option("--nodes", mt_nodes, "node count (default: largest index + 1)");
    metrics->add_flag("--largest-component", mt_largest);

    std::string pd_sweep;
    std::string pd_out;
    auto* plotdata = app.add_subcommand("plotdata", "plot-ready CSVs from a sweep.csv");
    plotdata->add_option("--sweep", pd_sweep, "sweep CSV")->required()->check(CLI::ExistingFile);
    plotdata->add_option("--out", pd_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*gen) {
            SweepConfig c = resolve(gen_o);
            if (c.generator == GeneratorKind::file) throw ConfigError("generate: the file generator has nothing to generate");
            if (gen->count("--value") > 0) c.grid = {gen_value};
            if (c.grid.empty()) c.grid = {0.0};
            c.grid.resize(1);
            c.validate();
            TimeSeries ts = c.generator == GeneratorKind::quantum
                                ? generate_series([&] { auto p = c.quantum; p.kappa = c.grid[0]; return p; }())
                                : integrate([&] { auto p = c.duffing; p.zeta = c.grid[0]; return p; }());
            write_series(gen_file, ts);
            std::cout << "wrote " << ts.size() << " samples to " << gen_file << '\n';
            return 0;
        }
        if (*analyze) {
            SweepConfig c = resolve(an_o);
            c.generator = GeneratorKind::file;
            c.grid = {an_param};
            c.files = {an_input};
            c.validate();
            const SweepRow row = analyze_series(read_series(an_input), an_param, c, c.out_dir);
            std::cout << row_json(row).dump(2) << '\n';
            return row.failed ? 2 : 0;
        }
        if (*sweep) {
            const SweepConfig c = resolve(sw_o);
            const IndicatorSweep result = run_sweep(c);
            std::size_t failed = 0;
            for (const auto& r : result.rows) failed += r.failed ? 1 : 0;
            std::cout << result.rows.size() << " points, " << failed << " failed; results in " << c.out_dir.string()
                      << '\n';
            return failed == result.rows.size() ? 2 : 0;
        }
        if (*metrics) {
            RecurrenceNetwork net = read_edge_list(mt_edges, mt_nodes);
            json out;
            out["nodes"] = net.size();
            out["edges"] = net.edge_count();
            out["components"] = connected_components(net);
            if (mt_largest) net = largest_component(net);
            out["ld"] = link_density(net);
            out["cc"] = clustering(net).global;
            auto attempt = [&](const char* key, auto&& f) {
                try {
                    out[key] = f();
                } catch (const Error& e) {
                    out[key] = nullptr;
                    out["errors"][key] = e.what();
                }
            };
            attempt("apl", [&] { return average_path_length(net); });
            attempt("transitivity", [&] { return transitivity(net); });
            attempt("assortativity", [&] { return assortativity(net); });
            std::cout << out.dump(2) << '\n';
            return 0;
        }
        if (*plotdata) {
            for (const auto& p : emit_plot_data(read_sweep_csv(pd_sweep), pd_out)) std::cout << p.string() << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
