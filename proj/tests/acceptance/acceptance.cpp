// Acceptance checks, one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance 1 4 9      run the listed criteria
//
// Exit status is nonzero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "recnet/duffing_signal.hpp"
#include "recnet/embedding.hpp"
#include "recnet/errors.hpp"
#include "recnet/mle.hpp"
#include "recnet/pipeline.hpp"
#include "recnet/quantum_signal.hpp"
#include "recnet/recurrence_network.hpp"
#include "support/oracles.hpp"
#include "support/reference_systems.hpp"

using namespace recnet;
using namespace recnet::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass{false};
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("recnet_acceptance_" + name);
    fs::remove_all(p);
    return p;
}

// 1. Per-sector norm over random draws.
Outcome unitarity() {
    std::mt19937_64 rng(20240501);
    std::uniform_int_distribution<int> n_dist(0, 200);
    std::uniform_real_distribution<double> kappa_dist(0.0, 1.0);
    std::uniform_real_distribution<double> beta_dist(0.25, 3.0);
    std::uniform_real_distribution<double> tau_dist(0.0, 10.0);
    std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        OptoParams p;
        p.kappa = kappa_dist(rng);
        p.beta = beta_dist(rng);
        p.phi = phi_dist(rng);
        const auto t = coefficients_at(p, n_dist(rng), tau_dist(rng));
        worst = std::max(worst, std::abs(std::norm(t.a) + std::norm(t.b) + std::norm(t.c) - 1.0));
    }
    return {worst < 1e-9, "max | |A|^2+|B|^2+|C|^2 - 1 | = " + fmt("%.3g", worst) + " over 1000 draws (limit 1e-9)"};
}

// 2. <N>(0) of the quantum preset.
Outcome initial_value() {
    const SweepConfig c = preset_config("opto-long");
    const double n0 = mean_photon_number(c.quantum, 0.0);
    const double err = std::abs(n0 - c.quantum.alpha_sq);
    return {c.quantum.alpha_sq == 25.0 && err < 1e-9, "<N>(0) = " + fmt("%.15g", n0) + ", |error| = " + fmt("%.3g", err)};
}

// 3. MST threshold against an explicit Laplacian eigenvalue scan.
Outcome epsilon_oracle() {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<std::size_t> n_dist(10, 200);
    std::uniform_int_distribution<std::size_t> d_dist(1, 5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double resolution = 1e-4;
    int agree = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = n_dist(rng);
        const std::size_t d = d_dist(rng);
        std::vector<double> pts(n * d);
        for (auto& v : pts) v = u(rng);
        const double eps_c = epsilon_critical(DelayVectors::from_points(pts, d)).epsilon;
        const double scan = eigen_scan_threshold(pts, d, resolution);
        const double gap = scan - eps_c;
        worst = std::max(worst, std::abs(gap));
        if (gap >= 0.0 && gap < resolution) ++agree;
    }
    return {agree == 50, std::to_string(agree) + "/50 clouds within one scan step; max |scan - mst| = " +
                             fmt("%.3g", worst)};
}

// 4. Graph indicators against the dense reference and hand-derived values.
Outcome graph_metrics() {
    std::mt19937_64 rng(4242);
    int bad = 0;
    double worst = 0.0;
    auto cmp = [&](double a, double b) {
        const double e = std::abs(a - b);
        worst = std::max(worst, e);
        if (!(e <= 1e-12)) ++bad;
    };
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 29;
        const Dense a = random_graph(n, std::uniform_real_distribution<double>(0.05, 0.9)(rng), rng);
        const RecurrenceNetwork net = network_from_dense(a);
        cmp(link_density(net), naive_ld(a));
        cmp(clustering(net).global, naive_cc(a));
        const double t = naive_transitivity(a);
        if (std::isnan(t)) {
            try {
                transitivity(net);
                ++bad;
            } catch (const UndefinedTransitivityError&) {
            }
        } else {
            cmp(transitivity(net), t);
        }
        if (dense_connected(a)) {
            cmp(average_path_length(net), naive_apl(a));
        } else {
            try {
                average_path_length(net);
                ++bad;
            } catch (const DisconnectedGraphError&) {
            }
        }
        try {
            const double r = assortativity(net);
            cmp(r, eij_assortativity(a));
        } catch (const DegenerateVarianceError&) {
        }
    }
    using Edges = std::vector<RecurrenceNetwork::Edge>;
    auto g = [](std::size_t n, const Edges& e) { return RecurrenceNetwork::from_edges(n, e); };
    Edges k4;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) k4.emplace_back(i, j);
    const auto K3 = g(3, {{0, 1}, {1, 2}, {0, 2}});
    const auto K4 = g(4, k4);
    const auto P3 = g(3, {{0, 1}, {1, 2}});
    const auto star = g(4, {{0, 1}, {0, 2}, {0, 3}});
    const auto tp = g(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    int named_bad = 0;
    auto named = [&](double got, double want) {
        if (std::abs(got - want) > 1e-12) ++named_bad;
    };
    named(average_path_length(K4), 1.0);
    named(average_path_length(P3), 4.0 / 3.0);
    named(average_path_length(star), 1.5);
    named(link_density(K4), 1.0);
    named(link_density(g(5, {})), 0.0);
    named(link_density(P3), 2.0 / 3.0);
    named(clustering(K3).global, 1.0);
    named(clustering(star).global, 0.0);
    named(clustering(tp).global, 7.0 / 12.0);
    named(transitivity(K3), 1.0);
    named(transitivity(star), 0.0);
    named(transitivity(tp), 0.6);
    named(assortativity(star), -1.0);
    for (const auto* regular : {&K4}) {
        try {
            assortativity(*regular);
            ++named_bad;
        } catch (const DegenerateVarianceError&) {
        }
    }
    try {
        assortativity(g(4, {{0, 1}, {2, 3}}));
        ++named_bad;
    } catch (const DegenerateVarianceError&) {
    }
    return {bad == 0 && named_bad == 0, "200 random graphs: " + std::to_string(bad) + " mismatches (max diff " +
                                            fmt("%.3g", worst) + "); named graphs: " + std::to_string(named_bad) +
                                            " mismatches"};
}

// 5. Exponent benchmarks.
Outcome mle_benchmarks() {
    const auto logistic = logistic_series(25000);
    const DelayVectors lv = embed(logistic, 1, 1);
    const double l_log = fit_mle(divergence_curve(lv, 1, 30)).lambda;

    const auto sine = sine_series(25000, 100.0);
    const DelayVectors sv = embed(sine, 25, 2);
    const double l_sin = fit_mle(divergence_curve(sv, default_theiler_window(sv), 100)).lambda;

    const Lorenz sys;
    const double h = 0.01;
    const auto lx = sys.x_series(25000, h);
    const std::size_t t_d = estimate_delay(lx, 200).t_d;
    FnnOptions o;
    o.theiler = t_d;
    const std::size_t d = choose_embedding_dim(lx, t_d, 10, 0.01, o).d_emb;
    const DelayVectors zv = embed(lx, t_d, d);
    const double l_lor = fit_mle(divergence_curve(zv, default_theiler_window(zv), 800), std::nullopt, h).lambda_per_time;
    const double oracle = sys.benettin_exponent(500.0, h);

    const bool ok_log = std::abs(l_log / std::numbers::ln2 - 1.0) <= 0.15;
    const bool ok_sin = std::abs(l_sin) < 0.005;
    const bool ok_lor = std::abs(l_lor / oracle - 1.0) <= 0.2;
    return {ok_log && ok_sin && ok_lor, "logistic " + fmt("%.4f", l_log) + " (ln 2 = 0.6931); sinusoid " +
                                            fmt("%.2e", l_sin) + " per step; Lorenz " + fmt("%.4f", l_lor) +
                                            " vs Benettin " + fmt("%.4f", oracle) + " per unit time"};
}

// Peaks of a degree histogram: counts pooled into width-2 degree bins, smoothed by a centred
// 5-bin moving average (zero padded), then local maxima with prominence >= 5% of the maximum.
std::size_t count_peaks(const std::map<std::size_t, std::size_t>& hist) {
    if (hist.empty()) return 0;
    std::vector<double> h(hist.rbegin()->first / 2 + 1, 0.0);
    for (const auto& [k, n] : hist) h[k / 2] += static_cast<double>(n);
    std::vector<double> s(h.size() + 2, 0.0);  // zero sentinel on both ends
    for (std::size_t i = 0; i < h.size(); ++i) {
        double acc = 0.0;
        for (int o = -2; o <= 2; ++o) {
            const long j = static_cast<long>(i) + o;
            if (j >= 0 && j < static_cast<long>(h.size())) acc += h[static_cast<std::size_t>(j)];
        }
        s[i + 1] = acc / 5.0;
    }
    const double top = *std::max_element(s.begin(), s.end());
    std::size_t peaks = 0;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (!(s[i] > s[i - 1] && s[i] >= s[i + 1])) continue;
        double left = s[i];
        for (std::size_t j = i; j > 0 && s[j - 1] <= s[i]; --j) left = std::min(left, s[j - 1]);
        double right = s[i];
        for (std::size_t j = i; j + 1 < s.size() && s[j + 1] <= s[i]; ++j) right = std::min(right, s[j + 1]);
        if (s[i] - std::max(left, right) >= 0.05 * top) ++peaks;
    }
    return peaks;
}

std::map<std::size_t, std::size_t> read_degree_histogram(const fs::path& p) {
    std::istringstream in(read_text_file(p));
    std::string line;
    std::getline(in, line);
    std::map<std::size_t, std::size_t> h;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        h[std::stoul(line.substr(0, comma))] = std::stoul(line.substr(comma + 1));
    }
    return h;
}

// 6. Weak chaos and the single- to double-peaked degree distribution, 25000-point series.
Outcome quantum_structure() {
    SweepConfig c = preset_config("opto-short");
    c.grid = {0.0, 0.03, 0.06, 0.1};
    c.run_stats = false;
    c.out_dir = scratch("structure");
    const IndicatorSweep s = run_sweep(c);
    bool small_positive = true;
    std::vector<std::size_t> peaks;
    std::string detail = "kappa:mle/peaks";
    for (const auto& r : s.rows) {
        const double lam = r.mle_short.value_or(std::nan(""));
        small_positive = small_positive && lam > 0.0 && lam < 0.05;
        const fs::path hist = c.out_dir / "points" / ("kappa_" + format_double(r.param)) / "degree_histogram.csv";
        peaks.push_back(fs::exists(hist) ? count_peaks(read_degree_histogram(hist)) : 0);
        detail += " " + format_double(r.param) + ":" + fmt("%.4f", lam) + "/" + std::to_string(peaks.back());
    }
    bool transition = peaks.size() == 4 && peaks.front() == 1 && peaks.back() >= 2;
    for (std::size_t i = 1; i < peaks.size(); ++i) transition = transition && peaks[i] >= peaks[i - 1];
    fs::remove_all(c.out_dir);
    return {small_positive && transition, detail + " (mle per sample must lie in (0, 0.05))"};
}

double nrms(const IndicatorSweep& s) {
    double diff = 0.0;
    double ref = 0.0;
    for (const auto& r : s.rows) {
        const double l = r.mle_long.value_or(std::nan(""));
        const double sh = r.mle_short.value_or(std::nan(""));
        diff += (sh - l) * (sh - l);
        ref += l * l;
    }
    return std::sqrt(diff / ref);
}

std::string curve_text(const IndicatorSweep& s) {
    std::string t;
    for (const auto& r : s.rows) {
        t += " " + format_double(r.param) + ":" + fmt("%.2e", r.mle_long.value_or(std::nan(""))) + "/" +
             fmt("%.2e", r.mle_short.value_or(std::nan("")));
    }
    return t;
}

// 7. Short-vs-long MLE discrepancy, quantum against Duffing on matched five-point grids.
Outcome discrepancy() {
    SweepConfig q = preset_config("opto-long");
    q.grid = {0.0, 0.025, 0.05, 0.075, 0.1};
    q.run_network = false;
    q.run_stats = false;
    q.out_dir = scratch("discrepancy_quantum");
    const IndicatorSweep qs = run_sweep(q);

    SweepConfig d = preset_config("duffing");
    d.duffing.f_amp = 1.0;
    d.grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    d.run_network = false;
    d.run_stats = false;
    d.out_dir = scratch("discrepancy_duffing");
    const IndicatorSweep ds = run_sweep(d);

    const double nq = nrms(qs);
    const double nd = nrms(ds);
    fs::remove_all(q.out_dir);
    fs::remove_all(d.out_dir);
    return {std::isfinite(nq) && std::isfinite(nd) && nq > nd,
            "NRMS quantum " + fmt("%.3f", nq) + " vs Duffing " + fmt("%.3f", nd) + "; quantum long/short" +
                curve_text(qs) + "; Duffing long/short" + curve_text(ds)};
}

// 8. Integrator accuracy and order.
Outcome integrator() {
    DuffingParams lin;
    lin.delta1 = lin.delta2 = 0.0;
    lin.Omega_cl = 0.0;
    lin.zeta = 0.0;
    lin.f_amp = 0.0;
    const double h = 2.0 * std::numbers::pi / lin.omega_cl / 1000.0;
    OscState s = initial_state(lin);
    double worst = 0.0;
    for (std::size_t k = 1; k <= 100000; ++k) {
        s = rk4_step(s, lin, h);
        worst = std::max(worst, std::abs(s.x1 - std::cos(lin.omega_cl * static_cast<double>(k) * h)));
    }

    DuffingParams nl;
    nl.zeta = 1.0;
    nl.f_amp = 1.0;
    const double horizon = 10.0;
    const double step = 0.04;
    auto at = [&](double hh) {
        return advance(initial_state(nl), nl, hh, static_cast<std::size_t>(std::llround(horizon / hh))).x1;
    };
    const double ref = at(step / 8.0);
    const double ratio = std::abs(at(step) - ref) / std::abs(at(step / 2.0) - ref);
    return {worst < 1e-6 && ratio >= 12.0 && ratio <= 20.0,
            "linear-limit max error " + fmt("%.3g", worst) + " over 100 periods; step-halving ratio " +
                fmt("%.2f", ratio)};
}

std::map<std::string, std::string> csv_files(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file() && e.path().extension() == ".csv" &&
            e.path().parent_path().filename() != "cache") {
            out[fs::relative(e.path(), root).string()] = read_text_file(e.path());
        }
    }
    return out;
}

// 9. Reruns, cache hits and cold runs produce the same CSV bytes.
Outcome determinism() {
    SweepConfig q;
    q.generator = GeneratorKind::quantum;
    q.grid = {0.0, 0.04, 0.08};
    q.quantum.tau_step = 2.5e-4;
    q.quantum.n_samples = 5000 + 500;
    q.quantum.n_transient = 500;
    q.short_length = 2000;
    q.embedding.max_lag = 300;
    q.embedding.ami_bins = 16;
    q.mle.k_max = 30;

    SweepConfig d = preset_config("duffing");
    d.duffing.f_amp = 1.0;
    d.grid = {0.0, 0.5};
    d.duffing.n_samples = 6000 + 1000;
    d.duffing.n_transient = 1000;
    d.short_length = 2000;
    d.embedding.ami_bins = 16;
    d.mle.k_max = 30;

    std::size_t files = 0;
    bool same = true;
    for (SweepConfig* c : {&q, &d}) {
        c->out_dir = scratch("determinism");
        run_sweep(*c);
        const auto cold = csv_files(c->out_dir);
        run_sweep(*c);  // cache hit
        const auto warm = csv_files(c->out_dir);
        c->workers = 2;
        run_sweep(*c);
        const auto parallel = csv_files(c->out_dir);
        same = same && cold == warm && cold == parallel && !cold.empty();
        files += cold.size();
        fs::remove_all(c->out_dir);
    }
    return {same, std::to_string(files) + " CSV files compared across cold, cached and two-worker runs"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria = {
        {1, {"unitarity", unitarity}},
        {2, {"initial photon number", initial_value}},
        {3, {"epsilon_c oracle", epsilon_oracle}},
        {4, {"graph metric oracle", graph_metrics}},
        {5, {"MLE benchmarks", mle_benchmarks}},
        {6, {"quantum structure", quantum_structure}},
        {7, {"short-vs-long MLE discrepancy", discrepancy}},
        {8, {"Duffing integrator", integrator}},
        {9, {"determinism and cache", determinism}},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    if (selected.empty()) {
        for (const auto& [id, c] : criteria) selected.push_back(id);
    }
    int failures = 0;
    for (int id : selected) {
        const auto it = criteria.find(id);
        if (it == criteria.end()) {
            std::printf("criterion %d: unknown\n", id);
            ++failures;
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = it->second.second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d [%s] %s: %s (%.1f s)\n", id, it->second.first, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
