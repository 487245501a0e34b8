#include "recnet/duffing_signal.hpp"

#include <algorithm>
#include <string>

#include "recnet/errors.hpp"

namespace recnet {

namespace {

constexpr double kDivergenceBound = 1e12;

double max_magnitude(const OscState& s) {
    return std::max({std::abs(s.x1), std::abs(s.v1), std::abs(s.x2), std::abs(s.v2)});
}

bool diverged(const OscState& s) {
    const double m = max_magnitude(s);
    return !std::isfinite(m) || m > kDivergenceBound;
}

}  // namespace

void DuffingParams::validate() const {
    auto fail = [](const std::string& what) { throw ConfigError("DuffingParams: " + what); };
    if (!f_amp) fail("drive amplitude f_amp is required");
    for (double v : {delta1, delta2, omega_cl, Omega_cl, zeta, *f_amp, Omega_d, x1_0, v1_0, x2_0, v2_0, dt}) {
        if (!std::isfinite(v)) fail("all parameters must be finite");
    }
    if (!(dt > 0.0)) fail("dt must be positive");
    if (delta1 < 0.0 || delta2 < 0.0) fail("damping coefficients must be non-negative");
    if (stride == 0) fail("stride must be at least 1");
    if (n_transient >= n_samples) fail("n_transient must be smaller than n_samples");
}

nlohmann::json to_json(const DuffingParams& p) {
    nlohmann::json j = {{"delta1", p.delta1}, {"delta2", p.delta2}, {"omega_cl", p.omega_cl},
                        {"Omega_cl", p.Omega_cl}, {"zeta", p.zeta},   {"Omega_d", p.Omega_d},
                        {"x1_0", p.x1_0},     {"v1_0", p.v1_0},     {"x2_0", p.x2_0},
                        {"v2_0", p.v2_0},     {"dt", p.dt},         {"stride", p.stride},
                        {"n_samples", p.n_samples}, {"n_transient", p.n_transient}};
    j["f_amp"] = p.f_amp ? nlohmann::json(*p.f_amp) : nlohmann::json(nullptr);
    return j;
}

DuffingParams duffing_params_from_json(const nlohmann::json& j, DuffingParams p) {
    p.delta1 = j.value("delta1", p.delta1);
    p.delta2 = j.value("delta2", p.delta2);
    p.omega_cl = j.value("omega_cl", p.omega_cl);
    p.Omega_cl = j.value("Omega_cl", p.Omega_cl);
    p.zeta = j.value("zeta", p.zeta);
    if (j.contains("f_amp") && !j["f_amp"].is_null()) p.f_amp = j["f_amp"].get<double>();
    p.Omega_d = j.value("Omega_d", p.Omega_d);
    p.x1_0 = j.value("x1_0", p.x1_0);
    p.v1_0 = j.value("v1_0", p.v1_0);
    p.x2_0 = j.value("x2_0", p.x2_0);
    p.v2_0 = j.value("v2_0", p.v2_0);
    p.dt = j.value("dt", p.dt);
    p.stride = j.value("stride", p.stride);
    p.n_samples = j.value("n_samples", p.n_samples);
    p.n_transient = j.value("n_transient", p.n_transient);
    return p;
}

OscState derivative(const OscState& s, const DuffingParams& p) {
    const double w2 = p.omega_cl * p.omega_cl;
    const double c2 = p.Omega_cl * p.Omega_cl;
    const double f = p.f_amp.value_or(0.0);
    OscState r;
    r.x1 = s.v1;
    r.v1 = -p.delta1 * s.v1 - w2 * s.x1 - p.zeta * s.x1 * s.x1 * s.x1 + c2 * s.x2 + f * std::sin(p.Omega_d * s.t);
    r.x2 = s.v2;
    r.v2 = -p.delta2 * s.v2 - w2 * s.x2 - p.zeta * s.x2 * s.x2 * s.x2 + c2 * s.x1;
    r.t = 0.0;
    return r;
}

OscState rk4_step(const OscState& s, const DuffingParams& p, double h) {
    auto shifted = [&](const OscState& k, double a) {
        return OscState{s.x1 + a * k.x1, s.v1 + a * k.v1, s.x2 + a * k.x2, s.v2 + a * k.v2, s.t + a};
    };
    const OscState k1 = derivative(s, p);
    const OscState k2 = derivative(shifted(k1, 0.5 * h), p);
    const OscState k3 = derivative(shifted(k2, 0.5 * h), p);
    const OscState k4 = derivative(shifted(k3, h), p);
    const double w = h / 6.0;
    return {s.x1 + w * (k1.x1 + 2.0 * k2.x1 + 2.0 * k3.x1 + k4.x1),
            s.v1 + w * (k1.v1 + 2.0 * k2.v1 + 2.0 * k3.v1 + k4.v1),
            s.x2 + w * (k1.x2 + 2.0 * k2.x2 + 2.0 * k3.x2 + k4.x2),
            s.v2 + w * (k1.v2 + 2.0 * k2.v2 + 2.0 * k3.v2 + k4.v2), s.t + h};
}

OscState advance(OscState s, const DuffingParams& p, double h, std::size_t steps) {
    const double t0 = s.t;
    for (std::size_t i = 0; i < steps; ++i) {
        s = rk4_step(s, p, h);
        // Recompute t from the step count so long runs do not accumulate rounding in t.
        s.t = t0 + static_cast<double>(i + 1) * h;
        if (diverged(s)) throw DivergenceError(i + 1, max_magnitude(s));
    }
    return s;
}

OscState initial_state(const DuffingParams& p) { return {p.x1_0, p.v1_0, p.x2_0, p.v2_0, 0.0}; }

TimeSeries integrate(const DuffingParams& params) {
    params.validate();
    TimeSeries ts;
    ts.dt = params.dt * static_cast<double>(params.stride);
    ts.values.reserve(params.n_samples - params.n_transient);
    OscState s = initial_state(params);
    std::size_t step = 0;
    for (std::size_t k = 0; k < params.n_samples; ++k) {
        if (k > 0) {
            for (std::size_t i = 0; i < params.stride; ++i) {
                s = rk4_step(s, params, params.dt);
                ++step;
                s.t = static_cast<double>(step) * params.dt;
                if (diverged(s)) throw DivergenceError(step, max_magnitude(s));
            }
        }
        if (k >= params.n_transient) ts.values.push_back(s.v2);
    }
    ts.meta = {{"generator", "duffing"}, {"observable", "v2"}, {"params", to_json(params)}};
    return ts;
}

}  // namespace recnet
