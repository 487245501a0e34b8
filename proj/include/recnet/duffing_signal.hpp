// duffing_signal.hpp: two driven, damped Duffing oscillators with linear coupling.
//
//   x1'' = -d1 x1' - w^2 x1 - zeta x1^3 + W^2 x2 + f sin(Wd t)
//   x2'' = -d2 x2' - w^2 x2 - zeta x2^3 + W^2 x1
//
// integrated with the classical fixed-step fourth-order Runge-Kutta scheme. The emitted
// observable is the velocity x2'.
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>

#include "recnet/time_series.hpp"

namespace recnet {

struct DuffingParams {
    double delta1{1e-2};
    double delta2{1e-7};
    double omega_cl{std::sqrt(10.0)};
    double Omega_cl{std::sqrt(6.0)};
    double zeta{0.0};
    std::optional<double> f_amp;  // required; no default drive amplitude exists
    double Omega_d{2.0};
    double x1_0{1.0};
    double v1_0{0.0};
    double x2_0{0.0};
    double v2_0{0.0};
    double dt{0.01};
    std::size_t stride{1};  // integrator steps per emitted sample
    std::size_t n_samples{125000};
    std::size_t n_transient{25000};

    void validate() const;
};

nlohmann::json to_json(const DuffingParams& p);
DuffingParams duffing_params_from_json(const nlohmann::json& j, DuffingParams base = {});

struct OscState {
    double x1{0.0};
    double v1{0.0};
    double x2{0.0};
    double v2{0.0};
    double t{0.0};
};

// Time derivative (x1', v1', x2', v2'); the `t` field of the result is unused (0).
OscState derivative(const OscState& s, const DuffingParams& p);

// One RK4 step of size h (h may be negative for backward integration).
OscState rk4_step(const OscState& s, const DuffingParams& p, double h);

// `steps` RK4 steps of size h; throws DivergenceError when any |component| > 1e12.
OscState advance(OscState s, const DuffingParams& p, double h, std::size_t steps);

OscState initial_state(const DuffingParams& p);

// Samples x2' every `stride` steps, k = 0..n_samples-1 (k = 0 is the initial state), and
// drops the first n_transient samples.
TimeSeries integrate(const DuffingParams& params);

}  // namespace recnet
