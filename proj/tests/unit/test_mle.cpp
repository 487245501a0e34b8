#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "recnet/embedding.hpp"
#include "recnet/errors.hpp"
#include "recnet/mle.hpp"
#include "support/reference_systems.hpp"

using namespace recnet;
using namespace recnet::testing;

namespace {

DivergenceCurve curve_from(const std::vector<double>& y) {
    DivergenceCurve c;
    for (std::size_t k = 0; k < y.size(); ++k) {
        c.steps.push_back(k);
        c.log_mean_div.push_back(y[k]);
        c.n_pairs.push_back(100);
    }
    return c;
}

}  // namespace

TEST_SUITE("mle") {

TEST_CASE("exact line is fitted exactly") {
    std::vector<double> y;
    for (int k = 0; k <= 40; ++k) y.push_back(0.1 * k - 3.0);
    const MleEstimate e = fit_mle(curve_from(y));
    CHECK(e.lambda == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(e.fit_residual < 1e-12);
    CHECK(!e.no_linear_region);
    CHECK(e.fit_range.k_min == 0);
    CHECK(e.fit_range.k_max == 40);
}

TEST_CASE("explicit range and time conversion") {
    std::vector<double> y;
    for (int k = 0; k <= 20; ++k) y.push_back(k < 10 ? 0.5 * k : 4.5 + 0.01 * (k - 9));
    const MleEstimate e = fit_mle(curve_from(y), FitRange{0, 9}, 0.25);
    CHECK(e.lambda == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(e.lambda_per_time == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(fit_mle(curve_from(y), FitRange{5, 6}), PreconditionError);
}

TEST_CASE("auto range picks the straight rise before saturation") {
    std::vector<double> y;
    for (int k = 0; k <= 60; ++k) y.push_back(k <= 25 ? 0.2 * k : 5.0);
    const MleEstimate e = fit_mle(curve_from(y));
    CHECK(e.lambda == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(e.fit_range.k_min == 0);
    CHECK(e.fit_range.k_max == 25);
}

TEST_CASE("flat curve gives a zero exponent") {
    const MleEstimate e = fit_mle(curve_from(std::vector<double>(30, -2.0)));
    CHECK(std::abs(e.lambda) < 1e-12);
}

TEST_CASE("zigzag curve has no linear region") {
    std::vector<double> y;
    for (int k = 0; k <= 30; ++k) y.push_back(k % 2 == 0 ? 0.0 : 1.0);
    const MleEstimate e = fit_mle(curve_from(y));
    CHECK(e.no_linear_region);
    CHECK(e.fit_range.k_min == 0);
    CHECK(e.fit_range.k_max == 30);
}

TEST_CASE("logistic map: ln 2 per step") {
    const auto s = logistic_series(25000);
    const DelayVectors v = embed(s, 1, 1);
    const DivergenceCurve c = divergence_curve(v, 1, 30);
    const MleEstimate e = fit_mle(c);
    CHECK(e.lambda == doctest::Approx(std::numbers::ln2).epsilon(0.15));
}

TEST_CASE("sinusoid: flat divergence") {
    const auto s = sine_series(25000, 100.0);
    const DelayVectors v = embed(s, 25, 2);
    const MleEstimate e = fit_mle(divergence_curve(v, default_theiler_window(v), 100));
    CHECK(std::abs(e.lambda) < 0.005);
}

TEST_CASE("Lorenz attractor: Benettin exponent within 20%") {
    const Lorenz sys;
    const double h = 0.01;
    const auto s = sys.x_series(25000, h);
    const std::size_t t_d = estimate_delay(s, 200).t_d;
    const DelayVectors v = embed(s, t_d, 3);
    // The horizon has to span several Lyapunov times for the slope to settle.
    const MleEstimate e = fit_mle(divergence_curve(v, default_theiler_window(v), 800), std::nullopt, h);
    const double oracle = sys.benettin_exponent(500.0, h);
    CHECK(oracle == doctest::Approx(0.9).epsilon(0.05));
    CHECK(e.lambda_per_time == doctest::Approx(oracle).epsilon(0.2));
}

TEST_CASE("coincident neighbours are excluded and counted") {
    auto s = logistic_series(600);
    const auto copy = s;
    s.insert(s.end(), copy.begin(), copy.end());
    const DelayVectors v = embed(s, 1, 2);
    const DivergenceCurve c = divergence_curve(v, 0, 10);
    CHECK(c.zero_distance_pairs > 0);
    for (std::size_t k = 0; k < c.steps.size(); ++k) CHECK(std::isfinite(c.log_mean_div[k]));
}

TEST_CASE("curve preconditions") {
    const auto s = logistic_series(100);
    const DelayVectors v = embed(s, 1, 1);
    CHECK_THROWS_AS(divergence_curve(v, 30, 40), InsufficientDataError);
    const std::vector<double> flat(300, 0.5);
    CHECK_THROWS_AS(divergence_curve(embed(flat, 1, 2), 1, 10), PreconditionError);
}

TEST_CASE("pair counts never increase with k") {
    const auto s = logistic_series(3000);
    const DivergenceCurve c = divergence_curve(embed(s, 1, 2), 2, 50);
    for (std::size_t k = 1; k < c.n_pairs.size(); ++k) CHECK(c.n_pairs[k] <= c.n_pairs[k - 1]);
}

TEST_CASE("scaling the series shifts the curve and keeps the exponent") {
    const Lorenz sys;
    const auto s = sys.x_series(6000, 0.01);
    auto scaled = s;
    for (auto& x : scaled) x *= 3.5;
    const DivergenceCurve a = divergence_curve(embed(s, 16, 3), 48, 60);
    const DivergenceCurve b = divergence_curve(embed(scaled, 16, 3), 48, 60);
    for (std::size_t k = 0; k < a.steps.size(); ++k)
        CHECK(b.log_mean_div[k] - a.log_mean_div[k] == doctest::Approx(std::log(3.5)).epsilon(1e-9));
    const FitRange r{5, 40};
    CHECK(std::abs(fit_mle(a, r).lambda - fit_mle(b, r).lambda) < 1e-9);
}

TEST_CASE("shuffling destroys the dynamics") {
    const Lorenz sys;
    const auto s = sys.x_series(8000, 0.01);
    auto shuffled = s;
    std::mt19937_64 rng(4);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const DivergenceCurve a = divergence_curve(embed(s, 16, 3), 48, 10);
    const DivergenceCurve b = divergence_curve(embed(shuffled, 16, 3), 48, 10);
    CHECK(b.log_mean_div[2] - b.log_mean_div[0] > a.log_mean_div[2] - a.log_mean_div[0]);
}

TEST_CASE("estimation is deterministic") {
    const auto s = logistic_series(4000);
    const auto a = divergence_curve(embed(s, 1, 2), 2, 20);
    const auto b = divergence_curve(embed(s, 1, 2), 2, 20);
    CHECK(a.log_mean_div == b.log_mean_div);
    CHECK(a.n_pairs == b.n_pairs);
}

}
