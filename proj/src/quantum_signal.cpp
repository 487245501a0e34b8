#include "recnet/quantum_signal.hpp"

#include <cmath>
#include <string>

#include "recnet/errors.hpp"

namespace recnet {

int default_truncation(double alpha_sq) {
    return static_cast<int>(std::ceil(alpha_sq + 12.0 * std::sqrt(alpha_sq)));
}

int OptoParams::resolved_n_max() const { return n_max < 0 ? default_truncation(alpha_sq) : n_max; }

std::vector<double> poisson_weights(double alpha_sq, int n_max) {
    std::vector<double> w(static_cast<std::size_t>(n_max) + 1);
    const double log_a = std::log(alpha_sq);
    for (int n = 0; n <= n_max; ++n) {
        w[static_cast<std::size_t>(n)] = std::exp(-alpha_sq + n * log_a - std::lgamma(n + 1.0));
    }
    return w;
}

void OptoParams::validate() const {
    auto fail = [](const std::string& what) { throw ConfigError("OptoParams: " + what); };
    if (!(kappa >= 0.0 && kappa <= 1.0)) fail("kappa must lie in [0, 1]");
    if (!std::isfinite(beta)) fail("beta must be finite");
    if (!(alpha_sq > 0.0) || !std::isfinite(alpha_sq)) fail("alpha_sq must be positive");
    if (!std::isfinite(phi)) fail("phi must be finite");
    if (!(tau_step > 0.0) || !std::isfinite(tau_step)) fail("tau_step must be positive");
    if (n_transient >= n_samples) fail("n_transient must be smaller than n_samples");
    const int nm = resolved_n_max();
    if (nm < alpha_sq) fail("n_max must be at least alpha_sq");
    double mass = 0.0;
    for (double w : poisson_weights(alpha_sq, nm)) mass += w;
    if (mass < 1.0 - 1e-12) {
        throw TruncationError("Fock truncation n_max=" + std::to_string(nm) +
                              " leaves Poisson tail mass " + std::to_string(1.0 - mass) + " > 1e-12");
    }
}

nlohmann::json to_json(const OptoParams& p) {
    return {{"kappa", p.kappa},       {"beta", p.beta},         {"alpha_sq", p.alpha_sq},
            {"phi", p.phi},           {"n_max", p.resolved_n_max()}, {"tau_step", p.tau_step},
            {"n_samples", p.n_samples}, {"n_transient", p.n_transient}};
}

OptoParams opto_params_from_json(const nlohmann::json& j, OptoParams p) {
    p.kappa = j.value("kappa", p.kappa);
    p.beta = j.value("beta", p.beta);
    p.alpha_sq = j.value("alpha_sq", p.alpha_sq);
    p.phi = j.value("phi", p.phi);
    p.n_max = j.value("n_max", p.n_max);
    p.tau_step = j.value("tau_step", p.tau_step);
    p.n_samples = j.value("n_samples", p.n_samples);
    p.n_transient = j.value("n_transient", p.n_transient);
    return p;
}

double sector_frequency(int n, double kappa, double beta) {
    const double dn = n;
    const double b2 = beta * beta;
    const double f2 = 1.0 + kappa * dn;
    const double g2 = dn * dn - dn + 0.5;
    const double r2 = g2 * g2 + b2 * dn * f2 - dn * ((dn - 1.0) * (dn - 1.0) + b2 * dn) * (dn - b2);
    if (!(r2 > 0.0) || std::sqrt(r2) < 1e-12) throw DegenerateFrequencyError(n, kappa, beta, r2);
    return std::sqrt(r2);
}

namespace {

struct SectorConstants {
    double gamma1;
    double gamma2;
    double r;
    double db;  // D_b = -i db
    double dc;  // D_c = -i dc
};

SectorConstants sector_constants(int n, double kappa, double beta) {
    const double dn = n;
    const double b2 = beta * beta;
    SectorConstants s{};
    s.gamma1 = dn * dn + b2 * (dn + 1.0);
    s.gamma2 = dn * dn - dn + 0.5;
    s.r = sector_frequency(n, kappa, beta);
    s.db = (dn - 0.5 - b2 * dn) / s.r;
    s.dc = beta * std::sqrt(dn) * std::sqrt(1.0 + kappa * dn) / s.r;
    return s;
}

CoefficientTriple evaluate(const SectorConstants& s, double cos_phi, double sin_phi, double tau) {
    using cd = std::complex<double>;
    const cd phase1 = std::polar(1.0, s.gamma1 * tau);
    const cd phase2 = std::polar(1.0, s.gamma2 * tau);
    const double c = std::cos(s.r * tau);
    const double sn = std::sin(s.r * tau);
    return {phase1 * cos_phi, phase2 * sin_phi * cd(c, -s.db * sn), phase2 * cd(0.0, -s.dc) * sin_phi * sn};
}

}  // namespace

OptoModel::OptoModel(const OptoParams& params)
    : params_(params),
      n_max_(params.resolved_n_max()),
      cos_phi_(std::cos(params.phi)),
      sin_phi_(std::sin(params.phi)) {
    params_.validate();
    const auto weights = poisson_weights(params.alpha_sq, n_max_);
    sectors_.reserve(weights.size());
    for (int n = 0; n <= n_max_; ++n) {
        const auto c = sector_constants(n, params.kappa, params.beta);
        sectors_.push_back({weights[static_cast<std::size_t>(n)], c.gamma1, c.gamma2, c.r, c.db, c.dc});
    }
}

CoefficientTriple OptoModel::coefficients(int n, double tau) const {
    if (n < 0 || n > n_max_) throw PreconditionError("photon index out of range: " + std::to_string(n));
    const Sector& s = sectors_[static_cast<std::size_t>(n)];
    return evaluate({s.gamma1, s.gamma2, s.r, s.db, s.dc}, cos_phi_, sin_phi_, tau);
}

double OptoModel::mean_photon_number(double tau) const {
    const double cos2 = cos_phi_ * cos_phi_;
    const double sin2 = sin_phi_ * sin_phi_;
    double total = 0.0;
    for (int n = 0; n <= n_max_; ++n) {
        const Sector& s = sectors_[static_cast<std::size_t>(n)];
        const double c = std::cos(s.r * tau);
        const double sn = std::sin(s.r * tau);
        const double b_sq = sin2 * (c * c + s.db * s.db * sn * sn);
        const double c_sq = sin2 * s.dc * s.dc * sn * sn;
        double sector = n * (cos2 + b_sq);
        if (n >= 1) sector += (n - 1) * c_sq;
        total += s.weight * sector;
    }
    return total;
}

CoefficientTriple coefficients_at(const OptoParams& params, int n, double tau) {
    if (n < 0) throw PreconditionError("photon index must be non-negative");
    return evaluate(sector_constants(n, params.kappa, params.beta), std::cos(params.phi), std::sin(params.phi), tau);
}

double mean_photon_number(const OptoParams& params, double tau) {
    return OptoModel(params).mean_photon_number(tau);
}

TimeSeries generate_series(const OptoParams& params) {
    const OptoModel model(params);
    TimeSeries ts;
    ts.dt = params.tau_step;
    ts.values.reserve(params.n_samples - params.n_transient);
    for (std::size_t k = params.n_transient; k < params.n_samples; ++k) {
        ts.values.push_back(model.mean_photon_number(static_cast<double>(k) * params.tau_step));
    }
    require_finite(ts.values);
    ts.meta = {{"generator", "quantum"}, {"observable", "mean_photon_number"}, {"params", to_json(params)}};
    return ts;
}

}  // namespace recnet
