// quantum_signal.hpp: closed-form dynamics of the atom + cavity field + membrane model
// under its effective Hamiltonian, and the mean-photon-number series derived from it.
//
// Time is dimensionless, tau = (G^2 / omega_m) t. The initial state is a coherent field
// |alpha>, the mirror in its ground state and the atom in cos(phi)|e> + sin(phi)|g>.
// Each photon-number sector n evolves independently:
//
//   A_n = e^{i g1 tau} cos(phi)
//   B_n = e^{i g2 tau} sin(phi) [cos(R tau) + D_b sin(R tau)]
//   C_n = e^{i g2 tau} D_c sin(phi) sin(R tau)
//
// with g1 = n^2 + beta^2 (n+1), g2 = n^2 - n + 1/2, D_b = -i (n - 1/2 - beta^2 n) / R,
// D_c = -i beta sqrt(n) f(n) / R, f(n) = sqrt(1 + kappa n) and
// R^2 = (n^2 - n + 1/2)^2 + beta^2 n f(n)^2 - n [(n-1)^2 + beta^2 n] (n - beta^2).
#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "recnet/time_series.hpp"

namespace recnet {

struct OptoParams {
    double kappa{0.0};
    double beta{1.0};
    double alpha_sq{25.0};
    double phi{std::numbers::pi / 2.0};
    int n_max{-1};  // < 0 selects default_truncation(alpha_sq)
    double tau_step{2.5e-5};
    std::size_t n_samples{310000};
    std::size_t n_transient{10000};

    // Throws ConfigError on violated invariants, TruncationError on inadequate n_max.
    void validate() const;
    int resolved_n_max() const;
};

nlohmann::json to_json(const OptoParams& p);
OptoParams opto_params_from_json(const nlohmann::json& j, OptoParams base = {});

// ceil(alpha_sq + 12 sqrt(alpha_sq))
int default_truncation(double alpha_sq);

// Coherent-state photon statistics e^{-a} a^n / n!, n = 0..n_max, evaluated in log space.
std::vector<double> poisson_weights(double alpha_sq, int n_max);

struct CoefficientTriple {
    std::complex<double> a;
    std::complex<double> b;
    std::complex<double> c;
};

// R(n) for the given couplings; throws DegenerateFrequencyError if R^2 <= 0 or |R| < 1e-12.
double sector_frequency(int n, double kappa, double beta);

CoefficientTriple coefficients_at(const OptoParams& params, int n, double tau);

// Per-sector constants cached once per parameter set; evaluation is a pure function of tau.
class OptoModel {
public:
    explicit OptoModel(const OptoParams& params);

    const OptoParams& params() const noexcept { return params_; }
    int n_max() const noexcept { return n_max_; }
    double frequency(int n) const { return sectors_.at(static_cast<std::size_t>(n)).r; }

    CoefficientTriple coefficients(int n, double tau) const;
    double mean_photon_number(double tau) const;

private:
    struct Sector {
        double weight;
        double gamma1;
        double gamma2;
        double r;
        double db;  // D_b = -i db
        double dc;  // D_c = -i dc
    };
    OptoParams params_;
    int n_max_;
    double cos_phi_;
    double sin_phi_;
    std::vector<Sector> sectors_;
};

double mean_photon_number(const OptoParams& params, double tau);

// <N>(k tau_step) for k = n_transient .. n_samples-1.
TimeSeries generate_series(const OptoParams& params);

}  // namespace recnet
