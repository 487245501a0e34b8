#include "recnet/errors.hpp"

#include <sstream>

namespace recnet {

namespace {

std::string degenerate_message(int n, double kappa, double beta, double r_squared) {
    std::ostringstream os;
    os << "degenerate sector frequency at n=" << n << " (kappa=" << kappa << ", beta=" << beta
       << ", R^2=" << r_squared << ")";
    return os.str();
}

}  // namespace

DegenerateFrequencyError::DegenerateFrequencyError(int n_, double kappa_, double beta_, double r_squared_)
    : Error(degenerate_message(n_, kappa_, beta_, r_squared_)),
      n(n_),
      kappa(kappa_),
      beta(beta_),
      r_squared(r_squared_) {}

DivergenceError::DivergenceError(std::size_t step_, double magnitude)
    : Error("integration diverged at step " + std::to_string(step_) + " (|state| = " +
            std::to_string(magnitude) + ")"),
      step(step_) {}

DisconnectedGraphError::DisconnectedGraphError(std::size_t components_)
    : Error("graph is disconnected (" + std::to_string(components_) + " components)"),
      components(components_) {}

}  // namespace recnet
