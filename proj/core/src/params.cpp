#include "kpp/params.hpp"

#include <cmath>
#include <string>

#include "kpp/errors.hpp"

namespace kpp {

ModelParams::ModelParams(double c, double tau)
    : c_(c), tau_(tau), h_(c * tau), eps_(1.0 / (c * c)) {
    if (!std::isfinite(c) || !std::isfinite(tau)) {
        throw DomainError("model parameters must be finite");
    }
    if (c < 2.0) {
        throw DomainError("wave speed c = " + std::to_string(c) + " is below the minimal speed 2");
    }
    if (tau < 0.0) {
        throw DomainError("delay tau = " + std::to_string(tau) + " must be non-negative");
    }
}

bool ModelParams::has_bounding_tau() const noexcept {
    return tau_ > 1.0 && tau_ <= kCriticalTau;
}

void ModelParams::require_bounding_tau() const {
    if (!has_bounding_tau()) {
        throw DomainError("bounding functions need tau in (1, 3/2], got tau = " +
                          std::to_string(tau_));
    }
}

void ModelParams::require_critical_tau() const {
    if (tau_ != kCriticalTau) {
        throw DomainError("operation is defined at tau = 3/2 only, got tau = " +
                          std::to_string(tau_));
    }
}

}  // namespace kpp
