#pragma once

#include <cmath>
#include <cstddef>

#include "hew/params.hpp"

namespace hew {

struct InformationCriteria {
    double aic;
    double bic;
};

/// aic = -2 loglik + 2p, bic = -2 loglik + p ln n.
inline InformationCriteria information_criteria(double loglik, int parameters, std::size_t n) {
    if (parameters < 1 || n < 1) throw DomainError("information_criteria: need p >= 1 and n >= 1");
    const double dev = -2.0 * loglik;
    return {dev + 2.0 * parameters, dev + parameters * std::log(static_cast<double>(n))};
}

}  // namespace hew
