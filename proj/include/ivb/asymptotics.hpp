// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>

#include "normal.hpp"

namespace ivb {

// Leading-order asymptotic formulas for the four tail regimes. They are
// totals over their stated domains and do no regime checking: evaluating
// them far from their asymptotic regime is allowed (and gives poor
// approximations, as expected).

/// c -> 1 regime: sqrt(-8 ln(1 - c)).
inline double asym_price_to_one(double c) {
    if (!(c > 0.0 && c < 1.0))
        throw std::domain_error("asym_price_to_one: requires 0 < c < 1");
    return std::sqrt(-8.0 * std::log1p(-c));
}

/// c -> 0 regime at fixed k > 0: k / sqrt(-2 ln c); for k < 0 the same form
/// in the put price p = c + e^k - 1. Undefined at k = 0.
inline double asym_price_to_zero(double k, double c) {
    if (k == 0.0 || std::isnan(k))
        throw std::domain_error("asym_price_to_zero: requires k != 0");
    const double x = (k > 0.0) ? c : c + std::expm1(k);
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error(
            "asym_price_to_zero: price (or put value) must lie in (0, 1)");
    return std::fabs(k) / std::sqrt(-2.0 * std::log(x));
}

/// Wing regime: sqrt(-2 ln(e^{-k} x)) - sqrt(-2 ln x) for k > 0 (x the call
/// price) and its mirror for k < 0 (x the put price), evaluated in the
/// cancellation-free form 2|k| / (sqrt(-2 ln x) + sqrt(-2 ln x + 2|k|)).
/// k = 0 gives 0.
inline double asym_wing(double k, double x) {
    if (std::isnan(k)) throw std::domain_error("asym_wing: requires finite k");
    if (k == 0.0) return 0.0;
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("asym_wing: price must lie in (0, 1)");
    const double t = -2.0 * std::log(x);
    const double shifted = t + 2.0 * k;  // = -2 ln(e^{-k} x)
    if (!(shifted > 0.0))
        throw std::domain_error("asym_wing: e^{-k} x must lie in (0, 1)");
    return std::fabs(2.0 * k) / (std::sqrt(t) + std::sqrt(shifted));
}

/// Fixed-tail-probability regime: sqrt(2|k|) + quantile(u), for a wing where
/// the scaled price e^{-k} p(k) (left, k < 0) or c(k) (right, k > 0) tends to
/// the constant u.
inline double asym_fixed_u(double k, double u) {
    if (std::isnan(k)) throw std::domain_error("asym_fixed_u: requires finite k");
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("asym_fixed_u: requires 0 < u < 1");
    return std::sqrt(std::fabs(2.0 * k)) + norm_quantile(u);
}

}  // namespace ivb
