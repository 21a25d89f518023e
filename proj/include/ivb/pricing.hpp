// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "normal.hpp"

namespace ivb {

/// Smallest attainable normalized call price at log-moneyness k: (1 - e^k)^+.
inline double price_floor(double k) {
    return (k < 0.0) ? -std::expm1(k) : 0.0;
}

/// True iff (k, c) lies in the invertible price region [(1 - e^k)^+, 1).
inline bool in_price_domain(double k, double c) {
    return std::isfinite(k) && !std::isnan(c) && c >= price_floor(k) && c < 1.0;
}

namespace detail {
inline void require_domain(double k, double c, const char* who) {
    if (!in_price_domain(k, c))
        throw std::domain_error(std::string(who) +
                                ": normalized call price must lie in [(1-e^k)^+, 1)");
}
}  // namespace detail

/// Normalized Black-Scholes call: C(k, y) = cdf(-k/y + y/2) - e^k cdf(-k/y - y/2)
/// with total standard deviation y >= 0 and log-moneyness k, on a unit-forward,
/// unit-discount scale. Three regimes keep full accuracy:
///   * k < 0 reduces to k > 0 through 1 - e^k + e^k C(-k, y), which is exact
///     and avoids differencing two cdf values of nearly equal size;
///   * once both cdf arguments are at or below -8 the difference is rewritten
///     as pdf(a) (m(a) - m(b)) with Mills ratios m, using e^k pdf(k/y + y/2) =
///     pdf(k/y - y/2) exactly -- the direct form would lose all digits there;
///   * tiny y with a moderate ratio k/y uses the small-noise expansion
///     y (pdf(d) - d cdf(-d)), d = k/y, again dodging cancellation.
inline double call_price(double k, double y) {
    if (std::isnan(k) || std::isnan(y) || y < 0.0)
        throw std::domain_error("call_price: requires y >= 0 and non-NaN k");
    if (y == 0.0) return price_floor(k);
    if (k < 0.0) return -std::expm1(k) + std::exp(k) * call_price(-k, y);
    const double a = k / y - 0.5 * y;  // = -d1
    if (a >= 8.0) {
        const double b = k / y + 0.5 * y;  // = -d2
        return norm_pdf(a) * (detail::mills_ratio(a) - detail::mills_ratio(b));
    }
    if (y <= 1e-8) {
        const double d = k / y;
        return y * (norm_pdf(d) - d * norm_cdf(-d));
    }
    return norm_cdf(-a) - std::exp(k) * norm_cdf(-(k / y + 0.5 * y));
}

/// Normalized put through parity on the same scale; evaluated as
/// e^k C(-k, y) so deep in-the-money calls never enter a cancelling sum.
inline double put_price(double k, double y) {
    if (std::isnan(k) || std::isnan(y) || y < 0.0)
        throw std::domain_error("put_price: requires y >= 0 and non-NaN k");
    if (y == 0.0) return (k > 0.0) ? std::expm1(k) : 0.0;
    return std::exp(k) * call_price(-k, y);
}

/// dC/dy = pdf(-k/y + y/2), strictly positive for y > 0.
inline double vega(double k, double y) {
    if (!(y > 0.0)) throw std::domain_error("vega: requires y > 0");
    return norm_pdf(-k / y + 0.5 * y);
}

/// The total standard deviation sqrt(2k) at which the k >= 0 price switches
/// convexity in y; also the fixed point of y -> 2k/y.
inline double convexity_threshold(double k) {
    if (!(k >= 0.0)) throw std::domain_error("convexity_threshold: requires k >= 0");
    return std::sqrt(2.0 * k);
}

}  // namespace ivb
