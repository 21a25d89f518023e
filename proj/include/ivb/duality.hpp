// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>

#include "normal.hpp"
#include "pricing.hpp"
#include "quadrature.hpp"
#include "solver.hpp"

namespace ivb {

/// The close-far dual price: c_hat(k, c) = C(k, 2k/Y(k, c)), k > 0. It is a
/// decreasing convex involution of (0,1) onto itself, and the product of the
/// implied total standard deviations of a price and its dual is exactly 2k.
/// Computed through one root-find plus one price evaluation (the defining
/// integral of 1 - c_hat is never quadratured).
inline double c_hat(double k, double c) {
    if (!(k > 0.0)) throw std::domain_error("c_hat: requires k > 0");
    if (!(c > 0.0 && c < 1.0)) throw std::domain_error("c_hat: requires 0 < c < 1");
    const double y = implied_y(k, c).y;
    return call_price(k, 2.0 * k / y);
}

/// J(k, c) = integral of 1/Y(k, u) du over (0, c), evaluated through the
/// substitution u = C(k, y): integral of pdf(-k/y + y/2)/y dy over
/// (0, Y(k, c)). The integrand is invariant under y -> 2k/y, so the c = 1
/// case integrates to twice the piece below sqrt(2k); finite c splits at
/// sqrt(2k) when the range crosses it. Absolute error <= 1e-8 (the adaptive
/// quadrature targets far tighter). Satisfies J(k,c) + J(k, c_hat(k,c)) =
/// J(k, 1).
inline double j_integral(double k, double c) {
    if (!(k > 0.0)) throw std::domain_error("j_integral: requires k > 0");
    if (!(c > 0.0 && c <= 1.0))
        throw std::domain_error("j_integral: requires 0 < c <= 1");
    const double split = convexity_threshold(k);
    const auto f = [k](double y) { return norm_pdf(-k / y + 0.5 * y) / y; };
    constexpr double rel = 1e-11, abs = 1e-14;
    if (c == 1.0) return 2.0 * detail::integrate(f, 0.0, split, rel, abs);
    const double y = implied_y(k, c).y;
    if (y <= split) return detail::integrate(f, 0.0, y, rel, abs);
    return detail::integrate(f, 0.0, split, rel, abs) +
           detail::integrate(f, split, y, rel, abs);
}

}  // namespace ivb
