// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>

#include "pricing.hpp"

namespace ivb {

/// Image of (k, c) under put-call symmetry.
struct SymmetryImage {
    double k_out;
    double c_out;
};

/// Put-call symmetry: (k, c) and (-k, e^{-k} c + 1 - e^{-k}) share the same
/// implied total standard deviation. Applying the map twice is the identity,
/// so it reduces any k < 0 problem to k > 0. The image price is assembled so
/// that whichever of c' or 1 - c' is small comes out of expm1, not out of a
/// cancelling subtraction.
inline SymmetryImage put_call_transform(double k, double c) {
    detail::require_domain(k, c, "put_call_transform");
    double c_out;
    if (k >= 0.0) {
        c_out = std::exp(-k) * c - std::expm1(-k);
    } else {
        c_out = 1.0 - std::exp(-k) * (1.0 - c);
    }
    return {-k, c_out};
}

/// The variational objective whose supremum over y > 0 is the dual price
/// c_hat(k, c): C(k, 2k/y) - (2k/y^2) (c - C(k, y)). Equality holds exactly
/// at y = Y(k, c); every other admissible y gives a certified lower estimate
/// of the dual price.
inline double c_hat_sup_objective(double y, double k, double c) {
    if (!(k > 0.0)) throw std::domain_error("c_hat_sup_objective: requires k > 0");
    if (!(y > 0.0)) throw std::domain_error("c_hat_sup_objective: requires y > 0");
    if (!(c > 0.0 && c < 1.0))
        throw std::domain_error("c_hat_sup_objective: requires 0 < c < 1");
    const double y_far = 2.0 * k / y;
    return call_price(k, y_far) - (2.0 * k / (y * y)) * (c - call_price(k, y));
}

}  // namespace ivb
