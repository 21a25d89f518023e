// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "normal.hpp"
#include "pricing.hpp"
#include "symmetry.hpp"

namespace ivb {

namespace detail {

constexpr double pos_inf = std::numeric_limits<double>::infinity();

// 1/(1 + e^k) without overflow at either end.
inline double logistic_neg(double k) {
    if (k >= 0.0) {
        const double e = std::exp(-k);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(k));
}

// q + sqrt(q^2 + s) for s >= 0, stable when q is very negative (including
// q = -infinity, where the limit is 0) and exact at s = 0, q >= 0.
inline double root_sum(double q, double s) {
    if (q >= 0.0) return q + std::sqrt(q * q + s);
    const double r = std::sqrt(q * q + s);
    return s / (r - q);
}

// e^k * cdf(-sqrt(2k)) for k >= 0 without overflow: since k = (sqrt(2k))^2/2,
// e^k pdf(sqrt(2k)) is exactly 1/sqrt(2 pi), so the product is the Mills
// ratio at sqrt(2k) divided by sqrt(2 pi).
inline double scaled_tail_at_root(double k) {
    return mills_ratio(std::sqrt(2.0 * k)) * inv_sqrt_2pi;
}

}  // namespace detail

/// Certified enclosure of the implied total standard deviation, together with
/// the names of the inequalities that produced each side.
struct Bracket {
    double lower = 0.0;
    double upper = detail::pos_inf;
    std::vector<std::string> provenance;
};

/// First variational objective: d - quantile(e^{-k} (cdf(d) - c)). For every
/// finite d this value is an upper bound for Y(k, c), with equality at
/// d = -k/y + y/2, y = Y(k, c). The quantile convention makes the value +inf
/// (a vacuous upper bound) when the probability argument drops to 0 or below;
/// in-domain prices keep the argument strictly below 1, so -inf never occurs.
inline double objective_d1(double d, double k, double c) {
    detail::require_domain(k, c, "objective_d1");
    if (!std::isfinite(d)) throw std::domain_error("objective_d1: requires finite d");
    return d - norm_quantile(std::exp(-k) * (norm_cdf(d) - c));
}

/// Second variational objective: quantile(c + e^k cdf(d)) - d, an upper bound
/// for Y(k, c) for every finite d, with equality at d = -k/y - y/2. The
/// product e^k cdf(d) is evaluated in log space once cdf(d) is deep in the
/// left tail, where the direct product would round to inf * 0.
inline double objective_d2(double d, double k, double c) {
    detail::require_domain(k, c, "objective_d2");
    if (!std::isfinite(d)) throw std::domain_error("objective_d2: requires finite d");
    double scaled;
    if (d <= -8.0) {
        scaled = std::exp(k - 0.5 * d * d) * detail::inv_sqrt_2pi *
                 detail::mills_ratio(-d);
    } else {
        scaled = std::exp(k) * norm_cdf(d);
    }
    return norm_quantile(c + scaled) - d;
}

/// Upper bound tight as c -> 1: -2 quantile((1 - c)/(1 + e^k)). Valid for all
/// (k, c) in the price domain and always finite.
inline double upper_price_to_one(double k, double c) {
    detail::require_domain(k, c, "upper_price_to_one");
    return -2.0 * norm_quantile((1.0 - c) * detail::logistic_neg(k));
}

/// Lower bound tight as c -> 1: -2 quantile((1-c)/2) for k >= 0, and
/// -2 quantile((1-c) e^{-k}/2) for k < 0. Exact at k = 0.
inline double lower_price_to_one(double k, double c) {
    detail::require_domain(k, c, "lower_price_to_one");
    if (k >= 0.0) return -2.0 * norm_quantile(0.5 * (1.0 - c));
    return -2.0 * norm_quantile(0.5 * (1.0 - c) * std::exp(-k));
}

/// The gap factor L(k, c) = (2/k) (quantile(c/(1+e^k))^2 + 2) relating the
/// dual price to 1 - c: it controls both the price-to-zero upper bound and
/// the lower estimate 1 - c L(k,c) <= c_hat(k,c).
inline double dual_gap_factor(double k, double c) {
    if (!(k > 0.0)) throw std::domain_error("dual_gap_factor: requires k > 0");
    if (!(c > 0.0 && c < 1.0))
        throw std::domain_error("dual_gap_factor: requires 0 < c < 1");
    const double q = norm_quantile(c * detail::logistic_neg(k));
    return (2.0 / k) * (q * q + 2.0);
}

/// Bracket tight as c -> 0 (k > 0): lower = k / (-quantile(c/(1+e^k))); the
/// matching upper bound k / (-quantile(c L(k,c)/2)) only applies while
/// c L(k,c) <= 1 and is reported as +inf (with a provenance note) otherwise.
inline Bracket bracket_price_to_zero(double k, double c) {
    if (!(k > 0.0)) throw std::domain_error("bracket_price_to_zero: requires k > 0");
    if (!(c > 0.0 && c < 1.0))
        throw std::domain_error("bracket_price_to_zero: requires 0 < c < 1");
    Bracket br;
    br.lower = k / (-norm_quantile(c * detail::logistic_neg(k)));
    br.provenance.push_back("lower: price-to-zero");
    const double cl = c * dual_gap_factor(k, c);
    const double q = (cl <= 1.0) ? norm_quantile(0.5 * cl) : 0.0;
    if (cl <= 1.0 && q < 0.0) {
        br.upper = k / (-q);
        br.provenance.push_back("upper: price-to-zero");
    } else {
        br.upper = detail::pos_inf;
        br.provenance.push_back("upper: price-to-zero inapplicable (c*L(k,c) > 1)");
    }
    return br;
}

/// Wing bracket, valid on the whole price domain:
///   k >= 0:  quantile(c) + sqrt(quantile(c)^2 + 2k)  <=  Y(k, c)
///            Y(k, c)  <=  quantile(2c) - quantile(e^{-k} c)   (+inf if 2c >= 1)
/// For k < 0 the same inequalities are applied to the put-call image, which
/// turns them into the put-side forms with p = c + e^k - 1.
inline Bracket bracket_wing(double k, double c) {
    detail::require_domain(k, c, "bracket_wing");
    if (k < 0.0) {
        const SymmetryImage t = put_call_transform(k, c);
        Bracket br = bracket_wing(t.k_out, t.c_out);
        for (auto& s : br.provenance) s += " (via put-call symmetry)";
        return br;
    }
    Bracket br;
    br.lower = detail::root_sum(norm_quantile(c), 2.0 * k);
    br.provenance.push_back("lower: wing");
    br.upper = norm_quantile(2.0 * c) - norm_quantile(std::exp(-k) * c);
    br.provenance.push_back(std::isfinite(br.upper)
                                ? "upper: wing"
                                : "upper: wing inapplicable (2c >= 1)");
    return br;
}

/// Upper bound for the fixed-tail-probability regime:
/// quantile(c + e^k cdf(-sqrt(2k))) + sqrt(2k) for k >= 0 (+inf once the
/// probability argument reaches 1); k < 0 routes through put-call symmetry,
/// which reproduces the put form with p = c + e^k - 1.
inline double upper_fixed_u(double k, double c) {
    detail::require_domain(k, c, "upper_fixed_u");
    if (k < 0.0) {
        const SymmetryImage t = put_call_transform(k, c);
        return upper_fixed_u(t.k_out, t.c_out);
    }
    const double s = std::sqrt(2.0 * k);
    return norm_quantile(c + detail::scaled_tail_at_root(k)) + s;
}

/// Best certified enclosure assembled from every applicable inequality; k < 0
/// is reduced to k > 0 once through put-call symmetry (recorded in the
/// provenance), k = 0 collapses to the closed form 2 quantile((1+c)/2).
inline Bracket best_bracket(double k, double c) {
    detail::require_domain(k, c, "best_bracket");
    if (c == price_floor(k))
        return {0.0, 0.0, {"boundary: c = (1-e^k)^+, y = 0"}};
    if (k == 0.0) {
        const double y = 2.0 * norm_quantile(0.5 * (1.0 + c));
        return {y, y, {"closed form at k = 0"}};
    }
    double kk = k, cc = c;
    std::string suffix;
    if (k < 0.0) {
        const SymmetryImage t = put_call_transform(k, c);
        kk = t.k_out;
        cc = t.c_out;
        suffix = " (via put-call symmetry)";
    }
    const Bracket zero = bracket_price_to_zero(kk, cc);
    const Bracket wing = bracket_wing(kk, cc);

    std::pair<const char*, double> lowers[] = {
        {"price-to-one", lower_price_to_one(kk, cc)},
        {"price-to-zero", zero.lower},
        {"wing", wing.lower}};
    std::pair<const char*, double> uppers[] = {
        {"price-to-one", upper_price_to_one(kk, cc)},
        {"price-to-zero", zero.upper},
        {"wing", wing.upper},
        {"fixed-u", upper_fixed_u(kk, cc)}};

    Bracket best;
    best.lower = 0.0;
    const char* lo_name = "trivial (y >= 0)";
    for (const auto& [name, value] : lowers) {
        if (value > best.lower) {
            best.lower = value;
            lo_name = name;
        }
    }
    best.upper = detail::pos_inf;
    const char* hi_name = "none";
    for (const auto& [name, value] : uppers) {
        if (value < best.upper) {
            best.upper = value;
            hi_name = name;
        }
    }
    std::string hi_label = hi_name;
    if (!std::isfinite(best.upper)) {
        // Unreachable in practice: the price-to-one upper bound is finite on
        // the whole domain. Kept as a safety net with an honest label.
        best.upper = 2.0 * upper_price_to_one(kk, cc);
        hi_label = "heuristic (2x price-to-one)";
    }
    if (best.lower > best.upper) best.lower = best.upper;
    best.provenance.push_back("lower: " + std::string(lo_name) + suffix);
    best.provenance.push_back("upper: " + hi_label + suffix);
    return best;
}

/// Lower bound from a sampled control path: given samples of a control
/// function on the uniform grid over [0, c], forms the trapezoid value of
/// u -> 2k / objective_dj(control(u); k, u)^2, subtracts a quadrature-error
/// allowance (2x a Richardson half-grid estimate plus 1e-12), and returns
/// 2k / objective_di(d; k, 1 - integral). Each integrand sample never exceeds
/// the true integrand, so after the allowance the result is a lower bound for
/// Y(k, c) up to the accuracy of that error estimate; the allowance is an
/// estimate, not a certificate -- the closed-form propositions remain the
/// certified route.
inline double lower_via_controls(double k, double c, const std::vector<double>& control,
                                 double d, int i, int j) {
    if (!(k > 0.0)) throw std::domain_error("lower_via_controls: requires k > 0");
    if (!(c > 0.0 && c < 1.0))
        throw std::domain_error("lower_via_controls: requires 0 < c < 1");
    if (control.size() < 2)
        throw std::domain_error("lower_via_controls: need at least 2 control samples");
    if ((i != 1 && i != 2) || (j != 1 && j != 2))
        throw std::domain_error("lower_via_controls: selectors i, j must be 1 or 2");
    if (!std::isfinite(d)) throw std::domain_error("lower_via_controls: requires finite d");

    const auto objective = [&](int which, double dd, double price) {
        return which == 1 ? objective_d1(dd, k, price) : objective_d2(dd, k, price);
    };

    const std::size_t n = control.size();
    const double h = c / static_cast<double>(n - 1);
    std::vector<double> g(n);
    for (std::size_t l = 0; l < n; ++l) {
        if (!std::isfinite(control[l]))
            throw std::domain_error("lower_via_controls: control samples must be finite");
        const double u = (l == n - 1) ? c : h * static_cast<double>(l);
        const double H = objective(j, control[l], u);
        if (!(H > 0.0))
            throw std::domain_error(
                "lower_via_controls: control makes the objective nonpositive");
        g[l] = std::isinf(H) ? 0.0 : 2.0 * k / (H * H);
    }

    double full = 0.5 * (g.front() + g.back());
    for (std::size_t l = 1; l + 1 < n; ++l) full += g[l];
    full *= h;

    // Half-resolution trapezoid for a Richardson error estimate; when the
    // stride-2 grid misses the right endpoint, the last panel is patched with
    // a single fine-grid trapezoid (only the estimate's quality is affected).
    double half = 0.0;
    {
        const std::size_t last = (n % 2 == 1) ? n - 1 : n - 2;
        half = 0.5 * (g[0] + g[last]);
        for (std::size_t l = 2; l < last; l += 2) half += g[l];
        half *= 2.0 * h;
        if (n % 2 == 0) half += 0.5 * h * (g[n - 2] + g[n - 1]);
    }
    const double allowance = 2.0 * std::fabs(full - half) / 3.0 + 1e-12;
    const double integral = std::max(0.0, full - allowance);

    if (integral >= 1.0) return 0.0;  // no information left; 0 is still a valid lower bound
    const double dual_price =
        std::min(1.0 - integral, std::nextafter(1.0, 0.0));
    const double H_far = objective(i, d, dual_price);
    if (!(H_far > 0.0))
        throw std::domain_error(
            "lower_via_controls: evaluation objective is nonpositive");
    if (std::isinf(H_far)) return 0.0;
    return 2.0 * k / H_far;
}

}  // namespace ivb
