// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "normal.hpp"
#include "pricing.hpp"
#include "symmetry.hpp"

namespace ivb {

enum class Method { bisection, newton, fixed_point };

struct SolverConfig {
    Method method = Method::bisection;
    double tolerance = 1e-12;  // price-residual target; bisection also drives
                               // the y-bracket width below it
    int max_iterations = 200;
    bool record_trace = false;
};

struct SolveReport {
    double y = 0.0;
    int iterations = 0;
    double residual = 0.0;
    std::vector<double> trace;
    Bracket bracket_used;
};

/// Thrown when a solve exhausts max_iterations (or stalls at machine
/// resolution above the requested tolerance); carries the best enclosure
/// found so far.
class NonConvergence : public std::runtime_error {
  public:
    NonConvergence(const std::string& what, Bracket bracket, double best_y)
        : std::runtime_error(what), bracket(std::move(bracket)), best_y(best_y) {}
    Bracket bracket;
    double best_y;
};

namespace detail {

inline void require_config(const SolverConfig& cfg, const char* who) {
    if (!(cfg.tolerance > 0.0))
        throw std::domain_error(std::string(who) + ": tolerance must be > 0");
    if (cfg.max_iterations < 1)
        throw std::domain_error(std::string(who) + ": max_iterations must be >= 1");
}

// Bisection on a certified bracket. Runs until the bracket width drops to
// the tolerance; since |dC/dy| <= pdf(0) < 0.4, that already forces the
// price residual below 0.4x the tolerance, so the report's residual
// certificate holds with deterministic, width-monotone iteration counts.
inline SolveReport bisect_on_bracket(double k, double c, double lo, double hi,
                                     const SolverConfig& cfg, Bracket used) {
    SolveReport rep;
    rep.bracket_used = std::move(used);
    if (call_price(k, lo) >= c) {
        rep.y = lo;
    } else if (call_price(k, hi) <= c) {
        rep.y = hi;
    } else {
        while (hi - lo > cfg.tolerance) {
            if (rep.iterations >= cfg.max_iterations)
                throw NonConvergence("bisection: max_iterations reached",
                                     Bracket{lo, hi, rep.bracket_used.provenance},
                                     0.5 * (lo + hi));
            const double mid = 0.5 * (lo + hi);
            if (!(mid > lo && mid < hi)) break;  // bracket at machine resolution
            ++rep.iterations;
            if (cfg.record_trace) rep.trace.push_back(mid);
            (call_price(k, mid) < c ? lo : hi) = mid;
        }
        rep.y = 0.5 * (lo + hi);
    }
    rep.residual = std::fabs(call_price(k, rep.y) - c);
    if (rep.residual > cfg.tolerance)
        throw NonConvergence("bisection: residual above tolerance at machine resolution",
                             Bracket{lo, hi, rep.bracket_used.provenance}, rep.y);
    return rep;
}

}  // namespace detail

/// Newton iteration y <- y + (c - C(k,y))/vega(k,y) seeded at the convexity
/// threshold sqrt(2k), where C(k, .) changes convexity; from that seed the
/// iterates approach Y(k, c) monotonely from one side (Manaster & Koehler,
/// 1982). Negative k is routed through put-call symmetry; if vega underflows
/// the solve falls back to bisection on the certified bracket.
inline SolveReport newton_mk(double k, double c, const SolverConfig& cfg = {}) {
    detail::require_config(cfg, "newton_mk");
    detail::require_domain(k, c, "newton_mk");
    if (c == price_floor(k)) {
        SolveReport rep;
        rep.bracket_used = Bracket{0.0, 0.0, {"boundary: c = (1-e^k)^+, y = 0"}};
        return rep;
    }
    if (k < 0.0) {
        const SymmetryImage t = put_call_transform(k, c);
        SolveReport rep = newton_mk(t.k_out, t.c_out, cfg);
        rep.residual = std::fabs(call_price(k, rep.y) - c);
        for (auto& s : rep.bracket_used.provenance) s += " (via put-call symmetry)";
        return rep;
    }
    if (k == 0.0) {
        SolveReport rep;
        rep.y = 2.0 * norm_quantile(0.5 * (1.0 + c));
        rep.residual = std::fabs(call_price(0.0, rep.y) - c);
        rep.bracket_used = Bracket{rep.y, rep.y, {"closed form at k = 0"}};
        return rep;
    }
    const Bracket br = best_bracket(k, c);
    SolveReport rep;
    rep.bracket_used = br;
    double y = convexity_threshold(k);
    if (cfg.record_trace) rep.trace.push_back(y);
    double last_step = detail::pos_inf;
    for (int n = 0; n < cfg.max_iterations; ++n) {
        const double r = call_price(k, y) - c;
        if (std::fabs(r) <= cfg.tolerance && last_step <= cfg.tolerance) {
            rep.y = y;
            rep.iterations = n;
            rep.residual = std::fabs(r);
            return rep;
        }
        const double v = vega(k, y);
        const double step = -r / v;
        double y_next = y + step;
        if (!(v > 1e-290) || !std::isfinite(step) || !(y_next > 0.0)) {
            // Monotone information from the last sign: r < 0 means y is below
            // the root, r > 0 above. Narrow the certified bracket and bisect.
            double lo = br.lower;
            double hi = std::isfinite(br.upper) ? br.upper
                                                : 2.0 * upper_price_to_one(k, c);
            if (r < 0.0)
                lo = std::max(lo, y);
            else
                hi = std::min(hi, y);
            Bracket fb{lo, hi, br.provenance};
            fb.provenance.push_back("newton: vega underflow, fell back to bisection");
            SolveReport fallback = detail::bisect_on_bracket(k, c, lo, hi, cfg, fb);
            fallback.iterations += n;
            fallback.trace.insert(fallback.trace.begin(), rep.trace.begin(),
                                  rep.trace.end());
            return fallback;
        }
        y = y_next;
        last_step = std::fabs(step);
        if (cfg.record_trace) rep.trace.push_back(y);
    }
    throw NonConvergence("newton_mk: max_iterations reached", br, y);
}

/// The fixed-point iteration y <- objective_d1(-k/y + y/2; k, c), defined for
/// k > 0 on y > y_min = quantile(c) + sqrt(quantile(c)^2 + 2k). After the
/// first application the iterates decrease strictly to Y(k, c), each one a
/// certified upper bound; convergence is quadratic. Stops when successive
/// iterates differ by at most the tolerance and the price residual is within
/// tolerance as well.
inline SolveReport fixed_point(double k, double c, double y0,
                               const SolverConfig& cfg = {}) {
    detail::require_config(cfg, "fixed_point");
    if (!(k > 0.0)) throw std::domain_error("fixed_point: requires k > 0");
    detail::require_domain(k, c, "fixed_point");
    if (!(c < 1.0) || std::isnan(y0))
        throw std::domain_error("fixed_point: requires c < 1 and numeric y0");
    if (c == 0.0) {
        SolveReport rep;
        rep.bracket_used = Bracket{0.0, 0.0, {"boundary: c = 0, y = 0"}};
        return rep;
    }
    const double y_min = detail::root_sum(norm_quantile(c), 2.0 * k);
    if (!(y0 > y_min))
        throw std::domain_error(
            "fixed_point: y0 must exceed y_min = quantile(c) + sqrt(quantile(c)^2 + 2k)");
    SolveReport rep;
    rep.bracket_used =
        Bracket{y_min, y0, {"fixed-point start: (y_min, y0], lower: wing"}};
    double y = y0;
    if (cfg.record_trace) rep.trace.push_back(y0);
    for (int n = 1; n <= cfg.max_iterations; ++n) {
        const double y_next = objective_d1(-k / y + 0.5 * y, k, c);
        if (!std::isfinite(y_next))
            throw NonConvergence("fixed_point: iterate left the admissible region",
                                 Bracket{y_min, y, rep.bracket_used.provenance}, y);
        rep.iterations = n;
        if (cfg.record_trace) rep.trace.push_back(y_next);
        if (std::fabs(y_next - y) <= cfg.tolerance) {
            const double residual = std::fabs(call_price(k, y_next) - c);
            if (residual <= cfg.tolerance) {
                rep.y = y_next;
                rep.residual = residual;
                return rep;
            }
        }
        y = y_next;
    }
    throw NonConvergence("fixed_point: max_iterations reached",
                         Bracket{y_min, y, rep.bracket_used.provenance}, y);
}

/// Main inversion entry point: returns y with |call_price(k, y) - c| within
/// the tolerance. The boundary price returns y = 0 immediately, k = 0 uses
/// the closed form 2 quantile((1+c)/2), k < 0 routes through put-call
/// symmetry (so every method keeps its k >= 0 hypothesis), and bisection
/// starts from the certified bracket.
inline SolveReport implied_y(double k, double c, const SolverConfig& cfg = {}) {
    detail::require_config(cfg, "implied_y");
    detail::require_domain(k, c, "implied_y");
    if (c == price_floor(k)) {
        SolveReport rep;
        rep.bracket_used = Bracket{0.0, 0.0, {"boundary: c = (1-e^k)^+, y = 0"}};
        return rep;
    }
    if (k == 0.0) {
        SolveReport rep;
        rep.y = 2.0 * norm_quantile(0.5 * (1.0 + c));
        rep.residual = std::fabs(call_price(0.0, rep.y) - c);
        rep.bracket_used = Bracket{rep.y, rep.y, {"closed form at k = 0"}};
        if (rep.residual > cfg.tolerance)
            throw NonConvergence("implied_y: closed form exceeds requested tolerance",
                                 rep.bracket_used, rep.y);
        return rep;
    }
    if (cfg.method == Method::newton) return newton_mk(k, c, cfg);
    if (k < 0.0) {
        const SymmetryImage t = put_call_transform(k, c);
        SolveReport rep = implied_y(t.k_out, t.c_out, cfg);
        rep.residual = std::fabs(call_price(k, rep.y) - c);
        for (auto& s : rep.bracket_used.provenance) s += " (via put-call symmetry)";
        return rep;
    }
    if (cfg.method == Method::fixed_point)
        return fixed_point(k, c, upper_price_to_one(k, c), cfg);
    const Bracket br = best_bracket(k, c);
    const double hi =
        std::isfinite(br.upper) ? br.upper : 2.0 * upper_price_to_one(k, c);
    return detail::bisect_on_bracket(k, c, br.lower, hi, cfg, br);
}

}  // namespace ivb
