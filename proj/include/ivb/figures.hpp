// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "asymptotics.hpp"
#include "bounds.hpp"
#include "duality.hpp"
#include "models.hpp"
#include "solver.hpp"

namespace ivb {

/// A CSV figure request. Names reproduce, in order: the dual-price curve,
/// the c -> 1 bounds, the c -> 0 bounds, the variance-gamma right wing, the
/// jump-to-default left wing, and the fixed-point cobweb iterates.
struct FigureSpec {
    std::string name;     // chat | long | short | wing-vg | left-jtd | cobweb
    int grid_points = 0;  // 0 = figure default (199 for chat, 200 otherwise)
    double k = 0.2;       // log-moneyness for chat/long/short/cobweb
    double c = 0.3;       // target price for cobweb
};

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

/// Writes the requested figure as CSV (header row, LF endings, 17 significant
/// digits -- byte-identical across runs). Returns the number of data rows.
/// Grids are reconstructions: the source figures pin k = 0.2 for the price
/// grids, K/F up to ~10 for the variance-gamma wing and down to ~0.04 for the
/// jump-to-default wing, but not the sampling itself.
inline std::size_t write_figure(const FigureSpec& spec, std::ostream& os) {
    const auto row5 = [&os](double a, double b, double c, double d, double e) {
        os << detail::fmt17(a) << ',' << detail::fmt17(b) << ',' << detail::fmt17(c)
           << ',' << detail::fmt17(d) << ',' << detail::fmt17(e) << '\n';
    };
    const int n = spec.grid_points > 0 ? spec.grid_points
                                       : (spec.name == "chat" ? 199 : 200);
    if (n < 2) throw std::domain_error("write_figure: need at least 2 grid points");

    if (spec.name == "chat") {
        os << "c,c_hat\n";
        for (int i = 0; i < n; ++i) {
            const double c = 0.005 + 0.99 * (static_cast<double>(i) / (n - 1));
            os << detail::fmt17(c) << ',' << detail::fmt17(c_hat(spec.k, c)) << '\n';
        }
        return static_cast<std::size_t>(n);
    }
    if (spec.name == "long") {
        os << "c,y_upper,y_true,y_lower,y_asym\n";
        for (int i = 0; i < n; ++i) {
            const double one_minus_c =
                0.99 * std::pow(0.001 / 0.99, static_cast<double>(i) / (n - 1));
            const double c = 1.0 - one_minus_c;
            row5(c, upper_price_to_one(spec.k, c), implied_y(spec.k, c).y,
                 lower_price_to_one(spec.k, c), asym_price_to_one(c));
        }
        return static_cast<std::size_t>(n);
    }
    if (spec.name == "short") {
        os << "c,y_upper,y_true,y_lower,y_asym\n";
        for (int i = 0; i < n; ++i) {
            const double c =
                1e-12 * std::pow(0.5 / 1e-12, static_cast<double>(i) / (n - 1));
            const Bracket br = bracket_price_to_zero(spec.k, c);
            row5(c, br.upper, implied_y(spec.k, c).y, br.lower,
                 asym_price_to_zero(spec.k, c));
        }
        return static_cast<std::size_t>(n);
    }
    if (spec.name == "wing-vg") {
        const VarianceGamma vg(0.1213, 0.1686, -0.1436, 5.0);
        os << "k,y_upper,y_true,y_lower,y_asym\n";
        for (int i = 0; i < n; ++i) {
            const double k = 2.5 * (static_cast<double>(i) / (n - 1));
            const double c = vg.call(k);
            const Bracket br = bracket_wing(k, c);
            row5(k, br.upper, implied_y(k, c).y, br.lower, asym_wing(k, c));
        }
        return static_cast<std::size_t>(n);
    }
    if (spec.name == "left-jtd") {
        const JumpToDefault jtd(0.60, 0.05, 4.0);
        const double u = jtd.default_probability();
        os << "k,y_upper,y_true,y_lower,y_asym\n";
        for (int i = 0; i < n; ++i) {
            const double k = -3.5 + 3.5 * (static_cast<double>(i) / (n - 1));
            const double c = jtd.call(k);
            row5(k, upper_fixed_u(k, c), implied_y(k, c).y, bracket_wing(k, c).lower,
                 asym_fixed_u(k, u));
        }
        return static_cast<std::size_t>(n);
    }
    if (spec.name == "cobweb") {
        SolverConfig cfg;
        cfg.record_trace = true;
        const SolveReport rep =
            fixed_point(spec.k, spec.c, upper_price_to_one(spec.k, spec.c), cfg);
        os << "n,y_n,F(y_n)\n";
        for (std::size_t m = 0; m + 1 < rep.trace.size(); ++m)
            os << m << ',' << detail::fmt17(rep.trace[m]) << ','
               << detail::fmt17(rep.trace[m + 1]) << '\n';
        return rep.trace.size() - 1;
    }
    throw std::domain_error(
        "write_figure: unknown figure name (expected chat, long, short, wing-vg, "
        "left-jtd, or cobweb)");
}

}  // namespace ivb
