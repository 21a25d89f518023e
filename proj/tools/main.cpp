// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface: point queries (price), inversion with certified
// bracket provenance (invert, bounds), tail asymptotics (asym), and CSV
// reproduction of the six reference figures (figure).
//
// Exit codes: 0 success, 2 domain error, 3 non-convergence, 4 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <ivb/ivb.hpp>

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print_report(const ivb::SolveReport& rep) {
    std::cout << "y = " << fmt(rep.y) << '\n'
              << "iterations = " << rep.iterations << '\n'
              << "residual = " << fmt(rep.residual) << '\n'
              << "bracket = [" << fmt(rep.bracket_used.lower) << ", "
              << fmt(rep.bracket_used.upper) << "]\n";
    for (const auto& p : rep.bracket_used.provenance)
        std::cout << "  " << p << '\n';
    if (!rep.trace.empty()) {
        std::cout << "trace:\n";
        for (std::size_t n = 0; n < rep.trace.size(); ++n)
            std::cout << "  y_" << n << " = " << fmt(rep.trace[n]) << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Implied total standard deviation of the normalized Black-Scholes call:\n"
        "prices, certified bounds, asymptotics, and figure CSVs."};
    app.require_subcommand(1);

    double k = 0.0, c = 0.0, y = 0.0, tol = 1e-12;
    std::string method = "bisection";
    std::string name, out;
    int grid_points = 0;

    auto* cmd_price = app.add_subcommand("price", "Normalized call price C(k, y)");
    cmd_price->add_option("--k", k, "log-moneyness ln(strike/forward)")->required();
    cmd_price->add_option("--y", y, "total standard deviation sigma*sqrt(T), >= 0")
        ->required();

    auto* cmd_invert = app.add_subcommand(
        "invert", "Implied total standard deviation Y(k, c) with solve report");
    cmd_invert->add_option("--k", k, "log-moneyness")->required();
    cmd_invert->add_option("--c", c, "normalized call price in [(1-e^k)^+, 1)")
        ->required();
    cmd_invert
        ->add_option("--method", method,
                     "bisection (default) | newton | fixed-point")
        ->check(CLI::IsMember({"bisection", "newton", "fixed-point"}));
    cmd_invert->add_option("--tol", tol, "price-residual tolerance (default 1e-12)");

    auto* cmd_bounds = app.add_subcommand(
        "bounds", "Certified bracket for Y(k, c) with provenance");
    cmd_bounds->add_option("--k", k, "log-moneyness")->required();
    cmd_bounds->add_option("--c", c, "normalized call price")->required();

    auto* cmd_asym = app.add_subcommand(
        "asym", "Asymptotic formulas evaluated at (k, c); regime fit is the "
                "caller's concern");
    cmd_asym->add_option("--k", k, "log-moneyness")->required();
    cmd_asym->add_option("--c", c, "normalized call price")->required();

    auto* cmd_figure = app.add_subcommand(
        "figure",
        "Write one reference figure as CSV. Grids are reconstructions: chat "
        "uses 199 points on c in [0.005, 0.995] (k = 0.2 unless --k is given); "
        "long: 200 points, c in [0.01, 0.999] log-spaced in 1-c; short: 200 "
        "points, c in [1e-12, 0.5] log-spaced; wing-vg: k in [0, 2.5]; "
        "left-jtd: k in [-3.5, 0]; cobweb: fixed-point iterates at (--k, --c), "
        "default (0.2, 0.3), started from the price-to-one upper bound.");
    cmd_figure
        ->add_option("--name", name,
                     "chat | long | short | wing-vg | left-jtd | cobweb")
        ->required();
    cmd_figure->add_option("--out", out, "output path (default <name>.csv)");
    cmd_figure->add_option("--grid-points", grid_points,
                           "number of grid rows (default 199 for chat, 200 "
                           "otherwise)");
    cmd_figure->add_option("--k", k, "log-moneyness for chat/long/short/cobweb "
                                     "(default 0.2)");
    cmd_figure->add_option("--c", c, "target price for cobweb (default 0.3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // bad usage is a domain problem for us
    }

    try {
        if (cmd_price->parsed()) {
            std::cout << fmt(ivb::call_price(k, y)) << '\n';
        } else if (cmd_invert->parsed()) {
            ivb::SolverConfig cfg;
            cfg.tolerance = tol;
            cfg.method = method == "newton"        ? ivb::Method::newton
                         : method == "fixed-point" ? ivb::Method::fixed_point
                                                   : ivb::Method::bisection;
            cfg.record_trace = cfg.method == ivb::Method::fixed_point;
            print_report(ivb::implied_y(k, c, cfg));
        } else if (cmd_bounds->parsed()) {
            const ivb::Bracket br = ivb::best_bracket(k, c);
            std::cout << "lower = " << fmt(br.lower) << '\n'
                      << "upper = " << fmt(br.upper) << '\n';
            for (const auto& p : br.provenance) std::cout << "  " << p << '\n';
        } else if (cmd_asym->parsed()) {
            ivb::detail::require_domain(k, c, "asym");
            std::cout << "price-to-one = " << fmt(ivb::asym_price_to_one(c)) << '\n';
            if (k != 0.0) {
                std::cout << "price-to-zero = " << fmt(ivb::asym_price_to_zero(k, c))
                          << '\n';
                const double x = (k > 0.0) ? c : c + std::expm1(k);
                std::cout << "wing = " << fmt(ivb::asym_wing(k, x)) << '\n';
                // Proxy for the limiting tail probability: the scaled price
                // itself (e^{-k} p(k) on the left wing, c(k) on the right).
                const double u = (k > 0.0) ? c : std::exp(-k) * x;
                if (u > 0.0 && u < 1.0)
                    std::cout << "fixed-u (u = " << fmt(u)
                              << ") = " << fmt(ivb::asym_fixed_u(k, u)) << '\n';
            }
        } else if (cmd_figure->parsed()) {
            ivb::FigureSpec spec;
            spec.name = name;
            spec.grid_points = grid_points;
            if (cmd_figure->count("--k")) spec.k = k;
            if (cmd_figure->count("--c")) spec.c = c;
            const std::string path = out.empty() ? name + ".csv" : out;
            // Render to memory first so a bad figure name or a mid-write
            // throw never leaves a partial file behind.
            std::ostringstream buf;
            const std::size_t rows = ivb::write_figure(spec, buf);
            std::ofstream os(path, std::ios::binary);  // LF endings everywhere
            if (!os) {
                std::cerr << "error: cannot open '" << path << "' for writing\n";
                return 4;
            }
            os << buf.str();
            os.flush();
            if (!os) {
                std::cerr << "error: failed while writing '" << path << "'\n";
                return 4;
            }
            std::cout << "wrote " << path << " (" << rows << " rows)\n";
        }
    } catch (const ivb::NonConvergence& e) {
        std::cerr << "error: " << e.what() << '\n'
                  << "  best bracket [" << fmt(e.bracket.lower) << ", "
                  << fmt(e.bracket.upper) << "], best y " << fmt(e.best_y) << '\n';
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
