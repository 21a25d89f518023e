// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <ivb/bounds.hpp>
#include <ivb/duality.hpp>
#include <ivb/solver.hpp>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

bool provenance_contains(const ivb::Bracket& br, const std::string& needle) {
    for (const auto& s : br.provenance)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("variational objectives: equality at the minimizers", "[bounds]") {
    struct Point {
        double k, c;
    };
    for (auto [k, c] : {Point{0.2, 0.3}, Point{1.0, 0.25}, Point{3.0, 1e-10},
                        Point{0.05, 0.9}}) {
        const double y = ivb::implied_y(k, c).y;
        const double d1 = -k / y + 0.5 * y;
        const double d2 = -k / y - 0.5 * y;
        CHECK_THAT(ivb::objective_d1(d1, k, c), WithinAbs(y, 1e-9));
        CHECK_THAT(ivb::objective_d2(d2, k, c), WithinAbs(y, 1e-9));
        // Moving away from the minimizer can only increase the objectives.
        for (double delta : {-0.5, -0.1, 0.1, 0.5}) {
            CHECK(ivb::objective_d1(d1 + delta, k, c) >=
                  ivb::objective_d1(d1, k, c) - 1e-12);
            CHECK(ivb::objective_d2(d2 + delta, k, c) >=
                  ivb::objective_d2(d2, k, c) - 1e-12);
        }
    }
}

TEST_CASE("variational objectives: always upper bounds, edge behavior",
          "[bounds]") {
    const double k = 0.2, c = 0.3;
    const double y = ivb::implied_y(k, c).y;
    for (double d : {-3.0, -1.0, -0.26, 0.0, 0.26, 0.5, 2.0}) {
        CHECK(ivb::objective_d1(d, k, c) >= y - 1e-12);
        CHECK(ivb::objective_d2(d, k, c) >= y - 1e-12);
    }
    // When cdf(d) drops below c the first objective's quantile argument is
    // nonpositive and the bound becomes vacuous (+inf) rather than wrong.
    CHECK(std::isinf(ivb::objective_d1(-10.0, k, c)));
    // The second objective switches to a log-space product deep in the left
    // tail; it must stay finite (no inf * 0) and remain an upper bound.
    CHECK(ivb::objective_d2(-40.0, k, c) >= y);
    CHECK(std::isfinite(ivb::objective_d2(-40.0, k, c)));
    CHECK(ivb::objective_d2(-9.0, 3.0, 1e-10) >= ivb::implied_y(3.0, 1e-10).y);

    CHECK_THROWS_AS(ivb::objective_d1(0.0, 0.2, 1.0), std::domain_error);
    CHECK_THROWS_AS(ivb::objective_d2(0.0, 0.2, -0.1), std::domain_error);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(ivb::objective_d1(inf, 0.2, 0.3), std::domain_error);
}

TEST_CASE("variational objectives: put-call mirror identity", "[bounds]") {
    // Fixing the near leg of one objective equals fixing the far leg of the
    // other at the reflected point: d1-form at (k, c) equals the d2-form at
    // (-k, transformed price) evaluated at -d.
    const double k = 0.2, c = 0.3;
    const auto t = ivb::put_call_transform(k, c);
    for (double d : {-0.3, 0.1, 0.8}) {
        const double lhs = ivb::objective_d1(d, k, c);
        const double rhs = ivb::objective_d2(-d, t.k_out, t.c_out);
        CHECK_THAT(lhs, WithinAbs(rhs, 1e-12));
    }
}

TEST_CASE("price-to-one bounds: frozen values, ordering, k = 0 exactness",
          "[bounds]") {
    CHECK_THAT(ivb::upper_price_to_one(0.2, 0.5), WithinRel(1.5102766068612111, 1e-13));
    CHECK_THAT(ivb::lower_price_to_one(0.2, 0.5), WithinRel(1.3489795003921635, 1e-13));

    for (double k : {-1.0, -0.2, 0.0, 0.2, 1.0}) {
        const double floor = ivb::price_floor(k);
        for (double frac : {0.1, 0.5, 0.9, 0.999}) {
            const double c = floor + (1.0 - floor) * frac;
            const double y = ivb::implied_y(k, c).y;
            CHECK(ivb::upper_price_to_one(k, c) >= y - 1e-9);
            CHECK(ivb::lower_price_to_one(k, c) <= y + 1e-9);
        }
    }

    // At k = 0 both collapse onto the closed form and the truth.
    for (double c : {0.1, 0.5, 0.93}) {
        const double upper = ivb::upper_price_to_one(0.0, c);
        const double lower = ivb::lower_price_to_one(0.0, c);
        CHECK_THAT(upper, WithinRel(lower, 1e-15));
        CHECK_THAT(upper, WithinRel(ivb::implied_y(0.0, c).y, 1e-13));
    }

    // Both sides sharpen as c -> 1: the enclosure width shrinks to 0
    // relative to the level.
    const double width_mid = ivb::upper_price_to_one(0.2, 0.9) -
                             ivb::lower_price_to_one(0.2, 0.9);
    const double width_far = ivb::upper_price_to_one(0.2, 1.0 - 1e-10) -
                             ivb::lower_price_to_one(0.2, 1.0 - 1e-10);
    CHECK(width_far < width_mid);
}

TEST_CASE("dual gap factor", "[bounds]") {
    CHECK_THAT(ivb::dual_gap_factor(0.2, 0.1), WithinRel(48.737796755564649, 1e-13));
    CHECK_THROWS_AS(ivb::dual_gap_factor(0.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(ivb::dual_gap_factor(-0.2, 0.1), std::domain_error);
    CHECK_THROWS_AS(ivb::dual_gap_factor(0.2, 0.0), std::domain_error);
    CHECK_THROWS_AS(ivb::dual_gap_factor(0.2, 1.0), std::domain_error);
    // It really does bound the dual price from below via 1 - c L.
    for (double c : {0.005, 0.02, 0.08}) {
        const double bound = 1.0 - c * ivb::dual_gap_factor(0.2, c);
        CHECK(ivb::c_hat(0.2, c) >= bound - 1e-12);
    }
}

TEST_CASE("price-to-zero bracket", "[bounds]") {
    const auto br = ivb::bracket_price_to_zero(0.2, 0.01);
    CHECK_THAT(br.lower, WithinRel(0.076571787706187567, 1e-13));
    const double y = ivb::implied_y(0.2, 0.01).y;
    CHECK(br.lower <= y + 1e-12);
    CHECK(br.upper >= y - 1e-12);
    CHECK(std::isfinite(br.upper));
    CHECK(provenance_contains(br, "lower: price-to-zero"));

    // Away from the c -> 0 regime the upper side stops applying.
    const auto wide = ivb::bracket_price_to_zero(0.2, 0.5);
    CHECK(std::isinf(wide.upper));
    CHECK(provenance_contains(wide, "inapplicable"));
    CHECK(wide.lower <= ivb::implied_y(0.2, 0.5).y);

    // Both sides tighten toward the truth as c -> 0: ratio upper/lower -> 1.
    const auto tight = ivb::bracket_price_to_zero(0.2, 1e-10);
    CHECK(tight.upper / tight.lower < 1.5);
    CHECK(ivb::bracket_price_to_zero(0.2, 1e-3).upper /
              ivb::bracket_price_to_zero(0.2, 1e-3).lower >
          tight.upper / tight.lower);

    CHECK_THROWS_AS(ivb::bracket_price_to_zero(0.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(ivb::bracket_price_to_zero(-0.5, 0.1), std::domain_error);
    CHECK_THROWS_AS(ivb::bracket_price_to_zero(0.2, 0.0), std::domain_error);
}

TEST_CASE("wing bracket: frozen value, validity, symmetry routing", "[bounds]") {
    CHECK_THAT(ivb::bracket_wing(2.0, 1e-6).lower,
               WithinRel(0.40361385854686123, 1e-13));

    // Valid on the whole domain, both wings.
    struct Point {
        double k, c_frac;
    };
    for (auto [k, frac] : {Point{0.05, 0.002}, Point{0.2, 0.3}, Point{1.0, 0.45},
                           Point{3.0, 1e-8}, Point{-0.5, 0.2}, Point{-2.0, 0.6}}) {
        const double floor = ivb::price_floor(k);
        const double c = floor + (1.0 - floor) * frac;
        const auto br = ivb::bracket_wing(k, c);
        const double y = ivb::implied_y(k, c).y;
        CHECK(br.lower <= y + 1e-9);
        CHECK(br.upper >= y - 1e-9);
    }

    // k = 0, c = 0.5: the lower side degenerates to 0 and the upper to +inf.
    const auto flat = ivb::bracket_wing(0.0, 0.5);
    CHECK(flat.lower == 0.0);
    CHECK(std::isinf(flat.upper));
    CHECK(provenance_contains(flat, "inapplicable"));

    // The upper side is finite exactly while 2c < 1.
    CHECK(std::isfinite(ivb::bracket_wing(0.2, 0.499).upper));
    CHECK(std::isinf(ivb::bracket_wing(0.2, 0.5).upper));

    // Negative k routes through the put-call image and says so.
    const auto routed = ivb::bracket_wing(-1.0, 0.8);
    CHECK(provenance_contains(routed, "via put-call symmetry"));
    const auto image = ivb::put_call_transform(-1.0, 0.8);
    const auto direct = ivb::bracket_wing(image.k_out, image.c_out);
    CHECK(routed.lower == direct.lower);
    CHECK(routed.upper == direct.upper);
}

TEST_CASE("fixed-u upper bound", "[bounds]") {
    CHECK_THAT(ivb::upper_fixed_u(0.2, 0.3), WithinRel(0.94291480235663024, 1e-13));
    // An upper bound everywhere, both wings.
    struct Point {
        double k, c_frac;
    };
    for (auto [k, frac] : {Point{0.4, 0.25}, Point{2.0, 0.01}, Point{-0.7, 0.35},
                           Point{-3.5, 0.18}}) {
        const double floor = ivb::price_floor(k);
        const double c = floor + (1.0 - floor) * frac;
        CHECK(ivb::upper_fixed_u(k, c) >= ivb::implied_y(k, c).y - 1e-9);
    }
    // Vacuous (+inf) once c + e^k cdf(-sqrt(2k)) reaches 1.
    CHECK(std::isinf(ivb::upper_fixed_u(0.0, 0.5)));
}

TEST_CASE("best bracket: assembly, collapse cases, provenance", "[bounds]") {
    const auto br = ivb::best_bracket(0.2, 0.5);
    const double y = ivb::implied_y(0.2, 0.5).y;
    CHECK(br.lower <= y);
    CHECK(br.upper >= y);
    CHECK(std::isfinite(br.upper));
    // At (0.2, 0.5) the price-to-one pair wins both sides.
    CHECK(provenance_contains(br, "lower: price-to-one"));
    CHECK(provenance_contains(br, "upper: price-to-one"));
    CHECK_THAT(br.upper, WithinRel(1.5102766068612111, 1e-13));
    CHECK_THAT(br.lower, WithinRel(1.3489795003921635, 1e-13));

    // Boundary price: exact zero bracket.
    const auto at_floor = ivb::best_bracket(-0.4, ivb::price_floor(-0.4));
    CHECK(at_floor.lower == 0.0);
    CHECK(at_floor.upper == 0.0);

    // k = 0 collapses to the closed form.
    const auto collapsed = ivb::best_bracket(0.0, 0.37);
    CHECK(collapsed.lower == collapsed.upper);
    CHECK_THAT(collapsed.lower, WithinRel(ivb::implied_y(0.0, 0.37).y, 1e-15));

    // Negative k is reduced once through the put-call image.
    const auto routed = ivb::best_bracket(-0.8, 0.75);
    CHECK(provenance_contains(routed, "via put-call symmetry"));
    const double y_routed = ivb::implied_y(-0.8, 0.75).y;
    CHECK(routed.lower <= y_routed + 1e-12);
    CHECK(routed.upper >= y_routed - 1e-12);

    // Enclosure + finite upper across a spread of regimes.
    for (double k : {-2.0, -0.3, 0.1, 1.5, 3.0}) {
        const double floor = ivb::price_floor(k);
        for (double frac : {1e-9, 1e-4, 0.05, 0.4, 0.75, 0.999}) {
            const double c = floor + (1.0 - floor) * frac;
            const auto b = ivb::best_bracket(k, c);
            const double yy = ivb::implied_y(k, c).y;
            CHECK(b.lower <= yy + 1e-9);
            CHECK(b.upper >= yy - 1e-9);
            CHECK(std::isfinite(b.upper));
        }
    }
}

TEST_CASE("control-path lower estimate", "[bounds]") {
    const double k = 0.2, c = 0.3;
    const double y_true = ivb::implied_y(k, c).y;

    // Sampling the optimizing control recovers the truth from below.
    const std::size_t n = 2001;
    std::vector<double> control(n);
    const double h = c / static_cast<double>(n - 1);
    for (std::size_t l = 1; l < n; ++l) {
        const double u = (l == n - 1) ? c : h * static_cast<double>(l);
        const double yu = ivb::implied_y(k, u).y;
        control[l] = -k / yu + 0.5 * yu;
    }
    control[0] = control[1];  // any finite value is admissible at u = 0

    const double y_dual = ivb::implied_y(k, ivb::c_hat(k, c)).y;
    const double d_eval = -k / y_dual + 0.5 * y_dual;
    const double est = ivb::lower_via_controls(k, c, control, d_eval, 1, 1);
    CHECK(est <= y_true + 1e-9);
    CHECK(est >= y_true - 0.05);

    // The far-leg evaluation variant is a valid lower bound too.
    const double d2_eval = -k / y_dual - 0.5 * y_dual;
    const double est2 = ivb::lower_via_controls(k, c, control, d2_eval, 2, 1);
    CHECK(est2 <= y_true + 1e-9);
    CHECK(est2 >= y_true - 0.05);

    // A crude constant control still yields a valid (weaker) lower bound.
    std::vector<double> crude(n, 1.0);
    const double est_crude = ivb::lower_via_controls(k, c, crude, 1.0, 1, 1);
    CHECK(est_crude >= 0.0);
    CHECK(est_crude <= y_true + 1e-9);

    CHECK_THROWS_AS(ivb::lower_via_controls(0.0, c, control, d_eval, 1, 1),
                    std::domain_error);
    CHECK_THROWS_AS(ivb::lower_via_controls(k, 0.0, control, d_eval, 1, 1),
                    std::domain_error);
    CHECK_THROWS_AS(ivb::lower_via_controls(k, c, {0.1}, d_eval, 1, 1),
                    std::domain_error);
    CHECK_THROWS_AS(ivb::lower_via_controls(k, c, control, d_eval, 0, 1),
                    std::domain_error);
    CHECK_THROWS_AS(ivb::lower_via_controls(k, c, control, d_eval, 1, 3),
                    std::domain_error);
    std::vector<double> bad = control;
    bad[5] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ivb::lower_via_controls(k, c, bad, d_eval, 1, 1),
                    std::domain_error);
    CHECK_THROWS_AS(
        ivb::lower_via_controls(k, c, control,
                                std::numeric_limits<double>::infinity(), 1, 1),
        std::domain_error);
}
