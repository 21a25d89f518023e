// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <utility>

namespace ivb {
namespace detail {

// Gauss-Kronrod 7-15 pair on [-1, 1] (QUADPACK abscissae/weights).
inline constexpr double gk_x[8] = {
    0.99145537112081263920685469752632851664204433837038,
    0.94910791234275852452618968404785126240077093767062,
    0.86486442335976907278971278864092620121097230707409,
    0.74153118559939443986386477328078840707414764714139,
    0.58608723546769113029414483825872959843678075060436,
    0.40584515137739716690660641207696146334738201409937,
    0.20778495500789846760068940377324491347978440714517,
    0.0};
inline constexpr double gk_wk[8] = {
    0.02293532201052922496373200805896959199356081127575,
    0.06309209262997855329070066318920428666507115721155,
    0.10479001032225018383987632254151801744375665421383,
    0.14065325971552591874518959051023792039988975724800,
    0.16900472663926790282658342659855028410624490030294,
    0.19035057806478540991325640242101368282607807545536,
    0.20443294007529889241416199923464908471651760418072,
    0.20948214108472782801299917489171426369776208022370};
inline constexpr double gk_wg[4] = {
    0.12948496616886969327061143267908201832858740225995,
    0.27970539148927666790146777142377958248692506522659,
    0.38183005050511894495036977548897513387836508353386,
    0.41795918367346938775510204081632653061224489795918};

template <class F>
std::pair<double, double> gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = gk_wk[7] * fc;
    double resg = gk_wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double fv = f(c - h * gk_x[j]) + f(c + h * gk_x[j]);
        resk += gk_wk[j] * fv;
        if (j % 2 == 1) resg += gk_wg[j / 2] * fv;
    }
    return {resk * h, std::fabs((resk - resg) * h)};
}

template <class F>
double integrate_impl(const F& f, double a, double b, double rel_tol, double abs_tol,
                      int depth) {
    const auto [value, error] = gk15(f, a, b);
    if (depth <= 0 || error <= abs_tol || error <= rel_tol * std::fabs(value))
        return value;
    const double m = 0.5 * (a + b);
    return integrate_impl(f, a, m, rel_tol, 0.5 * abs_tol, depth - 1) +
           integrate_impl(f, m, b, rel_tol, 0.5 * abs_tol, depth - 1);
}

// Adaptive bisection on the GK15 rule. Suitable for the smooth, decaying
// integrands used here; per-panel tolerances halve along the recursion so the
// absolute budget is honoured globally.
template <class F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-11,
                 double abs_tol = 1e-300, int max_depth = 55) {
    if (a == b) return 0.0;
    return integrate_impl(f, a, b, rel_tol, abs_tol, max_depth);
}

}  // namespace detail
}  // namespace ivb
