// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rsmasec/quadrature.hpp"
#include "rsmasec/specfun.hpp"

namespace rsmasec {

/// Parameters of int_0^infty e^{-p t} t^q (c t + 1)^{-r} dt.
struct LaplacePowParams {
    double p;  ///< exponential rate, > 0
    double q;  ///< power of t, >= 0
    double c;  ///< shift scale, >= 0
    double r;  ///< power of the shifted factor, >= 0
    void validate() const {
        if (!(p > 0.0)) throw std::domain_error("LaplacePowParams: p must be > 0");
        if (q < 0.0 || c < 0.0 || r < 0.0)
            throw std::domain_error("LaplacePowParams: q, c, r must be >= 0");
    }
};

/// Parameters of phi = int_0^infty e^{-c1 y} y^{c2} (c3 y+1)^{-c4} (c5 y+1)^{-c6} dy.
struct PhiParams {
    double c1;  ///< > 0
    int c2;     ///< >= 0
    double c3;
    double c4;
    double c5;
    double c6;
    void validate() const {
        if (!(c1 > 0.0)) throw std::domain_error("PhiParams: c1 must be > 0");
        if (c2 < 0) throw std::domain_error("PhiParams: c2 must be >= 0");
        if (c3 < 0.0 || c4 < 0.0 || c5 < 0.0 || c6 < 0.0)
            throw std::domain_error("PhiParams: c3..c6 must be >= 0");
    }
};

namespace detail {

// log of sum(exp(v)) over a vector of log-terms
inline double log_sum_exp(const std::vector<double>& v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    if (std::isinf(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

// Gauss-Laguerre estimate of ln integral after the substitution u = c1 y.
inline double phi_gl_log(double c1, double nu, double c3, double c4, double c5, double c6,
                         int order) {
    auto tab = laguerre_nodes_cached(order);
    std::vector<double> lg(tab->nodes.size());
    for (std::size_t i = 0; i < tab->nodes.size(); ++i) {
        double u = tab->nodes[i];
        double v = std::log(tab->weights[i]);
        if (nu != 0.0) v += nu * std::log(u);
        if (c4 != 0.0 && c3 != 0.0) v -= c4 * std::log1p(c3 * u / c1);
        if (c6 != 0.0 && c5 != 0.0) v -= c6 * std::log1p(c5 * u / c1);
        lg[i] = v;
    }
    return -(nu + 1.0) * std::log(c1) + log_sum_exp(lg);
}

// Adaptive fallback in v = ln y; returns ln integral.
inline double phi_adaptive_log(double c1, double nu, double c3, double c4, double c5, double c6,
                               double log_est) {
    const double u_hi = 760.0 + 12.0 * nu;
    const double v_hi = std::log(u_hi / c1);
    double v_lo = (std::log(1e-18) + log_est + std::log(nu + 1.0)) / (nu + 1.0);
    v_lo = std::max(v_lo, v_hi - 120.0);
    v_lo = std::min(v_lo, v_hi - 1.0);
    const double width = v_hi - v_lo;
    const double shift = log_est - std::log(std::max(1.0, width));
    auto g = [&](double v) {
        double e = -c1 * std::exp(v) + (nu + 1.0) * v;
        if (c4 != 0.0 && c3 != 0.0) e -= c4 * std::log1p(c3 * std::exp(v));
        if (c6 != 0.0 && c5 != 0.0) e -= c6 * std::log1p(c5 * std::exp(v));
        double d = e - shift;
        return d < -745.0 ? 0.0 : std::exp(d);
    };
    double scaled = adaptive_reference(g, v_lo, v_hi, 1e-11 * (width + 1.0));
    return shift + std::log(scaled);
}

// ln of the phi-type integral; nu may be any real >= 0.
inline double phi_core_log(double c1, double nu, double c3, double c4, double c5, double c6) {
    if ((c3 == 0.0 || c4 == 0.0) && (c5 == 0.0 || c6 == 0.0))
        return std::lgamma(nu + 1.0) - (nu + 1.0) * std::log(c1);
    double a = phi_gl_log(c1, nu, c3, c4, c5, c6, 64);
    double b = phi_gl_log(c1, nu, c3, c4, c5, c6, 96);
    bool shaky = std::abs(a - b) > 1e-10;
    // a ratio-scale singularity close to the origin defeats the Laguerre rule
    if (c4 != 0.0 && c3 > 50.0 * c1) shaky = true;
    if (c6 != 0.0 && c5 > 50.0 * c1) shaky = true;
    if (!shaky) return b;
    if (!std::isfinite(b)) return b;  // integral below representable range
    return phi_adaptive_log(c1, nu, c3, c4, c5, c6, b);
}

} // namespace detail

inline double laplace_pow_integral_log(const LaplacePowParams& params) {
    params.validate();
    return detail::phi_core_log(params.p, params.q, params.c, params.r, 0.0, 0.0);
}

/// int_0^infty e^{-p t} t^q (c t + 1)^{-r} dt
inline double laplace_pow_integral(const LaplacePowParams& params) {
    return std::exp(laplace_pow_integral_log(params));
}

inline double phi_integral_log(const PhiParams& params) {
    params.validate();
    return detail::phi_core_log(params.c1, static_cast<double>(params.c2), params.c3, params.c4,
                                params.c5, params.c6);
}

/// int_0^infty e^{-c1 y} y^{c2} (c3 y + 1)^{-c4} (c5 y + 1)^{-c6} dy
inline double phi_integral(const PhiParams& params) {
    return std::exp(phi_integral_log(params));
}

} // namespace rsmasec
