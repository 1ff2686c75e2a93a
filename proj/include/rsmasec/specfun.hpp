// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rsmasec/quadrature.hpp"

namespace rsmasec {

inline double ln_gamma(double a) { return std::lgamma(a); }
inline double ln_factorial(int n) {
    if (n < 0) throw std::invalid_argument("ln_factorial: negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}
inline double ln_binomial(int n, int k) {
    return ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k);
}

namespace detail {

// Regularized lower incomplete gamma P(a,x), series branch (x < a+1).
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-17)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw convergence_error("gamma_p: series did not converge", sum, std::abs(del));
}

// Regularized upper incomplete gamma Q(a,x), continued fraction (x >= a+1),
// modified Lentz.
inline double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-17)
            return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
    throw convergence_error("gamma_q: continued fraction did not converge", h, 1.0);
}

} // namespace detail

/// Regularized lower incomplete gamma P(a, x).
inline double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_p: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    return (x < a + 1.0) ? detail::gamma_p_series(a, x) : 1.0 - detail::gamma_q_cf(a, x);
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
inline double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    return (x < a + 1.0) ? 1.0 - detail::gamma_p_series(a, x) : detail::gamma_q_cf(a, x);
}

/// Upper incomplete gamma Gamma(a, x) = int_x^infty t^{a-1} e^{-t} dt.
inline double gamma_upper(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_upper: need a > 0, x >= 0");
    if (x == 0.0) return std::tgamma(a);
    if (x < a + 1.0) return (1.0 - detail::gamma_p_series(a, x)) * std::tgamma(a);
    // keep the CF's own exponent folded in to avoid overflow of tgamma * Q
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-17)
            return std::exp(-x + a * std::log(x)) * h;
    }
    throw convergence_error("gamma_upper: continued fraction did not converge", h, 1.0);
}

/// ln Gamma(a, x); usable where Gamma(a, x) itself would underflow.
inline double ln_gamma_upper(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::domain_error("ln_gamma_upper: need a > 0, x >= 0");
    if (x == 0.0) return std::lgamma(a);
    if (x < a + 1.0) {
        double q = 1.0 - detail::gamma_p_series(a, x);
        return std::log(q) + std::lgamma(a);
    }
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-17) return -x + a * std::log(x) + std::log(h);
    }
    throw convergence_error("ln_gamma_upper: continued fraction did not converge", h, 1.0);
}

/// Gain law of a squared sub-channel norm: unit-scale gamma with integer
/// shape kappa (the number of resolvable paths feeding the norm).
inline double gain_pdf(int kappa, double x) {
    if (kappa < 1) throw std::domain_error("gain_pdf: kappa must be >= 1");
    if (x < 0.0) throw std::domain_error("gain_pdf: x must be >= 0");
    if (x == 0.0) return kappa == 1 ? 1.0 : 0.0;
    return std::exp(-x + (kappa - 1) * std::log(x) - ln_factorial(kappa - 1));
}

inline double gain_cdf(int kappa, double x) {
    if (kappa < 1) throw std::domain_error("gain_cdf: kappa must be >= 1");
    if (x < 0.0) throw std::domain_error("gain_cdf: x must be >= 0");
    return gamma_p(static_cast<double>(kappa), x);
}

/// Complementary gain CDF, exp(-x) * sum_{t<kappa} x^t/t!.
inline double gain_ccdf(int kappa, double x) {
    if (kappa < 1) throw std::domain_error("gain_ccdf: kappa must be >= 1");
    if (x < 0.0) throw std::domain_error("gain_ccdf: x must be >= 0");
    return gamma_q(static_cast<double>(kappa), x);
}

/// Accumulates sum_i s_i * exp(g_i) with s_i in {-1,+1}. Terms are summed in
/// descending magnitude with compensation, which keeps alternating series
/// as accurate as the data allows.
class SignedLogSum {
  public:
    void add(double log_mag, int sign) {
        if (std::isinf(log_mag) && log_mag < 0.0) return;  // exact zero term
        terms_.emplace_back(log_mag, sign);
    }
    /// Add a term given as a product of (log magnitude, sign) factors.
    void add(std::initializer_list<std::pair<double, int>> factors) {
        double lg = 0.0;
        int s = 1;
        for (const auto& f : factors) {
            lg += f.first;
            s *= f.second;
        }
        add(lg, s);
    }
    bool empty() const { return terms_.empty(); }

    double value() const {
        if (terms_.empty()) return 0.0;
        std::vector<std::pair<double, int>> t(terms_);
        std::sort(t.begin(), t.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        const double lgmax = t.front().first;
        if (std::isinf(lgmax)) return t.front().second > 0
                                          ? std::numeric_limits<double>::infinity()
                                          : -std::numeric_limits<double>::infinity();
        double sum = 0.0, comp = 0.0;  // Kahan
        for (const auto& e : t) {
            double v = e.second * std::exp(e.first - lgmax);
            double y = v - comp;
            double s2 = sum + y;
            comp = (s2 - sum) - y;
            sum = s2;
        }
        return sum * std::exp(lgmax);
    }

  private:
    std::vector<std::pair<double, int>> terms_;
};

} // namespace rsmasec
