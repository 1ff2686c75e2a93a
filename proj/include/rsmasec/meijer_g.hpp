// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "rsmasec/quadrature.hpp"

namespace rsmasec {

namespace detail {

// Lanczos (g = 7, 9 terms) log-gamma for complex argument.
inline std::complex<double> log_gamma(std::complex<double> z) {
    static const double lanczos[9] = {
        0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};
    const double pi = 3.14159265358979323846;
    if (z.real() < 0.5) {
        // reflection; log(sin(pi z)) written to avoid overflow for large |Im z|.
        // Any 2*pi*i branch offset is harmless because callers only exponentiate.
        const std::complex<double> i_unit(0.0, 1.0);
        std::complex<double> log_sin;
        if (z.imag() >= 0.0) {
            log_sin = -i_unit * pi * z + std::log(std::exp(2.0 * i_unit * pi * z) - 1.0) -
                      std::log(2.0 * i_unit);
        } else {
            log_sin = i_unit * pi * z + std::log(1.0 - std::exp(-2.0 * i_unit * pi * z)) -
                      std::log(2.0 * i_unit);
        }
        return std::log(pi) - log_sin - log_gamma(1.0 - z);
    }
    std::complex<double> zz = z - 1.0;
    std::complex<double> x = lanczos[0];
    for (int i = 1; i < 9; ++i) x += lanczos[i] / (zz + static_cast<double>(i));
    std::complex<double> t = zz + 7.5;
    return 0.91893853320467274178 + (zz + 0.5) * std::log(t) - t + std::log(x);
}

} // namespace detail

/// Meijer G_{1,2}^{2,1}[z | a1; b1, b2], evaluated by numerical Mellin-Barnes
/// integration along a vertical contour Re(s) = c with
/// max(-b1, -b2) < c < 1 - a1, which separates the ascending gamma poles from
/// the descending ones for any pole multiplicity.
///
/// The integrand is Gamma(b1+s) Gamma(b2+s) Gamma(1-a1-s) z^{-s}; on the
/// contour the gamma product is z-independent, so it is tabulated once and
/// each evaluation reduces to a complex Horner sum in w = exp(-i h ln z).
class MeijerG2112 {
  public:
    MeijerG2112(double a1, double b1, double b2) : a1_(a1), b1_(b1), b2_(b2) {
        const double lower = std::max(-b1, -b2);
        const double upper = 1.0 - a1;
        if (!(upper - lower > 0.05))
            throw std::domain_error("meijer_g_2112: parameter pattern leaves no contour window");
        c_ = 0.5 * (lower + upper);
        d_ = 0.5 * (upper - lower);  // distance from contour to nearest pole
        lnz_cap_ = 45.0;
        h_ = step_for(lnz_cap_);
        build(h_, weights_);
    }

    double a1() const { return a1_; }
    double b1() const { return b1_; }
    double b2() const { return b2_; }

    double eval(double z) const {
        if (!(z > 0.0)) throw std::domain_error("meijer_g_2112: z must be > 0");
        const double lnz = std::log(z);
        if (std::abs(lnz) <= lnz_cap_) return sum_contour(weights_, h_, z, lnz);
        // rare: extreme argument needs a denser one-off contour
        std::vector<std::complex<double>> w;
        double h = step_for(std::abs(lnz) + 5.0);
        build(h, w);
        return sum_contour(w, h, z, lnz);
    }

  private:
    double step_for(double lnz_max) const {
        // trapezoid aliasing error ~ exp(-d (2 pi / h - |ln z|)); keep the
        // exponent above ~42 plus margin
        return 2.0 * 3.14159265358979323846 * d_ / (d_ * lnz_max + 42.0);
    }

    void build(double h, std::vector<std::complex<double>>& w) const {
        w.clear();
        w.reserve(512);
        double wmax = 0.0;
        int below = 0;
        for (int j = 0;; ++j) {
            std::complex<double> s(c_, j * h);
            std::complex<double> lg = detail::log_gamma(b1_ + s) + detail::log_gamma(b2_ + s) +
                                      detail::log_gamma(1.0 - a1_ - s);
            std::complex<double> val = (lg.real() < -745.0) ? std::complex<double>(0.0, 0.0)
                                                            : std::exp(lg);
            w.push_back(val);
            double m = std::abs(val);
            wmax = std::max(wmax, m);
            if (j * h > 6.0) {
                below = (m < wmax * 1e-20) ? below + 1 : 0;
                if (below >= 8) break;
            }
            if (j * h > 600.0)
                throw convergence_error("meijer_g_2112: contour tail does not decay", 0.0, m);
        }
    }

    double sum_contour(const std::vector<std::complex<double>>& w, double h, double z,
                       double lnz) const {
        const std::complex<double> omega(std::cos(h * lnz), -std::sin(h * lnz));
        std::complex<double> opow(1.0, 0.0);
        std::complex<double> acc = 0.5 * w[0];
        for (std::size_t j = 1; j < w.size(); ++j) {
            opow *= omega;
            acc += w[j] * opow;
        }
        const double pi = 3.14159265358979323846;
        return (h / pi) * acc.real() * std::pow(z, -c_);
    }

    double a1_, b1_, b2_;
    double c_, d_, h_, lnz_cap_;
    std::vector<std::complex<double>> weights_;
};

/// One-shot evaluation; prefer a cached MeijerG2112 when sweeping arguments.
inline double meijer_g_2112(double z, double a1, double b1, double b2) {
    return MeijerG2112(a1, b1, b2).eval(z);
}

} // namespace rsmasec
