// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsmasec {

/// Thrown when an iterative scheme runs out of budget. Carries the best
/// estimate reached so callers can decide whether it is still usable.
class convergence_error : public std::runtime_error {
  public:
    convergence_error(const std::string& what, double best, double err_estimate)
        : std::runtime_error(what), best_estimate(best), error_estimate(err_estimate) {}
    double best_estimate;
    double error_estimate;
};

/// Per-evaluation summation orders. The names follow the series/quadrature
/// counts used by the closed-form secrecy expressions.
struct QuadratureSpec {
    int order_i = 50;  ///< Chebyshev nodes in the common-stream inner sum
    int order_n = 50;  ///< Chebyshev nodes in the truncated-interval transform
    int order_k = 50;  ///< Laguerre nodes, inner exponential integral
    int order_v = 50;  ///< Laguerre nodes, interference-gain integral
    int order_d = 50;  ///< Laguerre nodes, outer interference integral

    void validate() const {
        if (order_i < 1 || order_n < 1 || order_k < 1 || order_v < 1 || order_d < 1)
            throw std::invalid_argument("QuadratureSpec: all orders must be >= 1");
    }
    QuadratureSpec doubled() const {
        return {order_i * 2, order_n * 2, order_k * 2, order_v * 2, order_d * 2};
    }
};

struct NodeTable {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes b_i = (1 + cos((2i-1)pi/(2n)))/2, i = 1..n, all strictly inside (0,1).
/// With these nodes, int_0^1 g(b) db ~= (pi/n) * sum_i sqrt(b_i - b_i^2) g(b_i).
inline std::vector<double> chebyshev_b_nodes(int order) {
    if (order < 1) throw std::invalid_argument("chebyshev_b_nodes: order must be >= 1");
    std::vector<double> b(static_cast<std::size_t>(order));
    const double pi = 3.14159265358979323846;
    for (int i = 1; i <= order; ++i)
        b[static_cast<std::size_t>(i - 1)] = 0.5 * (1.0 + std::cos((2.0 * i - 1.0) * pi / (2.0 * order)));
    return b;
}

namespace detail {

// Laguerre polynomial value and value of the (n-1)-th at x, by upward recurrence.
inline void laguerre_eval(int n, long double x, long double& ln, long double& lnm1) {
    long double l0 = 1.0L, l1 = 1.0L - x;
    if (n == 0) { ln = l0; lnm1 = 0.0L; return; }
    for (int k = 1; k < n; ++k) {
        long double l2 = ((2.0L * k + 1.0L - x) * l1 - k * l0) / (k + 1.0L);
        l0 = l1;
        l1 = l2;
    }
    ln = l1;
    lnm1 = l0;
}

} // namespace detail

/// Gauss-Laguerre rule for int_0^infty e^{-x} f(x) dx ~= sum w_i f(x_i).
/// Nodes are the roots of L_n, found by Newton iteration from the classical
/// initial guesses; weights via w_i = x_i / ((n+1) L_{n+1}(x_i))^2.
inline NodeTable laguerre_nodes(int order) {
    if (order < 1) throw std::invalid_argument("laguerre_nodes: order must be >= 1");
    if (order > 512) throw std::invalid_argument("laguerre_nodes: order > 512 unsupported");
    const int n = order;
    NodeTable t;
    t.nodes.resize(static_cast<std::size_t>(n));
    t.weights.resize(static_cast<std::size_t>(n));
    long double z = 0.0L;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            z = 3.0L / (1.0L + 2.4L * n);
        } else if (i == 1) {
            z += 15.0L / (1.0L + 2.5L * n);
        } else {
            long double ai = i - 1;
            z += ((1.0L + 2.55L * ai) / (1.9L * ai)) *
                 (z - static_cast<long double>(t.nodes[static_cast<std::size_t>(i - 2)]));
        }
        bool ok = false;
        for (int it = 0; it < 100; ++it) {
            long double ln, lnm1;
            detail::laguerre_eval(n, z, ln, lnm1);
            long double deriv = n * (ln - lnm1) / z;  // L_n'(x) = n (L_n - L_{n-1}) / x
            long double dz = ln / deriv;
            z -= dz;
            if (std::abs(dz) < 1e-17L * std::abs(z)) { ok = true; break; }
        }
        if (!ok) throw convergence_error("laguerre_nodes: Newton iteration did not converge",
                                         static_cast<double>(z), 1.0);
        long double lnp1, lnn;
        detail::laguerre_eval(n + 1, z, lnp1, lnn);
        long double w = z / ((n + 1.0L) * (n + 1.0L) * lnp1 * lnp1);
        t.nodes[static_cast<std::size_t>(i)] = static_cast<double>(z);
        t.weights[static_cast<std::size_t>(i)] = static_cast<double>(w);
    }
    return t;
}

/// Process-wide cache; tables are immutable once built, safe for concurrent readers.
inline std::shared_ptr<const NodeTable> laguerre_nodes_cached(int order) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const NodeTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    auto t = std::make_shared<const NodeTable>(laguerre_nodes(order));
    cache.emplace(order, t);
    return t;
}

namespace detail {

// Gauss7-Kronrod15 abscissae/weights on [-1,1].
template <typename Real>
struct GK15 {
    static constexpr Real xgk[8] = {
        Real(0.991455371120812639206854697526329L), Real(0.949107912342758524526189684047851L),
        Real(0.864864423359769072789712788640926L), Real(0.741531185599394439863864773280788L),
        Real(0.586087235467691130294144838258730L), Real(0.405845151377397166906606412076961L),
        Real(0.207784955007898467600689403773245L), Real(0.0L)};
    static constexpr Real wgk[8] = {
        Real(0.022935322010529224963732008058970L), Real(0.063092092629978553290700663189204L),
        Real(0.104790010322250183839876322541518L), Real(0.140653259715525918745189590510238L),
        Real(0.169004726639267902826583426598550L), Real(0.190350578064785409913256402421014L),
        Real(0.204432940075298892414161999234649L), Real(0.209482141084727828012999174891714L)};
    static constexpr Real wg[4] = {
        Real(0.129484966168869693270611432679082L), Real(0.279705391489276667901467771423780L),
        Real(0.381830050505118944950369775488975L), Real(0.417959183673469387755102040816327L)};
};

template <typename Real, typename F>
void gk15(F&& f, Real a, Real b, Real& integral, Real& err) {
    using T = GK15<Real>;
    const Real c = Real(0.5) * (a + b);
    const Real h = Real(0.5) * (b - a);
    Real fc = f(c);
    Real res_k = T::wgk[7] * fc;
    Real res_g = T::wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        Real x = h * T::xgk[j];
        Real f1 = f(c - x), f2 = f(c + x);
        res_k += T::wgk[j] * (f1 + f2);
        if (j % 2 == 1) res_g += T::wg[j / 2] * (f1 + f2);
    }
    integral = res_k * h;
    err = std::abs((res_k - res_g) * h);
}

struct Interval {
    double a, b, integral, err;
    bool operator<(const Interval& o) const { return err < o.err; }
};

template <typename F>
double adaptive_core(F&& f, double lo, double hi, double tol, std::size_t max_intervals) {
    std::priority_queue<Interval> q;
    Interval first{};
    first.a = lo;
    first.b = hi;
    gk15<double>(f, lo, hi, first.integral, first.err);
    q.push(first);
    double total = first.integral, total_err = first.err;
    while (total_err > tol && total_err > 1e-15 * std::abs(total)) {
        if (q.size() >= max_intervals)
            throw convergence_error("adaptive_reference: interval budget exhausted", total, total_err);
        Interval top = q.top();
        q.pop();
        total -= top.integral;
        total_err -= top.err;
        double mid = 0.5 * (top.a + top.b);
        if (mid <= top.a || mid >= top.b) {  // interval at rounding limit
            total += top.integral;
            total_err += top.err * 1e-3;
            continue;
        }
        Interval l{}, r{};
        l.a = top.a; l.b = mid;
        r.a = mid;   r.b = top.b;
        gk15<double>(f, l.a, l.b, l.integral, l.err);
        gk15<double>(f, r.a, r.b, r.integral, r.err);
        total += l.integral + r.integral;
        total_err += l.err + r.err;
        q.push(l);
        q.push(r);
    }
    return total;
}

} // namespace detail

/// Adaptive Gauss-Kronrod reference integrator. `hi` may be +infinity; the
/// semi-infinite case is mapped through x = lo + t/(1-t) on t in [0,1).
/// The estimated error is driven below `tol` (absolute, with a relative
/// floor near machine precision); running out of the subdivision budget
/// raises convergence_error carrying the best estimate.
template <typename F>
double adaptive_reference(F&& f, double lo, double hi, double tol, std::size_t max_intervals = 8000) {
    if (!(tol > 0.0)) throw std::invalid_argument("adaptive_reference: tol must be > 0");
    if (std::isinf(hi)) {
        auto g = [&f, lo](double t) {
            double om = 1.0 - t;
            double x = lo + t / om;
            return f(x) / (om * om);
        };
        return detail::adaptive_core(g, 0.0, 1.0, tol, max_intervals);
    }
    if (!(lo < hi)) throw std::invalid_argument("adaptive_reference: need lo < hi");
    return detail::adaptive_core(f, lo, hi, tol, max_intervals);
}

} // namespace rsmasec
