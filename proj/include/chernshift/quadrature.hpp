#pragma once

#include "chernshift/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <cstdio>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <type_traits>
#include <vector>

namespace chernshift {

struct AdaptiveOptions {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    int max_intervals = 4000;
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    int intervals = 0;
};

namespace detail {

template <class T>
struct Panel {
    double a, b;
    T value;
    double error;
    bool roundoff; // error estimate sits at the rounding floor
    bool operator<(const Panel &o) const { return error < o.error; }
};

// Gauss-Kronrod 10/21 on [a, b]. The error estimate is floored at the
// rounding level of the integral of |f|.
template <class T, class F>
Panel<T> gk21(F &f, double a, double b) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    using G = boost::math::quadrature::gauss<double, 10>;
    const auto &x = GK::abscissa();
    const auto &w = GK::weights();
    const auto &gw = G::weights();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T fc = f(c);
    T kron = fc * w[0];
    T gauss{};
    double abs_sum = std::abs(fc) * w[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        T f1 = f(c - h * x[i]);
        T f2 = f(c + h * x[i]);
        kron += (f1 + f2) * w[i];
        abs_sum += (std::abs(f1) + std::abs(f2)) * w[i];
        if (i % 2 == 1)
            gauss += (f1 + f2) * gw[i / 2];
    }
    double err = std::abs(h) * std::abs(kron - gauss);
    double floor = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(h) * abs_sum;
    return {a, b, kron * h, std::max(err, floor), err <= floor};
}

} // namespace detail

// Globally adaptive Gauss-Kronrod over [pts.front(), pts.back()] with the
// interior points as initial breakpoints. Throws ToleranceError when the
// interval budget runs out before the error target is met.
template <class T, class F>
QuadResult<T> integrate_adaptive(F &&f, std::vector<double> pts, const AdaptiveOptions &opt) {
    if (pts.size() < 2)
        throw std::invalid_argument("integrate_adaptive needs at least two points");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::priority_queue<detail::Panel<T>> heap;
    std::vector<detail::Panel<T>> done;
    T total{};
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        auto p = detail::gk21<T>(f, pts[i], pts[i + 1]);
        total += p.value;
        error += p.error;
        heap.push(p);
    }
    int count = static_cast<int>(heap.size());
    const double span = pts.back() - pts.front();
    for (;;) {
        double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (error <= target || heap.empty())
            break;
        if (count >= opt.max_intervals) {
            char buf[200];
            std::snprintf(buf, sizeof buf,
                          "adaptive quadrature on [%.6g, %.6g] stopped at %d intervals, "
                          "error %.3g above target %.3g",
                          pts.front(), pts.back(), count, error, target);
            throw ToleranceError(buf);
        }
        auto worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (worst.roundoff || worst.b - worst.a < 1e-15 * span || mid <= worst.a ||
            mid >= worst.b) {
            done.push_back(worst);
            continue;
        }
        auto left = detail::gk21<T>(f, worst.a, mid);
        auto right = detail::gk21<T>(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // Re-sum in interval order so the result does not depend on the
    // accumulated update history.
    std::vector<detail::Panel<T>> all = std::move(done);
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const auto &l, const auto &r) { return l.a < r.a; });
    QuadResult<T> res;
    for (const auto &p : all) {
        res.value += p.value;
        res.error += p.error;
    }
    res.intervals = count;
    return res;
}

template <class T, class F>
QuadResult<T> integrate_adaptive(F &&f, double a, double b, const AdaptiveOptions &opt) {
    return integrate_adaptive<T>(std::forward<F>(f), std::vector<double>{a, b}, opt);
}

// Integral over [a, b] of P(x) / Q(x) with Q(x) = qa x^2 + qb x + qc.
// Roots of Q near the path are subtracted and integrated in closed form.
// A root within causal_tol (relative) of the open real segment is placed
// at Re(r) + i0, the outgoing-wave limit.
struct RationalOptions {
    AdaptiveOptions adaptive;
    double causal_tol = 1e-4;
};

std::complex<double> integrate_rational(
    const std::function<std::complex<double>(std::complex<double>)> &P,
    std::complex<double> qa, std::complex<double> qb, std::complex<double> qc,
    std::vector<double> pts, const RationalOptions &opt);

// Stable roots of qa x^2 + qb x + qc (qa != 0).
std::pair<std::complex<double>, std::complex<double>>
quadratic_roots(std::complex<double> qa, std::complex<double> qb, std::complex<double> qc);

} // namespace chernshift
