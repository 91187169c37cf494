#include "chernshift/quadrature.hpp"

namespace chernshift {

using cplx = std::complex<double>;

std::pair<cplx, cplx> quadratic_roots(cplx qa, cplx qb, cplx qc) {
    if (qa == 0.0)
        throw std::invalid_argument("quadratic_roots needs a nonzero leading coefficient");
    cplx disc = std::sqrt(qb * qb - 4.0 * qa * qc);
    double sgn = (std::conj(qb) * disc).real() >= 0.0 ? 1.0 : -1.0;
    cplx q = -0.5 * (qb + sgn * disc);
    if (q == 0.0)
        return {0.0, 0.0};
    return {q / qa, qc / q};
}

namespace {

double distance_to_segment(cplx r, double a, double b) {
    double x = std::clamp(r.real(), a, b);
    return std::abs(r - cplx(x, 0.0));
}

struct Root {
    cplx r;
    bool on_path = false;
    bool subtract = false;
    cplx residue = 0.0;
};

} // namespace

cplx integrate_rational(const std::function<cplx(cplx)> &P, cplx qa, cplx qb, cplx qc,
                        std::vector<double> pts, const RationalOptions &opt) {
    std::sort(pts.begin(), pts.end());
    const double a = pts.front(), b = pts.back();
    if (!(b > a))
        throw std::invalid_argument("integrate_rational needs a nonempty interval");

    cplx lead;
    std::vector<Root> roots;
    if (qa != 0.0) {
        auto [r1, r2] = quadratic_roots(qa, qb, qc);
        roots = {Root{r1}, Root{r2}};
        lead = qa;
    } else if (qb != 0.0) {
        roots = {Root{-qc / qb}};
        lead = qb;
    } else {
        if (qc == 0.0)
            throw ResonanceError("rational integrand with identically vanishing denominator");
        auto res = integrate_adaptive<cplx>([&](double x) { return P(cplx(x, 0.0)) / qc; },
                                            pts, opt.adaptive);
        return res.value;
    }

    for (auto &rt : roots) {
        double re = rt.r.real();
        if (re > a && re < b && std::abs(rt.r.imag()) <= opt.causal_tol * std::abs(rt.r)) {
            rt.r = cplx(re, 0.0);
            rt.on_path = true;
        }
    }
    bool near_double = roots.size() == 2 &&
                       std::abs(roots[0].r - roots[1].r) <=
                           1e-8 * (std::abs(roots[0].r) + std::abs(roots[1].r));
    if (near_double && (roots[0].on_path || roots[1].on_path))
        throw ResonanceError("double pole of the reflection denominator on the integration path");

    for (std::size_t i = 0; i < roots.size(); ++i) {
        auto &rt = roots[i];
        cplx denom = lead;
        for (std::size_t j = 0; j < roots.size(); ++j)
            if (j != i)
                denom *= rt.r - roots[j].r;
        if (near_double)
            continue;
        rt.residue = P(rt.r) / denom;
        // Distant roots are left in the integrand: their residues carry the
        // numerator's growth off the path and would cancel catastrophically.
        rt.subtract = rt.residue != 0.0 &&
                      (rt.on_path || distance_to_segment(rt.r, a, b) <=
                                         std::min(b - a, 0.3 * std::abs(rt.r) + 1e-3));
        if (rt.subtract && !rt.on_path &&
            (rt.r == cplx(a, 0.0) || rt.r == cplx(b, 0.0)))
            throw ResonanceError("pole of the reflection denominator at an interval endpoint");
    }

    for (const auto &rt : roots) {
        double re = rt.r.real();
        if (re > a && re < b && (rt.on_path || std::abs(rt.r.imag()) < 0.05 * (b - a)))
            pts.push_back(re);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto remainder = [&](double x) {
        cplx z(x, 0.0);
        cplx q = lead;
        for (const auto &rt : roots)
            q *= z - rt.r;
        cplx v = P(z) / q;
        for (const auto &rt : roots)
            if (rt.subtract)
                v -= rt.residue / (z - rt.r);
        return v;
    };
    cplx total = integrate_adaptive<cplx>(remainder, pts, opt.adaptive).value;

    const cplx ipi(0.0, std::numbers::pi);
    for (const auto &rt : roots) {
        if (!rt.subtract)
            continue;
        if (rt.on_path) {
            double r = rt.r.real();
            total += rt.residue * (std::log((b - r) / (r - a)) + ipi);
        } else {
            total += rt.residue * (std::log(cplx(b, 0.0) - rt.r) - std::log(cplx(a, 0.0) - rt.r));
        }
    }
    return total;
}

} // namespace chernshift
