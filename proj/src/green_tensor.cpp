#include "chernshift/green_tensor.hpp"

#include "chernshift/fresnel.hpp"
#include "chernshift/quadrature.hpp"

#include <cmath>
#include <limits>

namespace chernshift {

using cplx = std::complex<double>;

void OscQuadConfig::validate() const {
    if (!(panel_width > 0.0) || !(rel_tol > 0.0) || !(evanescent_cutoff > 0.0) ||
        max_subdivisions <= 0 || abs_tol < 0.0 || causal_tol < 0.0)
        throw std::invalid_argument("oscillatory quadrature settings must be positive");
}

namespace {

const cplx I(0.0, 1.0);

RationalOptions rational_options(const OscQuadConfig &cfg) {
    RationalOptions o;
    o.adaptive.rel_tol = cfg.rel_tol;
    o.adaptive.abs_tol = cfg.abs_tol;
    o.adaptive.max_intervals = cfg.max_subdivisions;
    o.causal_tol = cfg.causal_tol;
    return o;
}

// Breakpoints for kz in [0, w]: panels of phase width <= panel_width.
std::vector<double> propagating_points(double w, double eta, double panel) {
    int n = std::max(1, static_cast<int>(std::ceil(w * eta / panel)));
    std::vector<double> pts(n + 1);
    for (int i = 0; i <= n; ++i)
        pts[i] = w * i / n;
    return pts;
}

// Breakpoints for l in [l0, l0 + cutoff/eta], denser where e^{-l eta} varies.
std::vector<double> evanescent_points(double l0, double eta, double cutoff) {
    std::vector<double> pts{l0};
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0})
        if (t < cutoff)
            pts.push_back(l0 + t / eta);
    pts.push_back(l0 + cutoff / eta);
    return pts;
}

} // namespace

GreenComponents green_reflected(double eta, const SheetConductivity &sigma,
                                const OscQuadConfig &cfg, double omega_ratio) {
    if (!(eta > 0.0))
        throw std::invalid_argument("eta must be positive");
    if (!(omega_ratio > 0.0))
        throw std::invalid_argument("omega/omega10 must be positive");
    cfg.validate();
    const cplx s = sigma.sxx, h = sigma.sxy, S = s * s + h * h;
    const double w = omega_ratio;
    GreenComponents out;
    out.eta = eta;
    if (s == 0.0 && h == 0.0) {
        out.parts = GreenParts{};
        return out;
    }
    const auto opt = rational_options(cfg);

    // Propagating sector, kz = tau in [0, w]. Integrands are
    // numerator / (kz * Delta), kz * Delta = (s/w) tau^2 + (1+S) tau + w s.
    const auto ppts = propagating_points(w, eta, cfg.panel_width);
    auto ph = [eta](cplx x) { return std::exp(I * x * eta); };
    auto g1 = integrate_rational(
        [&](cplx x) {
            return 0.5 * I * (-w * w * (x * S + w * s) - x * x * (x * S + x * x * s / w)) * ph(x);
        },
        s / w, 1.0 + S, w * s, ppts, opt);
    auto g2 = integrate_rational([&](cplx x) { return -I * w * x * x * h * ph(x); }, s / w,
                                 1.0 + S, w * s, ppts, opt);
    auto g3 = integrate_rational(
        [&](cplx x) { return I * (w * w - x * x) * (x * S + x * x * s / w) * ph(x); }, s / w,
        1.0 + S, w * s, ppts, opt);

    // Evanescent sector, kz = i l, l in [0, cutoff/eta]. Denominator
    // kz * Delta / i = (i s/w) l^2 + (1+S) l - i s w.
    const auto epts = evanescent_points(0.0, eta, cfg.evanescent_cutoff);
    auto dk = [eta](cplx l) { return std::exp(-l * eta); };
    const cplx qa = I * s / w, qb = 1.0 + S, qc = -I * s * w;
    auto h1 = integrate_rational(
        [&](cplx l) {
            return 0.5 * (l * l * l * S - w * w * l * S + I * (w * w * w + l * l * l * l / w) * s) *
                   dk(l);
        },
        qa, qb, qc, epts, opt);
    auto h2 = integrate_rational([&](cplx l) { return -I * w * l * l * h * dk(l); }, qa, qb, qc,
                                 epts, opt);
    auto h3 = integrate_rational(
        [&](cplx l) { return (w * w + l * l) * (l * S + I * l * l * s / w) * dk(l); }, qa, qb, qc,
        epts, opt);

    out.gxx = g1 + h1;
    out.gxy = g2 + h2;
    out.gzz = g3 + h3;
    out.parts = GreenParts{g1, h1, g2, h2, g3, h3};
    return out;
}

GreenComponents green_imag_axis(double eta, double xi_over_omega10,
                                const SheetConductivity &sigma_at_ixi,
                                const OscQuadConfig &cfg) {
    if (!(eta > 0.0))
        throw std::invalid_argument("eta must be positive");
    if (!(xi_over_omega10 > 0.0))
        throw std::invalid_argument("xi/omega10 must be positive");
    cfg.validate();
    const double x = xi_over_omega10;
    const double s = sigma_at_ixi.sxx.real(), h = sigma_at_ixi.sxy.real();
    const double S = s * s + h * h;
    GreenComponents out;
    out.eta = eta;
    if (s == 0.0 && h == 0.0)
        return out;

    // kz = i l with l >= x; kz Delta / i = (s/x) l^2 + (1+S) l + s x > 0.
    AdaptiveOptions opt;
    opt.rel_tol = cfg.rel_tol;
    opt.abs_tol = cfg.abs_tol;
    opt.max_intervals = cfg.max_subdivisions;
    const auto pts = evanescent_points(x, eta, cfg.evanescent_cutoff);
    auto q = [&](double l) { return (s / x) * l * l + (1.0 + S) * l + s * x; };
    auto rxx = integrate_adaptive<double>(
        [&](double l) {
            return 0.5 * (x * x * l * S + l * l * l * S + (x * x * x + l * l * l * l / x) * s) /
                   q(l) * std::exp(-l * eta);
        },
        pts, opt);
    auto rxy = integrate_adaptive<double>(
        [&](double l) { return x * l * l * h / q(l) * std::exp(-l * eta); }, pts, opt);
    auto rzz = integrate_adaptive<double>(
        [&](double l) {
            return (l * l - x * x) * (l * S + l * l * s / x) / q(l) * std::exp(-l * eta);
        },
        pts, opt);
    out.gxx = rxx.value;
    out.gxy = rxy.value;
    out.gzz = rzz.value;
    return out;
}

std::vector<ProfilePoint> integrand_profile(const SheetConductivity &sigma, double eta,
                                            const std::vector<double> &k_par_grid) {
    if (!(eta > 0.0))
        throw std::invalid_argument("eta must be positive");
    for (std::size_t i = 1; i < k_par_grid.size(); ++i)
        if (!(k_par_grid[i] > k_par_grid[i - 1]))
            throw std::invalid_argument("k grid must be strictly increasing");
    std::vector<ProfilePoint> out;
    out.reserve(k_par_grid.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double k : k_par_grid) {
        if (k < 0.0)
            throw std::invalid_argument("k grid must be non-negative");
        ProfilePoint p{k, 0.0, 0.0, 0.0};
        if (sigma.sxx == 0.0 && sigma.sxy == 0.0) {
            out.push_back(p);
            continue;
        }
        ReflectionSet r = reflection_set(k, 1.0, sigma);
        cplx kz = r.kz_norm;
        if (kz == 0.0) {
            p.g1 = cplx(nan, nan);
            p.g2 = 0.5 * I * k * (r.r_ps + r.r_sp);
            p.combination = nan;
            out.push_back(p);
            continue;
        }
        cplx e = std::exp(I * kz * eta);
        p.g1 = 0.5 * I * (k / kz) * (r.r_ss - kz * kz * r.r_pp) * e;
        p.g2 = 0.5 * I * k * (r.r_ps + r.r_sp) * e;
        p.combination = p.g1.real() + p.g2.imag();
        out.push_back(p);
    }
    return out;
}

} // namespace chernshift
