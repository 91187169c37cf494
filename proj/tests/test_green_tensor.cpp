#include <doctest.h>

#include "chernshift/constants.hpp"
#include "chernshift/green_tensor.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <random>

using namespace chernshift;
using cplx = std::complex<double>;

namespace {

const cplx I(0.0, 1.0);

SheetConductivity sheet(cplx sxx, cplx sxy) {
    SheetConductivity s;
    s.sxx = sxx;
    s.sxy = sxy;
    return s;
}

ModelParams model(double u) {
    ModelParams p;
    p.u = u;
    return p;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

template <class F> cplx tanh_sinh_complex(F f, double a, double b) {
    boost::math::quadrature::tanh_sinh<double> q;
    double re = q.integrate([&](double k) { return f(k).real(); }, a, b, 1e-12);
    double im = q.integrate([&](double k) { return f(k).imag(); }, a, b, 1e-12);
    return {re, im};
}

// Integration over k_par with k = w sin(theta) below the light line and
// k = w cosh(tau) above it, which removes the 1/kz endpoint singularity.
GreenComponents direct(double eta, const SheetConductivity &sig, double w) {
    // weight (k/kz) dk is w sin(theta) dtheta and -i w cosh(tau) dtau respectively
    auto part = [&](int c, double k, cplx kz, cplx weight) -> cplx {
        SheetConductivity s = sig;
        const cplx sx = s.sxx, S = sx * sx + s.sxy * s.sxy;
        const cplx dk = kz * (1.0 + S) + (kz * kz / w + w) * sx;
        const cplx rss = -(kz * S + w * sx) / dk, rpp = (kz * S + kz * kz * sx / w) / dk;
        const cplx rps = -kz * s.sxy / dk;
        const cplx e = std::exp(I * kz * eta);
        switch (c) {
        case 0: return 0.5 * I * weight * (w * w * rss - kz * kz * rpp) * e;
        case 1: return I * w * weight * kz * rps * e;
        default: return I * weight * k * k * rpp * e;
        }
    };
    const double tmax = std::acosh(std::sqrt(1.0 + std::pow(70.0 / (w * eta), 2)));
    GreenComponents g;
    cplx *out[] = {&g.gxx, &g.gxy, &g.gzz};
    for (int c = 0; c < 3; ++c) {
        auto prop = [&](double th) {
            return part(c, w * std::sin(th), w * std::cos(th), w * std::sin(th));
        };
        auto evan = [&](double t) {
            return part(c, w * std::cosh(t), I * w * std::sinh(t), -I * w * std::cosh(t));
        };
        int n = std::max(1, static_cast<int>(std::ceil(w * eta)));
        cplx sum = 0.0;
        for (int i = 0; i < n; ++i)
            sum += tanh_sinh_complex(prop, 0.5 * kPi * i / n, 0.5 * kPi * (i + 1) / n);
        const double cuts[] = {0.0, 0.5 * tmax / 8, tmax / 4, tmax / 2, tmax};
        for (int i = 0; i < 4; ++i)
            sum += tanh_sinh_complex(evan, cuts[i], cuts[i + 1]);
        *out[c] = sum;
    }
    return g;
}

} // namespace

TEST_CASE("no sheet gives no reflected field") {
    OscQuadConfig cfg;
    for (double eta : {0.5, 3.0}) {
        auto g = green_reflected(eta, sheet(0.0, 0.0), cfg);
        CHECK(g.gxx == cplx(0.0));
        CHECK(g.gxy == cplx(0.0));
        CHECK(g.gzz == cplx(0.0));
        auto gi = green_imag_axis(eta, 0.7, sheet(0.0, 0.0), cfg);
        CHECK(gi.gxx == cplx(0.0));
        CHECK(gi.gzz == cplx(0.0));
    }
}

TEST_CASE("nondispersive Hall sheet closed forms") {
    OscQuadConfig cfg;
    for (int c : {1, -1}) {
        const double h = c * kFineStructure, rpp = h * h / (1.0 + h * h), rps = h / (1.0 + h * h);
        for (double eta : {0.1, 0.5, 2.0, 10.0, 30.0}) {
            auto g = green_reflected(eta, nondispersive_conductivity(c), cfg);
            const double cs = std::cos(eta), sn = std::sin(eta);
            double zz = 2.0 * rpp * (cs + eta * sn) / std::pow(eta, 3);
            double xx = -rpp * ((eta * eta - 1.0) * cs - eta * sn) / std::pow(eta, 3);
            double xy = -rps * (cs + eta * sn) / (eta * eta);
            CHECK(g.gzz.real() == doctest::Approx(zz).epsilon(1e-8));
            CHECK(g.gxx.real() == doctest::Approx(xx).epsilon(1e-8));
            CHECK(g.gxy.imag() == doctest::Approx(xy).epsilon(1e-8));
        }
    }
}

TEST_CASE("components are the sum of their parts") {
    OscQuadConfig cfg;
    auto sig = conductivity(1.9, model(-1.0), QuadratureConfig{});
    for (double eta : {0.3, 1.7, 8.0}) {
        auto g = green_reflected(eta, sig, cfg);
        REQUIRE(g.parts.has_value());
        const auto &p = *g.parts;
        CHECK(std::abs(g.gxx - (p.g1 + p.h1)) < 1e-12);
        CHECK(std::abs(g.gxy - (p.g2 + p.h2)) < 1e-12);
        CHECK(std::abs(g.gzz - (p.g3 + p.h3)) < 1e-12);
        CHECK(g.eta == eta);
    }
}

TEST_CASE("imaginary-axis tensor of the Hall sheet") {
    // 10^6-point trapezoid over k_par at xi = omega10, eta = 1
    OscQuadConfig cfg;
    auto g = green_imag_axis(1.0, 1.0, nondispersive_conductivity(1), cfg);
    CHECK(g.gxx.real() == doctest::Approx(5.8767106189080934e-05).epsilon(1e-8));
    CHECK(g.gxy.real() == doctest::Approx(0.00536880607277492).epsilon(1e-8));
    CHECK(g.gzz.real() == doctest::Approx(7.835614159972166e-05).epsilon(1e-8));
    CHECK(std::abs(g.gxx.imag()) < 1e-12);
    CHECK(std::abs(g.gxy.imag()) < 1e-12);
    CHECK(std::abs(g.gzz.imag()) < 1e-12);
}

TEST_CASE("imaginary-axis tensor is real for the lattice model") {
    OscQuadConfig cfg;
    QuadratureConfig q;
    for (double x : {0.1, 1.0, 4.0}) {
        auto sig = conductivity_imag_axis(1.9 * x, model(-1.0), q);
        for (double eta : {0.2, 2.0, 20.0}) {
            auto g = green_imag_axis(eta, x, sig, cfg);
            CHECK(std::abs(g.gxx.imag()) < 1e-12);
            CHECK(std::abs(g.gxy.imag()) < 1e-12);
            CHECK(std::abs(g.gzz.imag()) < 1e-12);
        }
    }
    CHECK_THROWS_AS(green_imag_axis(1.0, 0.0, sheet(0.0, 0.0), cfg), std::invalid_argument);
}

TEST_CASE("decomposition matches direct k integration") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    OscQuadConfig cfg;
    for (int i = 0; i < 20; ++i) {
        double eta = 0.3 + 9.7 * u(rng);
        SheetConductivity sig = sheet(cplx(0.05 + 0.45 * u(rng), u(rng) - 0.5),
                                      cplx(u(rng) - 0.5, 0.2 * (u(rng) - 0.5)));
        double w = i < 15 ? 1.0 : 0.6 + u(rng);
        auto g = green_reflected(eta, sig, cfg, w);
        auto d = direct(eta, sig, w);
        INFO("case ", i, " eta ", eta, " w ", w);
        CHECK(rel(g.gxx, d.gxx) < 1e-7);
        CHECK(rel(g.gxy, d.gxy) < 1e-7);
        CHECK(rel(g.gzz, d.gzz) < 1e-7);
    }
}

TEST_CASE("refining the quadrature leaves the result in place") {
    auto sig = conductivity(1.9, model(-1.0), QuadratureConfig{});
    OscQuadConfig a, b;
    b.panel_width = a.panel_width / 2.0;
    b.rel_tol = a.rel_tol / 2.0;
    for (double eta : {0.5, 3.0, 12.0}) {
        auto ga = green_reflected(eta, sig, a), gb = green_reflected(eta, sig, b);
        CHECK(rel(ga.gxx, gb.gxx) <= 10.0 * a.rel_tol);
        CHECK(rel(ga.gxy, gb.gxy) <= 10.0 * a.rel_tol);
        CHECK(rel(ga.gzz, gb.gzz) <= 10.0 * a.rel_tol);
    }
}

TEST_CASE("default frequency ratio is resonance") {
    auto sig = conductivity(3.0, model(1.0), QuadratureConfig{});
    OscQuadConfig cfg;
    auto a = green_reflected(2.0, sig, cfg), b = green_reflected(2.0, sig, cfg, 1.0);
    CHECK(a.gxx == b.gxx);
    CHECK(a.gzz == b.gzz);
    CHECK_THROWS_AS(green_reflected(0.0, sig, cfg), std::invalid_argument);
    OscQuadConfig bad;
    bad.panel_width = 0.0;
    CHECK_THROWS_AS(green_reflected(1.0, sig, bad), std::invalid_argument);
}

TEST_CASE("integrand profile") {
    std::vector<double> grid;
    for (int i = 0; i < 300; ++i)
        grid.push_back((i + 0.5) * 0.01);

    auto zero = integrand_profile(sheet(0.0, 0.0), 1.7, grid);
    for (const auto &p : zero)
        CHECK(p.combination == 0.0);

    auto sig = conductivity(1.9, model(-1.0), QuadratureConfig{});
    auto nd = nondispersive_conductivity(-1);
    auto a = integrand_profile(sig, 1.7, grid), b = integrand_profile(nd, 1.7, grid);
    int larger = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (std::abs(a[i].combination) > std::abs(b[i].combination))
            ++larger;
    CHECK(larger > static_cast<int>(grid.size()) / 2);

    std::vector<double> fine;
    for (int i = 0; i < 400; ++i)
        fine.push_back(0.5 + (i + 0.5) * 0.0025);
    double peak = 0.0;
    for (const auto &p : integrand_profile(sig, 5.0, fine))
        peak = std::max(peak, std::abs(p.combination));
    auto far = integrand_profile(sig, 5.0, {10.0});
    CHECK(std::abs(far[0].combination) < std::exp(-40.0) * peak);

    auto ll = integrand_profile(sig, 1.7, {0.5, 1.0, 1.5});
    CHECK(std::isnan(ll[1].combination));
    CHECK(std::isfinite(ll[0].combination));
    CHECK_THROWS_AS(integrand_profile(sig, 1.7, {1.0, 0.5}), std::invalid_argument);
}
