#include <doctest.h>

#include "chernshift/asymptotic_oracles.hpp"
#include "chernshift/constants.hpp"

#include <cmath>

using namespace chernshift;
using cplx = std::complex<double>;

namespace {

ClosedForm form(PolarizationKind k, ClosedFormRegime r, int chern = 1) {
    ClosedForm cf;
    cf.polarization = k;
    cf.regime = r;
    cf.chern = chern;
    return cf;
}

const PolarizationKind kAll[] = {PolarizationKind::perpendicular, PolarizationKind::parallel_x,
                                 PolarizationKind::circular_right,
                                 PolarizationKind::circular_left};

} // namespace

TEST_CASE("dispersive asymptotic coefficients") {
    auto near = form(PolarizationKind::perpendicular, ClosedFormRegime::dispersive_near);
    CHECK(eval_closed_form(near, 0.1) == doctest::Approx(-1500.0).epsilon(1e-13));
    near.polarization = PolarizationKind::circular_left;
    CHECK(eval_closed_form(near, 0.1) == doctest::Approx(-750.0).epsilon(1e-13));
    auto far = form(PolarizationKind::parallel_x, ClosedFormRegime::dispersive_far_lowhigh);
    CHECK(eval_closed_form(far, 2.0 * kPi * 10.0) ==
          doctest::Approx(5.968e-3).epsilon(1e-4));
    far.polarization = PolarizationKind::perpendicular;
    far.sxx_imag = 0.2;
    CHECK(eval_closed_form(far, 2.5) ==
          doctest::Approx(0.75 * 0.2 * std::sin(2.5) / 2.5).epsilon(1e-14));
    CHECK_THROWS_AS(eval_closed_form(far, 0.0), std::invalid_argument);
}

TEST_CASE("near-field circular response ignores the sign of C") {
    for (double eta : {1e-3, 0.01, 0.1}) {
        auto a = form(PolarizationKind::circular_right, ClosedFormRegime::nondispersive_near, 1);
        auto b = form(PolarizationKind::circular_right, ClosedFormRegime::nondispersive_near, -1);
        CHECK(eval_closed_form(a, eta) == eval_closed_form(b, eta));
    }
}

TEST_CASE("nondispersive full form reduces to its limits") {
    for (auto k : kAll)
        for (int c : {1, -1}) {
            auto full = form(k, ClosedFormRegime::nondispersive_full, c);
            auto near = form(k, ClosedFormRegime::nondispersive_near, c);
            auto far = form(k, ClosedFormRegime::nondispersive_far, c);
            // the circular full form carries a Hall term of order C alpha / eta^2,
            // which drops out only once eta is small against alpha
            double en = (k == PolarizationKind::circular_right ||
                         k == PolarizationKind::circular_left)
                            ? 1e-5
                            : 1e-3;
            CHECK(eval_closed_form(full, en) ==
                  doctest::Approx(eval_closed_form(near, en)).epsilon(1e-2));
            // compare at far distances against the local envelope
            double worst = 0.0, amp = 0.0;
            for (double eta = 400.0; eta < 410.0; eta += 0.05) {
                worst = std::max(worst,
                                 std::abs(eval_closed_form(full, eta) - eval_closed_form(far, eta)));
                amp = std::max(amp, std::abs(eval_closed_form(far, eta)));
            }
            CHECK(worst <= 1e-2 * amp);
        }
}

TEST_CASE("circular forms are mirror images under C") {
    for (double eta : {0.5, 3.0, 40.0})
        for (auto r : {ClosedFormRegime::nondispersive_full, ClosedFormRegime::nondispersive_far}) {
            auto a = form(PolarizationKind::circular_right, r, 1);
            auto b = form(PolarizationKind::circular_left, r, -1);
            CHECK(eval_closed_form(a, eta) == eval_closed_form(b, eta));
        }
    auto custom = form(PolarizationKind::perpendicular, ClosedFormRegime::nondispersive_full);
    custom.alpha = 0.5;
    const double r = 0.25 / 1.25;
    CHECK(eval_closed_form(custom, 1.0) ==
          doctest::Approx(-1.5 * r * (std::cos(1.0) + std::sin(1.0))).epsilon(1e-14));
}

TEST_CASE("far-field Green components") {
    SheetConductivity nd = nondispersive_conductivity(1);
    auto g = green_far_field(100.0, nd);
    cplx ref = -std::exp(cplx(0.0, 100.0)) / 200.0;
    CHECK(std::abs(g.gxx - ref) < 1e-16);
    CHECK(std::isnan(g.gxy.real()));
    CHECK(std::isnan(g.gzz.real()));

    SheetConductivity lossy;
    lossy.sxx = cplx(0.05, 0.1);
    lossy.sxy = 0.0;
    auto h = green_far_field(100.0, lossy);
    CHECK(h.gxy == cplx(0.0));
    CHECK(std::isfinite(h.gzz.real()));
    CHECK(h.eta == 100.0);
}

TEST_CASE("far-field quadrature agreement for gxx") {
    OscQuadConfig cfg;
    const double eta = 100.0;
    ModelParams p;
    p.u = -1.0;
    for (const SheetConductivity &sig :
         {nondispersive_conductivity(1), conductivity(1.9, p, QuadratureConfig{})}) {
        auto q = green_reflected(eta, sig, cfg);
        auto f = green_far_field(eta, sig);
        INFO("quadrature ", q.gxx, " far field ", f.gxx);
        CHECK(std::abs(q.gxx - f.gxx) <= 0.02 * std::abs(f.gxx));
    }
}
