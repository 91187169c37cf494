#include <doctest.h>

#include "chernshift/constants.hpp"
#include "chernshift/cp_shift.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace chernshift;
using cplx = std::complex<double>;

namespace {

ModelParams model(double u) {
    ModelParams p;
    p.u = u;
    return p;
}

const PolarizationKind kAll[] = {PolarizationKind::perpendicular, PolarizationKind::parallel_x,
                                 PolarizationKind::circular_right,
                                 PolarizationKind::circular_left};

Eigen::Matrix3cd full(const GreenComponents &g) {
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    m(0, 0) = m(1, 1) = g.gxx;
    m(0, 1) = g.gxy;
    m(1, 0) = -g.gxy;
    m(2, 2) = g.gzz;
    return m;
}

Eigen::Vector3cd vec(const std::array<cplx, 3> &a) { return {a[0], a[1], a[2]}; }

} // namespace

TEST_CASE("polarization vectors") {
    const double r = 1.0 / std::sqrt(2.0);
    auto c = Polarization::of(PolarizationKind::circular_right);
    CHECK(std::abs(c.n[0] - cplx(-r, 0.0)) < 1e-16);
    CHECK(std::abs(c.n[1] - cplx(0.0, -r)) < 1e-16);
    auto l = Polarization::of(PolarizationKind::circular_left);
    for (int i = 0; i < 3; ++i)
        CHECK(l.n[i] == std::conj(c.n[i]));
    CHECK(Polarization::of(PolarizationKind::perpendicular).n[2] == cplx(1.0));
    CHECK(Polarization::of(PolarizationKind::parallel_x).n[0] == cplx(1.0));
    for (auto k : kAll) {
        auto p = Polarization::of(k);
        CHECK(vec(p.n).squaredNorm() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(parse_polarization(polarization_name(k)) == k);
    }
    CHECK_THROWS_AS(parse_polarization("diag"), std::invalid_argument);
}

TEST_CASE("contraction identities on random tensors") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        GreenComponents g;
        g.gxx = {n(rng), n(rng)};
        g.gxy = {n(rng), n(rng)};
        g.gzz = {n(rng), n(rng)};
        Eigen::Matrix3cd m = full(g);
        for (auto k : kAll) {
            auto p = Polarization::of(k);
            Eigen::Vector3cd v = vec(p.n);
            cplx ref = -0.375 * (v.transpose() * (m + m.adjoint()) * v.conjugate())(0, 0);
            CHECK(std::abs(ref.imag()) < 1e-14);
            CHECK(contract_resonant(g, p) == doctest::Approx(ref.real()).epsilon(1e-14));
            cplx y = contract(g, p.n, p.n);
            CHECK(std::abs(y - (v.transpose() * m * v)(0, 0)) < 1e-14);
        }
        auto pol = [](PolarizationKind k) { return Polarization::of(k); };
        CHECK(contract_resonant(g, pol(PolarizationKind::perpendicular)) ==
              doctest::Approx(-0.75 * g.gzz.real()).epsilon(1e-14));
        CHECK(contract_resonant(g, pol(PolarizationKind::parallel_x)) ==
              doctest::Approx(-0.75 * g.gxx.real()).epsilon(1e-14));
        CHECK(contract_resonant(g, pol(PolarizationKind::circular_right)) ==
              doctest::Approx(-0.75 * (g.gxx.real() + g.gxy.imag())).epsilon(1e-14));
        CHECK(contract_resonant(g, pol(PolarizationKind::circular_left)) ==
              doctest::Approx(-0.75 * (g.gxx.real() - g.gxy.imag())).epsilon(1e-14));
    }
}

TEST_CASE("nondispersive resonant shifts") {
    OscQuadConfig cfg;
    for (int c : {1, -1}) {
        const double h = c * kFineStructure, d = 1.0 + h * h;
        auto surf = Surface::nondispersive(c);
        for (double eta : {0.5, 2.0, 10.0}) {
            const double cs = std::cos(eta), sn = std::sin(eta);
            auto perp = resonant_shift(Polarization::of(PolarizationKind::perpendicular), 1.9,
                                       surf, eta, cfg);
            CHECK(perp.resonant ==
                  doctest::Approx(-1.5 * h * h / d * (cs + eta * sn) / std::pow(eta, 3))
                      .epsilon(1e-8));
            auto par = resonant_shift(Polarization::of(PolarizationKind::parallel_x), 1.9, surf,
                                      eta, cfg);
            CHECK(par.resonant == doctest::Approx(0.75 * h * h / d *
                                                  ((eta * eta - 1.0) * cs - eta * sn) /
                                                  std::pow(eta, 3))
                                      .epsilon(1e-8));
            auto circ = resonant_shift(Polarization::of(PolarizationKind::circular_right), 1.9,
                                       surf, eta, cfg);
            double full_form = 0.75 * (h * h / d * ((eta * eta - 1.0) * cs - eta * sn) /
                                           std::pow(eta, 3) +
                                       h / d * (cs + eta * sn) / (eta * eta));
            CHECK(circ.resonant == doctest::Approx(full_form).epsilon(1e-8));
            CHECK_FALSE(circ.metadata.dispersive);
            CHECK(circ.metadata.polarization == PolarizationKind::circular_right);
            CHECK(circ.eta == eta);
        }
    }
    // far field of the circular shift
    auto circ = resonant_shift(Polarization::of(PolarizationKind::circular_right), 1.9,
                               Surface::nondispersive(1), 80.0, cfg);
    const double h = kFineStructure, eta = 80.0;
    CHECK(circ.resonant == doctest::Approx(0.75 * h / ((1 + h * h) * eta) *
                                           (h * std::cos(eta) + std::sin(eta)))
                               .epsilon(2e-2));
}

TEST_CASE("Hall sign enters only through Im gxy") {
    OscQuadConfig cfg;
    QuadratureConfig q;
    auto a = green_reflected(3.0, conductivity(1.9, model(1.0), q), cfg);
    auto b = green_reflected(3.0, conductivity(1.9, model(-1.0), q), cfg);
    CHECK(a.gxx.real() == doctest::Approx(b.gxx.real()).epsilon(1e-10));
    CHECK(a.gzz.real() == doctest::Approx(b.gzz.real()).epsilon(1e-10));
    CHECK(a.gxy.imag() == doctest::Approx(-b.gxy.imag()).epsilon(1e-10));
}

TEST_CASE("mirrored circular configurations coincide") {
    OscQuadConfig cfg;
    QuadratureConfig q;
    auto up = Surface::dispersive(model(1.0), q), down = Surface::dispersive(model(-1.0), q);
    for (double eta : {1.0, 4.0, 9.0}) {
        auto left = resonant_shift(Polarization::of(PolarizationKind::circular_left), 1.9, up,
                                   eta, cfg);
        auto right = resonant_shift(Polarization::of(PolarizationKind::circular_right), 1.9,
                                    down, eta, cfg);
        CHECK(left.resonant == doctest::Approx(right.resonant).epsilon(1e-8));
        CHECK(left.metadata.dispersive);
        CHECK(left.metadata.u_over_t == 1.0);
    }
}

TEST_CASE("no surface, no shift") {
    OscQuadConfig cfg;
    auto surf = Surface::constant(0.0, 0.0);
    for (auto k : kAll) {
        auto pol = Polarization::of(k);
        CHECK(nonresonant_level_shift(AtomState::ground, pol, 1.9, surf, 1.0, cfg) == 0.0);
        CHECK(nonresonant_level_shift(AtomState::excited, pol, 1.9, surf, 1.0, cfg) == 0.0);
        auto t = total_shift(pol, 1.9, surf, 1.0, cfg, true);
        CHECK(*t.total == 0.0);
        CHECK(resonant_shift(pol, SheetConductivity{}, 2.0, cfg) == 0.0);
    }
}

TEST_CASE("excited-state nonresonant shift of the Hall sheet") {
    // trapezoid in xi over the imaginary-axis kernels, C = 1, eta = 1
    OscQuadConfig cfg;
    auto surf = Surface::nondispersive(1);
    auto perp = Polarization::of(PolarizationKind::perpendicular);
    auto circ = Polarization::of(PolarizationKind::circular_right);
    CHECK(nonresonant_level_shift(AtomState::excited, perp, 1.9, surf, 1.0, cfg) ==
          doctest::Approx(2.453006118138702e-05).epsilon(1e-7));
    CHECK(nonresonant_level_shift(AtomState::excited, circ, 1.9, surf, 1.0, cfg) ==
          doctest::Approx(0.001820370166628434).epsilon(1e-7));
    CHECK(nonresonant_level_shift(AtomState::ground, perp, 1.9, surf, 1.0, cfg) ==
          doctest::Approx(-2.453006118138702e-05).epsilon(1e-7));
    CHECK(nonresonant_shift(perp, 1.9, surf, 1.0, cfg) ==
          doctest::Approx(2.0 * 2.453006118138702e-05).epsilon(1e-7));
}

TEST_CASE("ground-state shift and the sign of C") {
    OscQuadConfig cfg;
    auto up = Surface::nondispersive(1), down = Surface::nondispersive(-1);
    for (double eta : {0.5, 2.0}) {
        for (auto k : {PolarizationKind::perpendicular, PolarizationKind::parallel_x}) {
            auto pol = Polarization::of(k);
            double a = nonresonant_level_shift(AtomState::ground, pol, 1.9, up, eta, cfg);
            double b = nonresonant_level_shift(AtomState::ground, pol, 1.9, down, eta, cfg);
            CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
        }
        double r = nonresonant_level_shift(AtomState::ground,
                                           Polarization::of(PolarizationKind::circular_right),
                                           1.9, up, eta, cfg);
        double l = nonresonant_level_shift(AtomState::ground,
                                           Polarization::of(PolarizationKind::circular_left),
                                           1.9, down, eta, cfg);
        CHECK(std::abs(r - l) <= 1e-10 * std::abs(r));
    }
}

TEST_CASE("total shift bookkeeping") {
    OscQuadConfig cfg;
    QuadratureConfig q;
    auto surf = Surface::dispersive(model(-1.0), q);
    auto pol = Polarization::of(PolarizationKind::circular_right);
    auto only = total_shift(pol, 1.9, surf, 2.0, cfg, false);
    CHECK_FALSE(only.nonresonant.has_value());
    CHECK_FALSE(only.total.has_value());
    auto both = total_shift(pol, 1.9, surf, 2.0, cfg, true);
    REQUIRE(both.nonresonant.has_value());
    REQUIRE(both.total.has_value());
    CHECK(std::abs(*both.total - (both.resonant + *both.nonresonant)) <=
          1e-14 * std::abs(*both.total));
    CHECK(both.resonant == only.resonant);
    CHECK_THROWS_AS(resonant_shift(pol, 1.9, surf, -1.0, cfg), std::invalid_argument);
    CHECK_THROWS_AS(Surface::nondispersive(0), std::invalid_argument);
}
