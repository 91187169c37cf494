#include "acceptance.hpp"

#include "commands.hpp"

#include "chernshift/asymptotic_oracles.hpp"
#include "chernshift/constants.hpp"
#include "chernshift/cp_shift.hpp"
#include "chernshift/fresnel.hpp"
#include "chernshift/parallel.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <unistd.h>

namespace chernshift::cli {

namespace {

using cplx = std::complex<double>;

struct Check {
    bool pass = true;
    std::ostringstream msg;

    void expect(bool ok, const std::string &what) {
        if (!ok)
            pass = false;
        if (msg.tellp() > 0)
            msg << "; ";
        msg << what << (ok ? "" : " [FAILED]");
    }
};

std::string fmt(const char *f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char *f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::string fmt(const char *f, double a, double b, double c) {
    char buf[200];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

ModelParams model(double u) {
    ModelParams p;
    p.u = u;
    return p;
}

Polarization pol(PolarizationKind k) { return Polarization::of(k); }

const PolarizationKind kPerp = PolarizationKind::perpendicular;
const PolarizationKind kPar = PolarizationKind::parallel_x;
const PolarizationKind kRight = PolarizationKind::circular_right;
const PolarizationKind kLeft = PolarizationKind::circular_left;

std::vector<double> resonant_curve(const Polarization &p, const SheetConductivity &sig,
                                   const std::vector<double> &etas, const AcceptanceSettings &s) {
    std::vector<double> v(etas.size());
    parallel_for(etas.size(), s.threads,
                 [&](std::size_t i) { v[i] = resonant_shift(p, sig, etas[i], s.osc); });
    return v;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = a + (b - a) * i / (n - 1);
    return v;
}

int sign_changes(const std::vector<double> &v) {
    int n = 0, last = 0;
    for (double x : v) {
        int s = (x > 0.0) - (x < 0.0);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++n;
        last = s;
    }
    return n;
}

double correlation(const std::vector<double> &a, const std::vector<double> &b) {
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

// 1. Chern quantization
Check chern_quantization(const AcceptanceSettings &) {
    Check c;
    for (auto [u, want] : {std::pair{1.0, 1}, {-1.0, -1}, {3.0, 0}}) {
        int got = chern_number(model(u), 64);
        c.expect(got == want, fmt("u/t=%g -> C=%g", u, got));
    }
    return c;
}

// 2. Static Hall quantization
Check static_hall(const AcceptanceSettings &s) {
    Check c;
    for (double u : {1.0, -1.0}) {
        auto sig = conductivity(1e-3, model(u), s.quad);
        double want = (u > 0 ? 1.0 : -1.0) * kFineStructure;
        double rel = std::abs(sig.sxy - want) / kFineStructure;
        c.expect(rel < 1e-3, fmt("u/t=%g rel dev %.3g", u, rel));
    }
    return c;
}

// 3. Regime gating
Check regime_gating(const AcceptanceSettings &s) {
    Check c;
    QuadratureConfig half = s.quad;
    half.delta_broadening *= 0.5;
    half.pv_broadening *= 0.5;
    for (double u : {1.0, -1.0}) {
        for (double w : {1.0, 100.0}) {
            auto leak = [&](const QuadratureConfig &q) {
                auto sig = conductivity(w, model(u), q);
                return std::max(std::abs(sig.sxx.real()), std::abs(sig.sxy.imag()));
            };
            double full = leak(s.quad), halved = leak(half);
            c.expect(full < 1e-3 && halved <= 0.5 * full,
                     fmt("u/t=%g w=%g: leak %.3g", u, w, full) +
                         fmt(", halved broadening %.3g", halved));
        }
    }
    return c;
}

// 4. Van Hove peaks
Check van_hove(const AcceptanceSettings &s) {
    Check c;
    for (double u : {1.0, -1.0}) {
        for (double target : {2.0, 6.0}) {
            auto grid = make_grid(target - 0.5, target + 0.5, 0.01, "omega");
            auto scan = van_hove_scan(grid, model(u), s.quad);
            double best = std::nan(""), bestv = -1.0;
            for (double w : scan.peak_omegas) {
                for (const auto &r : scan.rows)
                    if (r.omega_over_t == w && std::abs(r.sxx.imag()) > bestv) {
                        bestv = std::abs(r.sxx.imag());
                        best = w;
                    }
            }
            c.expect(std::abs(best - target) <= 0.05,
                     fmt("u/t=%g peak %.4g (target %g)", u, best, target));
        }
    }
    return c;
}

// 5. Nondispersive closed forms
Check nondispersive_forms(const AcceptanceSettings &s) {
    Check c;
    auto etas = linspace(0.1, 20.0, 100);
    for (int chern : {1, -1}) {
        Surface nd = Surface::nondispersive(chern);
        for (auto k : {kPerp, kPar, kRight, kLeft}) {
            auto v = resonant_curve(pol(k), nd.real_axis(1.0), etas, s);
            double worst = 0.0;
            for (std::size_t i = 0; i < etas.size(); ++i) {
                ClosedForm cf;
                cf.polarization = k;
                cf.chern = chern;
                double ref = eval_closed_form(cf, etas[i]);
                worst = std::max(worst, std::abs(v[i] - ref) / std::abs(ref));
            }
            c.expect(worst < 1e-6, std::string("C=") + (chern > 0 ? "+1 " : "-1 ") +
                                       polarization_name(k) + fmt(" max rel %.2g", worst));
        }
    }
    return c;
}

// 6. Near field
Check near_field(const AcceptanceSettings &s) {
    Check c;
    const double eta = 1e-3;
    for (double w : {1.0, 3.0, 10.0}) {
        auto sig = conductivity(w, model(1.0), s.quad);
        for (auto k : {kPerp, kPar, kRight, kLeft}) {
            double want = k == kPerp ? -1.5 : -0.75;
            double got = resonant_shift(pol(k), sig, eta, s.osc) * eta * eta * eta;
            c.expect(got >= want * 1.01 && got <= want * 0.99,
                     fmt("w=%g ", w) + polarization_name(k) + fmt(" %.4g (want %g)", got, want));
        }
    }
    return c;
}

// 7. Far field; the 5% tolerance is taken on the local amplitude of the
// reference oscillation so that its zeros do not dominate.
Check far_field(const AcceptanceSettings &s) {
    Check c;
    std::vector<double> etas;
    for (int j = 0; j < 20; ++j)
        etas.push_back(100.0 + 2.0 * kPi * j / 20.0);
    for (double w : {1.0, 3.0, 10.0}) {
        auto sig = conductivity(w, model(1.0), s.quad);
        for (auto k : {kPar, kRight}) {
            auto v = resonant_curve(pol(k), sig, etas, s);
            double worst = 0.0;
            for (std::size_t i = 0; i < etas.size(); ++i) {
                double amp = 0.375 / etas[i];
                worst = std::max(worst, std::abs(v[i] - amp * std::cos(etas[i])) / amp);
            }
            c.expect(worst <= 0.05, fmt("w=%g ", w) + polarization_name(k) +
                                        fmt(" max dev %.3g of amplitude", worst));
        }
    }
    auto sig = conductivity(10.0, model(1.0), s.quad);
    auto v = resonant_curve(pol(kPerp), sig, etas, s);
    double worst = 0.0;
    for (std::size_t i = 0; i < etas.size(); ++i) {
        double amp = 0.75 * std::abs(sig.sxx.imag()) / etas[i];
        double ref = 0.75 * sig.sxx.imag() * std::sin(etas[i]) / etas[i];
        worst = std::max(worst, std::abs(v[i] - ref) / amp);
    }
    c.expect(worst <= 0.05, fmt("w=10 perp max dev %.3g of amplitude", worst));
    return c;
}

// 8. Monotonic repulsion signature
Check repulsion(const AcceptanceSettings &s) {
    Check c;
    const double h = 0.05;
    auto etas = make_grid(6.0 - h, 14.0 + h, h, "eta");
    for (auto [u, want_monotone] : {std::pair{-1.0, true}, {1.0, false}}) {
        auto sig = conductivity(1.9, model(u), s.quad);
        auto v = resonant_curve(pol(kRight), sig, etas, s);
        std::vector<double> d;
        for (std::size_t i = 1; i + 1 < v.size(); ++i)
            d.push_back((v[i + 1] - v[i - 1]) / (2.0 * h));
        int n = sign_changes(d);
        c.expect(want_monotone ? n == 0 : n >= 2,
                 fmt("u/t=%g: %g derivative sign changes", u, n));
    }
    return c;
}

// 9. Mirrored configurations
Check mirrored(const AcceptanceSettings &s) {
    Check c;
    auto etas = make_grid(1.0, 10.0, 0.1, "eta");
    auto left = resonant_curve(pol(kLeft), conductivity(1.9, model(1.0), s.quad), etas, s);
    auto right = resonant_curve(pol(kRight), conductivity(1.9, model(-1.0), s.quad), etas, s);
    double worst = 0.0;
    for (std::size_t i = 0; i < etas.size(); ++i)
        worst = std::max(worst, std::abs(left[i] - right[i]) /
                                    std::max(std::abs(left[i]), std::abs(right[i])));
    c.expect(worst <= 1e-8, fmt("max rel diff %.3g", worst));
    return c;
}

// 10. Figure ratios. A curve's peak is its largest local maximum of
// |shift| on eta in [0.3, 15].
Check figure_ratios(const AcceptanceSettings &s) {
    Check c;
    std::map<double, SheetConductivity> sig;
    auto at = [&](double w) -> const SheetConductivity & {
        auto it = sig.find(w);
        if (it == sig.end())
            it = sig.emplace(w, conductivity(w, model(1.0), s.quad)).first;
        return it->second;
    };
    auto amp = [&](double w, PolarizationKind k, double eta) {
        return std::abs(resonant_shift(pol(k), at(w), eta, s.osc));
    };
    double r1 = amp(1.9, kRight, 1.7) / amp(1.0, kRight, 1.7);
    c.expect(std::abs(r1 - 3.0) <= 0.9, fmt("circ 1.9/1 at 1.7: %.3g (3 +- 30%%)", r1));
    double r2 = amp(2.1, kRight, 1.7) / amp(3.0, kRight, 1.7);
    c.expect(std::abs(r2 - 5.0) <= 1.5, fmt("circ 2.1/3 at 1.7: %.3g (5 +- 30%%)", r2));

    auto etas = make_grid(0.3, 15.0, 0.01, "eta");
    auto peak = [&](double w) {
        auto v = resonant_curve(pol(kPerp), at(w), etas, s);
        double best = 0.0;
        for (std::size_t i = 1; i + 1 < v.size(); ++i) {
            double a = std::abs(v[i]);
            if (a >= std::abs(v[i - 1]) && a >= std::abs(v[i + 1]))
                best = std::max(best, a);
        }
        return best;
    };
    double r3 = peak(1.9) / peak(1.0);
    c.expect(r3 >= 9.0, fmt("perp peak 1.9/1: %.3g (>= 9)", r3));

    double a100 = amp(100.0, kRight, 4.0), a10 = amp(10.0, kRight, 4.0);
    c.expect(a100 <= a10 / 10.0, fmt("circ 100/10 at 4: %.3g (<= 0.1)", a100 / a10));
    double r5 = amp(10.0, kPar, 4.0) / amp(100.0, kPar, 4.0);
    c.expect(std::abs(r5 - 11.0) <= 4.4, fmt("par 10/100 at 4: %.3g (11 +- 40%%)", r5));
    return c;
}

// 11. Antiphase mechanism
Check antiphase(const AcceptanceSettings &s) {
    Check c;
    auto etas = linspace(2.0, 10.0, 81);
    for (auto [u, positive] : {std::pair{1.0, true}, {-1.0, false}}) {
        auto sig = conductivity(1.9, model(u), s.quad);
        std::vector<double> a(etas.size()), b(etas.size());
        parallel_for(etas.size(), s.threads, [&](std::size_t i) {
            auto g = green_reflected(etas[i], sig, s.osc);
            a[i] = -0.75 * g.gxx.real();
            b[i] = -0.75 * g.gxy.imag();
        });
        double r = correlation(a, b);
        c.expect(positive ? r > 0.8 : r < -0.8, fmt("u/t=%g corr %.3g", u, r));
    }
    return c;
}

// 12. Dimensionless and dimensional Fresnel forms. Samples within 5% of
// the light line are redrawn: there kz magnifies the unavoidable one-ulp
// difference of the rescaled k_par by k^2/kz^2. Errors are measured
// against the largest coefficient of each set.
Check fresnel_forms(const AcceptanceSettings &) {
    Check c;
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> uk(0.0, 3.0), uw(0.2, 5.0), us(-2.0, 2.0),
        uw10(0.5, 2.0);
    const double light = 137.035999084;
    double worst = 0.0;
    int n = 0;
    while (n < 1000) {
        double k = uk(rng), ratio = uw(rng), w10 = uw10(rng);
        SheetConductivity sig;
        sig.sxx = cplx(us(rng), us(rng));
        sig.sxy = cplx(us(rng), us(rng));
        if (std::abs(k - ratio) < 0.05 * ratio)
            continue;
        ++n;
        ReflectionSet a = reflection_set(k, ratio, sig);
        const double f = light / (2.0 * kPi);
        ReflectionSet b = reflection_set_dimensional(k * w10 / light, ratio * w10, sig.sxx * f,
                                                     sig.sxy * f, light);
        const cplx av[] = {a.r_ss, a.r_sp, a.r_ps, a.r_pp, a.t_ss, a.t_sp, a.t_ps, a.t_pp};
        const cplx bv[] = {b.r_ss, b.r_sp, b.r_ps, b.r_pp, b.t_ss, b.t_sp, b.t_ps, b.t_pp};
        double scale = 0.0, diff = 0.0;
        for (int i = 0; i < 8; ++i) {
            scale = std::max({scale, std::abs(av[i]), std::abs(bv[i])});
            diff = std::max(diff, std::abs(av[i] - bv[i]));
        }
        worst = std::max(worst, diff / scale);
    }
    c.expect(worst <= 1e-14, fmt("1000 inputs, max rel diff %.3g", worst));
    return c;
}

// 13. Schwarz property on the imaginary axis
Check schwarz(const AcceptanceSettings &s) {
    Check c;
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ux(-1.3, 1.3), ue(-1.3, 1.3);
    ModelParams p = model(1.0);
    const double w10 = 1.9;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        double x = std::pow(10.0, ux(rng)), eta = std::pow(10.0, ue(rng));
        auto sig = conductivity_imag_axis(x * w10, p, s.quad);
        auto g = green_imag_axis(eta, x, sig, s.osc);
        for (cplx v : {sig.sxx, sig.sxy, g.gxx, g.gxy, g.gzz})
            worst = std::max(worst, std::abs(v.imag()));
    }
    c.expect(worst < 1e-12, fmt("50 points, max |imag| %.3g", worst));
    return c;
}

// 14. Determinism of the shift command
Check determinism(const AcceptanceSettings &s) {
    Check c;
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() /
                   ("chernshift_determinism_" + std::to_string(static_cast<long>(::getpid())));
    fs::create_directories(dir);
    RunConfig cfg;
    cfg.command = "shift";
    cfg.u_over_t = -1.0;
    cfg.omega10_over_t = {1.9};
    cfg.polarizations = {"circ+", "perp"};
    cfg.eta_min = 0.5;
    cfg.eta_max = 15.0;
    cfg.eta_step = 0.5;
    cfg.nonresonant = true;
    cfg.reference = true;
    cfg.threads = s.threads;
    cfg.quad = s.quad;
    cfg.osc = s.osc;
    auto slurp = [](const fs::path &p) {
        std::ifstream f(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(f), {});
    };
    std::vector<std::string> runs[2];
    for (int r = 0; r < 2; ++r) {
        clear_kernel_cache();
        cfg.out = (dir / ("run" + std::to_string(r) + ".csv")).string();
        run_shift(cfg);
        for (const auto &pname : cfg.polarizations) {
            auto path = pair_path(cfg.out, 1.9, pname, false);
            runs[r].push_back(slurp(path));
            runs[r].push_back(slurp(path + ".meta.json"));
        }
    }
    bool same = runs[0] == runs[1] && !runs[0][0].empty();
    c.expect(same, fmt("%g output files compared byte for byte", runs[0].size()));
    fs::remove_all(dir);
    return c;
}

struct Entry {
    const char *name;
    std::function<Check(const AcceptanceSettings &)> fn;
    double time_limit; // seconds, 0 = none
};

const std::map<int, Entry> &registry() {
    static const std::map<int, Entry> r{
        {1, {"chern_quantization", chern_quantization, 1.0}},
        {2, {"static_hall_quantization", static_hall, 30.0}},
        {3, {"regime_gating", regime_gating, 0.0}},
        {4, {"van_hove_peaks", van_hove, 0.0}},
        {5, {"nondispersive_closed_forms", nondispersive_forms, 60.0}},
        {6, {"near_field_limits", near_field, 0.0}},
        {7, {"far_field_limits", far_field, 0.0}},
        {8, {"monotonic_repulsion", repulsion, 0.0}},
        {9, {"mirrored_configurations", mirrored, 0.0}},
        {10, {"figure_ratios", figure_ratios, 0.0}},
        {11, {"antiphase_mechanism", antiphase, 0.0}},
        {12, {"fresnel_dimensional_forms", fresnel_forms, 0.0}},
        {13, {"schwarz_property", schwarz, 0.0}},
        {14, {"determinism", determinism, 0.0}},
    };
    return r;
}

} // namespace

std::vector<int> criterion_ids() {
    std::vector<int> ids;
    for (const auto &[id, e] : registry())
        ids.push_back(id);
    return ids;
}

bool has_criterion(int id) { return registry().count(id) != 0; }

CriterionOutcome run_criterion(int id, const AcceptanceSettings &set) {
    const Entry &e = registry().at(id);
    CriterionOutcome out;
    out.id = id;
    out.name = e.name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        Check c = e.fn(set);
        out.pass = c.pass;
        out.detail = c.msg.str();
    } catch (const std::exception &ex) {
        out.pass = false;
        out.detail = std::string("error: ") + ex.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.time_limit > 0.0 && out.seconds >= e.time_limit) {
        out.pass = false;
        out.detail += fmt("; runtime %.3g s over the %g s limit", out.seconds, e.time_limit);
    }
    return out;
}

bool run_acceptance(const std::vector<int> &ids, const AcceptanceSettings &set,
                    std::ostream &os) {
    int failed = 0;
    for (int id : ids) {
        CriterionOutcome o = run_criterion(id, set);
        char head[96];
        std::snprintf(head, sizeof head, "%s %2d %-28s %8.2fs  ", o.pass ? "PASS" : "FAIL", o.id,
                      o.name.c_str(), o.seconds);
        os << head << o.detail << std::endl;
        failed += o.pass ? 0 : 1;
    }
    os << (failed ? "FAILED " : "OK ") << ids.size() - failed << "/" << ids.size()
       << " criteria passed" << std::endl;
    return failed == 0;
}

} // namespace chernshift::cli
