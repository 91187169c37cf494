#include "commands.hpp"

#include "acceptance.hpp"

#include "chernshift/constants.hpp"
#include "chernshift/cp_shift.hpp"
#include "chernshift/fresnel.hpp"
#include "chernshift/parallel.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace chernshift::cli {

using cplx = std::complex<double>;
using Row = std::vector<double>;

std::vector<double> make_grid(double min, double max, double step, const char *what) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw UsageError(std::string(what) + " step must be positive");
    if (!std::isfinite(min) || !std::isfinite(max) || max < min)
        throw UsageError(std::string(what) + " grid is empty");
    const auto n = static_cast<long>(std::floor((max - min) / step + 1e-9)) + 1;
    if (n > 10'000'000)
        throw UsageError(std::string(what) + " grid is too large");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = min + static_cast<double>(i) * step;
    return g;
}

std::string pair_path(const std::string &out, double omega10, const std::string &pol,
                      bool single) {
    if (single || out.empty())
        return out;
    auto dot = out.find_last_of('.');
    auto slash = out.find_last_of('/');
    std::string stem = out, ext;
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
        stem = out.substr(0, dot);
        ext = out.substr(dot);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "_w%g", omega10);
    if (pol.empty())
        return stem + buf + ext;
    std::string p = pol == "circ+" ? "circp" : pol == "circ-" ? "circm" : pol;
    return stem + buf + "_" + p + ext;
}

namespace {

nlohmann::json params_json(const RunConfig &c) {
    nlohmann::json j;
    j["u_over_t"] = c.u_over_t;
    j["omega10_over_t"] = c.omega10_over_t;
    j["eta_min"] = c.eta_min;
    j["eta_max"] = c.eta_max;
    j["eta_step"] = c.eta_step;
    j["polarizations"] = c.polarizations;
    j["nondispersive"] = c.nondispersive;
    j["chern"] = c.chern ? nlohmann::json(*c.chern) : nlohmann::json();
    j["sigma"] = c.sigma ? nlohmann::json(*c.sigma) : nlohmann::json();
    j["nonresonant"] = c.nonresonant;
    j["reference"] = c.reference;
    j["bz_grid"] = c.quad.bz_grid_n;
    j["max_bz_grid"] = c.quad.max_bz_grid_n;
    j["delta_broadening"] = c.quad.delta_broadening;
    j["pv_broadening"] = c.quad.pv_broadening;
    j["convergence_tol"] = c.quad.convergence_tol;
    j["rel_tol"] = c.osc.rel_tol;
    j["panel_width"] = c.osc.panel_width;
    j["evanescent_cutoff"] = c.osc.evanescent_cutoff;
    // thread count is left out: it does not change the output
    return j;
}

void write_csv(const std::string &path, const std::vector<std::string> &columns,
               const std::vector<Row> &rows, const RunConfig &cfg, nlohmann::json extra) {
    std::ostringstream os;
    os << '#';
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : " ") << columns[i];
    os << '\n';
    char buf[40];
    for (const auto &r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", r[i]);
            if (i)
                os << ',';
            os << buf;
        }
        os << '\n';
    }
    if (path.empty()) {
        std::cout << os.str();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f << os.str();

    nlohmann::json meta;
    meta["command"] = cfg.command;
    meta["library_version"] = kVersion;
    meta["columns"] = columns;
    meta["rows"] = rows.size();
    meta["parameters"] = params_json(cfg);
    for (auto &[k, v] : extra.items())
        meta[k] = v;
    std::ofstream m(path + ".meta.json", std::ios::binary);
    if (!m)
        throw std::runtime_error("cannot write " + path + ".meta.json");
    m << meta.dump(2) << '\n';
}

void check_common(const RunConfig &c) {
    if (c.chern && !c.nondispersive)
        throw UsageError("--chern applies only with --nondispersive");
    if (c.chern && *c.chern != 1 && *c.chern != -1)
        throw UsageError("--chern must be +1 or -1");
    if (c.nondispersive && c.sigma)
        throw UsageError("--nondispersive and --sigma are exclusive");
    if (!(c.quad.bz_grid_n > 0) || c.quad.bz_grid_n % 2 != 0)
        throw UsageError("--bz-grid must be a positive even number");
    if (!(c.quad.delta_broadening > 0.0) || !(c.quad.pv_broadening > 0.0))
        throw UsageError("--broadening must be positive");
    if (!(c.osc.rel_tol > 0.0))
        throw UsageError("--rel-tol must be positive");
    if (c.omega10_over_t.empty())
        throw UsageError("--omega10-over-t needs at least one value");
    for (double w : c.omega10_over_t)
        if (!(w > 0.0) || !std::isfinite(w))
            throw UsageError("--omega10-over-t values must be positive");
}

QuadratureConfig quad_of(const RunConfig &c) {
    QuadratureConfig q = c.quad;
    q.threads = c.threads;
    return q;
}

Surface surface_of(const RunConfig &c) {
    if (c.sigma) {
        const auto &s = *c.sigma;
        return Surface::constant(cplx(s[0], s[1]), cplx(s[2], s[3]));
    }
    if (c.nondispersive)
        return Surface::nondispersive(c.chern.value_or(1));
    ModelParams p;
    p.u = c.u_over_t;
    return Surface::dispersive(p, quad_of(c));
}

// Nondispersive surface with the Chern number of the configured model.
Surface reference_of(const RunConfig &c) {
    if (c.nondispersive)
        return Surface::nondispersive(c.chern.value_or(1));
    ModelParams p;
    p.u = c.u_over_t;
    int chern = chern_number(p, 64);
    if (chern == 0)
        return Surface::constant(0.0, 0.0);
    return Surface::nondispersive(chern);
}

std::vector<Polarization> polarizations_of(const RunConfig &c) {
    if (c.polarizations.empty())
        throw UsageError("--polarization needs a value");
    std::vector<Polarization> out;
    for (const auto &name : c.polarizations) {
        try {
            out.push_back(Polarization::of(parse_polarization(name)));
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }
    return out;
}

} // namespace

int run_conductivity(const RunConfig &cfg) {
    check_common(cfg);
    std::vector<double> grid =
        cfg.omega_list_given ? cfg.omega10_over_t
                             : make_grid(cfg.omega_min, cfg.omega_max, cfg.omega_step, "omega");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw UsageError("frequencies must be strictly increasing");
    if (cfg.imag_axis && grid.front() <= 0.0)
        throw UsageError("imaginary-axis frequencies must be positive");
    for (double w : grid)
        if (w < 0.0)
            throw UsageError("frequencies must be non-negative");

    std::vector<SheetConductivity> rows;
    nlohmann::json extra;
    extra["axis"] = cfg.imag_axis ? "imaginary" : "real";
    if (!cfg.imag_axis && !cfg.nondispersive && !cfg.sigma) {
        ModelParams p;
        p.u = cfg.u_over_t;
        VanHoveScan scan = van_hove_scan(grid, p, quad_of(cfg));
        rows = std::move(scan.rows);
        extra["im_sxx_peaks"] = scan.peak_omegas;
    } else {
        Surface s = surface_of(cfg);
        for (double w : grid)
            rows.push_back(cfg.imag_axis ? s.imag_axis(w) : s.real_axis(w));
    }
    std::vector<Row> out;
    std::vector<std::string> regimes;
    for (const auto &r : rows) {
        out.push_back({r.omega_over_t, r.sxx.real(), r.sxx.imag(), r.sxy.real(), r.sxy.imag()});
        regimes.push_back(regime_name(r.regime));
    }
    extra["regimes"] = regimes;
    write_csv(cfg.out, {"omega_over_t", "re_sxx", "im_sxx", "re_sxy", "im_sxy"}, out, cfg,
              extra);
    return 0;
}

int run_reflection(const RunConfig &cfg) {
    check_common(cfg);
    auto ks = make_grid(cfg.k_min, cfg.k_max, cfg.k_step, "k_par");
    if (ks.front() < 0.0)
        throw UsageError("k_par must be non-negative");
    Surface s = surface_of(cfg);
    std::optional<Surface> ref;
    if (cfg.reference)
        ref = reference_of(cfg);
    std::vector<std::string> cols{"k_par_norm", "abs_r_ss", "abs_r_pp", "abs_r_ps",
                                  "abs_t_ss",   "abs_t_pp", "abs_t_ps"};
    if (ref)
        for (const char *c : {"abs_r_ss_nondispersive", "abs_r_pp_nondispersive",
                              "abs_r_ps_nondispersive"})
            cols.push_back(c);
    const bool single = cfg.omega10_over_t.size() == 1;
    for (double w : cfg.omega10_over_t) {
        SheetConductivity sig = s.real_axis(w);
        std::vector<Row> rows(ks.size());
        parallel_for(ks.size(), cfg.threads, [&](std::size_t i) {
            ReflectionSet r = reflection_set(ks[i], 1.0, sig);
            Row row{ks[i],          std::abs(r.r_ss), std::abs(r.r_pp), std::abs(r.r_ps),
                    std::abs(r.t_ss), std::abs(r.t_pp), std::abs(r.t_ps)};
            if (ref) {
                ReflectionSet n = reflection_set(ks[i], 1.0, ref->real_axis(w));
                row.insert(row.end(), {std::abs(n.r_ss), std::abs(n.r_pp), std::abs(n.r_ps)});
            }
            rows[i] = std::move(row);
        });
        nlohmann::json extra;
        extra["omega10_over_t"] = w;
        extra["sigma"] = {sig.sxx.real(), sig.sxx.imag(), sig.sxy.real(), sig.sxy.imag()};
        write_csv(pair_path(cfg.out, w, "", single), cols, rows, cfg, extra);
    }
    return 0;
}

int run_green(const RunConfig &cfg) {
    check_common(cfg);
    auto etas = make_grid(cfg.eta_min, cfg.eta_max, cfg.eta_step, "eta");
    if (!(etas.front() > 0.0))
        throw UsageError("eta must be positive");
    if (cfg.xi_over_omega10 && !(*cfg.xi_over_omega10 > 0.0))
        throw UsageError("--xi-over-omega10 must be positive");
    Surface s = surface_of(cfg);
    const bool single = cfg.omega10_over_t.size() == 1;
    for (double w : cfg.omega10_over_t) {
        SheetConductivity sig =
            cfg.xi_over_omega10 ? s.imag_axis(*cfg.xi_over_omega10 * w) : s.real_axis(w);
        std::vector<Row> rows(etas.size());
        parallel_for(etas.size(), cfg.threads, [&](std::size_t i) {
            GreenComponents g = cfg.xi_over_omega10
                                    ? green_imag_axis(etas[i], *cfg.xi_over_omega10, sig, cfg.osc)
                                    : green_reflected(etas[i], sig, cfg.osc);
            rows[i] = {etas[i],        g.gxx.real(), g.gxx.imag(), g.gxy.real(),
                       g.gxy.imag(), g.gzz.real(), g.gzz.imag()};
        });
        nlohmann::json extra;
        extra["omega10_over_t"] = w;
        if (cfg.xi_over_omega10)
            extra["xi_over_omega10"] = *cfg.xi_over_omega10;
        write_csv(pair_path(cfg.out, w, "", single),
                  {"eta", "re_gxx", "im_gxx", "re_gxy", "im_gxy", "re_gzz", "im_gzz"}, rows, cfg,
                  extra);
    }
    return 0;
}

int run_shift(const RunConfig &cfg) {
    check_common(cfg);
    auto etas = make_grid(cfg.eta_min, cfg.eta_max, cfg.eta_step, "eta");
    if (!(etas.front() > 0.0))
        throw UsageError("eta must be positive");
    auto pols = polarizations_of(cfg);
    Surface s = surface_of(cfg);
    std::optional<Surface> ref;
    if (cfg.reference)
        ref = reference_of(cfg);

    std::vector<std::string> cols{"eta", "shift_res"};
    if (cfg.nonresonant)
        cols.insert(cols.end(), {"shift_nres", "shift_total"});
    if (ref)
        cols.push_back("shift_res_nondispersive");

    const bool single = cfg.omega10_over_t.size() * pols.size() == 1;
    for (double w : cfg.omega10_over_t) {
        SheetConductivity sig = s.real_axis(w);
        for (std::size_t pi = 0; pi < pols.size(); ++pi) {
            const Polarization &pol = pols[pi];
            std::vector<Row> rows(etas.size());
            parallel_for(etas.size(), cfg.threads, [&](std::size_t i) {
                Row row{etas[i], resonant_shift(pol, sig, etas[i], cfg.osc)};
                if (cfg.nonresonant) {
                    double n = nonresonant_shift(pol, w, s, etas[i], cfg.osc);
                    row.insert(row.end(), {n, row[1] + n});
                }
                if (ref)
                    row.push_back(resonant_shift(pol, ref->real_axis(w), etas[i], cfg.osc));
                rows[i] = std::move(row);
            });
            nlohmann::json extra;
            extra["omega10_over_t"] = w;
            extra["polarization"] = polarization_name(pol.kind);
            extra["dispersive"] = s.is_dispersive();
            extra["sigma"] = {sig.sxx.real(), sig.sxx.imag(), sig.sxy.real(), sig.sxy.imag()};
            extra["regime"] = regime_name(sig.regime);
            write_csv(pair_path(cfg.out, w, cfg.polarizations[pi], single), cols, rows, cfg,
                      extra);
        }
    }
    return 0;
}

int run_integrand(const RunConfig &cfg) {
    check_common(cfg);
    auto ks = make_grid(cfg.k_min, cfg.k_max, cfg.k_step, "k_par");
    if (ks.front() < 0.0)
        throw UsageError("k_par must be non-negative");
    if (!(cfg.eta > 0.0))
        throw UsageError("--eta must be positive");
    Surface s = surface_of(cfg);
    std::optional<Surface> ref;
    if (cfg.reference)
        ref = reference_of(cfg);
    std::vector<std::string> cols{"k_par_norm", "re_g1", "im_g1", "re_g2", "im_g2", "combination"};
    if (ref)
        cols.push_back("combination_nondispersive");
    const bool single = cfg.omega10_over_t.size() == 1;
    for (double w : cfg.omega10_over_t) {
        auto prof = integrand_profile(s.real_axis(w), cfg.eta, ks);
        std::vector<ProfilePoint> rprof;
        if (ref)
            rprof = integrand_profile(ref->real_axis(w), cfg.eta, ks);
        std::vector<Row> rows;
        for (std::size_t i = 0; i < prof.size(); ++i) {
            const auto &p = prof[i];
            Row row{p.k_par_norm, p.g1.real(), p.g1.imag(), p.g2.real(), p.g2.imag(),
                    p.combination};
            if (ref)
                row.push_back(rprof[i].combination);
            rows.push_back(std::move(row));
        }
        nlohmann::json extra;
        extra["omega10_over_t"] = w;
        extra["eta"] = cfg.eta;
        write_csv(pair_path(cfg.out, w, "", single), cols, rows, cfg, extra);
    }
    return 0;
}

int run_verify(const RunConfig &cfg) {
    AcceptanceSettings set;
    set.quad = quad_of(cfg);
    set.osc = cfg.osc;
    set.threads = cfg.threads;
    std::vector<int> ids = cfg.criteria.empty() ? criterion_ids() : cfg.criteria;
    for (int id : ids)
        if (!has_criterion(id))
            throw UsageError("no acceptance criterion " + std::to_string(id));
    return run_acceptance(ids, set, std::cout) ? 0 : 1;
}

int run_command(const RunConfig &cfg) {
    if (cfg.command == "conductivity")
        return run_conductivity(cfg);
    if (cfg.command == "reflection")
        return run_reflection(cfg);
    if (cfg.command == "green")
        return run_green(cfg);
    if (cfg.command == "shift")
        return run_shift(cfg);
    if (cfg.command == "integrand")
        return run_integrand(cfg);
    if (cfg.command == "verify")
        return run_verify(cfg);
    throw UsageError("unknown command '" + cfg.command + "'");
}

} // namespace chernshift::cli
