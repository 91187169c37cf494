#include "commands.hpp"

#include "chernshift/constants.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>

using chernshift::cli::RunConfig;
using chernshift::cli::UsageError;

namespace {

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Appends --key=value for every config-file entry whose flag is not
// already on the command line. "key = true" becomes a bare flag.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    std::set<std::string> given;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string &a = args[i];
        if (a.rfind("--", 0) != 0)
            continue;
        std::string key = a.substr(2, a.find('=') == std::string::npos ? std::string::npos
                                                                        : a.find('=') - 2);
        given.insert(key);
        if (key == "config") {
            if (a.find('=') != std::string::npos)
                path = a.substr(a.find('=') + 1);
            else if (i + 1 < args.size())
                path = args[i + 1];
            else
                throw UsageError("--config needs a path");
        }
    }
    if (path.empty())
        return args;
    std::ifstream f(path);
    if (!f)
        throw UsageError("cannot read config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.rfind("--", 0) == 0)
            key = key.substr(2);
        if (key.empty() || key == "config")
            throw UsageError(path + ":" + std::to_string(lineno) + ": bad key");
        if (given.count(key))
            continue;
        if (value == "true")
            args.push_back("--" + key);
        else if (value != "false")
            args.push_back("--" + key + "=" + value);
    }
    return args;
}

struct Extra {
    std::string config_path;
    std::vector<double> sigma;
};

void add_shared(CLI::App *app, RunConfig &c, Extra &x) {
    app->add_option("--u-over-t", c.u_over_t, "QWZ gap parameter u/t");
    app->add_option("--omega10-over-t", c.omega10_over_t,
                    "transition frequency hbar*omega10/t, value or comma list")
        ->delimiter(',')
        ->each([&c](const std::string &) { c.omega_list_given = true; });
    app->add_option("--eta-min", c.eta_min);
    app->add_option("--eta-max", c.eta_max);
    app->add_option("--eta-step", c.eta_step);
    app->add_option("--polarization", c.polarizations, "perp, par, circ+, circ- (comma list)")
        ->delimiter(',');
    app->add_flag("--nondispersive", c.nondispersive, "use sigma = (0, C alpha)");
    app->add_option("--chern", c.chern, "+1 or -1, nondispersive mode only");
    app->add_option("--sigma", x.sigma,
                    "constant sigma: re_sxx,im_sxx,re_sxy,im_sxy (dimensionless)")
        ->delimiter(',');
    app->add_option("--out", c.out, "output CSV path (default stdout)");
    app->add_option("--config", x.config_path, "key=value file; flags override it");
    app->add_option("--threads", c.threads, "worker threads (0 = hardware)");
    app->add_option("--bz-grid", c.quad.bz_grid_n, "Brillouin-zone grid per axis");
    app->add_option("--max-bz-grid", c.quad.max_bz_grid_n, "grid refinement cap");
    app->add_option("--broadening", c.quad.delta_broadening,
                    "Gaussian width / t, also the resolvent shift unless --pv-broadening");
    app->add_option("--pv-broadening", c.quad.pv_broadening, "resolvent shift / t");
    app->add_option("--rel-tol", c.osc.rel_tol, "relative tolerance of k-integrals");
}

} // namespace

int main(int argc, char **argv) {
    RunConfig cfg;
    Extra extra;
    CLI::App app{"Casimir-Polder shifts of a two-level atom above a QWZ Chern insulator"};
    app.set_version_flag("--version", chernshift::kVersion);
    app.require_subcommand(1);

    struct Sub {
        const char *name, *help;
    };
    const Sub subs[] = {
        {"conductivity", "sheet conductivity on a frequency grid"},
        {"reflection", "Fresnel coefficient magnitudes versus k_par"},
        {"green", "reflected Green tensor versus eta"},
        {"shift", "Casimir-Polder frequency shift versus eta"},
        {"integrand", "k_par profile of the G_xx and G_xy integrands"},
        {"verify", "run the acceptance criteria"},
    };
    for (const auto &s : subs) {
        CLI::App *sub = app.add_subcommand(s.name, s.help);
        add_shared(sub, cfg, extra);
        std::string name = s.name;
        sub->callback([&cfg, &extra, name, sub] {
            cfg.command = name;
            if (sub->count("--broadening") && !sub->count("--pv-broadening"))
                cfg.quad.pv_broadening = cfg.quad.delta_broadening;
            if (sub->count("--sigma")) {
                if (extra.sigma.size() != 4)
                    throw UsageError("--sigma needs four comma-separated numbers");
                cfg.sigma = std::array<double, 4>{extra.sigma[0], extra.sigma[1],
                                                  extra.sigma[2], extra.sigma[3]};
            }
        });
        if (name == "conductivity") {
            sub->add_option("--omega-min", cfg.omega_min);
            sub->add_option("--omega-max", cfg.omega_max);
            sub->add_option("--omega-step", cfg.omega_step);
            sub->add_flag("--imag-axis", cfg.imag_axis, "evaluate at omega = i xi");
        }
        if (name == "reflection" || name == "integrand") {
            sub->add_option("--k-min", cfg.k_min);
            sub->add_option("--k-max", cfg.k_max);
            sub->add_option("--k-step", cfg.k_step);
            sub->add_flag("--reference", cfg.reference, "add nondispersive columns");
        }
        if (name == "integrand")
            sub->add_option("--eta", cfg.eta, "atom-surface distance 2 omega10 z0 / c");
        if (name == "green")
            sub->add_option("--xi-over-omega10", cfg.xi_over_omega10,
                            "imaginary frequency xi/omega10 instead of omega10");
        if (name == "shift") {
            sub->add_flag("--nonresonant", cfg.nonresonant, "add nonresonant and total columns");
            sub->add_flag("--reference", cfg.reference, "add a nondispersive column");
        }
        if (name == "verify")
            sub->add_option("--criterion", cfg.criteria, "criterion number (repeatable)");
    }

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = merge_config(args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        return chernshift::cli::run_command(cfg);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
