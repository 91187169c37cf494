#pragma once

#include "chernshift/green_tensor.hpp"
#include "chernshift/kubo_conductivity.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chernshift::cli {

// Bad flag values or combinations; the front end exits with status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;

    double u_over_t = 1.0;
    std::vector<double> omega10_over_t{1.9};
    bool omega_list_given = false;
    double omega_min = 0.1, omega_max = 8.0, omega_step = 0.05; // conductivity scan
    double eta_min = 0.5, eta_max = 15.0, eta_step = 0.05;
    double eta = 5.0; // integrand profile
    double k_min = 0.005, k_max = 3.0, k_step = 0.01;
    std::vector<std::string> polarizations{"circ+"};

    bool nondispersive = false;
    std::optional<int> chern;
    std::optional<std::array<double, 4>> sigma; // re sxx, im sxx, re sxy, im sxy
    bool imag_axis = false;
    std::optional<double> xi_over_omega10;
    bool nonresonant = false;
    bool reference = false; // add nondispersive reference columns

    std::string out; // empty: stdout, no sidecar
    unsigned threads = 0;
    QuadratureConfig quad;
    OscQuadConfig osc;

    std::vector<int> criteria; // verify; empty runs all
};

// min, min + step, ... up to max (inclusive within rounding).
std::vector<double> make_grid(double min, double max, double step, const char *what);

int run_conductivity(const RunConfig &cfg);
int run_reflection(const RunConfig &cfg);
int run_green(const RunConfig &cfg);
int run_shift(const RunConfig &cfg);
int run_integrand(const RunConfig &cfg);
int run_verify(const RunConfig &cfg);

int run_command(const RunConfig &cfg);

// Output file for one (omega10, polarization) pair of a multi-file sweep.
std::string pair_path(const std::string &out, double omega10, const std::string &pol,
                      bool single);

} // namespace chernshift::cli
