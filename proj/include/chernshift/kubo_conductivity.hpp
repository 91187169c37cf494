#pragma once

#include "chernshift/qwz_model.hpp"

#include <complex>
#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

namespace chernshift {

enum class Regime { low, intermediate, high, static_limit, imaginary_axis };

const char *regime_name(Regime r);

// Dimensionless sheet conductivity 2*pi*sigma/c at one frequency.
// sigma_yy = sigma_xx and sigma_yx = -sigma_xy are implied.
struct SheetConductivity {
    double omega_over_t = 0.0; // hbar*omega/t, or hbar*xi/t on the imaginary axis
    std::complex<double> sxx{0.0, 0.0};
    std::complex<double> sxy{0.0, 0.0};
    Regime regime = Regime::static_limit;
};

struct QuadratureConfig {
    int bz_grid_n = 600;             // per axis, even
    double delta_broadening = 0.02;  // Gaussian width, units of t
    double pv_broadening = 0.02;     // resolvent shift, units of t
    double convergence_factor = 2.0; // grid refinement ratio of the self-check
    double convergence_tol = 1e-3;
    int max_bz_grid_n = 2400;  // refinement stops here
    bool check_convergence = true;
    unsigned threads = 0; // 0 = hardware

    void validate() const;
};

Regime classify_regime(double omega_over_t, const ModelParams &p);

// Kubo formula on a midpoint grid. With check_convergence the grid is
// refined by convergence_factor until both components change by less than
// convergence_tol (relative); the finest result is returned, and
// ConvergenceError is thrown if max_bz_grid_n is reached first.
SheetConductivity conductivity(double omega_over_t, const ModelParams &p,
                               const QuadratureConfig &q);

// Same sum at omega = i*xi. Results are real.
SheetConductivity conductivity_imag_axis(double xi_over_t, const ModelParams &p,
                                         const QuadratureConfig &q);

// Drops the per-process Brillouin-zone kernels shared by all evaluations.
void clear_kernel_cache();

// sigma_xx = 0, sigma_xy = C*alpha.
SheetConductivity nondispersive_conductivity(int chern);

// Single grid evaluation, no self-check.
SheetConductivity conductivity_on_grid(double omega_over_t, bool imag_axis, int grid_n,
                                       const ModelParams &p, const QuadratureConfig &q);

struct VanHoveScan {
    std::vector<SheetConductivity> rows;
    std::vector<double> peak_omegas; // local maxima of |Im sxx|
};

VanHoveScan van_hove_scan(const std::vector<double> &omega_grid, const ModelParams &p,
                          const QuadratureConfig &q);

// Memoizes conductivity() on one axis for fixed model and quadrature
// settings. Concurrent readers are safe.
class ConductivityCache {
public:
    ConductivityCache(const ModelParams &p, const QuadratureConfig &q, bool imag_axis = false);

    SheetConductivity get(double omega_over_t);

    // Plain-text columns omega_over_t,re_sxx,im_sxx,re_sxy,im_sxy after a
    // '#' header that records the settings. load() ignores files written
    // with different settings and returns false.
    bool load(const std::string &path);
    void save(const std::string &path) const;

    std::size_t size() const;
    void clear();

private:
    std::string header() const;

    ModelParams p_;
    QuadratureConfig q_;
    bool imag_axis_;
    mutable std::shared_mutex mutex_;
    std::map<double, SheetConductivity> table_;
};

} // namespace chernshift
