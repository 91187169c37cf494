#pragma once

#include "chernshift/green_tensor.hpp"
#include "chernshift/kubo_conductivity.hpp"

#include <array>
#include <complex>
#include <memory>
#include <optional>
#include <string>

namespace chernshift {

enum class PolarizationKind { perpendicular, parallel_x, circular_right, circular_left };

struct Polarization {
    PolarizationKind kind = PolarizationKind::perpendicular;
    std::array<std::complex<double>, 3> n{};

    // perpendicular (0,0,1), parallel (1,0,0), right -(1,i,0)/sqrt2, left its conjugate
    static Polarization of(PolarizationKind kind);
};

// "perp", "par", "circ+", "circ-"
const char *polarization_name(PolarizationKind kind);
PolarizationKind parse_polarization(const std::string &name);

enum class AtomState { ground, excited };

// Conductivity of the surface at real and imaginary frequencies.
class Surface {
public:
    static Surface dispersive(const ModelParams &p, const QuadratureConfig &q);
    static Surface nondispersive(int chern);
    // Frequency-independent sigma on both axes (sigma = 0 included).
    static Surface constant(std::complex<double> sxx, std::complex<double> sxy);

    SheetConductivity real_axis(double omega_over_t) const;
    SheetConductivity imag_axis(double xi_over_t) const;

    bool is_dispersive() const { return dispersive_; }
    const ModelParams &params() const { return p_; }
    const QuadratureConfig &quadrature() const { return q_; }
    int chern() const { return chern_; }

private:
    bool dispersive_ = false;
    ModelParams p_;
    QuadratureConfig q_;
    int chern_ = 0;
    std::complex<double> sxx_{0.0, 0.0}, sxy_{0.0, 0.0};
    std::shared_ptr<ConductivityCache> real_cache_, imag_cache_;
};

struct ShiftMetadata {
    PolarizationKind polarization = PolarizationKind::perpendicular;
    double omega10_over_t = 0.0;
    double u_over_t = 0.0;
    bool dispersive = false;
};

// Shifts in units of the free-space decay rate R10.
struct ShiftResult {
    double eta = 0.0;
    double resonant = 0.0;
    std::optional<double> nonresonant;
    std::optional<double> total;
    ShiftMetadata metadata;
};

// -(3/8) n_a n_b^* (G_ab + G_ba^*), with G at omega10.
double contract_resonant(const GreenComponents &g, const Polarization &pol);

// sum_ab l_a G_ab r_b over the full tensor rebuilt from the stored entries.
std::complex<double> contract(const GreenComponents &g,
                              const std::array<std::complex<double>, 3> &left,
                              const std::array<std::complex<double>, 3> &right);

double resonant_shift(const Polarization &pol, const SheetConductivity &sigma_at_omega10,
                      double eta, const OscQuadConfig &cfg);

ShiftResult resonant_shift(const Polarization &pol, double omega10_over_t, const Surface &surface,
                           double eta, const OscQuadConfig &cfg);

struct NonresonantOptions {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    int max_intervals = 400;
};

// Level shift delta E_state^vdw / (hbar R10) from the imaginary-frequency
// integral; the ground state uses omega01 = -omega10 and the conjugate
// dipole ordering.
double nonresonant_level_shift(AtomState state, const Polarization &pol, double omega10_over_t,
                               const Surface &surface, double eta, const OscQuadConfig &cfg,
                               const NonresonantOptions &nopt = {});

// Excited minus ground level shift.
double nonresonant_shift(const Polarization &pol, double omega10_over_t, const Surface &surface,
                         double eta, const OscQuadConfig &cfg,
                         const NonresonantOptions &nopt = {});

ShiftResult total_shift(const Polarization &pol, double omega10_over_t, const Surface &surface,
                        double eta, const OscQuadConfig &cfg, bool with_nonresonant,
                        const NonresonantOptions &nopt = {});

} // namespace chernshift
