#pragma once

#include <utility>

namespace chernshift {

// Two-band QWZ model H(k) = d(k) . sigma at zero temperature.
struct ModelParams {
    double t = 1.0; // hopping, the energy unit
    double u = 1.0; // gap parameter
    double a = 1.0; // lattice constant
    double beta_inverse = 0.0;

    void validate() const;
};

struct KPoint {
    double kx = 0.0;
    double ky = 0.0;
};

struct DVector {
    double dx = 0.0;
    double dy = 0.0;
    double dz = 0.0;
    double d = 0.0;
};

struct CurrentMatrixElements {
    double re_jxjx = 0.0; // Re[<+|jx|-><-|jx|+>]
    double im_jxjy = 0.0; // Im[<+|jx|-><-|jy|+>]
};

DVector d_vector(const KPoint &k, const ModelParams &p);

// Lower and upper edges of the interband transition window 2d(k).
// These split real frequencies into the low, intermediate and high regimes.
std::pair<double, double> band_gap_edges(const ModelParams &p);

// Fukui-Hatsugai lattice Chern number of the occupied band on a
// grid_n x grid_n grid that contains the high-symmetry points, so a
// closed gap at u = 0, +-2t is detected. Sign convention: sigma_xy(0) = C e^2/h.
int chern_number(const ModelParams &p, int grid_n);

// Closed forms in units e = hbar = 1. Throws SingularPointError where
// dx^2 + dy^2 vanishes.
CurrentMatrixElements current_matrix_elements(const KPoint &k, const ModelParams &p);

} // namespace chernshift
