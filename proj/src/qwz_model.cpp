#include "chernshift/qwz_model.hpp"

#include "chernshift/constants.hpp"
#include "chernshift/errors.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace chernshift {

void ModelParams::validate() const {
    if (!(t > 0.0))
        throw std::invalid_argument("hopping t must be positive");
    if (!(a > 0.0))
        throw std::invalid_argument("lattice constant a must be positive");
    if (beta_inverse != 0.0)
        throw std::invalid_argument("only zero temperature is supported");
}

DVector d_vector(const KPoint &k, const ModelParams &p) {
    DVector v;
    v.dx = p.t * std::sin(k.kx * p.a);
    v.dy = p.t * std::sin(k.ky * p.a);
    v.dz = p.t * (std::cos(k.kx * p.a) + std::cos(k.ky * p.a)) + p.u;
    v.d = std::sqrt(v.dx * v.dx + v.dy * v.dy + v.dz * v.dz);
    return v;
}

std::pair<double, double> band_gap_edges(const ModelParams &p) {
    double au = std::abs(p.u);
    return {2.0 * (2.0 * p.t - au), 2.0 * (2.0 * p.t + au)};
}

namespace {

using cplx = std::complex<double>;

struct Spinor {
    cplx a, b;
};

// Occupied (lower) band eigenvector. Of the two algebraically equivalent
// forms pick the one that does not vanish at this k.
Spinor lower_state(const DVector &v) {
    Spinor s1{cplx(v.dx, -v.dy), cplx(-(v.dz + v.d), 0.0)};
    Spinor s2{cplx(v.d - v.dz, 0.0), cplx(-v.dx, -v.dy)};
    double n1 = std::norm(s1.a) + std::norm(s1.b);
    double n2 = std::norm(s2.a) + std::norm(s2.b);
    Spinor s = n1 >= n2 ? s1 : s2;
    double n = std::sqrt(std::max(n1, n2));
    s.a /= n;
    s.b /= n;
    return s;
}

cplx link(const Spinor &x, const Spinor &y) {
    cplx z = std::conj(x.a) * y.a + std::conj(x.b) * y.b;
    return z / std::abs(z);
}

} // namespace

int chern_number(const ModelParams &p, int grid_n) {
    p.validate();
    if (grid_n < 8)
        throw std::invalid_argument("chern_number needs grid_n >= 8");
    const double tol = 1e-9 * p.t;
    const int n = grid_n;
    std::vector<Spinor> states(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            KPoint k{(-kPi + 2.0 * kPi * i / n) / p.a, (-kPi + 2.0 * kPi * j / n) / p.a};
            DVector v = d_vector(k, p);
            if (v.d < tol)
                throw DegenerateGapError("gap closes on the grid at u/t = " +
                                         std::to_string(p.u / p.t));
            states[static_cast<std::size_t>(i) * n + j] = lower_state(v);
        }
    }
    auto at = [&](int i, int j) -> const Spinor & {
        return states[static_cast<std::size_t>((i % n + n) % n) * n + (j % n + n) % n];
    };
    double flux = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cplx u1 = link(at(i, j), at(i + 1, j));
            cplx u2 = link(at(i + 1, j), at(i + 1, j + 1));
            cplx u3 = link(at(i + 1, j + 1), at(i, j + 1));
            cplx u4 = link(at(i, j + 1), at(i, j));
            flux += std::arg(u1 * u2 * u3 * u4);
        }
    }
    return static_cast<int>(std::lround(flux / (2.0 * kPi)));
}

CurrentMatrixElements current_matrix_elements(const KPoint &k, const ModelParams &p) {
    const double t = p.t, a = p.a;
    DVector v = d_vector(k, p);
    double r2 = v.dx * v.dx + v.dy * v.dy;
    if (r2 <= 1e-14 * t * t)
        throw SingularPointError("current matrix elements are singular where dx = dy = 0");
    double cx = std::cos(k.kx * a), cy = std::cos(k.ky * a);
    double sx = std::sin(k.kx * a), sy = std::sin(k.ky * a);
    double sx2 = sx * sx, sy2 = sy * sy;
    double c2 = std::cos(2.0 * k.kx * a) + std::cos(2.0 * k.ky * a);
    double s2x = std::sin(2.0 * k.kx * a);

    CurrentMatrixElements m;
    m.im_jxjy = t * t * t * a * a / (4.0 * v.d * r2) *
                ((cx * sy2 + cy * sx2) * (2.0 * (r2 + t * t) - t * t * c2) +
                 4.0 * t * v.dz * cx * cy * (sx2 + sy2));
    double b = t * t * c2 - 2.0 * (r2 + t * t);
    m.re_jxjx = t * t * a * a / (16.0 * v.d * v.d * r2) *
                (sx2 * b * (b - 8.0 * t * v.dz * cx) + 4.0 * t * t * v.dz * v.dz * s2x * s2x +
                 16.0 * t * t * v.d * v.d * cx * cx * sy2);
    return m;
}

} // namespace chernshift
