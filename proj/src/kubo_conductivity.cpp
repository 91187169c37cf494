#include "chernshift/kubo_conductivity.hpp"

#include "chernshift/constants.hpp"
#include "chernshift/errors.hpp"
#include "chernshift/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <list>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

namespace chernshift {

const char *regime_name(Regime r) {
    switch (r) {
    case Regime::low: return "low";
    case Regime::intermediate: return "intermediate";
    case Regime::high: return "high";
    case Regime::static_limit: return "static";
    case Regime::imaginary_axis: return "imaginary_axis";
    }
    return "unknown";
}

void QuadratureConfig::validate() const {
    if (bz_grid_n <= 0 || bz_grid_n % 2 != 0)
        throw std::invalid_argument("bz_grid_n must be positive and even");
    if (!(delta_broadening > 0.0) || !(pv_broadening > 0.0))
        throw std::invalid_argument("broadening widths must be positive");
    if (!(convergence_factor > 1.0))
        throw std::invalid_argument("convergence_factor must exceed 1");
    if (!(convergence_tol > 0.0))
        throw std::invalid_argument("convergence_tol must be positive");
}

Regime classify_regime(double omega_over_t, const ModelParams &p) {
    if (omega_over_t == 0.0)
        return Regime::static_limit;
    auto [lo, hi] = band_gap_edges(p);
    double w = omega_over_t * p.t;
    if (w < lo)
        return Regime::low;
    if (w > hi)
        return Regime::high;
    return Regime::intermediate;
}

namespace {

using cplx = std::complex<double>;

// Positive-k quadrant of the midpoint grid; the integrand is even in kx
// and in ky, so each point carries weight 4.
struct BzKernel {
    int n = 0;
    std::vector<double> two_d; // 2d/t
    std::vector<double> wre;   // weight * Re[jx jx] / (2d)
    std::vector<double> wim;   // weight * Im[jx jy] / (2d)
};

std::shared_ptr<const BzKernel> build_kernel(double u_over_t, int n, unsigned threads) {
    auto k = std::make_shared<BzKernel>();
    k->n = n;
    const int h = n / 2;
    const std::size_t m = static_cast<std::size_t>(h) * h;
    k->two_d.resize(m);
    k->wre.resize(m);
    k->wim.resize(m);
    ModelParams unit{1.0, u_over_t, 1.0, 0.0};
    const double step = 2.0 * kPi / n;
    const double w = 4.0 * step * step / (4.0 * kPi * kPi);
    parallel_for(static_cast<std::size_t>(h), threads, [&](std::size_t i) {
        double kx = -kPi + (static_cast<double>(i + h) + 0.5) * step;
        for (int j = 0; j < h; ++j) {
            double ky = -kPi + (static_cast<double>(j + h) + 0.5) * step;
            KPoint kp{kx, ky};
            DVector v = d_vector(kp, unit);
            CurrentMatrixElements me = current_matrix_elements(kp, unit);
            std::size_t idx = i * h + j;
            k->two_d[idx] = 2.0 * v.d;
            k->wre[idx] = w * me.re_jxjx / (2.0 * v.d);
            k->wim[idx] = w * me.im_jxjy / (2.0 * v.d);
        }
    });
    return k;
}

class KernelStore {
public:
    std::shared_ptr<const BzKernel> get(double u_over_t, int n, unsigned threads) {
        auto key = std::make_pair(u_over_t, n);
        {
            std::lock_guard<std::mutex> lock(mutex_);
            for (auto it = entries_.begin(); it != entries_.end(); ++it) {
                if (it->first == key) {
                    entries_.splice(entries_.begin(), entries_, it);
                    return entries_.front().second;
                }
            }
        }
        auto k = build_kernel(u_over_t, n, threads);
        std::lock_guard<std::mutex> lock(mutex_);
        entries_.emplace_front(key, k);
        while (entries_.size() > kMaxEntries)
            entries_.pop_back();
        return k;
    }

    void clear() {
        std::lock_guard<std::mutex> lock(mutex_);
        entries_.clear();
    }

private:
    static constexpr std::size_t kMaxEntries = 6;
    std::mutex mutex_;
    std::list<std::pair<std::pair<double, int>, std::shared_ptr<const BzKernel>>> entries_;
};

KernelStore &kernel_store() {
    static KernelStore store;
    return store;
}

std::pair<cplx, cplx> kubo_sum(const BzKernel &k, double w, bool imag_axis, double db,
                               double pb, unsigned threads) {
    const int h = k.n / 2;
    std::vector<cplx> row_xx(h), row_xy(h);
    const double gnorm = 1.0 / (std::sqrt(2.0 * kPi) * db);
    const double gcut = 40.0 * db;
    auto gauss = [&](double x) {
        return std::abs(x) > gcut ? 0.0 : gnorm * std::exp(-x * x / (2.0 * db * db));
    };
    parallel_for(static_cast<std::size_t>(h), threads, [&](std::size_t i) {
        double rxx = 0.0, ixx = 0.0, rxy = 0.0, ixy = 0.0;
        for (int j = 0; j < h; ++j) {
            std::size_t idx = i * h + j;
            double e = k.two_d[idx];
            if (imag_axis) {
                double den = w * w + e * e;
                rxx += k.wre[idx] * 2.0 * w / den;
                rxy -= k.wim[idx] * 2.0 * e / den;
            } else {
                double x = w * w - e * e;
                double pv = x / (x * x + pb * pb * w * w);
                double gm = gauss(w - e), gp = gauss(w + e);
                rxx += k.wre[idx] * kPi * (gp + gm);
                ixx += k.wre[idx] * 2.0 * w * pv;
                rxy += k.wim[idx] * 2.0 * e * pv;
                ixy -= k.wim[idx] * kPi * (gm - gp);
            }
        }
        row_xx[i] = cplx(rxx, ixx);
        row_xy[i] = cplx(rxy, ixy);
    });
    cplx sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < h; ++i) {
        sxx += row_xx[i];
        sxy += row_xy[i];
    }
    const double scale = 2.0 * kPi * kFineStructure;
    return {scale * sxx, scale * sxy};
}

bool close_enough(cplx coarse, cplx fine, double tol) {
    return std::abs(fine - coarse) <= tol * std::max(std::abs(fine), 1e-12);
}

SheetConductivity converged(double omega_over_t, bool imag_axis, const ModelParams &p,
                            const QuadratureConfig &q) {
    p.validate();
    q.validate();
    if (!(omega_over_t >= 0.0) || (imag_axis && !(omega_over_t > 0.0)))
        throw std::invalid_argument("frequency must be non-negative (positive on the imaginary axis)");
    int n = q.bz_grid_n;
    SheetConductivity prev = conductivity_on_grid(omega_over_t, imag_axis, n, p, q);
    if (!q.check_convergence)
        return prev;
    for (;;) {
        int next = static_cast<int>(std::lround(n * q.convergence_factor));
        next += next % 2;
        if (next > q.max_bz_grid_n) {
            char buf[200];
            std::snprintf(buf, sizeof buf,
                          "Brillouin-zone sum not converged at hbar*omega/t = %.6g "
                          "(grid %d, limit %d)",
                          omega_over_t, n, q.max_bz_grid_n);
            throw ConvergenceError(buf);
        }
        SheetConductivity cur = conductivity_on_grid(omega_over_t, imag_axis, next, p, q);
        if (close_enough(prev.sxx, cur.sxx, q.convergence_tol) &&
            close_enough(prev.sxy, cur.sxy, q.convergence_tol))
            return cur;
        prev = cur;
        n = next;
    }
}

} // namespace

SheetConductivity conductivity_on_grid(double omega_over_t, bool imag_axis, int grid_n,
                                       const ModelParams &p, const QuadratureConfig &q) {
    if (grid_n <= 0 || grid_n % 2 != 0)
        throw std::invalid_argument("grid size must be positive and even");
    auto kernel = kernel_store().get(p.u / p.t, grid_n, q.threads);
    auto [sxx, sxy] = kubo_sum(*kernel, omega_over_t, imag_axis, q.delta_broadening,
                               q.pv_broadening, q.threads);
    SheetConductivity s;
    s.omega_over_t = omega_over_t;
    s.sxx = sxx;
    s.sxy = sxy;
    s.regime = imag_axis ? Regime::imaginary_axis : classify_regime(omega_over_t, p);
    return s;
}

SheetConductivity conductivity(double omega_over_t, const ModelParams &p,
                               const QuadratureConfig &q) {
    return converged(omega_over_t, false, p, q);
}

SheetConductivity conductivity_imag_axis(double xi_over_t, const ModelParams &p,
                                         const QuadratureConfig &q) {
    return converged(xi_over_t, true, p, q);
}

void clear_kernel_cache() { kernel_store().clear(); }

SheetConductivity nondispersive_conductivity(int chern) {
    if (chern != 1 && chern != -1)
        throw std::invalid_argument("nondispersive limit needs C = +1 or -1");
    SheetConductivity s;
    s.sxy = chern * kFineStructure;
    s.regime = Regime::static_limit;
    return s;
}

VanHoveScan van_hove_scan(const std::vector<double> &omega_grid, const ModelParams &p,
                          const QuadratureConfig &q) {
    for (std::size_t i = 1; i < omega_grid.size(); ++i)
        if (!(omega_grid[i] > omega_grid[i - 1]))
            throw std::invalid_argument("frequency grid must be strictly increasing");
    VanHoveScan scan;
    scan.rows.reserve(omega_grid.size());
    for (double w : omega_grid)
        scan.rows.push_back(conductivity(w, p, q));
    const std::size_t n = scan.rows.size();
    for (std::size_t i = 0; i < n; ++i) {
        double v = std::abs(scan.rows[i].sxx.imag());
        double left = i > 0 ? std::abs(scan.rows[i - 1].sxx.imag()) : -1.0;
        double right = i + 1 < n ? std::abs(scan.rows[i + 1].sxx.imag()) : -1.0;
        if (n >= 3 && v > left && v >= right && i > 0 && i + 1 < n)
            scan.peak_omegas.push_back(scan.rows[i].omega_over_t);
    }
    return scan;
}

ConductivityCache::ConductivityCache(const ModelParams &p, const QuadratureConfig &q,
                                     bool imag_axis)
    : p_(p), q_(q), imag_axis_(imag_axis) {}

SheetConductivity ConductivityCache::get(double omega_over_t) {
    {
        std::shared_lock lock(mutex_);
        auto it = table_.find(omega_over_t);
        if (it != table_.end())
            return it->second;
    }
    SheetConductivity s = imag_axis_ ? conductivity_imag_axis(omega_over_t, p_, q_)
                                     : conductivity(omega_over_t, p_, q_);
    std::unique_lock lock(mutex_);
    table_.emplace(omega_over_t, s);
    return s;
}

std::string ConductivityCache::header() const {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "# chernshift conductivity cache axis=%s u_over_t=%.17g bz_grid=%d "
                  "broadening=%.17g pv_broadening=%.17g tol=%.17g",
                  imag_axis_ ? "imaginary" : "real", p_.u / p_.t, q_.bz_grid_n,
                  q_.delta_broadening, q_.pv_broadening,
                  q_.check_convergence ? q_.convergence_tol : 0.0);
    return buf;
}

bool ConductivityCache::load(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        return false;
    std::string line;
    if (!std::getline(in, line) || line != header())
        return false;
    std::map<double, SheetConductivity> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double w, a, b, c, d;
        if (!(ss >> w >> a >> b >> c >> d))
            return false;
        SheetConductivity s;
        s.omega_over_t = w;
        s.sxx = cplx(a, b);
        s.sxy = cplx(c, d);
        s.regime = imag_axis_ ? Regime::imaginary_axis : classify_regime(w, p_);
        rows.emplace(w, s);
    }
    std::unique_lock lock(mutex_);
    for (auto &kv : rows)
        table_.insert(kv);
    return true;
}

void ConductivityCache::save(const std::string &path) const {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write conductivity cache " + path);
    out << header() << "\n# omega_over_t,re_sxx,im_sxx,re_sxy,im_sxy\n";
    std::shared_lock lock(mutex_);
    char buf[160];
    for (const auto &[w, s] : table_) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", w, s.sxx.real(),
                      s.sxx.imag(), s.sxy.real(), s.sxy.imag());
        out << buf;
    }
}

std::size_t ConductivityCache::size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
}

void ConductivityCache::clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
}

} // namespace chernshift
