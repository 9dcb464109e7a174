#include "exitlab/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace exitlab {

namespace {

constexpr double kNewtonTol = 1e-10;
constexpr int kNewtonMaxSteps = 50;

/// Thomas algorithm for a tridiagonal system; diag/rhs are overwritten.
/// Throws SolverError on a vanishing pivot.
void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag,
                       std::vector<double>& upper, std::vector<double>& rhs,
                       std::vector<double>& x) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0)
            throw SolverError("tridiagonal solve: singular pivot", 0.0, 0);
        const double m = lower[i - 1] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0)
        throw SolverError("tridiagonal solve: singular pivot", 0.0, 0);
    x.resize(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
}

/// Residual of the discretized equation at interior unknowns:
/// F_i = (v_{i-1} - 2 v_i + v_{i+1}) / (2h^2) - 2 v_i^2.
void semilinear_residual(const std::vector<double>& v, double inv2h2,
                         std::size_t lo, std::size_t hi, std::vector<double>& out) {
    out.resize(hi - lo + 1);
    for (std::size_t i = lo; i <= hi; ++i)
        out[i - lo] = (v[i - 1] - 2.0 * v[i] + v[i + 1]) * inv2h2 - 2.0 * v[i] * v[i];
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Damped Newton on the interior unknowns v[lo..hi] with fixed values
/// outside. The 1e-10 residual target gets a floating-point noise floor:
/// at blow-up scales the stencil terms round at ~|v|/h^2 * eps, which can
/// exceed 1e-10 long after the iteration has converged to machine accuracy.
void newton_semilinear(std::vector<double>& v, double h, std::size_t lo, std::size_t hi,
                       SolverDiagnostics* diag) {
    const double inv2h2 = 1.0 / (2.0 * h * h);
    const double eps = std::numeric_limits<double>::epsilon();

    std::vector<double> f, lower, dmain, upper, rhs, step;
    semilinear_residual(v, inv2h2, lo, hi, f);
    double fnorm = max_abs(f);

    int iter = 0;
    for (; iter < kNewtonMaxSteps; ++iter) {
        double vmax = 0.0;
        for (std::size_t i = lo - 1; i <= hi + 1; ++i) vmax = std::max(vmax, std::abs(v[i]));
        const double noise_floor = 64.0 * eps * (4.0 * vmax * inv2h2 + 2.0 * vmax * vmax);
        const double tol = std::max(kNewtonTol, noise_floor);
        if (fnorm < tol) break;

        const std::size_t n = hi - lo + 1;
        lower.assign(n - 1, inv2h2);
        upper.assign(n - 1, inv2h2);
        dmain.resize(n);
        rhs.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            dmain[i] = -2.0 * inv2h2 - 4.0 * v[lo + i];
            rhs[i] = -f[i];
        }
        solve_tridiagonal(lower, dmain, upper, rhs, step);

        double alpha = 1.0;
        bool accepted = false;
        std::vector<double> trial(v);
        for (int halving = 0; halving < 40; ++halving) {
            for (std::size_t i = 0; i < n; ++i) trial[lo + i] = v[lo + i] + alpha * step[i];
            std::vector<double> ftrial;
            semilinear_residual(trial, inv2h2, lo, hi, ftrial);
            const double fnew = max_abs(ftrial);
            if (fnew < fnorm) {
                v.swap(trial);
                f.swap(ftrial);
                fnorm = fnew;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted)
            throw SolverError("semilinear Newton: line search stalled", fnorm, iter);
    }

    if (iter == kNewtonMaxSteps) {
        double vmax = 0.0;
        for (std::size_t i = lo - 1; i <= hi + 1; ++i) vmax = std::max(vmax, std::abs(v[i]));
        const double tol =
            std::max(kNewtonTol, 64.0 * eps * (4.0 * vmax * inv2h2 + 2.0 * vmax * vmax));
        if (fnorm >= tol)
            throw SolverError("semilinear Newton: no convergence", fnorm, iter);
    }
    if (diag) {
        diag->iterations = iter;
        diag->residual = fnorm;
    }
}

}  // namespace

GridFunction solve_dirichlet_semilinear(const Domain1D& domain, BoundaryValues f,
                                        std::size_t grid_size, SolverDiagnostics* diag) {
    if (grid_size < 16)
        throw std::invalid_argument("solve_dirichlet_semilinear: grid_size must be >= 16");
    if (!(f.first >= 0.0) || !(f.second >= 0.0) || !std::isfinite(f.first) ||
        !std::isfinite(f.second))
        throw std::invalid_argument("solve_dirichlet_semilinear: boundary data must be finite and >= 0");

    GridFunction out(domain, grid_size);
    auto& v = out.values();
    const std::size_t m = grid_size;
    // Linear interpolant of the boundary data: a supersolution of the
    // equation, so the damped iteration descends monotonically.
    for (std::size_t i = 0; i <= m; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(m);
        v[i] = f.first + t * (f.second - f.first);
    }
    newton_semilinear(v, out.spacing(), 1, m - 1, diag);
    for (double& x : v) x = std::max(x, 0.0);
    return out;
}

GridFunction solve_large_solution(const Domain1D& domain, std::size_t grid_size,
                                  SolverDiagnostics* diag, std::size_t closure_offset_cells) {
    if (grid_size < 64)
        throw std::invalid_argument("solve_large_solution: grid_size must be >= 64");
    if (closure_offset_cells < 1 || closure_offset_cells * 8 > grid_size)
        throw std::invalid_argument("solve_large_solution: bad closure offset");

    GridFunction out(domain, grid_size);
    out.set_boundary_kind(BoundaryKind::BlowUp);
    auto& v = out.values();
    const std::size_t m = grid_size;
    const double h = out.spacing();
    const std::size_t off = closure_offset_cells;

    // Leading-order profile (3/2) s^-2 pins the closure nodes; nodes between
    // the closure node and the boundary follow the same profile, and the
    // boundary entries carry the first-cell cap.
    const double cap = 1.5 / (h * h);
    v[0] = cap;
    v[m] = cap;
    for (std::size_t j = 1; j <= off; ++j) {
        const double s = static_cast<double>(j) * h;
        v[j] = 1.5 / (s * s);
        v[m - j] = v[j];
    }
    const double closure = v[off];
    for (std::size_t i = off + 1; i < m - off; ++i) v[i] = closure;

    newton_semilinear(v, h, off + 1, m - off - 1, diag);
    for (double& x : v) x = std::max(x, 0.0);
    return out;
}

GridFunction green_apply(const Domain1D& domain, const GridFunction& kill,
                         const GridFunction& f) {
    if (!(kill.domain() == domain) || !kill.same_grid(f))
        throw std::invalid_argument("green_apply: grid mismatch");
    if (kill.min_value() < 0.0)
        throw std::invalid_argument("green_apply: kill rate must be >= 0");

    const std::size_t m = kill.grid_size();
    const double h = kill.spacing();
    const double inv2h2 = 1.0 / (2.0 * h * h);
    const std::size_t n = m - 1;

    std::vector<double> lower(n - 1, inv2h2), upper(n - 1, inv2h2), diag(n), rhs(n), g;
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = -2.0 * inv2h2 - kill[i + 1];
        rhs[i] = -f[i + 1];
    }
    solve_tridiagonal(lower, diag, upper, rhs, g);

    GridFunction out(domain, m);
    for (std::size_t i = 0; i < n; ++i) out[i + 1] = g[i];
    out[0] = 0.0;
    out[m] = 0.0;
    return out;
}

GridFunction poisson_kernel(const Domain1D& domain, const GridFunction& kill,
                            BoundaryPoint z) {
    if (!(kill.domain() == domain))
        throw std::invalid_argument("poisson_kernel: grid mismatch");
    if (kill.min_value() < 0.0)
        throw std::invalid_argument("poisson_kernel: kill rate must be >= 0");

    const std::size_t m = kill.grid_size();
    const double h = kill.spacing();
    const double inv2h2 = 1.0 / (2.0 * h * h);
    const std::size_t n = m - 1;
    const double left_bv = (z == BoundaryPoint::Left) ? 1.0 : 0.0;
    const double right_bv = 1.0 - left_bv;

    std::vector<double> lower(n - 1, inv2h2), upper(n - 1, inv2h2), diag(n), rhs(n, 0.0), sol;
    for (std::size_t i = 0; i < n; ++i) diag[i] = -2.0 * inv2h2 - kill[i + 1];
    rhs[0] -= inv2h2 * left_bv;
    rhs[n - 1] -= inv2h2 * right_bv;
    solve_tridiagonal(lower, diag, upper, rhs, sol);

    GridFunction out(domain, m);
    out[0] = left_bv;
    out[m] = right_bv;
    for (std::size_t i = 0; i < n; ++i) out[i + 1] = sol[i];
    return out;
}

GridFunction grad_log(const GridFunction& h) {
    const std::size_t m = h.grid_size();
    // Valid range: the maximal run of h > 0 nodes (a Poisson kernel vanishes
    // at the opposite endpoint).
    std::size_t lo = 0, hi = m;
    while (lo <= m && h[lo] <= 0.0) ++lo;
    while (hi > lo && h[hi] <= 0.0) --hi;
    if (lo >= hi)
        throw std::domain_error("grad_log: no positive range");
    for (std::size_t i = lo; i <= hi; ++i)
        if (h[i] <= 0.0)
            throw std::domain_error("grad_log: nonpositive value inside the range");

    const double dx = h.spacing();
    GridFunction out(h.domain(), m);
    std::vector<double> lg(m + 1, 0.0);
    for (std::size_t i = lo; i <= hi; ++i) lg[i] = std::log(h[i]);

    out[lo] = (lg[lo + 1] - lg[lo]) / dx;
    out[hi] = (lg[hi] - lg[hi - 1]) / dx;
    for (std::size_t i = lo + 1; i < hi; ++i) out[i] = (lg[i + 1] - lg[i - 1]) / (2.0 * dx);
    for (std::size_t i = 0; i < lo; ++i) out[i] = out[lo];
    for (std::size_t i = hi + 1; i <= m; ++i) out[i] = out[hi];
    return out;
}

}  // namespace exitlab
