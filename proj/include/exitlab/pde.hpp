#pragma once

#include <cstddef>
#include <utility>

#include "exitlab/domain.hpp"
#include "exitlab/errors.hpp"
#include "exitlab/grid_function.hpp"

namespace exitlab {

/// Final state of an iterative solve.
struct SolverDiagnostics {
    int iterations = 0;
    double residual = 0.0;
};

/// Boundary data for the semilinear Dirichlet problem (left, right).
using BoundaryValues = std::pair<double, double>;

/// Solves (1/2) v'' = 2 v^2 on the domain with v = f on the boundary,
/// by damped Newton iteration on the second-order central-difference
/// residual. Returns v >= 0 on the full grid.
GridFunction solve_dirichlet_semilinear(const Domain1D& domain, BoundaryValues f,
                                        std::size_t grid_size,
                                        SolverDiagnostics* diag = nullptr);

/// Solves the boundary blow-up problem for the same equation. The first
/// closure_offset_cells interior nodes at each end are pinned to the
/// leading-order profile (3/2) s^-2 and the Dirichlet problem is solved
/// inward; boundary entries hold the first-cell cap (3/2) h^-2. A one-cell
/// closure leaves ~20% error in the s^-2 coefficient a few cells in (the
/// stencil cannot follow the singularity), so the default band is four
/// cells; doubling it is the insensitivity check.
GridFunction solve_large_solution(const Domain1D& domain, std::size_t grid_size,
                                  SolverDiagnostics* diag = nullptr,
                                  std::size_t closure_offset_cells = 4);

/// Applies the Green operator of (1/2) d^2/dx^2 - kill with zero boundary
/// data: returns g solving (1/2) g'' - kill*g = -f, g = 0 on the boundary.
GridFunction green_apply(const Domain1D& domain, const GridFunction& kill,
                         const GridFunction& f);

enum class BoundaryPoint { Left, Right };

/// Harmonic function of the killed operator with boundary value 1 at z and
/// 0 at the other endpoint: (1/2) h'' - kill*h = 0.
GridFunction poisson_kernel(const Domain1D& domain, const GridFunction& kill,
                            BoundaryPoint z);

/// Derivative of log h: central differences at interior nodes of the valid
/// (h > 0) range, one-sided at its ends, clamped constant outside it.
GridFunction grad_log(const GridFunction& h);

}  // namespace exitlab
