#pragma once

#include <string>
#include <vector>

#include "bandedge/closedform.hpp"
#include "bandedge/kernels.hpp"
#include "bandedge/params.hpp"

namespace bandedge {

// Direct time-stepping of the memory equation
//
//   i b1'(t) = Omega - (delta + i gamma/2) b1(t) - i Int_0^t K(t-t') b1(t') dt'
//
// and of the coupled pair (full_system mode)
//
//   i b0'(t) = Omega b1(t)
//   i b1'(t) = Omega b0(t) - (delta + i gamma/2) b1(t) - i Int_0^t K(t-t') b1(t') dt'.
//
// The path through these routines shares no code with the residue expansion
// in closedform; agreement between the two is the core cross-check.

enum class VolterraScheme { product_trapezoid };
enum class VolterraMode { perturbative, full_system };

struct SolverConfig {
    TimeGrid grid;
    VolterraScheme scheme = VolterraScheme::product_trapezoid;
    VolterraMode mode = VolterraMode::perturbative;
};

// Advances b1 with b0 frozen at 1 (weak-probe regime). The memory integral
// is discretized by product integration: the smooth part
// g(t') = e^{+i delta' t'} b1(t') is taken piecewise linear and the moments
// of the 1/sqrt(pi tau) weight are integrated exactly per subinterval, so
// the integrable endpoint singularity costs no accuracy. The current node
// enters implicitly (one scalar complex solve per step), which keeps the
// stiff gamma >> beta regime stable.
//
// Throws StepTooLarge when grid.step() > 0.05, InvalidParams when
// cfg.mode != perturbative, NonFinite if a state sample overflows.
AmplitudeTrace solve_perturbative(const SystemParams& params, const KernelSpec& spec,
                                  const SolverConfig& cfg);

// Co-advances b0 and b1 (same memory discretization; one 2x2 complex solve
// per step). Used to validate the frozen-b0 assumption; the deviation is
// available via max_b0_deviation on the returned trace.
//
// Throws StepTooLarge / NonFinite as above, InvalidParams when
// cfg.mode != full_system.
AmplitudeTrace solve_full_system(const SystemParams& params, const KernelSpec& spec,
                                 const SolverConfig& cfg);

// Non-fatal diagnostics for a planned solve: forwards param_warnings and
// adds a resolution warning when h * |delta'| > 0.3 for the edge kernel
// (the oscillatory factor is grouped with b1 before the piecewise-linear
// fit, so the phase must rotate slowly across one step).
std::vector<std::string> solver_warnings(const SystemParams& params, const KernelSpec& spec,
                                         const SolverConfig& cfg);

}  // namespace bandedge
