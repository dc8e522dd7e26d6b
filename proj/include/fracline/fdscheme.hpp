#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fracline/grid.hpp"
#include "fracline/solvers.hpp"

namespace fracline {

/// Weights of the half-shifted Grunwald stencil, g_0 = 1 and
/// g_i = ((i - 1 - alpha) / i) g_{i-1}.
struct GrunwaldWeights {
    std::vector<double> g;
    std::size_t size() const { return g.size(); }
};

GrunwaldWeights grunwald_weights(const FractionalOrder& alpha, std::size_t n);

/// Explicit scheme parameters.  beta() = dt / dx^{1+alpha}; construction
/// rejects beta * (1 + alpha) > 1 so the diagonal coefficient stays
/// nonnegative.
struct SchemeConfig {
    FractionalOrder alpha;
    double dx;
    double dt;
    std::size_t n_cells;
    std::size_t n_steps;

    SchemeConfig(FractionalOrder a, double dx_, double dt_, std::size_t cells,
                 std::size_t steps);
    double beta() const;
};

/// One explicit step.  Both boundary rows are frozen; interior rows apply
/// the memory stencil verbatim.  Throws if the weight table is shorter
/// than n_cells + 1.
GridFunction step(const SchemeConfig& config, const GrunwaldWeights& weights,
                  const GridFunction& u);

/// March n_steps from the initial slice, recording the slices whose step
/// indices appear in record_steps (0 = initial data; indices must be
/// nondecreasing and <= n_steps).  Throws on blow-up (max |u| beyond
/// 1e3 x the initial max).
SolutionField fd_run(const SchemeConfig& config, const GridFunction& initial,
                     const std::vector<std::size_t>& record_steps);

/// Even-reflection ghost extension of the memory sum across x = 0.  This
/// variant is an extension of the published scheme, not part of it, and
/// is labelled as such in the returned field's warnings.
SolutionField fd_run_neumann(const SchemeConfig& config,
                             const GridFunction& initial,
                             const std::vector<std::size_t>& record_steps);

/// Effective interior stencil at a given alpha together with its distance
/// to the classical limits (upwind transport at alpha -> 0, forward-time
/// centered-space heat at alpha -> 1).
struct StencilRow {
    double alpha = 0.0;
    double beta = 0.0;
    double up = 0.0;         // coefficient on u_{i+1}
    double diag = 0.0;       // coefficient on u_i
    std::vector<double> down;  // coefficients on u_{i-1}, u_{i-2}, ...
    double transport_distance = 0.0;
    double heat_distance = 0.0;
};

struct StencilReport {
    double dx = 0.0;
    double dt = 0.0;
    std::vector<StencilRow> rows;
};

StencilReport limit_stencil_report(const std::vector<double>& alphas, double dx,
                                   double dt);

/// FD solution against the Dirichlet convolution solution at matched
/// times under simultaneous refinement with beta held fixed.
struct CrossValidation {
    double t = 0.0;
    std::vector<double> dxs;
    std::vector<double> l1_errors;
    std::vector<double> linf_errors;
    double order = 0.0;  // empirical L1 order from the last two levels
    std::vector<std::string> warnings;
};

CrossValidation cross_validate(const SchemeConfig& config,
                               const KernelModel& model,
                               const InitialData& data, int levels = 3);

}  // namespace fracline
