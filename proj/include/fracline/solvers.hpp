#pragma once

#include <string>
#include <vector>

#include "fracline/grid.hpp"
#include "fracline/kernel.hpp"

namespace fracline {

enum class Extension { odd, even };
enum class BoundaryKind { dirichlet, neumann };
enum class Provenance { w1, w2, w3, w4, fd };

/// Compactly supported initial datum g on a uniform grid, together with
/// the reflection used to extend it to the whole line.
struct InitialData {
    GridFunction g;
    Extension extension = Extension::odd;

    InitialData(GridFunction g_, Extension ext);
    double support_length() const { return g.x(*g.support_end); }
    double norm(double p) const;     // trapezoid L^p norm, p >= 1 or inf
    double deriv_l1() const;         // exact total variation of piecewise-linear g
};

/// Space-time forcing samples on a uniform grid, zero outside the sampled
/// rectangle.  f[k][i] is the value at (i*hx, k*ht).
struct ForcingData {
    double hx = 1.0, ht = 1.0;
    std::vector<std::vector<double>> f;

    ForcingData(double hx_, double ht_, std::vector<std::vector<double>> samples);
    double eval(double x, double t) const;  // bilinear, 0 outside
    double sup() const;
};

struct SolutionField {
    std::vector<double> x_grid;
    std::vector<double> t_grid;
    std::vector<std::vector<double>> values;  // values[k][i] at (x_i, t_k)
    Provenance provenance = Provenance::w1;
    BoundaryKind boundary = BoundaryKind::dirichlet;
    std::vector<std::string> warnings;

    double slice_norm(std::size_t k, double p) const;
};

/// w1(x,t) = int_0^inf (E(x-y,t) - E(x+y,t)) g(y) dy (odd extension).
SolutionField dirichlet_solve(const KernelModel& model, const InitialData& data,
                              const std::vector<double>& x_grid,
                              const std::vector<double>& t_grid);

/// w2, same with the plus sign (even extension).
SolutionField neumann_solve(const KernelModel& model, const InitialData& data,
                            const std::vector<double>& x_grid,
                            const std::vector<double>& t_grid);

/// Duhamel terms w3 (dirichlet) / w4 (neumann):
/// int_0^t int_0^inf (E(x-y,t-s) -/+ E(x+y,t-s)) f(y,s) dy ds.
SolutionField duhamel_solve(const KernelModel& model, const ForcingData& forcing,
                            BoundaryKind kind,
                            const std::vector<double>& x_grid,
                            const std::vector<double>& t_grid,
                            int time_panels = 64);

struct LpReport {
    double p = 2.0;
    std::vector<double> slice_norms;
    double bound = 0.0;  // 2 ||g||_p, or ||g||_inf for p = inf
    bool ok = false;
};
LpReport lp_bound_check(const SolutionField& field, const InitialData& data,
                        double p);

struct InitialLimitReport {
    std::vector<double> ts;
    std::vector<double> norms;  // ||w(.,t) - g||_p on g's grid
    double floor = 0.0;         // smoothing-scale estimate at the final t
    bool monotone = false;
    bool ok = false;
};
InitialLimitReport initial_limit_check(const KernelModel& model,
                                       const InitialData& data, double p);

struct DecayReport {
    double slope = 0.0;       // fit of log sup_x |w| vs log t
    double c_estimate = 0.0;  // max_t sup |w| t^{1/(1+a)} / ||g||_1
    bool bound_ok = false;    // sup |w(.,t)| <= a0 t^{-1/(1+a)} ||g||_1
};
DecayReport decay_study(const KernelModel& model, const InitialData& data,
                        const std::vector<double>& t_list);

struct EnergyReport {
    std::vector<double> energies;  // ||w(.,t)||_2^2 per slice
    bool ok = false;               // non-increasing within 1e-6 * initial
};
EnergyReport energy_monotonicity_check(const SolutionField& field);

struct SpeedReport {
    std::vector<double> probe_x;
    std::vector<double> probe_t;
    std::vector<std::vector<double>> values;  // w2 at (x,t), [t][x]
    bool all_positive = false;
};
/// Probes w2 at x in {2R, 5R, 10R}, t in {0.01, 0.1, 1} for data supported
/// in (0, R).
SpeedReport infinite_speed_check(const KernelModel& model,
                                 const InitialData& data, double support_r);

struct AlphaContinuityReport {
    std::vector<double> alphas;
    std::vector<double> l1_distances;  // ||w^alpha - w^{alpha=1}||_1
    bool monotone = false;
};
AlphaContinuityReport alpha_continuity_study(const InitialData& data,
                                             const std::vector<double>& alphas,
                                             const std::vector<double>& x_grid,
                                             double t);

}  // namespace fracline
