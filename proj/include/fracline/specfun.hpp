#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "fracline/grid.hpp"

namespace fracline {

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, 9 terms).  Relative error below
/// 1e-13 on [1e-3, 1e4].  Throws std::domain_error for x <= 0.
double log_gamma(double x);

/// Parameters (beta, m, l) of the three-parameter generalized
/// Mittag-Leffler function E_{beta,m,l}.
struct MLParams {
    double beta;
    double m;
    double l;

    MLParams(double beta_, double m_, double l_);
};

/// Cached series coefficients c_0..c_N of E_{beta,m,l}; each gamma ratio is
/// accumulated in log space so intermediate Gamma values cannot overflow.
struct CoefficientTable {
    MLParams params;
    std::vector<double> coeffs;  // c_0 = 1 first
    bool computed_in_log_space = true;
};

CoefficientTable ml_coefficients(const MLParams& params, int count);

/// Truncated series sum of E_{beta,m,l}(z) with compensated summation.
/// Throws std::runtime_error when the alternating-series cancellation
/// exceeds the double-precision budget (max term > 1e12 * |result|).
double ml_eval(const MLParams& params, double z, double tol = 1e-15);

/// Kernel profile Phi(x) = E_{alpha,1+1/alpha,1/alpha}(-x^{1+alpha}/(1+alpha))
/// by direct series summation.  Valid for x below the series crossover.
double phi_series(const FractionalOrder& alpha, double x);

/// Tabulated kernel profile on an increasing grid starting at 0.
struct PhiProfile {
    double alpha;
    std::vector<double> grid;
    std::vector<double> values;
    double crossover_point;
};

/// Solves the second-kind Volterra reformulation
///   Phi(x) = 1 - (1/Gamma(a)) int_0^x (x-z)^{a-1} z Phi(z)/(1+a) dz
/// on a uniform grid of n_nodes+1 points by product trapezoidal
/// integration, implicit in the newest node.  Stable for arbitrary x_max.
PhiProfile phi_volterra(const FractionalOrder& alpha, double x_max, int n_nodes);

/// Per-alpha evaluator for Phi on [0, inf): series below the crossover,
/// product-integration Volterra continuation on a graded grid beyond it,
/// with monotone cubic interpolation between Volterra nodes.  The grid is
/// extended lazily (thread safe) when larger arguments are requested.
class PhiFunction {
public:
    struct Resolution {
        int n_uniform = 2048;    // nodes on the series-seeded segment [0, x_c]
        double ratio = 1.01;     // geometric spacing factor beyond x_c
    };

    explicit PhiFunction(const FractionalOrder& alpha)
        : PhiFunction(alpha, Resolution{}) {}
    PhiFunction(const FractionalOrder& alpha, Resolution res);

    double alpha() const { return alpha_; }
    /// Crossover abscissa between the series and the Volterra continuation.
    double crossover() const { return crossover_x_; }
    /// Series-domain bound in z = x^{1+alpha}/(1+alpha).
    double crossover_z() const { return crossover_z_; }

    double operator()(double x) const;

    /// int_0^R Phi, composite Gauss-Legendre on the series segment and
    /// Hermite-cubic cells on the Volterra segment.
    double integral_to(double r) const;

    /// Far-field amplitude estimate A in Phi ~ A x^{-(1+alpha)}, measured
    /// at the largest solved nodes at or beyond x.
    double tail_amplitude(double x) const;

    /// Grow the solved grid to cover [0, x].
    void ensure(double x) const;

    /// Snapshot of the solved grid as an immutable profile.
    PhiProfile profile() const;

private:
    double series_at(double x) const;
    void extend_locked(double x) const;
    void rebuild_slopes_locked() const;
    double interpolate_locked(double x) const;

    double alpha_;
    double crossover_z_ = 0.0;
    double crossover_x_ = 0.0;
    double ratio_;
    std::vector<double> coeff_;       // signed-series magnitudes b_n
    mutable std::vector<double> grid_;
    mutable std::vector<double> values_;
    mutable std::vector<double> slopes_;  // monotone (Fritsch-Carlson) slopes
    std::size_t n_seeded_ = 0;            // nodes filled from the series
    mutable std::mutex mu_;
};

/// Cached profile dispatch: series below the crossover, Volterra
/// continuation above it.  Thread safe; one shared evaluator per alpha.
double phi(const FractionalOrder& alpha, double x);
std::shared_ptr<const PhiFunction> phi_cached(const FractionalOrder& alpha);

}  // namespace fracline
