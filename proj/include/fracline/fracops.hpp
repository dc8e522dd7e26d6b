#pragma once

#include <cstddef>

#include "fracline/grid.hpp"

namespace fracline {

/// Riemann-Liouville fractional integral (I^a f)(x) at x = upto*h by
/// product-trapezoidal quadrature (exact on piecewise-linear f).
double frac_integral(const GridFunction& f, const FractionalOrder& alpha,
                     std::size_t upto);

/// Caputo derivative D^a_C f at x = upto*h, L1 scheme: piecewise-constant
/// f' per cell, exact integration of the singular weight.  Order h^{2-a}
/// for smooth f.  At alpha = 1 degenerates to a backward difference.
double caputo(const GridFunction& f, const FractionalOrder& alpha,
              std::size_t upto);

/// Closed form D^a_C x^b = Gamma(b+1)/Gamma(b+1-a) x^{b-a}; quadrature oracle.
double caputo_monomial(double beta_exp, const FractionalOrder& alpha, double x);

/// Riemann-Liouville derivative via D^a_RL f = D^a_C f + x^{-a} f(0)/Gamma(1-a).
double riemann_liouville(const GridFunction& f, const FractionalOrder& alpha,
                         std::size_t upto);

struct CaputoDerivResult {
    double value;
    /// set when the first-cell Taylor remainder dwarfs its neighbor (the
    /// sampled function is not C^2 at the evaluation point)
    bool smoothness_warning;
};

/// d/dx D^a_C f at x = upto*h through the (a+1)-singular integral
/// representation; the first cell's quadratic Taylor remainder is
/// integrated analytically.  Requires upto >= 2 and samples of a C^2
/// function.  At alpha = 1 returns the central second difference.
CaputoDerivResult caputo_deriv_x_checked(const GridFunction& f,
                                         const FractionalOrder& alpha,
                                         std::size_t upto);
double caputo_deriv_x(const GridFunction& f, const FractionalOrder& alpha,
                      std::size_t upto);

struct ScalingReport {
    /// max relative discrepancy of D^a f_lambda(x) = lambda^a (D^a f)(lambda x)
    double caputo_discrepancy;
    /// max relative discrepancy of (D^a v_mu)_x(x) = lambda (D^a f)_y(mu x),
    /// mu = lambda^{1/(1+a)}
    double deriv_discrepancy;
};

/// Checks both scaling identities on the common part of the grid.
ScalingReport scaling_check(const GridFunction& f, const FractionalOrder& alpha,
                            double lambda);

/// Cubic interpolation of a sampled grid function (monotone slopes).
double grid_interp(const GridFunction& f, double x);

}  // namespace fracline
