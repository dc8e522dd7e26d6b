#pragma once

#include <memory>
#include <vector>

#include "fracline/grid.hpp"
#include "fracline/specfun.hpp"

namespace fracline {

/// Normalization constant a0 with 1/a0 = 2 int_0^inf Phi.  The half-line
/// integral combines panel quadrature on [0, R] with an algebraic tail
/// estimate, R doubling until the correction stabilizes below tol, and a
/// two-resolution Richardson step in the profile discretization.
/// Throws std::runtime_error if 20 doublings do not converge.
double normalization_a0(const FractionalOrder& alpha, double tol = 1e-8);

/// Fundamental solution E(x,t) = a0 t^{-1/(1+a)} Phi(|x| t^{-1/(1+a)}),
/// extended evenly in x and by zero to t <= 0.
class KernelModel {
public:
    explicit KernelModel(const FractionalOrder& alpha,
                         double a0_tolerance = 1e-8);

    const FractionalOrder& alpha() const { return alpha_; }
    double a0() const { return a0_; }
    double a0_tolerance() const { return a0_tol_; }
    const PhiFunction& profile() const { return *phi_; }
    std::shared_ptr<const PhiFunction> profile_ptr() const { return phi_; }

    /// Self-similarity exponent gamma = -1/(1+a) of t in E.
    double gamma() const { return -1.0 / (1.0 + alpha_.value()); }
    /// Similarity width t^{1/(1+a)}, evaluated in log space.
    double width(double t) const;

private:
    FractionalOrder alpha_;
    double a0_;
    double a0_tol_;
    std::shared_ptr<const PhiFunction> phi_;
};

/// E(x,t); total function, 0 for t <= 0.
double kernel_eval(const KernelModel& model, double x, double t);

/// Numerical int_0^inf E(x,t) dx; equals 1/2 up to quadrature and a0
/// tolerance, independently of t.
double mass(const KernelModel& model, double t, int resolution = 2048);

struct SampleSet {
    std::vector<double> xs;
    std::vector<double> ts;
};

/// max over the sample grid of
/// |lambda^{1/(1+a)} E(lambda^{1/(1+a)} x, lambda t) - E(x,t)|.
double self_similarity_residual(const KernelModel& model, double lambda,
                                const SampleSet& samples);

}  // namespace fracline
