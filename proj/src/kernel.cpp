#include "fracline/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace fracline {

namespace {

constexpr double kGl8X[8] = {-0.9602898564975363, -0.7966664774136267,
                             -0.5255324099163290, -0.1834346424956498,
                             0.1834346424956498,  0.5255324099163290,
                             0.7966664774136267,  0.9602898564975363};
constexpr double kGl8W[8] = {0.1012285362903763, 0.2223810344533745,
                             0.3137066458778873, 0.3626837833783620,
                             0.3626837833783620, 0.3137066458778873,
                             0.2223810344533745, 0.1012285362903763};

// int_R^inf Phi from the algebraic far field Phi ~ A x^{-(1+a)}.
double tail_integral(const PhiFunction& ph, double r) {
    return ph.tail_amplitude(r) * std::pow(r, -ph.alpha()) / ph.alpha();
}

// int_0^inf Phi at one profile resolution: R doubles until the correction
// stabilizes.
double half_line_integral(const PhiFunction& ph, double tol) {
    double r = std::max(4.0 * ph.crossover(), 1024.0);
    double prev = ph.integral_to(r) + tail_integral(ph, r);
    double diff_prev = 0.0;
    for (int k = 0; k < 20; ++k) {
        r *= 2.0;
        const double cur = ph.integral_to(r) + tail_integral(ph, r);
        const double diff = cur - prev;
        if (std::abs(diff) < tol) {
            // one geometric-acceleration step squeezes out the remaining
            // algebraic correction
            const double q = diff_prev != 0.0 ? diff / diff_prev : 0.0;
            if (q > 0.0 && q < 0.95) return cur + diff * q / (1.0 - q);
            return cur;
        }
        diff_prev = diff;
        prev = cur;
    }
    throw std::runtime_error(
        "normalization_a0: tail did not converge after 20 doublings");
}

}  // namespace

double normalization_a0(const FractionalOrder& alpha, double tol) {
    if (!(tol >= 1e-10))
        throw std::domain_error("normalization_a0: tol must be >= 1e-10");
    static std::mutex mu;
    static std::map<std::pair<double, double>, double> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({alpha.value(), tol});
        if (it != cache.end()) return it->second;
    }
    PhiFunction coarse(alpha, PhiFunction::Resolution{2048, 1.01});
    PhiFunction fine(alpha, PhiFunction::Resolution{4096, 1.005});
    const double ic = half_line_integral(coarse, tol);
    const double if_ = half_line_integral(fine, tol);
    // discretization error scales with the square of the cell sizes, which
    // the fine profile halves throughout
    const double integral = (4.0 * if_ - ic) / 3.0;
    const double a0 = 1.0 / (2.0 * integral);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_pair(alpha.value(), tol), a0);
    return a0;
}

KernelModel::KernelModel(const FractionalOrder& alpha, double a0_tolerance)
    : alpha_(alpha),
      a0_(normalization_a0(alpha, std::max(a0_tolerance, 1e-10))),
      a0_tol_(a0_tolerance),
      phi_(phi_cached(alpha)) {
    if (!(a0_tolerance > 0.0))
        throw std::domain_error("KernelModel: tolerance must be positive");
}

double KernelModel::width(double t) const {
    return std::exp(std::log(t) / (1.0 + alpha_.value()));
}

double kernel_eval(const KernelModel& model, double x, double t) {
    if (t <= 0.0) return 0.0;
    const double w = model.width(t);
    return model.a0() / w * (*model.profile_ptr())(std::abs(x) / w);
}

double mass(const KernelModel& model, double t, int resolution) {
    if (!(t > 0.0)) throw std::domain_error("mass: t must be positive");
    if (resolution < 16) throw std::invalid_argument("mass: resolution too low");
    const PhiFunction& ph = model.profile();
    const double w = model.width(t);
    const double xc = ph.crossover();
    const double y_max = std::max(8.0 * xc, 16384.0);
    // panel edges in the similarity variable y = x/w, so the quadrature
    // resolves the kernel at every t equally well
    std::vector<double> edges;
    for (int i = 0; i <= resolution; ++i)
        edges.push_back(xc * static_cast<double>(i) / resolution);
    while (edges.back() < y_max) edges.push_back(edges.back() * 1.02);
    double acc = 0.0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double half = 0.5 * (edges[p + 1] - edges[p]) * w;
        const double mid = 0.5 * (edges[p + 1] + edges[p]) * w;
        for (int q = 0; q < 8; ++q)
            acc += kGl8W[q] * half * kernel_eval(model, mid + half * kGl8X[q], t);
    }
    return acc + model.a0() * tail_integral(ph, edges.back());
}

double self_similarity_residual(const KernelModel& model, double lambda,
                                const SampleSet& samples) {
    if (!(lambda > 0.0))
        throw std::domain_error("self_similarity_residual: lambda must be positive");
    const double mu = std::exp(std::log(lambda) / (1.0 + model.alpha().value()));
    double residual = 0.0;
    for (double t : samples.ts)
        for (double x : samples.xs) {
            const double lhs = mu * kernel_eval(model, mu * x, lambda * t);
            residual = std::max(residual, std::abs(lhs - kernel_eval(model, x, t)));
        }
    return residual;
}

}  // namespace fracline
