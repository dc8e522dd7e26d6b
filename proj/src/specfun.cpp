#include "fracline/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <quadmath.h>

namespace fracline {

namespace {

// Lanczos approximation, g = 7, 9 terms (Godfrey coefficients).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln(2*pi)/2

struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

// Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGl4X[4] = {-0.8611363115940526, -0.3399810435848563,
                             0.3399810435848563, 0.8611363115940526};
constexpr double kGl4W[4] = {0.3478548451374538, 0.6521451548625461,
                             0.6521451548625461, 0.3478548451374538};
constexpr double kGl8X[8] = {-0.9602898564975363, -0.7966664774136267,
                             -0.5255324099163290, -0.1834346424956498,
                             0.1834346424956498,  0.5255324099163290,
                             0.7966664774136267,  0.9602898564975363};
constexpr double kGl8W[8] = {0.1012285362903763, 0.2223810344533745,
                             0.3137066458778873, 0.3626837833783620,
                             0.3626837833783620, 0.3137066458778873,
                             0.2223810344533745, 0.1012285362903763};

// b^s - a^s without cancellation for 0 <= a < b, s > 0.
double pow_diff(double s, double a, double b) {
    if (a <= 0.0) return std::pow(b, s);
    return std::pow(a, s) * std::expm1(s * std::log1p((b - a) / a));
}

// Solves Phi on grid[first..] of the Volterra reformulation given the
// already known values grid[0..first-1].  Product trapezoidal rule with
// the exact weakly singular weight, implicit in the newest node.
void volterra_continue(double a, const std::vector<double>& grid,
                       std::vector<double>& val, std::size_t first) {
    const double ga = std::exp(log_gamma(a));
    const double ap1 = 1.0 + a;
    std::vector<double> psi(grid.size());  // z Phi(z)/(1+a)
    for (std::size_t j = 0; j < first; ++j) psi[j] = grid[j] * val[j] / ap1;
    for (std::size_t i = first; i < grid.size(); ++i) {
        const double xi = grid[i];
        KahanSum known;
        double wr_last = 0.0;
        for (std::size_t j = 0; j + 1 <= i; ++j) {
            const double b = xi - grid[j];
            const double aa = xi - grid[j + 1];
            const double h = grid[j + 1] - grid[j];
            const double m0 = pow_diff(a, aa, b) / a;
            const double p1 = pow_diff(a + 1.0, aa, b) / (a + 1.0);
            const double wl = (p1 - aa * m0) / h;
            const double wr = (b * m0 - p1) / h;
            known.add(wl * psi[j]);
            if (j + 1 < i)
                known.add(wr * psi[j + 1]);
            else
                wr_last = wr;
        }
        const double denom = 1.0 + wr_last * xi / (ap1 * ga);
        if (!(denom > 0.0))
            throw std::runtime_error("volterra: implicit step lost positivity");
        val[i] = (1.0 - known.value() / ga) / denom;
        psi[i] = xi * val[i] / ap1;
    }
}

// Fritsch-Carlson monotone slopes on a non-uniform grid.
std::vector<double> monotone_slopes(const std::vector<double>& x,
                                    const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> m(n, 0.0);
    if (n < 2) return m;
    std::vector<double> d(n - 1), h(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        h[k] = x[k + 1] - x[k];
        d[k] = (y[k + 1] - y[k]) / h[k];
    }
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (d[k - 1] * d[k] <= 0.0) {
            m[k] = 0.0;
        } else {
            const double w1 = 2.0 * h[k] + h[k - 1];
            const double w2 = h[k] + 2.0 * h[k - 1];
            m[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
        }
    }
    return m;
}

double hermite_eval(double x0, double x1, double y0, double y1, double m0,
                    double m1, double x) {
    const double h = x1 - x0;
    const double t = (x - x0) / h;
    const double t2 = t * t, t3 = t2 * t;
    return y0 * (2 * t3 - 3 * t2 + 1) + h * m0 * (t3 - 2 * t2 + t) +
           y1 * (-2 * t3 + 3 * t2) + h * m1 * (t3 - t2);
}

double hermite_cell_integral(double h, double y0, double y1, double m0,
                             double m1) {
    return h * (y0 + y1) / 2.0 + h * h * (m0 - m1) / 12.0;
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
    if (x < 0.5) {
        // reflection keeps the Lanczos argument away from 0
        return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double acc = kLanczos[0];
    for (int k = 1; k < 9; ++k) acc += kLanczos[k] / (z + k);
    const double t = z + kLanczosG + 0.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(acc);
}

MLParams::MLParams(double beta_, double m_, double l_) : beta(beta_), m(m_), l(l_) {
    if (!(beta > 0.0)) throw std::domain_error("MLParams: beta must be positive");
    if (!(m > 0.0)) throw std::domain_error("MLParams: m must be positive");
    // -beta(jm + l) may not be a positive integer for any integer j >= 0;
    // only j with jm + l < 0 can violate this.
    for (int j = 0; m * j + l < 0.0; ++j) {
        const double v = -beta * (m * j + l);
        if (v >= 0.5 && std::abs(v - std::round(v)) < 1e-12)
            throw std::domain_error("MLParams: -beta(jm+l) hits a positive integer");
    }
}

CoefficientTable ml_coefficients(const MLParams& params, int count) {
    if (count < 0) throw std::invalid_argument("ml_coefficients: count < 0");
    CoefficientTable table{params, {}, true};
    table.coeffs.reserve(static_cast<std::size_t>(count) + 1);
    double log_c = 0.0;
    table.coeffs.push_back(1.0);
    for (int n = 0; n < count; ++n) {
        const double s0 = params.beta * (n * params.m + params.l) + 1.0;
        const double s1 = params.beta * (n * params.m + params.l + 1.0) + 1.0;
        log_c += log_gamma(s0) - log_gamma(s1);
        table.coeffs.push_back(std::exp(log_c));
    }
    return table;
}

double ml_eval(const MLParams& params, double z, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("ml_eval: tol must be positive");
    if (z == 0.0) return 1.0;
    // The alternating sums lose |max term / result| digits to cancellation;
    // the accumulator is binary128, so the usable budget is the binary128
    // analogue of the 1e12 double-precision budget.
    constexpr double kCancelBudget = 1e19;
    __float128 sum = 1.0q;
    __float128 term = 1.0q;
    const __float128 zq = z;
    double max_term = 1.0;
    double log_term = 0.0;
    constexpr int kMaxTerms = 200000;
    for (int n = 0;; ++n) {
        if (n >= kMaxTerms)
            throw std::runtime_error("ml_eval: series did not converge");
        const __float128 s0 = params.beta * (static_cast<__float128>(n) * params.m +
                                             params.l) + 1.0q;
        const __float128 s1 = s0 + static_cast<__float128>(params.beta);
        const __float128 ratio = expq(lgammaq(s0) - lgammaq(s1)) * zq;
        term *= ratio;
        sum += term;
        const double aterm = static_cast<double>(fabsq(term));
        max_term = std::max(max_term, aterm);
        log_term += static_cast<double>(logq(fabsq(ratio)));
        if (log_term > 4000.0)
            throw std::runtime_error("ml_eval: cancellation exceeds precision budget");
        // geometric tail bound on the successive-term ratio
        const double rho = static_cast<double>(fabsq(ratio));
        if (rho < 1.0) {
            const double tail = aterm * rho / (1.0 - rho);
            if (tail <= tol * std::max(std::abs(static_cast<double>(sum)), 1e-300))
                break;
        }
    }
    const double result = static_cast<double>(sum);
    if (max_term > kCancelBudget * std::abs(result))
        throw std::runtime_error("ml_eval: cancellation exceeds precision budget");
    return result;
}

double phi_series(const FractionalOrder& alpha, double x) {
    if (x < 0.0) throw std::domain_error("phi_series: x must be nonnegative");
    if (x == 0.0) return 1.0;
    const double a = alpha.value();
    const MLParams params(a, 1.0 + 1.0 / a, 1.0 / a);
    const double z = -std::pow(x, 1.0 + a) / (1.0 + a);
    return ml_eval(params, z, 1e-15);
}

PhiProfile phi_volterra(const FractionalOrder& alpha, double x_max, int n_nodes) {
    if (n_nodes < 16) throw std::invalid_argument("phi_volterra: n_nodes < 16");
    if (!(x_max > 0.0)) throw std::invalid_argument("phi_volterra: x_max <= 0");
    PhiProfile prof;
    prof.alpha = alpha.value();
    prof.crossover_point = 0.0;  // pure Volterra run, no series segment
    prof.grid.resize(static_cast<std::size_t>(n_nodes) + 1);
    prof.values.assign(prof.grid.size(), 0.0);
    const double h = x_max / n_nodes;
    for (std::size_t i = 0; i < prof.grid.size(); ++i)
        prof.grid[i] = static_cast<double>(i) * h;
    prof.values[0] = 1.0;
    volterra_continue(alpha.value(), prof.grid, prof.values, 1);
    return prof;
}

// ---------------------------------------------------------------------------
// PhiFunction

PhiFunction::PhiFunction(const FractionalOrder& alpha, Resolution res)
    : alpha_(alpha.value()), ratio_(res.ratio) {
    const double a = alpha_;
    const double ap1 = 1.0 + a;
    // delta_n = log b_{n+1} - log b_n, all negative
    auto delta = [a, ap1](int n) {
        const double s = ap1 * n + 2.0;
        return log_gamma(s) - log_gamma(s + a);
    };
    // Largest log term of the alternating series at argument z.
    auto max_term_log = [&](double z) {
        const double lz = std::log(z);
        double lt = 0.0, peak = 0.0;
        for (int n = 0; n < 500000; ++n) {
            const double inc = delta(n) + lz;
            lt += inc;
            peak = std::max(peak, lt);
            if (peak > 16.0) break;          // budget exceeded, no need to go on
            if (inc < 0.0 && lt < peak - 30.0) break;  // well past the peak
        }
        return peak;
    };
    // Series-domain bound: keep the largest term below ~e^{6.9} (1e3) so the
    // alternating sum retains at least 1e-13 absolute accuracy; capped at the
    // z = 25 default.
    constexpr double kBudget = 6.907755;  // log(1e3)
    double hi = 25.0;
    if (max_term_log(hi) <= kBudget) {
        crossover_z_ = hi;
    } else {
        double lo = 0.25;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (max_term_log(mid) <= kBudget ? lo : hi) = mid;
        }
        crossover_z_ = lo;
    }
    crossover_x_ = std::pow(crossover_z_ * ap1, 1.0 / ap1);

    // coefficient magnitudes b_n, kept until terms at z* are negligible
    const double lzc = std::log(crossover_z_);
    double lb = 0.0, lt = 0.0;
    coeff_.push_back(1.0);
    for (int n = 0; n < 200000; ++n) {
        const double d = delta(n);
        lb += d;
        lt += d + lzc;
        coeff_.push_back(std::exp(lb));
        if (d + lzc < 0.0 && lt < -45.0) break;
    }

    // series-seeded uniform segment [0, x_c]
    const int nu = std::max(res.n_uniform, 64);
    grid_.resize(static_cast<std::size_t>(nu) + 1);
    for (int i = 0; i <= nu; ++i) grid_[i] = crossover_x_ * i / nu;
    values_.resize(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) values_[i] = series_at(grid_[i]);
    n_seeded_ = grid_.size();

    extend_locked(std::max(4.0 * crossover_x_, 64.0));
}

double PhiFunction::series_at(double x) const {
    if (x <= 0.0) return 1.0;
    const double ap1 = 1.0 + alpha_;
    const double z = std::pow(x, ap1) / ap1;
    KahanSum sum;
    double zn = 1.0;
    double sgn = 1.0;
    sum.add(1.0);
    for (std::size_t n = 1; n < coeff_.size(); ++n) {
        zn *= z;
        sgn = -sgn;
        const double term = sgn * coeff_[n] * zn;
        sum.add(term);
        if (std::abs(term) < 1e-17 * std::abs(sum.value()) && n > 4) break;
    }
    return sum.value();
}

void PhiFunction::extend_locked(double x) const {
    const std::size_t old_n = grid_.size();
    double top = grid_.back();
    while (top < x) {
        top *= ratio_;
        grid_.push_back(top);
    }
    if (grid_.size() == old_n) return;
    values_.resize(grid_.size());
    volterra_continue(alpha_, grid_, values_, old_n);
    rebuild_slopes_locked();
}

void PhiFunction::rebuild_slopes_locked() const {
    slopes_ = monotone_slopes(grid_, values_);
}

double PhiFunction::interpolate_locked(double x) const {
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
    std::size_t k = static_cast<std::size_t>(it - grid_.begin());
    if (k == 0) return values_[0];
    if (k >= grid_.size()) k = grid_.size() - 1;
    return hermite_eval(grid_[k - 1], grid_[k], values_[k - 1], values_[k],
                        slopes_[k - 1], slopes_[k], x);
}

double PhiFunction::operator()(double x) const {
    if (x < 0.0) throw std::domain_error("PhiFunction: x must be nonnegative");
    if (x <= crossover_x_) return series_at(x);
    std::lock_guard<std::mutex> lock(mu_);
    if (x > grid_.back()) extend_locked(2.0 * x);
    return std::max(0.0, interpolate_locked(x));
}

void PhiFunction::ensure(double x) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (x > grid_.back()) extend_locked(x);
}

double PhiFunction::integral_to(double r) const {
    if (!(r >= 0.0)) throw std::domain_error("integral_to: negative bound");
    std::lock_guard<std::mutex> lock(mu_);
    if (r > grid_.back()) extend_locked(2.0 * r);
    KahanSum acc;
    // series segment: composite 8-point Gauss-Legendre, series evaluations
    const double xs_end = std::min(r, crossover_x_);
    {
        const std::size_t cells = n_seeded_ - 1;
        const double h = crossover_x_ / cells;
        const std::size_t full = static_cast<std::size_t>(xs_end / h);
        for (std::size_t c = 0; c < full; ++c) {
            const double mid = (c + 0.5) * h, half = 0.5 * h;
            for (int q = 0; q < 8; ++q)
                acc.add(kGl8W[q] * half * series_at(mid + half * kGl8X[q]));
        }
        const double lo = full * h;
        if (xs_end > lo) {
            const double half = 0.5 * (xs_end - lo), mid = lo + half;
            for (int q = 0; q < 8; ++q)
                acc.add(kGl8W[q] * half * series_at(mid + half * kGl8X[q]));
        }
        if (r <= crossover_x_) return acc.value();
    }
    // Volterra segment: Hermite cells
    for (std::size_t k = n_seeded_ - 1; k + 1 < grid_.size() && grid_[k] < r; ++k) {
        const double x0 = grid_[k], x1 = grid_[k + 1];
        if (x1 <= r) {
            acc.add(hermite_cell_integral(x1 - x0, values_[k], values_[k + 1],
                                          slopes_[k], slopes_[k + 1]));
        } else {
            // partial cell: GL4 on the Hermite interpolant
            const double half = 0.5 * (r - x0), mid = x0 + half;
            for (int q = 0; q < 4; ++q)
                acc.add(kGl4W[q] * half *
                        hermite_eval(x0, x1, values_[k], values_[k + 1], slopes_[k],
                                     slopes_[k + 1], mid + half * kGl4X[q]));
            break;
        }
    }
    return acc.value();
}

double PhiFunction::tail_amplitude(double x) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (x > grid_.back()) extend_locked(x);
    auto it = std::lower_bound(grid_.begin(), grid_.end(), x);
    std::size_t k = static_cast<std::size_t>(it - grid_.begin());
    k = std::min(k, grid_.size() - 5);
    double acc = 0.0;
    for (std::size_t j = k; j < k + 5; ++j)
        acc += std::pow(grid_[j], 1.0 + alpha_) * values_[j];
    return acc / 5.0;
}

PhiProfile PhiFunction::profile() const {
    std::lock_guard<std::mutex> lock(mu_);
    return PhiProfile{alpha_, grid_, values_, crossover_x_};
}

std::shared_ptr<const PhiFunction> phi_cached(const FractionalOrder& alpha) {
    static std::mutex cache_mu;
    static std::map<double, std::shared_ptr<const PhiFunction>> cache;
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = cache.find(alpha.value());
    if (it != cache.end()) return it->second;
    auto fn = std::make_shared<const PhiFunction>(alpha);
    cache.emplace(alpha.value(), fn);
    return fn;
}

double phi(const FractionalOrder& alpha, double x) {
    return (*phi_cached(alpha))(x);
}

}  // namespace fracline
