#include "fracline/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace fracline {

namespace {

constexpr double kGl4X[4] = {-0.8611363115940526, -0.3399810435848563,
                             0.3399810435848563, 0.8611363115940526};
constexpr double kGl4W[4] = {0.3478548451374538, 0.6521451548625461,
                             0.6521451548625461, 0.3478548451374538};

int thread_budget() {
    if (const char* env = std::getenv("FRACLINE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v <= 0)
            throw std::runtime_error("FRACLINE_THREADS must be a positive integer");
        return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const int budget = std::min<std::size_t>(thread_budget(), n);
    if (budget <= 1 || n < 4) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < budget; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += budget) fn(i);
        });
    for (auto& th : pool) th.join();
}

// piecewise-linear value of g at y >= 0
double g_lin(const GridFunction& g, double y) {
    const double s = y / g.h;
    if (s <= 0.0) return g.values.front();
    const auto k = static_cast<std::size_t>(s);
    if (k + 1 >= g.values.size()) return 0.0;
    const double t = s - static_cast<double>(k);
    return g.values[k] * (1.0 - t) + g.values[k + 1] * t;
}

double trapezoid_p(const std::vector<double>& xs, const std::vector<double>& vs,
                   double p) {
    if (p == std::numeric_limits<double>::infinity()) {
        double m = 0.0;
        for (double v : vs) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        acc += 0.5 * (xs[i + 1] - xs[i]) *
               (std::pow(std::abs(vs[i]), p) + std::pow(std::abs(vs[i + 1]), p));
    return std::pow(acc, 1.0 / p);
}

// int over one panel [lo, hi] of (E(x-y,t) -/+ E(x+y,t)) g(y), 4-point
// Gauss-Legendre, g piecewise linear
double panel_integral(const KernelModel& model, const GridFunction& g,
                      double sign, double x, double t, double lo, double hi) {
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    double acc = 0.0;
    for (int q = 0; q < 4; ++q) {
        const double y = mid + half * kGl4X[q];
        acc += kGl4W[q] * half * g_lin(g, y) *
               (kernel_eval(model, x - y, t) + sign * kernel_eval(model, x + y, t));
    }
    return acc;
}

double convolve_point(const KernelModel& model, const GridFunction& g,
                      std::size_t support, double sign, double x, double t) {
    double acc = 0.0;
    for (std::size_t j = 0; j < support; ++j) {
        const double lo = g.x(j), hi = g.x(j + 1);
        if (x > lo && x < hi) {
            // E(x-y,t) is only C^{1+alpha} at y = x; split the panel there
            acc += panel_integral(model, g, sign, x, t, lo, x);
            acc += panel_integral(model, g, sign, x, t, x, hi);
        } else {
            acc += panel_integral(model, g, sign, x, t, lo, hi);
        }
    }
    return acc;
}

SolutionField images_solve(const KernelModel& model, const InitialData& data,
                           const std::vector<double>& x_grid,
                           const std::vector<double>& t_grid, double sign) {
    for (double t : t_grid)
        if (!(t > 0.0))
            throw std::domain_error("solve: every output time must be positive");
    SolutionField out;
    out.x_grid = x_grid;
    out.t_grid = t_grid;
    out.provenance = sign < 0.0 ? Provenance::w1 : Provenance::w2;
    out.boundary = sign < 0.0 ? BoundaryKind::dirichlet : BoundaryKind::neumann;
    out.values.assign(t_grid.size(), std::vector<double>(x_grid.size(), 0.0));
    const std::size_t support = *data.g.support_end;
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const double t = t_grid[k];
        if (model.width(t) < 2.0 * data.g.h)
            out.warnings.push_back(
                "unresolved kernel: similarity width below two panels at t = " +
                std::to_string(t));
        auto& row = out.values[k];
        parallel_for(x_grid.size(), [&](std::size_t i) {
            row[i] = convolve_point(model, data.g, support, sign, x_grid[i], t);
        });
    }
    return out;
}

double linfit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

InitialData::InitialData(GridFunction g_, Extension ext)
    : g(std::move(g_)), extension(ext) {
    if (!g.support_end) g.support_end = g.detect_support();
    if (*g.support_end + 1 >= g.size())
        throw std::invalid_argument(
            "InitialData: support must end inside the grid");
}

double InitialData::norm(double p) const {
    std::vector<double> xs(g.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = g.x(i);
    return trapezoid_p(xs, g.values, p);
}

double InitialData::deriv_l1() const {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
        acc += std::abs(g.values[i + 1] - g.values[i]);
    return acc;
}

ForcingData::ForcingData(double hx_, double ht_,
                         std::vector<std::vector<double>> samples)
    : hx(hx_), ht(ht_), f(std::move(samples)) {
    if (!(hx > 0.0) || !(ht > 0.0))
        throw std::invalid_argument("ForcingData: spacings must be positive");
    if (f.empty() || f.front().empty())
        throw std::invalid_argument("ForcingData: empty samples");
    for (const auto& row : f)
        if (row.size() != f.front().size())
            throw std::invalid_argument("ForcingData: ragged samples");
}

double ForcingData::eval(double x, double t) const {
    const double sx = x / hx, st = t / ht;
    if (sx < 0.0 || st < 0.0) return 0.0;
    const auto i = static_cast<std::size_t>(sx);
    const auto k = static_cast<std::size_t>(st);
    if (i + 1 >= f.front().size() || k + 1 >= f.size()) return 0.0;
    const double u = sx - static_cast<double>(i);
    const double v = st - static_cast<double>(k);
    return f[k][i] * (1 - u) * (1 - v) + f[k][i + 1] * u * (1 - v) +
           f[k + 1][i] * (1 - u) * v + f[k + 1][i + 1] * u * v;
}

double ForcingData::sup() const {
    double m = 0.0;
    for (const auto& row : f)
        for (double v : row) m = std::max(m, std::abs(v));
    return m;
}

double SolutionField::slice_norm(std::size_t k, double p) const {
    return trapezoid_p(x_grid, values.at(k), p);
}

SolutionField dirichlet_solve(const KernelModel& model, const InitialData& data,
                              const std::vector<double>& x_grid,
                              const std::vector<double>& t_grid) {
    if (data.extension != Extension::odd)
        throw std::invalid_argument("dirichlet_solve: data must be odd-extended");
    return images_solve(model, data, x_grid, t_grid, -1.0);
}

SolutionField neumann_solve(const KernelModel& model, const InitialData& data,
                            const std::vector<double>& x_grid,
                            const std::vector<double>& t_grid) {
    if (data.extension != Extension::even)
        throw std::invalid_argument("neumann_solve: data must be even-extended");
    return images_solve(model, data, x_grid, t_grid, 1.0);
}

SolutionField duhamel_solve(const KernelModel& model, const ForcingData& forcing,
                            BoundaryKind kind,
                            const std::vector<double>& x_grid,
                            const std::vector<double>& t_grid,
                            int time_panels) {
    for (double t : t_grid)
        if (!(t > 0.0))
            throw std::domain_error("duhamel: every output time must be positive");
    if (time_panels < 4)
        throw std::invalid_argument("duhamel: too few time panels");
    const double sign = kind == BoundaryKind::dirichlet ? -1.0 : 1.0;
    const double ap1 = 1.0 + model.alpha().value();
    const double y_len = forcing.hx * static_cast<double>(forcing.f.front().size() - 1);
    const auto y_cells = forcing.f.front().size() - 1;
    SolutionField out;
    out.x_grid = x_grid;
    out.t_grid = t_grid;
    out.provenance = kind == BoundaryKind::dirichlet ? Provenance::w3 : Provenance::w4;
    out.boundary = kind;
    out.values.assign(t_grid.size(), std::vector<double>(x_grid.size(), 0.0));
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const double t = t_grid[k];
        auto& row = out.values[k];
        parallel_for(x_grid.size(), [&](std::size_t i) {
            const double x = x_grid[i];
            double acc = 0.0;
            // time integral in sigma = t - s, graded toward sigma = 0 where
            // the kernel width collapses
            for (int m = 0; m < time_panels; ++m) {
                const double s0 = t * std::pow(static_cast<double>(m) / time_panels, ap1);
                const double s1 =
                    t * std::pow(static_cast<double>(m + 1) / time_panels, ap1);
                const double sigma = 0.5 * (s0 + s1);
                const double s = t - sigma;
                double space = 0.0;
                for (std::size_t j = 0; j < y_cells; ++j) {
                    const double lo = forcing.hx * static_cast<double>(j);
                    const double hi = lo + forcing.hx;
                    auto seg = [&](double a, double b) {
                        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
                        double v = 0.0;
                        for (int q = 0; q < 4; ++q) {
                            const double y = mid + half * kGl4X[q];
                            v += kGl4W[q] * half * forcing.eval(y, s) *
                                 (kernel_eval(model, x - y, sigma) +
                                  sign * kernel_eval(model, x + y, sigma));
                        }
                        return v;
                    };
                    if (x > lo && x < hi)
                        space += seg(lo, x) + seg(x, hi);
                    else
                        space += seg(lo, hi);
                }
                acc += space * (s1 - s0);
            }
            row[i] = acc;
        });
        (void)y_len;
    }
    return out;
}

LpReport lp_bound_check(const SolutionField& field, const InitialData& data,
                        double p) {
    LpReport rep;
    rep.p = p;
    const double gp = data.norm(p);
    rep.bound = p == std::numeric_limits<double>::infinity() ? gp : 2.0 * gp;
    rep.ok = true;
    for (std::size_t k = 0; k < field.t_grid.size(); ++k) {
        rep.slice_norms.push_back(field.slice_norm(k, p));
        if (rep.slice_norms.back() > rep.bound * (1.0 + 1e-9) + 1e-12)
            rep.ok = false;
    }
    return rep;
}

InitialLimitReport initial_limit_check(const KernelModel& model,
                                       const InitialData& data, double p) {
    if (data.extension == Extension::odd && data.g.values.front() != 0.0)
        throw std::invalid_argument(
            "initial_limit_check: odd extension requires g(0) = 0");
    InitialLimitReport rep;
    rep.ts = {0.1, 0.01, 0.001};
    std::vector<double> xs(data.g.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = data.g.x(i);
    const SolutionField field =
        data.extension == Extension::odd
            ? dirichlet_solve(model, data, xs, rep.ts)
            : neumann_solve(model, data, xs, rep.ts);
    for (std::size_t k = 0; k < rep.ts.size(); ++k) {
        std::vector<double> diff(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
            diff[i] = field.values[k][i] - data.g.values[i];
        rep.norms.push_back(trapezoid_p(xs, diff, p));
    }
    rep.monotone = rep.norms[0] > rep.norms[1] && rep.norms[1] > rep.norms[2];
    const double w = model.width(rep.ts.back());
    const double a = model.alpha().value();
    double max_slope = 0.0;
    for (std::size_t i = 0; i + 1 < data.g.size(); ++i)
        max_slope = std::max(
            max_slope, std::abs(data.g.values[i + 1] - data.g.values[i]) / data.g.h);
    // heavy kernel tails make the smoothing scale w^alpha, not w
    rep.floor = std::max(std::pow(w, a) * data.norm(p), w * max_slope);
    rep.ok = rep.monotone && rep.norms.back() <= 10.0 * rep.floor;
    return rep;
}

DecayReport decay_study(const KernelModel& model, const InitialData& data,
                        const std::vector<double>& t_list) {
    if (t_list.size() < 3)
        throw std::invalid_argument("decay_study: need at least three times");
    InitialData even_data(data.g, Extension::even);
    const double t_max = *std::max_element(t_list.begin(), t_list.end());
    const double x_max = data.support_length() + 4.0 * model.width(t_max);
    std::vector<double> xs(513);
    for (std::size_t i = 0; i < xs.size(); ++i)
        xs[i] = x_max * static_cast<double>(i) / 512.0;
    const SolutionField field = neumann_solve(model, even_data, xs, t_list);
    const double g1 = data.norm(1.0);
    const double gamma = model.gamma();
    std::vector<double> lt, ls;
    DecayReport rep;
    rep.bound_ok = true;
    for (std::size_t k = 0; k < t_list.size(); ++k) {
        const double sup =
            field.slice_norm(k, std::numeric_limits<double>::infinity());
        lt.push_back(std::log(t_list[k]));
        ls.push_back(std::log(sup));
        rep.c_estimate =
            std::max(rep.c_estimate, sup * std::pow(t_list[k], -gamma) / g1);
        if (sup > 2.0 * model.a0() * std::pow(t_list[k], gamma) * g1 * (1.0 + 1e-6))
            rep.bound_ok = false;
    }
    rep.slope = linfit_slope(lt, ls);
    return rep;
}

EnergyReport energy_monotonicity_check(const SolutionField& field) {
    EnergyReport rep;
    for (std::size_t k = 0; k < field.t_grid.size(); ++k) {
        const double n2 = field.slice_norm(k, 2.0);
        rep.energies.push_back(n2 * n2);
    }
    rep.ok = true;
    for (std::size_t k = 0; k + 1 < rep.energies.size(); ++k)
        if (rep.energies[k + 1] > rep.energies[k] + 1e-6 * rep.energies.front())
            rep.ok = false;
    return rep;
}

SpeedReport infinite_speed_check(const KernelModel& model,
                                 const InitialData& data, double support_r) {
    if (!(support_r > 0.0))
        throw std::domain_error("infinite_speed_check: support radius must be positive");
    SpeedReport rep;
    rep.probe_x = {2.0 * support_r, 5.0 * support_r, 10.0 * support_r};
    rep.probe_t = {0.01, 0.1, 1.0};
    InitialData even_data(data.g, Extension::even);
    const std::size_t support = *even_data.g.support_end;
    rep.all_positive = true;
    for (double t : rep.probe_t) {
        rep.values.emplace_back();
        for (double x : rep.probe_x) {
            const double v = convolve_point(model, even_data.g, support, 1.0, x, t);
            rep.values.back().push_back(v);
            if (!(v > 0.0)) rep.all_positive = false;
        }
    }
    return rep;
}

AlphaContinuityReport alpha_continuity_study(const InitialData& data,
                                             const std::vector<double>& alphas,
                                             const std::vector<double>& x_grid,
                                             double t) {
    AlphaContinuityReport rep;
    rep.alphas = alphas;
    const std::vector<double> ts{t};
    auto solve_one = [&](const FractionalOrder& al) {
        KernelModel model(al);
        return data.extension == Extension::odd
                   ? dirichlet_solve(model, data, x_grid, ts)
                   : neumann_solve(model, data, x_grid, ts);
    };
    const SolutionField ref = solve_one(FractionalOrder(1.0));
    for (double a : alphas) {
        const SolutionField fa = solve_one(FractionalOrder(a));
        std::vector<double> diff(x_grid.size());
        for (std::size_t i = 0; i < diff.size(); ++i)
            diff[i] = fa.values[0][i] - ref.values[0][i];
        rep.l1_distances.push_back(trapezoid_p(x_grid, diff, 1.0));
    }
    rep.monotone = true;
    for (std::size_t k = 0; k + 1 < alphas.size(); ++k)
        if (!(alphas[k] < alphas[k + 1] &&
              rep.l1_distances[k + 1] <= rep.l1_distances[k]))
            rep.monotone = false;
    return rep;
}

}  // namespace fracline
