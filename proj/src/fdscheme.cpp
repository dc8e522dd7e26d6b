#include "fracline/fdscheme.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "fracline/fracops.hpp"

namespace fracline {

namespace {

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
    if (budget <= 1 || n < 64) {
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

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// interior stencil row applied at index i; ghost < 0 reads u[-j] when a
// reflection is supplied
double stencil_row(const SchemeConfig& config, const GrunwaldWeights& w,
                   const std::vector<double>& u, std::size_t i, bool reflect) {
    const double beta = config.beta();
    double acc = (1.0 + beta * (w.g[1] - w.g[0])) * u[i] + beta * w.g[0] * u[i + 1];
    for (std::size_t j = 0; j < i; ++j)
        acc += beta * (w.g[i + 1 - j] - w.g[i - j]) * u[j];
    if (reflect) {
        // continue the memory sum across x = 0 with u(-x) = u(x); the
        // weight table bounds how far the reflected tail reaches
        const std::size_t reach = w.size() - i - 2;
        for (std::size_t m = 1; m <= reach && m < u.size(); ++m)
            acc += beta * (w.g[i + 1 + m] - w.g[i + m]) * u[m];
    }
    return acc;
}

SolutionField march(const SchemeConfig& config, const GridFunction& initial,
                    const std::vector<std::size_t>& record_steps, bool reflect) {
    if (initial.size() != config.n_cells + 1)
        throw std::invalid_argument("fd_run: initial slice size does not match n_cells");
    for (std::size_t k = 1; k < record_steps.size(); ++k)
        if (record_steps[k] < record_steps[k - 1])
            throw std::invalid_argument("fd_run: record steps must be nondecreasing");
    if (!record_steps.empty() && record_steps.back() > config.n_steps)
        throw std::invalid_argument("fd_run: record step beyond n_steps");

    const std::size_t extra = reflect ? config.n_cells : 0;
    const auto weights = grunwald_weights(config.alpha, config.n_cells + 1 + extra);

    SolutionField field;
    field.provenance = Provenance::fd;
    field.boundary = reflect ? BoundaryKind::neumann : BoundaryKind::dirichlet;
    if (reflect)
        field.warnings.push_back(
            "neumann reflection stencil is an extension of the published scheme");
    field.x_grid.resize(config.n_cells + 1);
    for (std::size_t i = 0; i <= config.n_cells; ++i)
        field.x_grid[i] = config.dx * static_cast<double>(i);

    const double ceiling = 1e3 * max_abs(initial.values);
    std::vector<double> cur = initial.values;
    std::vector<double> next(cur.size());
    std::size_t rec = 0;
    auto record = [&](std::size_t k) {
        while (rec < record_steps.size() && record_steps[rec] == k) {
            field.t_grid.push_back(config.dt * static_cast<double>(k));
            field.values.push_back(cur);
            ++rec;
        }
    };
    record(0);
    for (std::size_t k = 0; k < config.n_steps; ++k) {
        next.front() = cur.front();
        next.back() = cur.back();
        parallel_for(config.n_cells - 1, [&](std::size_t r) {
            next[r + 1] = stencil_row(config, weights, cur, r + 1, reflect);
        });
        cur.swap(next);
        if (max_abs(cur) > ceiling && ceiling > 0.0)
            throw std::runtime_error("fd_run: scheme unstable, solution grew beyond "
                                     "1e3 times the initial amplitude");
        record(k + 1);
    }
    return field;
}

}  // namespace

GrunwaldWeights grunwald_weights(const FractionalOrder& alpha, std::size_t n) {
    GrunwaldWeights w;
    w.g.resize(n + 1);
    w.g[0] = 1.0;
    const double a = alpha.value();
    for (std::size_t i = 1; i <= n; ++i)
        w.g[i] = (static_cast<double>(i) - 1.0 - a) / static_cast<double>(i) *
                 w.g[i - 1];
    return w;
}

SchemeConfig::SchemeConfig(FractionalOrder a, double dx_, double dt_,
                           std::size_t cells, std::size_t steps)
    : alpha(a), dx(dx_), dt(dt_), n_cells(cells), n_steps(steps) {
    if (!(dx > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("SchemeConfig: dx and dt must be positive");
    if (cells < 2 || steps < 1)
        throw std::invalid_argument("SchemeConfig: need at least 2 cells and 1 step");
    const double guard = beta() * (1.0 + alpha.value());
    if (guard > 1.0 + 1e-12)
        throw std::invalid_argument(
            "SchemeConfig: beta (1 + alpha) = " + std::to_string(guard) +
            " exceeds 1; shrink dt");
}

double SchemeConfig::beta() const {
    return dt / std::pow(dx, 1.0 + alpha.value());
}

GridFunction step(const SchemeConfig& config, const GrunwaldWeights& weights,
                  const GridFunction& u) {
    if (u.size() != config.n_cells + 1)
        throw std::invalid_argument("step: slice size does not match n_cells");
    if (weights.size() < config.n_cells + 1)
        throw std::invalid_argument("step: weight table shorter than n_cells + 1");
    std::vector<double> next(u.size());
    next.front() = u.values.front();
    next.back() = u.values.back();
    for (std::size_t i = 1; i < config.n_cells; ++i)
        next[i] = stencil_row(config, weights, u.values, i, false);
    return GridFunction(u.h, std::move(next));
}

SolutionField fd_run(const SchemeConfig& config, const GridFunction& initial,
                     const std::vector<std::size_t>& record_steps) {
    return march(config, initial, record_steps, false);
}

SolutionField fd_run_neumann(const SchemeConfig& config,
                             const GridFunction& initial,
                             const std::vector<std::size_t>& record_steps) {
    return march(config, initial, record_steps, true);
}

StencilReport limit_stencil_report(const std::vector<double>& alphas, double dx,
                                   double dt) {
    StencilReport rep;
    rep.dx = dx;
    rep.dt = dt;
    const std::size_t tail = 12;
    for (double a : alphas) {
        StencilRow row;
        row.alpha = a;
        row.beta = dt / std::pow(dx, 1.0 + a);
        const auto w = grunwald_weights(FractionalOrder(a), tail + 2);
        row.up = row.beta * w.g[0];
        row.diag = 1.0 + row.beta * (w.g[1] - w.g[0]);
        row.down.resize(tail);
        for (std::size_t m = 1; m <= tail; ++m)
            row.down[m - 1] = row.beta * (w.g[m + 1] - w.g[m]);

        // upwind for u_t = u_x: u + beta (u_{i+1} - u_i)
        row.transport_distance =
            std::abs(row.up - row.beta) + std::abs(row.diag - (1.0 - row.beta));
        for (double c : row.down) row.transport_distance += std::abs(c);
        // FTCS for u_t = u_xx: beta, 1 - 2 beta, beta
        row.heat_distance = std::abs(row.up - row.beta) +
                            std::abs(row.diag - (1.0 - 2.0 * row.beta)) +
                            std::abs(row.down[0] - row.beta);
        for (std::size_t m = 1; m < row.down.size(); ++m)
            row.heat_distance += std::abs(row.down[m]);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

CrossValidation cross_validate(const SchemeConfig& config,
                               const KernelModel& model,
                               const InitialData& data, int levels) {
    if (levels < 2)
        throw std::invalid_argument("cross_validate: need at least 2 levels");
    if (data.extension != Extension::odd)
        throw std::invalid_argument("cross_validate: Dirichlet comparison needs odd data");
    const double x_max = config.dx * static_cast<double>(config.n_cells);
    if (data.support_length() >= 0.5 * x_max)
        throw std::invalid_argument(
            "cross_validate: data support reaches into the outer half of the domain");

    CrossValidation rep;
    rep.t = config.dt * static_cast<double>(config.n_steps);
    const double beta = config.beta();
    const double a = model.alpha().value();

    const double g1 = data.norm(1.0);
    for (int lev = 0; lev < levels; ++lev) {
        const std::size_t cells = config.n_cells << lev;
        const double dx = x_max / static_cast<double>(cells);
        const double dt_target = beta * std::pow(dx, 1.0 + a);
        const auto steps =
            static_cast<std::size_t>(std::ceil(rep.t / dt_target - 1e-12));
        const SchemeConfig fine(model.alpha(), dx, rep.t / static_cast<double>(steps),
                                cells, steps);

        std::vector<double> u0(cells + 1);
        for (std::size_t i = 0; i <= cells; ++i)
            u0[i] = grid_interp(data.g, dx * static_cast<double>(i));
        const auto fd = fd_run(fine, GridFunction(dx, u0), {steps});
        const auto ref = dirichlet_solve(model, data, fd.x_grid, {rep.t});

        if (std::abs(ref.values[0].back()) > 1e-3 * g1 && lev == 0)
            rep.warnings.push_back(
                "domain truncation: reference solution is not negligible at x_max");

        double l1 = 0.0, linf = 0.0;
        for (std::size_t i = 0; i <= cells; ++i) {
            const double d = std::abs(fd.values[0][i] - ref.values[0][i]);
            l1 += d * dx;
            linf = std::max(linf, d);
        }
        rep.dxs.push_back(dx);
        rep.l1_errors.push_back(l1);
        rep.linf_errors.push_back(linf);
    }
    const std::size_t n = rep.l1_errors.size();
    rep.order = std::log2(rep.l1_errors[n - 2] /
                          std::max(rep.l1_errors[n - 1], 1e-300));
    return rep;
}

}  // namespace fracline
