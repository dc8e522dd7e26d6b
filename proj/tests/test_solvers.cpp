#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "fracline/fracops.hpp"
#include "fracline/solvers.hpp"

using namespace fracline;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// tent supported on (lo, hi), peak 1 at the midpoint, sampled on [0, L]
InitialData tent(double lo, double hi, double L, std::size_t cells,
                 Extension ext) {
    const double h = L / static_cast<double>(cells);
    std::vector<double> v(cells + 1, 0.0);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i <= cells; ++i) {
        const double x = h * static_cast<double>(i);
        v[i] = std::max(0.0, 1.0 - std::abs(x - mid) / half);
    }
    return InitialData(GridFunction(h, std::move(v)), ext);
}

double g_lin(const GridFunction& g, double y) {
    const double s = y / g.h;
    if (s <= 0.0) return g.values.front();
    const auto k = static_cast<std::size_t>(s);
    if (k + 1 >= g.values.size()) return 0.0;
    const double t = s - static_cast<double>(k);
    return g.values[k] * (1.0 - t) + g.values[k + 1] * t;
}

// dense Simpson quadrature of the image-charge Gaussian solution
double heat_oracle(const InitialData& data, double sign, double x, double t) {
    auto G = [t](double z) {
        return std::exp(-z * z / (4.0 * t)) / (2.0 * std::sqrt(M_PI * t));
    };
    const double S = data.support_length();
    const int n = 16 * static_cast<int>(*data.g.support_end);
    const double h = S / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double y = h * i;
        const double f = g_lin(data.g, y) * (G(x - y) + sign * G(x + y));
        acc += f * (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
    }
    return acc * h / 3.0;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

}  // namespace

TEST_CASE("zero data gives the zero solution") {
    KernelModel model{FractionalOrder(0.5)};
    std::vector<double> zeros(65, 0.0);
    zeros[1] = 0.0;
    InitialData data(GridFunction(0.05, zeros, 8), Extension::odd);
    auto field = dirichlet_solve(model, data, linspace(0, 3, 31), {0.5, 1.0});
    for (const auto& row : field.values)
        for (double v : row) CHECK(v == 0.0);
}

TEST_CASE("Dirichlet boundary value vanishes") {
    KernelModel model{FractionalOrder(0.6)};
    auto data = tent(0.5, 1.5, 4.0, 256, Extension::odd);
    auto field = dirichlet_solve(model, data, {0.0, 1.0, 2.0}, {0.25, 1.0, 3.0});
    for (const auto& row : field.values)
        CHECK(std::abs(row[0]) <= 1e-10 * data.norm(1.0));
    CHECK_THROWS(dirichlet_solve(model, tent(0.5, 1.5, 4.0, 256, Extension::even),
                                 {1.0}, {1.0}));
    CHECK_THROWS(dirichlet_solve(model, data, {1.0}, {0.0}));
}

TEST_CASE("heat limit matches the image-charge Gaussian oracle") {
    KernelModel model{FractionalOrder(1.0)};
    auto odd_data = tent(0.5, 1.5, 4.0, 256, Extension::odd);
    auto even_data = tent(0.5, 1.5, 4.0, 256, Extension::even);
    const auto xs = linspace(0.0, 3.0, 13);
    auto w1 = dirichlet_solve(model, odd_data, xs, {0.5});
    auto w2 = neumann_solve(model, even_data, xs, {0.5});
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(w1.values[0][i] ==
              doctest::Approx(heat_oracle(odd_data, -1.0, xs[i], 0.5)).epsilon(2e-6));
        CHECK(w2.values[0][i] ==
              doctest::Approx(heat_oracle(even_data, 1.0, xs[i], 0.5)).epsilon(2e-6));
    }
}

TEST_CASE("Neumann solution conserves the initial mass") {
    for (double a : {0.5, 1.0}) {
        KernelModel model{FractionalOrder(a)};
        auto data = tent(0.25, 1.25, 2.0, 128, Extension::even);
        const double X = 60.0, t = 0.5;
        const auto xs = linspace(0.0, X, 1201);
        auto field = neumann_solve(model, data, xs, {t});
        double m = 0.0;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            m += 0.5 * (xs[i + 1] - xs[i]) *
                 (field.values[0][i] + field.values[0][i + 1]);
        // algebraic far field of the kernel carries visible mass past X
        const PhiFunction& ph = model.profile();
        const double y = X / model.width(t);
        m += data.norm(1.0) * (1.0 - 2.0 * model.a0() * ph.integral_to(y));
        CHECK(m == doctest::Approx(data.norm(1.0)).epsilon(1e-4));
        // positivity preservation
        for (double v : field.values[0]) CHECK(v >= 0.0);
    }
}

TEST_CASE("per-slice Lp norms stay below twice the data norm") {
    KernelModel model{FractionalOrder(0.6)};
    auto data = tent(0.5, 1.5, 6.0, 384, Extension::odd);
    auto field = dirichlet_solve(model, data, linspace(0.0, 6.0, 241),
                                 {0.5, 1.0, 2.0});
    for (double p : {1.0, 2.0, kInf}) {
        auto rep = lp_bound_check(field, data, p);
        CHECK(rep.ok);
        for (double n : rep.slice_norms) CHECK(n <= rep.bound);
    }
}

TEST_CASE("solution approaches the data as t decreases") {
    KernelModel model{FractionalOrder(0.5)};
    auto data = tent(0.5, 1.5, 4.0, 128, Extension::even);
    auto rep = initial_limit_check(model, data, 1.0);
    CHECK(rep.monotone);
    CHECK(rep.ok);
    auto odd_bad = tent(-0.5, 0.7, 4.0, 128, Extension::odd);  // g(0) != 0
    CHECK_THROWS(initial_limit_check(model, odd_bad, 1.0));
}

TEST_CASE("Duhamel terms: triviality, bound, and local growth") {
    KernelModel model{FractionalOrder(0.6)};
    {
        std::vector<std::vector<double>> zeros(9, std::vector<double>(33, 0.0));
        ForcingData f(0.0625, 0.01, zeros);
        auto w3 = duhamel_solve(model, f, BoundaryKind::dirichlet,
                                linspace(0.0, 2.0, 9), {0.04});
        for (double v : w3.values[0]) CHECK(v == 0.0);
    }
    // smoothly cut box forcing, constant in time
    auto box_profile = [](double x) {
        if (x < 0.4375 || x > 1.5625) return 0.0;
        if (x < 0.5625) return (x - 0.4375) / 0.125;
        if (x > 1.4375) return (1.5625 - x) / 0.125;
        return 1.0;
    };
    const std::size_t nx = 129;
    std::vector<std::vector<double>> rows(
        11, std::vector<double>(nx, 0.0));
    for (auto& row : rows)
        for (std::size_t i = 0; i < nx; ++i)
            row[i] = box_profile(2.0 * static_cast<double>(i) / (nx - 1));
    ForcingData f(2.0 / (nx - 1), 0.01, rows);
    {
        KernelModel heat{FractionalOrder(1.0)};
        auto w4 = duhamel_solve(heat, f, BoundaryKind::neumann, {1.0}, {0.05});
        CHECK(w4.values[0][0] == doctest::Approx(0.05).epsilon(0.1));
    }
    auto w3 = duhamel_solve(model, f, BoundaryKind::dirichlet,
                            linspace(0.0, 2.0, 17), {0.03, 0.08});
    for (std::size_t k = 0; k < w3.t_grid.size(); ++k)
        for (double v : w3.values[k])
            CHECK(std::abs(v) <= w3.t_grid[k] * f.sup() * (1.0 + 1e-6));
}

TEST_CASE("sup norm decays like t^{-1/(1+alpha)}") {
    std::vector<double> ts;
    for (int k = 0; k <= 6; ++k) ts.push_back(std::pow(10.0, k / 3.0));
    for (double a : {0.5, 1.0}) {
        KernelModel model{FractionalOrder(a)};
        auto data = tent(0.1, 0.6, 2.0, 128, Extension::even);
        auto rep = decay_study(model, data, ts);
        const double expected = -1.0 / (1.0 + a);
        CHECK(std::abs(rep.slope - expected) <= 0.05 * std::abs(expected));
        CHECK(rep.bound_ok);
        CHECK(rep.c_estimate <= 2.0 * model.a0() * (1.0 + 1e-6));
    }
}

TEST_CASE("energy is non-increasing in time") {
    KernelModel model{FractionalOrder(0.7)};
    auto data = tent(0.5, 1.5, 5.0, 256, Extension::odd);
    auto field = dirichlet_solve(model, data, linspace(0.0, 8.0, 257),
                                 {0.25, 0.5, 1.0, 2.0, 4.0});
    auto rep = energy_monotonicity_check(field);
    CHECK(rep.ok);
    for (std::size_t k = 0; k + 1 < rep.energies.size(); ++k)
        CHECK(rep.energies[k + 1] <= rep.energies[k] + 1e-6 * rep.energies[0]);
}

TEST_CASE("signals propagate instantly") {
    KernelModel model{FractionalOrder(0.4)};
    auto data = tent(0.2, 0.8, 2.0, 128, Extension::even);
    auto rep = infinite_speed_check(model, data, 1.0);
    CHECK(rep.all_positive);
    for (const auto& row : rep.values)
        for (std::size_t i = 0; i + 1 < row.size(); ++i) CHECK(row[i] > row[i + 1]);
}

TEST_CASE("solutions vary continuously in alpha near the heat limit") {
    auto data = tent(0.5, 1.5, 4.0, 128, Extension::odd);
    auto rep = alpha_continuity_study(data, {0.9, 0.95, 0.99},
                                      linspace(0.0, 8.0, 129), 1.0);
    CHECK(rep.monotone);
    CHECK(rep.l1_distances.back() < rep.l1_distances.front());
    auto self = alpha_continuity_study(data, {1.0}, linspace(0.0, 8.0, 65), 1.0);
    CHECK(self.l1_distances[0] == 0.0);
}

// The base-0 fractional derivative is not translation invariant, so the image
// superposition does not annihilate the pointwise operator the way the
// centered kernel does (see test_kernel).  The residual it leaves behind is a
// property of the representation, not of the discretization: it is stable
// under grid refinement.  We pin the observed level and check stability.
TEST_CASE("image-superposition residual is structural, not numerical") {
    KernelModel model{FractionalOrder(0.5)};
    auto data = tent(0.5, 1.5, 4.0, 128, Extension::odd);
    const double dt = 1e-3;
    std::vector<double> worsts;
    for (std::size_t n : {std::size_t(256), std::size_t(512)}) {
        const double h = 4.0 / n;
        const auto xs = linspace(0.0, 4.0, n + 1);
        auto field = dirichlet_solve(model, data, xs, {1.0 - dt, 1.0, 1.0 + dt});
        GridFunction u(h, field.values[1]);
        double worst = 0.0;
        for (std::size_t i = n / 8; i <= 3 * n / 4; i += n / 32) {
            const double ut = (field.values[2][i] - field.values[0][i]) / (2.0 * dt);
            worst = std::max(worst, std::abs(ut - caputo_deriv_x(u, model.alpha(), i)));
        }
        worsts.push_back(worst);
    }
    CHECK(worsts[1] < 0.12);
    CHECK(worsts[1] > 1e-3);
    CHECK(std::abs(worsts[1] - worsts[0]) < 0.05 * std::max(worsts[0], worsts[1]) + 1e-3);

    // In the classical limit the operator is translation invariant and the
    // residual collapses to discretization error.
    KernelModel heat{FractionalOrder(1.0)};
    auto hdata = tent(0.5, 1.5, 4.0, 128, Extension::odd);
    const std::size_t n = 512;
    const double h = 4.0 / n;
    const auto xs = linspace(0.0, 4.0, n + 1);
    auto field = dirichlet_solve(heat, hdata, xs, {1.0 - dt, 1.0, 1.0 + dt});
    GridFunction u(h, field.values[1]);
    double worst = 0.0;
    for (std::size_t i = n / 8; i <= 3 * n / 4; i += 16) {
        const double ut = (field.values[2][i] - field.values[0][i]) / (2.0 * dt);
        worst = std::max(worst, std::abs(ut - caputo_deriv_x(u, heat.alpha(), i)));
    }
    CHECK(worst < 2e-3);
}
