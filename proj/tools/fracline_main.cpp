#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracline/csv.hpp"
#include "fracline/fdscheme.hpp"
#include "fracline/kernel.hpp"
#include "fracline/solvers.hpp"
#include "fracline/specfun.hpp"
#include "fracline/validate.hpp"

using namespace fracline;

namespace {

// Built-in initial profiles, each compactly supported with g(0) = 0:
//   gauss-bump: exp(1 - 1/(1 - u^2)) with u = (x-1)/0.5 on |u| < 1
//   tent:       max(0, 1 - |x-1|/0.5)
//   box-smooth: 1 on [0.75, 1.25], cubic smoothstep ramps of width 0.25
double builtin_profile(const std::string& name, double x) {
    if (name == "gauss-bump") {
        const double u = (x - 1.0) / 0.5;
        return std::abs(u) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
    }
    if (name == "tent") return std::max(0.0, 1.0 - std::abs(x - 1.0) / 0.5);
    if (name == "box-smooth") {
        const double lo = 0.5, hi = 1.5, ramp = 0.25;
        if (x <= lo || x >= hi) return 0.0;
        auto smooth = [](double u) { return u * u * (3.0 - 2.0 * u); };
        if (x < lo + ramp) return smooth((x - lo) / ramp);
        if (x > hi - ramp) return smooth((hi - x) / ramp);
        return 1.0;
    }
    throw CLI::ValidationError("--ic", "unknown built-in profile '" + name + "'");
}

bool is_builtin(const std::string& name) {
    return name == "gauss-bump" || name == "tent" || name == "box-smooth";
}

InitialData load_initial(const std::string& ic, double x_max, int nx,
                         BoundaryKind bc) {
    const Extension ext =
        bc == BoundaryKind::dirichlet ? Extension::odd : Extension::even;
    GridFunction g(1.0, {0.0, 0.0});
    if (is_builtin(ic)) {
        const double h = x_max / nx;
        std::vector<double> v(static_cast<std::size_t>(nx) + 1);
        for (int i = 0; i <= nx; ++i) v[i] = builtin_profile(ic, h * i);
        g = GridFunction(h, std::move(v));
    } else {
        try {
            g = read_initial_csv(ic);
        } catch (const std::runtime_error& e) {
            throw std::invalid_argument(e.what());
        }
    }
    if (bc == BoundaryKind::dirichlet && g.values.front() != 0.0)
        throw std::invalid_argument(
            "initial condition: Dirichlet runs require g(0) = 0");
    return InitialData(std::move(g), ext);
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (double x : v) {
        if (!s.empty()) s += ' ';
        s += format_number(x);
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-line fractional diffusion toolkit"};
    app.require_subcommand(1);

    double alpha = 0.5, x_max = 8.0, tol = 1e-8, t_single = 1.0;
    double ml_beta = 0.5, ml_m = 3.0, ml_l = 2.0, ml_z = 0.0;
    double fd_dt = 1e-3, cmp_beta = 0.25;
    int nx = 256, n_steps = 100, levels = 3;
    std::string bc_name = "dirichlet", ic = "tent", out_path;
    std::vector<double> t_list = {1.0};
    std::vector<double> alphas = {0.9, 0.99, 1.0};
    std::vector<std::size_t> record;

    auto check_common = [&]() {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw CLI::ValidationError("--alpha", "must be in (0, 1]");
        if (nx < 16) throw CLI::ValidationError("--nx", "must be at least 16");
        if (tol < 1e-12)
            throw CLI::ValidationError("--tol", "must be at least 1e-12");
    };
    auto boundary = [&]() {
        if (bc_name == "dirichlet") return BoundaryKind::dirichlet;
        if (bc_name == "neumann") return BoundaryKind::neumann;
        throw CLI::ValidationError("--bc", "must be dirichlet or neumann");
    };

    auto* ml = app.add_subcommand("ml-eval",
                                  "evaluate the generalized Mittag-Leffler series");
    ml->add_option("--beta", ml_beta)->required();
    ml->add_option("--m", ml_m)->required();
    ml->add_option("--l", ml_l)->required();
    ml->add_option("--z", ml_z)->required();

    auto* a0cmd = app.add_subcommand("a0", "normalization constant of the kernel");
    a0cmd->add_option("--alpha", alpha)->required();
    a0cmd->add_option("--tol", tol);

    auto* table = app.add_subcommand("kernel-table", "tabulate the kernel as CSV");
    table->add_option("--alpha", alpha)->required();
    table->add_option("--x-max", x_max);
    table->add_option("--nx", nx);
    table->add_option("--t", t_list)->delimiter(',');
    table->add_option("--out", out_path)->required();

    auto* solve = app.add_subcommand("solve", "initial-boundary-value solve");
    solve->add_option("--alpha", alpha)->required();
    solve->add_option("--bc", bc_name);
    solve->add_option("--ic", ic);
    solve->add_option("--x-max", x_max);
    solve->add_option("--nx", nx);
    solve->add_option("--t", t_list)->delimiter(',');
    solve->add_option("--out", out_path)->required();

    auto* fd = app.add_subcommand("fd-solve", "explicit finite-difference solve");
    fd->add_option("--alpha", alpha)->required();
    fd->add_option("--ic", ic);
    fd->add_option("--x-max", x_max);
    fd->add_option("--nx", nx);
    fd->add_option("--dt", fd_dt);
    fd->add_option("--n-steps", n_steps);
    fd->add_option("--record", record)->delimiter(',');
    fd->add_option("--out", out_path)->required();

    auto* cmp = app.add_subcommand("compare",
                                   "finite differences vs convolution solver");
    cmp->add_option("--alpha", alpha)->required();
    cmp->add_option("--ic", ic);
    cmp->add_option("--x-max", x_max);
    cmp->add_option("--nx", nx);
    cmp->add_option("--t", t_single);
    cmp->add_option("--beta", cmp_beta);
    cmp->add_option("--levels", levels);
    cmp->add_option("--out", out_path)->required();

    auto* val = app.add_subcommand("validate", "run the full acceptance suite");
    (void)val;

    auto* decay = app.add_subcommand("decay", "sup-norm decay study");
    decay->add_option("--alpha", alpha)->required();
    decay->add_option("--ic", ic);
    decay->add_option("--x-max", x_max);
    decay->add_option("--nx", nx);
    decay->add_option("--t", t_list)->delimiter(',');
    decay->add_option("--out", out_path)->required();

    auto* sweep = app.add_subcommand("alpha-sweep",
                                     "L1 distance to the classical solution");
    sweep->add_option("--alphas", alphas)->delimiter(',');
    sweep->add_option("--ic", ic);
    sweep->add_option("--x-max", x_max);
    sweep->add_option("--nx", nx);
    sweep->add_option("--t", t_single);
    sweep->add_option("--out", out_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (ml->parsed()) {
            std::cout << format_number(ml_eval(MLParams(ml_beta, ml_m, ml_l), ml_z))
                      << "\n";
            return 0;
        }
        if (a0cmd->parsed()) {
            check_common();
            std::cout << format_number(normalization_a0(FractionalOrder(alpha), tol))
                      << "\n";
            return 0;
        }
        if (table->parsed()) {
            check_common();
            KernelModel model{FractionalOrder(alpha), tol};
            SolutionField field;
            field.t_grid = t_list;
            field.x_grid.resize(static_cast<std::size_t>(nx) + 1);
            for (int i = 0; i <= nx; ++i) field.x_grid[i] = x_max * i / nx;
            for (double t : t_list) {
                std::vector<double> row(field.x_grid.size());
                for (std::size_t i = 0; i < row.size(); ++i)
                    row[i] = kernel_eval(model, field.x_grid[i], t);
                field.values.push_back(std::move(row));
            }
            write_field_csv(out_path, field, "E");
            return 0;
        }
        if (solve->parsed()) {
            check_common();
            const BoundaryKind bc = boundary();
            KernelModel model{FractionalOrder(alpha), tol};
            auto data = load_initial(ic, x_max, nx, bc);
            std::vector<double> xs(static_cast<std::size_t>(nx) + 1);
            for (int i = 0; i <= nx; ++i) xs[i] = x_max * i / nx;
            const auto field = bc == BoundaryKind::dirichlet
                                   ? dirichlet_solve(model, data, xs, t_list)
                                   : neumann_solve(model, data, xs, t_list);
            write_field_csv(out_path, field, "w");
            for (const auto& warning : field.warnings)
                std::cerr << "warning: " << warning << "\n";
            return 0;
        }
        if (fd->parsed()) {
            check_common();
            auto data = load_initial(ic, x_max, nx, BoundaryKind::dirichlet);
            SchemeConfig cfg(FractionalOrder(alpha), x_max / nx, fd_dt,
                             static_cast<std::size_t>(nx),
                             static_cast<std::size_t>(n_steps));
            if (record.empty()) record = {static_cast<std::size_t>(n_steps)};
            const auto field = fd_run(cfg, data.g, record);
            write_field_csv(out_path, field, "w");
            return 0;
        }
        if (cmp->parsed()) {
            check_common();
            KernelModel model{FractionalOrder(alpha), tol};
            auto data = load_initial(ic, x_max, nx, BoundaryKind::dirichlet);
            const double dx = x_max / nx;
            const double dt_target = cmp_beta * std::pow(dx, 1.0 + alpha);
            const auto steps =
                static_cast<std::size_t>(std::ceil(t_single / dt_target));
            SchemeConfig cfg(FractionalOrder(alpha), dx,
                             t_single / static_cast<double>(steps),
                             static_cast<std::size_t>(nx), steps);
            const auto rep = cross_validate(cfg, model, data, levels);
            std::vector<std::pair<std::string, std::string>> kv = {
                {"alpha", format_number(alpha)},
                {"dx", format_number(cfg.dx)},
                {"dt", format_number(cfg.dt)},
                {"beta_ratio", format_number(cfg.beta())},
                {"t", format_number(rep.t)},
                {"l1_errors", join(rep.l1_errors)},
                {"linf_errors", join(rep.linf_errors)},
                {"order", format_number(rep.order)}};
            for (const auto& warning : rep.warnings) kv.emplace_back("warning", warning);
            write_report(out_path, kv);
            return 0;
        }
        if (val->parsed()) {
            const auto results = run_acceptance(&std::cout);
            return all_passed(results) ? 0 : 1;
        }
        if (decay->parsed()) {
            check_common();
            KernelModel model{FractionalOrder(alpha), tol};
            auto data = load_initial(ic, x_max, nx, BoundaryKind::neumann);
            const auto rep = decay_study(model, data, t_list);
            write_report(out_path,
                         {{"alpha", format_number(alpha)},
                          {"slope", format_number(rep.slope)},
                          {"expected", format_number(-1.0 / (1.0 + alpha))},
                          {"c_estimate", format_number(rep.c_estimate)},
                          {"bound_ok", rep.bound_ok ? "1" : "0"}});
            return rep.bound_ok ? 0 : 1;
        }
        if (sweep->parsed()) {
            check_common();
            auto data = load_initial(ic, x_max, nx, BoundaryKind::dirichlet);
            std::vector<double> xs(static_cast<std::size_t>(nx) + 1);
            for (int i = 0; i <= nx; ++i) xs[i] = x_max * i / nx;
            const auto rep = alpha_continuity_study(data, alphas, xs, t_single);
            std::vector<std::pair<std::string, std::string>> kv = {
                {"alphas", join(rep.alphas)},
                {"l1_distances", join(rep.l1_distances)},
                {"monotone", rep.monotone ? "1" : "0"}};
            write_report(out_path, kv);
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
