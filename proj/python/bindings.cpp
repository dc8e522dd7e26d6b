#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracline/fdscheme.hpp"
#include "fracline/kernel.hpp"
#include "fracline/solvers.hpp"
#include "fracline/specfun.hpp"
#include "fracline/validate.hpp"

namespace py = pybind11;
using namespace fracline;

namespace {

InitialData make_data(double h, const std::vector<double>& values,
                      const std::string& extension) {
    if (extension != "odd" && extension != "even")
        throw std::invalid_argument("extension must be 'odd' or 'even'");
    return InitialData(GridFunction(h, values),
                       extension == "odd" ? Extension::odd : Extension::even);
}

}  // namespace

PYBIND11_MODULE(_fracline, m) {
    m.doc() = "fundamental solution and solvers for half-line fractional diffusion";

    m.def("ml_eval",
          [](double beta, double mm, double l, double z, double tol) {
              return ml_eval(MLParams(beta, mm, l), z, tol);
          },
          py::arg("beta"), py::arg("m"), py::arg("l"), py::arg("z"),
          py::arg("tol") = 1e-15,
          "three-parameter Mittag-Leffler function E_{beta,m,l}(z)");

    m.def("a0",
          [](double alpha, double tol) {
              return normalization_a0(FractionalOrder(alpha), tol);
          },
          py::arg("alpha"), py::arg("tol") = 1e-8,
          "normalization constant of the fundamental solution");

    m.def("phi",
          [](double alpha, double x) { return phi(FractionalOrder(alpha), x); },
          py::arg("alpha"), py::arg("x"),
          "self-similar profile Phi(x) of the fundamental solution");

    py::class_<SolutionField>(m, "SolutionField")
        .def_readonly("x", &SolutionField::x_grid)
        .def_readonly("t", &SolutionField::t_grid)
        .def_readonly("values", &SolutionField::values)
        .def_readonly("warnings", &SolutionField::warnings);

    py::class_<KernelModel>(m, "KernelModel")
        .def(py::init([](double alpha, double tol) {
                 return KernelModel(FractionalOrder(alpha), tol);
             }),
             py::arg("alpha"), py::arg("tol") = 1e-8)
        .def_property_readonly("alpha",
                               [](const KernelModel& k) { return k.alpha().value(); })
        .def_property_readonly("a0", &KernelModel::a0)
        .def_property_readonly("gamma", &KernelModel::gamma)
        .def("width", &KernelModel::width, py::arg("t"))
        .def("__call__",
             [](const KernelModel& k, double x, double t) {
                 return kernel_eval(k, x, t);
             },
             py::arg("x"), py::arg("t"));

    m.def("dirichlet_solve",
          [](const KernelModel& model, double h, const std::vector<double>& g,
             const std::vector<double>& xs, const std::vector<double>& ts) {
              return dirichlet_solve(model, make_data(h, g, "odd"), xs, ts);
          },
          py::arg("model"), py::arg("h"), py::arg("g"), py::arg("x"),
          py::arg("t"));

    m.def("neumann_solve",
          [](const KernelModel& model, double h, const std::vector<double>& g,
             const std::vector<double>& xs, const std::vector<double>& ts) {
              return neumann_solve(model, make_data(h, g, "even"), xs, ts);
          },
          py::arg("model"), py::arg("h"), py::arg("g"), py::arg("x"),
          py::arg("t"));

    m.def("fd_run",
          [](double alpha, double dx, double dt, const std::vector<double>& u0,
             std::size_t n_steps, std::vector<std::size_t> record) {
              SchemeConfig cfg(FractionalOrder(alpha), dx, dt, u0.size() - 1,
                               n_steps);
              if (record.empty()) record = {n_steps};
              return fd_run(cfg, GridFunction(dx, u0), record);
          },
          py::arg("alpha"), py::arg("dx"), py::arg("dt"), py::arg("u0"),
          py::arg("n_steps"), py::arg("record") = std::vector<std::size_t>{},
          "explicit Grunwald-weight scheme on the half-line");

    m.def("grunwald_weights",
          [](double alpha, std::size_t n) {
              return grunwald_weights(FractionalOrder(alpha), n).g;
          },
          py::arg("alpha"), py::arg("n"));

    m.def("validate",
          []() {
              const auto results = run_acceptance(nullptr);
              py::list out;
              for (const auto& r : results)
                  out.append(py::make_tuple(r.id, r.name, r.pass, r.detail));
              return out;
          },
          "run the full acceptance suite; returns (id, name, pass, detail) tuples");
}
