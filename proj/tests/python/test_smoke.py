import math

import _fracline as fl


def test_ml_exponential_case():
    # beta=1, m=2, l=1 collapses to exp(z/2)
    assert abs(fl.ml_eval(1.0, 2.0, 1.0, 1.0) - math.exp(0.5)) < 1e-12


def test_a0_classical_value():
    assert abs(fl.a0(1.0) - 0.5 / math.sqrt(math.pi)) < 1e-7


def test_kernel_heat_limit():
    k = fl.KernelModel(1.0)
    x, t = 0.7, 0.3
    heat = math.exp(-x * x / (4 * t)) / math.sqrt(4 * math.pi * t)
    assert abs(k(x, t) - heat) < 1e-6
    assert k(x, t) == k(-x, t)
    assert k(x, -1.0) == 0.0
    assert k.gamma == -0.5


def test_profile_positive_decreasing():
    ys = [fl.phi(0.5, x) for x in (0.0, 1.0, 2.0, 4.0)]
    assert all(v > 0 for v in ys)
    assert ys == sorted(ys, reverse=True)


def test_dirichlet_solve_boundary_and_positivity():
    k = fl.KernelModel(0.6)
    h = 1.0 / 64
    g = [max(0.0, 1.0 - abs(h * i - 1.0) / 0.5) for i in range(3 * 64 + 1)]
    xs = [i / 16 for i in range(65)]
    field = fl.dirichlet_solve(k, h, g, xs, [0.5])
    assert field.values[0][0] == 0.0
    assert all(v >= 0.0 for v in field.values[0])
    assert max(field.values[0]) < max(g)


def test_fd_run_matches_weights():
    w = fl.grunwald_weights(0.5, 8)
    assert w[0] == 1.0
    assert abs(w[1] + 0.5) < 1e-15
    u0 = [0.0] * 65
    for i in range(20, 45):
        u0[i] = 1.0 - abs(i - 32) / 12.0
    field = fl.fd_run(0.5, 1.0 / 8, 1e-3, u0, 10)
    assert len(field.values) == 1
    assert max(field.values[0]) <= max(u0) + 1e-12
