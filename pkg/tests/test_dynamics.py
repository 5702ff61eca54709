import math

import numpy as np
import pytest

from vnag import (BregmanParams, Constant, QuadraticDiagonal, TimeFunction,
                  Trajectory, Vanishing, check_ideal_scaling,
                  constant_damping_solution, damping_regime, el_residual,
                  integrate_bregman_flow, integrate_flow,
                  integrate_gradient_flow, nesterov_recovering_params)


def test_critical_damping_closed_form():
    # alpha = 2 sqrt(beta) with (x0, v0) = (1, -1) collapses to exp(-t)
    pot = QuadraticDiagonal([1.0])
    traj = integrate_flow(pot, Constant(2.0), [1.0], [-1.0], 0.0, 5.0, 5000)
    assert np.max(np.abs(traj.x[:, 0] - np.exp(-traj.t))) <= 1e-8


def test_equilibrium_is_fixed():
    for pot, x0 in ((QuadraticDiagonal([2.0, 5.0], xstar=[1.0, -2.0]), [1.0, -2.0]),
                    (QuadraticDiagonal([1.0]), [0.0])):
        traj = integrate_flow(pot, Vanishing(3.0), x0, np.zeros(len(x0)), 0.5, 10.0, 500)
        assert np.max(np.abs(traj.x - np.asarray(x0))) <= 1e-14
        assert np.max(np.abs(traj.v)) <= 1e-14


def test_vanishing_damping_rate():
    # t^2 f(X(t)) stays bounded on [1, 20] (fine-grid reference value ~0.677)
    pot = QuadraticDiagonal([1.0])
    traj = integrate_flow(pot, Vanishing(3.0), [1.0], [0.0], 0.01, 20.0, 20000)
    mask = traj.t >= 1.0
    t2f = traj.t[mask] ** 2 * 0.5 * traj.x[mask, 0] ** 2
    assert t2f.max() <= 8.0


def test_rk4_order():
    # global error on the critical-damping closed form drops ~16x per doubling
    pot = QuadraticDiagonal([1.0])

    def err(n):
        traj = integrate_flow(pot, Constant(2.0), [1.0], [0.0], 0.0, 5.0, n)
        ref = constant_damping_solution(1.0, 2.0, 1.0, 0.0, traj.t)
        return np.max(np.abs(traj.x[:, 0] - ref))

    ratio = err(200) / err(400)
    assert 12.0 <= ratio <= 20.0


def test_energy_dissipation():
    pot = QuadraticDiagonal([1.0, 3.0])
    traj = integrate_flow(pot, Constant(0.7), [1.0, -1.0], [0.5, 0.0], 0.0, 20.0, 4000)
    energy = 0.5 * np.einsum("ij,ij->i", traj.v, traj.v) + pot.value_rows(traj.x)
    assert np.all(np.diff(energy) <= 1e-9)


def test_derivs_consistent_with_values():
    # centered differences of x reproduce v at second order
    pot = QuadraticDiagonal([2.0])

    def dev(n):
        traj = integrate_flow(pot, Constant(1.0), [1.0], [0.0], 0.0, 5.0, n)
        h = traj.step
        cd = (traj.x[2:, 0] - traj.x[:-2, 0]) / (2 * h)
        return np.max(np.abs(cd - traj.v[1:-1, 0]))

    assert dev(500) / dev(1000) == pytest.approx(4.0, rel=0.15)


def test_el_residual():
    pot = QuadraticDiagonal([1.0])
    # constant trajectory at the optimizer has zero residual
    t = np.linspace(1.0, 5.0, 101)
    flat = Trajectory(t, np.zeros((101, 1)), np.zeros((101, 1)))
    assert el_residual(flat, pot, Vanishing(3.0)) <= 1e-14
    # residual shrinks at second order under step halving
    pre = integrate_flow(pot, Vanishing(3.0), [1.0], [0.0], 0.01, 1.0, 4000)
    r = []
    for n in (4000, 8000):
        traj = integrate_flow(pot, Vanishing(3.0), pre.x[-1], pre.v[-1], 1.0, 10.0, n)
        r.append(el_residual(traj, pot, Vanishing(3.0)))
    assert r[0] <= 1e-5
    assert r[0] / r[1] >= 3.5


def test_bregman_recovers_vanishing_flow():
    pot = QuadraticDiagonal([1.0])
    tr1 = integrate_flow(pot, Vanishing(3.0), [1.0], [0.0], 0.1, 10.0, 4000)
    tr2 = integrate_bregman_flow(nesterov_recovering_params(), pot,
                                 [1.0], [0.0], 0.1, 10.0, 4000)
    assert np.max(np.abs(tr1.x - tr2.x)) <= 1e-10
    assert np.max(np.abs(tr1.v - tr2.v)) <= 1e-10


def test_bregman_with_unshifted_beta_scales_the_force():
    # beta(t) = 2 log t (no -log 4 shift) turns the force into 4 grad f
    params = BregmanParams(
        alpha=TimeFunction(lambda t: math.log(2.0 / t), lambda t: -1.0 / t),
        beta=TimeFunction(lambda t: 2.0 * math.log(t), lambda t: 2.0 / t),
        gamma=TimeFunction(lambda t: 2.0 * math.log(t), lambda t: 2.0 / t),
    )
    pot = QuadraticDiagonal([1.0])
    pot4 = QuadraticDiagonal([4.0])
    tr = integrate_bregman_flow(params, pot, [1.0], [0.0], 0.1, 10.0, 4000)
    ref = integrate_flow(pot4, Vanishing(3.0), [1.0], [0.0], 0.1, 10.0, 4000)
    assert np.max(np.abs(tr.x - ref.x)) <= 1e-10


def test_bregman_rate():
    pot = QuadraticDiagonal([1.0])
    tr = integrate_bregman_flow(nesterov_recovering_params(), pot,
                                [1.0], [0.0], 0.1, 10.0, 4000)
    mask = tr.t >= 1.0
    assert np.max(tr.t[mask] ** 2 * pot.value_rows(tr.x[mask])) <= 8.0


def test_equilibrium_bregman():
    pot = QuadraticDiagonal([2.0], xstar=[1.5])
    tr = integrate_bregman_flow(nesterov_recovering_params(), pot,
                                [1.5], [0.0], 0.1, 5.0, 200)
    assert np.max(np.abs(tr.x - 1.5)) <= 1e-14


def test_ideal_scaling():
    grid = np.linspace(0.1, 10.0, 300)
    assert check_ideal_scaling(nesterov_recovering_params(), grid).holds
    # beta-dot too large: 3/t > e^alpha = 2/t
    bad = BregmanParams(
        alpha=TimeFunction(lambda t: math.log(2.0 / t), lambda t: -1.0 / t),
        beta=TimeFunction(lambda t: 3.0 * math.log(t), lambda t: 3.0 / t),
        gamma=TimeFunction(lambda t: 2.0 * math.log(t), lambda t: 2.0 / t),
    )
    rep = check_ideal_scaling(bad, np.linspace(1.0, 10.0, 100))
    assert not rep.holds and rep.max_violation > 0
    # gamma(t) = t with alpha = 0 satisfies the equality condition
    lin = BregmanParams(
        alpha=TimeFunction(lambda t: 0.0, lambda t: 0.0),
        beta=TimeFunction(lambda t: 0.0, lambda t: 0.0),
        gamma=TimeFunction(lambda t: t, lambda t: 1.0),
    )
    assert check_ideal_scaling(lin, np.linspace(0.0, 5.0, 50)).holds


def test_time_function_fd_derivative():
    f = TimeFunction(lambda t: t ** 3)
    assert f.deriv(2.0) == pytest.approx(12.0, abs=1e-5)


def test_non_euclidean_rejected():
    params = BregmanParams(
        alpha=TimeFunction(lambda t: 0.0), beta=TimeFunction(lambda t: 0.0),
        gamma=TimeFunction(lambda t: t), psi="entropy")
    with pytest.raises(ValueError):
        integrate_bregman_flow(params, QuadraticDiagonal([1.0]),
                               [1.0], [0.0], 0.0, 1.0, 10)


def test_damping_regime():
    assert damping_regime(2.0, 1.0) == "critical"
    assert damping_regime(1.0, 1.0) == "underdamped"
    assert damping_regime(3.0, 1.0) == "overdamped"


def test_constant_damping_solution_regimes():
    pot = QuadraticDiagonal([2.0])
    for alpha in (0.5, 2.0 * math.sqrt(2.0), 5.0):
        traj = integrate_flow(pot, Constant(alpha), [1.0], [0.3], 0.0, 6.0, 4000)
        ref = constant_damping_solution(2.0, alpha, 1.0, 0.3, traj.t)
        assert np.max(np.abs(traj.x[:, 0] - ref)) <= 1e-9


def test_gradient_flow():
    pot = QuadraticDiagonal([1.0])
    traj = integrate_gradient_flow(pot, [1.0], 0.0, 10.0, 2000)
    assert np.max(np.abs(traj.x[:, 0] - np.exp(-traj.t))) <= 1e-10
    np.testing.assert_allclose(traj.v, -traj.x, atol=1e-14)


def test_preconditions():
    pot = QuadraticDiagonal([1.0])
    with pytest.raises(ValueError):
        integrate_flow(pot, Vanishing(3.0), [1.0], [0.0], 0.0, 5.0, 100)
    with pytest.raises(ValueError):
        integrate_flow(pot, Constant(1.0), [1.0], [0.0], 2.0, 1.0, 100)
    with pytest.raises(ValueError):
        integrate_flow(pot, Constant(1.0), [1.0], [0.0], 0.0, 1.0, 1)
    with pytest.raises(ValueError):
        integrate_flow(pot, Constant(1.0), [1.0, 2.0], [0.0], 0.0, 1.0, 10)
    with pytest.raises(ValueError):
        Constant(-0.5)


def test_csv_roundtrip():
    pot = QuadraticDiagonal([1.0, 2.0])
    traj = integrate_flow(pot, Constant(1.0), [1.0, -1.0], [0.0, 0.5], 0.0, 1.0, 10)
    text = traj.to_csv()
    lines = text.strip().split("\n")
    assert lines[0] == "t,x_0,x_1,v_0,v_1"
    assert len(lines) == 12
    back = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    np.testing.assert_array_equal(back[:, 0], traj.t)
    np.testing.assert_array_equal(back[:, 1:3], traj.x)
    np.testing.assert_array_equal(back[:, 3:5], traj.v)


def test_sample_matches_nodes():
    pot = QuadraticDiagonal([1.0])
    traj = integrate_flow(pot, Constant(1.0), [1.0], [0.0], 0.0, 5.0, 100)
    xs, vs = traj.sample(traj.t[::7])
    np.testing.assert_allclose(xs[:, 0], traj.x[::7, 0], atol=1e-14)
    np.testing.assert_allclose(vs[:, 0], traj.v[::7, 0], atol=1e-12)
