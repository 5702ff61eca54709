"""Jacobi-equation analysis: conjugate points and minimizer/saddle verdicts.

For the quadratic eigendirection with curvature lam the Jacobi equation of
the weighted action is

    h'' + d(t) h' + lam h = 0,       d(t) = c/t  or  alpha,

which is solved both in closed form (Bessel functions for c = 3 vanishing
damping; damped exponentials/sinusoids for constant damping) and by RK4
shooting with sign-change detection.  A curve is a local minimizer of the
action iff no interior time is conjugate to t1; the earliest conjugate time
over the eigendirections decides the verdict.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .action import LagrangianSpec, second_variation
from .bessel import bessel_j1, bessel_y1
from .dynamics import Constant, Trajectory, Vanishing, damping_regime
from .errors import NumericalError
from .perturbations import triangle
from .potentials import Polynomial1D, QuadraticDiagonal

_BISECT_TOL = 1e-12
_DIP_FRACTION = 1e-11
_SEARCH_SPAN = 50.0  # first-conjugate search cap: t1 + 50/sqrt(lam)


@dataclass(frozen=True)
class ConjugateReport:
    """Times in (t1, t2) conjugate to t1 for one eigendirection.

    eigen_lambda is None for searches along a base path, where the
    curvature is position dependent rather than a single number.
    """

    eigen_lambda: float | None
    t1: float
    t2: float
    conjugate_times: tuple
    method: str  # "closed_form" or "shooting"

    def to_dict(self) -> dict:
        return {
            "eigen_lambda": self.eigen_lambda,
            "t1": self.t1,
            "t2": self.t2,
            "conjugate_times": list(self.conjugate_times),
            "method": self.method,
        }


@dataclass(frozen=True)
class Classification:
    """Minimizer/saddle verdict for the flow's path on [t1, t2]."""

    verdict: str  # "minimizer" | "saddle" | "at_boundary"
    t1: float
    t2: float
    eigenvalues: tuple
    first_conjugate_times: tuple  # per eigendirection; None if none found
    binding_eigenvalue: float | None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "t1": self.t1,
            "t2": self.t2,
            "eigenvalues": list(self.eigenvalues),
            "first_conjugate_times": list(self.first_conjugate_times),
            "binding_eigenvalue": self.binding_eigenvalue,
        }


# --------------------------------------------------------------------------
# closed-form Jacobi solutions


def jacobi_closed_vanishing(beta: float, t1: float, t: float) -> float:
    """Jacobi solution vanishing at t1 for damping 3/t and curvature beta:

        h(t) = Y1(s)/t - (Y1(s1)/J1(s1)) J1(s)/t,   s = sqrt(beta) t.

    Degenerates when J1(sqrt(beta) t1) is (numerically) zero; use shooting
    in that case.
    """
    if t1 <= 0:
        raise ValueError("need t1 > 0")
    rb = math.sqrt(beta)
    j1_t1 = bessel_j1(rb * t1)
    if abs(j1_t1) < 1e-12:
        raise ValueError("closed form degenerates (J1(sqrt(beta) t1) ~ 0); use shooting")
    k = bessel_y1(rb * t1) / j1_t1
    return bessel_y1(rb * t) / t - k * bessel_j1(rb * t) / t


def jacobi_closed_constant(alpha: float, beta: float, t1: float, t: float) -> float:
    """Jacobi solution vanishing at t1 for constant damping alpha.

    Underdamped branch uses the phase-shifted form
    exp(-alpha t / 2) sin(omega (t - t1)), omega = sqrt(4 beta - alpha^2)/2,
    which has the same zero set as the textbook tan-based expression but no
    spurious singularities in t1.
    """
    regime = damping_regime(alpha, beta)
    if regime == "critical":
        return (t - t1) * math.exp(-math.sqrt(beta) * t)
    if regime == "overdamped":
        g = math.sqrt(alpha * alpha - 4.0 * beta) / 2.0
        return math.exp(-alpha * t / 2.0) * (math.exp(g * t) - math.exp(g * (2.0 * t1 - t)))
    omega = math.sqrt(4.0 * beta - alpha * alpha) / 2.0
    return math.exp(-alpha * t / 2.0) * math.sin(omega * (t - t1))


# --------------------------------------------------------------------------
# Bessel cross-product roots (vanishing damping, c = 3)


def _cross_product_roots(beta: float, t1: float, t_max: float,
                         max_roots: int | None = None) -> list:
    """Roots t in (t1, t_max] of J1(s1) Y1(s) = Y1(s1) J1(s), s = sqrt(beta) t.

    These are exactly the zeros of the closed-form Jacobi solution, in a
    division-free form that stays valid when J1(s1) itself vanishes.
    """
    rb = math.sqrt(beta)
    s1 = rb * t1
    j1_s1 = bessel_j1(s1)
    y1_s1 = bessel_y1(s1)

    def w(s):
        return j1_s1 * bessel_y1(s) - y1_s1 * bessel_j1(s)

    # Sturm comparison (u = s^{3/2} h solves u'' + (1 - 3/(4 s^2)) u = 0)
    # bounds consecutive zeros at least ~pi apart in s; pi/8 cannot skip one.
    ds = math.pi / 8.0
    roots = []
    s_end = rb * t_max
    s_a = s1 + 1e-9 * max(1.0, s1)
    w_a = w(s_a)
    s = s_a
    while s < s_end:
        s_b = min(s + ds, s_end)
        w_b = w(s_b)
        if w_a == 0.0:
            roots.append(s_a / rb)
        elif w_a * w_b < 0.0:
            lo, hi, w_lo = s_a, s_b, w_a
            while hi - lo > _BISECT_TOL:
                mid = 0.5 * (lo + hi)
                w_mid = w(mid)
                if w_lo * w_mid <= 0.0:
                    hi = mid
                else:
                    lo, w_lo = mid, w_mid
            roots.append(0.5 * (lo + hi) / rb)
            if max_roots is not None and len(roots) >= max_roots:
                return roots
        s_a, w_a = s_b, w_b
        s = s_b
    return roots


# --------------------------------------------------------------------------
# RK4 shooting


def _shoot_grid(dampf, qfn, t1: float, t2: float, n_steps: int):
    """March h(t1)=0, h'(t1)=1 across a uniform grid; returns (t, h, h')."""
    h_step = (t2 - t1) / n_steps
    ts = np.linspace(t1, t2, n_steps + 1)
    t_half = ts[:-1] + 0.5 * h_step
    dn = np.asarray(dampf(ts), dtype=float)
    dh = np.asarray(dampf(t_half), dtype=float)
    qn = np.asarray(qfn(ts), dtype=float)
    qh = np.asarray(qfn(t_half), dtype=float)
    ys = np.empty(n_steps + 1)
    us = np.empty(n_steps + 1)
    y, u = 0.0, 1.0
    ys[0], us[0] = y, u
    hs = h_step
    for i in range(n_steps):
        d1, q1 = dn[i], qn[i]
        d2, q2 = dh[i], qh[i]
        d3, q3 = dn[i + 1], qn[i + 1]
        k1y, k1u = u, -d1 * u - q1 * y
        y2, u2 = y + 0.5 * hs * k1y, u + 0.5 * hs * k1u
        k2y, k2u = u2, -d2 * u2 - q2 * y2
        y3, u3 = y + 0.5 * hs * k2y, u + 0.5 * hs * k2u
        k3y, k3u = u3, -d2 * u3 - q2 * y3
        y4, u4 = y + hs * k3y, u + hs * k3u
        k4y, k4u = u4, -d3 * u4 - q3 * y4
        y = y + hs / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        u = u + hs / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        ys[i + 1], us[i + 1] = y, u
    if not (np.all(np.isfinite(ys)) and np.all(np.isfinite(us))):
        raise NumericalError("non-finite state in Jacobi shooting")
    return ts, ys, us


def _h_from_state(t0: float, y0: float, u0: float, tq: float,
                  dampf, qfn, substeps: int = 16) -> float:
    """RK4 re-integration from a stored node state to an off-grid query time."""
    hs = (tq - t0) / substeps
    y, u, t = y0, u0, t0
    for _ in range(substeps):
        d1, q1 = float(dampf(t)), float(qfn(t))
        d2, q2 = float(dampf(t + 0.5 * hs)), float(qfn(t + 0.5 * hs))
        d3, q3 = float(dampf(t + hs)), float(qfn(t + hs))
        k1y, k1u = u, -d1 * u - q1 * y
        y2, u2 = y + 0.5 * hs * k1y, u + 0.5 * hs * k1u
        k2y, k2u = u2, -d2 * u2 - q2 * y2
        y3, u3 = y + 0.5 * hs * k2y, u + 0.5 * hs * k2u
        k3y, k3u = u3, -d2 * u3 - q2 * y3
        y4, u4 = y + hs * k3y, u + hs * k3u
        k4y, k4u = u4, -d3 * u4 - q3 * y4
        y = y + hs / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        u = u + hs / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        t += hs
    return y


def _zeros_from_grid(ts, ys, us, dampf, qfn) -> list:
    """Sign-change detection on the marched grid plus bisection refinement."""
    zeros = []
    running_max = 0.0
    n = len(ts) - 1
    for i in range(1, n + 1):
        running_max = max(running_max, abs(ys[i - 1]))
        if ys[i - 1] != 0.0 and ys[i - 1] * ys[i] < 0.0:
            a, b = ts[i - 1], ts[i]
            ya = ys[i - 1]
            t0, y0, u0 = ts[i - 1], ys[i - 1], us[i - 1]
            while b - a > _BISECT_TOL:
                mid = 0.5 * (a + b)
                ym = _h_from_state(t0, y0, u0, mid, dampf, qfn)
                if ya * ym <= 0.0:
                    b = mid
                else:
                    a, ya = mid, ym
            zeros.append(0.5 * (a + b))
        elif 0 < i < n and running_max > 0.0 and abs(ys[i]) < _DIP_FRACTION * running_max \
                and abs(ys[i - 1]) > abs(ys[i]) < abs(ys[i + 1]) \
                and ys[i - 1] * ys[i + 1] > 0.0:
            # tangential (double) zero: not expected for these linear flows
            raise NumericalError("sign-preserving near-zero dip: tangential zero suspected")
    return zeros


def jacobi_solution(spec: LagrangianSpec, eigen_lambda: float, t1: float,
                    t2: float, n_steps: int = 4000):
    """Grid samples (t, h, h') of the Jacobi solution with h(t1)=0, h'(t1)=1.

    Every other solution vanishing at t1 is a scalar multiple (the equation
    is linear), so a fan of initial slopes is just this solution rescaled.
    """
    lam = float(eigen_lambda)

    def qfn(t):
        return lam * np.ones_like(np.asarray(t, dtype=float))

    return _shoot_grid(spec.damping.coefficient, qfn, t1, t2, n_steps)


def conjugate_points_shooting(spec: LagrangianSpec, eigen_lambda: float,
                              t1: float, t2: float,
                              n_steps: int = 20000) -> ConjugateReport:
    """All times in (t1, t2) conjugate to t1, by shooting h(t1)=0, h'(t1)=1."""
    if n_steps < 1000:
        raise ValueError("need n_steps >= 1000")
    if isinstance(spec.damping, Vanishing) and t1 <= 0:
        raise ValueError("need t1 > 0 for vanishing damping")
    lam = float(eigen_lambda)
    dampf = spec.damping.coefficient

    def qfn(t):
        return lam * np.ones_like(np.asarray(t, dtype=float))

    ts, ys, us = _shoot_grid(dampf, qfn, t1, t2, n_steps)
    zeros = [z for z in _zeros_from_grid(ts, ys, us, dampf, lambda t: lam)
             if t1 < z < t2]
    return ConjugateReport(lam, t1, t2, tuple(zeros), "shooting")


def conjugate_points_bessel(beta: float, t1: float, t2: float) -> ConjugateReport:
    """Conjugate times for vanishing damping 3/t from the Bessel condition."""
    roots = [r for r in _cross_product_roots(beta, t1, t2) if t1 < r < t2]
    return ConjugateReport(float(beta), t1, t2, tuple(roots), "closed_form")


def conjugate_points_along(base: Trajectory, pot: Polynomial1D, damping,
                           t1: float, t2: float,
                           n_steps: int = 20000) -> ConjugateReport:
    """Shooting with position-dependent curvature f''(Y(t)) along a base path.

    This is the only conjugate-point route available for non-quadratic
    potentials; the base trajectory must cover [t1, t2].
    """
    if t1 < base.t1 - 1e-9 or t2 > base.t2 + 1e-9:
        raise ValueError("window outside the base trajectory")
    if isinstance(damping, Vanishing) and t1 <= 0:
        raise ValueError("need t1 > 0 for vanishing damping")

    def qfn(t):
        xs, _ = base.sample(np.clip(np.asarray(t, dtype=float), base.t1, base.t2))
        return np.array([pot.second_deriv(x) for x in xs[:, 0]])

    def qfn_scalar(t):
        return float(qfn(np.array([t]))[0])

    dampf = damping.coefficient
    ts, ys, us = _shoot_grid(dampf, qfn, t1, t2, n_steps)
    zeros = [z for z in _zeros_from_grid(ts, ys, us, dampf, qfn_scalar)
             if t1 < z < t2]
    return ConjugateReport(None, t1, t2, tuple(zeros), "shooting")


# --------------------------------------------------------------------------
# first conjugate time and classification


def first_conjugate_time(spec: LagrangianSpec, eigen_lambda: float, t1: float,
                         t_max: float | None = None) -> float | None:
    """Earliest time conjugate to t1, or None.

    Constant damping is fully analytic: none when alpha >= 2 sqrt(lam),
    otherwise t1 + 2 pi / sqrt(4 lam - alpha^2).  Vanishing damping (c = 3)
    searches the Bessel cross-product condition up to t1 + 50/sqrt(lam)
    (a safety cap; the asymptotic oscillation guarantees a root well before
    it); other c values fall back to shooting over the same span.
    """
    lam = float(eigen_lambda)
    if lam <= 0:
        raise ValueError("eigen_lambda must be positive")
    damping = spec.damping
    if isinstance(damping, Constant):
        if damping.alpha >= 2.0 * math.sqrt(lam) - 1e-12:
            return None
        return t1 + 2.0 * math.pi / math.sqrt(4.0 * lam - damping.alpha ** 2)
    if t1 <= 0:
        raise ValueError("need t1 > 0 for vanishing damping")
    cap = t1 + _SEARCH_SPAN / math.sqrt(lam)
    if t_max is not None:
        cap = max(cap, t_max)
    if damping.c == 3.0:
        roots = _cross_product_roots(lam, t1, cap, max_roots=1)
        return roots[0] if roots else None
    span = cap - t1
    n = max(4000, int(400 * span * math.sqrt(lam)))
    report = conjugate_points_shooting(spec, lam, t1, cap, n_steps=n)
    return report.conjugate_times[0] if report.conjugate_times else None


def classify(pot: QuadraticDiagonal, damping, t1: float, t2: float) -> Classification:
    """Minimizer/saddle/at-boundary verdict for the flow's path on [t1, t2].

    Each eigendirection contributes an independent conjugacy condition (the
    Jacobi system diagonalizes), and the verdict is their conjunction.  The
    Legendre factor P = w(t) is structurally positive (t^c with t > 0, or
    e^{alpha t}), so only conjugate points can break minimality.
    """
    if not isinstance(pot, QuadraticDiagonal):
        raise ValueError("classification needs a diagonal quadratic potential")
    if not t1 < t2:
        raise ValueError("need t1 < t2")
    spec = LagrangianSpec(damping, pot)
    taus = [first_conjugate_time(spec, lam, t1, t_max=t2) for lam in pot.eigenvalues]
    inside = [(tau, lam) for tau, lam in zip(taus, pot.eigenvalues)
              if tau is not None and tau < t2 - 1e-9]
    boundary = [(tau, lam) for tau, lam in zip(taus, pot.eigenvalues)
                if tau is not None and abs(tau - t2) <= 1e-9]
    if inside:
        tau, lam = min(inside)
        verdict, binding = "saddle", float(lam)
    elif boundary:
        tau, lam = min(boundary)
        verdict, binding = "at_boundary", float(lam)
    else:
        verdict, binding = "minimizer", None
    return Classification(
        verdict=verdict,
        t1=t1,
        t2=t2,
        eigenvalues=tuple(float(v) for v in pot.eigenvalues),
        first_conjugate_times=tuple(taus),
        binding_eigenvalue=binding,
    )


# --------------------------------------------------------------------------
# closed-form second variations for the probe families


def epsilon_star(u: float, beta: float) -> float:
    """Half-width at which the triangle-probe second variation changes sign.

    With u = beta c^2, the admissible root of the quartic numerator is
    eps^2 = (15 - 5u + sqrt(25 u^2 - 60 u + 225)) / (3 beta); the
    discriminant is positive for every u >= 0, and eps^2 decreases from
    10/beta (u = 0) to 3/beta (u -> inf).
    """
    if u < 0 or beta <= 0:
        raise ValueError("need u >= 0 and beta > 0")
    disc = math.sqrt(25.0 * u * u - 60.0 * u + 225.0)
    return math.sqrt((15.0 - 5.0 * u + disc) / (3.0 * beta))


def triangle_d2j_closed(beta: float, c: float, eps: float, sigma: float = 1.0) -> float:
    """Second variation of the ideal unit triangle on (c-eps, c+eps) under
    the t^3 weight:  -sigma^2 c (3 beta eps^4/10 + (beta c^2 - 3) eps^2
    - 3 c^2) / (3 eps)."""
    num = 3.0 * beta * eps ** 4 / 10.0 + (beta * c * c - 3.0) * eps * eps - 3.0 * c * c
    return -sigma * sigma * num * c / (3.0 * eps)


def sinusoid_d2j_closed(t1: float, t2: float, k: int, sigma: float = 1.0) -> float:
    """Second variation of sinusoid(k) for the exp(t) weight with unit
    curvature (alpha = beta = 1), in the same normalization as
    `second_variation` (the quadratic form 0.5 int (P h'^2 + Q h^2) dt):

        e^{t1} (e^T - 1) k^2 pi^2 (2 k^2 pi^2 - T^2)
        / (2 T^2 (4 k^2 pi^2 + T^2)),      T = t2 - t1.

    Negative exactly when T > sqrt(2) k pi.
    """
    if not t1 < t2 or k < 1:
        raise ValueError("need t1 < t2 and k >= 1")
    span = t2 - t1
    kk = (k * math.pi) ** 2
    num = math.exp(t1) * math.expm1(span) * kk * (2.0 * kk - span * span)
    return sigma * sigma * num / (2.0 * span * span * (4.0 * kk + span * span))


def saddle_witness(beta: float, t1: float, t2: float,
                   n_steps: int = 4096) -> dict | None:
    """Explicit indefiniteness certificate for vanishing damping 3/t.

    Returns two centered triangle probes with second variations of opposite
    sign (small half-width positive, large negative), or None when the
    interval is too short to admit the negative-direction probe.
    """
    if not 0 < t1 < t2:
        raise ValueError("need 0 < t1 < t2")
    c = 0.5 * (t1 + t2)
    eps_max = 0.5 * (t2 - t1)
    star = epsilon_star(beta * c * c, beta)
    if star >= eps_max * (1.0 - 1e-9):
        return None
    pot = QuadraticDiagonal([beta])
    spec = LagrangianSpec(Vanishing(3.0), pot)
    out = {}
    for label, eps in (("small", 0.5 * min(star, eps_max)),
                       ("large", 0.5 * (star + eps_max))):
        h = triangle(c, eps, t1, t2)
        out[label] = {
            "perturbation": h.descriptor(),
            "d2j_quadrature": second_variation(spec, t1, t2, h, n_steps=n_steps),
            "d2j_closed_form": triangle_d2j_closed(beta, c, eps),
        }
    out["epsilon_star"] = star
    return out
