"""Admissible displacement curves h with h(t1) = h(t2) = 0.

Three families: C^1-blended triangular bumps, sinusoids, and seeded random
Fourier-sine combinations.  All evaluate h(t) and h'(t) anywhere on
[t1, t2], know their non-smooth knot times, and scale by sigma.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .dynamics import Trajectory

# Corner-blend shape coefficients.  The triangle's corners are replaced on
# windows of half-width delta by quartic arcs whose slope profile preserves
# both int h' dt and int (h')^2 dt across each window; with that choice the
# blend changes the second variation only at O((delta/eps)^2) instead of
# O(delta/eps) for a plain quadratic rounding.
_Q_UP = (3.0 * math.sqrt(21.0) - 7.0) / 8.0  # rising/falling corners
_S_APEX = -2.0 * _Q_UP                       # apex


def _g_up(u):
    return 0.5 * (1.0 + u) + _Q_UP * u * (1.0 - u * u)


def _big_g_up(u):
    return u / 2 + u * u / 4 + 0.25 + _Q_UP * (u * u / 2 - u ** 4 / 4 - 0.25)


def _g_apex(u):
    return -u + _S_APEX * (u - u ** 3)


def _big_g_apex(u):
    return (1.0 - u * u) / 2 - (_S_APEX / 4.0) * (1.0 - u * u) ** 2


@dataclass(frozen=True)
class Perturbation:
    """A displacement curve vanishing at both interval endpoints.

    `component` selects the coordinate axis the (scalar) profile acts on
    when applied to multidimensional curves.
    """

    kind: str
    t1: float
    t2: float
    sigma: float = 1.0
    component: int = 0
    params: tuple = ()
    knots: tuple = ()

    # ---- evaluation ----

    def value(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return self.sigma * self._profile(t, deriv=False)

    def deriv(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return self.sigma * self._profile(t, deriv=True)

    def _profile(self, t: np.ndarray, deriv: bool) -> np.ndarray:
        if self.kind == "triangle":
            return self._triangle(t, deriv)
        if self.kind == "sinusoid":
            return self._sinusoid(t, deriv)
        if self.kind == "fourier":
            return self._fourier(t, deriv)
        raise ValueError(f"unknown perturbation kind {self.kind!r}")

    def _triangle(self, t: np.ndarray, deriv: bool) -> np.ndarray:
        c, eps, delta = self.params
        out = np.zeros_like(t)
        inv = 1.0 / eps
        # rising and falling straight pieces
        rise = (t >= c - eps + delta) & (t <= c - delta)
        fall = (t >= c + delta) & (t <= c + eps - delta)
        if deriv:
            out[rise] = inv
            out[fall] = -inv
        else:
            out[rise] = (t[rise] - (c - eps)) * inv
            out[fall] = (c + eps - t[fall]) * inv
        # blend windows
        up = (t > c - eps - delta) & (t < c - eps + delta)
        ap = (t > c - delta) & (t < c + delta)
        dn = (t > c + eps - delta) & (t < c + eps + delta)
        if np.any(up):
            u = (t[up] - (c - eps)) / delta
            out[up] = _g_up(u) * inv if deriv else (delta * inv) * _big_g_up(u)
        if np.any(ap):
            u = (t[ap] - c) / delta
            out[ap] = _g_apex(u) * inv if deriv else 1.0 - delta * inv + (delta * inv) * _big_g_apex(u)
        if np.any(dn):
            u = (t[dn] - (c + eps)) / delta
            out[dn] = -_g_up(-u) * inv if deriv else (delta * inv) * _big_g_up(-u)
        return out

    def _sinusoid(self, t: np.ndarray, deriv: bool) -> np.ndarray:
        (k,) = self.params
        span = self.t2 - self.t1
        w = k * math.pi / span
        s = (t - self.t1) / span
        inside = (s > 0.0) & (s < 1.0)
        out = np.zeros_like(t)
        arg = w * (t[inside] - self.t1)
        out[inside] = w * np.cos(arg) if deriv else np.sin(arg)
        if deriv:
            # h' does not vanish at the endpoints; only h is clamped to 0
            at1 = s <= 0.0
            at2 = s >= 1.0
            out[at1] = w
            out[at2] = w * math.cos(k * math.pi)
        return out

    def _fourier(self, t: np.ndarray, deriv: bool) -> np.ndarray:
        coeffs = self.params[3]
        span = self.t2 - self.t1
        s = (t - self.t1) / span
        out = np.zeros_like(t)
        inside = (s > 0.0) & (s < 1.0) if not deriv else np.ones_like(t, dtype=bool)
        ti = t[inside]
        acc = np.zeros_like(ti)
        for k, a in enumerate(coeffs, start=1):
            w = k * math.pi / span
            acc += a * (w * np.cos(w * (ti - self.t1)) if deriv else np.sin(w * (ti - self.t1)))
        out[inside] = acc
        return out

    # ---- derived quantities ----

    def norm(self, n_samples: int = 10_000) -> float:
        """Sampled sup-norm max|h| + max|h'|."""
        t = np.linspace(self.t1, self.t2, n_samples)
        if self.knots:
            t = np.sort(np.concatenate([t, np.asarray(self.knots)]))
        return float(np.max(np.abs(self.value(t))) + np.max(np.abs(self.deriv(t))))

    def interior_knots(self) -> tuple:
        return tuple(k for k in self.knots if self.t1 < k < self.t2)

    def descriptor(self) -> dict:
        d = {"kind": self.kind, "t1": self.t1, "t2": self.t2,
             "sigma": self.sigma, "component": self.component}
        if self.kind == "triangle":
            d.update(c=self.params[0], eps=self.params[1], delta=self.params[2])
        elif self.kind == "sinusoid":
            d.update(k=self.params[0])
        else:
            d.update(seed=self.params[0], n_modes=self.params[1], decay=self.params[2])
        return d


def triangle(c: float, eps: float, t1: float, t2: float,
             delta: float | None = None) -> Perturbation:
    """Unit-height triangular bump on (c-eps, c+eps), C^1 via corner blends.

    delta is the blend half-width, default eps/1000 (must be <= eps/100).
    """
    if not (t1 < c - eps and c + eps < t2):
        raise ValueError("need eps < min(c - t1, t2 - c)")
    if delta is None:
        delta = eps / 1000.0
    if not 0 < delta <= eps / 100.0:
        raise ValueError("need 0 < delta <= eps/100")
    knots = (c - eps - delta, c - eps + delta, c - delta,
             c + delta, c + eps - delta, c + eps + delta)
    return Perturbation("triangle", t1, t2, params=(c, eps, delta), knots=knots)


def sinusoid(k: int, t1: float, t2: float) -> Perturbation:
    """h(t) = sin(k pi (t - t1) / (t2 - t1)) for integer k >= 1."""
    if int(k) != k or k < 1:
        raise ValueError("k must be an integer >= 1")
    if not t1 < t2:
        raise ValueError("need t1 < t2")
    return Perturbation("sinusoid", t1, t2, params=(int(k),))


def fourier_sine(seed: int, n_modes: int, decay: float,
                 t1: float, t2: float) -> Perturbation:
    """Random admissible probe: sum_k a_k sin(k pi (t-t1)/(t2-t1)).

    Coefficients are standard normal draws from a PCG64 generator seeded by
    `seed`, scaled by k^(-decay); the same arguments always reproduce the
    same curve.
    """
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    if decay <= 0:
        raise ValueError("decay must be positive")
    if not t1 < t2:
        raise ValueError("need t1 < t2")
    rng = np.random.default_rng(int(seed))
    raw = rng.standard_normal(int(n_modes))
    coeffs = tuple(float(a) * float(k) ** (-decay)
                   for k, a in enumerate(raw, start=1))
    return Perturbation("fourier", t1, t2,
                        params=(int(seed), int(n_modes), float(decay), coeffs))


def scale(h: Perturbation, sigma: float) -> Perturbation:
    """Pointwise sigma * h; the second variation scales by sigma^2."""
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    return dataclasses.replace(h, sigma=h.sigma * sigma)


def perturb_curve(base: Trajectory, h: Perturbation) -> Trajectory:
    """Sampled base + h (values and velocities) on a grid containing h's knots.

    With a knot-free h the base grid is reused verbatim.  Otherwise the
    interval is re-gridded span by span between knots, each span uniform
    with an even interval count at roughly the base resolution, so that the
    action quadrature integrates each smooth piece at full order.
    """
    if abs(h.t1 - base.t1) > 1e-9 or abs(h.t2 - base.t2) > 1e-9:
        raise ValueError("perturbation interval does not match the trajectory")
    if not 0 <= h.component < base.dim:
        raise ValueError("perturbation component out of range")
    inner = h.interior_knots()
    if not inner:
        x = base.x.copy()
        v = base.v.copy()
        x[:, h.component] += h.value(base.t)
        v[:, h.component] += h.deriv(base.t)
        return Trajectory(base.t, x, v)
    bounds = [base.t1, *sorted(inner), base.t2]
    step = (base.t2 - base.t1) / (len(base.t) - 1)
    pieces = []
    for a, b in zip(bounds[:-1], bounds[1:]):
        # 32-interval floor: the narrow blend windows hold the sharpest
        # integrand derivatives the action quadrature will see
        n = max(32, 2 * round((b - a) / (2.0 * step)))
        seg = np.linspace(a, b, n + 1)
        pieces.append(seg if not pieces else seg[1:])
    t = np.concatenate(pieces)
    x, v = base.sample(t)
    x[:, h.component] += h.value(t)
    v[:, h.component] += h.deriv(t)
    return Trajectory(t, x, v, knots=tuple(sorted(inner)))
