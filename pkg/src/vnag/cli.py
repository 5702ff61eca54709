"""Experiment runner: `vnag <subcommand> --config cfg.json --out DIR [--seed N]`.

Subcommands: simulate, second-variation, classify, reproduce.  Configs are
single JSON documents with unknown fields rejected; outputs are CSV/JSON
(authoritative) plus small SVG charts, all byte-deterministic for a fixed
config and seed.  Exit codes: 0 ok, 2 config error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .action import (LagrangianSpec, action, second_variation,
                     second_variation_report)
from .dynamics import (Constant, Trajectory, Vanishing,
                       constant_damping_solution, el_residual, integrate_flow)
from .errors import ConfigError, NumericalError
from .jacobi import (classify, conjugate_points_along, epsilon_star,
                     first_conjugate_time, jacobi_solution, saddle_witness,
                     sinusoid_d2j_closed, triangle_d2j_closed)
from .perturbations import fourier_sine, perturb_curve, scale, sinusoid, triangle
from .potentials import Polynomial1D, QuadraticDiagonal
from .svgchart import line_chart

_INITIAL_CONDITION_NOTE = ("initial conditions (x0, v0=0) and start time t1 are "
                           "tool defaults; they are not externally prescribed")


# --------------------------------------------------------------------------
# config parsing


def _reject_unknown(d: dict, allowed: set, where: str):
    if not isinstance(d, dict):
        raise ConfigError(f"{where} must be a JSON object")
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"unknown field(s) in {where}: {', '.join(sorted(unknown))}")


def _need(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise ConfigError(f"missing required field '{key}' in {where}")
    return d[key]


def _as_float(v, where: str) -> float:
    try:
        return float(v)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where} must be a number, got {v!r}") from exc


def _as_int(v, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{where} must be an integer, got {v!r}")
    return v


def _as_vector(v, where: str) -> np.ndarray:
    try:
        arr = np.asarray(v, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where} must be a numeric array") from exc
    if arr.ndim != 1 or arr.size == 0:
        raise ConfigError(f"{where} must be a non-empty flat array")
    return arr


def load_config(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    _reject_unknown(cfg, {"experiment", "potential", "damping", "interval",
                          "integration", "initial", "perturbations", "sweep",
                          "seed"}, "config")
    return cfg


def build_potential(d: dict):
    if not isinstance(d, dict):
        raise ConfigError("potential must be an object")
    kind = _need(d, "kind", "potential")
    if kind == "quadratic":
        _reject_unknown(d, {"kind", "eigenvalues", "xstar"}, "potential")
        try:
            return QuadraticDiagonal(_need(d, "eigenvalues", "potential"),
                                     d.get("xstar"))
        except ValueError as exc:
            raise ConfigError(f"potential: {exc}") from exc
    if kind == "polynomial":
        _reject_unknown(d, {"kind", "a", "p", "xstar"}, "potential")
        try:
            return Polynomial1D(_as_float(_need(d, "a", "potential"), "a"),
                                _as_int(_need(d, "p", "potential"), "p"),
                                _as_float(d.get("xstar", 0.0), "xstar"))
        except ValueError as exc:
            raise ConfigError(f"potential: {exc}") from exc
    raise ConfigError(f"unknown potential kind {kind!r}")


def build_damping(d: dict):
    if not isinstance(d, dict):
        raise ConfigError("damping must be an object")
    kind = _need(d, "kind", "damping")
    if kind == "vanishing":
        _reject_unknown(d, {"kind", "c"}, "damping")
        return Vanishing(_as_float(d.get("c", 3.0), "damping c"))
    if kind == "constant":
        _reject_unknown(d, {"kind", "alpha"}, "damping")
        try:
            return Constant(_as_float(_need(d, "alpha", "damping"), "alpha"))
        except ValueError as exc:
            raise ConfigError(f"damping: {exc}") from exc
    raise ConfigError(f"unknown damping kind {kind!r}")


def _interval(cfg: dict) -> tuple:
    iv = _need(cfg, "interval", "config")
    _reject_unknown(iv, {"t1", "t2"}, "interval")
    t1 = _as_float(_need(iv, "t1", "interval"), "interval t1")
    t2 = _as_float(_need(iv, "t2", "interval"), "interval t2")
    if not t1 < t2:
        raise ConfigError("interval needs t1 < t2")
    return t1, t2


def _expand_perturbation(d: dict, t1: float, t2: float, seed: int) -> list:
    """One config entry -> list of probes (a list-valued field sweeps)."""
    if not isinstance(d, dict):
        raise ConfigError("perturbation must be an object")
    kind = _need(d, "kind", "perturbation")
    sweep_field = None
    for key, val in d.items():
        if isinstance(val, list):
            if sweep_field is not None:
                raise ConfigError("at most one perturbation field may be a list")
            sweep_field = key
    entries = [d] if sweep_field is None else [
        {**d, sweep_field: v} for v in d[sweep_field]]
    out = []
    for entry in entries:
        sigma = _as_float(entry.get("sigma", 1.0), "sigma")
        comp = _as_int(entry.get("component", 0), "component")
        try:
            if kind == "triangle":
                _reject_unknown(entry, {"kind", "c", "eps", "delta", "sigma",
                                        "component"}, "triangle perturbation")
                h = triangle(_as_float(_need(entry, "c", "triangle"), "c"),
                             _as_float(_need(entry, "eps", "triangle"), "eps"),
                             t1, t2,
                             delta=(_as_float(entry["delta"], "delta")
                                    if "delta" in entry else None))
            elif kind == "sinusoid":
                _reject_unknown(entry, {"kind", "k", "sigma", "component"},
                                "sinusoid perturbation")
                h = sinusoid(_as_int(_need(entry, "k", "sinusoid"), "k"), t1, t2)
            elif kind == "fourier":
                _reject_unknown(entry, {"kind", "seed", "n_modes", "decay",
                                        "sigma", "component"}, "fourier perturbation")
                h = fourier_sine(_as_int(entry.get("seed", seed), "seed"),
                                 _as_int(_need(entry, "n_modes", "fourier"), "n_modes"),
                                 _as_float(_need(entry, "decay", "fourier"), "decay"),
                                 t1, t2)
            else:
                raise ConfigError(f"unknown perturbation kind {kind!r}")
        except ValueError as exc:
            raise ConfigError(f"perturbation: {exc}") from exc
        if sigma != 1.0:
            h = scale(h, sigma)
        if comp:
            h = dataclasses.replace(h, component=comp)
        out.append(h)
    return out


# --------------------------------------------------------------------------
# output plumbing


class Writer:
    """Collects written artifact paths so failed runs can be cleaned up."""

    def __init__(self, out_dir: str):
        self.dir = Path(out_dir)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.paths: list[Path] = []

    def text(self, name: str, content: str) -> str:
        p = self.dir / name
        p.write_text(content)
        self.paths.append(p)
        return str(p)

    def json(self, name: str, obj) -> str:
        # allow_nan=False: a NaN/inf reaching a report is a bug, not data
        return self.text(name, json.dumps(obj, indent=2, sort_keys=True,
                                          allow_nan=False) + "\n")

    def cleanup(self):
        for p in self.paths:
            try:
                p.unlink()
            except OSError:
                pass


def _csv(rows: list, header: list) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(
            f"{v:.17g}" if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# subcommands


def cmd_simulate(cfg: dict, writer: Writer, seed: int) -> dict:
    pot = build_potential(_need(cfg, "potential", "config"))
    damping = build_damping(_need(cfg, "damping", "config"))
    t1, t2 = _interval(cfg)
    integ = cfg.get("integration", {})
    _reject_unknown(integ, {"n_steps"}, "integration")
    n_steps = _as_int(integ.get("n_steps", 4000), "n_steps")
    init = _need(cfg, "initial", "config")
    _reject_unknown(init, {"x0", "v0"}, "initial")
    x0 = _as_vector(_need(init, "x0", "initial"), "x0")
    v0 = (_as_vector(init["v0"], "v0") if "v0" in init
          else np.zeros_like(x0))
    try:
        traj = integrate_flow(pot, damping, x0, v0, t1, t2, n_steps)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    residual = el_residual(traj, pot, damping)
    results = {"el_residual": residual, "n_steps": n_steps}
    if isinstance(damping, Constant) and isinstance(pot, QuadraticDiagonal):
        err = 0.0
        for i, lam in enumerate(pot.eigenvalues):
            ref = pot.xstar[i] + constant_damping_solution(
                lam, damping.alpha, x0[i] - pot.xstar[i], v0[i], traj.t, t0=t1)
            err = max(err, float(np.max(np.abs(traj.x[:, i] - ref))))
        results["closed_form_max_error"] = err
    writer.text("trajectory.csv", traj.to_csv())
    series = [(f"x_{i}", traj.t.tolist(), traj.x[:, i].tolist())
              for i in range(traj.dim)]
    writer.text("figure.svg", line_chart(series, title="flow trajectory",
                                         xlabel="t", ylabel="x"))
    return {"results": results,
            "inputs": {"potential": cfg["potential"], "damping": cfg["damping"],
                       "interval": {"t1": t1, "t2": t2},
                       "x0": x0.tolist(), "v0": v0.tolist()},
            "notes": [_INITIAL_CONDITION_NOTE]}


def _closed_form_for(h, spec: LagrangianSpec) -> float | None:
    pot, damping = spec.pot, spec.damping
    if not isinstance(pot, QuadraticDiagonal):
        return None
    lam = float(pot.eigenvalues[h.component])
    if h.kind == "triangle" and isinstance(damping, Vanishing) and damping.c == 3.0:
        c, eps, _ = h.params
        return triangle_d2j_closed(lam, c, eps, sigma=h.sigma)
    if (h.kind == "sinusoid" and isinstance(damping, Constant)
            and abs(damping.alpha - 1.0) < 1e-12 and abs(lam - 1.0) < 1e-12):
        return sinusoid_d2j_closed(h.t1, h.t2, h.params[0], sigma=h.sigma)
    return None


def cmd_second_variation(cfg: dict, writer: Writer, seed: int) -> dict:
    pot = build_potential(_need(cfg, "potential", "config"))
    damping = build_damping(_need(cfg, "damping", "config"))
    t1, t2 = _interval(cfg)
    integ = cfg.get("integration", {})
    _reject_unknown(integ, {"n_steps"}, "integration")
    n_steps = _as_int(integ.get("n_steps", 4096), "n_steps")
    spec = LagrangianSpec(damping, pot)
    raw = _need(cfg, "perturbations", "config")
    if not isinstance(raw, list) or not raw:
        raise ConfigError("perturbations must be a non-empty list")
    probes = []
    for entry in raw:
        probes.extend(_expand_perturbation(entry, t1, t2, seed))
    table = []
    for h in probes:
        try:
            entry = second_variation_report(spec, t1, t2, h, n_steps=n_steps)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        quad = entry["value"]
        closed = _closed_form_for(h, spec)
        rel = (abs(quad - closed) / max(1e-300, abs(closed))
               if closed not in (None, 0.0) else None)
        entry["d2j_quadrature"] = quad
        entry["d2j_closed_form"] = closed
        entry["relative_difference"] = rel
        table.append(entry)
    sign_changes = []
    for a, b in zip(table[:-1], table[1:]):
        if a["d2j_quadrature"] * b["d2j_quadrature"] < 0:
            sign_changes.append({"between": [a["perturbation"], b["perturbation"]]})
    if isinstance(pot, QuadraticDiagonal) and probes and probes[0].kind == "triangle":
        lam = float(pot.eigenvalues[0])
        c = probes[0].params[0]
        sign_changes.append({"epsilon_star": epsilon_star(lam * c * c, lam)})
    rows = [(i, e["d2j_quadrature"],
             e["d2j_closed_form"] if e["d2j_closed_form"] is not None else float("nan"))
            for i, e in enumerate(table)]
    writer.text("d2j.csv", _csv(rows, ["index", "d2j_quadrature", "d2j_closed_form"]))
    if len(table) > 1:
        idx = list(range(len(table)))
        series = [("quadrature", idx, [e["d2j_quadrature"] for e in table])]
        if all(e["d2j_closed_form"] is not None for e in table):
            series.append(("closed form", idx,
                           [e["d2j_closed_form"] for e in table]))
        writer.text("figure.svg", line_chart(
            series, title="second variation by probe", xlabel="probe index",
            ylabel="d2J"))
    return {"results": {"table": table, "sign_changes": sign_changes},
            "inputs": {"potential": cfg["potential"], "damping": cfg["damping"],
                       "interval": {"t1": t1, "t2": t2}, "n_steps": n_steps},
            "notes": []}


def cmd_classify(cfg: dict, writer: Writer, seed: int) -> dict:
    pot = build_potential(_need(cfg, "potential", "config"))
    if not isinstance(pot, QuadraticDiagonal):
        raise ConfigError("classification needs a quadratic potential")
    damping = build_damping(_need(cfg, "damping", "config"))
    t1, t2 = _interval(cfg)
    sweep = cfg.get("sweep", {})
    _reject_unknown(sweep, {"lengths", "t1", "alpha"}, "sweep")
    lengths = [_as_float(v, "sweep lengths") for v in sweep.get("lengths", [t2 - t1])]
    starts = [_as_float(v, "sweep t1") for v in sweep.get("t1", [t1])]
    alphas = sweep.get("alpha")
    dampings = ([Constant(_as_float(a, "sweep alpha")) for a in alphas]
                if alphas is not None else [damping])
    records = []
    for dmp in dampings:
        for start in starts:
            for length in lengths:
                cls = classify(pot, dmp, start, start + length)
                rec = {"damping": ({"kind": "constant", "alpha": dmp.alpha}
                                   if isinstance(dmp, Constant)
                                   else {"kind": "vanishing", "c": dmp.c}),
                       "t1": start, "t2": start + length,
                       "classification": cls.to_dict()}
                if cls.verdict == "saddle" and isinstance(dmp, Vanishing) and dmp.c == 3.0:
                    beta = float(pot.eigenvalues.max())
                    rec["indefiniteness_witness"] = saddle_witness(
                        beta, start, start + length)
                records.append(rec)
    rows = [(r["t1"], r["t2"], r["classification"]["verdict"],
             r["classification"]["binding_eigenvalue"]
             if r["classification"]["binding_eigenvalue"] is not None else float("nan"))
            for r in records]
    writer.text("classify.csv", _csv(rows, ["t1", "t2", "verdict", "binding_eigenvalue"]))
    return {"results": {"records": records},
            "inputs": {"potential": cfg["potential"], "damping": cfg["damping"]},
            "notes": []}


# --------------------------------------------------------------------------
# figure reproduction experiments


def _warm_started_flow(pot, damping, x0, t_start, t1, t2, n_pre, n_main):
    pre = integrate_flow(pot, damping, x0, np.zeros_like(np.atleast_1d(x0)),
                         t_start, t1, n_pre)
    return integrate_flow(pot, damping, pre.x[-1], pre.v[-1], t1, t2, n_main)


def _reproduce_fig1(writer: Writer, seed: int) -> dict:
    # flow on f = x^2/2, perturbed along two triangle directions whose
    # second variations have opposite signs on the same interval
    pot = QuadraticDiagonal([1.0])
    damping = Vanishing(3.0)
    t1, t2 = 1.0, 9.0
    spec = LagrangianSpec(damping, pot)
    base = _warm_started_flow(pot, damping, [1.0], 0.01, t1, t2, 2000, 4000)
    c = 5.0
    eps_small, eps_large = 1.0, 3.2
    star = epsilon_star(1.0 * c * c, 1.0)
    table = []
    curves = {"base": base}
    for label, eps in (("small_eps", eps_small), ("large_eps", eps_large)):
        h = triangle(c, eps, t1, t2)
        d2 = second_variation(spec, t1, t2, h)
        closed = triangle_d2j_closed(1.0, c, eps)
        disp = perturb_curve(base, scale(h, 0.6))
        curves[label] = disp
        table.append({"direction": label, "perturbation": h.descriptor(),
                      "d2j_quadrature": d2, "d2j_closed_form": closed,
                      "delta_action": action(spec, disp) - action(spec, base)})
    rows = []
    for label, traj in curves.items():
        for t, x in zip(traj.t, traj.x[:, 0]):
            rows.append((label, float(t), float(x)))
    writer.text("fig1_curves.csv", _csv(rows, ["curve", "t", "x"]))
    series = [(lbl, traj.t.tolist(), traj.x[:, 0].tolist())
              for lbl, traj in curves.items()]
    writer.text("fig1.svg", line_chart(
        series, title="flow and two perturbation directions", xlabel="t", ylabel="x"))
    return {"results": {"table": table, "epsilon_star": star},
            "inputs": {"potential": "quadratic beta=1", "damping": "vanishing c=3",
                       "interval": {"t1": t1, "t2": t2}},
            "notes": [_INITIAL_CONDITION_NOTE,
                      "perturbation family (triangles, small vs large half-width) "
                      "is the tool's choice of opposite-sign directions"]}


def _reproduce_fig2(writer: Writer, seed: int) -> dict:
    betas = [0.5, 1.0, 2.0, 4.0, 8.0]
    slopes = [-1.0, -0.6, -0.2, 0.2, 0.6, 1.0]
    conj = {}
    for t1 in (1.0, 4.0):
        rows = []
        series = []
        markers = []
        for beta in betas:
            spec = LagrangianSpec(Vanishing(3.0), QuadraticDiagonal([beta]))
            tau = first_conjugate_time(spec, beta, t1)
            conj[f"t1={t1:g},beta={beta:g}"] = tau
            t_end = tau + 0.15 * (tau - t1)
            ts, ys, _ = jacobi_solution(spec, beta, t1, t_end, 4000)
            # the Jacobi equation is linear: one unit-slope solution scales
            # to every initial velocity in the fan
            for s in slopes:
                for t, y in zip(ts[::8], ys[::8]):
                    rows.append((beta, s, float(t), float(s * y)))
            series.append((f"beta={beta:g}", ts.tolist(), ys.tolist()))
            markers.append((tau, 0.0, "#000"))
        writer.text(f"fig2_t1_{t1:g}.csv",
                    _csv(rows, ["beta", "slope", "t", "h"]))
        writer.text(f"fig2_t1_{t1:g}.svg", line_chart(
            series, title=f"Jacobi solutions from t1={t1:g} (unit slope)",
            xlabel="t", ylabel="h", markers=markers))
    return {"results": {"first_conjugate_times": conj},
            "inputs": {"betas": betas, "t1_values": [1.0, 4.0]},
            "notes": ["higher curvature pulls the first conjugate point earlier"]}


def _reproduce_fig3(writer: Writer, seed: int) -> dict:
    # stated scale parameters beta >> mu; the displayed objective
    # 0.02 x^2 + 0.0004 y^2 has Hessian eigenvalues (0.04, 0.0008), i.e. the
    # stated beta/mu are the quadratic coefficients, not the eigenvalues.
    # The alpha sweep and classification use the stated values verbatim.
    beta_stated, mu_stated = 2e-2, 3e-4
    pot = QuadraticDiagonal([0.04, 0.0008])
    cls_pot = QuadraticDiagonal([mu_stated, beta_stated])
    alphas = [2.0 * math.sqrt(mu_stated), math.sqrt(beta_stated),
              2.0 * math.sqrt(beta_stated), 3.0 * math.sqrt(beta_stated)]
    t1, t2 = 0.01, 300.0
    lengths = [25.0, 50.0, 100.0, 200.0]
    x0 = np.array([1.0, 1.0])
    records = []
    series = []
    for alpha in alphas:
        damping = Constant(alpha)
        spec = LagrangianSpec(damping, pot)
        traj = integrate_flow(pot, damping, x0, [0.0, 0.0], t1, t2, 24000)
        series.append((f"alpha={alpha:.4g}", traj.t[::30].tolist(),
                       pot.value_rows(traj.x[::30]).tolist()))
        crossover = (2.0 * math.pi / math.sqrt(4.0 * beta_stated - alpha * alpha)
                     if alpha < 2.0 * math.sqrt(beta_stated) else None)
        actions = []
        for length in lengths:
            n = 2 * round(25.0 * length)
            sub = integrate_flow(pot, damping, x0, [0.0, 0.0], t1, t1 + length, n)
            cls = classify(cls_pot, damping, t1, t1 + length)
            actions.append({"length": length, "action": action(spec, sub),
                            "verdict": cls.verdict})
        records.append({"alpha": alpha, "crossover_length": crossover,
                        "windows": actions})
    rows = []
    for rec in records:
        for w in rec["windows"]:
            rows.append((rec["alpha"], w["length"], w["action"], w["verdict"]))
    writer.text("fig3_actions.csv", _csv(rows, ["alpha", "length", "action", "verdict"]))
    writer.text("fig3.svg", line_chart(series, title="objective along constant-damping flows",
                                       xlabel="t", ylabel="f(x)"))
    return {"results": {"records": records},
            "inputs": {"objective": "0.02 x^2 + 0.0004 y^2",
                       "hessian_eigenvalues": [0.04, 0.0008],
                       "stated_beta": beta_stated, "stated_mu": mu_stated},
            "notes": [_INITIAL_CONDITION_NOTE,
                      "the stated beta/mu equal the quadratic coefficients, not the "
                      "Hessian eigenvalues; the discrepancy is recorded, not resolved"]}


def _reproduce_unbounded(writer: Writer, seed: int) -> dict:
    # boundary-pinned curves sigma*h have action equal to their second
    # variation for quadratic objectives, so scaling sigma drives the action
    # to +inf along a small bump and to -inf along a wide one
    pot = QuadraticDiagonal([1.0])
    t1, t2 = 1.0, 8.5
    spec = LagrangianSpec(Vanishing(3.0), pot)
    n = 4096
    grid = np.linspace(t1, t2, n + 1)
    zero = Trajectory(grid, np.zeros((n + 1, 1)), np.zeros((n + 1, 1)))
    c = 0.5 * (t1 + t2)
    star = epsilon_star(c * c, 1.0)
    eps_small, eps_large = 0.9, 2.8
    sigmas = [1.0, 10.0, 100.0, 1000.0]
    rows = []
    results = {"epsilon_star": star, "eps_small": eps_small, "eps_large": eps_large,
               "actions": []}
    for sigma in sigmas:
        j_small = action(spec, perturb_curve(zero, scale(triangle(c, eps_small, t1, t2), sigma)))
        j_large = action(spec, perturb_curve(zero, scale(triangle(c, eps_large, t1, t2), sigma)))
        rows.append((sigma, j_small, j_large))
        results["actions"].append({"sigma": sigma, "action_small_eps": j_small,
                                   "action_large_eps": j_large})
    writer.text("unbounded.csv", _csv(rows, ["sigma", "action_small_eps",
                                             "action_large_eps"]))
    return {"results": results,
            "inputs": {"potential": "quadratic beta=1", "damping": "vanishing c=3",
                       "interval": {"t1": t1, "t2": t2}},
            "notes": ["interval length exceeds sqrt(40/beta), so both signs are reachable"]}


def _reproduce_poly(writer: Writer, seed: int) -> dict:
    # vanishing-curvature objective: windows that start while the curvature
    # along the path is still high contain conjugate points; once the flow
    # has collapsed toward the flat optimizer, no window of any searched
    # length contains one
    pot = Polynomial1D(1.0, 4, 0.0)
    damping = Vanishing(3.0)
    base = integrate_flow(pot, damping, [1.5], [0.0], 0.01, 60.0, 40000)
    starts = [0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 4.0, 8.0]
    records = []
    threshold = None
    for w0 in starts:
        cap = min(w0 + 40.0, 60.0)
        report = conjugate_points_along(base, pot, damping, w0, cap,
                                        n_steps=20000)
        tau = report.conjugate_times[0] if report.conjugate_times else None
        if tau is None and threshold is None:
            threshold = w0
        records.append({"window_start": w0,
                        "first_conjugate_time": tau,
                        "conjugate_free_length": (tau - w0) if tau is not None else None,
                        "searched_up_to": cap})
    rows = [(r["window_start"],
             r["first_conjugate_time"] if r["first_conjugate_time"] is not None else float("nan"),
             r["conjugate_free_length"] if r["conjugate_free_length"] is not None else float("nan"))
            for r in records]
    writer.text("poly_windows.csv", _csv(rows, ["window_start", "first_conjugate_time",
                                                "conjugate_free_length"]))
    writer.text("poly_base.csv", Trajectory(base.t[::10], base.x[::10], base.v[::10]).to_csv())
    return {"results": {"records": records,
                        "conjugate_free_from_start": threshold},
            "inputs": {"potential": "x^4", "damping": "vanishing c=3",
                       "x0": 1.5, "t_span": [0.01, 60.0]},
            "notes": [_INITIAL_CONDITION_NOTE,
                      "windows starting past `conjugate_free_from_start` show no "
                      "conjugate point up to the search cap: curvature along the "
                      "path vanishes and minimality extends"]}


_FIGURES = {"fig1": _reproduce_fig1, "fig2": _reproduce_fig2,
            "fig3": _reproduce_fig3, "unbounded": _reproduce_unbounded,
            "poly": _reproduce_poly}


def cmd_reproduce(figure: str, writer: Writer, seed: int) -> dict:
    if figure not in _FIGURES:
        raise ConfigError(f"unknown figure {figure!r}; choose from "
                          f"{', '.join(sorted(_FIGURES))}")
    return _FIGURES[figure](writer, seed)


# --------------------------------------------------------------------------
# entry point


def _run(args) -> int:
    seed = args.seed
    cfg = {}
    if getattr(args, "config", None):
        cfg = load_config(args.config)
        if seed is None and "seed" in cfg:
            seed = int(cfg["seed"])
    seed = 0 if seed is None else int(seed)
    writer = Writer(args.out)
    start = time.perf_counter()
    try:
        if args.command == "simulate":
            body = cmd_simulate(cfg, writer, seed)
        elif args.command == "second-variation":
            body = cmd_second_variation(cfg, writer, seed)
        elif args.command == "classify":
            body = cmd_classify(cfg, writer, seed)
        else:
            body = cmd_reproduce(args.figure, writer, seed)
    except ConfigError as exc:
        writer.cleanup()
        print(f"vnag: config error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        writer.cleanup()
        print(f"vnag: numerical failure: {exc}", file=sys.stderr)
        return 3
    except Exception:
        writer.cleanup()
        raise
    elapsed = time.perf_counter() - start
    report = {"experiment": cfg.get("experiment",
                                    getattr(args, "figure", None) or args.command),
              "tool": {"name": "vnag", "version": __version__},
              "seed": seed, **body}
    report["artifacts"] = sorted(p.name for p in writer.paths)
    writer.json("report.json", report)
    # wall-clock goes to stderr only: report files stay byte-deterministic
    print(f"vnag {args.command}: ok ({elapsed:.2f}s) -> {writer.dir}", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="vnag",
        description="accelerated-flow action analysis: simulate flows, evaluate "
                    "second variations, locate conjugate points, classify paths")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_config in (("simulate", True), ("second-variation", True),
                               ("classify", True), ("reproduce", False)):
        p = sub.add_parser(name)
        p.add_argument("--config", required=needs_config,
                       help="JSON experiment configuration")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--seed", type=int, default=None,
                       help="seed override for randomized probes")
        if name == "reproduce":
            p.add_argument("--figure", required=True,
                           choices=sorted(_FIGURES), help="experiment to run")
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except ConfigError as exc:
        print(f"vnag: config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
