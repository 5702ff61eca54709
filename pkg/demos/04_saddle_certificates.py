"""Explicit saddle certificates and the unbounded action.

Narrow triangular bumps have positive second variation, wide ones negative;
the flip happens at a half-width eps* in [sqrt(3/beta), sqrt(10/beta)].
Whenever the interval admits both, the path is a saddle and the action is
unbounded in both directions along admissible rays.  For flat objectives
(x^4) the certificate disappears once the flow has collapsed: curvature
along the path vanishes and minimality extends.
"""
import numpy as np

from vnag import (LagrangianSpec, Polynomial1D, QuadraticDiagonal, Trajectory,
                  Vanishing, action, conjugate_points_along, epsilon_star,
                  integrate_flow, perturb_curve, scale, second_variation,
                  sinusoid_d2j_closed, triangle, triangle_d2j_closed)

beta, t1, t2 = 1.0, 1.0, 9.0
c = 5.0
spec = LagrangianSpec(Vanishing(3.0), QuadraticDiagonal([beta]))
star = epsilon_star(beta * c * c, beta)
print(f"== triangle probes at c = {c} (eps* = {star:.5f}) ==")
for eps in (0.8, 1.5, star, 2.5, 3.5):
    closed = triangle_d2j_closed(beta, c, eps)
    quad = second_variation(spec, t1, t2, triangle(c, eps, t1, t2))
    print(f"  eps={eps:.5f}: d2J quadrature {quad:+10.4f}   closed form {closed:+10.4f}")

print("\n== so the action is unbounded both ways ==")
grid = np.linspace(t1, t2, 4097)
zero = Trajectory(grid, np.zeros((4097, 1)), np.zeros((4097, 1)))
for sigma in (1.0, 10.0, 100.0):
    j_up = action(spec, perturb_curve(zero, scale(triangle(c, 0.9, t1, t2), sigma)))
    j_dn = action(spec, perturb_curve(zero, scale(triangle(c, 2.8, t1, t2), sigma)))
    print(f"  sigma={sigma:6.1f}:  J(narrow) = {j_up:12.2f}   J(wide) = {j_dn:12.2f}")

print("\n== sinusoid certificate for unit constant damping ==")
import math
for span in (2.0, 4.0, 5.0, 2 * math.pi):
    val = sinusoid_d2j_closed(0.0, span, 1)
    print(f"  T={span:.4f}: d2J = {val:+.5f}   (flips sign at sqrt(2) pi = "
          f"{math.sqrt(2)*math.pi:.4f})")

print("\n== vanishing curvature: certificates fade along the x^4 flow ==")
pot = Polynomial1D(1.0, 4, 0.0)
base = integrate_flow(pot, Vanishing(3.0), [1.5], [0.0], 0.01, 45.0, 30000)
for w0 in (0.05, 0.2, 0.5, 1.0, 4.0):
    rep = conjugate_points_along(base, pot, Vanishing(3.0), w0, min(w0 + 40, 45.0),
                                 n_steps=20000)
    tau = rep.conjugate_times[0] if rep.conjugate_times else None
    msg = f"first conjugate time {tau:.4f}" if tau else "no conjugate point up to cap"
    print(f"  window start {w0:5.2f}: {msg}")
