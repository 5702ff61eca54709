"""Conjugate points decide minimality: closed forms vs shooting.

For the 3/t damping the Jacobi equation is solved by Bessel-function
combinations; its zeros (conjugate times) arrive earlier as the curvature
grows.  For constant damping everything is elementary: no conjugate points
at or above critical damping, an explicit arithmetic progression of them
below.
"""
import math

from vnag import (Constant, LagrangianSpec, QuadraticDiagonal, Vanishing,
                  classify, conjugate_points_bessel, conjugate_points_shooting,
                  first_conjugate_time)

print("== vanishing damping 3/t: Bessel roots vs RK4 shooting ==")
beta, t1 = 2.0, 1.0
bes = conjugate_points_bessel(beta, t1, 12.0).conjugate_times
spec = LagrangianSpec(Vanishing(3.0), QuadraticDiagonal([beta]))
sho = conjugate_points_shooting(spec, beta, t1, 12.0, n_steps=40000).conjugate_times
for b, s in zip(bes, sho):
    print(f"  closed form {b:.10f}   shooting {s:.10f}   gap {abs(b-s):.1e}")

print("\n== first conjugate time shrinks as curvature grows (t1 = 1) ==")
for beta in (0.5, 1.0, 2.0, 4.0, 8.0):
    spec = LagrangianSpec(Vanishing(3.0), QuadraticDiagonal([beta]))
    print(f"  beta={beta:4g}: tau = {first_conjugate_time(spec, beta, 1.0):.5f}")

print("\n== constant damping: the three regimes ==")
beta = 1.0
for alpha in (1.0, 2.0, 3.0):
    spec = LagrangianSpec(Constant(alpha), QuadraticDiagonal([beta]))
    tau = first_conjugate_time(spec, beta, 0.0)
    pred = (f"{2*math.pi/math.sqrt(4*beta - alpha**2):.5f}"
            if alpha < 2 * math.sqrt(beta) else "none")
    print(f"  alpha={alpha}: first conjugate time = {tau}   (analytic: {pred})")

print("\n== classification of the path over growing windows ==")
pot = QuadraticDiagonal([1.0])
for t2 in (2.0, 3.5, 4.0, 8.0):
    c = classify(pot, Constant(1.0), 0.0, t2)
    print(f"  [0, {t2}]: {c.verdict}")
print("  (threshold 2 pi / sqrt(3) =", f"{2*math.pi/math.sqrt(3):.5f})")

print("\n== sharpest eigendirection binds in higher dimension ==")
c = classify(QuadraticDiagonal([0.5, 8.0]), Vanishing(3.0), 1.0, 9.0)
print(f"  verdict {c.verdict}, binding eigenvalue {c.binding_eigenvalue}, "
      f"per-direction conjugate times {[round(x, 4) for x in c.first_conjugate_times]}")
