"""The action functional and its first two variations.

Along a flow trajectory the first variation vanishes (it is a stationary
point of the action).  For quadratic objectives the increment
J[Y+h] - J[Y] decomposes exactly into first plus second variation, and for
boundary-pinned curves the action is literally the second variation, so it
scales like sigma^2.
"""
import numpy as np

from vnag import (LagrangianSpec, QuadraticDiagonal, Trajectory, Vanishing,
                  action, first_variation, integrate_flow, perturb_curve,
                  scale, second_variation, sinusoid, triangle)

pot = QuadraticDiagonal([1.0])
spec = LagrangianSpec(Vanishing(3.0), pot)
t1, t2 = 1.0, 9.0

pre = integrate_flow(pot, Vanishing(3.0), [1.0], [0.0], 0.01, t1, 2000)
base = integrate_flow(pot, Vanishing(3.0), pre.x[-1], pre.v[-1], t1, t2, 4000)
print(f"action along the flow on [{t1}, {t2}]: J = {action(spec, base):.6f}")

h = triangle(5.0, 2.0, t1, t2)
print(f"first variation along the flow:  {first_variation(spec, base, h):+.2e}"
      "   (stationary: ~quadrature noise)")

d2 = second_variation(spec, t1, t2, h)
inc = action(spec, perturb_curve(base, h)) - action(spec, base)
print(f"second variation of the bump:    {d2:+.6f}")
print(f"increment J[Y+h] - J[Y]:         {inc:+.6f}   (= dJ + d2J exactly, "
      "quadratic objective)")

print("\n== boundary-pinned scaling: J[sigma h] = sigma^2 d2J[h] ==")
grid = np.linspace(t1, t2, 4097)
zero = Trajectory(grid, np.zeros((4097, 1)), np.zeros((4097, 1)))
for sigma in (1.0, 10.0, 100.0):
    j = action(spec, perturb_curve(zero, scale(h, sigma)))
    print(f"sigma={sigma:6.1f}: J = {j:12.4f}   J/sigma^2 = {j / sigma**2:.6f}")

print("\n== the same machinery for a sinusoid direction ==")
hs = sinusoid(2, t1, t2)
print(f"d2J[sinusoid k=2] = {second_variation(spec, t1, t2, hs):+.6f}")
