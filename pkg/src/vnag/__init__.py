"""Variational analysis of damped accelerated gradient flows.

Library surface: potentials, flow integrators, action/variation quadrature,
admissible perturbations, Bessel functions, and Jacobi conjugate-point
classification.  The `vnag` command-line tool wires these into reproducible
experiments.
"""

from .action import (LagrangianSpec, PQCoefficients, action, first_variation,
                     lagrangian, pq_coefficients, second_variation,
                     second_variation_report)
from .bessel import bessel_j1, bessel_y1
from .dynamics import (BregmanParams, Constant, DampingSchedule,
                       IdealScalingReport, TimeFunction, Trajectory, Vanishing,
                       check_ideal_scaling, constant_damping_solution,
                       damping_regime, el_residual, integrate_bregman_flow,
                       integrate_flow, integrate_gradient_flow,
                       nesterov_recovering_params)
from .errors import ConfigError, NumericalError
from .jacobi import (Classification, ConjugateReport, classify,
                     conjugate_points_along, conjugate_points_bessel,
                     conjugate_points_shooting, epsilon_star,
                     first_conjugate_time, jacobi_closed_constant,
                     jacobi_closed_vanishing, jacobi_solution, saddle_witness,
                     sinusoid_d2j_closed, triangle_d2j_closed)
from .perturbations import (Perturbation, fourier_sine, perturb_curve, scale,
                            sinusoid, triangle)
from .potentials import Polynomial1D, Potential, QuadraticDiagonal

__version__ = "0.1.0"

__all__ = [
    "BregmanParams", "Classification", "ConfigError", "ConjugateReport",
    "Constant", "DampingSchedule", "IdealScalingReport", "LagrangianSpec",
    "NumericalError", "PQCoefficients", "Perturbation", "Polynomial1D",
    "Potential", "QuadraticDiagonal", "TimeFunction", "Trajectory",
    "Vanishing", "action", "bessel_j1", "bessel_y1", "check_ideal_scaling",
    "classify", "conjugate_points_along", "conjugate_points_bessel",
    "conjugate_points_shooting", "constant_damping_solution",
    "damping_regime", "el_residual", "epsilon_star", "first_conjugate_time",
    "first_variation", "fourier_sine", "integrate_bregman_flow",
    "integrate_flow", "integrate_gradient_flow", "jacobi_closed_constant",
    "jacobi_closed_vanishing", "jacobi_solution", "lagrangian",
    "nesterov_recovering_params", "perturb_curve", "pq_coefficients",
    "saddle_witness", "scale", "second_variation", "second_variation_report",
    "sinusoid", "sinusoid_d2j_closed", "triangle", "triangle_d2j_closed",
]
