"""Sparse-grid isogeometric Poisson solver (combination technique)."""

from ._core import (  # noqa: F401
    ComponentSolution,
    KnotVector,
    NurbsPatch,
    Problem,
    combination_coefficients,
    constant_forcing_problem,
    convergence_study,
    dantzig_select,
    dyadic_level_knots,
    eval_basis,
    evaluate_combined,
    fit_rate,
    gauss_rule,
    general_coefficients,
    grade_point,
    make_open_knot_vector,
    optimized_makespan,
    polynomial_cube_problem,
    profit_table,
    quarter_annulus,
    regular_annulus_problem,
    simplex_set,
    solve_component,
    solve_plan,
    surplus_norm,
    unit_hypercube,
)

__version__ = "0.1.0"
