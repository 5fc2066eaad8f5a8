"""
Deterministic grid-plus-refinement searches for the two maximum probability
claims: Hardy's construction and the generalized Cabello family.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from attrs import define, field

# internal imports
from config import Config
from .constructions import feasible_mixing, hardy_selection_probability
from .errors import ConvergenceError, DegenerateConfigurationError, DomainError


logger = logging.getLogger(__name__)

CABELLO_FAMILY_SCOPE = 'real two-parameter family (c, p); delta states by orthocomplement'
HARDY_SCOPE = 'real single-particle angles (theta_a, theta_b) in the open quadrant'


@define(frozen=True)
class OptimizationResult:
    parameters: dict = field(converter=dict)
    objective: float
    evaluations: int
    grid_resolution: int
    refine_tolerance: float
    iterations: int
    history: tuple = field(converter=tuple, factory=tuple) # best objective after each iteration
    exclusivity_tol: float = None
    scope: str = ''


def _axis(lo, hi, n, interior):
    if interior:
        # open box: n points strictly inside
        return lo + (hi - lo) * np.arange(1, n + 1) / (n + 1)
    return np.linspace(lo, hi, n)


def _better(candidate, best):
    # larger objective wins; ties go to the lexicographically smaller point
    if best is None:
        return True
    if candidate[0] != best[0]:
        return candidate[0] > best[0]
    return candidate[1] < best[1]


def grid_refine(objective, bounds, grid, refine_tol, max_iter=None, threads=1):
    """
    Maximize objective over an open box by repeated grid search.

    The first pass is a grid^k lattice strictly inside the box. Every
    later pass lays a grid^k lattice over the cells adjacent to the best
    point so far, clipped to the box, until every side of the search box
    is shorter than refine_tol.

    :parameter objective: callable taking a tuple of floats, returning a float
    :parameter bounds: list of (lo, hi) per parameter
    :parameter threads: evaluations run in a thread pool; the reduction does not depend on order
    :returns: (best point, best value, evaluations, iterations, history)
    """
    max_iter = Config.MAX_REFINE_ITER if max_iter is None else max_iter
    box = [tuple(b) for b in bounds]
    best = None
    evaluations = 0
    history = []

    for iteration in range(1, max_iter + 1):
        axes = [_axis(lo, hi, grid, interior=iteration == 1) for lo, hi in box]
        # the box edges can sit on the open boundary; keep only points inside
        axes = [axis[(axis > lo) & (axis < hi)] if iteration > 1 else axis for axis, (lo, hi) in zip(axes, bounds)]
        points = [tuple(float(x) for x in point) for point in zip(*(m.ravel() for m in np.meshgrid(*axes, indexing='ij')))]

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                values = list(pool.map(objective, points))
        else:
            values = [objective(point) for point in points]
        evaluations += len(points)

        for value, point in zip(values, points):
            if _better((value, point), best):
                best = (value, point)
        history.append(best[0])
        logger.debug("iteration %d: best %.15g at %s (%d evaluations)", iteration, best[0], best[1], evaluations)

        steps = [(hi - lo) / (grid + 1 if iteration == 1 else grid - 1) for lo, hi in box]
        if max(2 * step for step in steps) < refine_tol:
            return best[1], best[0], evaluations, iteration, history
        box = [
            (max(lo, x - step), min(hi, x + step))
            for x, step, (lo, hi) in zip(best[1], steps, bounds)
        ]

    raise ConvergenceError(f"refinement did not reach {refine_tol} within {max_iter} iterations")


def _check_grid(grid, refine_tol):
    if grid < 16:
        raise DomainError(f"grid must be at least 16, got {grid}")
    if not refine_tol > 0:
        raise DomainError(f"refine tolerance must be positive, got {refine_tol}")


def hardy_objective(point):
    """Selection probability of the Hardy construction; degenerate points score 0."""
    theta_a, theta_b = point
    try:
        return hardy_selection_probability(theta_a, theta_b)
    except DegenerateConfigurationError:
        logger.debug("degenerate Hardy configuration at %s, scoring 0", point)
        return 0.0


def maximize_hardy(grid=None, refine_tol=None, threads=None, max_iter=None):
    grid = Config.GRID if grid is None else grid
    refine_tol = Config.REFINE_TOL if refine_tol is None else refine_tol
    threads = Config.THREADS if threads is None else threads
    _check_grid(grid, refine_tol)

    bounds = [(0.0, math.pi / 2), (0.0, math.pi / 2)]
    point, value, evaluations, iterations, history = grid_refine(
        hardy_objective, bounds, grid, refine_tol, max_iter, threads,
    )
    logger.info("Hardy maximum %.12f at theta_a=%.9f theta_b=%.9f", value, *point)
    return OptimizationResult(
        parameters={'theta_a': point[0], 'theta_b': point[1]},
        objective=value,
        evaluations=evaluations,
        grid_resolution=grid,
        refine_tolerance=refine_tol,
        iterations=iterations,
        history=history,
        scope=HARDY_SCOPE,
    )


def maximize_cabello_family(grid=None, refine_tol=None, threads=None, max_iter=None, exclusivity_tol=None):
    """
    Largest selection probability c^2 over the family for which some p makes
    the δ projectors exclusive. p is root-solved per c, so the lattice runs over c.
    """
    grid = Config.GRID if grid is None else grid
    refine_tol = Config.REFINE_TOL if refine_tol is None else refine_tol
    threads = Config.THREADS if threads is None else threads
    exclusivity_tol = Config.EXCLUSIVITY_TOL if exclusivity_tol is None else exclusivity_tol
    _check_grid(grid, refine_tol)

    def objective(point):
        (c,) = point
        _, overlap = feasible_mixing(c, exclusivity_tol)
        return c * c if overlap < exclusivity_tol else 0.0

    point, value, evaluations, iterations, history = grid_refine(
        objective, [(0.0, 1.0)], grid, refine_tol, max_iter, threads,
    )
    c = point[0]
    p, overlap = feasible_mixing(c, exclusivity_tol)
    logger.info("Cabello family maximum %.12f at c=%.9f p=%.9f (overlap %.3g)", value, c, p, overlap)
    return OptimizationResult(
        parameters={'c': c, 'p': p},
        objective=value,
        evaluations=evaluations,
        grid_resolution=grid,
        refine_tolerance=refine_tol,
        iterations=iterations,
        history=history,
        exclusivity_tol=exclusivity_tol,
        scope=CABELLO_FAMILY_SCOPE,
    )
