import math

import numpy as np
import pytest

from prepost_nchv.constructions import HARDY_MAXIMUM
from prepost_nchv.errors import ConvergenceError, DomainError
from prepost_nchv.optimizer import grid_refine, hardy_objective, maximize_cabello_family, maximize_hardy


def hardy_closed_form(theta_a, theta_b):
    ca, sa, cb, sb = np.cos(theta_a), np.sin(theta_a), np.cos(theta_b), np.sin(theta_b)
    return (ca * sa * cb * sb) ** 2 / (sa ** 2 * cb ** 2 + ca ** 2 * sb ** 2 + ca ** 2 * cb ** 2)


class TestGridRefine:

    def test_finds_a_smooth_peak(self):
        point, value, _, _, _ = grid_refine(lambda x: -((x[0] - 0.3) ** 2), [(0.0, 1.0)], 16, 1e-10)
        assert point[0] == pytest.approx(0.3, abs=1e-6)
        assert value == pytest.approx(0.0, abs=1e-12)

    def test_two_dimensional(self):
        point, _, evaluations, iterations, _ = grid_refine(
            lambda x: -((x[0] - 0.2) ** 2) - (x[1] - 0.7) ** 2, [(0.0, 1.0), (0.0, 1.0)], 20, 1e-8,
        )
        np.testing.assert_allclose(point, (0.2, 0.7), atol=1e-6)
        assert evaluations <= iterations * 20 * 20

    def test_stays_inside_the_open_box(self):
        seen = []

        def objective(x):
            seen.append(x[0])
            return x[0]

        point, _, _, _, _ = grid_refine(objective, [(0.0, 1.0)], 16, 1e-6)
        assert all(0.0 < x < 1.0 for x in seen)
        assert point[0] < 1.0

    def test_ties_go_to_the_smaller_point(self):
        point, _, _, iterations, _ = grid_refine(lambda x: 1.0, [(0.0, 1.0)], 16, 0.5)
        assert iterations == 1
        assert point[0] == pytest.approx(1 / 17)

    def test_history_is_monotone(self):
        _, _, _, _, history = grid_refine(lambda x: math.sin(7 * x[0]), [(0.0, 1.0)], 16, 1e-9)
        assert all(b >= a for a, b in zip(history, history[1:]))

    def test_gives_up(self):
        with pytest.raises(ConvergenceError):
            grid_refine(lambda x: x[0], [(0.0, 1.0)], 16, 1e-9, max_iter=1)


class TestHardyObjective:

    def test_degenerate_points_score_zero(self):
        assert hardy_objective((0.0, 0.5)) == 0.0
        assert hardy_objective((0.5, math.pi / 2)) == 0.0

    def test_matches_closed_form(self):
        assert hardy_objective((0.3, 1.2)) == pytest.approx(hardy_closed_form(0.3, 1.2), abs=1e-12)


class TestMaximizeHardy:

    def test_maximum(self, hardy_optimum):
        assert hardy_optimum.objective == pytest.approx(HARDY_MAXIMUM, abs=1e-6)
        assert HARDY_MAXIMUM == pytest.approx(0.0901699, abs=1e-7)

    def test_symmetric_optimum(self, hardy_optimum):
        theta_a, theta_b = hardy_optimum.parameters['theta_a'], hardy_optimum.parameters['theta_b']
        assert theta_a == pytest.approx(theta_b, abs=1e-6)
        assert math.sin(theta_a) ** 2 == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-6)

    def test_below_one_ninth(self, hardy_optimum):
        assert hardy_optimum.objective < 1 / 9

    def test_dense_sweep_oracle(self, hardy_optimum):
        axis = (np.arange(1, 513) / 513) * (math.pi / 2)
        ta, tb = np.meshgrid(axis, axis, indexing='ij')
        assert hardy_optimum.objective >= hardy_closed_form(ta, tb).max() - 1e-12

    def test_recorded_settings(self, hardy_optimum):
        assert hardy_optimum.grid_resolution == 64
        assert hardy_optimum.refine_tolerance == 1e-9
        assert hardy_optimum.evaluations > 64 * 64
        assert len(hardy_optimum.history) == hardy_optimum.iterations
        assert all(b >= a for a, b in zip(hardy_optimum.history, hardy_optimum.history[1:]))

    def test_threads_do_not_change_the_result(self):
        single = maximize_hardy(grid=16, refine_tol=1e-6, threads=1)
        parallel = maximize_hardy(grid=16, refine_tol=1e-6, threads=4)
        assert parallel == single

    def test_grid_too_coarse(self):
        with pytest.raises(DomainError):
            maximize_hardy(grid=8)

    def test_bad_tolerance(self):
        with pytest.raises(DomainError):
            maximize_hardy(refine_tol=0.0)


class TestMaximizeCabelloFamily:

    def test_maximum(self, cabello_family_optimum):
        assert cabello_family_optimum.objective == pytest.approx(1 / 9, abs=1e-6)
        assert cabello_family_optimum.parameters['c'] == pytest.approx(1 / 3, abs=1e-4)
        assert cabello_family_optimum.parameters['p'] == pytest.approx(1 / 2, abs=1e-4)

    def test_records_the_exclusivity_tolerance(self, cabello_family_optimum):
        assert cabello_family_optimum.exclusivity_tol == 1e-9
        assert 'delta' in cabello_family_optimum.scope

    def test_grid_too_coarse(self):
        with pytest.raises(DomainError):
            maximize_cabello_family(grid=15)
