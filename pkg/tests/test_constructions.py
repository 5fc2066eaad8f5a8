import math

import numpy as np
import pytest

from prepost_nchv.constructions import (
    CABELLO_LABELS,
    HARDY_LABELS,
    cabello_family,
    feasible_mixing,
    hardy_scenario,
    hardy_selection_probability,
    signed_delta_overlap,
    single_qubit_scenario,
)
from prepost_nchv.errors import DegenerateConfigurationError, DomainError
from prepost_nchv.hilbert import inner, is_resolution_of_identity, same_operator
from prepost_nchv.models import validate


def generic_angles(count, seed):
    rng = np.random.default_rng(seed)
    return rng.uniform(0.05, math.pi / 2 - 0.05, size=(count, 2))


class TestCabelloScenario:

    def test_shape(self, cabello):
        assert cabello.dim == 4
        assert cabello.labels == list(CABELLO_LABELS)
        assert [c.members for c in cabello.contexts] == [
            ('alpha', 'beta+', 'gamma+', 'delta+'),
            ('alpha', 'beta-', 'gamma-', 'delta-'),
        ]
        assert cabello.exclusive_pairs == (('delta+', 'delta-'),)

    def test_selection_probability(self, cabello):
        assert abs(inner(cabello.post, cabello.pre)) ** 2 == pytest.approx(1 / 9, abs=1e-12)

    def test_gamma_plus_orthogonal_to_post(self, cabello):
        assert abs(inner(cabello.lookup('gamma+').state, cabello.post)) < 1e-12

    def test_deltas_orthogonal(self, cabello):
        assert abs(inner(cabello.lookup('delta+').state, cabello.lookup('delta-').state)) < 1e-12

    def test_five_vanishing_overlaps(self, cabello):
        for label in ('alpha', 'beta+', 'beta-'):
            assert abs(inner(cabello.lookup(label).state, cabello.pre)) < 1e-12
        for label in ('gamma+', 'gamma-'):
            assert abs(inner(cabello.lookup(label).state, cabello.post)) < 1e-12

    def test_validates(self, cabello):
        assert validate(cabello).passed


class TestCabelloFamily:

    def test_reproduces_cabello_scenario(self, cabello):
        candidate = cabello_family(1 / 3, 1 / 2)
        assert candidate.delta_overlap < 1e-12
        for label in CABELLO_LABELS:
            assert same_operator(candidate.scenario.lookup(label).operator, cabello.lookup(label).operator, 1e-12)
        assert validate(candidate.scenario).passed

    def test_infeasible_mixing(self):
        assert cabello_family(1 / 3, 0.9).delta_overlap > 1e-6

    def test_no_feasible_mixing_above_one_third(self):
        for p in np.linspace(1e-4, 1 - 1e-4, 10_000):
            assert signed_delta_overlap(0.5, p) > 0

    def test_orthogonality_by_construction(self):
        rng = np.random.default_rng(8)
        for c, p in rng.uniform(0.01, 0.99, size=(50, 2)):
            s = cabello_family(c, p).scenario
            for label in ('alpha', 'beta+', 'beta-'):
                assert abs(inner(s.lookup(label).state, s.pre)) < 1e-12
            for label in ('gamma+', 'gamma-'):
                assert abs(inner(s.lookup(label).state, s.post)) < 1e-12
            for context in s.contexts:
                assert is_resolution_of_identity(s.operators(context.members), 1e-12)

    def test_only_delta_exclusivity_can_fail(self):
        report = validate(cabello_family(0.6, 0.4).scenario)
        assert [c.name for c in report.failures()] == ['exclusive (delta+, delta-)']

    @pytest.mark.parametrize('c, p', [(0, 0.5), (1, 0.5), (0.3, 0.0), (0.3, 1.2)])
    def test_domain(self, c, p):
        with pytest.raises(DomainError):
            cabello_family(c, p)


class TestFeasibleMixing:

    def test_tangent_at_one_third(self):
        p, overlap = feasible_mixing(1 / 3)
        assert abs(p - 0.5) < 1e-9
        assert overlap < 1e-9

    def test_root_below_one_third(self):
        p, overlap = feasible_mixing(0.2)
        assert overlap < 1e-12
        assert cabello_family(0.2, p).delta_overlap < 1e-12

    def test_infeasible_just_above(self):
        _, overlap = feasible_mixing(0.34)
        assert overlap > 1e-6

    def test_feasible_region_is_an_interval_ending_at_one_third(self):
        cs = np.concatenate([np.arange(0.01, 1.0, 0.01), [1 / 3 - 1e-3, 1 / 3 + 1e-3]])
        for c in cs:
            _, overlap = feasible_mixing(c)
            assert (overlap < 1e-9) == (c < 1 / 3), c

    def test_matches_dense_sweep(self):
        for c in (0.15, 0.3, 0.34, 0.5):
            sweep = min(abs(signed_delta_overlap(c, p)) for p in np.linspace(1e-3, 1 - 1e-3, 2000))
            _, overlap = feasible_mixing(c)
            assert overlap <= sweep + 1e-9


class TestHardyScenario:

    def test_twenty_generic_angle_pairs(self):
        for theta_a, theta_b in generic_angles(20, seed=9):
            s = hardy_scenario(theta_a, theta_b)
            report = validate(s)
            assert report.passed, report.failures()
            for context in s.contexts:
                assert is_resolution_of_identity(s.operators(context.members), 1e-9)

    def test_gamma_plus_orthogonal_to_post(self, hardy):
        assert abs(inner(hardy.lookup('gamma_hat+').state, hardy.post)) < 1e-12

    def test_preselection_constraints(self, hardy):
        for label in HARDY_LABELS[:3]:
            assert abs(inner(hardy.lookup(label).state, hardy.pre)) < 1e-12

    def test_swap_symmetry(self):
        for theta_a, theta_b in generic_angles(30, seed=10):
            assert hardy_selection_probability(theta_a, theta_b) == pytest.approx(
                hardy_selection_probability(theta_b, theta_a), abs=1e-12
            )

    def test_closed_form(self):
        for theta_a, theta_b in generic_angles(30, seed=11):
            ca, sa, cb, sb = math.cos(theta_a), math.sin(theta_a), math.cos(theta_b), math.sin(theta_b)
            expected = (ca * sa * cb * sb) ** 2 / (sa * sa * cb * cb + ca * ca * sb * sb + ca * ca * cb * cb)
            assert hardy_selection_probability(theta_a, theta_b) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize('theta_a, theta_b', [(0.0, 0.5), (0.5, math.pi / 2), (-0.1, 0.5), (0.5, 2.0)])
    def test_boundary_is_degenerate(self, theta_a, theta_b):
        with pytest.raises(DegenerateConfigurationError, match='degenerate configuration'):
            hardy_scenario(theta_a, theta_b)


class TestSingleQubitScenario:

    def test_one_context(self):
        s = single_qubit_scenario(1, seed=0)
        assert s.dim == 2
        assert len(s.contexts) == 1 and len(s.contexts[0].members) == 2
        assert validate(s).passed

    def test_ten_contexts(self):
        s = single_qubit_scenario(10, seed=42)
        assert len(s.contexts) == 10
        assert len(s.projectors) == 20
        assert validate(s).passed

    def test_reproducible(self):
        first, second = single_qubit_scenario(3, seed=5), single_qubit_scenario(3, seed=5)
        np.testing.assert_array_equal(first.pre.amps, second.pre.amps)
        np.testing.assert_array_equal(first.projectors[4].state.amps, second.projectors[4].state.amps)

    def test_needs_a_context(self):
        with pytest.raises(DomainError):
            single_qubit_scenario(0, seed=0)
