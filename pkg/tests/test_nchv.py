import numpy as np
import pytest

from prepost_nchv.constructions import first_particle_scenario, hardy_scenario, single_qubit_scenario
from prepost_nchv.errors import EnumerationLimitError, NoContradictionError
from prepost_nchv.models import ForcedValue, Justification
from prepost_nchv.nchv import CONFLICT, Rule, Status, contradiction_trace, enumerate_assignments, propagate
from prepost_nchv.prepost import forced_values


def brute_force(scenario, forced):
    """Independent oracle: integer bitmasks, no shared helpers."""
    labels = sorted(scenario.labels)
    n = len(labels)
    bit = {label: 1 << (n - 1 - i) for i, label in enumerate(labels)}
    found = []
    for mask in range(2 ** n):
        value = lambda label: 1 if mask & bit[label] else 0
        if any(value(f.label) != f.bit for f in forced):
            continue
        if any(sum(value(m) for m in c.members) != 1 for c in scenario.contexts):
            continue
        if any(value(a) and value(b) for a, b in scenario.exclusive_pairs):
            continue
        found.append({label: value(label) for label in labels})
    return found


class TestEnumerateAssignments:

    def test_cabello_is_unsat(self, cabello):
        report = enumerate_assignments(cabello, forced_values(cabello))
        assert report.status is Status.UNSAT
        assert report.witnesses == ()
        assert report.assignments_examined == 128

    def test_predictions_alone_are_satisfiable(self, cabello):
        forced = [f for f in forced_values(cabello) if f.justification is Justification.PREDICTION]
        report = enumerate_assignments(cabello, forced)
        assert report.status is Status.SAT
        assert [w.values for w in report.witnesses] == brute_force(cabello, forced)

    def test_every_forced_value_is_needed(self, cabello):
        forced = forced_values(cabello)
        assert len(forced) == 5
        for i in range(len(forced)):
            rest = forced[:i] + forced[i + 1:]
            assert enumerate_assignments(cabello, rest).status is Status.SAT, forced[i]

    def test_hardy_is_unsat(self):
        rng = np.random.default_rng(12)
        for theta_a, theta_b in rng.uniform(0.05, np.pi / 2 - 0.05, size=(5, 2)):
            s = hardy_scenario(theta_a, theta_b)
            assert enumerate_assignments(s, forced_values(s)).status is Status.UNSAT

    def test_single_context_qubit_has_two_witnesses(self):
        s = single_qubit_scenario(1, seed=0)
        report = enumerate_assignments(s, forced_values(s))
        assert report.status is Status.SAT
        assert [w.ones() for w in report.witnesses] == [['u0_perp'], ['u0']]

    def test_qubit_scenarios_are_always_satisfiable(self):
        for seed in range(100):
            s = single_qubit_scenario(1 + seed % 10, seed)
            report = enumerate_assignments(s, forced_values(s))
            assert report.status is Status.SAT, seed
            assert report.assignments_examined == 2 ** len(s.labels)

    def test_first_particle_alone_is_satisfiable(self):
        s = first_particle_scenario()
        report = enumerate_assignments(s, forced_values(s))
        assert report.status is Status.SAT
        assert [w.ones() for w in report.witnesses] == [['A', 'a']]

    def test_agrees_with_bitmask_oracle(self, cabello, hardy):
        rng = np.random.default_rng(13)
        for s in (cabello, hardy, single_qubit_scenario(3, 4)):
            forced = forced_values(s)
            for _ in range(10):
                subset = [f for f in forced if rng.random() < 0.5]
                report = enumerate_assignments(s, subset)
                expected = brute_force(s, subset)
                assert [w.values for w in report.witnesses] == expected
                assert report.status is (Status.SAT if expected else Status.UNSAT)

    def test_witnesses_are_lexicographic(self, cabello):
        report = enumerate_assignments(cabello, [])
        keys = [tuple(w.values[label] for label in sorted(cabello.labels)) for w in report.witnesses]
        assert keys == sorted(keys)

    @pytest.mark.parametrize('threads', [2, 3, 4, 8])
    def test_thread_count_does_not_change_the_answer(self, cabello, threads):
        forced = [f for f in forced_values(cabello) if f.label != 'gamma-']
        single = enumerate_assignments(cabello, forced, threads=1)
        parallel = enumerate_assignments(cabello, forced, threads=threads)
        assert parallel.witnesses == single.witnesses
        assert parallel.assignments_examined == single.assignments_examined

    def test_limit(self, cabello):
        with pytest.raises(EnumerationLimitError):
            enumerate_assignments(cabello, [], limit=6)


class TestContradictionTrace:

    def test_cabello(self, cabello):
        trace = contradiction_trace(cabello)
        assert trace.certified
        assert trace.outcome == CONFLICT
        assert [(s.premises, s.rule, s.conclusion, s.bit) for s in trace.steps] == [
            (('alpha', 'beta+', 'gamma+'), Rule.SUM_RULE, 'delta+', 1),
            (('alpha', 'beta-', 'gamma-'), Rule.SUM_RULE, 'delta-', 1),
            (('delta+', 'delta-'), Rule.EXCLUSIVITY, CONFLICT, None),
        ]

    def test_lines(self, cabello):
        assert contradiction_trace(cabello).lines() == [
            'SumRule(alpha, beta+, gamma+) => delta+=1',
            'SumRule(alpha, beta-, gamma-) => delta-=1',
            'Exclusivity(delta+, delta-) => CONFLICT',
        ]

    def test_hardy_has_the_same_shape(self):
        rng = np.random.default_rng(14)
        for theta_a, theta_b in rng.uniform(0.05, np.pi / 2 - 0.05, size=(20, 2)):
            trace = contradiction_trace(hardy_scenario(theta_a, theta_b))
            assert [(s.rule, s.conclusion) for s in trace.steps] == [
                (Rule.SUM_RULE, 'delta_hat+'),
                (Rule.SUM_RULE, 'delta_hat-'),
                (Rule.EXCLUSIVITY, CONFLICT),
            ]

    def test_satisfiable_scenario(self):
        with pytest.raises(NoContradictionError):
            contradiction_trace(single_qubit_scenario(2, 3))

    def test_given_forced_values_are_recorded(self, cabello):
        forced = forced_values(cabello)
        assert contradiction_trace(cabello, forced).given == tuple(forced)


class TestPropagate:

    def test_one_forces_the_rest_of_the_context(self, cabello):
        trace = propagate(cabello, [ForcedValue('delta+', 1, Justification.PREDICTION)])
        concluded = {s.conclusion: s.bit for s in trace.steps}
        assert concluded['alpha'] == 0
        assert concluded['delta-'] == 0

    def test_no_certificate_when_propagation_stalls(self, cabello):
        trace = propagate(cabello, [])
        assert not trace.certified
        assert trace.steps == ()
        assert trace.outcome != CONFLICT

    def test_all_zero_context_conflicts(self, cabello):
        forced = [ForcedValue(label, 0, Justification.PREDICTION) for label in ('alpha', 'beta+', 'gamma+', 'delta+')]
        trace = propagate(cabello, forced)
        assert trace.certified
        assert trace.steps[-1].conclusion == CONFLICT
        assert trace.steps[-1].rule is Rule.SUM_RULE
