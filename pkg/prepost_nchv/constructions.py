"""
Builders for the scenarios we verify.

Product basis order for two qubits is (A⊗B, A⊗B⊥, A⊥⊗B, A⊥⊗B⊥), with
{A, A⊥} the working basis of the first particle and {B, B⊥} of the second.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from attrs import define

# internal imports
from config import Config
from .errors import DegenerateConfigurationError, DomainError
from .hilbert import (
    StateVector,
    basis_state,
    canonical_phase,
    inner,
    make_state,
    orthocomplement_state,
    random_state,
    tensor,
)
from .models import LabeledProjector, PrePostScenario


logger = logging.getLogger(__name__)

A, A_PERP = basis_state(2, 0), basis_state(2, 1)
B, B_PERP = basis_state(2, 0), basis_state(2, 1)

CABELLO_LABELS = ('alpha', 'beta+', 'beta-', 'gamma+', 'gamma-', 'delta+', 'delta-')
HARDY_LABELS = ('alpha_hat', 'beta_hat+', 'beta_hat-', 'gamma_hat+', 'gamma_hat-', 'delta_hat+', 'delta_hat-')

HARDY_MAXIMUM = ((math.sqrt(5) - 1) / 2) ** 5

# how far inside (0, 1) the family's p scan stays, and the finite difference step used on it
_P_EDGE = 1e-4
_P_STEP = 1e-7


@define(frozen=True, eq=False)
class CandidateConstruction:
    scenario: PrePostScenario
    c: float
    p: float
    delta_overlap: float


def _combine(*terms):
    # sum of coefficient * ket, checked to be a unit vector
    return make_state(sum(coef * ket.amps for coef, ket in terms))


def _assemble(labels, pre, post, states, metadata):
    alpha, beta_p, beta_m, gamma_p, gamma_m, delta_p, delta_m = labels
    return PrePostScenario(
        dim=pre.dim,
        pre=pre,
        post=post,
        projectors=[LabeledProjector(label, states[label]) for label in labels],
        contexts=[(alpha, beta_p, gamma_p, delta_p), (alpha, beta_m, gamma_m, delta_m)],
        exclusive_pairs=[(delta_p, delta_m)],
        metadata=metadata,
    )


def cabello_scenario():
    """Two spin-1/2 particles preselected in A⊗B and postselected in a⊗B, with <a|A> = 1/3."""
    r3, r8 = math.sqrt(3), math.sqrt(8)
    a = make_state([1 / 3, -r8 / 3])

    AB, ABp, ApB, ApBp = tensor(A, B), tensor(A, B_PERP), tensor(A_PERP, B), tensor(A_PERP, B_PERP)
    states = {
        'alpha': ApBp,
        'beta+': _combine((1 / 2, ABp), (r3 / 2, ApB)),
        'beta-': _combine((1 / 2, ABp), (-r3 / 2, ApB)),
        'gamma+': _combine((r8 / (2 * r3), AB), (1 / (2 * r3), ApB), (-r3 / (2 * r3), ABp)),
        'gamma-': _combine((r8 / (2 * r3), AB), (1 / (2 * r3), ApB), (r3 / (2 * r3), ABp)),
        'delta+': _combine((math.sqrt(6) / (2 * r3), ABp), (2 / (2 * r3), AB), (-math.sqrt(2) / (2 * r3), ApB)),
        'delta-': _combine((math.sqrt(6) / (2 * r3), ABp), (-2 / (2 * r3), AB), (math.sqrt(2) / (2 * r3), ApB)),
    }
    metadata = {
        'name': 'cabello',
        'description': 'two unentangled spin-1/2 particles, preselected in A(x)B and postselected in a(x)B',
    }
    return _assemble(CABELLO_LABELS, AB, tensor(a, B), states, metadata)


def _check_open_unit(name, value):
    if not 0.0 < value < 1.0:
        raise DomainError(f"{name}={value!r} must lie in the open interval (0, 1)")


def _family_kets(c, p):
    """Raw real amplitude arrays of the generalized family, before the δ states are derived."""
    s, q = math.sqrt(1 - c * c), math.sqrt(1 - p * p)
    kets = {
        'pre': np.array([1.0, 0.0, 0.0, 0.0]),
        'post': np.array([c, 0.0, -s, 0.0]),
        'alpha': np.array([0.0, 0.0, 0.0, 1.0]),
        'beta+': np.array([0.0, p, q, 0.0]),
        'beta-': np.array([0.0, p, -q, 0.0]),
    }
    for sign, label in ((1, 'gamma+'), (-1, 'gamma-')):
        gamma = np.array([s, -sign * c * q / p, c, 0.0])
        kets[label] = gamma / np.linalg.norm(gamma)
    return kets


def _family_deltas(kets):
    delta_p = orthocomplement_state([StateVector(kets[k]) for k in ('alpha', 'beta+', 'gamma+')])
    delta_m = orthocomplement_state([StateVector(kets[k]) for k in ('alpha', 'beta-', 'gamma-')])
    return delta_p, delta_m


def signed_delta_overlap(c, p):
    """
    <δ+|δ−> of the real family, with both δ states in canonical phase.

    Canonical δ± keep a positive first coordinate across the whole open
    square, so this is a smooth function of p.
    """
    _check_open_unit('c', c)
    _check_open_unit('p', p)
    delta_p, delta_m = _family_deltas(_family_kets(c, p))
    return inner(delta_p, delta_m).real


def cabello_family(c, p):
    """
    The two-parameter real family that passes through cabello_scenario() at (1/3, 1/2).

    :parameter c: overlap <a|A> of the first particle's pre and post states
    :parameter p: mixing coefficient of the β states
    """
    _check_open_unit('c', c)
    _check_open_unit('p', p)
    kets = _family_kets(c, p)
    delta_p, delta_m = _family_deltas(kets)

    states = {label: make_state(kets[label]) for label in CABELLO_LABELS[:5]}
    states['delta+'], states['delta-'] = delta_p, delta_m
    metadata = {'name': 'cabello-family', 'c': c, 'p': p}
    scenario = _assemble(CABELLO_LABELS, make_state(kets['pre']), make_state(kets['post']), states, metadata)
    return CandidateConstruction(scenario, c, p, abs(inner(delta_p, delta_m)))


def _bisect_on_slope(f, left, right, width=1e-13, max_iter=200):
    # f is smooth and unimodal on [left, right]; chase the zero of its central difference
    for _ in range(max_iter):
        if right - left < width:
            break
        mid = 0.5 * (left + right)
        slope = (f(mid + _P_STEP) - f(mid - _P_STEP)) / (2 * _P_STEP)
        if slope > 0:
            right = mid
        else:
            left = mid
    return 0.5 * (left + right)


def _bisect_on_sign(f, positive, negative, width=1e-15, max_iter=200):
    for _ in range(max_iter):
        if abs(negative - positive) < width:
            break
        mid = 0.5 * (positive + negative)
        if f(mid) > 0:
            positive = mid
        else:
            negative = mid
    return 0.5 * (positive + negative)


def feasible_mixing(c, exclusivity_tol=None, scan=32):
    """
    Root-solve the δ overlap of the family in p for a fixed c.

    Returns (p, |<δ+|δ−>|) for the best p found. The overlap as a function
    of p has a single minimum; a minimum within exclusivity_tol of zero is
    returned as is (the tangent case), a clearly negative one is bracketed
    from the left and bisected to a true root.
    """
    tol = Config.EXCLUSIVITY_TOL if exclusivity_tol is None else exclusivity_tol
    _check_open_unit('c', c)

    def overlap(p):
        return signed_delta_overlap(c, p)

    grid = np.linspace(_P_EDGE, 1 - _P_EDGE, scan)
    values = [overlap(p) for p in grid]
    i = int(np.argmin(values))
    left, right = grid[max(i - 1, 0)], grid[min(i + 1, scan - 1)]

    p_min = _bisect_on_slope(overlap, left, right)
    h_min = overlap(p_min)
    if h_min > -tol:
        return p_min, abs(h_min)

    # the overlap blows up positive as p -> 0, so a positive point lies to the left
    positive = next((grid[j] for j in range(i - 1, -1, -1) if values[j] > 0), _P_EDGE)
    p_root = _bisect_on_sign(overlap, positive, p_min)
    return p_root, abs(overlap(p_root))


def _hardy_qubits(theta_a, theta_b):
    for name, theta in (('theta_a', theta_a), ('theta_b', theta_b)):
        if not 0.0 < theta < math.pi / 2:
            raise DegenerateConfigurationError(f"{name}={theta!r} outside the open interval (0, pi/2)")
    a = make_state([math.cos(theta_a), math.sin(theta_a)])
    a_perp = make_state([-math.sin(theta_a), math.cos(theta_a)])
    b = make_state([math.cos(theta_b), math.sin(theta_b)])
    b_perp = make_state([-math.sin(theta_b), math.cos(theta_b)])
    return a, a_perp, b, b_perp


def hardy_states(theta_a, theta_b):
    """The entangled preselection |η1> and the product postselection |η2> = a⊗b."""
    a, _, b, _ = _hardy_qubits(theta_a, theta_b)
    pre = orthocomplement_state([tensor(A, B), tensor(a, B_PERP), tensor(A_PERP, b)])
    post = tensor(a, b)
    if abs(inner(post, pre)) < Config.TOL_CHECK:
        raise DegenerateConfigurationError('postselection has zero overlap with the preselection')
    return pre, post


def hardy_selection_probability(theta_a, theta_b):
    pre, post = hardy_states(theta_a, theta_b)
    return abs(inner(post, pre)) ** 2


def hardy_scenario(theta_a, theta_b):
    """
    Hardy's construction with the same orthogonality relations as the
    Cabello scenario, at single-particle angles theta_a and theta_b.
    """
    a, a_perp, b, b_perp = _hardy_qubits(theta_a, theta_b)
    pre, post = hardy_states(theta_a, theta_b)
    states = dict(zip(HARDY_LABELS, [
        tensor(A, B),
        tensor(a, B_PERP),
        tensor(A_PERP, b),
        tensor(a_perp, B_PERP),
        tensor(A_PERP, b_perp),
        tensor(A_PERP, B),
        tensor(A, B_PERP),
    ]))
    metadata = {'name': 'hardy', 'theta_a': theta_a, 'theta_b': theta_b}
    return _assemble(HARDY_LABELS, pre, post, states, metadata)


def _perp(u):
    return StateVector(canonical_phase([-u.amps[1].conjugate(), u.amps[0].conjugate()]))


def single_qubit_scenario(n_contexts, seed):
    """Random dimension-2 scenario: seeded pre/post and n_contexts bases {u, u⊥}."""
    if n_contexts < 1:
        raise DomainError(f"n_contexts must be at least 1, got {n_contexts}")
    rng = np.random.default_rng(seed)

    pre = random_state(2, rng)
    post = random_state(2, rng)
    while abs(inner(post, pre)) <= Config.TOL_CHECK:
        post = random_state(2, rng)

    projectors, contexts = [], []
    for i in range(n_contexts):
        u = random_state(2, rng)
        projectors += [LabeledProjector(f"u{i}", u), LabeledProjector(f"u{i}_perp", _perp(u))]
        contexts.append((f"u{i}", f"u{i}_perp"))

    metadata = {'name': 'single-qubit', 'n_contexts': n_contexts, 'seed': seed}
    return PrePostScenario(dim=2, pre=pre, post=post, projectors=projectors, contexts=contexts, metadata=metadata)


def first_particle_scenario():
    """The first Cabello particle on its own: preselected in A, postselected in a."""
    a = make_state([1 / 3, -math.sqrt(8) / 3])
    a_perp = make_state([math.sqrt(8) / 3, 1 / 3])
    projectors = [
        LabeledProjector('A', A),
        LabeledProjector('A_perp', A_PERP),
        LabeledProjector('a', a),
        LabeledProjector('a_perp', a_perp),
    ]
    metadata = {'name': 'first-particle'}
    return PrePostScenario(
        dim=2, pre=A, post=a, projectors=projectors,
        contexts=[('A', 'A_perp'), ('a', 'a_perp')], metadata=metadata,
    )
