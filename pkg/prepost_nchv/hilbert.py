"""
Dense complex linear algebra for the small Hilbert spaces the scenarios live in.

States and operators are thin immutable wrappers around read-only numpy
arrays. Every function here is pure, so values can be shared freely
between threads.
"""

from __future__ import annotations

import logging

import numpy as np
from attrs import define, field
from scipy.linalg import null_space

# internal imports
from config import Config
from .errors import DegenerateConfigurationError, DimensionMismatchError, DomainError, NotAProjectorError


logger = logging.getLogger(__name__)


def _readonly(values, ndim):
    arr = np.array(values, dtype=complex)
    if arr.ndim != ndim:
        raise DomainError(f"expected a {ndim}-d array of amplitudes, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("amplitudes must be finite")
    arr.setflags(write=False)
    return arr


def _vector(values):
    return _readonly(values, 1)


def _matrix(values):
    return _readonly(values, 2)


@define(frozen=True, eq=False)
class StateVector:
    """A ket. Normalization is checked by `make_state`, not here, so file data can be loaded as-is and judged by validation."""

    amps: np.ndarray = field(converter=_vector)

    @amps.validator
    def _check_dim(self, attribute, value):
        if value.size < 2:
            raise DomainError(f"state dimension must be at least 2, got {value.size}")

    @property
    def dim(self):
        return self.amps.size

    def norm(self):
        return float(np.linalg.norm(self.amps))

    def is_normalized(self, tol=None):
        tol = Config.TOL_NORM if tol is None else tol
        return abs(self.norm() - 1.0) < tol

    def normalized(self):
        return StateVector(self.amps / self.norm())

    def __repr__(self):
        return f"StateVector({np.array2string(self.amps, precision=6)})"


@define(frozen=True, eq=False)
class Operator:
    entries: np.ndarray = field(converter=_matrix)

    @entries.validator
    def _check_square(self, attribute, value):
        rows, cols = value.shape
        if rows != cols:
            raise DimensionMismatchError(f"operator must be square, got {rows}x{cols}")

    @property
    def dim(self):
        return self.entries.shape[0]

    def trace(self):
        return complex(np.trace(self.entries))

    def is_hermitian(self, tol=None):
        tol = Config.TOL_NORM if tol is None else tol
        return float(np.max(np.abs(self.entries - self.entries.conj().T))) < tol

    def is_idempotent(self, tol=None):
        tol = Config.TOL_NORM if tol is None else tol
        return float(np.max(np.abs(self.entries @ self.entries - self.entries))) < tol

    def __repr__(self):
        return f"Operator(dim={self.dim})"


def make_state(amps, tol=None):
    """
    Build a StateVector that must already be a unit vector.

    :parameter amps: amplitudes in the working basis
    :parameter tol: allowed deviation of the norm from 1 (defaults to Config.TOL_NORM)
    """
    state = StateVector(amps)
    if not state.is_normalized(tol):
        raise DomainError(f"state is not normalized (norm = {state.norm()!r})")
    return state


def basis_state(dim, index):
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps)


def identity(dim):
    return Operator(np.eye(dim, dtype=complex))


def random_state(dim, rng):
    # complex gaussian draw, normalized: uniform on the unit sphere
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector(amps / np.linalg.norm(amps))


def _same_dim(x, y):
    if x.dim != y.dim:
        raise DimensionMismatchError(f"dimension mismatch: {x.dim} vs {y.dim}")


def tensor(u, v):
    # amps[i*n + j] = u[i] * v[j], which is exactly numpy's kron ordering
    return StateVector(np.kron(u.amps, v.amps))


def inner(u, v):
    """<u|v>, conjugate-linear in the first argument."""
    _same_dim(u, v)
    return complex(np.vdot(u.amps, v.amps))


def projector(u):
    return Operator(np.outer(u.amps, u.amps.conj()))


def apply(op, v):
    """Matrix-vector product. The result is left unnormalized, so it is returned as a plain array."""
    _same_dim(op, v)
    out = op.entries @ v.amps
    out.setflags(write=False)
    return out


def _require_projector(op):
    # file-loaded states are only normalized to TOL_CHECK, so judge projectors at that level
    if not (op.is_hermitian(Config.TOL_CHECK) and op.is_idempotent(Config.TOL_CHECK)):
        raise NotAProjectorError("operator is not a Hermitian idempotent")


def certain_value(op, state, tol=None):
    """
    The outcome of measuring the projector on the state, when it is certain.

    Returns 0 if the state lies in the kernel, 1 if it lies in the range,
    otherwise None.
    """
    tol = Config.TOL_CHECK if tol is None else tol
    _require_projector(op)
    image = apply(op, state)
    if np.linalg.norm(image) < tol:
        return 0
    if np.linalg.norm(image - state.amps) < tol:
        return 1
    return None


def exclusivity_deviation(p, q):
    _same_dim(p, q)
    return float(np.max(np.abs(p.entries @ q.entries)))


def are_exclusive(p, q, tol=None):
    tol = Config.TOL_CHECK if tol is None else tol
    return exclusivity_deviation(p, q) < tol


def _sum_minus_identity(ops):
    if not ops:
        raise DomainError("resolution of identity needs at least one operator")
    dim = ops[0].dim
    for op in ops[1:]:
        _same_dim(ops[0], op)
    return sum((op.entries for op in ops), np.zeros((dim, dim), dtype=complex)) - np.eye(dim)


def identity_deviation(ops):
    """Operator norm of (sum P) - I: 1 for every rank-1 member missing from a basis."""
    return float(np.linalg.norm(_sum_minus_identity(ops), 2))


def is_resolution_of_identity(ops, tol=None):
    tol = Config.TOL_CHECK if tol is None else tol
    if float(np.max(np.abs(_sum_minus_identity(ops)))) >= tol:
        return False
    return all(
        are_exclusive(ops[i], ops[j], tol)
        for i in range(len(ops))
        for j in range(i + 1, len(ops))
    )


def canonical_phase(amps, tol=None):
    """Rotate the global phase so the first non-negligible coordinate is real and positive."""
    tol = Config.TOL_CHECK if tol is None else tol
    amps = np.array(amps, dtype=complex)
    for i, x in enumerate(amps):
        if abs(x) > tol:
            amps = amps * (abs(x) / x)
            amps[i] = abs(x)
            break
    return amps


def orthocomplement_state(states, tol=None):
    """
    The unit vector orthogonal to dim - 1 linearly independent states.

    :parameter states: list of StateVector, all of the same dimension
    :parameter tol: singular values below this count as rank deficiency
    """
    tol = Config.TOL_CHECK if tol is None else tol
    if not states:
        raise DomainError("orthocomplement_state needs at least one state")
    dim = states[0].dim
    for s in states[1:]:
        _same_dim(states[0], s)
    if len(states) != dim - 1:
        raise DomainError(f"need {dim - 1} states in dimension {dim}, got {len(states)}")

    # rows are bras, so the kernel is everything orthogonal to the kets
    bras = np.array([s.amps.conj() for s in states])
    kernel = null_space(bras, rcond=tol)
    if kernel.shape[1] != 1:
        logger.debug("orthocomplement kernel has dimension %d", kernel.shape[1])
        raise DegenerateConfigurationError(f"constraint states have rank {dim - kernel.shape[1]}, expected {dim - 1}")

    amps = canonical_phase(kernel[:, 0], tol)
    return StateVector(amps / np.linalg.norm(amps))


def schmidt_rank(state, dims=(2, 2), tol=None):
    tol = Config.TOL_CHECK if tol is None else tol
    if dims[0] * dims[1] != state.dim:
        raise DimensionMismatchError(f"cannot split dimension {state.dim} as {dims[0]}x{dims[1]}")
    coefficients = np.linalg.svd(state.amps.reshape(dims), compute_uv=False)
    return int(np.sum(coefficients > tol))


def is_product_state(state, dims=(2, 2), tol=None):
    return schmidt_rank(state, dims, tol) == 1


def same_ray(u, v, tol=None):
    """Equality up to a global phase, for unit vectors."""
    tol = Config.TOL_CHECK if tol is None else tol
    return abs(abs(inner(u, v)) - 1.0) < tol


def same_operator(p, q, tol=None):
    tol = Config.TOL_CHECK if tol is None else tol
    _same_dim(p, q)
    return float(np.max(np.abs(p.entries - q.entries))) < tol
