"""
Dense state-vector and density-matrix kernels.

Basis convention: computational basis index ``x`` holds qubit ``i`` at bit
``i`` (qubit 0 is the least significant bit).  A ``k``-qubit operator applied
to ``targets = (t0, t1, ...)`` uses the same convention on its own index, so
``targets[0]`` is the least significant bit of the operator's row index.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import InvalidArgumentError, PostselectionError, ResourceLimitError

MAX_VECTOR_QUBITS = 24
MAX_DENSITY_QUBITS = 13
POSTSELECT_THRESHOLD = 1e-14


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray
    n_qubits: int

    def __post_init__(self):
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise InvalidArgumentError(
                f"expected {1 << self.n_qubits} amplitudes, got shape {self.amplitudes.shape}"
            )

    @classmethod
    def from_array(cls, amplitudes) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex)
        n = int(round(np.log2(amps.size)))
        return cls(amps, n)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True, eq=False)
class DensityState:
    matrix: np.ndarray
    n_qubits: int

    def __post_init__(self):
        dim = 1 << self.n_qubits
        if self.matrix.shape != (dim, dim):
            raise InvalidArgumentError(
                f"expected {dim}x{dim} density matrix, got shape {self.matrix.shape}"
            )

    @classmethod
    def from_array(cls, matrix) -> "DensityState":
        mat = np.asarray(matrix, dtype=complex)
        n = int(round(np.log2(mat.shape[0])))
        return cls(mat, n)

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def check(self, atol: float = 1e-10, positivity: bool = True) -> None:
        """Validate trace, hermiticity and (optionally) positivity; O(8^N), test use only."""
        m = self.matrix
        if abs(np.trace(m) - 1) > atol:
            raise AssertionError(f"trace {np.trace(m)} != 1")
        if np.max(np.abs(m - m.conj().T)) > atol:
            raise AssertionError("density matrix is not Hermitian")
        if positivity:
            lo = np.linalg.eigvalsh((m + m.conj().T) / 2).min()
            if lo < -1e-9:
                raise AssertionError(f"negative eigenvalue {lo}")


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Channel ``rho -> sum_a E_a rho E_a^dagger`` on ``arity`` qubits."""

    operators: tuple
    arity: int
    # Set when every operator is a scaled unitary; (probability, unitary) pairs.
    mixture: tuple = field(default=None, repr=False)

    def __post_init__(self):
        dim = 1 << self.arity
        for op in self.operators:
            if op.shape != (dim, dim):
                raise InvalidArgumentError(f"Kraus operator shape {op.shape} != ({dim}, {dim})")

    def completeness_error(self) -> float:
        dim = 1 << self.arity
        total = sum(op.conj().T @ op for op in self.operators)
        return float(np.max(np.abs(total - np.eye(dim))))

    @property
    def is_mixed_unitary(self) -> bool:
        return self.mixture is not None


def plus_state(n: int) -> StateVector:
    if not 1 <= n <= MAX_VECTOR_QUBITS:
        raise ResourceLimitError(f"plus_state supports 1..{MAX_VECTOR_QUBITS} qubits, got {n}")
    dim = 1 << n
    return StateVector(np.full(dim, dim**-0.5, dtype=complex), n)


def basis_state(n: int, index: int) -> StateVector:
    amps = np.zeros(1 << n, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps, n)


def to_density(psi: StateVector) -> DensityState:
    if psi.n_qubits > MAX_DENSITY_QUBITS:
        raise ResourceLimitError(f"density matrices limited to {MAX_DENSITY_QUBITS} qubits")
    a = psi.amplitudes
    return DensityState(np.outer(a, a.conj()), psi.n_qubits)


def _check_targets(targets: Sequence[int], n: int) -> tuple:
    targets = tuple(int(t) for t in targets)
    if len(set(targets)) != len(targets):
        raise InvalidArgumentError(f"duplicate targets {targets}")
    if any(not 0 <= t < n for t in targets):
        raise InvalidArgumentError(f"targets {targets} out of range for {n} qubits")
    return targets


def _apply_to_axes(tensor: np.ndarray, op: np.ndarray, axes: list) -> np.ndarray:
    """Contract a ``2^k x 2^k`` operator into ``tensor`` along ``axes``.

    ``axes`` lists tensor axes in the operator's most-significant-first order.
    """
    k = len(axes)
    op_t = op.reshape((2,) * (2 * k))
    out = np.tensordot(op_t, tensor, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(out, list(range(k)), axes)


def apply_op_vector(amps: np.ndarray, op: np.ndarray, targets: Sequence[int], n: int) -> np.ndarray:
    """Unchecked kernel: ``op`` on ``targets`` of a flat ``2^n`` amplitude vector."""
    psi = amps.reshape((2,) * n)
    axes = [n - 1 - t for t in reversed(targets)]
    return _apply_to_axes(psi, op, axes).reshape(-1)


def apply_op_density(rho: np.ndarray, op: np.ndarray, targets: Sequence[int], n: int) -> np.ndarray:
    """Unchecked kernel: ``rho -> op rho op^dagger`` on ``targets``."""
    t = rho.reshape((2,) * (2 * n))
    rows = [n - 1 - q for q in reversed(targets)]
    cols = [2 * n - 1 - q for q in reversed(targets)]
    t = _apply_to_axes(t, op, rows)
    t = _apply_to_axes(t, op.conj(), cols)
    return t.reshape(rho.shape)


def _is_unitary(u: np.ndarray, atol: float = 1e-10) -> bool:
    return np.allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=atol, rtol=0)


State = Union[StateVector, DensityState]


def apply_unitary(state: State, u, targets: Sequence[int]) -> State:
    """Apply ``u`` to ``targets``; returns a new state of the same kind."""
    u = np.asarray(u, dtype=complex)
    targets = _check_targets(targets, state.n_qubits)
    k = len(targets)
    if u.shape != (1 << k, 1 << k):
        raise InvalidArgumentError(f"unitary shape {u.shape} does not match {k} targets")
    if not _is_unitary(u):
        raise InvalidArgumentError("matrix is not unitary")
    if isinstance(state, StateVector):
        return StateVector(apply_op_vector(state.amplitudes, u, targets, state.n_qubits), state.n_qubits)
    return DensityState(apply_op_density(state.matrix, u, targets, state.n_qubits), state.n_qubits)


def apply_channel(rho: DensityState, ch: KrausChannel, targets: Sequence[int]) -> DensityState:
    targets = _check_targets(targets, rho.n_qubits)
    if len(targets) != ch.arity:
        raise InvalidArgumentError(f"channel arity {ch.arity} != {len(targets)} targets")
    n = rho.n_qubits
    out = np.zeros_like(rho.matrix)
    for op in ch.operators:
        out += apply_op_density(rho.matrix, op, targets, n)
    return DensityState(out, n)


def depolarize(rho: DensityState, p: float, targets: Sequence[int]) -> DensityState:
    """
    ``rho -> (1 - p) rho + p Tr_targets(rho) (x) I / 2^k``.

    Same map as the uniform-Pauli Kraus set of the gate error model, evaluated
    with one partial trace instead of ``4^k`` conjugations.
    """
    targets = _check_targets(targets, rho.n_qubits)
    if p == 0:
        return rho
    n = rho.n_qubits
    k = len(targets)
    dim = 1 << k
    axes = [n - 1 - q for q in targets] + [2 * n - 1 - q for q in targets]
    t = np.moveaxis(rho.matrix.reshape((2,) * (2 * n)), axes, list(range(2 * k)))
    moved_shape = t.shape
    t = t.reshape(dim, dim, -1)
    reduced = np.einsum("iir->r", t) / dim
    out = (1 - p) * t
    diag = np.arange(dim)
    out[diag, diag] += p * reduced
    out = np.moveaxis(out.reshape(moved_shape), list(range(2 * k)), axes)
    return DensityState(np.ascontiguousarray(out).reshape(rho.matrix.shape), n)


def expectation_diagonal(rho: DensityState, diag) -> float:
    """``Tr(H rho)`` for diagonal ``H``."""
    diag = np.asarray(diag, dtype=float)
    if diag.shape != (rho.matrix.shape[0],):
        raise InvalidArgumentError(f"diagonal length {diag.shape} != {rho.matrix.shape[0]}")
    return float(np.dot(diag, np.diagonal(rho.matrix).real))


def fidelity_pure(rho: DensityState, psi: StateVector) -> float:
    if psi.amplitudes.shape[0] != rho.matrix.shape[0]:
        raise InvalidArgumentError("dimension mismatch between density matrix and state")
    a = psi.amplitudes
    return float(np.vdot(a, rho.matrix @ a).real)


def project(rho: DensityState, projector) -> tuple:
    """Return ``(P rho P / Tr(P rho), Tr(P rho))``."""
    p_mat = np.asarray(projector, dtype=complex)
    if p_mat.shape != rho.matrix.shape:
        raise InvalidArgumentError("projector dimension mismatch")
    if np.max(np.abs(p_mat @ p_mat - p_mat)) > 1e-9:
        raise InvalidArgumentError("matrix is not idempotent")
    prob = float(np.trace(p_mat @ rho.matrix).real)
    if prob < POSTSELECT_THRESHOLD:
        raise PostselectionError(f"postselection probability {prob:.3e} below threshold")
    out = p_mat @ rho.matrix @ p_mat.conj().T / prob
    return DensityState(out, rho.n_qubits), prob


def postselect_qubit(rho: DensityState, qubit: int, outcome: int = 0) -> tuple:
    """
    Project ``qubit`` onto ``|outcome>``, renormalize and discard it.

    Returns ``(reduced_state, probability)`` where the reduced state lives on
    the remaining ``n - 1`` qubits (higher qubits shift down by one).
    """
    n = rho.n_qubits
    if not 0 <= qubit < n or n < 2:
        raise InvalidArgumentError(f"qubit {qubit} invalid for {n}-qubit state")
    t = rho.matrix.reshape((2,) * (2 * n))
    idx = [slice(None)] * (2 * n)
    idx[n - 1 - qubit] = outcome
    idx[2 * n - 1 - qubit] = outcome
    block = t[tuple(idx)].reshape(1 << (n - 1), 1 << (n - 1))
    prob = float(np.trace(block).real)
    if prob < POSTSELECT_THRESHOLD:
        raise PostselectionError(f"postselection probability {prob:.3e} below threshold")
    return DensityState(block / prob, n - 1), prob
