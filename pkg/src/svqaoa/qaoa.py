"""
QAOA ansatz for MaxCut: exact operator path, native-gate decomposition,
objective evaluation and noiseless parameter optimization.

Angle conventions: RX(t) = exp(-i t X / 2), RZ(t) = exp(-i t Z / 2) and the
mixer layer is RX(2 beta) on every qubit, i.e. exp(-i beta X).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .dense import (
    DensityState,
    StateVector,
    apply_op_vector,
    expectation_diagonal,
    plus_state,
)
from .errors import InvalidArgumentError, ResourceLimitError
from .graphs import MaxCutInstance

MAX_EXACT_QUBITS = 20
MAX_OPT_DEPTH = 6


@dataclass(frozen=True)
class QaoaParams:
    gammas: tuple
    betas: tuple

    def __post_init__(self):
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        if len(self.gammas) != len(self.betas) or not self.gammas:
            raise InvalidArgumentError("gammas and betas must have equal nonzero length")

    @property
    def depth(self) -> int:
        return len(self.gammas)

    def to_vector(self) -> np.ndarray:
        return np.array(self.gammas + self.betas)

    @classmethod
    def from_vector(cls, v) -> "QaoaParams":
        v = np.asarray(v, dtype=float)
        d = v.size // 2
        return cls(tuple(v[:d]), tuple(v[d:]))

    def to_json(self) -> str:
        return json.dumps({"d": self.depth, "gammas": list(self.gammas), "betas": list(self.betas)})

    @classmethod
    def from_json(cls, text: str) -> "QaoaParams":
        obj = json.loads(text)
        params = cls(obj["gammas"], obj["betas"])
        if "d" in obj and obj["d"] != params.depth:
            raise InvalidArgumentError(f"declared depth {obj['d']} != {params.depth}")
        return params


# --- native gates -----------------------------------------------------------

H_MATRIX = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
# Operator index is control + 2 * target.
CX_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex
)


def rx(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]])


_ARITY = {"RX": 1, "RY": 1, "RZ": 1, "H": 1, "CX": 2}


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple
    angle: float = 0.0

    def __post_init__(self):
        if self.name not in _ARITY:
            raise InvalidArgumentError(f"unknown gate {self.name!r}")
        if len(self.qubits) != _ARITY[self.name]:
            raise InvalidArgumentError(f"{self.name} acts on {_ARITY[self.name]} qubit(s)")
        if len(set(self.qubits)) != len(self.qubits):
            raise InvalidArgumentError("CX control and target must differ")

    @property
    def arity(self) -> int:
        return _ARITY[self.name]

    def matrix(self) -> np.ndarray:
        if self.name == "RX":
            return rx(self.angle)
        if self.name == "RY":
            return ry(self.angle)
        if self.name == "RZ":
            return rz(self.angle)
        if self.name == "H":
            return H_MATRIX
        return CX_MATRIX


@dataclass(frozen=True)
class GateCircuit:
    """Ordered gate list.  Qubits listed in ``ancillas`` start in |0>, all others in |+>."""

    n_qubits: int
    gates: tuple = ()
    ancillas: tuple = ()

    def __post_init__(self):
        for g in self.gates:
            if any(not 0 <= q < self.n_qubits for q in g.qubits):
                raise InvalidArgumentError(f"gate {g} outside {self.n_qubits}-qubit register")

    def __len__(self):
        return len(self.gates)

    def count(self, name: str) -> int:
        return sum(1 for g in self.gates if g.name == name)


def concatenate(first: GateCircuit, second: GateCircuit) -> GateCircuit:
    n = max(first.n_qubits, second.n_qubits)
    ancillas = tuple(sorted(set(first.ancillas) | set(second.ancillas)))
    return GateCircuit(n, first.gates + second.gates, ancillas)


def initial_state(circuit: GateCircuit) -> StateVector:
    """|+> on data qubits and |0> on ancillas."""
    n = circuit.n_qubits
    plus = np.array([1, 1], dtype=complex) / np.sqrt(2)
    zero = np.array([1, 0], dtype=complex)
    amps = np.ones(1, dtype=complex)
    for q in reversed(range(n)):
        amps = np.kron(amps, zero if q in circuit.ancillas else plus)
    return StateVector(amps, n)


def run_circuit(circuit: GateCircuit, state: Optional[StateVector] = None) -> StateVector:
    """Noiseless state-vector simulation of ``circuit``."""
    if state is None:
        state = initial_state(circuit)
    amps = state.amplitudes
    for g in circuit.gates:
        amps = apply_op_vector(amps, g.matrix(), g.qubits, circuit.n_qubits)
    return StateVector(amps, circuit.n_qubits)


# --- exact ansatz -----------------------------------------------------------


def _mixer(amps: np.ndarray, beta: float, n: int) -> np.ndarray:
    u = rx(2 * beta)
    for q in range(n):
        amps = apply_op_vector(amps, u, (q,), n)
    return amps


def qaoa_layer(amps: np.ndarray, inst: MaxCutInstance, gamma: float, beta: float) -> np.ndarray:
    """One cost-phase plus mixer layer applied to a flat amplitude vector."""
    amps = np.exp(-1j * gamma * inst.cost_diagonal) * amps
    return _mixer(amps, beta, inst.n_qubits)


def qaoa_state_exact(inst: MaxCutInstance, params: QaoaParams) -> StateVector:
    n = inst.n_qubits
    if n > MAX_EXACT_QUBITS:
        raise ResourceLimitError(f"exact QAOA limited to {MAX_EXACT_QUBITS} qubits")
    amps = plus_state(n).amplitudes
    for gamma, beta in zip(params.gammas, params.betas):
        amps = qaoa_layer(amps, inst, gamma, beta)
    return StateVector(amps, n)


def objective(inst: MaxCutInstance, state: Union[StateVector, DensityState]) -> float:
    """Expected cut size <H>."""
    if isinstance(state, DensityState):
        return expectation_diagonal(state, inst.cost_diagonal)
    amps = state.amplitudes
    if amps.shape != inst.cost_diagonal.shape:
        raise InvalidArgumentError("state dimension does not match instance")
    return float(np.dot(inst.cost_diagonal, np.abs(amps) ** 2))


def approximation_ratio(inst: MaxCutInstance, state) -> float:
    if inst.c_max <= 0:
        raise InvalidArgumentError("approximation ratio undefined for edgeless graphs")
    return objective(inst, state) / inst.c_max


def decompose(inst: MaxCutInstance, params: QaoaParams) -> GateCircuit:
    """
    Native-gate circuit for the ansatz, without state preparation.

    Each edge term becomes CX(i, j) RZ(-gamma, j) CX(i, j); the dropped global
    phase is exp(-i gamma |E| / 2) per layer.
    """
    n = inst.n_qubits
    if n > MAX_EXACT_QUBITS:
        raise ResourceLimitError(f"decomposition limited to {MAX_EXACT_QUBITS} qubits")
    gates = []
    for gamma, beta in zip(params.gammas, params.betas):
        for i, j in inst.graph.edges:
            gates.append(Gate("CX", (i, j)))
            gates.append(Gate("RZ", (j,), -gamma))
            gates.append(Gate("CX", (i, j)))
        for q in range(n):
            gates.append(Gate("RX", (q,), 2 * beta))
    return GateCircuit(n, tuple(gates))


# --- parameter optimization -------------------------------------------------


def _ramp(g: float, b: float, d: int) -> np.ndarray:
    s = (np.arange(d) + 0.5) / d
    return np.concatenate([2 * g * s, 2 * b * (1 - s)])


def _interp(prev: np.ndarray, d: int) -> np.ndarray:
    """Stretch a schedule onto ``d`` layers by linear interpolation."""
    k = prev.size // 2
    x_old = (np.arange(k) + 0.5) / k
    x_new = (np.arange(d) + 0.5) / d
    g = np.interp(x_new, x_old, prev[:k])
    b = np.interp(x_new, x_old, prev[k:])
    return np.concatenate([g, b])


def pattern_search(f, x0, step=0.1, tol=1e-7, max_evals=1000):
    """
    Compass search maximizing ``f`` from ``x0``.

    Polls +/- step along each coordinate, moves on strict improvement and
    halves the step after a full sweep without one.  Returns (x, f(x), evals).
    """
    x = np.array(x0, dtype=float)
    fx = f(x)
    evals = 1
    while step > tol and evals < max_evals:
        improved = False
        for i in range(x.size):
            for sign in (1.0, -1.0):
                if evals >= max_evals:
                    break
                trial = x.copy()
                trial[i] += sign * step
                ft = f(trial)
                evals += 1
                if ft > fx:
                    x, fx = trial, ft
                    improved = True
                    break
        if not improved:
            step /= 2
    return x, fx, evals


def grid_seeds(d: int, n_grid: int = 8) -> list:
    """Ramp schedules on an ``n_grid x n_grid`` grid over gamma in [0, pi), beta in [0, pi/2)."""
    gs = np.arange(n_grid) * np.pi / n_grid
    bs = np.arange(n_grid) * (np.pi / 2) / n_grid
    return [_ramp(g, b, d) for g in gs for b in bs]


def optimize_params(
    inst: MaxCutInstance,
    d: int,
    budget: Optional[int] = None,
    seed: int = 0,
    n_grid: int = 8,
    n_starts: int = 4,
    warm_start: Optional[QaoaParams] = None,
) -> QaoaParams:
    """
    Maximize the noiseless objective over depth-``d`` parameters.

    Every grid seed is evaluated; the best ``n_starts`` candidates (grid seeds,
    a few seeded random schedules and the interpolated ``warm_start`` if
    given) are refined with :func:`pattern_search`.  Ties are broken by the
    lowest candidate index, so the output is deterministic.
    """
    if not 1 <= d <= MAX_OPT_DEPTH:
        raise InvalidArgumentError(f"depth must be in 1..{MAX_OPT_DEPTH}")
    seeds = grid_seeds(d, n_grid)
    if budget is None:
        budget = len(seeds) + 800 * d * n_starts
    if budget < len(seeds):
        raise InvalidArgumentError(f"budget {budget} below the {len(seeds)} grid seeds")

    rng = np.random.default_rng(seed)
    candidates = list(seeds)
    for _ in range(n_starts):
        candidates.append(np.concatenate([rng.uniform(0, np.pi, d), rng.uniform(0, np.pi / 2, d)]))
    if warm_start is not None:
        prev = warm_start.to_vector()
        candidates.append(prev if warm_start.depth == d else _interp(prev, d))

    def f(v):
        return objective(inst, qaoa_state_exact(inst, QaoaParams.from_vector(v)))

    remaining = budget
    values = []
    for c in candidates:
        if remaining <= 0:
            values.append(-np.inf)
            continue
        values.append(f(c))
        remaining -= 1
    order = sorted(range(len(candidates)), key=lambda k: (-values[k], k))[:n_starts]

    best_x = candidates[order[0]]
    best_f = values[order[0]]
    for rank, k in enumerate(order):
        share = remaining // (len(order) - rank)
        if share <= 1:
            break
        x, fx, used = pattern_search(f, candidates[k], max_evals=share)
        remaining -= used
        if fx > best_f:
            best_x, best_f = x, fx
    return QaoaParams.from_vector(best_x)
