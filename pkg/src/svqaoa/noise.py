"""
Noise constructions: local depolarizing/dephasing layers between exact QAOA
layers, and per-gate depolarizing noise on native-gate circuits.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dense import (
    MAX_DENSITY_QUBITS,
    DensityState,
    KrausChannel,
    apply_channel,
    apply_op_density,
    depolarize,
    to_density,
)
from .errors import InvalidArgumentError, ResourceLimitError
from .graphs import MaxCutInstance
from .qaoa import GateCircuit, QaoaParams, initial_state, rx

LOCAL_KINDS = ("local_depolarizing", "local_dephasing")
GATE_KIND = "gate_depolarizing"
MAX_LAYERED_QUBITS = 12

PAULIS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _check_rate(p, name="p"):
    if p is None or not 0.0 <= float(p) <= 1.0:
        raise InvalidArgumentError(f"{name} must lie in [0, 1], got {p!r}")
    return float(p)


@dataclass(frozen=True)
class NoiseSpec:
    kind: str
    p: Optional[float] = None
    p1: Optional[float] = None
    p2: Optional[float] = None

    def __post_init__(self):
        if self.kind in LOCAL_KINDS:
            _check_rate(self.p)
            if self.p1 is not None or self.p2 is not None:
                raise InvalidArgumentError("local noise takes only p")
        elif self.kind == GATE_KIND:
            _check_rate(self.p1, "p1")
            _check_rate(self.p2, "p2")
            if self.p is not None:
                raise InvalidArgumentError("gate noise takes p1/p2, not p")
        else:
            raise InvalidArgumentError(f"unknown noise kind {self.kind!r}")

    @classmethod
    def local_depolarizing(cls, p: float) -> "NoiseSpec":
        return cls("local_depolarizing", p=p)

    @classmethod
    def local_dephasing(cls, p: float) -> "NoiseSpec":
        return cls("local_dephasing", p=p)

    @classmethod
    def gate(cls, p2: float, p1: Optional[float] = None) -> "NoiseSpec":
        """Gate-level depolarizing noise; single-qubit rate defaults to ``p2 / 10``."""
        return cls(GATE_KIND, p1=p2 / 10 if p1 is None else p1, p2=p2)

    @property
    def is_noiseless(self) -> bool:
        if self.kind == GATE_KIND:
            return self.p1 == 0 and self.p2 == 0
        return self.p == 0

    def to_dict(self) -> dict:
        if self.kind == GATE_KIND:
            return {"kind": self.kind, "p2": self.p2, "p1": self.p1}
        return {"kind": self.kind, "p": self.p}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict) -> "NoiseSpec":
        if obj.get("kind") == GATE_KIND:
            return cls.gate(obj["p2"], obj.get("p1"))
        return cls(obj.get("kind"), p=obj.get("p"))

    @classmethod
    def from_json(cls, text: str) -> "NoiseSpec":
        return cls.from_dict(json.loads(text))


def depolarizing_1q(p: float) -> KrausChannel:
    p = _check_rate(p)
    probs = (1 - p, p / 3, p / 3, p / 3)
    unitaries = tuple(PAULIS[c] for c in "IXYZ")
    ops = tuple(np.sqrt(w) * u for w, u in zip(probs, unitaries))
    return KrausChannel(ops, 1, tuple(zip(probs, unitaries)))


def dephasing_1q(p: float) -> KrausChannel:
    p = _check_rate(p)
    probs = (1 - p, p)
    unitaries = (PAULIS["I"], PAULIS["Z"])
    ops = tuple(np.sqrt(w) * u for w, u in zip(probs, unitaries))
    return KrausChannel(ops, 1, tuple(zip(probs, unitaries)))


def pauli_basis(k: int) -> list:
    """All ``4^k`` Pauli products on ``k`` qubits; the first factor acts on targets[0]."""
    mats = []
    for letters in itertools.product("IXYZ", repeat=k):
        m = np.ones((1, 1), dtype=complex)
        for c in reversed(letters):
            m = np.kron(m, PAULIS[c])
        mats.append(m)
    return mats


def gate_depolarizing(k: int, p: float) -> KrausChannel:
    """``rho -> (1 - p) rho + p I / 2^k`` on the ``k`` qubits a gate touches."""
    if k not in (1, 2):
        raise InvalidArgumentError(f"gate arity must be 1 or 2, got {k}")
    p = _check_rate(p)
    n_paulis = 4**k
    basis = pauli_basis(k)
    probs = [p / n_paulis] * n_paulis
    probs[0] += 1 - p
    ops = tuple(np.sqrt(w) * u for w, u in zip(probs, basis))
    return KrausChannel(ops, k, tuple(zip(probs, basis)))


def _local_channel(spec: NoiseSpec) -> KrausChannel:
    if spec.kind == "local_depolarizing":
        return depolarizing_1q(spec.p)
    if spec.kind == "local_dephasing":
        return dephasing_1q(spec.p)
    raise InvalidArgumentError(f"expected a local noise kind, got {spec.kind!r}")


def noise_layer(rho: DensityState, ch: KrausChannel, order=None) -> DensityState:
    """Apply a single-qubit channel to every qubit, in ``order`` if given."""
    for q in order if order is not None else range(rho.n_qubits):
        rho = apply_channel(rho, ch, (q,))
    return rho


def layered_noisy_qaoa(inst: MaxCutInstance, params: QaoaParams, spec: NoiseSpec) -> DensityState:
    """Exact QAOA layers, each followed by the local noise channel on every qubit."""
    ch = _local_channel(spec)
    n = inst.n_qubits
    if n > MAX_LAYERED_QUBITS:
        raise ResourceLimitError(f"layered density simulation limited to {MAX_LAYERED_QUBITS} qubits")
    dim = 1 << n
    rho = np.full((dim, dim), 1.0 / dim, dtype=complex)
    cost = inst.cost_diagonal
    for gamma, beta in zip(params.gammas, params.betas):
        phase = np.exp(-1j * gamma * cost)
        rho = phase[:, None] * rho * phase.conj()[None, :]
        u = rx(2 * beta)
        for q in range(n):
            rho = apply_op_density(rho, u, (q,), n)
        state = DensityState(rho, n)
        if spec.p != 0:
            state = noise_layer(state, ch)
        rho = state.matrix
    return DensityState(rho, n)


def noisy_gate_run(circuit: GateCircuit, spec: NoiseSpec) -> DensityState:
    """
    Density-matrix run of ``circuit`` with depolarizing noise after every gate.

    Single-qubit gates get rate ``p1`` on their qubit, CX gets ``p2`` on the pair.
    """
    if spec.kind != GATE_KIND:
        raise InvalidArgumentError(f"expected gate noise, got {spec.kind!r}")
    n = circuit.n_qubits
    if n > MAX_DENSITY_QUBITS - 1:
        raise ResourceLimitError(f"exact gate-noise runs limited to {MAX_DENSITY_QUBITS - 1} qubits")
    rho = to_density(initial_state(circuit))
    m = rho.matrix
    for g in circuit.gates:
        m = apply_op_density(m, g.matrix(), g.qubits, n)
        p = spec.p1 if g.arity == 1 else spec.p2
        if p:
            m = depolarize(DensityState(m, n), p, g.qubits).matrix
    return DensityState(m, n)
