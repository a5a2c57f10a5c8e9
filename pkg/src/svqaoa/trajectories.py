"""
Pauli-trajectory Monte Carlo for circuits with gate-level depolarizing noise.

After every gate, with probability ``p_k`` a uniformly random ``k``-qubit
Pauli (identity included) hits the touched qubits.  Averaging pure-state
expectations over these error configurations reproduces the density-matrix
result exactly in expectation.

Shots are processed in fixed-size chunks; chunk ``c`` draws from
``default_rng([seed, c])`` so estimates do not depend on how chunks are
scheduled.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError, UnsupportedChannelError
from .noise import GATE_KIND, NoiseSpec
from .qaoa import GateCircuit, initial_state

CHUNK_SHOTS = 2048


@dataclass(frozen=True)
class TrajectoryEstimate:
    mean: float
    standard_error: float
    shots: int
    seed: int


def _bit_vector(n: int, q: int) -> np.ndarray:
    return (np.arange(1 << n) >> q) & 1


def _run_chunk(circuit: GateCircuit, spec: NoiseSpec, observables: np.ndarray, shots: int, rng) -> np.ndarray:
    """Per-shot expectations, shape ``(shots, n_observables)``."""
    n = circuit.n_qubits
    dim = 1 << n
    psi0 = initial_state(circuit).amplitudes
    states = np.tile(psi0, (shots, 1))
    idx = np.arange(dim)
    flips = [idx ^ (1 << q) for q in range(n)]
    signs = [1 - 2 * _bit_vector(n, q) for q in range(n)]
    batch_shape = (shots,) + (2,) * n
    for g in circuit.gates:
        t = states.reshape(batch_shape)
        k = g.arity
        axes = [n - q for q in reversed(g.qubits)]  # +1 offset for the batch axis
        op = g.matrix().reshape((2,) * (2 * k))
        t = np.tensordot(t, op, axes=(axes, list(range(k, 2 * k))))
        t = np.moveaxis(t, list(range(n + 1 - k, n + 1)), axes)
        states = t.reshape(shots, dim)

        p = spec.p1 if k == 1 else spec.p2
        if not p:
            continue
        hit = rng.random(shots) < p
        which = rng.integers(0, 4**k, size=shots)
        if not hit.any():
            continue
        for j, q in enumerate(g.qubits):
            letter = np.where(hit, (which >> (2 * j)) & 3, 0)  # 0=I 1=X 2=Y 3=Z
            xmask = (letter == 1) | (letter == 2)
            zmask = (letter == 2) | (letter == 3)
            # Y = i X Z; the per-shot global phase is irrelevant.
            if zmask.any():
                states[zmask] *= signs[q]
            if xmask.any():
                states[xmask] = states[xmask][:, flips[q]]
    probs = np.abs(states) ** 2
    return probs @ observables.T


def sample_expectations(
    circuit: GateCircuit,
    noise: NoiseSpec,
    observables: Sequence,
    shots: int,
    seed: int,
) -> np.ndarray:
    """Per-shot expectation values of diagonal ``observables``; shape ``(shots, n_obs)``."""
    if noise.kind != GATE_KIND:
        raise UnsupportedChannelError(f"trajectories support gate-level Pauli noise only, got {noise.kind!r}")
    if shots < 1:
        raise InvalidArgumentError("shots must be positive")
    obs = np.atleast_2d(np.asarray(observables, dtype=float))
    if obs.shape[1] != 1 << circuit.n_qubits:
        raise InvalidArgumentError("observable length does not match circuit register")
    if noise.is_noiseless:
        one = _run_chunk(circuit, noise, obs, 1, np.random.default_rng([seed, 0]))
        return np.repeat(one, shots, axis=0)
    out = []
    for c, start in enumerate(range(0, shots, CHUNK_SHOTS)):
        size = min(CHUNK_SHOTS, shots - start)
        out.append(_run_chunk(circuit, noise, obs, size, np.random.default_rng([seed, c])))
    return np.concatenate(out, axis=0)


def run_trajectories(circuit: GateCircuit, noise: NoiseSpec, observable, shots: int, seed: int) -> TrajectoryEstimate:
    """Monte Carlo estimate of ``Tr(O rho)`` for diagonal ``O`` under gate noise."""
    values = sample_expectations(circuit, noise, [observable], shots, seed)[:, 0]
    if noise.is_noiseless:
        return TrajectoryEstimate(float(values[0]), 0.0, shots, seed)
    se = float(values.std(ddof=1) / np.sqrt(shots)) if shots > 1 else 0.0
    return TrajectoryEstimate(float(values.mean()), se, shots, seed)


def ratio_estimate(numerators: np.ndarray, denominators: np.ndarray) -> tuple:
    """Ratio of means with a delta-method standard error."""
    shots = numerators.size
    mean_den = denominators.mean()
    r = numerators.mean() / mean_den
    if shots < 2:
        return float(r), 0.0
    resid = numerators - r * denominators
    se = resid.std(ddof=1) / (np.sqrt(shots) * mean_den)
    return float(r), float(se)
