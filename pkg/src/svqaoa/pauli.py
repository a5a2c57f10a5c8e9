"""
Binary symplectic representation of N-qubit Pauli strings.

A Pauli string is stored as two packed integers ``x`` and ``z``; bit ``i`` of
each integer refers to qubit ``i``.  The operator encoded by ``(x, z)`` is

    O(x, z) = i^(x.z) (X^x_0 (x) ... (x) X^x_{N-1}) (Z^z_0 (x) ... (x) Z^z_{N-1})

so that (x_i, z_i) = (1, 1) is Y.  The phase only matters for ``to_dense``;
commutation and counting never look at it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import InvalidArgumentError, ResourceLimitError

MAX_DENSE_QUBITS = 10
MAX_ENUM_QUBITS = 8

_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


def _pack(bits) -> int:
    value = 0
    for i, b in enumerate(bits):
        if b not in (0, 1, True, False):
            raise InvalidArgumentError(f"bit vector entries must be 0/1, got {b!r}")
        if b:
            value |= 1 << i
    return value


@dataclass(frozen=True)
class PauliString:
    """Pauli string on ``n_qubits`` qubits with packed X and Z masks."""

    x: int
    z: int
    n_qubits: int

    def __post_init__(self):
        if self.n_qubits < 1:
            raise InvalidArgumentError("n_qubits must be positive")
        limit = 1 << self.n_qubits
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise InvalidArgumentError("x/z masks exceed n_qubits")

    @classmethod
    def from_bits(cls, x_bits, z_bits) -> "PauliString":
        x_bits = list(x_bits)
        z_bits = list(z_bits)
        if len(x_bits) != len(z_bits):
            raise InvalidArgumentError("x_bits and z_bits must have equal length")
        return cls(_pack(x_bits), _pack(z_bits), len(x_bits))

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Build from a label such as ``"XIZY"``; character ``i`` acts on qubit ``i``."""
        try:
            pairs = [_LETTER_BITS[c] for c in label.upper()]
        except KeyError as exc:
            raise InvalidArgumentError(f"bad Pauli label {label!r}") from exc
        return cls.from_bits([p[0] for p in pairs], [p[1] for p in pairs])

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(0, 0, n_qubits)

    @classmethod
    def all_x(cls, n_qubits: int) -> "PauliString":
        """The bit-flip symmetry: X on every qubit."""
        return cls((1 << n_qubits) - 1, 0, n_qubits)

    @property
    def x_bits(self) -> np.ndarray:
        return np.array([(self.x >> i) & 1 for i in range(self.n_qubits)], dtype=np.uint8)

    @property
    def z_bits(self) -> np.ndarray:
        return np.array([(self.z >> i) & 1 for i in range(self.n_qubits)], dtype=np.uint8)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def label(self) -> str:
        names = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
        return "".join(
            names[(self.x >> i) & 1, (self.z >> i) & 1] for i in range(self.n_qubits)
        )

    def __repr__(self):
        return f"PauliString({self.label!r})"


def commutes(a: PauliString, b: PauliString) -> bool:
    """True iff ``a.x . b.z - b.x . a.z`` is even."""
    if a.n_qubits != b.n_qubits:
        raise InvalidArgumentError(
            f"dimension mismatch: {a.n_qubits} vs {b.n_qubits} qubits"
        )
    return ((a.x & b.z) ^ (b.x & a.z)).bit_count() % 2 == 0


_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_I = np.eye(2, dtype=complex)


def to_dense(a: PauliString) -> np.ndarray:
    """Dense ``2^N x 2^N`` matrix, qubit 0 being the least significant index bit."""
    n = a.n_qubits
    if n > MAX_DENSE_QUBITS:
        raise ResourceLimitError(f"to_dense limited to {MAX_DENSE_QUBITS} qubits, got {n}")
    xs = np.ones((1, 1), dtype=complex)
    zs = np.ones((1, 1), dtype=complex)
    # kron(A, B) puts A on the more significant bits, so iterate from the top qubit.
    for i in reversed(range(n)):
        xs = np.kron(xs, _X if (a.x >> i) & 1 else _I)
        zs = np.kron(zs, _Z if (a.z >> i) & 1 else _I)
    phase = 1j ** ((a.x & a.z).bit_count() % 4)
    return phase * (xs @ zs)


def count_commuting_bruteforce(symmetry: PauliString, m: int, alphabet="XYZ") -> int:
    """
    Count weight-``m`` Pauli strings over ``alphabet`` that commute with ``symmetry``.

    Plain enumeration of ``C(N, m) * |alphabet|^m`` strings; used as an oracle
    for the closed-form counts.
    """
    n = symmetry.n_qubits
    if not 0 <= m <= n:
        raise InvalidArgumentError(f"need 0 <= m <= N, got m={m}, N={n}")
    if n > MAX_ENUM_QUBITS:
        raise ResourceLimitError(f"enumeration limited to {MAX_ENUM_QUBITS} qubits")
    letters = sorted(set(alphabet.upper()))
    if not letters or any(c not in "XYZ" for c in letters):
        raise InvalidArgumentError(f"alphabet must be a nonempty subset of XYZ, got {alphabet!r}")
    count = 0
    for sites in itertools.combinations(range(n), m):
        for word in itertools.product(letters, repeat=m):
            x = z = 0
            for site, letter in zip(sites, word):
                bx, bz = _LETTER_BITS[letter]
                x |= bx << site
                z |= bz << site
            if commutes(symmetry, PauliString(x, z, n)):
                count += 1
    return count


def _check_nm(n: int, m: int):
    if n < 0 or m < 0 or m > n:
        raise InvalidArgumentError(f"need 0 <= m <= N, got m={m}, N={n}")


def f_depolarizing(n: int, m: int) -> int:
    """Number of weight-``m`` {X,Y,Z} strings on ``n`` qubits commuting with all-X."""
    _check_nm(n, m)
    if m % 2 == 0:
        return comb(n, m) * (1 + 3**m) // 2
    return comb(n, m) * (3**m - 1) // 2


def f_dephasing(n: int, m: int) -> int:
    """Number of weight-``m`` Z-only strings on ``n`` qubits commuting with all-X."""
    _check_nm(n, m)
    return comb(n, m) if m % 2 == 0 else 0
