"""
Closed-form fidelity ratios for bit-flip verification under local noise.

With a noise-free check the fidelity ratio is ``1 / Tr(P rho)``; for local
Pauli noise that trace is a sum over error weights of (probability of weight
``m``) x (number of weight-``m`` errors commuting with the all-X symmetry).
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InvalidArgumentError
from .pauli import f_dephasing, f_depolarizing

CHANNELS = ("depolarizing", "dephasing")
CURVE_N = 10
CURVE_DEPTHS = (1, 2, 3, 4, 5, 6)


def _check_p(p):
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError(f"p must lie in [0, 1], got {p}")
    return p


def _check_n(n, name="N"):
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"{name} must be a positive integer, got {n}")
    return int(n)


def ratio_single_depol_bitflip(p: float) -> float:
    """One depolarized qubit, bit-flip check."""
    p = _check_p(p)
    return 1.0 / (1.0 - 2.0 * p / 3.0)


def ratio_single_depol_swap(p: float) -> float:
    """One depolarized qubit, swap check on a symmetric pair containing it."""
    p = _check_p(p)
    return 1.0 / (1.0 - p / 3.0)


def _weighted_count_sum(n: int, p_err: float, p_ok: float, counts) -> float:
    """fsum over m of p_ok^(n-m) p_err^m counts(n, m), tolerant of huge counts."""
    terms = []
    for m in range(n + 1):
        c = counts(n, m)
        if c == 0:
            continue
        if m > 0 and p_err == 0.0:
            continue
        if m < n and p_ok == 0.0:
            continue
        try:
            terms.append(float(c) * p_err**m * p_ok ** (n - m))
        except OverflowError:
            log_t = math.log(c) + m * math.log(p_err) + (n - m) * math.log(p_ok)
            terms.append(math.exp(log_t))
    return math.fsum(terms)


def script_f_sum(n: int, p: float) -> float:
    """Probability of passing the bit-flip check after one depolarizing layer on ``n`` qubits."""
    n = _check_n(n)
    p = _check_p(p)
    return _weighted_count_sum(n, p / 3.0, 1.0 - p, f_depolarizing)


def dephasing_sum(n: int, p: float) -> float:
    """Same as :func:`script_f_sum` for the dephasing channel."""
    n = _check_n(n)
    p = _check_p(p)
    return _weighted_count_sum(n, p, 1.0 - p, f_dephasing)


def script_f_printed(n: int, p: float) -> float:
    """
    An alternative closed form for the depolarizing pass probability,
    evaluated term by term.  Kept as a cross-check only: it agrees with
    :func:`script_f_sum` for even ``n`` and not for odd ``n``.
    """
    n = _check_n(n)
    p = _check_p(p)
    if p in (0.0, 1.0):
        return script_f_sum(n, p)
    q = -1.0 + p
    first = 0.25 * (1 + (1 - 2 * p) ** n + (1 - 4 * p / 3) ** n + (1 - 2 * p / 3) ** n)
    pref = 0.25 * (1 - p) ** (1 + n) * q ** (-1 - n)
    bracket = (
        -1
        + (1 - 2 * p) ** n
        + q**n * (1 - p / (3 * q)) ** n
        - q**n * (1 + p / (3 * q)) ** n
    )
    return first + pref * bracket


def ratio_depolarizing(n: int, d: int, p: float) -> float:
    d = _check_n(d, "d")
    return 1.0 / script_f_sum(_check_n(n) * d, p)


def ratio_dephasing(n: int, d: int, p: float) -> float:
    n = _check_n(n)
    d = _check_n(d, "d")
    p = _check_p(p)
    return 2.0 / (1.0 + (1.0 - 2.0 * p) ** (n * d))


def ratio(channel: str, n: int, d: int, p: float) -> float:
    if channel == "depolarizing":
        return ratio_depolarizing(n, d, p)
    if channel == "dephasing":
        return ratio_dephasing(n, d, p)
    raise InvalidArgumentError(f"unknown channel {channel!r}")


@dataclass(frozen=True)
class TheoryPoint:
    N: int
    d: int
    p: float
    channel: str
    ratio: float
    script_f: Optional[float] = None


def ratio_curves(
    n: int = CURVE_N,
    d_values: Sequence[int] = CURVE_DEPTHS,
    p_grid: Optional[Sequence[float]] = None,
    channel: str = "depolarizing",
) -> list:
    """Ratio-vs-p curves, one per depth, ordered by (d, p)."""
    if p_grid is None:
        p_grid = np.linspace(0.0, 0.1, 21)
    d_values = list(d_values)
    p_grid = [float(p) for p in p_grid]
    if not d_values or not p_grid:
        raise InvalidArgumentError("depth and rate grids must be nonempty")
    points = []
    for d in d_values:
        for p in p_grid:
            sf = script_f_sum(n * d, p) if channel == "depolarizing" else None
            points.append(TheoryPoint(n, d, p, channel, ratio(channel, n, d, p), sf))
    return points


CURVE_HEADER = ["channel", "N", "d", "p", "ratio"]


def write_curves_csv(points: Iterable[TheoryPoint], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CURVE_HEADER)
        for pt in points:
            w.writerow([pt.channel, pt.N, pt.d, repr(pt.p), repr(pt.ratio)])
