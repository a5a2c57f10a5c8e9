"""
Experiment harness: deterministic grids over (N, degree, depth, noise rate),
record persistence and plot-ready outputs.

Modes
-----
theory             closed-form fidelity-ratio curves (CSV ``channel,N,d,p,ratio``)
simulate           local noise between exact QAOA layers, noise-free bit-flip check
sweep              gate-level noise on random regular graphs, noisy ancilla check
small-graph-study  gate-level noise on the 3- and 4-node catalog
"""
from __future__ import annotations

import csv
import dataclasses
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from typing import Optional

import numpy as np

from . import __version__
from .errors import InvalidArgumentError
from .graphs import Graph, build_instance, random_regular, small_graph_catalog
from .noise import GATE_KIND, LOCAL_KINDS, NoiseSpec, layered_noisy_qaoa
from .qaoa import QaoaParams, optimize_params, qaoa_state_exact
from .symmetry import SymmetryOp, choose_engine, sv_ideal, sv_noisy
from .theory import CHANNELS, ratio_curves

MODES = ("theory", "simulate", "sweep", "small-graph-study")
ENGINES = ("exact", "trajectory", "auto")

_DEFAULTS = {
    "theory": dict(n=[10], depth=[1, 2, 3, 4, 5, 6], rates=[round(0.005 * k, 3) for k in range(21)]),
    "simulate": dict(n=[4, 6], degree=[3], depth=[1, 2, 3], noise_kind="local_depolarizing",
                     rates=[0.01, 0.05, 0.1]),
    "sweep": dict(n=[8], degree=[3], depth=[1, 2, 3, 4, 5, 6],
                  rates=[1e-4, 1e-3, 0.005, 0.01, 0.02, 0.03, 0.05, 0.07, 0.1]),
    "small-graph-study": dict(n=[3, 4], depth=[1, 2, 3], rates=[0.02]),
}


@dataclass
class SweepConfig:
    mode: str
    n: list = field(default_factory=list)
    degree: list = field(default_factory=lambda: [3])
    depth: list = field(default_factory=list)
    noise_kind: Optional[str] = None
    rates: list = field(default_factory=list)
    p1: Optional[float] = None
    channels: list = field(default_factory=lambda: list(CHANNELS))
    graph_seed: int = 0
    trajectory_seed: int = 0
    shots: int = 50_000
    engine: str = "auto"
    out: Optional[str] = None
    workers: int = 1
    budget: Optional[int] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidArgumentError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        for key, value in _DEFAULTS[self.mode].items():
            current = getattr(self, key)
            if current in ([], None):
                setattr(self, key, list(value) if isinstance(value, list) else value)
        if self.noise_kind is None:
            self.noise_kind = GATE_KIND
        if self.mode in ("sweep", "small-graph-study") and self.noise_kind != GATE_KIND:
            raise InvalidArgumentError(f"{self.mode} uses gate-level noise")
        if self.mode == "simulate" and self.noise_kind not in LOCAL_KINDS:
            raise InvalidArgumentError(f"simulate uses local noise {LOCAL_KINDS}")
        for key in ("n", "depth", "rates"):
            if not getattr(self, key):
                raise InvalidArgumentError(f"{key} list must be nonempty")
        if self.mode in ("simulate", "sweep") and not self.degree:
            raise InvalidArgumentError("degree list must be nonempty")
        if any(not 0.0 <= r <= 1.0 for r in self.rates):
            raise InvalidArgumentError("rates must lie in [0, 1]")
        if self.p1 is not None and not 0.0 <= self.p1 <= 1.0:
            raise InvalidArgumentError("p1 must lie in [0, 1]")
        if self.engine not in ENGINES:
            raise InvalidArgumentError(f"engine must be one of {ENGINES}")
        if self.shots < 1 or self.workers < 1:
            raise InvalidArgumentError("shots and workers must be positive")
        bad = set(self.channels) - set(CHANNELS)
        if bad:
            raise InvalidArgumentError(f"unknown channels {sorted(bad)}")

    @classmethod
    def from_dict(cls, obj: dict) -> "SweepConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(obj) - known
        if unknown:
            raise InvalidArgumentError(f"unknown config keys {sorted(unknown)}")
        return cls(**obj)

    @classmethod
    def load(cls, path, **overrides) -> "SweepConfig":
        with open(path) as fh:
            obj = json.load(fh)
        obj.update({k: v for k, v in overrides.items() if v is not None})
        return cls.from_dict(obj)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass
class SweepRecord:
    mode: str
    instance: str
    n: int
    degree: int
    depth: int
    noise_kind: str
    rate: float
    p1: float
    graph_seed: int
    trajectory_seed: int
    shots: int
    engine: str
    graph: str
    params: str
    c_max: int
    f_noisy: float
    f_sv: float
    postselect_prob: float
    obj_no_sv: float
    obj_sv: float
    obj_no_sv_se: float
    obj_sv_se: float
    ratio: float
    r_metric: float
    version: str
    error: str
    wall_time: float

    def sort_key(self):
        return (self.n, self.degree, self.instance, self.depth, self.rate)


RECORD_FIELDS = [f.name for f in fields(SweepRecord)]
TIMING_FIELDS = ("wall_time",)
CSV_HEADER = ",".join(RECORD_FIELDS)
_FIELD_TYPES = {f.name: f.type for f in fields(SweepRecord)}


# --- grid construction ------------------------------------------------------


def _instances(config: SweepConfig) -> list:
    """``(label, n, degree, graph_or_error)`` for every instance in the grid."""
    out = []
    if config.mode == "small-graph-study":
        for n in config.n:
            for name, g in small_graph_catalog(n, names=True):
                out.append((f"catalog-{n}-{name}", n, -1, g))
        return out
    for n in config.n:
        for degree in config.degree:
            label = f"rr-n{n}-k{degree}-s{config.graph_seed}"
            try:
                g = random_regular(n, degree, config.graph_seed)
            except Exception as exc:  # recorded, not fatal
                g = f"{type(exc).__name__}: {exc}"
            out.append((label, n, degree, g))
    return out


def _optimize_all(task):
    graph_json, depths, budget = task
    inst = build_instance(Graph.from_json(graph_json))
    result = {}
    prev = None
    for d in sorted(depths):
        prev = optimize_params(inst, d, budget=budget, warm_start=prev)
        result[d] = prev.to_json()
    return graph_json, result


def _run_point(task):
    config_dict, label, n, degree, graph_json, params_json, rate = task
    config = SweepConfig.from_dict(config_dict)
    start = time.perf_counter()
    base = dict(
        mode=config.mode, instance=label, n=n, degree=degree,
        depth=QaoaParams.from_json(params_json).depth if params_json else -1,
        noise_kind=config.noise_kind, rate=float(rate), p1=math.nan,
        graph_seed=config.graph_seed, trajectory_seed=config.trajectory_seed,
        shots=config.shots, engine="", graph=graph_json or "", params=params_json or "",
        c_max=-1, version=__version__, error="",
    )
    nan_fields = dict(f_noisy=math.nan, f_sv=math.nan, postselect_prob=math.nan,
                      obj_no_sv=math.nan, obj_sv=math.nan, obj_no_sv_se=math.nan,
                      obj_sv_se=math.nan, ratio=math.nan, r_metric=math.nan)
    try:
        inst = build_instance(Graph.from_json(graph_json))
        params = QaoaParams.from_json(params_json)
        base["c_max"] = inst.c_max
        if config.mode == "simulate":
            spec = NoiseSpec(config.noise_kind, p=rate)
            rho = layered_noisy_qaoa(inst, params, spec)
            psi = qaoa_state_exact(inst, params)
            outcome = sv_ideal(rho, SymmetryOp.bitflip(n), psi, inst)
            base["engine"] = "exact"
        else:
            spec = NoiseSpec.gate(rate, config.p1)
            base["p1"] = spec.p1
            engine = choose_engine(n, config.engine)
            outcome = sv_noisy(inst, params, spec, engine=engine, shots=config.shots,
                               seed=config.trajectory_seed)
            base["engine"] = outcome.engine
        values = outcome.to_dict()
        values.pop("engine")
        nan_fields.update(values)
    except Exception as exc:  # grid-point failures are recorded, not fatal
        base["error"] = f"{type(exc).__name__}: {exc}"
    return SweepRecord(**base, **nan_fields, wall_time=time.perf_counter() - start)


def _map(fn, tasks, workers):
    if workers == 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def run(config: SweepConfig) -> list:
    """
    Execute every grid point of a non-theory config and return sorted records.

    Parameters are optimized once per (graph, depth) on the noiseless
    objective and shared by the SV and no-SV arms of every noise rate.
    """
    if config.mode == "theory":
        raise InvalidArgumentError("theory mode produces curves; use run_theory")
    instances = _instances(config)
    good = [(label, n, deg, g) for label, n, deg, g in instances if isinstance(g, Graph)]
    unique = sorted({g.to_json() for _, _, _, g in good})
    opt_tasks = [(gj, list(config.depth), config.budget) for gj in unique]
    param_cache = dict(_map(_optimize_all, opt_tasks, config.workers))

    cfg = config.to_dict()
    tasks = []
    records = []
    for label, n, deg, g in instances:
        for d in config.depth:
            for rate in config.rates:
                if isinstance(g, Graph):
                    gj = g.to_json()
                    tasks.append((cfg, label, n, deg, gj, param_cache[gj][d], rate))
                else:
                    records.append(_failed_record(config, label, n, deg, d, rate, g))
    records.extend(_map(_run_point, tasks, config.workers))
    records.sort(key=SweepRecord.sort_key)
    return records


def _failed_record(config, label, n, deg, d, rate, error):
    nan = math.nan
    return SweepRecord(
        config.mode, label, n, deg, d, config.noise_kind, float(rate), nan,
        config.graph_seed, config.trajectory_seed, config.shots, "", "", "", -1,
        nan, nan, nan, nan, nan, nan, nan, nan, nan, __version__, error, 0.0,
    )


def run_theory(config: SweepConfig) -> list:
    points = []
    for channel in config.channels:
        for n in config.n:
            points.extend(ratio_curves(n, config.depth, config.rates, channel))
    return points


# --- persistence ------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse(name: str, text: str):
    kind = _FIELD_TYPES[name]
    if kind in ("int", int):
        return int(text)
    if kind in ("float", float):
        return float(text)
    return text


def _check_records(records):
    records = list(records)
    if not records:
        raise InvalidArgumentError("no records to write")
    return records


def emit_csv(records, path, include_timing: bool = True) -> None:
    """Write records with the columns of :data:`CSV_HEADER`, in that order."""
    records = _check_records(records)
    cols = [c for c in RECORD_FIELDS if include_timing or c not in TIMING_FIELDS]
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(cols)
            for r in records:
                w.writerow([_fmt(getattr(r, c)) for c in cols])
    except OSError as exc:
        raise OSError(f"cannot write records to {path}: {exc}") from exc


def read_csv(path) -> list:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    out = []
    for row in rows:
        values = {k: _parse(k, v) for k, v in row.items()}
        values.setdefault("wall_time", math.nan)
        out.append(SweepRecord(**values))
    return out


def emit_json(records, path, include_timing: bool = True) -> None:
    records = _check_records(records)
    payload = []
    for r in records:
        d = dataclasses.asdict(r)
        if not include_timing:
            for k in TIMING_FIELDS:
                d.pop(k)
        payload.append(d)
    try:
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write records to {path}: {exc}") from exc


def read_json(path) -> list:
    with open(path) as fh:
        payload = json.load(fh)
    out = []
    for d in payload:
        d.setdefault("wall_time", math.nan)
        out.append(SweepRecord(**d))
    return out


MISSING = "NA"


def heatmap_grid(records, row_key="depth", col_key="rate", value="r_metric"):
    """Return ``(rows, cols, grid)`` with NaN in uncovered cells."""
    records = _check_records(records)
    groups = {(r.n, r.degree) for r in records}
    if len(groups) != 1:
        raise InvalidArgumentError(f"heatmap needs a single (N, degree), got {sorted(groups)}")
    rows = sorted({getattr(r, row_key) for r in records})
    cols = sorted({getattr(r, col_key) for r in records})
    grid = np.full((len(rows), len(cols)), np.nan)
    for r in records:
        grid[rows.index(getattr(r, row_key)), cols.index(getattr(r, col_key))] = getattr(r, value)
    return rows, cols, grid


def emit_heatmap_data(records, path, row_key="depth", col_key="rate", value="r_metric") -> None:
    """Rectangular CSV: header row of column values, one row per row value, NA for gaps."""
    rows, cols, grid = heatmap_grid(records, row_key, col_key, value)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"{row_key}\\{col_key}"] + [_fmt(c) for c in cols])
        for label, line in zip(rows, grid):
            w.writerow([_fmt(label)] + [MISSING if np.isnan(v) else repr(float(v)) for v in line])
