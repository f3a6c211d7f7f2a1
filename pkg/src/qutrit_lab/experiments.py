"""Parameter sweeps over the three regimes of the state family and table output."""
import csv
import enum
import io
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import isfinite

import numpy as np
from scipy.optimize import minimize_scalar

from .dynamics import (
    DEFAULT_COUPLING,
    DEFAULT_GENERATOR,
    Coupling,
    DmHamiltonianSpec,
    Evolution,
    Generator,
    resolve_generator,
)
from .errors import ConfigError
from .measures import (
    TAU,
    Classification,
    DetectionGap,
    EntanglementScores,
    FreeToBound,
    classify,
    death_intervals,
    negativity,
    realignment_score,
    scan_dsd,
    scores,
)
from .states import EnvAmplitudes, JurkowskiParams

log = logging.getLogger(__name__)

CSV_HEADER = ("t", "D", "eps1", "eps2", "eps3", "n1", "n2", "class")
THREADS_ENV = "QUTRIT_LAB_THREADS"

# default eps grids for each case
CASE1_EPS3 = (0.1, 0.3, 0.5, 0.7, 0.9, 4.0, 5.0, 6.0)
CASE1_EPS3_D04 = (0.1, 0.3, 0.5, 0.7)
CASE2_EPS = (0.1, 0.3, 0.5, 0.7, 1.1, 1.5, 4.0, 5.0)
CASE3_PAIRS = ((0.1, 1.0), (0.1, 2.0), (2.0, 2.0), (1.0, 0.1), (2.0, 0.1), (4.0, 4.0))

RESOLVE_TIMES = (0.5, 1.0, 2.0, 5.0)
RESOLVE_PROBE = (1.0, 1.0, 0.5)


class Case(str, enum.Enum):
    CASE1 = "1"
    CASE2 = "2"
    CASE3 = "3"
    CUSTOM = "custom"


@dataclass
class SweepConfig:
    case: Case
    eps_grid: list
    d_values: list = field(default_factory=lambda: [0.2])
    t_max: float = 30.0
    t_steps: int = 1001
    generator: str = "auto"
    env: EnvAmplitudes = field(default_factory=EnvAmplitudes)
    output_path: str = None
    output_format: str = "csv"
    coupling: Coupling = DEFAULT_COUPLING

    def __post_init__(self):
        try:
            self.case = Case(str(self.case))
        except ValueError:
            raise ConfigError(f"unknown case {self.case!r}") from None
        try:
            self.coupling = Coupling(self.coupling)
        except ValueError:
            raise ConfigError(f"unknown coupling {self.coupling!r}") from None
        if self.generator != "auto":
            try:
                self.generator = Generator(self.generator).value
            except ValueError:
                raise ConfigError(f"unknown generator {self.generator!r}") from None
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"unknown output format {self.output_format!r}")
        if not self.eps_grid:
            raise ConfigError("eps grid is empty")
        if not self.d_values:
            raise ConfigError("no DM strengths given")
        if not (isfinite(self.t_max) and self.t_max > 0):
            raise ConfigError(f"t-max must be positive, got {self.t_max}")
        if int(self.t_steps) != self.t_steps or self.t_steps < 2:
            raise ConfigError(f"t-steps must be an integer >= 2, got {self.t_steps}")
        self.t_steps = int(self.t_steps)
        for d in self.d_values:
            if not isfinite(d):
                raise ConfigError(f"DM strength must be finite, got {d}")
        triples = []
        for eps in self.eps_grid:
            if len(eps) != 3:
                raise ConfigError(f"eps entry must be a triple, got {eps!r}")
            e1, e2, e3 = (float(e) for e in eps)
            if not all(isfinite(e) and e > 0 for e in (e1, e2, e3)):
                raise ConfigError(f"eps values must be positive, got {eps!r}")
            if self.case is Case.CASE1 and not (e1 == 1 and e2 == 1):
                raise ConfigError(f"case 1 requires eps1 = eps2 = 1, got {eps!r}")
            if self.case is Case.CASE2 and not (e1 == e2 == e3):
                raise ConfigError(f"case 2 requires eps1 = eps2 = eps3, got {eps!r}")
            if self.case is Case.CASE3 and e1 != 1:
                raise ConfigError(f"case 3 requires eps1 = 1, got {eps!r}")
            triples.append((e1, e2, e3))
        self.eps_grid = triples

    def times(self):
        return np.linspace(0.0, self.t_max, self.t_steps)


def build_eps_grid(case, eps1=None, eps2=None, eps3=None):
    """Expand per-parameter value lists into the triple grid for a case.

    Case 1 pairs (1, 1) with every eps3; case 2 takes eps1 and requires any
    eps2/eps3 list to repeat it; case 3 zips eps2 with eps3 (its default grid
    is a list of pairs, not a product); custom takes the Cartesian product.
    Missing lists default to the per-case grids.
    """
    case = Case(str(case))
    if case is Case.CASE1:
        for name, vals in (("eps1", eps1), ("eps2", eps2)):
            if vals is not None and any(v != 1 for v in vals):
                raise ConfigError(f"case 1 fixes {name} = 1")
        return [(1.0, 1.0, e) for e in (eps3 or CASE1_EPS3)]
    if case is Case.CASE2:
        base = eps1 or eps2 or eps3 or list(CASE2_EPS)
        for name, vals in (("eps1", eps1), ("eps2", eps2), ("eps3", eps3)):
            if vals is not None and list(vals) != list(base):
                raise ConfigError(f"case 2 requires eps1 = eps2 = eps3; {name} differs")
        return [(e, e, e) for e in base]
    if case is Case.CASE3:
        if eps1 is not None and any(v != 1 for v in eps1):
            raise ConfigError("case 3 fixes eps1 = 1")
        if eps2 is None and eps3 is None:
            pairs = CASE3_PAIRS
        else:
            if eps2 is None or eps3 is None or len(eps2) != len(eps3):
                raise ConfigError("case 3 needs eps2 and eps3 lists of equal length")
            pairs = list(zip(eps2, eps3))
        return [(1.0, a, b) for a, b in pairs]
    return [(a, b, c) for a in (eps1 or [1.0]) for b in (eps2 or [1.0]) for c in (eps3 or [1.0])]


@dataclass(frozen=True)
class TimeSeriesRecord:
    t: float
    D: float
    eps1: float
    eps2: float
    eps3: float
    n1: float
    n2: float
    cls: Classification

    def as_dict(self):
        return {
            "t": self.t, "D": self.D, "eps1": self.eps1, "eps2": self.eps2,
            "eps3": self.eps3, "n1": self.n1, "n2": self.n2, "class": self.cls.value,
        }


@dataclass
class SweepResult:
    records: list
    summary: dict


def thread_count():
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def choose_generator(config):
    """Generator for a sweep plus a description of how it was chosen."""
    if config.generator != "auto":
        return Generator(config.generator), {"mode": "fixed"}
    strengths = [d for d in config.d_values if d != 0]
    if not strengths:
        log.info("all DM strengths are zero; generator choice is irrelevant, using %s", DEFAULT_GENERATOR.value)
        return DEFAULT_GENERATOR, {"mode": "default (D = 0)"}
    res = resolve_generator(RESOLVE_PROBE, strengths[0], RESOLVE_TIMES, coupling=config.coupling)
    log.info("resolved generator: %s", res.generator.value)
    return res.generator, {
        "mode": "auto",
        "residuals": {g.value: r for g, r in res.residuals.items()},
    }


def refine_touch(evolution, event, tau=TAU):
    """Confirm a grid-level negativity touch by direct minimization.

    Returns the refined event, or ``None`` when the minimum inside the
    bracket stays above `tau`.
    """
    # golden section: the negativity has a kink at the zero, and the bounded
    # method's absolute tolerance leaves it ~1e-9 above zero
    opt = minimize_scalar(
        lambda t: negativity(evolution.reduced(t)),
        bracket=event.bracket,
        method="golden",
        tol=1e-15,
    )
    if opt.fun > tau:
        return None
    s = scores(evolution.reduced(opt.x))
    if s.n2 <= tau:
        return DetectionGap(float(opt.x), float(opt.x))
    return FreeToBound(float(opt.x), s.n2, "refined", event.bracket)


def _run_curve(eps, d, generator, config, times):
    ev = Evolution(JurkowskiParams(*eps), config.env, DmHamiltonianSpec(d, generator), config.coupling)
    records, series, plain = [], [], []
    for t in times:
        rho = ev.reduced(t)
        s = scores(rho)
        series.append((float(t), s))
        plain.append(realignment_score(rho))
        records.append(TimeSeriesRecord(float(t), d, *eps, s.n1, s.n2, classify(s)))

    events = []
    for e in scan_dsd(series):
        if isinstance(e, FreeToBound) and e.method == "touch":
            e = refine_touch(ev, e)
        if e is not None:
            events.append(e)

    n1 = np.array([s.n1 for _, s in series])
    n2 = np.array([s.n2 for _, s in series])
    k = int(np.argmax(n1))
    curve = {
        "eps": list(eps),
        "D": d,
        "max_n1": float(n1[k]),
        "t_at_max_n1": float(times[k]),
        "min_n2": float(n2.min()),
        "max_n2": float(n2.max()),
        "min_realignment": float(min(plain)),
        "max_realignment": float(max(plain)),
        "free_to_bound": [e.t for e in events if isinstance(e, FreeToBound)],
        "detection_gaps": [[e.start, e.end] for e in events if isinstance(e, DetectionGap)],
        "esd_intervals": [list(iv) for iv in death_intervals(series)],
    }
    log.debug("curve eps=%s D=%g: %s", eps, d, curve)
    return records, curve


def run_sweep(config):
    """Evaluate every (eps triple, D, t) lattice point of `config`.

    Records are ordered by eps triple, then D, then t, independent of the
    number of worker threads.
    """
    generator, how = choose_generator(config)
    times = config.times()
    jobs = [(eps, float(d)) for eps in config.eps_grid for d in config.d_values]
    workers = min(thread_count(), len(jobs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda j: _run_curve(j[0], j[1], generator, config, times), jobs))
    else:
        results = [_run_curve(eps, d, generator, config, times) for eps, d in jobs]
    records = [r for recs, _ in results for r in recs]
    summary = {
        "case": config.case.value,
        "generator": generator.value,
        "generator_selection": how,
        "coupling": config.coupling.value,
        "t_max": config.t_max,
        "t_steps": config.t_steps,
        "curves": [c for _, c in results],
    }
    return SweepResult(records, summary)


def _fmt(x):
    return format(float(x), ".12g")


def format_table(records, fmt="csv"):
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow([_fmt(r.t), _fmt(r.D), _fmt(r.eps1), _fmt(r.eps2), _fmt(r.eps3),
                        _fmt(r.n1), _fmt(r.n2), r.cls.value])
        return buf.getvalue()
    if fmt == "json":
        rows = []
        for r in records:
            d = r.as_dict()
            for k in CSV_HEADER[:-1]:
                d[k] = float(_fmt(d[k]))
            rows.append(d)
        return json.dumps(rows, indent=1) + "\n"
    raise ConfigError(f"unknown output format {fmt!r}")


def emit_table(records, path, fmt="csv"):
    """Write records as CSV or JSON to `path` (``None`` or ``"-"`` for stdout)."""
    text = format_table(records, fmt)
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def read_csv(path):
    """Parse a table written by :func:`emit_table` back into records."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_HEADER:
            raise ValueError(f"unexpected header {header}")
        return [
            TimeSeriesRecord(*(float(v) for v in row[:7]), Classification(row[7]))
            for row in reader
        ]


def record_scores(record):
    return EntanglementScores(record.n1, record.n2)
