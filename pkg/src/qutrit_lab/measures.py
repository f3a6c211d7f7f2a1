"""Negativity, the CCNR score, state classification and DSD event scanning."""
import enum
from dataclasses import dataclass
from math import isfinite, sqrt

import numpy as np

from .errors import DomainError
from .linalg import trace_norm
from .ops import partial_transpose, purity, realign, reduced_pair

TAU = 1e-9


@dataclass(frozen=True)
class EntanglementScores:
    n1: float
    n2: float

    def __post_init__(self):
        if not (isfinite(self.n1) and isfinite(self.n2)):
            raise DomainError(f"scores must be finite, got ({self.n1}, {self.n2})")
        if self.n1 < 0:
            raise DomainError(f"negativity must be non-negative, got {self.n1}")


class Classification(str, enum.Enum):
    FREE = "FreeEntangled"
    BOUND = "BoundEntangled"
    UNDETECTED = "Undetected"


def negativity(rho):
    """``(||rho^{T_B}||_1 - 1) / 2``."""
    value = 0.5 * (trace_norm(partial_transpose(rho, 1)) - 1.0)
    # ||X^T_B||_1 >= |Tr X| = 1; anything below 0 is rounding
    return max(value, 0.0)


def ccnr_score(rho):
    """Realignment of the correlation matrix minus the marginal-purity bound.

    ``||R(rho - rho_A (x) rho_B)||_1 - sqrt((1 - Tr rho_A^2)(1 - Tr rho_B^2))``.
    Positive values certify entanglement; non-positive values are inconclusive.
    """
    rho_a, rho_b = reduced_pair(rho)
    corr = rho.mat - np.kron(rho_a.mat, rho_b.mat)
    bound = sqrt(max(0.0, (1 - purity(rho_a)) * (1 - purity(rho_b))))
    return trace_norm(realign(corr, rho.dims)) - bound


def realignment_score(rho):
    """Plain realignment criterion ``||R(rho)||_1 - 1`` (positive => entangled)."""
    return trace_norm(realign(rho.mat, rho.dims)) - 1.0


def scores(rho):
    return EntanglementScores(negativity(rho), ccnr_score(rho))


def classify(s, tau=TAU):
    if s.n1 > tau:
        return Classification.FREE
    if s.n2 > tau:
        return Classification.BOUND
    return Classification.UNDETECTED


@dataclass(frozen=True)
class FreeToBound:
    """Negativity reaches zero while the CCNR score still certifies entanglement.

    ``method`` is ``"crossing"`` when a grid value falls to ``tau`` or below,
    ``"touch"`` when the zero is located between grid points by intersecting
    the falling and rising branches, and ``"refined"`` once a caller has
    confirmed it by direct minimization. ``bracket`` holds the grid times
    around the event (a local-minimum triple for touches).
    """

    t: float
    n2: float
    method: str = "crossing"
    bracket: tuple = ()

    kind = "FreeToBound"


@dataclass(frozen=True)
class DetectionGap:
    """Interval on which neither score detects entanglement."""

    start: float
    end: float

    kind = "DetectionGap"

    @property
    def t(self):
        return self.start


def _cross(t0, y0, t1, y1, level):
    if y1 == y0:
        return t0
    return t0 + (level - y0) * (t1 - t0) / (y1 - y0)


def _lerp(t0, y0, t1, y1, t):
    if t1 == t0:
        return y0
    return y0 + (y1 - y0) * (t - t0) / (t1 - t0)


def _unpack(series):
    if len(series) < 2:
        raise DomainError("series needs at least 2 points")
    t = np.array([float(p[0]) for p in series])
    n1 = np.array([p[1].n1 for p in series])
    n2 = np.array([p[1].n2 for p in series])
    if np.any(np.diff(t) <= 0):
        raise DomainError("series must be sorted by strictly increasing t")
    return t, n1, n2


def scan_dsd(series, tau=TAU, touch_tol=1e-5):
    """Locate distillability-sudden-death structure in a sampled time series.

    Parameters
    ----------
    series : sequence of (t, EntanglementScores)
        Sorted by strictly increasing ``t``.
    tau : float
        Numerical zero for both scores.
    touch_tol : float
        Largest extrapolated minimum accepted as a zero touch. The negativity
        often returns to zero only at an isolated instant, which a grid never
        samples; a local minimum whose two neighbouring branches, extended as
        straight lines, meet at or below this value is reported as a touch.

    Returns
    -------
    list of FreeToBound and DetectionGap, ordered by time.
    """
    t, n1, n2 = _unpack(series)
    n = len(t)
    events = []

    for i in range(n - 1):
        if n1[i] > tau >= n1[i + 1]:
            tc = _cross(t[i], n1[i], t[i + 1], n1[i + 1], tau)
            n2c = _lerp(t[i], n2[i], t[i + 1], n2[i + 1], tc)
            if n2c > tau:
                events.append(FreeToBound(float(tc), float(n2c), "crossing", (float(t[i]), float(t[i + 1]))))

    for i in range(2, n - 2):
        if not (n1[i - 1] > n1[i] <= n1[i + 1] and n1[i] > tau):
            continue
        sl = (n1[i - 1] - n1[i - 2]) / (t[i - 1] - t[i - 2])
        sr = (n1[i + 2] - n1[i + 1]) / (t[i + 2] - t[i + 1])
        if not (sl < 0 < sr):
            continue
        tx = (n1[i + 1] - n1[i - 1] + sl * t[i - 1] - sr * t[i + 1]) / (sl - sr)
        if not t[i - 1] <= tx <= t[i + 1]:
            continue
        vx = n1[i - 1] + sl * (tx - t[i - 1])
        if vx > touch_tol:
            continue
        j = i if tx >= t[i] else i - 1
        n2x = _lerp(t[j], n2[j], t[j + 1], n2[j + 1], tx)
        bracket = (float(t[i - 1]), float(t[i]), float(t[i + 1]))
        if n2x > tau:
            events.append(FreeToBound(float(tx), float(n2x), "touch", bracket))
        else:
            events.append(DetectionGap(float(tx), float(tx)))

    mask = (n1 <= tau) & (n2 <= tau)
    i = 0
    while i < n:
        if not mask[i]:
            i += 1
            continue
        a = i
        while i < n and mask[i]:
            i += 1
        b = i - 1
        start = t[0] if a == 0 else max(
            _cross(t[a - 1], y[a - 1], t[a], y[a], tau) for y in (n1, n2) if y[a - 1] > tau
        )
        end = t[-1] if b == n - 1 else min(
            _cross(t[b], y[b], t[b + 1], y[b + 1], tau) for y in (n1, n2) if y[b + 1] > tau
        )
        events.append(DetectionGap(float(start), float(end)))

    events.sort(key=lambda e: e.t)
    return events


def death_intervals(series, tau=TAU, floor=1e-3, min_length=0.5):
    """Stretches where the negativity is persistently zero after and before being free.

    Returns ``(start, end)`` grid intervals longer than `min_length` on which
    ``n1 < tau`` at every sample, with ``n1 > floor`` somewhere before and
    somewhere after. An empty list means no entanglement sudden death.
    """
    t, n1, _ = _unpack(series)
    out = []
    dead = n1 < tau
    i, n = 0, len(t)
    while i < n:
        if not dead[i]:
            i += 1
            continue
        a = i
        while i < n and dead[i]:
            i += 1
        b = i - 1
        if t[b] - t[a] > min_length and np.any(n1[:a] > floor) and np.any(n1[b + 1:] > floor):
            out.append((float(t[a]), float(t[b])))
    return out
