"""Shared numerical primitives: guard-band decisions and golden-section search."""
from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass

import numpy as np

REL_TOL = 1e-9
DEFAULT_TOL_LO = 1e-8
DEFAULT_TOL_HI = 1e-6

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class Verdict(str, enum.Enum):
    ORTHOGONAL = "Orthogonal"
    NOT_ORTHOGONAL = "NotOrthogonal"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class GuardBand:
    """Margins below ``lo`` decide yes, margins at or above ``hi`` decide no."""

    lo: float = DEFAULT_TOL_LO
    hi: float = DEFAULT_TOL_HI

    def __post_init__(self):
        if not (0.0 <= self.lo <= self.hi):
            raise ValueError(f"guard band needs 0 <= lo <= hi, got {self.lo}, {self.hi}")

    @classmethod
    def from_env(cls) -> "GuardBand":
        lo = os.environ.get("ORTHO_TOL_LO")
        hi = os.environ.get("ORTHO_TOL_HI")
        return cls(
            float(lo) if lo is not None else DEFAULT_TOL_LO,
            float(hi) if hi is not None else DEFAULT_TOL_HI,
        )

    def decide(self, margin: float) -> "TriState":
        """Classify a margin; negative margins count as comfortably inside."""
        m = float(margin)
        if m < self.lo:
            verdict = Verdict.ORTHOGONAL
        elif m >= self.hi:
            verdict = Verdict.NOT_ORTHOGONAL
        else:
            verdict = Verdict.INDETERMINATE
        return TriState(verdict, float(margin))


@dataclass(frozen=True)
class TriState:
    verdict: Verdict
    margin: float = 0.0

    @property
    def yes(self) -> bool:
        return self.verdict is Verdict.ORTHOGONAL

    @property
    def no(self) -> bool:
        return self.verdict is Verdict.NOT_ORTHOGONAL

    @property
    def indeterminate(self) -> bool:
        return self.verdict is Verdict.INDETERMINATE

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value, "margin": self.margin}

    @classmethod
    def from_json(cls, obj: dict) -> "TriState":
        return cls(Verdict(obj["verdict"]), float(obj["margin"]))


def default_band() -> GuardBand:
    return GuardBand.from_env()


def golden_section(f, lo, hi, max_iter: int = 200, rel_tol: float = 1e-12):
    """Minimise a convex function on ``[lo, hi]`` by golden-section search.

    ``f`` is applied elementwise, so ``lo`` and ``hi`` may be arrays holding
    independent brackets that are searched in lock-step.  On a convex
    function every iterate interval keeps a global minimiser, plateaus
    included.  Endpoints are compared against the interior estimate at the
    end so a minimiser sitting on the boundary is returned exactly.

    Returns ``(argmin, minimum)`` with the shapes of the broadcast brackets.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    if lo.ndim == 0 and hi.ndim == 0:
        return _golden_scalar(f, float(lo), float(hi), max_iter, rel_tol)
    lo, hi = np.broadcast_arrays(lo, hi)
    a = lo.copy()
    b = hi.copy()
    width0 = np.maximum(b - a, 0.0)
    stop = rel_tol * np.maximum(width0, np.finfo(float).tiny)

    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1 = np.asarray(f(x1), dtype=float)
    f2 = np.asarray(f(x2), dtype=float)
    for _ in range(max_iter):
        if np.all(b - a <= stop):
            break
        left = f1 <= f2
        # minimiser in [a, x2] where f1 <= f2, else in [x1, b]
        b = np.where(left, x2, b)
        a = np.where(left, a, x1)
        nx1 = np.where(left, b - INV_PHI * (b - a), x2)
        nx2 = np.where(left, x1, a + INV_PHI * (b - a))
        nf1_known = np.where(left, np.nan, f2)
        nf2_known = np.where(left, f1, np.nan)
        x1, x2 = nx1, nx2
        # one fresh evaluation per bracket per iteration
        probe = np.where(left, x1, x2)
        fp = np.asarray(f(probe), dtype=float)
        f1 = np.where(left, fp, nf1_known)
        f2 = np.where(left, nf2_known, fp)

    mid = 0.5 * (a + b)
    fmid = np.asarray(f(mid), dtype=float)
    flo = np.asarray(f(lo), dtype=float)
    fhi = np.asarray(f(hi), dtype=float)
    xs = np.stack([mid, lo, hi])
    fs = np.stack([fmid, flo, fhi])
    k = np.argmin(fs, axis=0)
    idx = np.indices(k.shape)
    arg = xs[(k, *idx)]
    val = fs[(k, *idx)]
    if arg.ndim == 0:
        return float(arg), float(val)
    return arg, val


def _golden_scalar(f, lo: float, hi: float, max_iter: int, rel_tol: float):
    # same iteration as the array version, without the per-step array overhead
    def g(t):
        return float(f(np.asarray(t)))

    a, b = lo, hi
    stop = rel_tol * max(b - a, np.finfo(float).tiny)
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = g(x1), g(x2)
    for _ in range(max_iter):
        if b - a <= stop:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = g(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = g(x2)
    mid = 0.5 * (a + b)
    best = min(((g(mid), mid), (g(lo), lo), (g(hi), hi)), key=lambda t: t[0])
    return best[1], best[0]
