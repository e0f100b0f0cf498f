"""Operator-level orthogonality through an induced semi-norm.

A finite family of semi-norms ``{p_i}`` on Y and a compact symmetrised
admissible set on X induce ``P(T) = max_i max_a p_i(T a)`` on operators.
The routes implemented here:

* :func:`op_orthogonal_definition` -- ``min_λ P(T + λA) = P(T)`` directly;
* :func:`op_orthogonal_characterization` -- one-sided cone tests at the
  points and members where P(T) is attained;
* :func:`bhatia_semrl_orthogonal` -- the Hilbert-space test on the top
  singular subspace;
* :func:`sain_orthogonal` -- the characterisation with a single norm on Y
  and the unit sphere of a norm on X.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .admissible import AdmissibleSpec, SymmetrizedSample, discretize_symmetrized
from .numerics import INV_PHI, REL_TOL, GuardBand, TriState, Verdict, default_band, golden_section
from .ortho import KERNEL_RTOL, Domain, descent_rate, descent_rates, line_minimum, supporting_functionals
from .spaces import (
    CoordinateAbs,
    DimensionError,
    Functional,
    LinearImage,
    NormSpec,
    SemiNormFamily,
    SemiNormSpec,
    as_vector,
    eval_seminorm,
    eval_seminorm_rows,
    is_norm_spec,
)

DEFAULT_MESH = 0.01
REFINE_MIN_STEP = 1e-10
MAX_REFINE_CANDIDATES = 4
REFINE_SHRINK = 3.0
# stop zooming once the grid values vary by less than this (relative)
REFINE_FLAT = 1e-15
TOP_K = 32


class ZeroSeminormError(ValueError):
    """P(T) = 0 (or p(u) = 0): outside the hypothesis of the theorems."""


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class LinearOperator:
    """Dense real matrix acting X -> Y (rows = dim Y, cols = dim X)."""

    entries: np.ndarray

    def __init__(self, entries):
        m = np.array(entries, dtype=float)
        if m.ndim != 2:
            raise ValueError(f"operator needs a 2-d matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("operator entries must be finite")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __call__(self, x) -> np.ndarray:
        return self.entries @ np.asarray(x, dtype=float)

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(self.entries + _mat(other))

    def __mul__(self, t: float) -> "LinearOperator":
        return LinearOperator(float(t) * self.entries)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "data": self.entries.ravel().tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "LinearOperator":
        r, c = int(obj["rows"]), int(obj["cols"])
        data = obj["data"]
        if len(data) != r * c:
            raise DimensionError(f"operator data has {len(data)} entries, expected {r}x{c}")
        return cls(np.asarray(data, dtype=float).reshape(r, c))


def _mat(T) -> np.ndarray:
    return T.entries if isinstance(T, LinearOperator) else np.asarray(T, dtype=float)


# -- evaluation of the induced semi-norm ------------------------------------


def _tangent_basis(d: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the complement of unit vector d."""
    q, _ = np.linalg.qr(np.column_stack([d, np.eye(d.size)]))
    return q[:, 1:]


def _grid_offsets(k_dim: int, half: int = 4) -> np.ndarray:
    ticks = np.arange(-half, half + 1, dtype=float)
    mesh = np.meshgrid(*([ticks] * k_dim), indexing="ij")
    return np.column_stack([m.ravel() for m in mesh])


class _Evaluator:
    """Evaluates P(M) = max_i max_a p_i(M a) over a sample, with refinement.

    Refinement is a zoom-grid search on the sphere chart around the best
    few sample points: a 9^(n-1) grid in the tangent plane, recentred on
    the best point and shrunk threefold per level, until the step reaches
    1e-10 or the grid values are flat to 1e-15.  Above dimension
    3 the grid is replaced by 9-point lines along each tangent axis.
    """

    def __init__(self, family: SemiNormFamily, sample: SymmetrizedSample, refine: bool = True):
        if len(sample) == 0:
            raise ValueError("sample is empty")
        self.family = family
        self.sample = sample
        self.refine = refine
        n = sample.dim
        self._offsets = _grid_offsets(n - 1) if n <= 3 else None

    def member_values(self, images: np.ndarray) -> np.ndarray:
        """Matrix of p_i(y_j) for rows y_j; shape (len(y), m)."""
        if len(self.family) == 1:
            return eval_seminorm_rows(self.family[0], images)[:, None]
        return np.column_stack([eval_seminorm_rows(p, images) for p in self.family])

    def images(self, M: np.ndarray) -> np.ndarray:
        return self.sample.points @ M.T

    def _dir_values(self, M: np.ndarray, dirs: np.ndarray) -> np.ndarray:
        pts = self.sample.lift(dirs)
        return self.member_values(pts @ M.T).max(axis=1)

    def _candidates(self, g: np.ndarray, dirs: np.ndarray | None = None) -> list[int]:
        """Discrete local maxima among the top sample values, one per +-pair."""
        n_pts = g.size
        k = min(n_pts, TOP_K)
        top = np.argpartition(-g, k - 1)[:k] if k < n_pts else np.arange(n_pts)
        top = top[np.lexsort((top, -g[top]))]
        d = (self.sample.directions if dirs is None else dirs)[top]
        gram = np.abs(d @ d.T)
        # chord distance between the lines through d_i and d_j
        near = np.sqrt(np.maximum(0.0, 2.0 - 2.0 * gram)) <= 2.5 * self.sample.mesh
        picked: list[int] = []
        for r in range(k):
            # rows are sorted best-first, so any earlier neighbour dominates
            if not np.any(near[r, :r]):
                picked.append(int(top[r]))
                if len(picked) >= MAX_REFINE_CANDIDATES:
                    break
        return picked

    def _refine(self, M: np.ndarray, starts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        n = starts.shape[1]
        cur = starts / np.linalg.norm(starts, axis=1, keepdims=True)
        best = self._dir_values(M, cur)
        bases = [_tangent_basis(c) for c in cur]
        if self._offsets is not None:
            moves = [self._offsets @ b.T for b in bases]
        else:
            ticks = np.arange(-4, 5, dtype=float)
            moves = [
                np.vstack([np.outer(ticks, b[:, t]) for t in range(n - 1)]) for b in bases
            ]
        moves = np.stack(moves)  # (c, g, n)
        c_idx = np.arange(cur.shape[0])
        step = self.sample.mesh / 2.0
        spread = np.inf
        while step > REFINE_MIN_STEP and spread > REFINE_FLAT * max(1.0, float(best.max())):
            trial = cur[:, None, :] + step * moves
            vals = self._dir_values(M, trial.reshape(-1, n)).reshape(trial.shape[:2])
            j = np.argmax(vals, axis=1)
            bv = vals[c_idx, j]
            up = bv > best
            # once the whole grid is flat to rounding, nothing is left to gain
            spread = float(np.max(bv - vals.min(axis=1)))
            if np.any(up):
                nxt = trial[c_idx, j]
                cur[up] = nxt[up] / np.linalg.norm(nxt[up], axis=1, keepdims=True)
                best[up] = bv[up]
            step /= REFINE_SHRINK
        return cur, best

    def evaluate(self, M: np.ndarray, images: np.ndarray | None = None):
        """Return ``(P, sample member values, refined dirs, refined values)``."""
        if images is None:
            images = self.images(M)
        V = self.member_values(images)
        g = V.max(axis=1)
        P = float(g.max())
        if not self.refine or P == 0.0:
            return P, V, np.empty((0, self.sample.dim)), np.empty(0)
        picks = self._candidates(g)
        rdirs, rvals = self._refine(M, self.sample.directions[picks].copy())
        return max(P, float(rvals.max())), V, rdirs, rvals

    def value(self, M: np.ndarray, images: np.ndarray | None = None) -> float:
        return self.evaluate(M, images)[0]


@dataclass(frozen=True, eq=False)
class InducedSeminormResult:
    """P(T) together with the (point, member) pairs attaining it.

    ``attainment`` houses both the attainment set (the points) and the
    optimal members (the indices); pairs qualify within ``tol_band``.
    """

    P: float
    attainment: list
    tol_band: float

    @property
    def points(self) -> list[np.ndarray]:
        seen: list[np.ndarray] = []
        for a, _ in self.attainment:
            if not any(np.array_equal(a, b) for b in seen):
                seen.append(a)
        return seen

    @property
    def indices(self) -> list[int]:
        return sorted({i for _, i in self.attainment})

    def to_json(self) -> dict:
        return {
            "P": self.P,
            "tol_band": self.tol_band,
            "attainment": [{"a": a.tolist(), "index": i} for a, i in self.attainment],
        }


def _check_dims(T: np.ndarray, family: SemiNormFamily, sample: SymmetrizedSample) -> None:
    if T.shape[1] != sample.dim:
        raise DimensionError(f"operator has {T.shape[1]} columns, sample lives in dim {sample.dim}")
    probe = np.zeros((1, T.shape[0]))
    for p in family:
        eval_seminorm_rows(p, probe)


def _attainment(ev: _Evaluator, M, P, V, rdirs, rvals, tol_band) -> list:
    thresh = P - tol_band
    pairs = []
    if rdirs.shape[0]:
        rpts = ev.sample.lift(rdirs)
        rpts = np.vstack([rpts, -rpts])
        RV = ev.member_values(rpts @ M.T)
        for a, row in zip(rpts, RV):
            for i in np.flatnonzero(row >= thresh):
                pairs.append((a, int(i)))
    js, iis = np.nonzero(V >= thresh)
    pts = ev.sample.points
    for j, i in zip(js, iis):
        pairs.append((pts[j], int(i)))
    if not pairs:
        j, i = np.unravel_index(int(np.argmax(V)), V.shape)
        pairs.append((pts[j], int(i)))
    return pairs


def induced_seminorm(
    T,
    family: SemiNormFamily,
    sample: SymmetrizedSample,
    refine: bool = True,
    tol_band: float | None = None,
) -> InducedSeminormResult:
    """P(T) over the sample, with its attainment pairs.

    ``tol_band`` defaults to ``1e-6 * max(1, P)``.  The maximising sample
    (or refined) point is always included, so the attainment is never empty.
    """
    M = _mat(T)
    _check_dims(M, family, sample)
    ev = _Evaluator(family, sample, refine)
    P, V, rdirs, rvals = ev.evaluate(M)
    band = 1e-6 * max(1.0, P) if tol_band is None else float(tol_band)
    return InducedSeminormResult(P, _attainment(ev, M, P, V, rdirs, rvals, band), band)


def spectral_operator_norm(T, tol: float = 1e-12, max_iter: int = 100_000) -> float:
    """Largest singular value by power iteration on ``T^T T``."""
    M = _mat(T)
    G = M.T @ M
    if not np.any(G):
        return 0.0
    # fixed start vector: ones plus a deterministic irrational tilt
    v = np.ones(G.shape[0]) + np.sqrt(np.arange(2, G.shape[0] + 2)) * 1e-3
    v /= np.linalg.norm(v)
    rq = float(v @ G @ v)
    for _ in range(max_iter):
        w = G @ v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            # start vector in the kernel; restart from a basis vector
            v = np.roll(v, 1)
            continue
        v = w / nw
        new = float(v @ G @ v)
        if abs(new - rq) <= tol * abs(new):
            return math.sqrt(max(new, 0.0))
        rq = new
    raise ConvergenceError("power iteration did not converge")


# -- cones and witnesses --------------------------------------------------


def _kernel_scale(p: SemiNormSpec, X: np.ndarray) -> np.ndarray:
    """``max|x| * sum_i p(e_i)``: the size of p-values near x, for rounding tests."""
    return np.abs(X).max(axis=-1) * eval_seminorm_rows(p, np.eye(X.shape[-1])).sum()


def _batch_cone_margins(
    U: np.ndarray, Vv: np.ndarray, p: SemiNormSpec, ref: float | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """One-sided descent rates of ``λ -> p(u + λv)`` for rows of U, V.

    Rates are per unit of ``p(v)``, or per unit of ``ref`` when given.
    """
    pu = eval_seminorm_rows(p, U)
    pv = eval_seminorm_rows(p, Vv)
    # p(v) at rounding level means v is in the kernel: p(u + λv) is constant
    live = (pu > 0) & (pv > KERNEL_RTOL * _kernel_scale(p, Vv))
    plus = np.zeros(U.shape[0])
    minus = np.zeros(U.shape[0])
    if not np.any(live):
        return plus, minus
    Ul, Vl, pul = U[live], Vv[live], pu[live]
    B = 2.0 * pul / pv[live]

    def phi(lam):
        return eval_seminorm_rows(p, Ul + np.asarray(lam)[:, None] * Vl)

    for out, (lo, hi) in ((plus, (np.zeros_like(B), B)), (minus, (-B, np.zeros_like(B)))):
        lam, val = golden_section(phi, lo, hi)
        out[live] = descent_rates(phi, pul, pv[live], lam, val)
    if ref is not None:
        scale = np.minimum(1.0, pv / ref)
        plus *= scale
        minus *= scale
    return plus, minus


def seminorm_cone_membership(u, v, p: SemiNormSpec, band: GuardBand | None = None) -> tuple[TriState, TriState]:
    """Whether ``p(u + λv) >= p(u)`` for all λ >= 0 (oplus) and λ <= 0 (ominus)."""
    band = band or default_band()
    u = as_vector(u)
    v = as_vector(v, u.size)
    if not np.any(u) or not np.any(v):
        yes = TriState(Verdict.ORTHOGONAL, 0.0)
        return yes, yes
    if eval_seminorm(p, u) == 0.0:
        raise ZeroSeminormError("p(u) = 0: cone membership is outside the theorem's hypothesis")
    plus, minus = _batch_cone_margins(u[None, :], v[None, :], p)
    return band.decide(plus[0]), band.decide(minus[0])


class Side(str, enum.Enum):
    OPLUS = "Oplus"
    OMINUS = "Ominus"


@dataclass(frozen=True, eq=False)
class WitnessFunctional:
    """A p-dominated functional f with f(anchor) = p(anchor) = 1."""

    f: Functional
    dominating_index: int
    certified: bool
    anchor: np.ndarray
    pairing: float

    def to_json(self) -> dict:
        return {
            "f": list(self.f.coords),
            "dominating_index": self.dominating_index,
            "certified": self.certified,
            "anchor": self.anchor.tolist(),
            "pairing": self.pairing,
        }


def dominated_support(b: np.ndarray, p: SemiNormSpec) -> np.ndarray:
    """Extreme points of ``{f : |f| <= p, f(b) = p(b)}`` as rows."""
    if is_norm_spec(p):
        return np.asarray(supporting_functionals(b, p).extremes)
    if isinstance(p, CoordinateAbs):
        f = np.zeros(b.size)
        f[p.index] = np.sign(b[p.index])
        return f[None, :]
    if isinstance(p, LinearImage):
        # p-dominated functionals are M^T g with g in the inner dual ball
        M = p.array
        c = M @ b
        if c.size == 1:
            # on the line every norm is |t| times its value at 1
            g = np.sign(c)[None, :] * eval_seminorm_rows(p.inner, np.ones((1, 1)))[:, None]
        else:
            g = dominated_support(c, p.inner)
        return g @ M
    raise TypeError(f"no closed-form dominated functionals for {p!r}")


def _anchor(u: np.ndarray, p: SemiNormSpec) -> tuple[np.ndarray, float]:
    """Anchor b with p(b) = 1 and sign mu with u = mu * p(u) * b."""
    b = u / eval_seminorm(p, u)
    scale = np.max(np.abs(b))
    for c in b:
        if abs(c) >= 1e-12 * scale:
            mu = 1.0 if c > 0 else -1.0
            return mu * b, mu
    raise ZeroSeminormError("zero vector has no anchor")


def _certify(f: np.ndarray, b: np.ndarray, p: SemiNormSpec, rng_seed: int = 0) -> bool:
    if abs(f @ b - 1.0) > 1e-9:
        return False
    rng = np.random.default_rng(rng_seed)
    zs = np.vstack([np.eye(b.size), rng.normal(size=(64, b.size)), b[None, :]])
    return bool(np.all(np.abs(zs @ f) <= eval_seminorm_rows(p, zs) + 1e-9 * (1 + np.abs(zs).max(axis=1))))


def witness_functional(
    u, v, p: SemiNormSpec, side: Side | str, dominating_index: int = 0, band: GuardBand | None = None
) -> WitnessFunctional | None:
    """Build a dominated functional certifying ``v`` in the oplus/ominus cone of ``u``.

    Returns ``None`` when every dominated functional supporting ``p`` at the
    anchor of ``u`` has the wrong sign on ``v``.
    """
    band = band or default_band()
    side = Side(side)
    u = as_vector(u)
    v = as_vector(v, u.size)
    if eval_seminorm(p, u) == 0.0:
        raise ZeroSeminormError("p(u) = 0: no anchor with p(b) = 1")
    b, mu = _anchor(u, p)
    ext = dominated_support(b, p)
    # orient so the functional supports u itself, then pick the best sign
    oriented = mu * (ext @ v)
    j = int(np.argmax(oriented)) if side is Side.OPLUS else int(np.argmin(oriented))
    val = float(oriented[j])
    tol = band.lo * eval_seminorm(p, v) + KERNEL_RTOL * float(_kernel_scale(p, v))
    ok = val >= -tol if side is Side.OPLUS else val <= tol
    if not ok:
        return None
    f = ext[j]
    return WitnessFunctional(Functional(f), dominating_index, _certify(f, b, p), b, float(f @ v))


# -- operator orthogonality routes ------------------------------------------------


def _require_positive(P: float) -> None:
    if not P > 0.0:
        raise ZeroSeminormError("P(T) = 0: operator orthogonality is outside the theorem's hypothesis")


class _LineProfile:
    """``λ -> P(T + λA)`` with the sample pruned between full passes.

    With ``h = P_s(A)`` (sampled), every sample value moves by at most
    ``|λ - μ| h`` between λ and a reference μ, and so does the sampled max.
    A point whose value at μ is more than ``2 R h`` below the max there can
    therefore not be the max anywhere within radius R of μ.  The slack term
    keeps near-maxima alive so refinement sees every competitive basin.

    ``width`` is the starting bracket width of the golden-section search
    driving the calls; after call k every later probe lies in a bracket of
    width ``width * INV_PHI**(k - 2)``, which sets the radius.  Probes
    outside the radius always trigger a full pass, so the schedule only
    affects speed.
    """

    def __init__(self, ev: _Evaluator, T: np.ndarray, A: np.ndarray, PA_sampled: float, width: float):
        self.ev = ev
        self.T, self.A = T, A
        # the sample is closed under negation and p(-y) = p(y): half suffices
        half = ev.sample.points[: len(ev.sample) // 2]
        self.dirs = ev.sample.directions[: len(ev.sample) // 2]
        self.TS, self.AS = half @ T.T, half @ A.T
        self.h = PA_sampled
        self.width = width
        self.calls = 0
        self.ref = None
        self.radius = np.inf
        self.active = None

    def _full_pass(self, lam: float, radius: float) -> None:
        g = self.ev.member_values(self.TS + lam * self.AS).max(axis=1)
        top = float(g.max())
        slack = 2.0 * self.ev.sample.mesh * top
        self.ref = lam
        self.radius = radius
        act = np.flatnonzero(g >= top - 2.0 * radius * self.h - slack)
        self.active = act
        self.TS_act, self.AS_act = self.TS[act], self.AS[act]
        self.dirs_act = self.dirs[act]

    def __call__(self, lam: float) -> float:
        lam = float(lam)
        self.calls += 1
        radius = self.width * INV_PHI ** max(self.calls - 2, 0)
        if self.ref is None or abs(lam - self.ref) > self.radius or radius < 0.05 * self.radius:
            self._full_pass(lam, radius)
        M = self.T + lam * self.A
        g = self.ev.member_values(self.TS_act + lam * self.AS_act).max(axis=1)
        P = float(g.max())
        if not self.ev.refine or P == 0.0:
            return P
        picks = self.ev._candidates(g, self.dirs_act)
        _, rvals = self.ev._refine(M, self.dirs_act[picks].copy())
        return max(P, float(rvals.max()))


def op_orthogonal_definition(
    T, A, family: SemiNormFamily, sample: SymmetrizedSample, band: GuardBand | None = None, refine: bool = True
) -> TriState:
    """``T ⊥ A`` iff ``P(T + λA) >= P(T)`` for every λ.

    The margin is the descent rate of ``λ -> P(T + λA)`` relative to
    ``P(A)``, as for vectors.
    """
    band = band or default_band()
    Tm, Am = _mat(T), _mat(A)
    _check_dims(Tm, family, sample)
    ev = _Evaluator(family, sample, refine)
    PT = ev.value(Tm)
    _require_positive(PT)
    PA, VA, _, _ = ev.evaluate(Am)
    if PA == 0.0:
        return TriState(Verdict.ORTHOGONAL, 0.0)
    profile = _LineProfile(ev, Tm, Am, float(VA.max()), 4.0 * PT / PA)

    def phi(lam):
        return PT if float(lam) == 0.0 else profile(lam)

    vphi = np.vectorize(phi, otypes=[float])
    lam, val = line_minimum(vphi, PT, PA, Domain.FULL)
    return band.decide(descent_rate(vphi, PT, PA, lam, val))


@dataclass(frozen=True, eq=False)
class CharacterizationResult:
    verdict: TriState
    witnesses: tuple | None
    plus_margin: float
    minus_margin: float

    def to_json(self) -> dict:
        w = None
        if self.witnesses is not None:
            x, p_idx, y, q_idx = self.witnesses
            w = {"x": x.tolist(), "p": p_idx, "y": y.tolist(), "q": q_idx}
        return {**self.verdict.to_json(), "witnesses": w}


def op_orthogonal_characterization(
    T,
    A,
    family: SemiNormFamily,
    sample: SymmetrizedSample,
    band: GuardBand | None = None,
    refine: bool = True,
    induced: InducedSeminormResult | None = None,
) -> CharacterizationResult:
    """Attainment-set test: some (x, p) with Ax in the oplus cone of Tx, and
    some (y, q) with Ay in the ominus cone of Ty.

    The verdict margin is ``max(min plus-margin, min minus-margin)`` over
    the attainment pairs; witnesses are the lowest-index pairs achieving
    those minima.  Cone margins are measured per unit of ``P(A)``, so a
    point error of size δ moves them by O(δ) even where Ax is short.
    """
    band = band or default_band()
    Tm, Am = _mat(T), _mat(A)
    res = induced if induced is not None else induced_seminorm(Tm, family, sample, refine)
    _require_positive(res.P)
    PA = _Evaluator(family, sample, False).value(Am)
    pts = np.array([a for a, _ in res.attainment])
    idx = np.array([i for _, i in res.attainment])
    U = pts @ Tm.T
    Vv = pts @ Am.T
    plus = np.empty(len(idx))
    minus = np.empty(len(idx))
    for i in np.unique(idx):
        sel = idx == i
        plus[sel], minus[sel] = _batch_cone_margins(U[sel], Vv[sel], family[int(i)], PA or None)
    jp = int(np.argmin(plus))
    jm = int(np.argmin(minus))
    margin = max(float(plus[jp]), float(minus[jm]))
    verdict = band.decide(margin)
    witnesses = (pts[jp], int(idx[jp]), pts[jm], int(idx[jm])) if verdict.yes else None
    return CharacterizationResult(verdict, witnesses, float(plus[jp]), float(minus[jm]))


def top_singular_subspace(T, rel_tol: float = 1e-8) -> tuple[float, np.ndarray]:
    """``(sigma_1, V)`` with V's columns spanning the top right-singular space.

    Singular values within ``rel_tol`` of the top are merged.
    """
    M = _mat(T)
    w, vecs = np.linalg.eigh(M.T @ M)
    w = np.clip(w, 0.0, None)
    top = w[-1]
    keep = w >= top * (1.0 - rel_tol) ** 2
    return math.sqrt(top), vecs[:, keep]


def bhatia_semrl_orthogonal(T, A, band: GuardBand | None = None) -> TriState:
    """Hilbert-space test: ``<Tx, Ax> = 0`` for some unit x with ``||Tx|| = ||T||``.

    On the top singular subspace V the map ``x -> <Tx, Ax>`` is the quadratic
    form of ``Q = sym(V^T T^T A V)``; it vanishes somewhere on the unit
    sphere of V iff 0 lies in ``[λ_min(Q), λ_max(Q)]``.  The margin is the
    signed distance from 0 to that interval over ``||T|| ||A||``.
    """
    band = band or default_band()
    Tm, Am = _mat(T), _mat(A)
    if Tm.shape != Am.shape or Tm.shape[0] != Tm.shape[1]:
        raise ValueError("Bhatia-Semrl test needs square operators of equal size")
    sigma, V = top_singular_subspace(Tm)
    _require_positive(sigma)
    normA = float(np.linalg.norm(Am, 2))
    if normA == 0.0:
        return TriState(Verdict.ORTHOGONAL, 0.0)
    B = V.T @ Tm.T @ Am @ V
    ev = np.linalg.eigvalsh(0.5 * (B + B.T))
    lo, hi = float(ev[0]), float(ev[-1])
    dist = -min(-lo, hi) if lo <= 0.0 <= hi else min(abs(lo), abs(hi))
    return band.decide(dist / (sigma * normA))


def sain_orthogonal(
    T,
    A,
    normX: NormSpec,
    normY: NormSpec,
    mesh: float = DEFAULT_MESH,
    band: GuardBand | None = None,
    sample: SymmetrizedSample | None = None,
) -> CharacterizationResult:
    """Banach-space characterisation: family ``{normY}`` over the unit sphere of normX."""
    Tm = _mat(T)
    if sample is None:
        sample = discretize_symmetrized(AdmissibleSpec(normX), mesh, Tm.shape[1])
    family = SemiNormFamily([normY])
    return op_orthogonal_characterization(Tm, A, family, sample, band)
