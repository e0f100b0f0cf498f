"""Vector-level Birkhoff-James orthogonality.

Two independent routes decide ``x ⊥ y`` in a normed space:

* the definition, ``min_λ ||x + λy|| = ||x||``, computed by golden-section
  search over a bracket that provably contains a global minimiser;
* James' criterion, some supporting functional of ``x`` annihilates ``y``,
  computed from closed-form support sets.

On top of those sit the one-sided cones, smoothness and right-additivity
probes, and the orthogonality-space predicate over an admissible set.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .admissible import AdmissibleSpec, representative_and_scale
from .numerics import REL_TOL, GuardBand, TriState, Verdict, default_band, golden_section
from .spaces import (
    Euclidean,
    Functional,
    Lp,
    NormSpec,
    Polyhedral,
    SemiNormSpec,
    WeightedLp,
    as_vector,
    eval_seminorm,
    eval_seminorm_rows,
    is_norm_spec,
    validate_norm,
)


KERNEL_RTOL = 1e-12
# decreases of a line below this fraction of its base value are rounding
GAIN_RTOL = 1e-14
# a coordinate or generator within this fraction of active counts as active;
# it matches GAIN_RTOL so both routes resolve the same faces
SUPPORT_RTOL = GAIN_RTOL
HALVING_STEPS = 64


class Domain(str, enum.Enum):
    FULL = "Full"
    NON_NEG = "NonNeg"
    NON_POS = "NonPos"


class UnsupportedNormError(ValueError):
    """No closed-form support set exists for this norm variant."""


class DegenerateLineError(ValueError):
    """The direction vector is zero, so there is no line to search."""


def _bracket(B: float, domain: Domain) -> tuple[float, float]:
    if domain is Domain.FULL:
        return -B, B
    if domain is Domain.NON_NEG:
        return 0.0, B
    return -B, 0.0


def line_minimum(phi: Callable, base: float, step: float, domain: Domain = Domain.FULL):
    """Minimise the convex map ``phi(λ) = q(x + λy)`` for a semi-norm q.

    ``base = q(x)`` and ``step = q(y)``.  For ``|λ| >= 2 q(x)/q(y)`` the
    triangle inequality gives ``phi(λ) >= q(x) = phi(0)``, so that bracket
    holds a global minimiser.  A zero step means phi is constant.
    """
    domain = Domain(domain)
    if step <= 0.0 or base == 0.0:
        return 0.0, float(phi(np.asarray(0.0)))
    lo, hi = _bracket(2.0 * base / step, domain)
    lam, val = golden_section(phi, lo, hi)
    at_zero = float(phi(np.asarray(0.0)))
    if at_zero <= val:
        return 0.0, at_zero
    return lam, val


def _line_phi(spec: SemiNormSpec, x: np.ndarray, y: np.ndarray):
    def phi(lam):
        lam = np.asarray(lam, dtype=float)
        pts = x + lam[..., None] * y
        return eval_seminorm_rows(spec, pts)

    return phi


def minimize_along_line(x, y, norm: NormSpec, domain: Domain | str = Domain.FULL):
    """Global minimiser ``(λ*, value)`` of ``λ -> ||x + λy||`` on the domain."""
    x = as_vector(x)
    y = as_vector(y, x.size)
    ny = eval_seminorm(norm, y)
    if ny == 0.0:
        raise DegenerateLineError("y = 0: the line x + λy degenerates to a point")
    return line_minimum(_line_phi(norm, x, y), eval_seminorm(norm, x), ny, Domain(domain))


def seminorm_line_minimum(u, v, p: SemiNormSpec, domain: Domain | str = Domain.FULL):
    """As :func:`minimize_along_line` but for a semi-norm; v in ker p is allowed."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    pv = eval_seminorm(p, v)
    # rounding-level p(v) means v is in the kernel and the line is flat
    if pv <= KERNEL_RTOL * float(np.abs(v).max() * eval_seminorm_rows(p, np.eye(v.size)).sum()):
        pv = 0.0
    return line_minimum(_line_phi(p, u, v), eval_seminorm(p, u), pv, Domain(domain))


def descent_rate(phi: Callable, base: float, step: float, lam: float, val: float) -> float:
    """First-order margin of a line minimum: how fast ``phi`` falls below ``base``.

    ``phi`` is convex with ``phi(0) = base`` and a minimum ``val`` at
    ``lam``.  Starting from ``lam``, the point is halved towards 0 while it
    still keeps half of the decrease; the result is the secant slope
    ``(base - phi(b)) / (|b| step)`` there, in [0, 1].  It vanishes exactly
    when the line never drops below ``base`` (up to rounding), and it is of
    the order of the one-sided derivative, so it is commensurate with
    margins built from supporting functionals.  The bare decrease
    ``base - val`` is second order in that derivative at smooth points.
    """
    gain = base - val
    if not gain > GAIN_RTOL * base:
        return 0.0
    target = base - 0.5 * gain
    b, vb = float(lam), float(val)
    for _ in range(HALVING_STEPS):
        m = 0.5 * b
        vm = float(phi(np.asarray(m)))
        if vm > target:
            break
        b, vb = m, vm
    return min(1.0, (base - vb) / (abs(b) * step))


def descent_rates(phi: Callable, base: np.ndarray, step: np.ndarray, lam: np.ndarray, val: np.ndarray) -> np.ndarray:
    """Row-wise :func:`descent_rate`; ``phi`` maps a vector of λ to row values."""
    gain = base - val
    out = np.zeros(base.shape)
    live = gain > GAIN_RTOL * base
    if not np.any(live):
        return out
    target = base - 0.5 * gain
    b = np.where(live, lam, 0.0)
    vb = np.array(val, dtype=float)
    moving = live.copy()
    for _ in range(HALVING_STEPS):
        m = 0.5 * b
        vm = phi(m)
        take = moving & (vm <= target)
        b = np.where(take, m, b)
        vb = np.where(take, vm, vb)
        moving = take
        if not np.any(moving):
            break
    out[live] = np.minimum(1.0, (base[live] - vb[live]) / (np.abs(b[live]) * step[live]))
    return out


def _one_sided_margin(phi, base: float, step: float, domain: Domain) -> float:
    lam, val = line_minimum(phi, base, step, domain)
    return descent_rate(phi, base, step, lam, val)


def bj_orthogonal(x, y, norm: NormSpec, band: GuardBand | None = None) -> TriState:
    """Birkhoff-James orthogonality from the definition.

    Minimises ``||x + λy||`` over all λ; the margin is the
    :func:`descent_rate` of that line, 0 iff the minimum is ``||x||``.
    """
    band = band or default_band()
    x = as_vector(x)
    y = as_vector(y, x.size)
    if not np.any(x) or not np.any(y):
        return TriState(Verdict.ORTHOGONAL, 0.0)
    return band.decide(_one_sided_margin(_line_phi(norm, x, y), eval_seminorm(norm, x), eval_seminorm(norm, y), Domain.FULL))


def cone_membership(x, y, norm: NormSpec, band: GuardBand | None = None) -> tuple[TriState, TriState]:
    """Membership of ``y`` in the one-sided cones x⁺ (λ >= 0) and x⁻ (λ <= 0)."""
    band = band or default_band()
    x = as_vector(x)
    y = as_vector(y, x.size)
    if not np.any(x) or not np.any(y):
        yes = TriState(Verdict.ORTHOGONAL, 0.0)
        return yes, yes
    phi = _line_phi(norm, x, y)
    nx = eval_seminorm(norm, x)
    ny = eval_seminorm(norm, y)
    plus = band.decide(_one_sided_margin(phi, nx, ny, Domain.NON_NEG))
    minus = band.decide(_one_sided_margin(phi, nx, ny, Domain.NON_POS))
    return plus, minus


# -- supporting functionals -------------------------------------------------


class SupportKind(str, enum.Enum):
    UNIQUE = "UniquePoint"
    SEGMENT = "Segment"
    FACE = "Face"


@dataclass(frozen=True, eq=False)
class SupportSet:
    """The supporting face at x, stored as its extreme points (rows)."""

    kind: SupportKind
    extremes: np.ndarray

    @property
    def functionals(self) -> list[Functional]:
        return [Functional(r) for r in self.extremes]

    def pair(self, y) -> np.ndarray:
        return self.extremes @ np.asarray(y, dtype=float)


def _support_from_rows(rows: Iterable) -> SupportSet:
    uniq: list[np.ndarray] = []
    for r in rows:
        r = np.asarray(r, dtype=float)
        if not any(np.max(np.abs(r - q)) <= REL_TOL for q in uniq):
            uniq.append(r)
    ext = np.array(uniq)
    if len(uniq) == 1:
        kind = SupportKind.UNIQUE
    elif len(uniq) == 2:
        kind = SupportKind.SEGMENT
    else:
        kind = SupportKind.FACE
    ext.setflags(write=False)
    return SupportSet(kind, ext)


def _smooth_lp_support(x: np.ndarray, p: float, w: np.ndarray, nx: float) -> np.ndarray:
    # gradient of (sum w_i |x_i|^p)^(1/p)
    u = x / nx
    return w * np.sign(u) * np.power(np.abs(u), p - 1.0)


def _l1_support(x: np.ndarray, w: np.ndarray) -> list[np.ndarray]:
    scale = np.max(np.abs(x))
    zero = np.abs(x) < SUPPORT_RTOL * scale
    base = w * np.sign(x)
    base[zero] = 0.0
    free = np.flatnonzero(zero)
    rows = []
    for signs in itertools.product((-1.0, 1.0), repeat=free.size):
        r = base.copy()
        r[free] = w[free] * np.asarray(signs)
        rows.append(r)
    return rows


def _linf_support(x: np.ndarray, w: np.ndarray) -> list[np.ndarray]:
    wx = w * np.abs(x)
    top = wx.max()
    rows = []
    for j in np.flatnonzero(wx >= (1.0 - SUPPORT_RTOL) * top):
        r = np.zeros_like(x)
        r[j] = w[j] * np.sign(x[j])
        rows.append(r)
    return rows


def _polyhedral_support(x: np.ndarray, g: np.ndarray) -> list[np.ndarray]:
    vals = g @ x
    top = np.abs(vals).max()
    active = np.flatnonzero(np.abs(vals) >= (1.0 - SUPPORT_RTOL) * top)
    return [np.sign(vals[i]) * g[i] for i in active]


def supporting_functionals(x, norm: NormSpec) -> SupportSet:
    """All norm-one functionals f with ``f(x) = ||x||``, as extreme points."""
    x = as_vector(x)
    if not np.any(x):
        raise ValueError("supporting functionals are defined at nonzero x")
    if isinstance(norm, Euclidean) or (isinstance(norm, Lp) and norm.p == 2.0):
        return _support_from_rows([x / np.linalg.norm(x)])
    if isinstance(norm, (Lp, WeightedLp)):
        p = norm.p
        w = np.ones(x.size) if isinstance(norm, Lp) else np.asarray(norm.weights)
        if w.size != x.size:
            raise ValueError("dimension mismatch between weights and x")
        if p == 1.0:
            return _support_from_rows(_l1_support(x, w))
        if math.isinf(p):
            return _support_from_rows(_linf_support(x, w))
        return _support_from_rows([_smooth_lp_support(x, p, w, eval_seminorm(norm, x))])
    if isinstance(norm, Polyhedral):
        if not validate_norm(norm, x.size):
            raise ValueError("polyhedral generators do not define a norm")
        return _support_from_rows(_polyhedral_support(x, norm.matrix))
    raise UnsupportedNormError(f"no closed-form support set for {norm!r}; use bj_orthogonal")


def james_orthogonal(x, y, norm: NormSpec, band: GuardBand | None = None) -> TriState:
    """James' criterion: some supporting functional of x vanishes at y.

    The support set is convex, so ``{f(y)}`` is the interval spanned by the
    extreme points.  The margin is the signed distance from 0 to that
    interval (negative inside), divided by ``||y||``.
    """
    band = band or default_band()
    x = as_vector(x)
    y = as_vector(y, x.size)
    if not np.any(x) or not np.any(y):
        return TriState(Verdict.ORTHOGONAL, 0.0)
    vals = supporting_functionals(x, norm).pair(y)
    lo, hi = float(vals.min()), float(vals.max())
    if lo <= 0.0 <= hi:
        dist = -min(-lo, hi)
    else:
        dist = min(abs(lo), abs(hi))
    return band.decide(dist / eval_seminorm(norm, y))


def is_smooth_point(x, norm: NormSpec) -> bool:
    """True iff x has a unique supporting functional."""
    ext = supporting_functionals(x, norm).extremes
    return bool(np.max(np.abs(ext - ext[0])) <= REL_TOL)


# -- right additivity ------------------------------------------------------


@dataclass(frozen=True)
class ProbeResult:
    passed: bool
    checked: int
    counterexample: tuple | None = None
    index: int | None = None

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": None
            if self.counterexample is None
            else [list(map(float, v)) for v in self.counterexample],
            "index": self.index,
        }


def seed_triple(dim: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """x = (1,...,1), y = e_1, z = x - e_1; a right-additivity failure in l-inf."""
    x = np.ones(dim)
    y = np.zeros(dim)
    y[0] = 1.0
    return x, y, x - y


def _snap_nonsmooth(x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    # push x onto a lower-dimensional face of typical polyhedral balls
    x = x.copy()
    if rng.random() < 0.5:
        k = rng.integers(1, x.size)
        x[rng.choice(x.size, size=k, replace=False)] = 0.0
    else:
        k = rng.integers(2, x.size + 1)
        idx = rng.choice(x.size, size=k, replace=False)
        x[idx] = np.sign(x[idx] + (x[idx] == 0)) * np.max(np.abs(x))
    return x


def _kernel_draw(f: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    v = rng.uniform(-1.0, 1.0, f.size)
    return v - (v @ f) / (f @ f) * f


def orthogonal_triple(norm: NormSpec, dim: int, rng: np.random.Generator):
    """Draw ``(x, y, z)`` with x ⊥ y and x ⊥ z by construction.

    x is snapped onto a non-smooth face half the time; y and z are taken
    from the kernels of two independently drawn supporting functionals.
    """
    while True:
        x = rng.uniform(-1.0, 1.0, dim)
        if rng.random() < 0.5:
            x = _snap_nonsmooth(x, rng)
        if np.linalg.norm(x) > 1e-6:
            break
    ext = supporting_functionals(x, norm).extremes

    def draw_f():
        w = rng.dirichlet(np.ones(ext.shape[0])) if ext.shape[0] > 1 else np.ones(1)
        # bias towards extreme points so different faces get exercised
        if ext.shape[0] > 1 and rng.random() < 0.5:
            w = np.zeros(ext.shape[0])
            w[rng.integers(ext.shape[0])] = 1.0
        return w @ ext

    while True:
        y = _kernel_draw(draw_f(), rng)
        z = _kernel_draw(draw_f(), rng)
        if np.linalg.norm(y) > 1e-6 and np.linalg.norm(z) > 1e-6:
            return x, y, z


def triple_sampler(norm: NormSpec, dim: int, seed: int) -> Callable[[int], tuple]:
    """Splittable sampler: instance ``i`` depends only on ``(seed, i)``."""

    def sample(i: int):
        rng = np.random.default_rng([seed, i])
        return orthogonal_triple(norm, dim, rng)

    return sample


def bj_margins(X, Y, norm: NormSpec) -> np.ndarray:
    """Definition margins of many pairs at once (rows of X against rows of Y).

    Rows with a zero vector get margin 0, as in :func:`bj_orthogonal`.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    nx = eval_seminorm_rows(norm, X)
    ny = eval_seminorm_rows(norm, Y)
    live = (nx > 0) & (ny > 0)
    out = np.zeros(X.shape[0])
    if not np.any(live):
        return out
    Xl, Yl, nxl = X[live], Y[live], nx[live]
    B = 2.0 * nxl / ny[live]

    def phi(lam):
        return eval_seminorm_rows(norm, Xl + np.asarray(lam)[:, None] * Yl)

    lam, val = golden_section(phi, -B, B)
    out[live] = descent_rates(phi, nxl, ny[live], lam, val)
    return out


PROBE_CHUNK = 256


def right_additivity_probe(
    norm: NormSpec,
    sampler: Callable[[int], tuple] | None = None,
    count: int = 1000,
    dim: int = 2,
    seed: int = 0,
    band: GuardBand | None = None,
) -> ProbeResult:
    """Search for x ⊥ y, x ⊥ z with x not ⊥ y + z.

    The seed triple from :func:`seed_triple` is always tried first, then
    ``count`` sampled triples.  Returns the first counterexample, or a pass.
    Triples are evaluated in batches; the result does not depend on the
    batch size.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    band = band or default_band()
    sampler = sampler or triple_sampler(norm, dim, seed)
    candidates = itertools.chain([(-1, seed_triple(dim))], ((i, sampler(i)) for i in range(count)))
    checked = 0
    while True:
        chunk = list(itertools.islice(candidates, PROBE_CHUNK))
        if not chunk:
            return ProbeResult(True, checked)
        xs = np.array([np.asarray(t[0], dtype=float) for _, t in chunk])
        ys = np.array([np.asarray(t[1], dtype=float) for _, t in chunk])
        zs = np.array([np.asarray(t[2], dtype=float) for _, t in chunk])
        m = bj_margins(np.vstack([xs, xs, xs]), np.vstack([ys, zs, ys + zs]), norm)
        n = len(chunk)
        for k, (idx, _) in enumerate(chunk):
            if not (band.decide(m[k]).yes and band.decide(m[n + k]).yes):
                continue
            checked += 1
            if band.decide(m[2 * n + k]).no:
                return ProbeResult(False, checked, (xs[k], ys[k], zs[k]), idx)


# -- orthogonality space ------------------------------------------------------


class FunctionalFamily(str, enum.Enum):
    UNIT_DUAL_SPHERE = "UnitDualSphere"


@dataclass(frozen=True)
class OrthoSpaceSpec:
    """The triple (topology, functional family, admissible set).

    The topology is the one induced by ``norm``; the only realised family is
    the unit sphere of the dual.  The admissible set must be built over the
    same norm, and only down-scaled overrides are supported: an enlarged
    class would change the supremum over the admissible set for every
    other class.
    """

    norm: NormSpec = field(default_factory=Euclidean)
    family_id: FunctionalFamily = FunctionalFamily.UNIT_DUAL_SPHERE
    admissible: AdmissibleSpec | None = None

    def __post_init__(self):
        if not is_norm_spec(self.norm) or not validate_norm(self.norm):
            raise ValueError("orthogonality space needs a valid norm")
        try:
            fam = FunctionalFamily(self.family_id)
        except ValueError:
            raise ValueError(f"unsupported functional family {self.family_id!r}") from None
        object.__setattr__(self, "family_id", fam)
        adm = self.admissible if self.admissible is not None else AdmissibleSpec(self.norm)
        if adm.base_norm != self.norm:
            raise ValueError("admissible set must be scaled from the space's own norm")
        if any(s > 1.0 for _, s in adm.overrides):
            raise ValueError("override scales above 1 are not supported")
        object.__setattr__(self, "admissible", adm)


def ortho_space_orthogonal(x, y, space: OrthoSpaceSpec, band: GuardBand | None = None) -> TriState:
    """Orthogonality in the space (norm topology, dual unit sphere, admissible set).

    With ``a_x = s u`` (``||u|| = 1``): if ``s < 1`` then ``|f(a_x)| <= s < 1``
    while the supremum of ``|f|`` over the admissible set is 1 for every
    norm-one f, so nothing attains at ``a_x`` and the answer is no.  At
    ``s = 1`` the attaining functionals are exactly the supporting
    functionals of ``a_x``, and the test is whether one of them vanishes at
    ``a_y``.  Norms without a closed-form support set fall back to the
    Birkhoff-James definition, which is equivalent there.
    """
    band = band or default_band()
    if space.family_id is not FunctionalFamily.UNIT_DUAL_SPHERE:
        raise ValueError(f"unsupported functional family {space.family_id!r}")
    x = as_vector(x)
    y = as_vector(y, x.size)
    if not np.any(x) or not np.any(y):
        return TriState(Verdict.ORTHOGONAL, 0.0)
    a_x, s = representative_and_scale(x, space.admissible)
    a_y, _ = representative_and_scale(y, space.admissible)
    shortfall = band.decide(1.0 - s)
    if not shortfall.yes:
        return shortfall
    try:
        return james_orthogonal(a_x / s, a_y, space.norm, band)
    except UnsupportedNormError:
        return bj_orthogonal(x, y, space.norm, band)
