"""Constructive admissible sets: one representative per line through 0.

An :class:`AdmissibleSpec` picks, for every nonzero x, the point of the
base-norm unit sphere on the line through x whose first non-negligible
coordinate is positive, optionally rescaled for a finite list of
directions.  The symmetrised set (representatives together with their
negatives) is compact and is discretised by :func:`discretize_symmetrized`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .spaces import (
    Euclidean,
    NormSpec,
    as_vector,
    eval_seminorm,
    eval_seminorm_rows,
    norm_from_json,
    spec_to_json,
    validate_norm,
)

ZERO_COORD_RTOL = 1e-12
OVERRIDE_ANGLE_TOL = 1e-9
MAX_SAMPLE_POINTS = 8_000_000
MAX_CUBE_DIM = 10


class ZeroVectorError(ValueError):
    """The operation is undefined at the zero vector."""


def _sign_fix(u: np.ndarray) -> np.ndarray:
    """Flip ``u`` so its first non-negligible coordinate is positive."""
    scale = np.max(np.abs(u))
    for c in u:
        if abs(c) >= ZERO_COORD_RTOL * scale:
            return u if c > 0 else -u
    raise ZeroVectorError("zero vector has no projective class")


def _sin_angle(u: np.ndarray, v: np.ndarray) -> float:
    """Sine of the angle between the lines spanned by u and v."""
    u = u / np.linalg.norm(u)
    v = v / np.linalg.norm(v)
    return float(np.linalg.norm(u - (u @ v) * v))


def _unit(x: np.ndarray, norm: NormSpec) -> np.ndarray:
    nx = eval_seminorm(norm, x)
    if not nx > 0.0:
        raise ZeroVectorError("zero vector has no projective class")
    return _sign_fix(x / nx)


@dataclass(frozen=True)
class AdmissibleSpec:
    """Base-norm unit sphere, with optional per-direction rescaling.

    ``overrides`` holds ``(direction, scale)`` pairs; directions are stored
    in canonical form so two spellings of one line collapse to one key.
    """

    base_norm: NormSpec = field(default_factory=Euclidean)
    overrides: tuple = ()

    def __post_init__(self):
        if not validate_norm(self.base_norm):
            raise ValueError("base norm does not separate points")
        canon = []
        for direction, scale in self.overrides:
            scale = float(scale)
            if not (scale > 0.0 and math.isfinite(scale)):
                raise ValueError(f"override scale must be positive, got {scale}")
            d = _unit(np.asarray(direction, dtype=float), self.base_norm)
            for other, _ in canon:
                if len(other) == len(d) and _sin_angle(np.asarray(other), d) <= OVERRIDE_ANGLE_TOL:
                    raise ValueError(f"duplicate override for direction {list(direction)}")
            canon.append((tuple(float(c) for c in d), scale))
        object.__setattr__(self, "overrides", tuple(canon))

    def scale_for(self, unit_dir: np.ndarray) -> float:
        for d, s in self.overrides:
            if len(d) == unit_dir.size and _sin_angle(np.asarray(d), unit_dir) <= OVERRIDE_ANGLE_TOL:
                return s
        return 1.0

    def scales_for_rows(self, dirs: np.ndarray) -> np.ndarray:
        scales = np.ones(dirs.shape[0])
        if not self.overrides:
            return scales
        e = dirs / np.linalg.norm(dirs, axis=1, keepdims=True)
        for d, s in self.overrides:
            if len(d) != dirs.shape[1]:
                continue
            dv = np.asarray(d) / np.linalg.norm(d)
            resid = e - np.outer(e @ dv, dv)
            scales[np.linalg.norm(resid, axis=1) <= OVERRIDE_ANGLE_TOL] = s
        return scales

    def to_json(self) -> dict:
        return {
            "base_norm": spec_to_json(self.base_norm),
            "overrides": [{"direction": list(d), "scale": s} for d, s in self.overrides],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AdmissibleSpec":
        base = norm_from_json(obj.get("base_norm", {"kind": "euclidean"}))
        ov = tuple((o["direction"], o["scale"]) for o in obj.get("overrides", []))
        return cls(base, ov)


def representative_and_scale(x, spec: AdmissibleSpec) -> tuple[np.ndarray, float]:
    """Return ``(a_x, s)``: the representative of x's class and its scale."""
    x = as_vector(x)
    if not np.any(x):
        raise ZeroVectorError("zero vector has no projective class")
    u = _unit(x, spec.base_norm)
    s = spec.scale_for(u)
    return s * u, s


def canonical_representative(x, spec: AdmissibleSpec | None = None) -> np.ndarray:
    """The unique element of the admissible set on the line through ``x``."""
    return representative_and_scale(x, spec or AdmissibleSpec())[0]


def projectively_equal(x, y, tol: float = 1e-9) -> bool:
    """True iff ``y = t x`` for some t != 0, up to an angular tolerance."""
    x = as_vector(x)
    y = as_vector(y, x.size)
    if not np.any(x) or not np.any(y):
        raise ZeroVectorError("projective relation is defined on nonzero vectors")
    return _sin_angle(x, y) <= tol


@dataclass(frozen=True, eq=False)
class SymmetrizedSample:
    """Finite negation-closed sample of the symmetrised admissible set.

    ``points`` lie on the set itself; ``directions`` are the matching
    Euclidean unit vectors (handy for moving along the sphere).
    """

    points: np.ndarray
    directions: np.ndarray
    mesh: float
    spec: AdmissibleSpec

    def __len__(self):
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def lift(self, dirs: np.ndarray) -> np.ndarray:
        """Map arbitrary nonzero directions (rows) onto the admissible set."""
        dirs = np.atleast_2d(dirs)
        nb = eval_seminorm_rows(self.spec.base_norm, dirs)
        return dirs / nb[:, None] * self.spec.scales_for_rows(dirs)[:, None]


def _circle_directions(mesh: float) -> np.ndarray:
    n = 8 * math.ceil(2.0 * math.pi / (8.0 * mesh))
    half = n // 2
    theta = 2.0 * math.pi * np.arange(half) / n
    upper = np.column_stack([np.cos(theta), np.sin(theta)])
    # exact axes: cos/sin of multiples of pi/2 are not exact in floating point
    upper[np.abs(upper) < 1e-15] = 0.0
    for k in (0, n // 4):
        upper[k] = np.round(upper[k])
    return np.vstack([upper, -upper])


def _cube_directions(mesh: float) -> np.ndarray:
    """Half of an equi-angular cube-sphere grid (faces +x, +y, +z).

    Each face carries an (n+1)^2 grid, uniform in angle, with
    ``n = 2 * ceil(0.8 / mesh)``: neighbouring points are at most
    ``pi / (2n) <= mesh`` apart.  Meshes in ratio 1/k give n in ratio k,
    so such grids are nested and a finer sample contains a coarser one.
    """
    n = 2 * math.ceil(0.8 / mesh - 1e-9)
    if 3 * (n + 1) ** 2 * 2 > MAX_SAMPLE_POINTS:
        raise ValueError(f"mesh {mesh} needs about {6 * (n + 1) ** 2} points; refusing to allocate")
    t = np.tan(0.25 * math.pi * (-1.0 + 2.0 * np.arange(n + 1) / n))
    # exact endpoints, centre and antisymmetry, so grids nest bitwise
    t[0], t[-1] = -1.0, 1.0
    t[n // 2] = 0.0
    t[n // 2 + 1 :] = -t[: n // 2][::-1]
    a, b = np.meshgrid(t, t, indexing="ij")
    a, b = a.ravel(), b.ravel()
    one = np.ones_like(a)
    fx = np.column_stack([one, a, b])
    keep = a < 1.0  # the edge shared with +x is already there
    fy = np.column_stack([a[keep], one[keep], b[keep]])
    keep = (a < 1.0) & (b < 1.0)
    fz = np.column_stack([a[keep], b[keep], one[keep]])
    pts = np.vstack([fx, fy, fz])
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def _halton_directions(mesh: float, dim: int) -> np.ndarray:
    from scipy.stats import norm as gauss
    from scipy.stats.qmc import Halton

    # surface of S^{dim-1} over the volume of a (dim-1)-ball of radius mesh/2
    area = 2.0 * math.pi ** (dim / 2) / math.gamma(dim / 2)
    cap = math.pi ** ((dim - 1) / 2) / math.gamma((dim - 1) / 2 + 1) * (mesh / 2) ** (dim - 1)
    m = max(64, math.ceil(4.0 * area / cap))
    if 2 * m > MAX_SAMPLE_POINTS:
        raise ValueError(f"mesh {mesh} in dim {dim} needs {2 * m} points; refusing to allocate")
    u = Halton(d=dim, scramble=False).random(m + 1)[1:]
    u = np.clip(u, 1e-12, 1 - 1e-12)
    g = gauss.ppf(u)
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def discretize_symmetrized(spec: AdmissibleSpec, mesh: float, dim: int) -> SymmetrizedSample:
    """Deterministic negation-closed sample of the symmetrised admissible set.

    Dimension 2 uses a uniform angle grid with step <= ``mesh`` (a multiple
    of 8 points, so axes and diagonals are always present).  Dimension 3
    uses an equi-angular cube-sphere grid, which contains the +-basis
    vectors and the cube diagonals and has neighbour gap <= ``mesh``.
    Higher dimensions use a Halton sequence pushed through the Gaussian
    quantile plus the +-basis vectors and cube diagonals; there the mesh is
    a heuristic target rather than a bound.
    """
    if not mesh > 0.0:
        raise ValueError("mesh must be positive")
    if dim < 2:
        raise ValueError("dimension must be >= 2")
    if dim == 2:
        dirs = _circle_directions(mesh)
    elif dim == 3:
        half = _cube_directions(mesh)
        dirs = np.vstack([half, -half])
    else:
        half = _halton_directions(mesh, dim)
        extra = [np.eye(dim)]
        if dim <= MAX_CUBE_DIM:
            # cube vertices: the l-inf corners and l1 face centres
            signs = np.array(list(itertools.product((1.0, -1.0), repeat=dim - 1)))
            extra.append(np.column_stack([np.ones(len(signs)), signs]) / math.sqrt(dim))
        half = np.vstack([*extra, half])
        dirs = np.vstack([half, -half])
    points = SymmetrizedSample(dirs, dirs, mesh, spec).lift(dirs)
    n = dirs.shape[0] // 2
    # enforce exact negation symmetry after the lift
    points[n:] = -points[:n]
    points.setflags(write=False)
    dirs.setflags(write=False)
    return SymmetrizedSample(points, dirs, float(mesh), spec)
