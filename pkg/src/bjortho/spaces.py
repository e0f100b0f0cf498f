"""Vectors, linear functionals, norms and semi-norms on R^n.

Everything here is an immutable value.  Norms and semi-norms are described
by small frozen dataclasses and evaluated with :func:`eval_seminorm`; the
same descriptions round-trip through JSON via :func:`spec_to_json` and
:func:`spec_from_json`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np


class DimensionError(ValueError):
    """Raised when two objects that must share a dimension do not."""


def as_vector(v, dim: int | None = None) -> np.ndarray:
    """Coerce ``v`` to a finite 1-d float array of dimension >= 2."""
    arr = np.array(v, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-d coordinate sequence, got shape {arr.shape}")
    if arr.size < 2:
        raise ValueError("vectors must have dimension >= 2")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector entries must be finite")
    if dim is not None and arr.size != dim:
        raise DimensionError(f"dimension mismatch: expected {dim}, got {arr.size}")
    arr.setflags(write=False)
    return arr


def _check_dims(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[-1] != b.shape[-1]:
        raise DimensionError(f"dimension mismatch: {a.shape[-1]} vs {b.shape[-1]}")


@dataclass(frozen=True)
class Functional:
    """A linear functional f(x) = sum_i f_i x_i."""

    coords: tuple

    def __init__(self, coords):
        arr = np.asarray(coords, dtype=float)
        if arr.ndim != 1 or not np.all(np.isfinite(arr)):
            raise ValueError("functional coordinates must be a finite 1-d sequence")
        object.__setattr__(self, "coords", tuple(float(c) for c in arr))

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coords)

    def __call__(self, v) -> float:
        return eval_functional(self, v)


def eval_functional(f: Functional, v) -> float:
    v = np.asarray(v, dtype=float)
    fa = f.array
    _check_dims(fa, v)
    return float(v @ fa)


# -- norms -----------------------------------------------------------------


@dataclass(frozen=True)
class Lp:
    p: float

    def __post_init__(self):
        if not (self.p >= 1.0):
            raise ValueError(f"Lp needs p >= 1, got {self.p}")


@dataclass(frozen=True)
class WeightedLp:
    p: float
    weights: tuple

    def __init__(self, p, weights):
        w = tuple(float(x) for x in weights)
        if not (p >= 1.0):
            raise ValueError(f"WeightedLp needs p >= 1, got {p}")
        if not w or any(not (x > 0.0 and math.isfinite(x)) for x in w):
            raise ValueError("weights must be strictly positive and finite")
        object.__setattr__(self, "p", float(p))
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class Polyhedral:
    """``||x|| = max_i |g_i(x)|`` over a finite list of generator functionals."""

    generators: tuple

    def __init__(self, generators):
        gens = tuple(g if isinstance(g, Functional) else Functional(g) for g in generators)
        if not gens:
            raise ValueError("polyhedral norm needs at least one generator")
        if len({g.dim for g in gens}) != 1:
            raise DimensionError("generators must share a dimension")
        object.__setattr__(self, "generators", gens)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([g.coords for g in self.generators])


@dataclass(frozen=True)
class Euclidean:
    pass


NormSpec = Union[Lp, WeightedLp, Polyhedral, Euclidean]


# -- semi-norms ----------------------------------------------------------


@dataclass(frozen=True)
class CoordinateAbs:
    """p(y) = |y_index|."""

    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("coordinate index must be non-negative")


@dataclass(frozen=True)
class LinearImage:
    """p(y) = ||M y|| for a matrix M and an inner norm."""

    matrix: tuple
    inner: NormSpec = field(default_factory=Euclidean)

    def __init__(self, matrix, inner=None):
        m = np.atleast_2d(np.asarray(matrix, dtype=float))
        if m.ndim != 2 or not np.all(np.isfinite(m)):
            raise ValueError("linear-image matrix must be a finite 2-d array")
        if not np.any(m):
            raise ValueError("linear-image semi-norm is trivial for M = 0")
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in m.tolist()))
        object.__setattr__(self, "inner", Euclidean() if inner is None else inner)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.matrix)


SemiNormSpec = Union[Lp, WeightedLp, Polyhedral, Euclidean, CoordinateAbs, LinearImage]

NORM_TYPES = (Lp, WeightedLp, Polyhedral, Euclidean)


def is_norm_spec(spec) -> bool:
    return isinstance(spec, NORM_TYPES)


@dataclass(frozen=True)
class SemiNormFamily:
    members: tuple

    def __init__(self, members: Sequence):
        ms = tuple(members)
        if not ms:
            raise ValueError("a semi-norm family needs at least one member")
        object.__setattr__(self, "members", ms)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]


def _lp_rows(x: np.ndarray, p: float) -> np.ndarray:
    ax = np.abs(x)
    if math.isinf(p):
        return ax.max(axis=-1)
    if p == 1.0:
        return ax.sum(axis=-1)
    if p == 2.0:
        return np.sqrt(np.einsum("...i,...i->...", x, x))
    # scale by the max entry to avoid overflow of |x|^p
    m = ax.max(axis=-1, keepdims=True)
    safe = np.where(m > 0, m, 1.0)
    return (m[..., 0]) * np.power(np.power(ax / safe, p).sum(axis=-1), 1.0 / p)


def eval_seminorm_rows(spec: SemiNormSpec, x) -> np.ndarray:
    """Evaluate ``spec`` on every row of ``x`` (last axis = coordinates)."""
    x = np.asarray(x, dtype=float)
    if isinstance(spec, Euclidean):
        return _lp_rows(x, 2.0)
    if isinstance(spec, Lp):
        return _lp_rows(x, spec.p)
    if isinstance(spec, WeightedLp):
        w = np.asarray(spec.weights)
        _check_dims(w, x)
        if math.isinf(spec.p):
            return (np.abs(x) * w).max(axis=-1)
        return _lp_rows(x * np.power(w, 1.0 / spec.p), spec.p)
    if isinstance(spec, Polyhedral):
        g = spec.matrix
        _check_dims(g, x)
        return np.abs(x @ g.T).max(axis=-1)
    if isinstance(spec, CoordinateAbs):
        if spec.index >= x.shape[-1]:
            raise DimensionError(f"coordinate {spec.index} out of range for dim {x.shape[-1]}")
        return np.abs(x[..., spec.index])
    if isinstance(spec, LinearImage):
        m = spec.array
        _check_dims(m, x)
        return eval_seminorm_rows(spec.inner, x @ m.T)
    raise TypeError(f"unsupported semi-norm spec {spec!r}")


def eval_seminorm(spec: SemiNormSpec, v) -> float:
    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise ValueError("eval_seminorm takes a single vector; use eval_seminorm_rows for batches")
    if isinstance(spec, WeightedLp) and len(spec.weights) != v.size:
        raise DimensionError(f"dimension mismatch: {len(spec.weights)} weights vs dim {v.size}")
    return float(eval_seminorm_rows(spec, v))


def validate_norm(spec: NormSpec, dim: int | None = None) -> bool:
    """True iff ``spec`` separates points (only Polyhedral can fail)."""
    if isinstance(spec, Polyhedral):
        g = spec.matrix
        n = g.shape[1] if dim is None else dim
        if g.shape[1] != n:
            return False
        return int(np.linalg.matrix_rank(g)) == n
    if isinstance(spec, WeightedLp):
        return dim is None or len(spec.weights) == dim
    return isinstance(spec, NORM_TYPES)


def spec_dim(spec) -> int | None:
    """The dimension a spec is tied to, or None for dimension-free specs."""
    if isinstance(spec, WeightedLp):
        return len(spec.weights)
    if isinstance(spec, Polyhedral):
        return spec.generators[0].dim
    if isinstance(spec, LinearImage):
        return spec.array.shape[1]
    return None


def dual_norm(spec: NormSpec, f) -> float:
    """Dual norm ``sup_{||x|| <= 1} f(x)`` of a functional."""
    fa = f.array if isinstance(f, Functional) else np.asarray(f, dtype=float)
    if isinstance(spec, Euclidean):
        return float(np.linalg.norm(fa))
    if isinstance(spec, Lp):
        return float(_lp_rows(fa, _conjugate(spec.p)))
    if isinstance(spec, WeightedLp):
        w = np.asarray(spec.weights)
        if math.isinf(spec.p):
            return float(np.sum(np.abs(fa) / w))
        return float(_lp_rows(fa / np.power(w, 1.0 / spec.p), _conjugate(spec.p)))
    if isinstance(spec, Polyhedral):
        return _polyhedral_dual_norm(spec.matrix, fa)
    raise TypeError(f"dual norm undefined for {spec!r}")


def _conjugate(p: float) -> float:
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def _polyhedral_dual_norm(g: np.ndarray, f: np.ndarray) -> float:
    # dual unit ball is conv(+-g_i): ||f||_* = min sum|c_i| s.t. g^T c = f
    from scipy.optimize import linprog

    k, n = g.shape
    cost = np.ones(2 * k)
    a_eq = np.hstack([g.T, -g.T])
    res = linprog(cost, A_eq=a_eq, b_eq=f, bounds=[(0, None)] * (2 * k), method="highs")
    if not res.success:
        raise ValueError("functional is not in the span of the polyhedral generators")
    return float(res.fun)


# -- JSON ------------------------------------------------------------------


def _num(p: float):
    return "inf" if math.isinf(p) else p


def _parse_p(p) -> float:
    if isinstance(p, str):
        if p.lower() in ("inf", "infinity"):
            return math.inf
        return float(p)
    return float(p)


def spec_to_json(spec: SemiNormSpec) -> dict:
    if isinstance(spec, Euclidean):
        return {"kind": "euclidean"}
    if isinstance(spec, Lp):
        return {"kind": "lp", "p": _num(spec.p)}
    if isinstance(spec, WeightedLp):
        return {"kind": "weighted_lp", "p": _num(spec.p), "weights": list(spec.weights)}
    if isinstance(spec, Polyhedral):
        return {"kind": "polyhedral", "generators": [list(g.coords) for g in spec.generators]}
    if isinstance(spec, CoordinateAbs):
        return {"kind": "coord_abs", "index": spec.index}
    if isinstance(spec, LinearImage):
        return {
            "kind": "linear_image",
            "matrix": [list(r) for r in spec.matrix],
            "inner": spec_to_json(spec.inner),
        }
    raise TypeError(f"cannot serialise {spec!r}")


def spec_from_json(obj: dict) -> SemiNormSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("norm spec must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "euclidean":
        return Euclidean()
    if kind == "lp":
        return Lp(_parse_p(obj["p"]))
    if kind == "weighted_lp":
        return WeightedLp(_parse_p(obj["p"]), obj["weights"])
    if kind == "polyhedral":
        return Polyhedral(obj["generators"])
    if kind == "coord_abs":
        return CoordinateAbs(int(obj["index"]))
    if kind == "linear_image":
        inner = spec_from_json(obj["inner"]) if "inner" in obj else Euclidean()
        if not is_norm_spec(inner):
            raise ValueError("linear_image inner spec must be a norm")
        return LinearImage(obj["matrix"], inner)
    raise ValueError(f"unknown norm kind {kind!r}")


def norm_from_json(obj: dict) -> NormSpec:
    spec = spec_from_json(obj)
    if not is_norm_spec(spec):
        raise ValueError(f"{obj.get('kind')!r} is a semi-norm, not a norm")
    return spec


def family_to_json(family: SemiNormFamily) -> dict:
    return {"members": [spec_to_json(m) for m in family.members]}


def family_from_json(obj) -> SemiNormFamily:
    members = obj["members"] if isinstance(obj, dict) else obj
    return SemiNormFamily([spec_from_json(m) for m in members])
