"""Randomised cross-validation of the orthogonality characterisations.

Every check draws deterministic instances, evaluates them along two (or
three) independent routes and tallies agreement.  Every ``boundary_every``-th
instance is pushed onto the orthogonality boundary by construction, so both
verdicts get exercised instead of the generic "not orthogonal" case.
"""
from __future__ import annotations

import enum
import functools
import hashlib
import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .admissible import AdmissibleSpec, discretize_symmetrized, representative_and_scale
from .numerics import GuardBand, TriState, Verdict, default_band
from .operators import (
    Side,
    bhatia_semrl_orthogonal,
    dominated_support,
    induced_seminorm,
    op_orthogonal_characterization,
    op_orthogonal_definition,
    sain_orthogonal,
    seminorm_cone_membership,
    top_singular_subspace,
    witness_functional,
)
from .ortho import (
    OrthoSpaceSpec,
    bj_orthogonal,
    is_smooth_point,
    ortho_space_orthogonal,
    orthogonal_triple,
    seed_triple,
    supporting_functionals,
)
from .spaces import (
    Euclidean,
    Lp,
    NormSpec,
    SemiNormFamily,
    SemiNormSpec,
    WeightedLp,
    eval_seminorm,
    family_from_json,
    family_to_json,
    norm_from_json,
    spec_from_json,
    spec_to_json,
)

MIN_VECTOR_NORM = 1e-6


class TheoremId(str, enum.Enum):
    T2_1_equivalence = "T2_1_equivalence"
    T2_2_strict_inclusion = "T2_2_strict_inclusion"
    T2_6_right_additivity = "T2_6_right_additivity"
    C2_7_smoothness = "C2_7_smoothness"
    T3_1_bhatia_semrl = "T3_1_bhatia_semrl"
    T3_2_sain = "T3_2_sain"
    T3_5_cone_equivalence = "T3_5_cone_equivalence"
    T3_7_characterization = "T3_7_characterization"

    @classmethod
    def parse(cls, text: str) -> "TheoremId":
        """Accept the full id or its short prefix, e.g. ``T3_7``."""
        if isinstance(text, cls):
            return text
        key = str(text).strip()
        for t in cls:
            if key == t.value or key.upper() == t.value.split("_", 2)[0] + "_" + t.value.split("_", 2)[1]:
                return t
        raise ValueError(f"unknown theorem id {text!r}")


INSTANCE_KIND = {
    TheoremId.T2_1_equivalence: "vector_pair",
    TheoremId.T2_2_strict_inclusion: "vector_pair",
    TheoremId.T2_6_right_additivity: "triple",
    TheoremId.C2_7_smoothness: "triple",
    TheoremId.T3_1_bhatia_semrl: "operator_pair",
    TheoremId.T3_2_sain: "operator_pair",
    TheoremId.T3_5_cone_equivalence: "vector_pair",
    TheoremId.T3_7_characterization: "operator_pair",
}


@dataclass(frozen=True)
class CheckConfig:
    """Everything a check needs besides count and seed.

    Fields not used by a theorem are ignored.  ``family`` defaults to
    ``{norm}``; ``norm_x``/``norm_y`` default to ``norm``; ``seminorm``
    defaults to ``norm``.  T2_2 without overrides uses scale 0.5 on e_1.
    """

    dim: int = 2
    norm: NormSpec = field(default_factory=Euclidean)
    overrides: tuple = ()
    family: SemiNormFamily | None = None
    seminorm: SemiNormSpec | None = None
    norm_x: NormSpec | None = None
    norm_y: NormSpec | None = None
    admissible_norm: NormSpec = field(default_factory=Euclidean)
    mesh: float = 0.01
    refine: bool = True
    boundary_every: int = 2
    triangulate: bool = True

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dimension must be >= 2")
        if not self.mesh > 0:
            raise ValueError("mesh must be positive")
        if self.boundary_every < 0:
            raise ValueError("boundary_every must be >= 0")

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "norm": spec_to_json(self.norm),
            "overrides": [{"direction": list(map(float, d)), "scale": float(s)} for d, s in self.overrides],
            "family": None if self.family is None else family_to_json(self.family),
            "seminorm": None if self.seminorm is None else spec_to_json(self.seminorm),
            "norm_x": None if self.norm_x is None else spec_to_json(self.norm_x),
            "norm_y": None if self.norm_y is None else spec_to_json(self.norm_y),
            "admissible_norm": spec_to_json(self.admissible_norm),
            "mesh": self.mesh,
            "refine": self.refine,
            "boundary_every": self.boundary_every,
            "triangulate": self.triangulate,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CheckConfig":
        def opt(key, parse):
            return None if obj.get(key) is None else parse(obj[key])

        known = set(cls.__dataclass_fields__)
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(
            dim=int(obj.get("dim", 2)),
            norm=norm_from_json(obj.get("norm", {"kind": "euclidean"})),
            overrides=tuple((tuple(o["direction"]), float(o["scale"])) for o in obj.get("overrides", [])),
            family=opt("family", family_from_json),
            seminorm=opt("seminorm", spec_from_json),
            norm_x=opt("norm_x", norm_from_json),
            norm_y=opt("norm_y", norm_from_json),
            admissible_norm=norm_from_json(obj.get("admissible_norm", {"kind": "euclidean"})),
            mesh=float(obj.get("mesh", 0.01)),
            refine=bool(obj.get("refine", True)),
            boundary_every=int(obj.get("boundary_every", 2)),
            triangulate=bool(obj.get("triangulate", True)),
        )

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:12]

    # resolved views ---------------------------------------------------------

    @property
    def the_family(self) -> SemiNormFamily:
        return self.family if self.family is not None else SemiNormFamily([self.norm])

    @property
    def the_seminorm(self) -> SemiNormSpec:
        return self.seminorm if self.seminorm is not None else self.norm

    @property
    def space_x(self) -> NormSpec:
        return self.norm_x if self.norm_x is not None else self.norm

    @property
    def space_y(self) -> NormSpec:
        return self.norm_y if self.norm_y is not None else self.norm

    def admissible_for(self, theorem: TheoremId) -> AdmissibleSpec:
        if theorem is TheoremId.T2_1_equivalence:
            return AdmissibleSpec(self.norm)
        if theorem is TheoremId.T2_2_strict_inclusion and not self.overrides:
            e1 = tuple(1.0 if i == 0 else 0.0 for i in range(self.dim))
            return AdmissibleSpec(self.norm, ((e1, 0.5),))
        return AdmissibleSpec(self.norm, self.overrides)


@dataclass
class AgreementReport:
    theorem: TheoremId
    total: int
    agree: int
    disagree: int
    indeterminate: int
    disagreements: list
    seed: int
    wall_time: float
    config: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.disagree == 0

    @property
    def indeterminate_fraction(self) -> float:
        return self.indeterminate / self.total if self.total else 0.0

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "total": self.total,
            "agree": self.agree,
            "disagree": self.disagree,
            "indeterminate": self.indeterminate,
            "disagreements": self.disagreements,
            "seed": self.seed,
            "wall_time": self.wall_time,
            "config": self.config,
            "details": self.details,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AgreementReport":
        return cls(
            theorem=TheoremId(obj["theorem"]),
            total=int(obj["total"]),
            agree=int(obj["agree"]),
            disagree=int(obj["disagree"]),
            indeterminate=int(obj["indeterminate"]),
            disagreements=list(obj["disagreements"]),
            seed=int(obj["seed"]),
            wall_time=float(obj["wall_time"]),
            config=dict(obj.get("config", {})),
            details=dict(obj.get("details", {})),
        )

    def csv_line(self) -> str:
        digest = CheckConfig.from_json(self.config).digest() if self.config else ""
        buf = io.StringIO()
        csv.writer(buf, lineterminator="").writerow(
            [
                self.theorem.value,
                digest,
                self.total,
                self.agree,
                self.disagree,
                self.indeterminate,
                self.seed,
                int(round(self.wall_time * 1000)),
            ]
        )
        return buf.getvalue()

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.theorem.value}: total={self.total} agree={self.agree} "
            f"disagree={self.disagree} indeterminate={self.indeterminate} seed={self.seed}"
        )


CSV_HEADER = "theorem,config_hash,total,agree,disagree,indeterminate,seed,millis"


# -- instance generation ---------------------------------------------------


def _rng(seed: int, index: int, stream: int = 0) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(index), stream])


def _vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    while True:
        v = rng.uniform(-1.0, 1.0, dim)
        if np.linalg.norm(v) >= MIN_VECTOR_NORM:
            return v


def gen_instance(kind: str, config: CheckConfig, seed: int, index: int) -> dict:
    """Deterministic random instance number ``index`` of the stream ``seed``.

    ``vector_pair`` gives ``{"x", "y"}``, ``operator_pair`` gives ``{"T", "A"}``
    (entries uniform in [-1, 1]), ``triple`` gives ``{"x", "y", "z"}`` with
    x orthogonal to y and z by construction in ``config.norm``.
    """
    rng = _rng(seed, index)
    n = config.dim
    if kind == "vector_pair":
        return {"x": _vector(rng, n).tolist(), "y": _vector(rng, n).tolist()}
    if kind == "operator_pair":
        return {
            "T": rng.uniform(-1.0, 1.0, (n, n)).tolist(),
            "A": rng.uniform(-1.0, 1.0, (n, n)).tolist(),
        }
    if kind == "triple":
        x, y, z = orthogonal_triple(config.norm, n, rng)
        return {"x": x.tolist(), "y": y.tolist(), "z": z.tolist()}
    raise ValueError(f"unknown instance kind {kind!r}")


def _pick_functional(ext: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    if ext.shape[0] == 1 or rng.random() < 0.5:
        return ext[rng.integers(ext.shape[0])]
    return rng.dirichlet(np.ones(ext.shape[0])) @ ext


def _kernel_vector(f: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    while True:
        v = rng.uniform(-1.0, 1.0, f.size)
        v = v - (v @ f) / (f @ f) * f
        if np.linalg.norm(v) >= MIN_VECTOR_NORM:
            return v


def orthogonalize_operator(T, A, family: SemiNormFamily, sample, rng: np.random.Generator, x=None) -> np.ndarray:
    """Rank-one correction of A making it orthogonal to T.

    With an attaining pair (x, p) of T and a dominated f supporting p at
    Tx, ``A' = A - f(Ax)/f(Tx) * Tx x^T / |x|^2`` has ``f(A'x) = 0``, hence
    ``P(T + λA') >= f(Tx) = P(T)`` for every λ.
    """
    T = np.asarray(T, dtype=float)
    A = np.asarray(A, dtype=float)
    if x is None:
        res = induced_seminorm(T, family, sample)
        vals = [eval_seminorm(family[i], T @ a) for a, i in res.attainment]
        a, i = res.attainment[int(np.argmax(vals))]
    else:
        a, i = np.asarray(x, dtype=float), 0
    p = family[i]
    Ta = T @ a
    f = _pick_functional(dominated_support(Ta / eval_seminorm(p, Ta), p), rng)
    c = (f @ (A @ a)) / (f @ Ta)
    return A - c * np.outer(Ta, a) / (a @ a)


@functools.lru_cache(maxsize=16)
def _cached_sample(adm_json: str, mesh: float, dim: int):
    return discretize_symmetrized(AdmissibleSpec.from_json(json.loads(adm_json)), mesh, dim)


def _sample(norm: NormSpec, mesh: float, dim: int):
    return _cached_sample(json.dumps(AdmissibleSpec(norm).to_json(), sort_keys=True), mesh, dim)


def _operator_sample(theorem: TheoremId, config: CheckConfig):
    if theorem is TheoremId.T3_1_bhatia_semrl:
        return _sample(Euclidean(), config.mesh, config.dim)
    if theorem is TheoremId.T3_2_sain:
        return _sample(config.space_x, config.mesh, config.dim)
    return _sample(config.admissible_norm, config.mesh, config.dim)


def _operator_family(theorem: TheoremId, config: CheckConfig) -> SemiNormFamily:
    if theorem is TheoremId.T3_1_bhatia_semrl:
        return SemiNormFamily([Euclidean()])
    if theorem is TheoremId.T3_2_sain:
        return SemiNormFamily([config.space_y])
    return config.the_family


def prepare_instance(theorem: TheoremId, config: CheckConfig, seed: int, index: int) -> dict:
    """The instance a check actually evaluates: the raw draw, moved onto the
    orthogonality boundary for every ``boundary_every``-th index."""
    kind = INSTANCE_KIND[theorem]
    inst = gen_instance(kind, config, seed, index)
    k = config.boundary_every
    if kind == "triple" or k == 0 or index % k != k - 1:
        return inst
    rng = _rng(seed, index, 1)
    if kind == "operator_pair":
        T = np.asarray(inst["T"])
        if theorem is TheoremId.T3_1_bhatia_semrl:
            x = top_singular_subspace(T)[1][:, 0]
            A = orthogonalize_operator(T, inst["A"], SemiNormFamily([Euclidean()]), None, rng, x=x)
        else:
            A = orthogonalize_operator(
                T, inst["A"], _operator_family(theorem, config), _operator_sample(theorem, config), rng
            )
        return {"T": inst["T"], "A": A.tolist()}
    # vector pair: y in the kernel of a supporting functional at x
    if theorem is TheoremId.T3_5_cone_equivalence:
        p = config.the_seminorm
        u = np.asarray(inst["x"])
        if eval_seminorm(p, u) == 0.0:
            return inst
        f = _pick_functional(dominated_support(u / eval_seminorm(p, u), p), rng)
        return {"x": inst["x"], "y": _kernel_vector(f, rng).tolist()}
    x, y, _ = orthogonal_triple(config.norm, config.dim, rng)
    if theorem is TheoremId.T2_2_strict_inclusion and rng.random() < 0.5:
        adm = config.admissible_for(theorem)
        d, _ = adm.overrides[rng.integers(len(adm.overrides))]
        x = rng.uniform(0.2, 2.0) * np.asarray(d) * (1 if rng.random() < 0.5 else -1)
        y = _kernel_vector(_pick_functional(supporting_functionals(x, config.norm).extremes, rng), rng)
    return {"x": x.tolist(), "y": y.tolist()}


# -- evaluation --------------------------------------------------------------


def _tally(verdicts: dict) -> str:
    decided = {v.verdict for v in verdicts.values() if not v.indeterminate}
    if len(decided) > 1:
        return "disagree"
    if any(v.indeterminate for v in verdicts.values()):
        return "indeterminate"
    return "agree"


def _yes(flag: bool) -> TriState:
    return TriState(Verdict.ORTHOGONAL if flag else Verdict.NOT_ORTHOGONAL, 0.0)


def _additivity(rel, inst) -> dict:
    x, y, z = (np.asarray(inst[k]) for k in ("x", "y", "z"))
    return {"x_y": rel(x, y), "x_z": rel(x, z), "x_yz": rel(x, y + z)}


def _additivity_outcome(res: dict, unique: bool) -> tuple[str, bool]:
    """Outcome of one triple and whether it is a right-additivity failure."""
    if any(v.indeterminate for v in res.values()):
        return "indeterminate", False
    failure = res["x_y"].yes and res["x_z"].yes and res["x_yz"].no
    return ("disagree" if failure and unique else "agree"), failure


def smooth_space(norm: NormSpec) -> bool:
    """Whether every unit vector of the norm is a smooth point."""
    if isinstance(norm, Euclidean):
        return True
    if isinstance(norm, (Lp, WeightedLp)):
        return 1.0 < norm.p < math.inf
    return False


def evaluate_instance(theorem: TheoremId, config: CheckConfig, inst: dict, band: GuardBand | None = None) -> dict:
    """Evaluate one prepared instance along its routes.

    Returns ``{"outcome": agree|disagree|indeterminate, "verdicts": {...}}``
    plus theorem-specific flags.
    """
    band = band or default_band()
    theorem = TheoremId(theorem)
    out: dict = {}
    if theorem in (TheoremId.T2_1_equivalence, TheoremId.T2_2_strict_inclusion):
        x, y = np.asarray(inst["x"]), np.asarray(inst["y"])
        space = OrthoSpaceSpec(config.norm, admissible=config.admissible_for(theorem))
        verdicts = {"ortho_space": ortho_space_orthogonal(x, y, space, band), "bj": bj_orthogonal(x, y, config.norm, band)}
        if theorem is TheoremId.T2_1_equivalence:
            outcome = _tally(verdicts)
        else:
            a, b = verdicts["ortho_space"], verdicts["bj"]
            if a.indeterminate or b.indeterminate:
                outcome = "indeterminate"
            else:
                outcome = "disagree" if (a.yes and b.no) else "agree"
            out["strict"] = bool(b.yes and a.no)
    elif theorem in (TheoremId.T2_6_right_additivity, TheoremId.C2_7_smoothness):
        if theorem is TheoremId.T2_6_right_additivity:
            space = OrthoSpaceSpec(config.norm, admissible=config.admissible_for(theorem))

            def rel(u, v):
                return ortho_space_orthogonal(u, v, space, band)

            a_x, s = representative_and_scale(np.asarray(inst["x"]), space.admissible)
            unique = s < 1.0 or is_smooth_point(a_x, config.norm)
        else:

            def rel(u, v):
                return bj_orthogonal(u, v, config.norm, band)

            unique = is_smooth_point(np.asarray(inst["x"]), config.norm)
        verdicts = _additivity(rel, inst)
        outcome, failure = _additivity_outcome(verdicts, unique)
        out["unique_support"] = bool(unique)
        out["additivity_failure"] = bool(failure)
    elif theorem is TheoremId.T3_5_cone_equivalence:
        u, v = np.asarray(inst["x"]), np.asarray(inst["y"])
        p = config.the_seminorm
        plus, minus = seminorm_cone_membership(u, v, p, band)
        w_plus = witness_functional(u, v, p, Side.OPLUS, band=band)
        w_minus = witness_functional(u, v, p, Side.OMINUS, band=band)
        verdicts = {
            "cone_plus": plus,
            "witness_plus": _yes(w_plus is not None),
            "cone_minus": minus,
            "witness_minus": _yes(w_minus is not None),
        }
        sides = [
            _tally({"a": plus, "b": verdicts["witness_plus"]}),
            _tally({"a": minus, "b": verdicts["witness_minus"]}),
        ]
        if "disagree" in sides:
            outcome = "disagree"
        elif "indeterminate" in sides:
            outcome = "indeterminate"
        else:
            outcome = "agree"
        out["certified"] = all(w.certified for w in (w_plus, w_minus) if w is not None)
    else:
        T, A = np.asarray(inst["T"]), np.asarray(inst["A"])
        sample = _operator_sample(theorem, config)
        family = _operator_family(theorem, config)
        definition = op_orthogonal_definition(T, A, family, sample, band, config.refine)
        if theorem is TheoremId.T3_1_bhatia_semrl:
            verdicts = {"bhatia_semrl": bhatia_semrl_orthogonal(T, A, band), "definition": definition}
            if config.triangulate:
                verdicts["sain"] = sain_orthogonal(T, A, Euclidean(), Euclidean(), band=band, sample=sample).verdict
        elif theorem is TheoremId.T3_2_sain:
            verdicts = {
                "sain": sain_orthogonal(T, A, config.space_x, config.space_y, band=band, sample=sample).verdict,
                "definition": definition,
            }
        else:
            verdicts = {
                "characterization": op_orthogonal_characterization(
                    T, A, family, sample, band, config.refine
                ).verdict,
                "definition": definition,
            }
        outcome = _tally(verdicts)
    out["outcome"] = outcome
    out["verdicts"] = {k: v.to_json() for k, v in verdicts.items()}
    return out


def _global_additivity(theorem: TheoremId, config: CheckConfig, failures: list[int], band: GuardBand) -> dict:
    """Space-level statement: a failure exists iff the space is not smooth.

    The pinned seed triple is tried here too, so the search always covers it.
    """
    inst = dict(zip(("x", "y", "z"), (v.tolist() for v in seed_triple(config.dim))))
    seed_res = evaluate_instance(theorem, config, inst, band)
    found = bool(failures) or seed_res["additivity_failure"]
    smooth = smooth_space(config.norm)
    return {
        "index": -1,
        "instance": {"seed_triple": inst},
        "outcome": "agree" if smooth != found else "disagree",
        "verdicts": {
            "smooth_space": _yes(smooth).to_json(),
            "additivity_failure_found": _yes(found).to_json(),
        },
        "first_failure": failures[0] if failures else (-1 if found else None),
    }


def _run_one(args) -> tuple[int, dict, dict]:
    theorem, config_json, seed, index, band = args
    config = CheckConfig.from_json(config_json)
    inst = prepare_instance(theorem, config, seed, index)
    return index, inst, evaluate_instance(theorem, config, inst, band)


def run_check(
    theorem,
    config: CheckConfig | None = None,
    count: int = 100,
    seed: int = 0,
    workers: int = 1,
    band: GuardBand | None = None,
) -> AgreementReport:
    """Generate ``count`` instances, evaluate both routes, tally agreement.

    The report is identical for any ``workers``; only ``wall_time`` varies.
    Right-additivity checks add one space-level record (index -1).
    """
    theorem = TheoremId.parse(theorem) if isinstance(theorem, str) else TheoremId(theorem)
    if count < 1:
        raise ValueError("count must be >= 1")
    config = config or CheckConfig()
    band = band or default_band()
    start = time.perf_counter()
    cj = config.to_json()
    jobs = [(theorem, cj, seed, i, band) for i in range(count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=max(1, count // (4 * workers))))
    else:
        results = [_run_one(j) for j in jobs]
    results.sort(key=lambda r: r[0])

    tallies = {"agree": 0, "disagree": 0, "indeterminate": 0}
    disagreements = []
    details: dict = {}
    for index, inst, res in results:
        tallies[res["outcome"]] += 1
        if res["outcome"] == "disagree":
            disagreements.append({"index": index, "instance": inst, "verdicts": res["verdicts"]})
    if theorem is TheoremId.T2_2_strict_inclusion:
        details["strict_pairs"] = sum(bool(r[2].get("strict")) for r in results)
    if theorem in (TheoremId.T2_6_right_additivity, TheoremId.C2_7_smoothness):
        failures = [r[0] for r in results if r[2].get("additivity_failure")]
        g = _global_additivity(theorem, config, failures, band)
        tallies[g["outcome"]] += 1
        details["additivity_failures"] = len(failures)
        details["first_failure"] = g["first_failure"]
        if g["outcome"] == "disagree":
            disagreements.insert(0, {k: g[k] for k in ("index", "instance", "verdicts")})
    if theorem is TheoremId.T3_5_cone_equivalence:
        details["uncertified_witnesses"] = sum(not r[2].get("certified", True) for r in results)
    total = sum(tallies.values())
    return AgreementReport(
        theorem=theorem,
        total=total,
        agree=tallies["agree"],
        disagree=tallies["disagree"],
        indeterminate=tallies["indeterminate"],
        disagreements=disagreements,
        seed=int(seed),
        wall_time=time.perf_counter() - start,
        config=cj,
        details=details,
    )


def replay_disagreement(report: AgreementReport, record: dict, band: GuardBand | None = None) -> dict:
    """Re-evaluate one recorded disagreement in isolation."""
    config = CheckConfig.from_json(report.config)
    if record["index"] == -1:
        return _global_additivity(report.theorem, config, [], band or default_band())
    return evaluate_instance(report.theorem, config, record["instance"], band)


# -- pinned fixtures ---------------------------------------------------------


@dataclass(frozen=True)
class FixtureResult:
    name: str
    passed: bool
    observed: dict

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "observed": self.observed}


def reproduce_counterexamples(band: GuardBand | None = None) -> list[FixtureResult]:
    """Run the pinned fixtures and report whether each shows the expected verdicts."""
    band = band or default_band()
    out = []

    l2 = Euclidean()
    scaled = OrthoSpaceSpec(l2, admissible=AdmissibleSpec(l2, (((1.0, 0.0), 0.5),)))
    x, y = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    bj = bj_orthogonal(x, y, l2, band)
    sp = ortho_space_orthogonal(x, y, scaled, band)
    out.append(
        FixtureResult(
            "scaled_admissible_l2",
            bj.yes and sp.no,
            {"bj": bj.to_json(), "ortho_space": sp.to_json()},
        )
    )

    for name, norm, expect_failure in (
        ("linf_right_additivity", Lp(math.inf), True),
        ("l2_right_additivity_control", l2, False),
    ):
        x, y, z = np.array([1.0, 1.0]), np.array([1.0, 0.0]), np.array([0.0, 1.0])
        if not expect_failure:
            # the l2 analogue: y and z both orthogonal to x
            y, z = np.array([1.0, -1.0]), np.array([-2.0, 2.0])
        xy = bj_orthogonal(x, y, norm, band)
        xz = bj_orthogonal(x, z, norm, band)
        xyz = bj_orthogonal(x, y + z, norm, band)
        if expect_failure:
            ok = xy.yes and xz.yes and xyz.no
        else:
            ok = xy.yes and xz.yes and xyz.yes
        out.append(
            FixtureResult(
                name,
                ok,
                {
                    "x": x.tolist(),
                    "y": y.tolist(),
                    "z": z.tolist(),
                    "x_y": xy.to_json(),
                    "x_z": xz.to_json(),
                    "x_y+z": xyz.to_json(),
                },
            )
        )
    return out
