"""Acceptance suite: one test per criterion, each logging a PASS/FAIL line.

The lines are printed in the terminal summary by ``conftest.py``.
"""
import math
import time

import numpy as np
import pytest

from bjortho.admissible import AdmissibleSpec, canonical_representative, discretize_symmetrized
from bjortho.operators import induced_seminorm, spectral_operator_norm
from bjortho.ortho import bj_orthogonal, cone_membership, right_additivity_probe
from bjortho.operators import seminorm_cone_membership
from bjortho.spaces import (
    CoordinateAbs,
    Euclidean,
    LinearImage,
    Lp,
    SemiNormFamily,
    WeightedLp,
    eval_seminorm,
)
from bjortho.verify import CheckConfig, TheoremId, reproduce_counterexamples, run_check

from conftest import HEXAGON

SEED = 42
MAX_INDETERMINATE = 0.05


def _record(log, k, ok, text):
    log[k] = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {text}"
    print(log[k])
    return ok


def _reports_line(reports):
    return "; ".join(
        f"{name} {r.agree}/{r.total} agree, {r.disagree} disagree, {r.indeterminate} indet" for name, r in reports
    )


def test_criterion_1_equivalence(acceptance_log):
    start = time.perf_counter()
    reports = []
    for norm in (Lp(1.0), Lp(2.0), Lp(math.inf)):
        for dim in (2, 3):
            r = run_check(TheoremId.T2_1_equivalence, CheckConfig(dim=dim, norm=norm), 500, SEED)
            reports.append((f"{norm!r} d{dim}", r))
    elapsed = time.perf_counter() - start
    ok = all(r.disagree == 0 and r.indeterminate_fraction < MAX_INDETERMINATE for _, r in reports) and elapsed < 10.0
    _record(acceptance_log, 1, ok, f"T2_1 {elapsed:.1f}s; " + _reports_line(reports))
    assert ok


def test_criterion_2_strict_inclusion(acceptance_log):
    fixture = next(f for f in reproduce_counterexamples() if f.name == "scaled_admissible_l2")
    cfg = CheckConfig(dim=2, norm=Euclidean(), overrides=(((1.0, 0.0), 0.5),))
    r = run_check(TheoremId.T2_2_strict_inclusion, cfg, 500, SEED)
    strict = r.details["strict_pairs"]
    ok = fixture.passed and r.disagree == 0 and strict >= 1
    _record(
        acceptance_log,
        2,
        ok,
        f"fixture {'ok' if fixture.passed else 'broken'}; 500 pairs, {r.disagree} violations, {strict} strict pairs",
    )
    assert ok


def test_criterion_3_right_additivity(acceptance_log):
    start = time.perf_counter()
    l2 = [right_additivity_probe(Lp(2.0), count=1000, dim=d, seed=SEED) for d in (2, 3)]
    linf = right_additivity_probe(Lp(math.inf), count=1000, dim=2, seed=SEED)
    l1 = right_additivity_probe(Lp(1.0), count=1000, dim=2, seed=SEED)
    elapsed = time.perf_counter() - start
    pinned = linf.counterexample is not None and [list(v) for v in linf.counterexample] == [
        [1.0, 1.0],
        [1.0, 0.0],
        [0.0, 1.0],
    ]
    ok = all(r.passed for r in l2) and not linf.passed and not l1.passed and pinned and elapsed < 5.0
    _record(
        acceptance_log,
        3,
        ok,
        f"l2 d2/d3 pass={[r.passed for r in l2]}, l-inf pinned={pinned}, l1 index={l1.index}, {elapsed:.1f}s",
    )
    assert ok


def test_criterion_4_bhatia_semrl(acceptance_log):
    start = time.perf_counter()
    reports = []
    for dim in (2, 3):
        cfg = CheckConfig(dim=dim, norm=Euclidean(), mesh=0.01, refine=True, triangulate=False)
        reports.append((f"d{dim}", run_check(TheoremId.T3_1_bhatia_semrl, cfg, 200, SEED)))
    elapsed = time.perf_counter() - start
    ok = all(r.disagree == 0 and r.indeterminate_fraction < MAX_INDETERMINATE for _, r in reports) and elapsed < 60.0
    _record(acceptance_log, 4, ok, f"T3_1 {elapsed:.1f}s; " + _reports_line(reports))
    assert ok


def test_criterion_5_sain(acceptance_log):
    reports = []
    for norm in (Lp(math.inf), Lp(1.0)):
        cfg = CheckConfig(dim=2, norm=norm)
        reports.append((repr(norm), run_check(TheoremId.T3_2_sain, cfg, 200, SEED)))
    ok = all(r.disagree == 0 for _, r in reports)
    _record(acceptance_log, 5, ok, "T3_2 " + _reports_line(reports))
    assert ok


def test_criterion_6_characterization(acceptance_log):
    families = {
        "{|y1|,|y2|}": SemiNormFamily([CoordinateAbs(0), CoordinateAbs(1)]),
        "{l2,|y1|}": SemiNormFamily([Euclidean(), CoordinateAbs(0)]),
    }
    reports = []
    for name, fam in families.items():
        cfg = CheckConfig(dim=2, family=fam, admissible_norm=Euclidean())
        reports.append((name, run_check(TheoremId.T3_7_characterization, cfg, 200, SEED)))
    ok = all(r.disagree == 0 for _, r in reports)
    _record(acceptance_log, 6, ok, "T3_7 " + _reports_line(reports))
    assert ok


CLOSED_FORM_SEMINORMS = [
    Lp(1.0),
    Lp(2.0),
    Lp(3.0),
    Lp(math.inf),
    WeightedLp(1.5, [1.0, 2.0]),
    HEXAGON,
    CoordinateAbs(0),
    CoordinateAbs(1),
    LinearImage([[1.0, -1.0]], Euclidean()),
    LinearImage([[1.0, 2.0], [0.0, 1.0]], Lp(1.0)),
]


def test_criterion_7_cone_equivalence(acceptance_log):
    reports = []
    for p in CLOSED_FORM_SEMINORMS:
        cfg = CheckConfig(dim=2, seminorm=p)
        reports.append((repr(p), run_check(TheoremId.T3_5_cone_equivalence, cfg, 100, SEED)))
    ok = all(r.disagree == 0 for _, r in reports)
    worst = max(r.disagree for _, r in reports)
    indet = sum(r.indeterminate for _, r in reports)
    _record(
        acceptance_log,
        7,
        ok,
        f"T3_5 over {len(reports)} semi-norms x 100: max disagree {worst}, total indeterminate {indet}",
    )
    assert ok


def test_criterion_8_euclidean_oracle(acceptance_log):
    rng = np.random.default_rng(2024)
    meshes = (0.05, 0.01, 0.002)
    samples = [discretize_symmetrized(AdmissibleSpec(), m, 3) for m in meshes]
    fam = SemiNormFamily([Euclidean()])
    errors = np.empty((50, 3))
    for k in range(50):
        T = rng.uniform(-1, 1, (3, 3))
        sigma = spectral_operator_norm(T)
        for j, s in enumerate(samples):
            errors[k, j] = abs(induced_seminorm(T, fam, s, refine=False).P - sigma) / sigma
    per_matrix = bool(np.all(np.diff(errors, axis=1) <= 0.0))
    means = errors.mean(axis=0)
    strictly = bool(np.all(np.diff(means) < 0.0))
    final = float(errors[:, -1].max())
    ok = per_matrix and strictly and final < 1e-4
    _record(
        acceptance_log,
        8,
        ok,
        f"mean rel error {means[0]:.2e} -> {means[1]:.2e} -> {means[2]:.2e}, per-matrix non-increasing="
        f"{per_matrix}, final max {final:.2e}",
    )
    assert ok


def _invariant_failures() -> dict[str, int]:
    rng = np.random.default_rng(SEED)
    fails = {"homogeneity": 0, "triangle": 0, "zero": 0, "canonical": 0, "reproducible": 0}
    specs = [Lp(1.0), Lp(2.0), Lp(math.inf), Lp(3.0), WeightedLp(2.0, [1.0, 4.0]), HEXAGON, CoordinateAbs(1)]
    specs.append(LinearImage([[1.0, -1.0]], Euclidean()))
    for spec in specs:
        for _ in range(200):
            u, v = rng.uniform(-5, 5, 2), rng.uniform(-5, 5, 2)
            t = rng.uniform(-20, 20)
            pu = eval_seminorm(spec, u)
            if abs(eval_seminorm(spec, t * u) - abs(t) * pu) > 1e-12 * max(1.0, abs(t) * pu):
                fails["homogeneity"] += 1
            if eval_seminorm(spec, u + v) > pu + eval_seminorm(spec, v) + 1e-12:
                fails["triangle"] += 1
    zero = np.zeros(2)
    for norm in (Lp(1.0), Lp(2.0), Lp(math.inf), HEXAGON):
        for _ in range(50):
            y = rng.uniform(-1, 1, 2)
            checks = [bj_orthogonal(zero, y, norm), bj_orthogonal(y, zero, norm), *cone_membership(zero, y, norm)]
            checks += list(seminorm_cone_membership(y, zero, norm))
            fails["zero"] += sum(not c.yes for c in checks)
    for base in (Euclidean(), Lp(1.0), Lp(math.inf)):
        spec = AdmissibleSpec(base)
        for _ in range(300):
            x = rng.uniform(-1, 1, 3)
            a = canonical_representative(x, spec)
            if not np.allclose(canonical_representative(a, spec), a, rtol=0, atol=1e-15):
                fails["canonical"] += 1
            if not np.allclose(canonical_representative(-2.5 * x, spec), a, rtol=0, atol=1e-12):
                fails["canonical"] += 1
    for theorem, cfg, n in (
        (TheoremId.T2_1_equivalence, CheckConfig(dim=3, norm=Lp(1.0)), 50),
        (TheoremId.T3_7_characterization, CheckConfig(dim=2, family=SemiNormFamily([CoordinateAbs(0)])), 10),
    ):
        a = run_check(theorem, cfg, n, SEED).to_json()
        b = run_check(theorem, cfg, n, SEED).to_json()
        a.pop("wall_time")
        b.pop("wall_time")
        fails["reproducible"] += a != b
    return fails


def test_criterion_9_invariants(acceptance_log):
    fails = _invariant_failures()
    ok = not any(fails.values())
    _record(acceptance_log, 9, ok, "failures " + ", ".join(f"{k}={v}" for k, v in fails.items()))
    assert ok


@pytest.mark.parametrize("criterion", range(1, 10))
def test_every_criterion_is_logged(criterion, acceptance_log, request):
    # runs after the criteria above (file order); a missing line means a crash
    assert criterion in acceptance_log
