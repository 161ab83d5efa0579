"""Acceptance criteria 1-7.

Each criterion reports one PASS/FAIL line (collected in ``RESULTS`` and printed
in the pytest terminal summary, or on stdout when run as a script).  Where a
stated formula is false the criterion fails, and the detail line also reports
the corrected form that is verified instead.  Those criteria are marked
``xfail(strict=True)`` so that a change in the outcome is noticed.

    python tests/test_acceptance.py
"""

import random
import sys
import tempfile
import time
from itertools import combinations
from math import gcd
from pathlib import Path

import pytest

from rootstack.cli import main as verify_main
from rootstack.linalg import IntMatrix, invariant_factors, smith_normal_form
from rootstack.report import SUITES, SuiteConfig
from rootstack.suites import graded_equivalence, run_suite

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> bool:
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    return ok


def summarize(reports, ids) -> tuple[bool, str]:
    by = {}
    for r in reports:
        by.setdefault(r.claim, []).append(r.status)
    missing = [c for c in ids if c not in by]
    bad = [c for c in ids if c in by and any(s != "pass" for s in by[c])]
    ok = not missing and not bad
    return ok, "all pass" if ok else "failing: " + ", ".join(bad + [f"{c} (missing)" for c in missing])


# -- 1 ---------------------------------------------------------------------------------


def _random_sparse(rng: random.Random) -> IntMatrix:
    rows, cols = rng.randint(1, 12), rng.randint(1, 12)
    density = rng.choice([0.1, 0.25, 0.5])
    d = {(i, j): rng.choice([-1, 1]) * rng.randint(1, 40) for i in range(rows) for j in range(cols) if rng.random() < density}
    return IntMatrix.from_dict(rows, cols, d)


def _det(a):
    if not a:
        return 1
    return sum((-1) ** j * a[0][j] * _det([r[:j] + r[j + 1:] for r in a[1:]]) for j in range(len(a)))


def _minor_factors(m: IntMatrix) -> list[int]:
    a = m.to_dense()
    dk = []
    for k in range(1, min(m.rows, m.cols) + 1):
        g = 0
        for rs in combinations(range(m.rows), k):
            for cs in combinations(range(m.cols), k):
                g = gcd(g, _det([[a[i][j] for j in cs] for i in rs]))
        if not g:
            break
        dk.append(g)
    return [dk[0]] + [b // a for a, b in zip(dk, dk[1:])] if dk else []


def criterion_1() -> bool:
    rng = random.Random(20261014)
    n_snf, bad = 1200, []
    for t in range(n_snf):
        m = _random_sparse(rng)
        u, d, v = smith_normal_form(m)
        diag = [x for x in d.diagonal() if x]
        ok = (
            u @ m @ v == d
            and abs(u.determinant()) == 1
            and abs(v.determinant()) == 1
            and d.is_diagonal()
            and d.diagonal()[: len(diag)] == diag
            and all(x > 0 for x in diag)
            and all(b % a == 0 for a, b in zip(diag, diag[1:]))
        )
        if not ok:
            bad.append(t)
    n_small, bad_small = 500, []
    for t in range(n_small):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        m = IntMatrix.from_dense([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)], c)
        if invariant_factors(m) != _minor_factors(m):
            bad_small.append(t)
    ok = not bad and not bad_small
    return record(1, ok, f"SNF certificates on {n_snf} sparse matrices up to 12x12 ({len(bad)} bad); "
                  f"minor-gcd oracle on {n_small} matrices up to 4x4 ({len(bad_small)} bad)")


# -- 2 ---------------------------------------------------------------------------------


def criterion_2() -> bool:
    reports = []
    for l in (2, 3, 4):
        reports += graded_equivalence(SuiteConfig("lemma-key", ls=(l,)), l)
    ok, detail = summarize(reports, ["graded.bt-pull-pieces", "graded.bt-push-pieces", "graded.bt-pull-line", "graded.bt-push-line"])
    return record(2, ok, f"l in 2,3,4, i in -6..6: {detail}")


# -- 3 ---------------------------------------------------------------------------------

KEY_COMMON = [
    "key.theta-push-structure",
    "key.theta-push-pull-identity",
    "key.theta-push-wedge",
    "key.wedge-left-theta-pull",
    "key.right-period.inner",
]


def criterion_3() -> bool:
    reports = run_suite(SuiteConfig("lemma-key", ls=(2, 3)))
    ok, detail = summarize(reports, KEY_COMMON + ["key.left-right-two-term.literal-shift", "key.right-period.outer-character"])
    ok2, detail2 = summarize(reports, KEY_COMMON + ["key.left-right-two-term", "key.right-period.outer-root"])
    return record(3, ok, f"l in 2,3, stated forms: {detail}; corrected forms (second term in H^-1, outer twist by the degree-l character): {detail2}")


# -- 4 ---------------------------------------------------------------------------------

TAU_COMMON = ["tau.delta-injective", "tau.delta-iso-exactly-at-top", "tau.boundary-diagonal", "tau.boundary-ideal"]


def criterion_4() -> bool:
    reports = run_suite(SuiteConfig("tau-triangles", ls=(2, 3, 4)))
    ok, detail = summarize(reports, TAU_COMMON + ["tau.row-cokernel.literal", "tau.col-cokernel.literal"])
    ok2, detail2 = summarize(reports, TAU_COMMON + ["tau.row-cokernel", "tau.col-cokernel"])
    return record(4, ok, f"l in 2..4, stated cokernels: {detail}; corrected maps and cokernels: {detail2}")


# -- 5 ---------------------------------------------------------------------------------

FM_COMMON = ["fm.diagonal-twist", "fm.full-kernel-theta"]


def criterion_5() -> bool:
    reports = run_suite(SuiteConfig("thm1", ls=(2, 3), samples=("O", "O(-1)", "Z@0 | wedgeR(i=0,l={l})", "O/x")))
    ok, detail = summarize(reports, FM_COMMON + ["fm.row-triangle.literal", "fm.col-triangle.literal"])
    ok2, detail2 = summarize(reports, FM_COMMON + ["fm.row-triangle", "fm.col-triangle"])
    return record(5, ok, f"l in 2,3, stated cones: {detail}; corrected cones: {detail2}")


# -- 6 ---------------------------------------------------------------------------------


def criterion_6() -> bool:
    theta = run_suite(SuiteConfig("sod-theta", ls=(2, 3)))
    ok1, d1 = summarize(theta, sorted({r.claim for r in theta}))
    chart = []
    for l, N in ((2, 4), (2, 5), (3, 5), (2, 2)):
        chart += run_suite(SuiteConfig("sod-chart", ls=(l,), divisors=(N,), depth=8))
    ok2, d2 = summarize(chart, sorted({r.claim for r in chart}))
    flags = [r.witness.get("periodicity_flags") for r in chart if r.claim == "chart.sod.forbidden-ext"]
    ok3 = len(flags) == 4 and all(flags)
    return record(6, ok1 and ok2 and ok3, f"Theta l in 2,3: {d1}; charts (2,4),(2,5),(3,5),(2,2) Ext^k for k <= 6: {d2}; "
                  f"periodicity flags {'recorded' if ok3 else 'missing'}")


# -- 7 ---------------------------------------------------------------------------------


def criterion_7() -> bool:
    differ, slow = [], []
    with tempfile.TemporaryDirectory() as tmp:
        for suite in SUITES:
            paths = [Path(tmp) / f"{suite}-{k}.json" for k in (1, 2)]
            for p in paths:
                t0 = time.perf_counter()
                verify_main([suite, "--quiet", "--json", str(p)])
                if time.perf_counter() - t0 > 60:
                    slow.append(suite)
            if paths[0].read_bytes() != paths[1].read_bytes():
                differ.append(suite)
    detail = f"{len(SUITES)} suites run twice, {len(differ)} differ" + (f" ({', '.join(differ)})" if differ else "")
    if slow:
        detail += f"; over 60 s: {', '.join(sorted(set(slow)))}"
    return record(7, not differ, detail)


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6, 7: criterion_7}
STATED_FORMULA_FALSE = {
    3: "the stated two-term shift and outer twist do not hold; see corrected forms",
    4: "the stated cokernels are inconsistent with ranks; see corrected forms",
    5: "the stated cone sums do not hold; see corrected forms",
}


@pytest.mark.parametrize(
    "n",
    [pytest.param(n, marks=pytest.mark.xfail(strict=True, reason=STATED_FORMULA_FALSE[n])) if n in STATED_FORMULA_FALSE else n for n in CRITERIA],
)
def test_criterion(n, capsys):
    ok = CRITERIA[n]()
    with capsys.disabled():
        print("\n" + RESULTS[n])
    assert ok, RESULTS[n]


if __name__ == "__main__":
    for n, fn in CRITERIA.items():
        fn()
        print(RESULTS[n], flush=True)
    sys.exit(0 if all(" PASS " in RESULTS[n] for n in CRITERIA) else 1)
