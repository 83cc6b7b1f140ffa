"""Acceptance criteria, one test each.  Every test prints a single PASS/FAIL line."""

import time

import pytest

from trigp.config import WorkspaceConfig
from trigp.suites import GOLDEN_CM_COUNTS, run_suite

CONFIG = WorkspaceConfig(p=2, bound=8, seed=0)


def _run(capsys, number, name, budget, extra=lambda d: (True, "")):
    t0 = time.perf_counter()
    res = run_suite(name, CONFIG)
    secs = time.perf_counter() - t0
    ok_extra, why = extra(res.details)
    ok = res.passed and ok_extra and secs < budget
    msg = f"criterion {number:2d} [{name}] {'PASS' if ok else 'FAIL'}: checked={res.checked} " \
          f"failures={len(res.failures)} {res.details} {secs:.1f}s (budget {budget}s)"
    if why:
        msg += f" {why}"
    with capsys.disabled():
        print("\n" + msg)
    assert res.passed, res.failures[:3]
    assert ok_extra, why
    assert secs < budget
    return res


def test_criterion_01_projective_triples(capsys):
    _run(capsys, 1, "projective", 60, lambda d: (d.get("triples") == 109, f"family size {d.get('triples')}"
                                              if d.get("triples") != 109 else ""))


def test_criterion_02_gp_triples(capsys):
    _run(capsys, 2, "gp", 300)


def test_criterion_03_t2_counts(capsys):
    def counts(d):
        ok = d["T2(F2)"] == 2 and d["T2(L2)"] == 5 and d["raw T2(L2)"] == 5
        return ok, "" if ok else f"counts {d}"
    _run(capsys, 3, "census", 300, counts)


def test_criterion_04_selfinjective(capsys):
    _run(capsys, 4, "selfinjective", 300)


def test_criterion_05_infinite_cm_signal(capsys):
    def grow(d):
        seq = [d[str(b)] for b in (4, 6, 8)]
        ok = seq[0] < seq[1] < seq[2] and all(d[str(b)] == c for b, c in GOLDEN_CM_COUNTS.items())
        return ok, "" if ok else f"counts {seq}"
    _run(capsys, 5, "cminfinite", 900, grow)


def test_criterion_06_gi_duality(capsys):
    _run(capsys, 6, "duality", 300)


def test_criterion_07_adjunctions(capsys):
    res = _run(capsys, 7, "adjunction", 300)
    assert res.checked >= 400  # 100 samples x 4 identities


def test_criterion_08_ext_two_routes(capsys):
    _run(capsys, 8, "ext2route", 300)


def test_criterion_09_window(capsys):
    def booleans(d):
        ok = d["intact"] == [True, True, True] and d["broken"] == [False, False, False]
        return ok, "" if ok else f"statuses {d}"
    _run(capsys, 9, "window", 300, booleans)


def test_criterion_10_perp(capsys):
    _run(capsys, 10, "perp", 300)
