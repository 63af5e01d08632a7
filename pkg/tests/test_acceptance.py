"""Acceptance sweep: one test per criterion, each printing a single PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) or under pytest; in the latter
case the lines are repeated in the terminal summary.
"""

import json
import os
import subprocess
import sys
import time

import pytest

from qf import verify
from qf.report import PASS, SKIPPED

RESULTS: dict[int, str] = {}


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
    RESULTS[number] = line
    print(line)


def run_report(number: int, title: str, fn):
    started = time.perf_counter()
    rep = fn()
    record(number, title, rep.ok, f"{time.perf_counter() - started:.1f}s")
    assert rep.ok, rep.witness
    return rep


def test_01_axioms():
    run_report(1, "quandle axioms over dihedral, conjugation, core and Alexander families", verify.check_axioms)


def test_02_construction_identities():
    run_report(2, "core, Alexander and conjugation constructions match dihedral and trivial tables",
               verify.check_constructions)


def test_03_h2_double_path():
    run_report(3, "Smith-form H2 equals exhaustive Z2/B2 for quandles of size <= 4", verify.check_h2_double_path)


def test_04_cohomology_anchors():
    run_report(4, "H2(T2;Z2)=4, H2(T3;Z2)=64, |H1| = |A|^orbits", verify.check_anchors)


def test_05_wells_abelian():
    run_report(5, "abelian exact sequence as a count on every class representative", verify.check_wells_abelian)


def test_06_wells_dynamical():
    run_report(6, "dynamical exact sequence and splitting section", verify.check_wells_dynamical)


def test_07_theta():
    run_report(7, "class map is a derivation, changes by an inner one", verify.check_theta)


def test_08_transport():
    run_report(8, "extension transport for core, conjugation, Alexander and products", verify.check_transport)


def test_09_r4_adjoint():
    rep = run_report(9, "adjoint group of R4: abelianization Z^2 and the D4 quotient", verify.check_r4_adjoint)
    assert rep.data["abelianization"] == "Z x Z"


def test_10_adjoint_counts():
    run_report(10, "quandle maps into Q_w(G) equal group maps out of Adj_w(X)", verify.check_adjoint_counts)


def test_11_bridge_maps():
    run_report(11, "group 2-cocycles to factor sets and quandle cocycles", lambda: verify.check_bridge(100, 0))


def test_12_fibers():
    run_report(12, "fibre quandles over connected bases are isomorphic", lambda: verify.check_fibers(0))


def test_13_end_to_end():
    started = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "qf", "--json", "verify-all", "--scale", "default"],
                          capture_output=True, text=True, timeout=600, env=dict(os.environ))
    elapsed = time.perf_counter() - started
    verdicts = [json.loads(line)["verdict"] for line in proc.stdout.splitlines() if line.startswith("{")]
    ok = (proc.returncode == 0 and len(verdicts) == 12 and all(v in (PASS, SKIPPED) for v in verdicts)
          and elapsed < 300)
    record(13, "qf verify-all --scale default: only PASS/SKIPPED, under 5 minutes", ok, f"{elapsed:.1f}s")
    assert ok, proc.stdout + proc.stderr


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
