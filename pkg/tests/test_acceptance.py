"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (visible under ``pytest``
as well as when the file is run directly) and asserts its time budget.
"""

import itertools
import json
import random
import subprocess
import sys
import time

import pytest

from mutations import drop_mutations, toggle_mutations, undetected
from oracles import enumerate_partitions
from rwhopf.bar_tor import BarComplex, PresentedAlgebra, analytic_tor, edge_hom, tor1_class, tor_dims
from rwhopf.divided_power import make_A1, make_An
from rwhopf.f2linalg import rank
from rwhopf.hopf_core import check_axioms, check_hopf_map, verschiebung
from rwhopf.rw_model import (
    eq46_check,
    hmu_prime_series,
    induction_cells,
    induction_check,
    k_series,
    prop39_4_check,
    r_prime_series,
)
from rwhopf.series import TruncSeries, partitions, product_pow

BAR_WORD_CAP = 100_000


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail, elapsed, limit):
        status = "PASS" if ok and elapsed < limit else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] criterion {number}: {detail} ({elapsed:.2f}s, limit {limit}s)")

    return emit


def test_criterion_1_partitions(verdict):
    t = time.perf_counter()
    brute = [len(enumerate_partitions(n)) for n in range(31)]
    euler = product_pow([(TruncSeries.binomial(m, -1, 30), -1) for m in range(1, 31)])
    ok = [partitions(n) for n in range(31)] == brute == list(euler.coeffs)
    elapsed = time.perf_counter() - t
    verdict(1, ok, "partitions(n) == enumeration == Euler product, n <= 30", elapsed, 1)
    assert ok and elapsed < 1


def test_criterion_2_eq46(verdict):
    t = time.perf_counter()
    bad = [k for k in range(-4, 9) if k_series(k, 20) * hmu_prime_series(k, 20) != r_prime_series(k, 20)]
    ok = not bad and all(eq46_check(k, 20) for k in range(-4, 9))
    elapsed = time.perf_counter() - t
    verdict(2, ok, f"K*H' == R' for k in -4..8, N=20 (failing k: {bad})", elapsed, 1)
    assert ok and elapsed < 1


def test_criterion_3_tor_series(verdict):
    t = time.perf_counter()
    bad = [k for k in range(-3, 7) if not prop39_4_check(k, 16)]
    elapsed = time.perf_counter() - t
    verdict(3, not bad, f"total Tor over RWModel(k) == K(k+1), k in -3..6, N=16 (failing k: {bad})", elapsed, 1)
    assert not bad and elapsed < 1


def _fit(degs, s_max, n):
    """Largest ``N' <= n`` whose bar bidegrees all stay under the word cap."""
    while True:
        a = PresentedAlgebra(tuple(d for d in degs if d <= n), 0, n)
        bc = BarComplex(a, s_max, n)
        worst = max(bc.word_count(s, t) for s in range(1, s_max + 2) for t in range(n + 1))
        if worst <= BAR_WORD_CAP:
            return a, n
        n -= 1


def test_criterion_4_bar_oracle(verdict):
    t = time.perf_counter()
    cases = []
    for size in (1, 2):
        for degs in itertools.combinations_with_replacement(range(1, 6), size):
            cases.append((degs, 4, 12))
    rnd = random.Random(20261018)
    for _ in range(60):
        degs = tuple(sorted(rnd.randint(1, 5) for _ in range(rnd.randint(1, 4))))
        cases.append((degs, rnd.randint(1, 4), rnd.randint(max(degs), 12)))
    failures, reduced = [], 0
    for degs, s_max, n in cases:
        a, n_used = _fit(degs, s_max, n)
        reduced += n_used < n
        if len(degs) <= 2 and n_used != n:
            failures.append((degs, "reduced"))
        mism = tor_dims(a, s_max, n_used).mismatches(analytic_tor(a, s_max, n_used))
        if mism:
            failures.append((degs, s_max, n_used, mism))
    elapsed = time.perf_counter() - t
    detail = f"bar Tor == analytic Tor on {len(cases)} algebras ({reduced} with N lowered to fit the word cap)"
    verdict(4, not failures, detail, elapsed, 60)
    assert not failures and elapsed < 60


def test_criterion_5_induction_grid(verdict):
    t = time.perf_counter()
    cells = induction_cells(range(1, 7))
    reports = [induction_check(ell, k, 16) for k, ell in cells]
    inconsistent = [(r.k, r.ell) for r in reports if not r.consistent]
    # the literal identity holds on every cell with ell >= 0; at ell = -1 Tor_{0,0} supplies the constant term
    literal = [(r.k, r.ell) for r in reports if r.ell >= 0 and r.tor1_dim != r.k_next_dim - r.higher_tor_sum]
    full = [(r.k, r.ell) for r in reports if r.tor1_dim != r.k_next_dim - r.higher_tor_sum - r.tor0_dim]
    bar_checked = sum(r.path == "analytic+bar" for r in reports)
    elapsed = time.perf_counter() - t
    ok = not (inconsistent or literal or full) and len(reports) == 45
    detail = f"{len(reports)} cells consistent, {bar_checked} cross-checked by bar homology"
    verdict(5, ok, detail, elapsed, 120)
    assert ok and elapsed < 120, (inconsistent, literal, full)


def test_criterion_6_verschiebung(verdict):
    t = time.perf_counter()
    problems = []
    for k in (1, 2, 3):
        n = 24
        h = make_A1(k, n).hopf
        v = verschiebung(h)
        target = h.doubled()
        ref = make_A1(2 * k, n).hopf
        if (target.space, target.product, target.coproduct) != (ref.space, ref.product, ref.coproduct):
            problems.append((k, "target"))
        for i in range(n // k + 1):
            d, pos = h.space.locate(f"b{i}")
            want = 0 if i % 2 else 1 << target.space.locate(f"b{i // 2}")[1]
            if v.block(d)[pos] != want:
                problems.append((k, f"b{i}"))
        for d in range(n + 1):
            if rank(v, d) != target.space.dim(d):
                problems.append((k, "surjective", d))
        problems.extend((k, str(f)) for f in check_hopf_map(v, h, target))
    elapsed = time.perf_counter() - t
    verdict(6, not problems, "v(b_2n(k)) = b_n(2k), v(b_odd) = 0, onto, bialgebra map; k=1,2,3, N=24", elapsed, 5)
    assert not problems and elapsed < 5, problems


def test_criterion_7_axiom_suite(verdict):
    t = time.perf_counter()
    algebras = []
    for k in (1, 2, 3):
        algebras.append(make_A1(k, 16).hopf)
        algebras.append(make_An(k, 2, 16))
    clean = [h.name for h in algebras if check_axioms(h)]
    missed = []
    total = 0
    for h in algebras:
        muts = list(drop_mutations(h))
        sample = 3000 if len(h.space.all_labels()) > 100 else None
        muts += list(toggle_mutations(h, sample=sample, seed=7))
        total += len(muts)
        missed += [(h.name, key) for key in undetected(muts)]
    elapsed = time.perf_counter() - t
    ok = not clean and not missed
    detail = f"axioms hold on A1(k), A2(k), k<=3, N=16; {total} single-term mutations, {len(missed)} undetected"
    verdict(7, ok, detail, elapsed, 30)
    assert ok and elapsed < 30, (clean, missed[:5])


def test_criterion_8_edge_monomorphism(verdict):
    t = time.perf_counter()
    rnd = random.Random(8)
    failures = []
    for _ in range(20):
        degs = tuple(sorted(rnd.randint(1, 5) for _ in range(rnd.randint(1, 4))))
        n = rnd.randint(max(degs), 12)
        a = PresentedAlgebra(degs, 0, n)
        for ell in range(1, n + 1):
            f = edge_hom(a, ell)
            if rank(f, ell) != f.source.dim(ell):
                failures.append((degs, ell))
    for d in range(1, 6):
        one = PresentedAlgebra((d,), 0, 2 * d)
        if any(tor1_class(one, (2,))) or not any(tor1_class(one, (1,))):
            failures.append(((d,), "x^2"))
    elapsed = time.perf_counter() - t
    verdict(8, not failures, "edge map injective on 20 random algebras; [x^2] = 0 in Tor_1", elapsed, 30)
    assert not failures and elapsed < 30, failures


def test_criterion_9_cli_determinism(verdict):
    t = time.perf_counter()
    outs = []
    for workers in ("1", "8"):
        proc = subprocess.run(
            [sys.executable, "-m", "rwhopf", "report-all", "--output", "json", "--workers", workers],
            capture_output=True, check=False,
        )
        outs.append((proc.returncode, proc.stdout))
    elapsed = time.perf_counter() - t
    same = outs[0][1] == outs[1][1]
    ok = same and outs[0][0] == 0 and json.loads(outs[0][1])["schema"] == 1
    verdict(9, ok, f"report-all JSON byte-identical for workers 1 and 8 ({len(outs[0][1])} bytes)", elapsed, 180)
    assert ok and elapsed < 180


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
