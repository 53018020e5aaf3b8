"""Acceptance suite: one test per criterion, each with its own time limit.

A summary line per criterion is printed at the end of the pytest run (and
by ``python tests/test_acceptance.py``).
"""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from itertools import combinations

from conftest import ACCEPTANCE
from helpers import all_clusters, all_labeled_seeds, subsets
from oracles import cluster_count, same_rational, table1, to_sympy

from cluster_bongartz.audit import audit
from cluster_bongartz.bongartz import (
    VariableSet,
    commutativity_check,
    complete_bfs,
    complete_greedy,
    g_pair_alt_check,
    is_g_pair,
)
from cluster_bongartz.fixtures import fixture
from cluster_bongartz.laurent import g_vector_of, symbolic_replay, symbolic_root
from cluster_bongartz.matrix_core import identity, negate
from cluster_bongartz.poisson import Sign, reconstruct_from_negative, reconstruct_from_positive, signed_ids
from cluster_bongartz.quiver import build_quiver, check_reduction_iso, green_to_red_search
from cluster_bongartz.search import Caps, Status
from cluster_bongartz.seeds import new_root, seeds_equivalent

A2 = fixture("A2")


@contextmanager
def criterion(num: int, limit: float):
    start = time.perf_counter()
    info = {"detail": ""}
    ok = False
    try:
        yield info
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < limit
        ACCEPTANCE[num] = (ok, f"{elapsed:.2f}s (limit {limit:g}s) {info['detail']}".rstrip())
        print(f"criterion {num}: {'PASS' if ok else 'FAIL'} in {elapsed:.2f}s")
    assert elapsed < limit, f"criterion {num} took {elapsed:.2f}s, limit {limit}s"


def test_criterion_01_table1_golden():
    with criterion(1, 1.0):
        rows = table1()
        s = symbolic_root(A2)
        seeds = [s]
        for k in (2, 1, 2, 1, 2):
            s = s.mutate(k)
            seeds.append(s)
        for t, (seed, (xs, ys)) in enumerate(zip(seeds, rows)):
            for got, want in zip(seed.xvars, xs):
                assert same_rational(to_sympy(got), want), (t, got)
            for got, want in zip(seed.yvars, ys):
                assert same_rational(to_sympy(got.as_poly(2)), want), (t, got)
        t5 = seeds[-1]
        assert seeds_equivalent(seeds[0].base, t5.base) == (2, 1)
        assert t5.xvars == tuple(reversed(seeds[0].xvars))


def test_criterion_02_c_and_g_cross_check():
    with criterion(2, 1.0):
        s = symbolic_root(A2)
        for k in (None, 2, 1, 2, 1, 2):
            if k is not None:
                s = s.mutate(k)
            for j in range(2):
                col_c = tuple(row[j] for row in s.base.C)
                col_g = tuple(row[j] for row in s.base.G)
                assert s.yvars[j].exponents == col_c
                assert g_vector_of(s.xvars[j], A2.B) == col_g


def test_criterion_03_invariant_suite():
    with criterion(3, 60.0) as info:
        report = audit(None, walks=200, depth=12, seed=2024, max_rank=4, bound=3)
        info["detail"] = (
            f"{report.walks} roots, {report.seeds} seeds, "
            f"{report.checks['laurent_exact_division']} exact divisions"
        )
        assert report.walks >= 200
        assert report.ok, report.violations
        assert report.checks["transpose_lemma"] == report.seeds


def _completion_exhaustive(name: str, expected: int) -> int:
    B = fixture(name)
    clusters = all_clusters(B)
    assert len(clusters) == expected == cluster_count(B.B)
    caps = Caps(max_vertices=10_000, max_depth=64)
    by_u: dict[frozenset, bytes] = {}
    count = 0
    for witness in clusters:
        for ids in subsets(witness.cluster_ids()):
            U = VariableSet(ids=ids)
            search = complete_bfs(witness, U, caps)
            assert search.saturated and len(search.results) == 1
            key = search.results[0].key()
            greedy = complete_greedy(witness, U)
            if greedy.status is Status.FOUND:
                assert greedy.key() == key
            assert by_u.setdefault(ids, key) == key, "completion depends on the witness"
            count += 1
    return count


def test_criterion_04_completion_existence_uniqueness():
    with criterion(4, 120.0):
        n = sum(_completion_exhaustive(name, cnt) for name, cnt in (("A2", 5), ("A3", 14), ("B2", 6)))
        assert n > 0


def test_criterion_05_commutativity():
    with criterion(5, 120.0):
        caps = Caps(max_vertices=10_000, max_depth=64)
        for witness in all_clusters(fixture("A3")):
            ids = witness.cluster_ids()
            for U in subsets(ids):
                for W in subsets(U):
                    V = U - W
                    report = commutativity_check(witness, VariableSet(ids=W), VariableSet(ids=V), caps)
                    assert report.holds, report.keys


def test_criterion_06_reduction_theorem():
    with criterion(6, 120.0):
        caps = Caps(max_vertices=10_000, max_depth=64)
        for name in ("A2", "A3"):
            for witness in all_clusters(fixture(name)):
                for ids in subsets(witness.cluster_ids()):
                    check = check_reduction_iso(witness, VariableSet(ids=ids), caps)
                    assert check.holds, check.problems


def test_criterion_07_a2_quiver_shape():
    with criterion(7, 1.0):
        q = build_quiver(A2)
        assert len(q.vertices) == 5 and q.complete
        assert q.sources() == [q.root_key] == [new_root(A2).key()]
        sinks = q.sinks()
        assert len(sinks) == 1
        assert q.rep(sinks[0]).C == negate(identity(2))
        assert sinks[0] == new_root(A2).mutate_word((2, 1)).key()
        res = green_to_red_search(A2)
        assert res.word == (2, 1)


def test_criterion_08_markov_has_no_bounded_sink():
    with criterion(8, 60.0):
        markov = fixture("Markov")
        caps = Caps(max_vertices=100_000, max_depth=10)
        q = build_quiver(markov, caps)
        assert not q.complete
        assert q.sinks() == []
        res = green_to_red_search(markov, caps)
        assert res.word is None and not res.saturated


def test_criterion_09_poisson_round_trip():
    with criterion(9, 60.0):
        caps = Caps(max_vertices=10_000, max_depth=64)
        for name in ("A2", "A3", "B2"):
            for seed in all_labeled_seeds(fixture(name)):
                neg = reconstruct_from_negative(seed, signed_ids(seed, Sign.NEGATIVE), caps)
                assert neg.found and seeds_equivalent(seed.base, neg.seed) is not None
                pos = reconstruct_from_positive(seed, signed_ids(seed, Sign.POSITIVE), caps)
                assert pos.found and seeds_equivalent(seed.base, pos.seed) is not None


def _agree(t, tp, initial: frozenset) -> int:
    checked = 0
    common = [v for v in tp.cluster_ids() if v in initial]
    for r in range(len(common) + 1):
        for sub in combinations(common, r):
            U = VariableSet(ids=frozenset(sub))
            assert is_g_pair(t, tp, U) == g_pair_alt_check(t, tp, U), (t.history, tp.history, r)
            checked += 1
    return checked


def test_criterion_10_g_pair_equivalence():
    with criterion(10, 30.0):
        seeds = all_labeled_seeds(A2)
        initial = frozenset(seeds[0].cluster_ids())
        for t in seeds:
            for tp in seeds:
                _agree(t, tp, initial)
        rng = random.Random(10)
        a3 = fixture("A3")
        initial = frozenset(symbolic_root(a3).cluster_ids())
        for _ in range(100):
            words = [tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 8))) for _ in range(2)]
            t, tp = (symbolic_replay(a3, w) for w in words)
            _agree(t, tp, initial)


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    for num in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[num]
        print(f"criterion {num:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
    sys.exit(1 if failed else 0)
