from __future__ import annotations

import random

from cluster_bongartz.audit import audit, audit_walk, random_exchange_matrix, random_word
from cluster_bongartz.fixtures import fixture
from cluster_bongartz.matrix_core import is_skew_symmetrized_by


def test_random_matrices_respect_bounds():
    rng = random.Random(0)
    for _ in range(300):
        n = rng.randint(1, 4)
        em = random_exchange_matrix(rng, n, 3)
        assert em.n == n
        assert all(abs(x) <= 3 for row in em.B for x in row)
        assert is_skew_symmetrized_by(em.B, em.S)


def test_random_words_have_no_immediate_repeats():
    rng = random.Random(1)
    for _ in range(100):
        w = random_word(rng, 3, 10)
        assert len(w) == 10 and all(a != b for a, b in zip(w, w[1:]))


def test_walk_report_counts():
    rep = audit_walk(fixture("A3"), (1, 2, 3, 1))
    assert rep.ok and rep.seeds == 4
    assert rep.checks["laurent_exact_division"] == 4
    assert rep.checks["g_pair_equivalence"] > 0


def test_budget_truncates_only_the_symbolic_layer():
    rep = audit_walk(fixture("G2"), (1, 2) * 4, term_budget=10)
    assert rep.ok and rep.laurent_truncated == 1
    assert rep.checks["transpose_lemma"] == 8
    assert rep.checks["laurent_exact_division"] < 8


def test_audit_is_reproducible():
    a = audit(None, walks=20, depth=6, seed=9).to_dict()
    b = audit(None, walks=20, depth=6, seed=9).to_dict()
    assert a == b and a["ok"]
