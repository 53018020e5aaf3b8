from __future__ import annotations

import json

import pytest
from helpers import all_clusters, subsets
from oracles import cluster_count

from cluster_bongartz.bongartz import VariableSet
from cluster_bongartz.fixtures import fixture
from cluster_bongartz.laurent import symbolic_root
from cluster_bongartz.matrix_core import identity, negate
from cluster_bongartz.quiver import (
    build_quiver,
    check_reduction_iso,
    freeze,
    g2r_mutation_inheritance,
    green_to_red_search,
    nonpositive_part_g2r,
    restrict_to_U,
)
from cluster_bongartz.search import Caps
from cluster_bongartz.seeds import new_root

A2 = fixture("A2")
CAPS = Caps(max_vertices=10_000, max_depth=40)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "G2"])
def test_finite_type_quivers(name):
    q = build_quiver(fixture(name), CAPS)
    assert q.complete
    assert len(q) == cluster_count(fixture(name).B)
    assert len(q.sources()) == 1 and len(q.sinks()) == 1
    assert q.sources() == q.arrow_sources() and q.sinks() == q.arrow_sinks()
    q.check_orientation()
    # every vertex has n incident arrows
    n = fixture(name).n
    assert len(q.arrows) * 2 == n * len(q)


def test_a2_quiver_summary():
    q = build_quiver(A2, CAPS)
    assert q.summary() == "5 vertices, 5 arrows, complete, 1 source, 1 sink"
    assert q.sources() == [new_root(A2).key()]
    assert q.rep(q.sinks()[0]).C == negate(identity(2))


def test_markov_is_truncated():
    q6 = build_quiver(fixture("Markov"), Caps(100_000, 6))
    q7 = build_quiver(fixture("Markov"), Caps(100_000, 7))
    assert not q6.complete and len(q7) > len(q6)
    assert q6.sinks() == []
    assert len(q6.sources()) == 1


def test_vertex_cap():
    q = build_quiver(fixture("Markov"), Caps(max_vertices=20, max_depth=40))
    assert len(q) <= 20 and not q.complete


def test_exports_are_deterministic():
    a = build_quiver(fixture("A3"), CAPS)
    b = build_quiver(fixture("A3"), CAPS)
    assert a.to_dot() == b.to_dot()
    assert a.to_json() == b.to_json()
    data = json.loads(a.to_json())
    assert len(data["vertices"]) == 14 and data["complete"]
    assert a.to_dot(show_c=True).startswith("digraph exchange_quiver {")


def test_restrictions():
    q = build_quiver(A2, CAPS, symbolic=True)
    assert len(restrict_to_U(q, VariableSet(ids=frozenset()))) == 5
    t1 = symbolic_root(A2).mutate(2)
    sub = restrict_to_U(q, VariableSet.from_seed(t1, [2]))
    assert len(sub) == 2 and len(sub.arrows) == 1
    (a, b, _), = sub.arrows
    assert a == t1.base.key()
    full = restrict_to_U(q, VariableSet(ids=symbolic_root(A2).cluster()))
    assert len(full) == 1 and not full.arrows


def test_freeze():
    t0 = new_root(A2)
    assert freeze(t0, []).B_dagger.B == A2.B
    ctx = freeze(t0.mutate(2), [2])
    assert ctx.B_dagger.B == ((0,),)
    assert ctx.extension_rows == ((1,),)
    ctx = freeze(new_root(fixture("A3")), [2])
    assert ctx.B_dagger.B == ((0, 0), (0, 0))
    assert ctx.reduced_direction(3) == 2


def test_reduction_iso_examples():
    t0 = symbolic_root(A2)
    check = check_reduction_iso(t0, VariableSet(ids=frozenset()), CAPS)
    assert check.holds and len(check.bijection) == 5
    t1 = t0.mutate(2)
    check = check_reduction_iso(t1, VariableSet.from_seed(t1, [2]), CAPS)
    assert check.holds and len(check.bijection) == 2
    assert check.context.B_dagger.n == 1


def test_reduction_iso_a3_singletons():
    for witness in all_clusters(fixture("A3")):
        for ids in subsets(witness.cluster_ids()):
            if len(ids) == 1:
                assert check_reduction_iso(witness, VariableSet(ids=ids), CAPS).holds


def test_green_to_red():
    assert green_to_red_search(A2, CAPS).word == (2, 1)
    assert green_to_red_search(fixture("A1"), CAPS).word == (1,)
    res = green_to_red_search(fixture("Markov"), Caps(100_000, 10))
    assert res.word is None and not res.saturated


def test_mutation_inheritance():
    assert g2r_mutation_inheritance(A2, 1, CAPS)
    assert all(g2r_mutation_inheritance(fixture("A3"), k, CAPS) for k in (1, 2, 3))
    assert g2r_mutation_inheritance(fixture("A1"), 1, CAPS)


def test_nonpositive_part():
    assert nonpositive_part_g2r(A2, (), CAPS)
    assert nonpositive_part_g2r(A2, (2, 1), CAPS)
    q = build_quiver(fixture("A3"), CAPS)
    for key in q.vertices:
        assert nonpositive_part_g2r(fixture("A3"), q.rep(key).history, CAPS)
