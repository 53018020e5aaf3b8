"""Bongartz completion and co-completion of a subset of a cluster.

A cluster ``[x_s]`` is the Bongartz completion of ``U`` (with respect to a
frame, by default the root) when ``U`` lies in ``[x_s]`` and every c-vector of
``s`` at a position outside ``U`` is non-negative; the co-completion asks for
non-positive ones.  Completions always exist and are unique; co-completions
are unique when they exist.

Two independent procedures are provided.  :func:`complete_greedy` walks from a
witness against green arrows (mutating at a red non-U position) until none
is left.  :func:`complete_bfs` enumerates every seed that still contains
``U`` and keeps those passing the definition; when that closure saturates
it must find exactly one.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Union

from .errors import InputError, InvariantViolation
from .laurent import LaurentPoly, SymbolicSeed, variable_id
from .matrix_core import ExchangeMatrix, Matrix, column, matmul, negate, unimodular_inverse
from .search import Caps, Frame, Status
from .seeds import MutationWord, Seed, sign_of

Witness = Union[SymbolicSeed, Seed]


@dataclass(frozen=True)
class VariableSet:
    """A subset ``U`` of a cluster.

    Normally ``U`` is a set of variable ids, so membership survives mutation
    and relabeling.  In positional mode it is a set of 1-based positions,
    meaningful only inside the seed they were read from and along words that
    never mutate at those positions.
    """

    ids: frozenset[bytes] | None = None
    positions: frozenset[int] | None = None

    def __post_init__(self):
        if (self.ids is None) == (self.positions is None):
            raise InputError("a VariableSet holds either variable ids or positions")

    @classmethod
    def of(cls, items: Iterable[LaurentPoly | bytes]) -> VariableSet:
        return cls(ids=frozenset(variable_id(x) if isinstance(x, LaurentPoly) else x for x in items))

    @classmethod
    def at_positions(cls, positions: Iterable[int]) -> VariableSet:
        return cls(positions=frozenset(int(p) for p in positions))

    @classmethod
    def from_seed(cls, seed: SymbolicSeed, positions: Iterable[int]) -> VariableSet:
        """The ids of the variables sitting at the given 1-based positions of ``seed``."""
        ids = seed.cluster_ids()
        return cls(ids=frozenset(ids[p - 1] for p in positions))

    @property
    def positional(self) -> bool:
        return self.positions is not None

    def __len__(self) -> int:
        return len(self.ids if self.ids is not None else self.positions)

    def locate(self, seed: Witness) -> tuple[int, ...] | None:
        """Sorted 1-based positions of ``U`` in ``seed``, or ``None`` if ``U`` is not in its cluster."""
        if self.positions is not None:
            n = seed.n
            if any(not 1 <= p <= n for p in self.positions):
                raise InputError(f"positions {sorted(self.positions)} out of range 1..{n}")
            return tuple(sorted(self.positions))
        if not isinstance(seed, SymbolicSeed):
            raise InputError("variable ids can only be located in a seed with symbolic data")
        lookup = {vid: i + 1 for i, vid in enumerate(seed.cluster_ids())}
        try:
            return tuple(sorted(lookup[v] for v in self.ids))
        except KeyError:
            return None

    def require(self, seed: Witness) -> tuple[int, ...]:
        found = self.locate(seed)
        if found is None:
            raise InputError("U is not a subset of the witness cluster")
        return found


@dataclass(frozen=True)
class CompletionResult:
    """Outcome of a completion or co-completion search.

    ``seed`` is the global seed (root frame) reached from the witness by
    ``word``; ``symbolic`` is filled when the witness carried symbolic data.
    """

    status: Status
    seed: Seed | None = None
    symbolic: SymbolicSeed | None = None
    u_positions: tuple[int, ...] = ()
    word: MutationWord = ()
    visited: int = 0

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND

    @property
    def stats(self) -> dict[str, int]:
        return {"visited": self.visited, "word_length": len(self.word)}

    def key(self) -> bytes:
        if self.seed is None:
            raise InputError("no seed was found")
        return self.seed.key()

    def to_dict(self) -> dict:
        out = {"status": self.status.value, "visited": self.visited, "word": list(self.word)}
        if self.seed is not None:
            out["seed"] = self.seed.to_dict()
            out["u_positions"] = list(self.u_positions)
        if self.symbolic is not None:
            out["cluster"] = self.symbolic.render_cluster()
        return out


@dataclass
class CompletionSearch:
    """All seeds passing the test inside the explored part of Gamma_U."""

    results: list[CompletionResult] = field(default_factory=list)
    saturated: bool = False
    visited: int = 0

    def __len__(self) -> int:
        return len(self.results)

    def __iter__(self):
        return iter(self.results)

    def unique(self) -> CompletionResult:
        if len(self.results) != 1:
            raise InvariantViolation(f"expected exactly one completion, found {len(self.results)}")
        return self.results[0]


def _columns_ok(c: Matrix, u_positions: Iterable[int], sign: int) -> bool:
    skip = set(u_positions)
    for j in range(len(c)):
        if j + 1 in skip:
            continue
        s = sign_of(column(c, j))
        if s == 0:
            raise InvariantViolation(f"c-vector {j + 1} = {list(column(c, j))} is zero or mixed")
        if s != sign:
            return False
    return True


def _frame(witness: Witness, frame: Frame | None) -> Frame:
    base = witness.base if isinstance(witness, SymbolicSeed) else witness
    return Frame.root_of(base) if frame is None else frame


def _base(seed: Witness) -> Seed:
    return seed.base if isinstance(seed, SymbolicSeed) else seed


def is_completion(seed: Witness, U: VariableSet, frame: Frame | None = None) -> bool:
    """True iff ``U`` lies in the cluster of ``seed`` and all other c-vectors are non-negative."""
    positions = U.locate(seed)
    if positions is None:
        return False
    rel = _frame(seed, frame).relative(_base(seed))
    return _columns_ok(rel.C, positions, 1)


def is_cocompletion(seed: Witness, U: VariableSet, frame: Frame | None = None) -> bool:
    """Mirror of :func:`is_completion` with non-positive c-vectors."""
    positions = U.locate(seed)
    if positions is None:
        return False
    rel = _frame(seed, frame).relative(_base(seed))
    return _columns_ok(rel.C, positions, -1)


def _result(witness: Witness, word: MutationWord, positions, visited: int) -> CompletionResult:
    reached = witness.mutate_word(word)
    if isinstance(reached, SymbolicSeed):
        return CompletionResult(Status.FOUND, reached.base, reached, positions, word, visited)
    return CompletionResult(Status.FOUND, reached, None, positions, word, visited)


def complete_greedy(
    witness: Witness,
    U: VariableSet,
    *,
    frame: Frame | None = None,
    max_steps: int | None = None,
    rng: random.Random | None = None,
) -> CompletionResult:
    """Mutate at a red position outside ``U`` until every such c-vector is non-negative.

    The smallest eligible position is taken unless ``rng`` is given, in which
    case one is drawn at random.  Termination is not guaranteed in infinite
    type, hence ``max_steps`` (default ``64 * n``).
    """
    positions = U.require(witness)
    fr = _frame(witness, frame)
    rel = fr.relative(_base(witness))
    n = rel.n
    limit = 64 * n if max_steps is None else max_steps
    free = [k for k in range(1, n + 1) if k not in positions]
    word: list[int] = []
    for _ in range(limit + 1):
        red = [k for k in free if not rel.is_green(k)]
        if not red:
            res = _result(witness, tuple(word), positions, len(word) + 1)
            if not is_completion(res.symbolic or res.seed, U, fr):
                raise InvariantViolation("greedy result fails the completion test", res.seed.history)
            return res
        if len(word) == limit:
            break
        k = rng.choice(red) if rng is not None else red[0]
        rel = rel.mutate(k)
        word.append(k)
    return CompletionResult(Status.NOT_FOUND_WITHIN_BOUNDS, visited=len(word) + 1, u_positions=positions)


def _closure(
    witness: Witness,
    positions: tuple[int, ...],
    fr: Frame,
    caps: Caps,
    accept: Callable[[Seed], bool],
) -> tuple[list[MutationWord], bool, int]:
    """Breadth-first closure of the witness under mutations outside ``positions``.

    Returns the words (from the witness) of accepted seeds, whether the
    closure saturated within the caps, and the number of distinct seeds seen.
    """
    start = fr.relative(_base(witness))
    free = [k for k in range(1, start.n + 1) if k not in positions]
    seen = {start.key()}
    queue = deque([(start, ())])
    hits: list[MutationWord] = []
    saturated = True
    while queue:
        seed, word = queue.popleft()
        if accept(seed):
            hits.append(word)
        for k in free:
            if word and word[-1] == k:
                continue
            nxt = seed.mutate(k)
            key = nxt.key()
            if key in seen:
                continue
            if len(word) >= caps.max_depth or len(seen) >= caps.max_vertices:
                saturated = False
                continue
            seen.add(key)
            queue.append((nxt, word + (k,)))
    return hits, saturated, len(seen)


def complete_bfs(witness: Witness, U: VariableSet, caps: Caps | None = None, *, frame: Frame | None = None) -> CompletionSearch:
    """Every seed of Gamma_U (within the caps) that is a Bongartz completion of ``U``.

    A saturated search must return exactly one seed; anything else is an
    :class:`InvariantViolation`.
    """
    caps = caps or Caps.default()
    positions = U.require(witness)
    fr = _frame(witness, frame)
    hits, saturated, visited = _closure(witness, positions, fr, caps, lambda s: _columns_ok(s.C, positions, 1))
    search = CompletionSearch([_result(witness, w, positions, visited) for w in hits], saturated, visited)
    if saturated and len(search) != 1:
        raise InvariantViolation(f"saturated search found {len(search)} completions, expected exactly one")
    return search


def cocomplete_search(witness: Witness, U: VariableSet, caps: Caps | None = None, *, frame: Frame | None = None) -> CompletionResult:
    """The Bongartz co-completion of ``U``, or a bounded negative verdict.

    Non-existence is never certified: an empty search within the caps yields
    ``NotFoundWithinBounds`` even when the closure saturated.
    """
    caps = caps or Caps.default()
    positions = U.require(witness)
    fr = _frame(witness, frame)
    hits, saturated, visited = _closure(witness, positions, fr, caps, lambda s: _columns_ok(s.C, positions, -1))
    if len(hits) > 1:
        raise InvariantViolation(f"found {len(hits)} inequivalent co-completions, expected at most one")
    if not hits:
        return CompletionResult(Status.NOT_FOUND_WITHIN_BOUNDS, visited=visited, u_positions=positions)
    return _result(witness, hits[0], positions, visited)


def complete(witness: Witness, U: VariableSet, caps: Caps | None = None, *, frame: Frame | None = None, method: str = "bfs") -> CompletionResult:
    """Convenience wrapper returning the single completion found by ``method``."""
    if method == "greedy":
        return complete_greedy(witness, U, frame=frame)
    if method != "bfs":
        raise InputError(f"unknown completion method {method!r}")
    search = complete_bfs(witness, U, caps, frame=frame)
    if not search.results:
        return CompletionResult(Status.NOT_FOUND_WITHIN_BOUNDS, visited=search.visited)
    return search.results[0]


def _same_root(t: Seed, t_prime: Seed) -> None:
    if t.root_B != t_prime.root_B:
        raise InputError("the two seeds belong to different roots")


def _rows_ok(m: Matrix, u_positions: Iterable[int]) -> bool:
    skip = set(u_positions)
    return all(all(x >= 0 for x in row) for i, row in enumerate(m) if i + 1 not in skip)


def is_g_pair(t: Witness, t_prime: Witness, U: VariableSet) -> bool:
    """Rows of ``G_{t'}^-1 G_t`` outside the positions of ``U`` in ``t'`` are non-negative."""
    tb, tpb = _base(t), _base(t_prime)
    _same_root(tb, tpb)
    positions = U.locate(t_prime)
    if positions is None:
        return False
    return _rows_ok(matmul(unimodular_inverse(tpb.G), tb.G), positions)


def g_pair_alt_check(t: Witness, t_prime: Witness, U: VariableSet) -> bool:
    """Same test through the G-matrix of ``t`` with ``t'`` taken as the initial seed."""
    tb, tpb = _base(t), _base(t_prime)
    _same_root(tb, tpb)
    positions = U.locate(t_prime)
    if positions is None:
        return False
    rel = Frame.at(tpb).relative(tb)
    return _rows_ok(rel.G, positions)


@dataclass(frozen=True)
class CommutativityReport:
    holds: bool
    keys: dict[str, bytes]


def commutativity_check(witness: Witness, W: VariableSet, V: VariableSet, caps: Caps | None = None) -> CommutativityReport:
    """Compare ``B_U``, ``B_U B_W``, ``B_V B_W`` and ``B_W B_V`` for ``U = W + V``.

    ``B_X B_Y`` is the completion of ``X`` taken with respect to (a seed of)
    ``B_Y[x_t0]``.  All four must name the same cluster.
    """
    if W.positional != V.positional:
        raise InputError("W and V must use the same mode")
    if W.positional:
        if W.positions & V.positions:
            raise InputError("W and V overlap")
        U = VariableSet.at_positions(W.positions | V.positions)
    else:
        if W.ids & V.ids:
            raise InputError("W and V overlap")
        U = VariableSet(ids=W.ids | V.ids)
    b_u = complete(witness, U, caps)
    b_w = complete(witness, W, caps)
    b_v = complete(witness, V, caps)
    outcomes = {
        "B_U": b_u,
        "B_U B_W": complete(witness, U, caps, frame=Frame.at(b_w.seed)),
        "B_V B_W": complete(witness, V, caps, frame=Frame.at(b_w.seed)),
        "B_W B_V": complete(witness, W, caps, frame=Frame.at(b_v.seed)),
    }
    if not all(r.found for r in outcomes.values()):
        raise InvariantViolation("a completion search came back empty")
    keys = {name: r.key() for name, r in outcomes.items()}
    return CommutativityReport(len(set(keys.values())) == 1, keys)


def opposite_root(B: ExchangeMatrix | Matrix) -> ExchangeMatrix:
    """``-B``, the exchange matrix of the opposite seed."""
    if isinstance(B, ExchangeMatrix):
        return B.opposite()
    return ExchangeMatrix.from_rows(negate(B))


__all__ = [
    "CommutativityReport",
    "CompletionResult",
    "CompletionSearch",
    "VariableSet",
    "commutativity_check",
    "complete",
    "complete_bfs",
    "complete_greedy",
    "cocomplete_search",
    "g_pair_alt_check",
    "is_cocompletion",
    "is_completion",
    "is_g_pair",
    "opposite_root",
]
