"""Exchange quivers: seeds up to equivalence, with arrows along green mutations."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Union

from .bongartz import VariableSet, complete_bfs
from .errors import InputError, InvariantViolation
from .laurent import SymbolicSeed, symbolic_root
from .matrix_core import ExchangeMatrix, Matrix, is_skew_symmetrized_by, submatrix
from .search import Caps
from .seeds import MutationWord, Seed, new_root, replay, seeds_equivalent, sign_of

Vertex = Union[Seed, SymbolicSeed]


def _base(v: Vertex) -> Seed:
    return v.base if isinstance(v, SymbolicSeed) else v


@dataclass
class ExchangeQuiver:
    """A (possibly truncated) exchange quiver.

    ``vertices`` maps canonical keys to one representative seed each, in
    discovery order.  ``directions[key]`` lists the mutation directions of
    the representative that stay inside the quiver (all of them for a full
    quiver, those outside U for a restriction).  Arrow labels are directions
    in the representative of the arrow's tail; labels are not canonical
    across equivalent seeds.
    """

    vertices: dict[bytes, Vertex]
    directions: dict[bytes, tuple[int, ...]]
    arrows: set[tuple[bytes, bytes, int]]
    complete: bool
    root_key: bytes
    depth: dict[bytes, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self) -> dict[bytes, int]:
        return {k: i for i, k in enumerate(self.vertices)}

    def rep(self, key: bytes) -> Seed:
        return _base(self.vertices[key])

    def out_directions(self, key: bytes) -> list[int]:
        rep = self.rep(key)
        return [k for k in self.directions[key] if rep.is_green(k)]

    def in_directions(self, key: bytes) -> list[int]:
        rep = self.rep(key)
        return [k for k in self.directions[key] if not rep.is_green(k)]

    def sources(self) -> list[bytes]:
        """Vertices all of whose in-quiver mutations are green.

        Decided locally from c-vector signs, so the verdict is exact for
        every listed vertex even when the quiver is truncated.
        """
        return [k for k in self.vertices if not self.in_directions(k)]

    def sinks(self) -> list[bytes]:
        return [k for k in self.vertices if not self.out_directions(k)]

    def arrow_sources(self) -> list[bytes]:
        heads = {b for _, b, _ in self.arrows}
        return [k for k in self.vertices if k not in heads]

    def arrow_sinks(self) -> list[bytes]:
        tails = {a for a, _, _ in self.arrows}
        return [k for k in self.vertices if k not in tails]

    def edge_pairs(self) -> set[tuple[bytes, bytes]]:
        return {(a, b) for a, b, _ in self.arrows}

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj: dict[bytes, set[bytes]] = {k: set() for k in self.vertices}
        for a, b, _ in self.arrows:
            adj[a].add(b)
            adj[b].add(a)
        start = next(iter(self.vertices))
        seen = {start}
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def check_orientation(self) -> None:
        """Each edge is green at exactly one end, and complete quivers are ``|directions|``-regular."""
        for key in self.vertices:
            rep = self.rep(key)
            for k in self.directions[key]:
                if rep.is_green(k) == rep.mutate(k).is_green(k):
                    raise InvariantViolation(f"edge in direction {k} is green at both or neither end", rep.history)
        if self.complete:
            degree = {k: 0 for k in self.vertices}
            for a, b, _ in self.arrows:
                degree[a] += 1
                degree[b] += 1
            for key, d in degree.items():
                if d != len(self.directions[key]):
                    raise InvariantViolation(
                        f"vertex has {d} incident arrows, expected {len(self.directions[key])}", self.rep(key).history
                    )

    def summary(self) -> str:
        state = "complete" if self.complete else "incomplete"
        return (
            f"{len(self.vertices)} vertices, {len(self.arrows)} arrows, {state}, "
            f"{len(self.sources())} source{'s' if len(self.sources()) != 1 else ''}, "
            f"{len(self.sinks())} sink{'s' if len(self.sinks()) != 1 else ''}"
        )

    def to_dot(self, *, show_c: bool = False) -> str:
        idx = self.index()
        lines = ["digraph exchange_quiver {"]
        for key, i in idx.items():
            label = f"v{i}"
            if show_c:
                rows = "\\n".join(" ".join(map(str, r)) for r in self.rep(key).C)
                label += f"\\n{rows}"
            lines.append(f'  v{i} [label="{label}"];')
        for a, b, k in sorted(self.arrows, key=lambda e: (idx[e[0]], idx[e[1]], e[2])):
            lines.append(f'  v{idx[a]} -> v{idx[b]} [label="{k}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        idx = self.index()
        return {
            "complete": self.complete,
            "root": idx[self.root_key],
            "vertices": [
                {
                    "id": i,
                    "history": None if self.rep(k).history is None else list(self.rep(k).history),
                    "C": [list(r) for r in self.rep(k).C],
                    "directions": list(self.directions[k]),
                }
                for k, i in idx.items()
            ],
            "arrows": sorted([idx[a], idx[b], k] for a, b, k in self.arrows),
            "sources": sorted(idx[k] for k in self.sources()),
            "sinks": sorted(idx[k] for k in self.sinks()),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _explore(start: Vertex, free: tuple[int, ...] | None, caps: Caps) -> ExchangeQuiver:
    """Breadth-first closure from ``start``; ``free`` limits the mutation directions."""
    n = start.n
    dirs = tuple(range(1, n + 1)) if free is None else free
    root_key = _base(start).key()
    vertices: dict[bytes, Vertex] = {root_key: start}
    depth = {root_key: 0}
    arrows: set[tuple[bytes, bytes, int]] = set()
    complete = True
    queue = deque([root_key])
    while queue:
        key = queue.popleft()
        v = vertices[key]
        vb = _base(v)
        for k in dirs:
            w = v.mutate(k)
            wb = _base(w)
            wkey = wb.key()
            if wkey not in vertices:
                if depth[key] >= caps.max_depth or len(vertices) >= caps.max_vertices:
                    complete = False
                    continue
                vertices[wkey] = w
                depth[wkey] = depth[key] + 1
                queue.append(wkey)
            if vb.is_green(k):
                arrows.add((key, wkey, k))
            else:
                sigma = seeds_equivalent(_base(vertices[wkey]), wb)
                arrows.add((wkey, key, sigma[k - 1]))
    directions = {key: dirs for key in vertices}
    return ExchangeQuiver(vertices, directions, arrows, complete, root_key, depth)


def build_quiver(root_B: ExchangeMatrix | Matrix, caps: Caps | None = None, *, symbolic: bool = False) -> ExchangeQuiver:
    """Breadth-first exchange quiver of ``root_B`` within the caps.

    With ``symbolic`` the representatives carry Laurent clusters, which
    :func:`restrict_to_U` needs for variable-id subsets.
    """
    caps = caps or Caps.default()
    start = symbolic_root(root_B) if symbolic else new_root(root_B)
    return _explore(start, None, caps)


def sources(q: ExchangeQuiver) -> list[bytes]:
    return q.sources()


def sinks(q: ExchangeQuiver) -> list[bytes]:
    return q.sinks()


def restrict_to_U(q: ExchangeQuiver, U: VariableSet) -> ExchangeQuiver:
    """Full subquiver on the vertices whose cluster contains ``U``.

    Raises :class:`InvariantViolation` if a complete restriction is
    disconnected.
    """
    keep: dict[bytes, tuple[int, ...]] = {}
    for key, v in q.vertices.items():
        found = U.locate(v)
        if found is not None:
            keep[key] = tuple(k for k in q.directions[key] if k not in found)
    if not keep:
        raise InputError("U is contained in no cluster of this quiver")
    arrows = {(a, b, k) for a, b, k in q.arrows if a in keep and b in keep}
    root = q.root_key if q.root_key in keep else next(iter(keep))
    sub = ExchangeQuiver(
        {k: q.vertices[k] for k in keep}, keep, arrows, q.complete, root, {k: q.depth.get(k, 0) for k in keep}
    )
    if q.complete and not sub.is_connected():
        raise InvariantViolation("Gamma_U is disconnected")
    return sub


@dataclass(frozen=True)
class FrozenSeedContext:
    """``s`` with the variables at ``u_positions`` frozen.

    ``B_dagger`` is the V x V block of ``B_s`` (V the remaining positions, in
    increasing order) and ``extension_rows`` the U x V block below it.
    """

    base: Seed
    u_positions: tuple[int, ...]
    v_positions: tuple[int, ...]
    B_dagger: ExchangeMatrix
    extension_rows: Matrix

    def root(self) -> Seed:
        return new_root(self.B_dagger)

    def extended_matrix(self) -> Matrix:
        return self.B_dagger.B + self.extension_rows

    def reduced_direction(self, k: int) -> int:
        """Direction in the frozen seed matching direction ``k`` of ``base``."""
        return self.v_positions.index(k) + 1


def freeze(seed: Seed, u_positions: Iterable[int]) -> FrozenSeedContext:
    n = seed.n
    u = tuple(sorted(set(int(p) for p in u_positions)))
    if any(not 1 <= p <= n for p in u):
        raise InputError(f"positions {list(u)} out of range 1..{n}")
    v = tuple(k for k in range(1, n + 1) if k not in u)
    vz = [k - 1 for k in v]
    dagger = submatrix(seed.B, vz, vz)
    if not is_skew_symmetrized_by(dagger, [seed.S[i] for i in vz]):
        raise InvariantViolation("principal submatrix lost skew-symmetrizability", seed.history)
    em = ExchangeMatrix.from_rows(dagger)
    return FrozenSeedContext(seed, u, v, em, submatrix(seed.B, [p - 1 for p in u], vz))


@dataclass
class ReductionCheck:
    holds: bool
    bounded: bool
    bijection: dict[bytes, bytes]
    completion: Seed
    context: FrozenSeedContext
    problems: list[str] = field(default_factory=list)


def check_reduction_iso(witness: SymbolicSeed | Seed, U: VariableSet, caps: Caps | None = None) -> ReductionCheck:
    """Verify that Gamma_U(B, t0) is isomorphic to the exchange quiver of ``B_s^dagger``.

    ``s`` is the Bongartz completion of ``U``.  Both quivers are explored by
    the same words in the non-U directions, which realizes the freezing map
    ``t -> t^U``; the map must be a well-defined bijection on vertices and
    must carry the green arrows of one quiver exactly onto those of the
    other.  Independently built copies of both quivers are compared against
    the map as well.
    """
    caps = caps or Caps.default()
    comp = complete_bfs(witness, U, caps)
    if not comp.results:
        raise InputError("no completion of U within the caps")
    s = comp.results[0]
    ctx = freeze(s.seed, s.u_positions)
    v = ctx.v_positions
    problems: list[str] = []

    forward: dict[bytes, bytes] = {}
    backward: dict[bytes, bytes] = {}
    start_full, start_red = s.seed, ctx.root()
    queue = deque([(start_full, start_red, 0)])
    forward[start_full.key()] = start_red.key()
    backward[start_red.key()] = start_full.key()
    mapped_arrows: set[tuple[bytes, bytes]] = set()
    complete = True
    while queue:
        full, red, d = queue.popleft()
        for i, k in enumerate(v, start=1):
            if full.is_green(k) != red.is_green(i):
                problems.append(f"orientation differs at direction {k} of {full.history}")
            nf, nr = full.mutate(k), red.mutate(i)
            fk, rk = nf.key(), nr.key()
            if full.is_green(k):
                mapped_arrows.add((forward[full.key()], rk))
            else:
                mapped_arrows.add((rk, forward[full.key()]))
            if fk in forward or rk in backward:
                if forward.get(fk) != rk or backward.get(rk) != fk:
                    problems.append(f"freezing map is not a bijection at {nf.history}")
                continue
            if d >= caps.max_depth or len(forward) >= caps.max_vertices:
                complete = False
                continue
            forward[fk] = rk
            backward[rk] = fk
            queue.append((nf, nr, d + 1))

    # independent copies of both sides
    reduced = build_quiver(ctx.B_dagger, caps)
    complete = complete and reduced.complete
    if set(reduced.vertices) != set(backward):
        problems.append("reduced quiver vertices differ from the image of Gamma_U")
    if reduced.edge_pairs() != mapped_arrows:
        problems.append("reduced quiver arrows differ from the image of Gamma_U")
    if isinstance(witness, SymbolicSeed) and not U.positional:
        full_q = build_quiver(witness.base.root_B, caps, symbolic=True)
        complete = complete and full_q.complete
        gamma_u = restrict_to_U(full_q, U)
        if set(gamma_u.vertices) != set(forward):
            problems.append("Gamma_U vertices differ from the domain of the freezing map")
        image = {(forward[a], forward[b]) for a, b in gamma_u.edge_pairs() if a in forward and b in forward}
        if image != reduced.edge_pairs():
            problems.append("Gamma_U arrows do not map onto the reduced quiver arrows")
    return ReductionCheck(not problems, not complete, forward, s.seed, ctx, problems)


@dataclass(frozen=True)
class GreenToRedResult:
    word: MutationWord | None
    visited: int
    saturated: bool

    @property
    def found(self) -> bool:
        return self.word is not None


def green_to_red_search(root_B: ExchangeMatrix | Matrix, caps: Caps | None = None) -> GreenToRedResult:
    """Shortest word (breadth-first) to a seed whose C-matrix is non-positive."""
    caps = caps or Caps.default()
    root = new_root(root_B)
    n = root.n
    if n == 0:
        return GreenToRedResult((), 1, True)
    seen = {root.key()}
    queue = deque([(root, ())])
    saturated = True
    while queue:
        seed, word = queue.popleft()
        if all(sign_of(col) < 0 for col in zip(*seed.C)):
            return GreenToRedResult(word, len(seen), saturated)
        for k in range(1, n + 1):
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
    return GreenToRedResult(None, len(seen), saturated)


def g2r_mutation_inheritance(root_B: ExchangeMatrix | Matrix, k: int, caps: Caps | None = None) -> bool:
    """If ``root_B`` has a green-to-red sequence, check that ``mu_k(root_B)`` has one too.

    The second search gets twice the depth of the first.
    """
    caps = caps or Caps.default()
    first = green_to_red_search(root_B, caps)
    if not first.found:
        raise InputError("root_B has no green-to-red sequence within the caps")
    em = root_B if isinstance(root_B, ExchangeMatrix) else ExchangeMatrix.from_rows(root_B)
    wider = Caps(caps.max_vertices, max(caps.max_depth, 2 * len(first.word) + 2))
    return green_to_red_search(em.mutate(k), wider).found


def nonpositive_part_g2r(root_B: ExchangeMatrix | Matrix, word: Iterable[int], caps: Caps | None = None) -> bool:
    """Does the block of ``B_t`` on the non-positive c-vector positions admit a green-to-red sequence?"""
    t = replay(root_B, word)
    w = [j for j in range(t.n) if sign_of([row[j] for row in t.C]) < 0]
    if not w:
        return True
    return green_to_red_search(submatrix(t.B, w, w), caps).found


__all__ = [
    "ExchangeQuiver",
    "FrozenSeedContext",
    "GreenToRedResult",
    "ReductionCheck",
    "build_quiver",
    "check_reduction_iso",
    "freeze",
    "g2r_mutation_inheritance",
    "green_to_red_search",
    "nonpositive_part_g2r",
    "restrict_to_U",
    "sinks",
    "sources",
]
