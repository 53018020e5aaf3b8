"""Seeds with principal coefficients at a root vertex.

A :class:`Seed` is one vertex of the mutation tree: its exchange matrix, its
C-matrix (c-vectors are the columns) and G-matrix relative to the root, and
the mutation word that reaches it from the root.  G is derived from C through
the tropical duality ``S C S^-1 G^T = I`` and the duality is then re-checked
independently, together with sign-coherence, on every mutation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import InputError, InvariantViolation, NotUnimodularError
from .matrix_core import (
    ExchangeMatrix,
    Matrix,
    Vector,
    as_matrix,
    column,
    determinant,
    identity,
    mutate_matrix,
    permute,
    permute_columns,
    rational_inverse,
    shape,
)

MutationWord = tuple[int, ...]


def check_word(word: Iterable[int], n: int) -> MutationWord:
    out = tuple(int(k) for k in word)
    for k in out:
        if not 1 <= k <= n:
            raise InputError(f"direction {k} out of range 1..{n}")
    return out


def reduce_word(word: Sequence[int]) -> MutationWord:
    """Cancel adjacent repeated directions; mutations are involutions."""
    stack: list[int] = []
    for k in word:
        if stack and stack[-1] == k:
            stack.pop()
        else:
            stack.append(k)
    return tuple(stack)


def sign_of(vec: Sequence[int]) -> int:
    """+1 if ``vec`` is non-negative, -1 if non-positive, 0 if mixed or zero."""
    nonneg = all(x >= 0 for x in vec)
    nonpos = all(x <= 0 for x in vec)
    if nonneg and not nonpos:
        return 1
    if nonpos and not nonneg:
        return -1
    return 0


def g_matrix_from_c(c: Matrix, s: Sequence[int]) -> Matrix:
    """Solve ``S C S^-1 G^T = I`` for G, i.e. ``g_ij = (C^-1)_ji * s_j / s_i``.

    Raises :class:`NotUnimodularError` if C is singular and
    :class:`InvariantViolation` if the result is not integral.
    """
    inv = rational_inverse(c)
    n = len(c)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            g = inv[j][i] * Fraction(s[j], s[i])
            if g.denominator != 1:
                raise InvariantViolation(f"G-matrix from duality is not integral at ({i + 1},{j + 1}): {g}")
            row.append(int(g))
        out.append(tuple(row))
    return tuple(out)


def duality_holds(c: Matrix, g: Matrix, s: Sequence[int]) -> bool:
    """Check ``sum_j s_i c_ij g_kj / s_j == delta_ik`` exactly."""
    n = len(c)
    for i in range(n):
        for k in range(n):
            total = sum(Fraction(s[i] * c[i][j] * g[k][j], s[j]) for j in range(n))
            if total != (1 if i == k else 0):
                return False
    return True


@dataclass(frozen=True)
class Seed:
    """A labeled seed with principal coefficients at the root ``root_B``.

    ``history`` is the 1-based mutation word from the root, or ``None`` for a
    seed obtained by relabeling (see :func:`apply_permutation`).
    """

    B: Matrix
    S: Vector
    C: Matrix
    G: Matrix
    root_B: Matrix
    history: MutationWord | None = ()
    _key: bytes | None = field(default=None, init=False, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.B)

    @property
    def exchange_matrix(self) -> ExchangeMatrix:
        return ExchangeMatrix(self.B, self.S)

    def c_vector(self, k: int) -> Vector:
        return column(self.C, k - 1)

    def g_vector(self, k: int) -> Vector:
        return column(self.G, k - 1)

    def mutate(self, k: int, *, check: bool = True) -> Seed:
        return mutate_seed(self, k, check=check)

    def mutate_word(self, word: Iterable[int], *, check: bool = True) -> Seed:
        seed = self
        for k in word:
            seed = mutate_seed(seed, k, check=check)
        return seed

    def is_green(self, k: int) -> bool:
        return is_green(self, k)

    def key(self) -> bytes:
        if self._key is None:
            object.__setattr__(self, "_key", canonical_key(self))
        return self._key

    def same_matrices(self, other: Seed) -> bool:
        return (self.B, self.C, self.G, self.root_B) == (other.B, other.C, other.G, other.root_B)

    def check_invariants(self) -> None:
        """Raise :class:`InvariantViolation` unless every structural property holds."""
        n = self.n
        hist = self.history
        if shape(self.C) != (n, n) or shape(self.G) != (n, n):
            raise InvariantViolation("C and G must be n x n", hist)
        for j in range(n):
            if sign_of(column(self.C, j)) == 0:
                raise InvariantViolation(f"c-vector {j + 1} = {list(column(self.C, j))} is not sign-coherent", hist)
        for i in range(n):
            if sign_of(self.G[i]) == 0:
                raise InvariantViolation(f"row {i + 1} of G = {list(self.G[i])} is not sign-coherent", hist)
        for name, m in (("C", self.C), ("G", self.G)):
            d = determinant(m)
            if d not in (1, -1):
                raise InvariantViolation(f"det {name} = {d}, expected +-1", hist)
        if not duality_holds(self.C, self.G, self.S):
            raise InvariantViolation("tropical duality S C S^-1 G^T = I fails", hist)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "B": [list(r) for r in self.B],
            "C": [list(r) for r in self.C],
            "G": [list(r) for r in self.G],
            "S": list(self.S),
            "root_B": [list(r) for r in self.root_B],
            "history": None if self.history is None else list(self.history),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any], *, check: bool = True) -> Seed:
        try:
            n = int(data["n"])
            b = as_matrix(data["B"], cols=n)
            c = as_matrix(data["C"], cols=n)
            g = as_matrix(data["G"], cols=n)
            root = as_matrix(data.get("root_B", data["B"]), cols=n)
        except KeyError as exc:
            raise InputError(f"seed object lacks field {exc.args[0]!r}") from None
        for name, m in (("B", b), ("C", c), ("G", g), ("root_B", root)):
            if len(m) != n:
                raise InputError(f"field {name!r} has {len(m)} rows, expected n={n}")
        em = ExchangeMatrix.from_rows(b, data.get("S"))
        hist = data.get("history", ())
        hist = None if hist is None else check_word(hist, n)
        seed = cls(b, em.S, c, g, root, hist)
        if check:
            seed.check_invariants()
        return seed


def new_root(B: ExchangeMatrix | Matrix | Iterable[Iterable[int]]) -> Seed:
    """The root seed: C = G = I and an empty history."""
    if not isinstance(B, ExchangeMatrix):
        B = ExchangeMatrix.from_rows(B)
    eye = identity(B.n)
    return Seed(B.B, B.S, eye, eye, B.B, ())


def mutate_seed(seed: Seed, k: int, *, check: bool = True) -> Seed:
    """Mutate in 1-based direction ``k``.

    The extended matrix ``[B; C]`` is mutated as a whole, G is recomputed by
    duality, and (with ``check``) every seed invariant is re-asserted.
    """
    n = seed.n
    if not 1 <= k <= n:
        raise InputError(f"direction {k} out of range 1..{n}")
    ext = mutate_matrix(seed.B + seed.C, k)
    b, c = ext[:n], ext[n:]
    hist = None if seed.history is None else seed.history + (k,)
    try:
        g = g_matrix_from_c(c, seed.S)
    except NotUnimodularError as exc:
        raise InvariantViolation(f"C-matrix became singular: {exc}", hist) from None
    except InvariantViolation as exc:
        raise InvariantViolation(str(exc), hist) from None
    out = Seed(b, seed.S, c, g, seed.root_B, hist)
    if check:
        out.check_invariants()
    return out


def replay(root_B: ExchangeMatrix | Matrix, word: Iterable[int], *, check: bool = True) -> Seed:
    seed = new_root(root_B)
    return seed.mutate_word(check_word(word, seed.n), check=check)


def reroot(seed: Seed, origin: Seed, *, check: bool = True) -> Seed:
    """The seed at the same tree vertex as ``seed``, with principal coefficients at ``origin``.

    Both seeds must carry histories on the same labeled tree.  The result's
    history is the reduced word from ``origin`` to ``seed``.
    """
    if seed.history is None or origin.history is None:
        raise InputError("rerooting needs seeds that carry a mutation history")
    if seed.root_B != origin.root_B:
        raise InputError("seeds belong to different roots")
    word = reduce_word(tuple(reversed(origin.history)) + seed.history)
    return replay(ExchangeMatrix(origin.B, origin.S), word, check=check)


def is_green(seed: Seed, k: int) -> bool:
    """True iff the k-th c-vector is non-negative."""
    if not 1 <= k <= seed.n:
        raise InputError(f"direction {k} out of range 1..{seed.n}")
    return all(row[k - 1] >= 0 for row in seed.C)


def check_permutation(sigma: Sequence[int], n: int) -> tuple[int, ...]:
    sig = tuple(int(x) for x in sigma)
    if sorted(sig) != list(range(1, n + 1)):
        raise InputError(f"{list(sig)} is not a permutation of 1..{n}")
    return sig


def apply_permutation(seed: Seed, sigma: Sequence[int]) -> Seed:
    """Relabel ``seed`` by ``sigma`` given in one-line notation (sigma(1), ..., sigma(n)).

    ``B'[i][j] = B[sigma(i)][sigma(j)]`` and the j-th column of C (and of G)
    becomes the sigma(j)-th one.  The identity keeps the history; any other
    permutation clears it since relabeled seeds are not tree vertices.
    """
    sig = check_permutation(sigma, seed.n)
    if sig == tuple(range(1, seed.n + 1)):
        return seed
    z = [x - 1 for x in sig]
    return Seed(
        permute(seed.B, z),
        tuple(seed.S[i] for i in z),
        permute_columns(seed.C, z),
        permute_columns(seed.G, z),
        seed.root_B,
        None,
    )


def _serialize(n: int, b: Matrix, c_cols: Sequence[Vector]) -> bytes:
    c_part = ";".join(",".join(map(str, col)) for col in c_cols)
    b_part = ";".join(",".join(map(str, row)) for row in b)
    return f"{n}|C:{c_part}|B:{b_part}".encode()


def canonical_permutation(seed: Seed) -> tuple[int, ...]:
    """The permutation (one-line, 1-based) taking ``seed`` to its canonical representative.

    C is invertible, so its columns are pairwise distinct and sorting them
    fixes the relabeling uniquely.
    """
    cols = [column(seed.C, j) for j in range(seed.n)]
    order = sorted(range(seed.n), key=lambda j: cols[j])
    return tuple(j + 1 for j in order)


def canonical_key(seed: Seed) -> bytes:
    """Minimal serialization of ``(sigma B, sigma C)`` over all relabelings.

    The serialization lists C column by column before B, so the minimum is
    attained at the unique permutation sorting the c-vectors.
    """
    z = [j - 1 for j in canonical_permutation(seed)]
    cols = [column(seed.C, j) for j in z]
    return _serialize(seed.n, permute(seed.B, z), cols)


def seeds_equivalent(s1: Seed, s2: Seed) -> tuple[int, ...] | None:
    """A permutation sigma with ``s2 == apply_permutation(s1, sigma)``, or ``None``."""
    if s1.n != s2.n:
        raise InputError(f"seeds have different ranks {s1.n} and {s2.n}")
    if s1.root_B != s2.root_B:
        raise InputError("seeds belong to different roots")
    where = {column(s1.C, j): j for j in range(s1.n)}
    z = []
    for j in range(s2.n):
        idx = where.get(column(s2.C, j))
        if idx is None:
            return None
        z.append(idx)
    if permute(s1.B, z) != s2.B:
        return None
    return tuple(j + 1 for j in z)


__all__ = [
    "MutationWord",
    "Seed",
    "apply_permutation",
    "canonical_key",
    "canonical_permutation",
    "check_permutation",
    "check_word",
    "duality_holds",
    "g_matrix_from_c",
    "is_green",
    "mutate_seed",
    "new_root",
    "reduce_word",
    "replay",
    "reroot",
    "seeds_equivalent",
    "sign_of",
]
