"""Exact integer matrices.

Matrices are immutable tuples of rows of Python ints, so entries never
overflow and values can be shared freely, hashed and used as dictionary keys.
Mutation directions are 1-based throughout the package.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Integral
from typing import Iterable, Sequence

from .errors import InputError, NotSkewSymmetrizableError, NotUnimodularError

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def as_matrix(rows: Iterable[Iterable[int]], *, cols: int | None = None) -> Matrix:
    """Validate ``rows`` and freeze them into a rectangular integer matrix.

    Floats are accepted only when integral; booleans are rejected.
    """
    out = []
    for r, row in enumerate(rows):
        frozen = []
        for c, x in enumerate(row):
            if isinstance(x, bool):
                raise InputError(f"entry ({r + 1},{c + 1}) is a boolean, expected an integer")
            if isinstance(x, Integral):
                frozen.append(int(x))
            elif isinstance(x, float) and x.is_integer():
                frozen.append(int(x))
            else:
                raise InputError(f"entry ({r + 1},{c + 1}) = {x!r} is not an integer")
        out.append(tuple(frozen))
    widths = {len(row) for row in out}
    if len(widths) > 1:
        raise InputError(f"ragged matrix: row lengths {sorted(widths)}")
    if cols is not None and out and len(out[0]) != cols:
        raise InputError(f"expected {cols} columns, got {len(out[0])}")
    return tuple(out)


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def negate(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if shape(a)[1] != len(b):
        raise InputError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def column(a: Matrix, j: int) -> Vector:
    """Column ``j`` (0-based) of ``a``."""
    return tuple(row[j] for row in a)


def submatrix(a: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    """Rows and columns selected by 0-based index lists, in the given order."""
    return tuple(tuple(a[i][j] for j in cols) for i in rows)


def vstack(*blocks: Matrix) -> Matrix:
    widths = {shape(b)[1] for b in blocks if b}
    if len(widths) > 1:
        raise InputError(f"cannot stack blocks of widths {sorted(widths)}")
    return tuple(row for b in blocks for row in b)


def permute(a: Matrix, sigma: Sequence[int]) -> Matrix:
    """``b[i][j] = a[sigma[i]][sigma[j]]`` for a 0-based permutation ``sigma``."""
    return tuple(tuple(a[si][sj] for sj in sigma) for si in sigma)


def permute_columns(a: Matrix, sigma: Sequence[int]) -> Matrix:
    """Column ``j`` of the result is column ``sigma[j]`` of ``a`` (0-based)."""
    return tuple(tuple(row[s] for s in sigma) for row in a)


def pos(b: int) -> int:
    return b if b > 0 else 0


def mutate_matrix(a: Matrix, k: int) -> Matrix:
    """Mutate an m x n matrix (m >= n) in the 1-based direction ``k``.

    Row and column ``k`` change sign; every other entry becomes
    ``a[i][j] + [a[i][k]]_+ * a[k][j] + a[i][k] * [-a[k][j]]_+``.
    The top n x n block is expected to be skew-symmetrizable; the rule is
    applied verbatim either way.
    """
    m, n = shape(a)
    if not 1 <= k <= n:
        raise InputError(f"direction {k} out of range 1..{n}")
    if m < n:
        raise InputError(f"matrix has {m} rows but {n} columns; need rows >= columns")
    k -= 1
    rk = a[k]
    out = []
    for i, row in enumerate(a):
        aik = row[k]
        if i == k:
            out.append(tuple(-x for x in row))
            continue
        if aik == 0:
            out.append(tuple(x if j != k else 0 for j, x in enumerate(row)))
            continue
        new = []
        for j, x in enumerate(row):
            if j == k:
                new.append(-x)
            else:
                akj = rk[j]
                new.append(x + pos(aik) * akj + aik * pos(-akj))
        out.append(tuple(new))
    return tuple(out)


def is_skew_symmetrized_by(b: Matrix, s: Sequence[int]) -> bool:
    n = len(b)
    if len(s) != n or any(x <= 0 for x in s):
        return False
    return all(s[i] * b[i][j] == -s[j] * b[j][i] for i in range(n) for j in range(i, n))


def find_skew_symmetrizer(b: Matrix) -> Vector | None:
    """Componentwise-minimal positive integer skew-symmetrizer of ``b``, or ``None``.

    Each connected component of the nonzero pattern gets its own scale,
    normalized so the entries of that component have gcd 1.
    """
    n, cols = shape(b)
    if n != cols:
        raise InputError(f"exchange matrix must be square, got {n}x{cols}")
    for i in range(n):
        for j in range(n):
            if (b[i][j] == 0) != (b[j][i] == 0):
                return None
            if b[i][j] and (b[i][j] > 0) == (b[j][i] > 0):
                return None
    ratio: list[Fraction | None] = [None] * n
    for start in range(n):
        if ratio[start] is not None:
            continue
        ratio[start] = Fraction(1)
        component = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if b[i][j] == 0:
                    continue
                # s_i b_ij = -s_j b_ji
                want = ratio[i] * b[i][j] / -b[j][i]
                if ratio[j] is None:
                    ratio[j] = want
                    component.append(j)
                    queue.append(j)
                elif ratio[j] != want:
                    return None
        den = lcm(*(ratio[i].denominator for i in component))
        ints = [int(ratio[i] * den) for i in component]
        g = gcd(*ints)
        for i, v in zip(component, ints):
            ratio[i] = Fraction(v // g)
    return tuple(int(r) for r in ratio)


def determinant(a: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n, cols = shape(a)
    if n != cols:
        raise InputError(f"determinant needs a square matrix, got {n}x{cols}")
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rational_inverse(a: Matrix) -> tuple[tuple[Fraction, ...], ...]:
    n, cols = shape(a)
    if n != cols:
        raise InputError(f"inverse needs a square matrix, got {n}x{cols}")
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            raise NotUnimodularError(0)
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def unimodular_inverse(a: Matrix) -> Matrix:
    """Exact integer inverse of a matrix with determinant +1 or -1."""
    det = determinant(a)
    if det not in (1, -1):
        raise NotUnimodularError(det)
    inv = rational_inverse(a)
    return tuple(tuple(int(x) for x in row) for row in inv)


@dataclass(frozen=True)
class ExchangeMatrix:
    """A skew-symmetrizable square matrix together with its skew-symmetrizer."""

    B: Matrix
    S: Vector

    def __post_init__(self):
        n, cols = shape(self.B)
        if n != cols:
            raise InputError(f"exchange matrix must be square, got {n}x{cols}")
        if not is_skew_symmetrized_by(self.B, self.S):
            raise NotSkewSymmetrizableError(f"S={list(self.S)} does not skew-symmetrize B={[list(r) for r in self.B]}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], S: Sequence[int] | None = None) -> ExchangeMatrix:
        b = as_matrix(rows)
        if S is None:
            found = find_skew_symmetrizer(b)
            if found is None:
                raise NotSkewSymmetrizableError(f"B={[list(r) for r in b]} is not skew-symmetrizable")
            S = found
        return cls(b, tuple(int(x) for x in S))

    @property
    def n(self) -> int:
        return len(self.B)

    def mutate(self, k: int) -> ExchangeMatrix:
        return ExchangeMatrix(mutate_matrix(self.B, k), self.S)

    def transpose(self) -> ExchangeMatrix:
        return ExchangeMatrix.from_rows(transpose(self.B))

    def opposite(self) -> ExchangeMatrix:
        return ExchangeMatrix(negate(self.B), self.S)
