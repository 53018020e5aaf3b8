"""Sparse integer Laurent polynomials and symbolic seeds with principal coefficients.

Polynomials live in ``2n`` variables: slots ``0..n-1`` are the initial cluster
variables ``x1..xn`` and slots ``n..2n-1`` the principal coefficients
``y1..yn``.  Coefficients in the tropical semifield ``Trop(y1..yn)`` are
Laurent monomials, stored as :class:`TropMonomial` exponent vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InputError, InvariantViolation, LaurentDivisionError
from .matrix_core import ExchangeMatrix, Matrix, Vector, column, pos
from .seeds import Seed, check_word, mutate_seed, new_root

Exponent = tuple[int, ...]


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]], nvars: int):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, int] = {}
        for exp, coeff in items:
            if len(exp) != nvars:
                raise InputError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            acc[exp] = acc.get(exp, 0) + coeff
        self._terms = {e: c for e, c in acc.items() if c}
        self.nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, int], nvars: int) -> LaurentPoly:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.nvars = nvars
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> LaurentPoly:
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c: int, nvars: int) -> LaurentPoly:
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: int = 1) -> LaurentPoly:
        exp = tuple(exp)
        return cls._raw({exp: coeff} if coeff else {}, len(exp))

    @classmethod
    def gen(cls, i: int, nvars: int) -> LaurentPoly:
        """The ``i``-th (0-based) generator."""
        return cls.monomial(tuple(int(j == i) for j in range(nvars)))

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponent, int]]:
        """Terms in canonical order: exponent vectors lexicographically descending."""
        return sorted(self._terms.items(), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Exponent, int]]:
        return iter(self.items())

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: LaurentPoly):
        if self.nvars != other.nvars:
            raise InputError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __eq__(self, other):
        if isinstance(other, int):
            return self == LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.nvars)
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other: int) -> LaurentPoly:
        return LaurentPoly.constant(other, self.nvars) - self

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()} if other else {}, self.nvars)
        self._check(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly._raw(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._terms) != 1:
                raise InputError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise InputError("only unit monomials have inverses over the integers")
            return LaurentPoly.monomial(tuple(-x * -k for x in e), c ** -k)
        result = LaurentPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exp: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial with exponent vector ``exp``."""
        return LaurentPoly._raw(
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()}, self.nvars
        )

    def min_exponent(self) -> Exponent:
        return tuple(min(col) for col in zip(*self._terms))

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        return lp_exact_div(self, other)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()!r})"

    def render(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            half = self.nvars // 2
            names = [f"x{i + 1}" for i in range(half)] + [f"y{i + 1}" for i in range(self.nvars - half)]
        if not self._terms:
            return "0"
        parts = []
        for exp, coeff in self.items():
            factors = []
            for name, a in zip(names, exp):
                if a == 1:
                    factors.append(name)
                elif a:
                    factors.append(f"{name}^{a}")
            mono = "*".join(factors)
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return q with ``a == q * b``; raise :class:`LaurentDivisionError` otherwise.

    Both operands are first shifted to honest polynomials without monomial
    content; a Laurent quotient of such polynomials is then itself a
    polynomial, found by long division under the lexicographic order.
    """
    a._check(b)
    if b.is_zero():
        raise LaurentDivisionError(a.render(), "0")
    if a.is_zero():
        return a
    shift_a = a.min_exponent()
    shift_b = b.min_exponent()
    a0 = a.shift([-x for x in shift_a])
    b0 = b.shift([-x for x in shift_b])
    lead_e, lead_c = max(b0._terms.items())
    rem = dict(a0._terms)
    quot: dict[Exponent, int] = {}
    while rem:
        e, c = max(rem.items())
        d = tuple(x - y for x, y in zip(e, lead_e))
        if any(x < 0 for x in d) or c % lead_c:
            raise LaurentDivisionError(a.render(), b.render())
        q = c // lead_c
        quot[d] = q
        for be, bc in b0._terms.items():
            t = tuple(x + y for x, y in zip(be, d))
            v = rem.get(t, 0) - q * bc
            if v:
                rem[t] = v
            else:
                del rem[t]
    shift = [x - y for x, y in zip(shift_a, shift_b)]
    return LaurentPoly._raw(quot, a.nvars).shift(shift)


@dataclass(frozen=True)
class TropMonomial:
    """A Laurent monomial in ``y1..yn``, i.e. an element of ``Trop(y1..yn)``."""

    exponents: Vector

    def __len__(self) -> int:
        return len(self.exponents)

    def __mul__(self, other: TropMonomial) -> TropMonomial:
        _same_len(self, other)
        return TropMonomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, k: int) -> TropMonomial:
        return TropMonomial(tuple(a * k for a in self.exponents))

    def inverse(self) -> TropMonomial:
        return self ** -1

    def __add__(self, other: TropMonomial) -> TropMonomial:
        return trop_add(self, other)

    @classmethod
    def one(cls, n: int) -> TropMonomial:
        return cls((0,) * n)

    def as_poly(self, n: int) -> LaurentPoly:
        """Embed as a monomial in the y-slots of a ``2n``-variable polynomial."""
        return LaurentPoly.monomial((0,) * n + self.exponents)

    def render(self) -> str:
        factors = [f"y{i + 1}" if a == 1 else f"y{i + 1}^{a}" for i, a in enumerate(self.exponents) if a]
        return "*".join(factors) or "1"


def _same_len(u: TropMonomial, v: TropMonomial) -> None:
    if len(u) != len(v):
        raise InputError(f"tropical monomials of different lengths {len(u)} and {len(v)}")


def trop_add(u: TropMonomial, v: TropMonomial) -> TropMonomial:
    """Tropical sum: componentwise minimum of exponents."""
    _same_len(u, v)
    return TropMonomial(tuple(min(a, b) for a, b in zip(u.exponents, v.exponents)))


def g_vector_of(p: LaurentPoly, root_B: Matrix) -> Vector:
    """Degree of a homogeneous polynomial under ``deg x_i = e_i``, ``deg y_i = -b_i``.

    ``b_i`` is the i-th column of ``root_B``.  Raises
    :class:`InvariantViolation` when the terms do not share one degree.
    """
    n = len(root_B)
    if p.nvars != 2 * n:
        raise InputError(f"polynomial has {p.nvars} variables, expected {2 * n}")
    if p.is_zero():
        raise InputError("the zero polynomial has no degree")
    cols = [column(root_B, j) for j in range(n)]
    degree = None
    for exp, _ in p.items():
        d = list(exp[:n])
        for j, e in enumerate(exp[n:]):
            if e:
                for i in range(n):
                    d[i] -= e * cols[j][i]
        d = tuple(d)
        if degree is None:
            degree = d
        elif d != degree:
            raise InvariantViolation(f"{p.render()} is not homogeneous: degrees {list(degree)} and {list(d)}")
    return degree


def variable_id(p: LaurentPoly) -> bytes:
    """Canonical byte encoding; equal ids iff equal polynomials."""
    body = ";".join(f"{c}:{','.join(map(str, e))}" for e, c in p.items())
    return f"{p.nvars}|{body}".encode()


@dataclass(frozen=True)
class SymbolicSeed:
    """A seed together with its cluster (Laurent polynomials) and tropical coefficients."""

    base: Seed
    xvars: tuple[LaurentPoly, ...]
    yvars: tuple[TropMonomial, ...]

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def history(self):
        return self.base.history

    def mutate(self, k: int, *, check: bool = True) -> SymbolicSeed:
        return mutate_symbolic(self, k, check=check)

    def mutate_word(self, word: Iterable[int], *, check: bool = True) -> SymbolicSeed:
        seed = self
        for k in check_word(word, self.n):
            seed = mutate_symbolic(seed, k, check=check)
        return seed

    def cluster_ids(self) -> tuple[bytes, ...]:
        return tuple(variable_id(x) for x in self.xvars)

    def cluster(self) -> frozenset[bytes]:
        return frozenset(self.cluster_ids())

    def positions_of(self, ids: Iterable[bytes]) -> tuple[int, ...]:
        """1-based positions of the given variable ids; raises if one is absent."""
        lookup = {vid: i + 1 for i, vid in enumerate(self.cluster_ids())}
        out = []
        for vid in ids:
            if vid not in lookup:
                raise InputError(f"variable {vid.decode()} is not in this cluster")
            out.append(lookup[vid])
        return tuple(sorted(out))

    def check_consistency(self) -> None:
        base = self.base
        for j in range(self.n):
            if self.yvars[j].exponents != base.c_vector(j + 1):
                raise InvariantViolation(
                    f"y{j + 1} exponent {list(self.yvars[j].exponents)} differs from c-vector {list(base.c_vector(j + 1))}",
                    base.history,
                )
            g = g_vector_of(self.xvars[j], base.root_B)
            if g != base.g_vector(j + 1):
                raise InvariantViolation(
                    f"degree {list(g)} of x{j + 1} differs from g-vector {list(base.g_vector(j + 1))}", base.history
                )

    def render_cluster(self) -> list[str]:
        return [x.render() for x in self.xvars]


def symbolic_root(B: ExchangeMatrix | Matrix | Iterable[Iterable[int]]) -> SymbolicSeed:
    base = new_root(B)
    n = base.n
    xs = tuple(LaurentPoly.gen(i, 2 * n) for i in range(n))
    ys = tuple(TropMonomial(tuple(int(i == j) for i in range(n))) for j in range(n))
    return SymbolicSeed(base, xs, ys)


def mutation_cost(s: SymbolicSeed, k: int) -> int:
    """Upper estimate of the term operations needed by ``mutate_symbolic(s, k)``."""
    kk = k - 1
    plus = minus = 1
    for i in range(s.n):
        bik = s.base.B[i][kk]
        if bik > 0:
            plus *= comb(len(s.xvars[i]) + bik - 1, bik)
        elif bik < 0:
            minus *= comb(len(s.xvars[i]) - bik - 1, -bik)
    return (plus + minus) * len(s.xvars[kk])


def mutate_symbolic(s: SymbolicSeed, k: int, *, check: bool = True) -> SymbolicSeed:
    """Mutate cluster, coefficients and matrices in lockstep (1-based ``k``).

    The new cluster variable is
    ``(y_k prod x_i^[b_ik]_+ + prod x_i^[-b_ik]_+) / ((y_k (+) 1) x_k)`` with the
    tropical sum ``y_k (+) 1``; the final division must be exact.
    """
    n = s.n
    if not 1 <= k <= n:
        raise InputError(f"direction {k} out of range 1..{n}")
    kk = k - 1
    b = s.base.B
    yk = s.yvars[kk]
    yk_plus_one = trop_add(yk, TropMonomial.one(n))
    ys = []
    for j in range(n):
        if j == kk:
            ys.append(yk.inverse())
        else:
            bkj = b[kk][j]
            ys.append(s.yvars[j] * yk ** pos(bkj) * yk_plus_one ** -bkj)
    nv = 2 * n
    plus = LaurentPoly.constant(1, nv)
    minus = LaurentPoly.constant(1, nv)
    for i in range(n):
        bik = b[i][kk]
        if bik > 0:
            plus = plus * s.xvars[i] ** bik
        elif bik < 0:
            minus = minus * s.xvars[i] ** -bik
    numerator = (plus * yk.as_poly(n) + minus) * yk_plus_one.inverse().as_poly(n)
    try:
        new_x = lp_exact_div(numerator, s.xvars[kk])
    except LaurentDivisionError as exc:
        hist = None if s.base.history is None else s.base.history + (k,)
        raise InvariantViolation(f"Laurent phenomenon violated: {exc}", hist) from None
    xs = list(s.xvars)
    xs[kk] = new_x
    out = SymbolicSeed(mutate_seed(s.base, k, check=check), tuple(xs), tuple(ys))
    if check:
        out.check_consistency()
    return out


def symbolic_replay(root_B, word: Iterable[int], *, check: bool = True) -> SymbolicSeed:
    seed = symbolic_root(root_B)
    return seed.mutate_word(word, check=check)


def parse_poly(text: str, n: int) -> LaurentPoly:
    """Parse the deterministic rendering produced by :meth:`LaurentPoly.render`."""
    names = {f"x{i + 1}": i for i in range(n)} | {f"y{i + 1}": n + i for i in range(n)}
    nv = 2 * n
    src = text.replace(" ", "")
    if not src:
        raise InputError("empty polynomial")
    terms: dict[Exponent, int] = {}
    chunks = []
    cur = ""
    for ch in src:
        if ch in "+-" and cur and not cur.endswith("^"):
            chunks.append(cur)
            cur = ch
        else:
            cur += ch
    chunks.append(cur)
    for chunk in chunks:
        sign = 1
        if chunk[0] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:]
        coeff = 1
        exp = [0] * nv
        for factor in chunk.split("*"):
            if not factor:
                raise InputError(f"malformed term in {text!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, _, power = factor.partition("^")
            if name not in names:
                raise InputError(f"unknown variable {name!r} in {text!r}")
            try:
                exp[names[name]] += int(power) if power else 1
            except ValueError:
                raise InputError(f"bad exponent in {factor!r}") from None
        e = tuple(exp)
        terms[e] = terms.get(e, 0) + sign * coeff
    return LaurentPoly(terms, nv)


__all__ = [
    "LaurentPoly",
    "SymbolicSeed",
    "TropMonomial",
    "g_vector_of",
    "lp_add",
    "lp_exact_div",
    "lp_mul",
    "mutate_symbolic",
    "parse_poly",
    "symbolic_replay",
    "symbolic_root",
    "trop_add",
    "variable_id",
]
