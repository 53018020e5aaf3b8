"""Positive and negative cluster Poisson variables.

The tropical evaluation of ``y_{k;t}`` is the monomial whose exponent vector
is the k-th c-vector, so a Poisson variable is positive exactly when its
c-vector is non-negative.  A seed is recovered, up to relabeling, from the
cluster variables sitting at its negative positions (as a Bongartz
completion) or at its positive positions (as a co-completion).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .bongartz import CompletionResult, VariableSet, cocomplete_search, complete_bfs
from .errors import InvariantViolation
from .laurent import SymbolicSeed, variable_id
from .search import Caps, Status
from .matrix_core import Vector
from .seeds import Seed, canonical_permutation, sign_of


class Sign(enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"


@dataclass(frozen=True)
class PoissonVariableTag:
    position: int
    sign: Sign
    c_vector: Vector


def classify(seed: Seed | SymbolicSeed) -> list[PoissonVariableTag]:
    base = seed.base if isinstance(seed, SymbolicSeed) else seed
    tags = []
    for k in range(1, base.n + 1):
        c = base.c_vector(k)
        s = sign_of(c)
        if s == 0:
            raise InvariantViolation(f"c-vector {k} = {list(c)} is zero or mixed", base.history)
        tags.append(PoissonVariableTag(k, Sign.POSITIVE if s > 0 else Sign.NEGATIVE, c))
    return tags


def alpha(seed: SymbolicSeed, k: int) -> bytes:
    """Id of the cluster variable at the same position as ``y_{k;t}``."""
    return variable_id(seed.xvars[k - 1])


def signed_ids(seed: SymbolicSeed, sign: Sign) -> frozenset[bytes]:
    """``alpha`` applied to the Poisson variables of the given sign."""
    return frozenset(alpha(seed, t.position) for t in classify(seed) if t.sign is sign)


@dataclass(frozen=True)
class Reconstruction:
    """A reconstructed seed plus the relabeling that makes it canonical."""

    result: CompletionResult
    canonical_permutation: tuple[int, ...] | None

    @property
    def found(self) -> bool:
        return self.result.found

    @property
    def seed(self) -> Seed | None:
        return self.result.seed


def _check_roundtrip(result: CompletionResult, ids: frozenset[bytes], sign: Sign) -> None:
    if result.symbolic is None:
        return
    if signed_ids(result.symbolic, sign) != ids:
        raise InvariantViolation(
            f"reconstructed seed does not reproduce the {sign.value.lower()} variables", result.seed.history
        )


def reconstruct_from_negative(
    witness: SymbolicSeed, negative_ids: Iterable[bytes], caps: Caps | None = None
) -> Reconstruction:
    """The seed whose negative Poisson variables map under ``alpha`` to ``negative_ids``.

    ``witness`` is any seed whose cluster contains those variables.
    """
    ids = frozenset(negative_ids)
    search = complete_bfs(witness, VariableSet(ids=ids), caps)
    if not search.results:
        return Reconstruction(CompletionResult(Status.NOT_FOUND_WITHIN_BOUNDS, visited=search.visited), None)
    result = search.results[0]
    _check_roundtrip(result, ids, Sign.NEGATIVE)
    return Reconstruction(result, canonical_permutation(result.seed))


def reconstruct_from_positive(
    witness: SymbolicSeed, positive_ids: Iterable[bytes], caps: Caps | None = None
) -> Reconstruction:
    ids = frozenset(positive_ids)
    result = cocomplete_search(witness, VariableSet(ids=ids), caps)
    if not result.found:
        return Reconstruction(result, None)
    _check_roundtrip(result, ids, Sign.POSITIVE)
    return Reconstruction(result, canonical_permutation(result.seed))


def classification_report(seed: Seed | SymbolicSeed) -> list[dict]:
    """Per-position sign, c-vector and (when available) the cluster variable."""
    rows = []
    for tag in classify(seed):
        row = {"position": tag.position, "sign": tag.sign.value, "c_vector": list(tag.c_vector)}
        if isinstance(seed, SymbolicSeed):
            row["variable"] = seed.xvars[tag.position - 1].render()
        rows.append(row)
    return rows


__all__ = [
    "PoissonVariableTag",
    "Reconstruction",
    "Sign",
    "alpha",
    "classification_report",
    "classify",
    "reconstruct_from_negative",
    "reconstruct_from_positive",
    "signed_ids",
]
