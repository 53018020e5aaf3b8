"""Search bounds, verdicts and frames shared by the graph searches."""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass

from .errors import InputError
from .matrix_core import ExchangeMatrix
from .seeds import MutationWord, Seed, reduce_word, replay

DEFAULT_MAX_VERTICES = 100_000
DEFAULT_MAX_DEPTH = 24
MAX_VERTICES_ENV = "CLUSTER_BONGARTZ_MAX_VERTICES"


class Status(enum.Enum):
    FOUND = "Found"
    NOT_FOUND_WITHIN_BOUNDS = "NotFoundWithinBounds"


@dataclass(frozen=True)
class Caps:
    max_vertices: int = DEFAULT_MAX_VERTICES
    max_depth: int = DEFAULT_MAX_DEPTH

    @classmethod
    def default(cls, max_vertices: int | None = None, max_depth: int | None = None) -> Caps:
        """Defaults, with ``CLUSTER_BONGARTZ_MAX_VERTICES`` overriding the vertex cap."""
        if max_vertices is None:
            env = os.environ.get(MAX_VERTICES_ENV)
            max_vertices = int(env) if env else DEFAULT_MAX_VERTICES
        return cls(max_vertices, DEFAULT_MAX_DEPTH if max_depth is None else max_depth)


@dataclass(frozen=True)
class Frame:
    """The initial seed that c-vectors are measured against.

    ``B`` is the exchange matrix placed at the tree vertex reached from the
    global root by ``path``.  The default frame is the global root itself; a
    frame at another seed ``s`` expresses "with respect to s", and the
    opposite frame puts ``-B_s`` there.
    """

    B: ExchangeMatrix
    path: MutationWord = ()

    @classmethod
    def root_of(cls, seed: Seed) -> Frame:
        return cls(ExchangeMatrix.from_rows(seed.root_B), ())

    @classmethod
    def at(cls, seed: Seed) -> Frame:
        if seed.history is None:
            raise InputError("a frame needs a seed with a mutation history")
        return cls(seed.exchange_matrix, seed.history)

    @classmethod
    def opposite_at(cls, seed: Seed) -> Frame:
        if seed.history is None:
            raise InputError("a frame needs a seed with a mutation history")
        return cls(seed.exchange_matrix.opposite(), seed.history)

    def relative(self, seed: Seed) -> Seed:
        """``seed``'s tree vertex, with principal coefficients at this frame."""
        if seed.history is None:
            raise InputError("relabeled seeds carry no tree position")
        if not self.path and self.B.B == seed.root_B and self.B.S == seed.S:
            return seed
        return replay(self.B, reduce_word(tuple(reversed(self.path)) + seed.history))
