"""Named exchange matrices used by the tests and the command line."""

from __future__ import annotations

from .matrix_core import ExchangeMatrix

FIXTURES: dict[str, tuple[tuple[int, ...], ...]] = {
    "A1": ((0,),),
    "A2": ((0, 1), (-1, 0)),
    # linear orientation 1 -> 2 -> 3
    "A3": ((0, 1, 0), (-1, 0, 1), (0, -1, 0)),
    "B2": ((0, 1), (-2, 0)),
    "G2": ((0, 1), (-3, 0)),
    "Markov": ((0, 2, -2), (-2, 0, 2), (2, -2, 0)),
}


def fixture(name: str) -> ExchangeMatrix:
    try:
        return ExchangeMatrix.from_rows(FIXTURES[name])
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None
