"""Command-line interface: ``cluster-bongartz <command> SEEDFILE ...``.

Exit codes: 0 success, 2 malformed input, 3 invariant violation,
4 nothing found within the search bounds.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .audit import DEFAULT_TERM_BUDGET, audit, audit_seed
from .bongartz import VariableSet, cocomplete_search, complete
from .errors import InputError, InvariantViolation
from .fixtures import FIXTURES
from .laurent import SymbolicSeed, symbolic_replay
from .matrix_core import ExchangeMatrix, as_matrix
from .quiver import build_quiver, green_to_red_search
from .search import MAX_VERTICES_ENV, Caps, Status
from .seeds import Seed, check_word, reduce_word, replay

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INVARIANT = 3
EXIT_NOT_FOUND = 4


class SeedFile:
    """Parsed seed file.

    ``B`` is the exchange matrix at the root; ``history`` (optional) is a
    word applied to it.  A file may also carry explicit ``C`` and ``G``
    matrices, in which case it describes a stored seed that is checked
    rather than recomputed.
    """

    def __init__(self, data: Any, source: str = "<input>"):
        if not isinstance(data, dict):
            raise InputError(f"{source}: top level must be a JSON object")
        self.source = source
        n = data.get("n")
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise InputError(f"{source}: field 'n' must be a positive integer, got {n!r}")
        if "B" not in data:
            raise InputError(f"{source}: missing field 'B'")
        try:
            rows = as_matrix(data["B"], cols=n)
        except InputError as exc:
            raise InputError(f"{source}: field 'B': {exc}") from None
        if len(rows) != n:
            raise InputError(f"{source}: field 'B' has {len(rows)} rows, expected n={n}")
        self.n = n
        self.root = ExchangeMatrix.from_rows(rows, data.get("S"))
        hist = data.get("history") or ()
        if isinstance(hist, str):
            hist = parse_word(hist)
        try:
            self.history = check_word(hist, n)
        except InputError as exc:
            raise InputError(f"{source}: field 'history': {exc}") from None
        sym = data.get("symbolic", False)
        if not isinstance(sym, bool):
            raise InputError(f"{source}: field 'symbolic' must be true or false")
        self.symbolic = sym
        self.stored = None
        if "C" in data or "G" in data:
            stored = dict(data)
            stored.setdefault("history", list(self.history))
            try:
                self.stored = Seed.from_dict(stored, check=False)
            except InputError as exc:
                raise InputError(f"{source}: {exc}") from None

    @classmethod
    def load(cls, location: str) -> SeedFile:
        """Read a path, ``-`` for stdin, or ``fixture:NAME``."""
        if location.startswith("fixture:"):
            name = location.split(":", 1)[1]
            if name not in FIXTURES:
                raise InputError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
            rows = FIXTURES[name]
            return cls({"n": len(rows), "B": [list(r) for r in rows]}, location)
        try:
            text = sys.stdin.read() if location == "-" else Path(location).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {location}: {exc.strerror}") from None
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{location}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return cls(data, location)

    def seed(self, extra: Sequence[int] = (), *, symbolic: bool = False) -> Seed | SymbolicSeed:
        if self.stored is not None:
            audit_seed(self.stored)
            if extra and not symbolic:
                return self.stored.mutate_word(extra)
            if symbolic:
                raise InputError("--symbolic needs a seed file without stored C/G")
            return self.stored
        word = self.history + tuple(extra)
        if symbolic or self.symbolic:
            return symbolic_replay(self.root, word)
        return replay(self.root, word)


def parse_word(text: str) -> tuple[int, ...]:
    """``"2 1 2"`` or ``"2,1,2"`` -> ``(2, 1, 2)``; empty text is the empty word."""
    parts = text.replace(",", " ").split()
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise InputError(f"mutation word must be integers, got {text!r}") from None


def _caps(args) -> Caps:
    try:
        caps = Caps.default(args.max_vertices, args.max_depth)
    except ValueError:
        raise InputError(f"{MAX_VERTICES_ENV} must be an integer") from None
    if caps.max_vertices < 1 or caps.max_depth < 0:
        raise InputError("caps must be positive")
    return caps


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(text_lines))


def _matrix_lines(name: str, m) -> list[str]:
    if not m:
        return [f"{name} = []"]
    width = max(len(str(x)) for row in m for x in row)
    pad = " " * (len(name) + 3)
    lines = []
    for i, row in enumerate(m):
        body = " ".join(str(x).rjust(width) for x in row)
        lines.append(f"{name} = [{body}]" if i == 0 else f"{pad}[{body}]")
    return lines


def _seed_lines(seed: Seed | SymbolicSeed) -> list[str]:
    base = seed.base if isinstance(seed, SymbolicSeed) else seed
    hist = "?" if base.history is None else " ".join(map(str, base.history))
    lines = [f"history: {hist}"]
    for name in ("B", "C", "G"):
        lines += _matrix_lines(name, getattr(base, name))
    if isinstance(seed, SymbolicSeed):
        for i, x in enumerate(seed.render_cluster(), 1):
            lines.append(f"x{i} = {x}")
        for i, y in enumerate(seed.yvars, 1):
            lines.append(f"y{i} = {y.render()}")
    return lines


def _seed_payload(seed: Seed | SymbolicSeed) -> dict:
    base = seed.base if isinstance(seed, SymbolicSeed) else seed
    out = base.to_dict()
    if isinstance(seed, SymbolicSeed):
        out["cluster"] = seed.render_cluster()
        out["coefficients"] = [y.render() for y in seed.yvars]
    return out


def cmd_mutate(args) -> int:
    sf = SeedFile.load(args.seedfile)
    seed = sf.seed(parse_word(args.word), symbolic=args.symbolic)
    _emit(args, _seed_payload(seed), _seed_lines(seed))
    return EXIT_OK


def _completion(args, co: bool) -> int:
    sf = SeedFile.load(args.seedfile)
    witness = sf.seed(parse_word(args.witness), symbolic=not args.positional and sf.stored is None)
    n = sf.n
    positions = parse_word(args.u)
    if len(set(positions)) != len(positions) or any(not 1 <= p <= n for p in positions):
        raise InputError(f"U positions must be distinct and in 1..{n}, got {list(positions)}")
    if isinstance(witness, SymbolicSeed):
        U = VariableSet.from_seed(witness, positions)
    else:
        U = VariableSet.at_positions(positions)
    caps = _caps(args)
    if co:
        res = cocomplete_search(witness, U, caps)
    else:
        res = complete(witness, U, caps, method=args.method)
    lines = [f"status: {res.status.value}", f"visited: {res.visited}"]
    if res.found:
        lines.append("word from witness: " + " ".join(map(str, res.word)))
        lines.append("U positions: " + " ".join(map(str, res.u_positions)))
        if res.seed.history is not None:
            lines.append("reduced word from root: " + " ".join(map(str, reduce_word(res.seed.history))))
        lines += _seed_lines(res.symbolic or res.seed)
    _emit(args, res.to_dict(), lines)
    return EXIT_OK if res.found else EXIT_NOT_FOUND


def cmd_complete(args) -> int:
    return _completion(args, co=False)


def cmd_cocomplete(args) -> int:
    return _completion(args, co=True)


def cmd_quiver(args) -> int:
    sf = SeedFile.load(args.seedfile)
    seed = sf.seed()
    q = build_quiver(seed.exchange_matrix, _caps(args))
    q.check_orientation()
    idx = q.index()
    summary = [
        q.summary(),
        "sources: " + " ".join(f"v{idx[k]}" for k in q.sources()),
        "sinks: " + " ".join(f"v{idx[k]}" for k in q.sinks()),
    ]
    graph = None
    if args.dot:
        graph = f"// {summary[0]}\n" + q.to_dot(show_c=args.show_c)
    elif args.json:
        d = q.to_dict()
        d["summary"] = summary[0]
        graph = json.dumps(d, sort_keys=True) + "\n"
    if graph is None:
        print("\n".join(summary))
    elif args.output:
        Path(args.output).write_text(graph)
        print("\n".join(summary))
    else:
        sys.stdout.write(graph)
    return EXIT_OK


def cmd_g2r(args) -> int:
    sf = SeedFile.load(args.seedfile)
    res = green_to_red_search(sf.seed().exchange_matrix, _caps(args))
    payload = {
        "status": (Status.FOUND if res.found else Status.NOT_FOUND_WITHIN_BOUNDS).value,
        "word": None if res.word is None else list(res.word),
        "visited": res.visited,
        "exhaustive": res.saturated,
    }
    if res.found:
        lines = [" ".join(map(str, res.word))]
    else:
        kind = "none exists" if res.saturated else "none within bounds"
        lines = [f"no green-to-red sequence ({kind}; {res.visited} seeds visited)"]
    _emit(args, payload, lines)
    return EXIT_OK if res.found else EXIT_NOT_FOUND


def cmd_verify(args) -> int:
    sf = SeedFile.load(args.seedfile)
    if sf.stored is not None:
        audit_seed(sf.stored)
    else:
        sf.seed()
    root = None if args.random_roots else sf.root
    report = audit(
        root,
        walks=args.walks,
        depth=args.depth,
        seed=args.seed,
        max_rank=args.max_rank,
        term_budget=args.term_budget,
        threads=args.threads,
    )
    d = report.to_dict()
    lines = [f"walks: {d['walks']}", f"seeds: {d['seeds']}"]
    lines += [f"{name}: {count} checks" for name, count in d["checks"].items()]
    lines.append(f"walks with truncated Laurent tracking: {d['laurent_truncated_walks']}")
    lines += [f"VIOLATION: {v}" for v in d["violations"]]
    lines.append("all invariants pass" if report.ok else f"{len(d['violations'])} violations")
    _emit(args, d, lines)
    return EXIT_OK if report.ok else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cluster-bongartz",
        description="Seed mutation, Bongartz completion and exchange quivers for skew-symmetrizable matrices.",
        epilog="SEEDFILE is a JSON path, '-' for stdin, or fixture:NAME "
        f"({', '.join(FIXTURES)}).  Words and positions are 1-based.  "
        "Exit codes: 0 ok, 2 bad input, 3 invariant violation, 4 not found within bounds.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, caps=False):
        sp.add_argument("seedfile", help="seed file (JSON), '-' or fixture:NAME")
        sp.add_argument("--json", action="store_true", help="machine-readable JSON output")
        if caps:
            sp.add_argument("--max-vertices", type=int, help=f"vertex cap (default 100000 or ${MAX_VERTICES_ENV})")
            sp.add_argument("--max-depth", type=int, help="depth cap for searches (default 24)")

    sp = sub.add_parser("mutate", help="mutate a seed along a word")
    common(sp)
    sp.add_argument("--word", default="", help='mutation word, e.g. "2 1 2"')
    sp.add_argument("--symbolic", action="store_true", help="also compute the Laurent cluster and coefficients")
    sp.set_defaults(func=cmd_mutate)

    for name, func, help_ in (
        ("complete", cmd_complete, "Bongartz completion of a set of cluster variables"),
        ("cocomplete", cmd_cocomplete, "Bongartz co-completion of a set of cluster variables"),
    ):
        sp = sub.add_parser(name, help=help_)
        common(sp, caps=True)
        sp.add_argument("--witness", default="", help="word from the root to a seed containing U")
        sp.add_argument("--u", default="", help="positions of U in the witness seed, e.g. \"2\"")
        sp.add_argument(
            "--positional", action="store_true", help="skip Laurent tracking and keep U at fixed positions"
        )
        if name == "complete":
            sp.add_argument("--method", choices=("bfs", "greedy"), default="bfs")
        sp.set_defaults(func=func)

    sp = sub.add_parser("quiver", help="build the exchange quiver")
    common(sp, caps=True)
    sp.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    sp.add_argument("--show-c", action="store_true", help="put C-matrices into DOT labels")
    sp.add_argument("-o", "--output", help="write the graph here and print the summary")
    sp.set_defaults(func=cmd_quiver)

    sp = sub.add_parser("g2r", help="search for a green-to-red sequence")
    common(sp, caps=True)
    sp.set_defaults(func=cmd_g2r)

    sp = sub.add_parser("verify", help="randomized invariant audit")
    common(sp)
    sp.add_argument("--walks", type=int, default=100)
    sp.add_argument("--depth", type=int, default=8, help="maximal walk length")
    sp.add_argument("--seed", type=int, default=0, help="random seed")
    sp.add_argument("--threads", type=int, default=1, help="worker processes")
    sp.add_argument("--random-roots", action="store_true", help="draw a random root per walk instead of SEEDFILE")
    sp.add_argument("--max-rank", type=int, default=4, help="rank bound for --random-roots")
    sp.add_argument(
        "--term-budget", type=int, default=DEFAULT_TERM_BUDGET, help="stop Laurent tracking above this cost"
    )
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
