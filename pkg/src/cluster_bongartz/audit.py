"""Randomized invariant audits along mutation walks.

Each walk starts at a root, applies a random word and checks, at every
visited seed, sign-coherence, tropical duality and unimodularity (all done
by :func:`mutate_seed`), the transpose identity ``(C_t)^T = G_{t0}^{B_t^T; t}``,
exact Laurent division, agreement of the coefficient layer with the matrix
layer, and the two g-pair tests.
"""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .bongartz import VariableSet, g_pair_alt_check, is_g_pair
from .errors import ClusterError, InvariantViolation
from .laurent import SymbolicSeed, mutation_cost, symbolic_root
from .matrix_core import ExchangeMatrix, Matrix, transpose
from .seeds import Seed, new_root, replay

# Laurent tracking of a walk stops once the next mutation is estimated to need
# more than this many term operations.
DEFAULT_TERM_BUDGET = 200_000


def random_exchange_matrix(rng: random.Random, n: int, bound: int = 3) -> ExchangeMatrix:
    """A random skew-symmetrizable n x n matrix with entries in ``[-bound, bound]``."""
    s = [rng.choice((1, 1, 1, 2, 3)) for _ in range(n)]
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            # s_i b_ij = -s_j b_ji
            choices = [x for x in range(-bound, bound + 1) if (s[i] * x) % s[j] == 0 and abs(s[i] * x // s[j]) <= bound]
            x = rng.choice(choices)
            b[i][j] = x
            b[j][i] = -(s[i] * x) // s[j]
    return ExchangeMatrix.from_rows(b)


def random_word(rng: random.Random, n: int, length: int) -> tuple[int, ...]:
    """A word of the given length without immediate repetitions (for n > 1)."""
    word: list[int] = []
    for _ in range(length):
        choices = [k for k in range(1, n + 1) if not word or k != word[-1] or n == 1]
        word.append(rng.choice(choices))
    return tuple(word)


def transpose_lemma_holds(seed: Seed) -> bool:
    """``(C_t^{B;t0})^T == G_{t0}^{B_t^T; t}``, computed by replaying the reversed word."""
    back = replay(transpose(seed.B), tuple(reversed(seed.history)))
    return back.G == transpose(seed.C)


@dataclass
class AuditReport:
    walks: int = 0
    seeds: int = 0
    checks: Counter = field(default_factory=Counter)
    violations: list[str] = field(default_factory=list)
    laurent_truncated: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: AuditReport) -> None:
        self.walks += other.walks
        self.seeds += other.seeds
        self.checks.update(other.checks)
        self.violations.extend(other.violations)
        self.laurent_truncated += other.laurent_truncated

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "walks": self.walks,
            "seeds": self.seeds,
            "checks": dict(sorted(self.checks.items())),
            "laurent_truncated_walks": self.laurent_truncated,
            "violations": self.violations,
        }


def audit_walk(root: ExchangeMatrix | Matrix, word, *, term_budget: int = DEFAULT_TERM_BUDGET) -> AuditReport:
    """Audit every seed along ``word`` from ``root``."""
    report = AuditReport(walks=1)
    sym: SymbolicSeed | None = symbolic_root(root)
    seed = new_root(root)
    root_ids = sym.cluster()
    visited_sym = [sym]
    try:
        for k in word:
            seed = seed.mutate(k)
            report.seeds += 1
            report.checks["sign_coherence+duality+det"] += 1
            report.checks["transpose_lemma"] += 1
            if not transpose_lemma_holds(seed):
                report.violations.append(f"transpose lemma fails at {seed.history}")
            if sym is not None:
                if mutation_cost(sym, k) > term_budget:
                    sym = None
                    report.laurent_truncated += 1
                    continue
                sym = sym.mutate(k)
                report.checks["laurent_exact_division"] += 1
                report.checks["layer_consistency"] += 1
                if not sym.base.same_matrices(seed):
                    report.violations.append(f"symbolic and matrix layers diverge at {seed.history}")
                visited_sym.append(sym)
    except ClusterError as exc:
        report.violations.append(str(exc))
        return report
    # g-pair equivalence on pairs of visited seeds, U inside the initial cluster
    last = visited_sym[-1]
    for t_prime in visited_sym:
        common = [vid for vid in t_prime.cluster_ids() if vid in root_ids]
        for r in range(len(common) + 1):
            for sub in combinations(common, r):
                U = VariableSet(ids=frozenset(sub))
                report.checks["g_pair_equivalence"] += 1
                if is_g_pair(last, t_prime, U) != g_pair_alt_check(last, t_prime, U):
                    report.violations.append(
                        f"g-pair tests disagree for t={last.history}, t'={t_prime.history}, |U|={r}"
                    )
    return report


def _run_one(args) -> AuditReport:
    root, word, budget = args
    return audit_walk(root, word, term_budget=budget)


def audit(
    root: ExchangeMatrix | Matrix | None,
    *,
    walks: int,
    depth: int,
    seed: int = 0,
    max_rank: int = 4,
    bound: int = 3,
    term_budget: int = DEFAULT_TERM_BUDGET,
    threads: int = 1,
) -> AuditReport:
    """Run ``walks`` random walks of length up to ``depth``.

    With ``root=None`` every walk draws its own random root of rank at most
    ``max_rank``.  Results do not depend on ``threads``.
    """
    rng = random.Random(seed)
    jobs = []
    for _ in range(walks):
        if root is None:
            r = random_exchange_matrix(rng, rng.randint(1, max_rank), bound)
        else:
            r = root if isinstance(root, ExchangeMatrix) else ExchangeMatrix.from_rows(root)
        jobs.append((r, random_word(rng, r.n, rng.randint(1, depth)), term_budget))
    total = AuditReport()
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_run_one, jobs))
    else:
        parts = [_run_one(j) for j in jobs]
    for part in parts:
        total.merge(part)
    return total


def audit_seed(seed: Seed) -> None:
    """Check a seed read from a file: structural invariants and agreement with its history."""
    seed.check_invariants()
    if seed.history is not None:
        expected = replay(ExchangeMatrix(seed.root_B, seed.S), seed.history)
        if not expected.same_matrices(seed):
            raise InvariantViolation("stored B, C, G differ from replaying the history", seed.history)
