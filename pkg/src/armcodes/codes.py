"""Armstrong codes and independent brute-force verifiers.

A (q,k,n)-Armstrong code is a q-ary code of length n with minimum Hamming
distance n-k+1 in which every (k-1)-set of coordinates is the exact
agreement set of some pair of codewords.  The generalized (q,k,n)_{s,t}
variant replaces pairs of codewords by (t+1)-subsets of rows and "agree" by
"at most s distinct symbols per column": condition (i) demands that any t+1
rows admit at most k-1 columns that are <=s-valued on them, condition (ii)
that any k-1 columns admit t+1 rows that are <=s-valued on each of those
columns while some column takes t+1 distinct values on them.  The classical
definition is the (s,t) = (1,1) case.

Symbols are 1-based (entries in 1..q), matching the standard printed form
of such instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .report import CeilingError, PreconditionError, StructureError, VerificationReport, make_report

# Exhaustive (t+1)-row-subset enumeration guard; override via ARMCODES_ST_CEILING.
DEFAULT_ST_CEILING = 2_000_000


@dataclass(frozen=True)
class ArmstrongCode:
    """An m x n matrix over {1..q} with declared (q, k) and optional (s, t)."""

    q: int
    k: int
    rows: tuple
    s: int = 1
    t: int = 1

    def __post_init__(self):
        if self.q < 2:
            raise StructureError(f"alphabet size q must be at least 2, got {self.q}")
        if self.k < 2:
            raise StructureError(f"key parameter k must exceed 1, got {self.k}")
        if not 1 <= self.s <= self.t:
            raise StructureError(f"need 1 <= s <= t, got s={self.s} t={self.t}")
        if self.q <= self.s or self.q <= self.t:
            raise StructureError(
                f"alphabet must exceed both dependency parameters: q={self.q}, s={self.s}, t={self.t}")
        rows = tuple(tuple(r) for r in self.rows)
        if not rows:
            raise StructureError("code needs at least one row")
        n = len(rows[0])
        if n == 0:
            raise StructureError("code needs at least one column")
        for i, r in enumerate(rows):
            if len(r) != n:
                raise StructureError(f"row {i} has length {len(r)}, expected {n}")
            for v in r:
                if not isinstance(v, int) or not 1 <= v <= self.q:
                    raise StructureError(f"entry {v!r} in row {i} outside 1..{self.q}")
        if len(set(rows)) != len(rows):
            raise StructureError("duplicate rows are not allowed")
        object.__setattr__(self, "rows", rows)

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])


def agreement_set(c: ArmstrongCode, a: int, b: int) -> frozenset:
    """Columns (0-based) where rows a and b hold equal symbols."""
    if a == b:
        raise PreconditionError("agreement set needs two distinct rows")
    ra, rb = c.rows[a], c.rows[b]
    return frozenset(i for i in range(c.n) if ra[i] == rb[i])


def min_distance(c: ArmstrongCode) -> int:
    """Minimum pairwise Hamming distance; needs at least two rows."""
    if c.m < 2:
        raise PreconditionError("minimum distance needs at least two rows")
    best = c.n + 1
    for ra, rb in combinations(c.rows, 2):
        d = sum(1 for x, y in zip(ra, rb) if x != y)
        if d < best:
            best = d
    return best


def verify_armstrong(c: ArmstrongCode) -> VerificationReport:
    """Exhaustively check the classical two conditions.

    Condition (i): every pairwise agreement set has size at most k-1
    (equivalently, minimum distance at least n-k+1).  Condition (ii): the
    agreement sets of size exactly k-1 cover all C(n, k-1) coordinate
    subsets.
    """
    if (c.s, c.t) != (1, 1):
        raise PreconditionError("verify_armstrong applies to codes with s=t=1")
    k = c.k
    witness_i = None
    violations_i = 0
    exact_sets = set()
    for a, b in combinations(range(c.m), 2):
        ag = agreement_set(c, a, b)
        if len(ag) > k - 1:
            violations_i += 1
            if witness_i is None:
                witness_i = ("rows", (a, b), sorted(ag))
        elif len(ag) == k - 1:
            exact_sets.add(ag)

    witness_ii = None
    violations_ii = 0
    for cols in combinations(range(c.n), k - 1):
        if frozenset(cols) not in exact_sets:
            violations_ii += 1
            if witness_ii is None:
                witness_ii = ("columns", cols)

    cond_i = violations_i == 0
    cond_ii = violations_ii == 0
    return make_report(
        cond_i, cond_ii,
        witness=witness_i if not cond_i else witness_ii,
        violations=violations_i + violations_ii,
        details={"q": c.q, "k": k, "n": c.n, "m": c.m},
    )


def _st_condition_ii_witness(c: ArmstrongCode, cols: tuple) -> bool:
    """Does some (t+1)-row subset fit condition (ii) on these columns?"""
    s, t = c.s, c.t
    if t + 1 > c.m:
        return False
    if s == 1:
        # Rows must share one value per chosen column: group rows by their
        # projection, then look for a column that is (t+1)-valued inside a group.
        groups: dict = {}
        for idx, row in enumerate(c.rows):
            groups.setdefault(tuple(row[j] for j in cols), []).append(idx)
        for members in groups.values():
            if len(members) < t + 1:
                continue
            for j in range(c.n):
                seen = set()
                for idx in members:
                    seen.add(c.rows[idx][j])
                    if len(seen) >= t + 1:
                        return True
        return False
    for subset in combinations(range(c.m), t + 1):
        ok = True
        for j in cols:
            if len({c.rows[i][j] for i in subset}) > s:
                ok = False
                break
        if not ok:
            continue
        for j in range(c.n):
            if len({c.rows[i][j] for i in subset}) == t + 1:
                return True
    return False


def verify_st_armstrong(c: ArmstrongCode, budget: int | None = None,
                        seed: int = 0, ceiling: int | None = None) -> VerificationReport:
    """Check the generalized (s,t) conditions.

    Condition (i) enumerates all (t+1)-row subsets exhaustively unless a
    `budget` caps it at that many seeded random samples; exhaustive mode is
    refused outright when C(m, t+1) exceeds the configured ceiling.
    Condition (ii) searches for a witness row subset per (k-1)-column set.
    """
    from .report import ceiling as _ceiling
    s, t, k = c.s, c.t, c.k
    total = comb(c.m, t + 1)
    cap = ceiling if ceiling is not None else _ceiling("ST_CEILING", DEFAULT_ST_CEILING)
    exhaustive = budget is None
    if exhaustive and total > cap:
        raise CeilingError(
            f"C({c.m},{t + 1}) = {total} row subsets exceed ceiling {cap}; "
            "pass a budget to sample instead")

    witness_i = None
    violations_i = 0
    if exhaustive:
        subsets = combinations(range(c.m), t + 1)
    else:
        rng = random.Random(seed)
        subsets = (tuple(sorted(rng.sample(range(c.m), t + 1)))
                   for _ in range(min(budget, total)))
    for subset in subsets:
        low = 0
        for j in range(c.n):
            if len({c.rows[i][j] for i in subset}) <= s:
                low += 1
                if low > k - 1:
                    break
        if low > k - 1:
            violations_i += 1
            if witness_i is None:
                witness_i = ("rows", subset)

    witness_ii = None
    violations_ii = 0
    for cols in combinations(range(c.n), k - 1):
        if not _st_condition_ii_witness(c, cols):
            violations_ii += 1
            if witness_ii is None:
                witness_ii = ("columns", cols)

    cond_i = violations_i == 0
    cond_ii = violations_ii == 0
    return make_report(
        cond_i, cond_ii,
        witness=witness_i if not cond_i else witness_ii,
        checked_exhaustively=exhaustive,
        violations=violations_i + violations_ii,
        details={"q": c.q, "k": k, "n": c.n, "m": c.m, "s": s, "t": t},
    )
