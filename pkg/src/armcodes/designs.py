"""Partitions, double covers, group divisible designs, and their verifiers.

A double cover here is a family of partitions of one point set such that
every 2-subset of points lies inside a part of exactly two partitions.  The
pairwise regime distinguishes the three variants: any two partitions share
exactly one commonly covered 2-subset (the classical orthogonal double
cover), at least one (the extended variant used to build length 3q-1 codes),
or at most one (the sub variant).

The point set may carry a distinguished point ``INF`` that is fixed by all
translation arithmetic; it is never an integer alias and serializes as the
token ``inf``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .report import PreconditionError, StructureError, VerificationReport, make_report


class Infinity:
    """Singleton sentinel for the fixed point; compares after all integers."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __reduce__(self):  # pickling (multiprocess search) keeps the singleton
        return (Infinity, ())


INF = Infinity()

Point = "int | Infinity"


def point_key(p):
    """Sort key placing integers in order and INF after every integer."""
    if p is INF or isinstance(p, Infinity):
        return (1, 0)
    return (0, p)


def translate(p, j: int, mod: int):
    """p + j reduced mod `mod`, with INF fixed."""
    if p is INF or isinstance(p, Infinity):
        return INF
    return (p + j) % mod


@dataclass(frozen=True)
class PointSet:
    """{0..size-1}, or {0..size-2} plus INF when has_infinity is set."""

    size: int
    has_infinity: bool = False

    def __post_init__(self):
        if self.size < 2:
            raise StructureError(f"point set needs at least 2 points, got {self.size}")

    def points(self) -> tuple:
        if self.has_infinity:
            return tuple(range(self.size - 1)) + (INF,)
        return tuple(range(self.size))

    def __contains__(self, p) -> bool:
        if p is INF or isinstance(p, Infinity):
            return self.has_infinity
        return isinstance(p, int) and 0 <= p < (self.size - 1 if self.has_infinity else self.size)

    def index(self, p) -> int:
        """Row index of a point: integers map to themselves, INF comes last."""
        if p is INF or isinstance(p, Infinity):
            if not self.has_infinity:
                raise StructureError("point set has no infinity point")
            return self.size - 1
        return p


def _freeze_part(part) -> frozenset:
    out = set()
    for p in part:
        if p is INF or isinstance(p, Infinity):
            out.add(INF)
        elif isinstance(p, int) and not isinstance(p, bool):
            out.add(p)
        else:
            raise StructureError(f"invalid point {p!r}")
    if not out:
        raise StructureError("empty part in partition")
    return frozenset(out)


def _part_sort_key(part: frozenset):
    return (-len(part), point_key(min(part, key=point_key)))


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty parts, stored sorted by (size desc, min point asc)."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((_freeze_part(p) for p in self.parts), key=_part_sort_key))
        seen = set()
        for part in parts:
            if seen & part:
                raise StructureError(f"parts are not disjoint at {sorted(seen & part, key=point_key)}")
            seen |= part
        object.__setattr__(self, "parts", parts)

    def support(self) -> frozenset:
        return frozenset().union(*self.parts)

    def covered_pairs(self) -> frozenset:
        """All 2-subsets contained in a part."""
        out = set()
        for part in self.parts:
            out.update(frozenset(c) for c in combinations(sorted(part, key=point_key), 2))
        return frozenset(out)

    def translated(self, j: int, mod: int) -> "Partition":
        return Partition(tuple(frozenset(translate(p, j, mod) for p in part) for part in self.parts))

    def part_of(self, p) -> frozenset:
        for part in self.parts:
            if p in part:
                return part
        raise StructureError(f"point {p!r} not in partition")


GraphType = tuple  # multiset of part sizes, sorted descending


def graph_type_of(p: Partition) -> GraphType:
    return tuple(sorted((len(part) for part in p.parts), reverse=True))


def format_graph_type(gt: GraphType) -> str:
    from collections import Counter
    items = Counter(gt)
    return " ".join(f"{c}K{s}" if c > 1 else f"K{s}"
                    for s, c in sorted(items.items(), reverse=True))


@dataclass(frozen=True)
class PartitionSystem:
    """A family of partitions of one common point set."""

    points: PointSet
    partitions: tuple

    def __post_init__(self):
        partitions = tuple(self.partitions)
        if not partitions:
            raise StructureError("partition system needs at least one partition")
        universe = frozenset(self.points.points())
        for i, part in enumerate(partitions):
            if not isinstance(part, Partition):
                raise StructureError(f"partition {i} is not a Partition")
            if part.support() != universe:
                raise StructureError(f"partition {i} does not cover the point set")
        object.__setattr__(self, "partitions", partitions)

    @property
    def m(self) -> int:
        return self.points.size

    @property
    def n(self) -> int:
        return len(self.partitions)


@dataclass(frozen=True)
class GddDesign:
    """Grouped points with blocks; properties are checked by verify_gdd."""

    points: PointSet
    groups: Partition
    blocks: tuple
    block_size: int

    def __post_init__(self):
        universe = frozenset(self.points.points())
        if self.groups.support() != universe:
            raise StructureError("groups do not partition the point set")
        blocks = tuple(sorted((frozenset(b) for b in self.blocks),
                              key=lambda b: sorted(b, key=point_key)))
        for b in blocks:
            if not b <= universe:
                raise StructureError(f"block {sorted(b, key=point_key)} leaves the point set")
        object.__setattr__(self, "blocks", blocks)

    def type_vector(self) -> str:
        """Group sizes in exponential notation, e.g. 2^7 or 2^18 17^1."""
        from collections import Counter
        sizes = Counter(len(g) for g in self.groups.parts)
        return " ".join(f"{s}^{c}" for s, c in sorted(sizes.items()))


@dataclass(frozen=True)
class BasePartition:
    """One partition of Z_{m-1} + INF into triples, developed cyclically.

    Structural shape only; the two developing properties (every nonzero
    difference appearing exactly twice inside triples, and every nonzero
    shift aligning some covered pair onto a covered pair) are the job of
    verify_base_partition.
    """

    order: int  # m, even and divisible by 3
    triples: Partition

    def __post_init__(self):
        m = self.order
        if m < 6 or m % 6 != 0:
            raise StructureError(f"base partition order must be a positive multiple of 6, got {m}")
        expected = frozenset(range(m - 1)) | {INF}
        if self.triples.support() != expected:
            raise StructureError("triples must partition Z_{m-1} plus inf")
        if any(len(part) != 3 for part in self.triples.parts):
            raise StructureError("all parts must be triples")

    @property
    def modulus(self) -> int:
        return self.order - 1


MODES = ("exact", "at_least", "at_most")


def verify_double_cover(ps: PartitionSystem, mode: str) -> VerificationReport:
    """Check the double-cover conditions on a partition system.

    Condition (i): every 2-subset of the point set is covered by exactly two
    partitions.  Condition (ii): every pair of partitions covers a common
    2-subset exactly once / at least once / at most once, per `mode`.  The
    report's witness is the first offending point pair or partition pair.
    """
    if mode not in MODES:
        raise StructureError(f"mode must be one of {MODES}, got {mode!r}")
    covered = [part.covered_pairs() for part in ps.partitions]

    counts: dict = {}
    for pairs in covered:
        for pr in pairs:
            counts[pr] = counts.get(pr, 0) + 1
    cover_witness = None
    cover_violations = 0
    for pair in combinations(sorted(ps.points.points(), key=point_key), 2):
        c = counts.get(frozenset(pair), 0)
        if c != 2:
            cover_violations += 1
            if cover_witness is None:
                cover_witness = ("pair", tuple(pair), c)

    pair_witness = None
    pair_violations = 0
    for i, j in combinations(range(len(covered)), 2):
        common = len(covered[i] & covered[j])
        ok = (common == 1 if mode == "exact" else
              common >= 1 if mode == "at_least" else
              common <= 1)
        if not ok:
            pair_violations += 1
            if pair_witness is None:
                pair_witness = ("partitions", (i, j), common)

    cond_i = cover_violations == 0
    cond_ii = pair_violations == 0
    return make_report(
        cond_i, cond_ii,
        witness=cover_witness if not cond_i else pair_witness,
        violations=cover_violations + pair_violations,
        details={"mode": mode, "coverage_violations": cover_violations,
                 "pairwise_violations": pair_violations},
    )


def verify_gdd(g: GddDesign) -> VerificationReport:
    """Check the three defining properties of a group divisible design.

    Condition (i): every block has the declared size and meets every group
    in at most one point.  Condition (ii): every cross-group 2-subset lies
    in exactly one block.
    """
    k = g.block_size
    witness_i = None
    violations_i = 0
    group_of = {}
    for gi, grp in enumerate(g.groups.parts):
        for p in grp:
            group_of[p] = gi
    for bi, block in enumerate(g.blocks):
        if len(block) != k:
            violations_i += 1
            if witness_i is None:
                witness_i = ("block_size", bi, len(block))
            continue
        hit = {}
        for p in block:
            gi = group_of[p]
            hit[gi] = hit.get(gi, 0) + 1
        bad = [gi for gi, c in hit.items() if c > 1]
        if bad:
            violations_i += 1
            if witness_i is None:
                witness_i = ("block_meets_group_twice", bi, bad[0])

    counts: dict = {}
    for block in g.blocks:
        for pair in combinations(sorted(block, key=point_key), 2):
            fp = frozenset(pair)
            counts[fp] = counts.get(fp, 0) + 1
    witness_ii = None
    violations_ii = 0
    pts = sorted(g.points.points(), key=point_key)
    for pair in combinations(pts, 2):
        a, b = pair
        if group_of[a] == group_of[b]:
            c = counts.get(frozenset(pair), 0)
            if c != 0:
                violations_ii += 1
                if witness_ii is None:
                    witness_ii = ("within_group_pair_covered", pair, c)
        else:
            c = counts.get(frozenset(pair), 0)
            if c != 1:
                violations_ii += 1
                if witness_ii is None:
                    witness_ii = ("cross_pair_coverage", pair, c)

    cond_i = violations_i == 0
    cond_ii = violations_ii == 0
    return make_report(
        cond_i, cond_ii,
        witness=witness_i if not cond_i else witness_ii,
        violations=violations_i + violations_ii,
        details={"type": g.type_vector(), "blocks": len(g.blocks)},
    )


def _finite_pairs(bp: BasePartition):
    for triple in bp.triples.parts:
        finite = sorted((p for p in triple if p is not INF), key=point_key)
        for a, b in combinations(finite, 2):
            yield a, b


def verify_base_partition(bp: BasePartition) -> VerificationReport:
    """Check the two developing properties of a base partition.

    Condition (i): over all 2-subsets of triples avoiding INF, the multiset
    of differences {+-(a-b)} equals two copies of the nonzero residues mod
    m-1, which makes every pair of points covered exactly twice once the
    partition is developed.  Condition (ii): for every nonzero shift i some
    covered pair maps onto a covered pair under +i (INF staying fixed),
    which makes any two translates share a covered pair.  Same-triple
    alignments count; a pair cannot align to itself for i != 0 because the
    modulus is odd.
    """
    n = bp.modulus
    diff_counts = [0] * n
    for a, b in _finite_pairs(bp):
        diff_counts[(a - b) % n] += 1
        diff_counts[(b - a) % n] += 1
    witness_i = None
    violations_i = 0
    for d in range(1, n):
        if diff_counts[d] != 2:
            violations_i += 1
            if witness_i is None:
                witness_i = ("difference_multiplicity", d, diff_counts[d])

    covered = bp.triples.covered_pairs()
    witness_ii = None
    violations_ii = 0
    for i in range(1, n):
        hit = False
        for pair in covered:
            shifted = frozenset(translate(p, i, n) for p in pair)
            if shifted in covered:
                hit = True
                break
        if not hit:
            violations_ii += 1
            if witness_ii is None:
                witness_ii = ("shift_without_alignment", i)

    cond_i = violations_i == 0
    cond_ii = violations_ii == 0
    return make_report(
        cond_i, cond_ii,
        witness=witness_i if not cond_i else witness_ii,
        violations=violations_i + violations_ii,
        details={"order": bp.order},
    )


def develop_base_partition(bp: BasePartition) -> PartitionSystem:
    """All m-1 cyclic translates of a verified base partition."""
    rep = verify_base_partition(bp)
    if not rep.passed:
        raise PreconditionError(f"base partition fails its developing properties: {rep.witness}")
    n = bp.modulus
    partitions = tuple(bp.triples.translated(j, n) for j in range(n))
    return PartitionSystem(points=PointSet(size=bp.order, has_infinity=True),
                           partitions=partitions)
