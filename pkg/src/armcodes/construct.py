"""Explicit code and double-cover constructions, each post-checked by the
independent verifiers in `codes` and `designs`.

Families implemented here:

* column-per-partition codes from double covers (exact and at-least
  pairwise regimes);
* extended double covers from 4-GDDs, for odd q (type 2^u) and for even
  q >= 18 (type 2^u 17^1 plus a seed cover of 18 points);
* the near 1-factorization of K_{2q-1} and the (q,4,2q-1)_{2,2} code built
  on it;
* the (q,2)_{1,t} code of length C(qt+1, t+1), finished by a perfect
  matching driven symbol rearrangement;
* extended Reed-Solomon codes of length q+1;
* the randomized block construction behind the local-lemma existence
  bound.

Constructions never self-certify: `validate=True` (the default) runs the
matching verifier and raises on failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from .codes import ArmstrongCode, verify_armstrong, verify_st_armstrong
from .designs import (
    INF,
    GddDesign,
    Partition,
    PartitionSystem,
    PointSet,
    graph_type_of,
    point_key,
    verify_double_cover,
    verify_gdd,
)
from .gf import field_make
from .report import CeilingError, PreconditionError, StructureError, ceiling

DEFAULT_K2_CEILING = 100_000   # columns of the k=2 construction
DEFAULT_RS_CEILING = 20_000    # rows q^k of the Reed-Solomon construction

# ---------------------------------------------------------------------------
# codes from double covers


def canonical_ordering(ps: PartitionSystem) -> tuple:
    """Default part order per partition: the canonical stored order."""
    return tuple(p.parts for p in ps.partitions)


def _check_ordering(ps: PartitionSystem, ordering) -> tuple:
    ordering = tuple(tuple(frozenset(part) for part in level) for level in ordering)
    if len(ordering) != ps.n:
        raise StructureError(f"ordering covers {len(ordering)} partitions, system has {ps.n}")
    for idx, (level, partition) in enumerate(zip(ordering, ps.partitions)):
        if sorted(level, key=id) and set(level) != set(partition.parts) or len(level) != len(partition.parts):
            raise StructureError(f"ordering for partition {idx} is not a bijection on its parts")
    return ordering


def _cover_to_rows(ps: PartitionSystem, ordering) -> tuple:
    pts = ps.points.points()
    symbol = [{} for _ in range(ps.n)]
    for col, level in enumerate(ordering):
        for j, part in enumerate(level, start=1):
            for p in part:
                symbol[col][p] = j
    return tuple(tuple(symbol[col][p] for col in range(ps.n)) for p in pts)


def odc_to_code(ps: PartitionSystem, ordering=None, validate: bool = True) -> ArmstrongCode:
    """Code from an exact double cover: one column per partition, the cell of
    point i being the 1-based index of its part.  Rows indexed by points in
    canonical order (integers ascending, the fixed point last)."""
    part_counts = {len(p.parts) for p in ps.partitions}
    if len(part_counts) != 1:
        raise StructureError(f"partitions have unequal part counts {sorted(part_counts)}")
    rep = verify_double_cover(ps, "exact")
    if not rep.passed:
        raise PreconditionError(f"system is not an exact double cover: {rep.witness}")
    q = part_counts.pop()
    ordering = canonical_ordering(ps) if ordering is None else _check_ordering(ps, ordering)
    code = ArmstrongCode(q=q, k=3, rows=_cover_to_rows(ps, ordering))
    if validate:
        out = verify_armstrong(code)
        if not out.passed:
            raise AssertionError(f"constructed code failed verification: {out.witness}")
    return code


def extodc_to_code(ps: PartitionSystem, ordering=None, validate: bool = True) -> ArmstrongCode:
    """Code from an at-least double cover by q triangles on 3q points.

    The output is a (3q) x (3q-1) code over q symbols: the partition count
    of such a cover is forced to 3q-1 by pair counting (each of the C(3q,2)
    pairs is covered twice and each partition covers 3q pairs).
    """
    types = {graph_type_of(p) for p in ps.partitions}
    if len(types) != 1 or set(types.pop()) != {3}:
        raise StructureError("all partitions must consist of triples")
    q = len(ps.partitions[0].parts)
    if ps.m != 3 * q:
        raise StructureError(f"expected {3 * q} points for q={q}, got {ps.m}")
    rep = verify_double_cover(ps, "at_least")
    if not rep.passed:
        raise PreconditionError(f"system is not an at-least double cover: {rep.witness}")
    ordering = canonical_ordering(ps) if ordering is None else _check_ordering(ps, ordering)
    code = ArmstrongCode(q=q, k=3, rows=_cover_to_rows(ps, ordering))
    if validate:
        out = verify_armstrong(code)
        if not out.passed:
            raise AssertionError(f"constructed code failed verification: {out.witness}")
    return code


# ---------------------------------------------------------------------------
# extended double covers from 4-GDDs


def gdd_to_extodc_odd(g: GddDesign, validate: bool = True) -> PartitionSystem:
    """At-least double cover of K_{2u+1} from a 4-GDD of type 2^u.

    For each point x the partition B_x consists of the truncated blocks
    B - {x} over blocks through x, plus the part (group of x) + {inf}.  Any
    two B_x, B_y share the covered pair {x,y} (same group) or B - {x,y}
    (x, y in one block), and every pair lands in exactly two partitions.
    """
    rep = verify_gdd(g)
    if not rep.passed:
        raise PreconditionError(f"input is not a valid GDD: {rep.witness}")
    if g.block_size != 4:
        raise StructureError(f"need block size 4, got {g.block_size}")
    if any(len(grp) != 2 for grp in g.groups.parts):
        raise StructureError(f"need type 2^u, got {g.type_vector()}")
    if g.points.has_infinity:
        raise StructureError("GDD points must be plain integers")
    u = len(g.groups.parts)
    group_of = {p: grp for grp in g.groups.parts for p in grp}
    partitions = []
    for x in range(2 * u):
        parts = [frozenset(b - {x}) for b in g.blocks if x in b]
        parts.append(frozenset(group_of[x]) | {INF})
        partitions.append(Partition(tuple(parts)))
    ps = PartitionSystem(points=PointSet(size=2 * u + 1, has_infinity=True),
                         partitions=tuple(partitions))
    if validate:
        out = verify_double_cover(ps, "at_least")
        if not out.passed:
            raise AssertionError(f"constructed cover failed verification: {out.witness}")
    return ps


def gdd_to_extodc_even(g: GddDesign, seed: PartitionSystem, validate: bool = True) -> PartitionSystem:
    """At-least double cover of K_{3q} (q even >= 18) from a 4-GDD of type
    2^u 17^1 and a seed cover of the long group plus the fixed point.

    The seed must be an at-least double cover by 6 triangles on 18 points;
    its 17 partitions are attached to the 17 long-group points in canonical
    point order (any bijection works, the verifier certifies the result).
    Points outside the long group contribute their truncated blocks plus
    (own group + inf); long-group points contribute truncated blocks plus
    their seed partition.
    """
    rep = verify_gdd(g)
    if not rep.passed:
        raise PreconditionError(f"input is not a valid GDD: {rep.witness}")
    if g.block_size != 4:
        raise StructureError(f"need block size 4, got {g.block_size}")
    sizes = sorted(len(grp) for grp in g.groups.parts)
    if sizes[-1] != 17 or set(sizes[:-1]) != {2}:
        raise StructureError(f"need type 2^u 17^1, got {g.type_vector()}")
    long_group = sorted(next(grp for grp in g.groups.parts if len(grp) == 17))
    seed_rep = verify_double_cover(seed, "at_least")
    if not seed_rep.passed:
        raise PreconditionError(f"seed is not an at-least double cover: {seed_rep.witness}")
    if seed.m != 18 or not seed.points.has_infinity or seed.n != 17:
        raise PreconditionError("seed must have 17 partitions of 17 points plus inf")
    if any(set(graph_type_of(p)) != {3} for p in seed.partitions):
        raise PreconditionError("seed partitions must consist of triples")

    # Relabel the seed onto long_group + {inf}: seed point i -> i-th point of
    # the long group, partition j -> the partition attached to that point.
    relabel = {i: long_group[i] for i in range(17)}
    relabel[INF] = INF
    seed_parts = {}
    for j, partition in enumerate(seed.partitions):
        mapped = Partition(tuple(frozenset(relabel[p] for p in part) for part in partition.parts))
        seed_parts[long_group[j]] = mapped

    u = sum(1 for grp in g.groups.parts if len(grp) == 2)
    group_of = {p: grp for grp in g.groups.parts for p in grp}
    v = 2 * u + 17
    partitions = []
    for x in range(v):
        parts = [frozenset(b - {x}) for b in g.blocks if x in b]
        if x in seed_parts:
            parts.extend(seed_parts[x].parts)
        else:
            parts.append(frozenset(group_of[x]) | {INF})
        partitions.append(Partition(tuple(parts)))
    ps = PartitionSystem(points=PointSet(size=v + 1, has_infinity=True),
                         partitions=tuple(partitions))
    if validate:
        out = verify_double_cover(ps, "at_least")
        if not out.passed:
            raise AssertionError(f"constructed cover failed verification: {out.witness}")
    return ps


# ---------------------------------------------------------------------------
# near 1-factorizations and the (q,4,2q-1)_{2,2} code


@dataclass(frozen=True)
class NearOneFactorization:
    """K_{2q-1} decomposed into 2q-1 near-perfect matchings T_i.

    T_i = {{t+i, -t+i} : t in 1..q-1} over Z_n misses exactly the point i;
    an edge {x,y} lies in T_i exactly when x + y = 2i (mod n).  Edges are
    stored in ascending-t order, which is the canonical edge numbering used
    by the code construction.
    """

    n: int
    factors: tuple  # factors[i] = tuple of edges, edge = (t+i mod n, -t+i mod n)

    def missing_point(self, i: int) -> int:
        return i

    def edge_index(self, i: int, s: int) -> int:
        """1-based index of the edge of T_i incident to point s != i."""
        n = self.n
        t = (s - i) % n
        if t == 0:
            raise PreconditionError(f"point {s} is the point missed by T_{i}")
        return t if t <= (n - 1) // 2 else n - t

    def contains_edge(self, i: int, x: int, y: int) -> bool:
        return x != y and (x + y) % self.n == (2 * i) % self.n


def near_one_factorization(q: int) -> NearOneFactorization:
    if q < 2:
        raise StructureError(f"q must be at least 2, got {q}")
    n = 2 * q - 1
    factors = tuple(
        tuple(((t + i) % n, (-t + i) % n) for t in range(1, q))
        for i in range(n)
    )
    return NearOneFactorization(n=n, factors=factors)


def triangle_witness(nof: NearOneFactorization, i: int, j: int, k: int) -> tuple:
    """Points (x,y,z) with {x,y} in T_i, {y,z} in T_j, {z,x} in T_k.

    The three membership equations x+y=2i, y+z=2j, z+x=2k have the unique
    solution below because the order n is odd; distinctness of i, j, k makes
    the three points pairwise distinct.
    """
    if len({i, j, k}) != 3:
        raise PreconditionError("factor indices must be pairwise distinct")
    n = nof.n
    x = (i - j + k) % n
    y = (i + j - k) % n
    z = (-i + j + k) % n
    assert nof.contains_edge(i, x, y) and nof.contains_edge(j, y, z) and nof.contains_edge(k, z, x)
    return x, y, z


def st22_code(q: int, validate: bool = True) -> ArmstrongCode:
    """The (q,4,2q-1)_{2,2} code over the near 1-factorization of K_{2q-1}.

    Rows and columns are both indexed by Z_{2q-1}; the cell (s, i) holds the
    canonical index of the edge of T_i through s, and the diagonal cell
    (i, i) holds the spare symbol q.
    """
    if q < 3:
        raise PreconditionError(f"q must be at least 3, got {q}")
    nof = near_one_factorization(q)
    n = nof.n
    rows = tuple(
        tuple(q if s == i else nof.edge_index(i, s) for i in range(n))
        for s in range(n)
    )
    code = ArmstrongCode(q=q, k=4, rows=rows, s=2, t=2)
    if validate:
        out = verify_st_armstrong(code)
        if not out.passed:
            raise AssertionError(f"constructed code failed verification: {out.witness}")
    return code


# ---------------------------------------------------------------------------
# the k=2 construction and its matching-driven rearrangement


def bipartite_matching(adjacency) -> list:
    """Perfect matching in a regular bipartite graph by augmenting paths.

    `adjacency[i]` lists the right-side neighbours of left vertex i; both
    sides must have the same number of vertices and every vertex the same
    degree (checked).  Returns match[i] = right vertex matched to left i.
    """
    adjacency = [tuple(nbrs) for nbrs in adjacency]
    n = len(adjacency)
    right_deg = [0] * n
    degs = set()
    for nbrs in adjacency:
        degs.add(len(nbrs))
        for v in nbrs:
            if not 0 <= v < n:
                raise StructureError(f"right vertex {v} out of range 0..{n - 1}")
            right_deg[v] += 1
    if len(degs) != 1 or set(right_deg) != degs:
        raise StructureError("graph is not regular bipartite")

    match_right = [-1] * n

    def augment(u, seen):
        for v in adjacency[u]:
            if v in seen:
                continue
            seen.add(v)
            if match_right[v] == -1 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in range(n):
        if not augment(u, set()):
            raise AssertionError("regular bipartite graph lacked a perfect matching")
    match_left = [-1] * n
    for v, u in enumerate(match_right):
        match_left[u] = v
    return match_left


def _rearrange_column(column: list, v_rows: tuple, special_rows: frozenset,
                      q: int, t: int) -> list:
    """Reassign the t-multiplicity symbols of a column so the rows of `v_rows`
    take pairwise distinct values; the (t+1)-multiplicity symbol stays put on
    `special_rows`.  Greedy with backtracking over symbol choices."""
    other_rows = [r for r in range(len(column)) if r not in special_rows]
    need_distinct = [r for r in v_rows if r not in special_rows]
    symbols = [sym for sym in range(1, q + 1) if sym != column[special_rows.__iter__().__next__()]]
    capacity = {sym: t for sym in symbols}

    assignment = {}

    def backtrack(idx):
        if idx == len(need_distinct):
            return True
        row = need_distinct[idx]
        used = {assignment[r] for r in need_distinct[:idx]}
        for sym in symbols:
            if capacity[sym] > 0 and sym not in used:
                capacity[sym] -= 1
                assignment[row] = sym
                if backtrack(idx + 1):
                    return True
                capacity[sym] += 1
                del assignment[row]
        return False

    if not backtrack(0):
        raise PreconditionError(
            f"cannot give {len(need_distinct)} rows distinct symbols from {len(symbols)} available")
    rest = [r for r in other_rows if r not in assignment]
    fill = []
    for sym in symbols:
        fill.extend([sym] * capacity[sym])
    out = list(column)
    for row, sym in assignment.items():
        out[row] = sym
    for row, sym in zip(rest, fill):
        out[row] = sym
    return out


def k2_code(q: int, t: int, validate: bool = True, size_ceiling: int | None = None) -> ArmstrongCode:
    """The (q, 2, C(qt+1, t+1))_{1,t} code.

    Rows 0..qt; one column per (t+1)-subset v of rows, holding one symbol
    t+1 times exactly on v and every other symbol exactly t times.  A
    perfect matching on the subsets (adjacent when meeting in at most one
    row) then drives a rearrangement: the column matched to v gets its
    t-multiplicity symbols reshuffled so the rows of v become pairwise
    distinct, which supplies the (t+1)-valued witness column.
    """
    if not q > t >= 1:
        raise PreconditionError(f"need q > t >= 1, got q={q} t={t}")
    m = q * t + 1
    n = comb(m, t + 1)
    cap = size_ceiling if size_ceiling is not None else ceiling("K2_CEILING", DEFAULT_K2_CEILING)
    if n > cap:
        raise CeilingError(f"C({m},{t + 1}) = {n} columns exceed ceiling {cap}")

    subsets = list(combinations(range(m), t + 1))
    columns = []
    for v in subsets:
        col = [0] * m
        for r in v:
            col[r] = 1
        rest = [r for r in range(m) if r not in v]
        for idx, r in enumerate(rest):
            col[r] = 2 + idx // t
        columns.append(col)

    index_of = {v: i for i, v in enumerate(subsets)}
    adjacency = [
        [index_of[w] for w in subsets if len(set(v) & set(w)) <= 1]
        for v in subsets
    ]
    match = bipartite_matching(adjacency)
    rearranged = list(columns)
    for vi, wi in enumerate(match):
        v = subsets[vi]
        rearranged[wi] = _rearrange_column(
            columns[wi], v, frozenset(subsets[wi]), q, t)

    rows = tuple(tuple(rearranged[c][r] for c in range(n)) for r in range(m))
    code = ArmstrongCode(q=q, k=2, rows=rows, s=1, t=t)
    if validate:
        out = verify_st_armstrong(code)
        if not out.passed:
            raise AssertionError(f"constructed code failed verification: {out.witness}")
    return code


# ---------------------------------------------------------------------------
# Reed-Solomon codes


def rs_code(q: int, k: int, validate: bool = True, size_ceiling: int | None = None,
            infinity_column: str = "top-coeff") -> ArmstrongCode:
    """Extended Reed-Solomon code of length q+1 as a (q,k,q+1) instance.

    One row per polynomial of degree < k over GF(q), enumerated in
    lexicographic coefficient order (constant coefficient first); the first
    q columns evaluate the polynomial at the canonical field enumeration and
    the last column holds the degree k-1 coefficient, so any k coordinates
    still determine the polynomial and two rows agree in at most k-1 places.

    `infinity_column="x-coeff"` switches the last column to the coefficient
    of X instead.  That variant breaks the k-coordinate determination for
    k >= 3 (a multiple of X^2 - a^2 has zero X-coefficient but two roots, so
    two rows can agree in k places) and is provided for study only.
    """
    if not 1 < k < q:
        raise PreconditionError(f"need 1 < k < q, got q={q} k={k}")
    if infinity_column not in ("top-coeff", "x-coeff"):
        raise StructureError(f"unknown infinity_column {infinity_column!r}")
    field = field_make(q)
    cap = size_ceiling if size_ceiling is not None else ceiling("RS_CEILING", DEFAULT_RS_CEILING)
    if q ** k > cap:
        raise CeilingError(f"q^k = {q ** k} rows exceed ceiling {cap}")
    elements = list(field.elements())
    rows = []
    for coeffs in product(range(q), repeat=k):
        evals = [field.poly_eval(coeffs, x) + 1 for x in elements]
        last = coeffs[k - 1] if infinity_column == "top-coeff" else coeffs[1]
        rows.append(tuple(evals) + (last + 1,))
    code = ArmstrongCode(q=q, k=k, rows=tuple(rows))
    if validate:
        out = verify_armstrong(code)
        if not out.passed:
            raise AssertionError(f"constructed code failed verification: {out.witness}")
    return code


# ---------------------------------------------------------------------------
# randomized local-lemma construction


def sample_lll_blocks(q: int, k: int, t: int, n: int, rng: random.Random) -> dict:
    """One sampling pass: for every (k-1)-subset K of columns, t+1 rows that
    agree on K (one uniform symbol per position of K) and take t+1 distinct
    uniform symbols in every other position."""
    blocks = {}
    for K in combinations(range(n), k - 1):
        kset = set(K)
        shared = {pos: rng.randint(1, q) for pos in K}
        cols = {}
        for pos in range(n):
            if pos in kset:
                cols[pos] = [shared[pos]] * (t + 1)
            else:
                cols[pos] = rng.sample(range(1, q + 1), t + 1)
        blocks[K] = [tuple(cols[pos][i] for pos in range(n)) for i in range(t + 1)]
    return blocks


def random_lll_code(q: int, k: int, t: int, n: int, seed: int = 0,
                    retry_budget: int = 20) -> tuple:
    """Repeated sampling passes of the block construction, returning the
    first code that passes full (s=1, t) verification, or None with attempt
    statistics.  Condition (ii) holds per construction (each block agrees
    exactly on its own column set); condition (i) is what sampling must get
    right, and absence of success within the budget is a normal outcome.
    """
    if not n > k:
        raise PreconditionError(f"need n > k, got n={n} k={k}")
    if not q > t:
        raise PreconditionError(f"need q > t, got q={q} t={t}")
    rng = random.Random(seed)
    stats = {"attempts": 0, "duplicate_rows": 0, "condition_failures": 0,
             "success_attempt": None, "expected_size": (t + 1) * comb(n, k - 1)}
    for attempt in range(1, retry_budget + 1):
        stats["attempts"] = attempt
        blocks = sample_lll_blocks(q, k, t, n, rng)
        rows = [row for block in blocks.values() for row in block]
        if len(set(rows)) != len(rows):
            stats["duplicate_rows"] += 1
            continue
        code = ArmstrongCode(q=q, k=k, rows=tuple(rows), s=1, t=t)
        rep = verify_st_armstrong(code)
        if rep.passed:
            stats["success_attempt"] = attempt
            return code, stats
        stats["condition_failures"] += 1
    return None, stats
