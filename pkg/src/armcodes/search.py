"""Backtracking and exhaustive searches for the designs the constructions
consume: small 4-GDDs, base partitions (including the open even orders),
and the complete double-cover enumerations behind the nonexistence results.

Nothing returned here is self-certified: every hit is re-checked by the
independent verifiers in `designs` before it is handed back.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb

from .designs import (
    INF,
    BasePartition,
    GddDesign,
    Partition,
    PartitionSystem,
    PointSet,
    verify_base_partition,
    verify_gdd,
)
from .report import PreconditionError, StructureError

RESUME_FORMAT_VERSION = 1


@dataclass
class SearchStats:
    nodes: int = 0
    restarts: int = 0
    elapsed: float = 0.0
    outcome: str = "not_run"
    detail: str = ""
    extra: dict = field(default_factory=dict)


def parse_gdd_type(text: str) -> list:
    """Group sizes from exponential notation, e.g. '2^7' or '2^18 17^1'."""
    sizes = []
    for token in text.split():
        if "^" in token:
            base, exp = token.split("^", 1)
            sizes.extend([int(base)] * int(exp))
        else:
            sizes.append(int(token))
    if not sizes or any(s < 1 for s in sizes):
        raise StructureError(f"bad GDD type {text!r}")
    return sorted(sizes)


def gdd_admissible(group_sizes, k: int) -> tuple:
    """Necessary divisibility conditions: each point's replication
    (v - g)/(k-1) and the total cross-pair count over C(k,2)."""
    v = sum(group_sizes)
    for g in set(group_sizes):
        if (v - g) % (k - 1) != 0:
            return False, f"replication (v-g)/(k-1) = ({v}-{g})/{k - 1} is not integral"
    cross = comb(v, 2) - sum(comb(g, 2) for g in group_sizes)
    if cross % comb(k, 2) != 0:
        return False, f"cross pairs {cross} not divisible by C({k},2)"
    return True, ""


def _build_gdd(group_sizes, k, blocks) -> GddDesign:
    v = sum(group_sizes)
    groups = []
    start = 0
    for g in group_sizes:
        groups.append(frozenset(range(start, start + g)))
        start += g
    return GddDesign(points=PointSet(size=v), groups=Partition(tuple(groups)),
                     blocks=tuple(frozenset(b) for b in blocks), block_size=k)


def _candidate_blocks(group_sizes, k):
    """All size-k blocks meeting every group at most once, in lexicographic
    order.  For types 2^u (u-1)^1 pair counting forces every block to meet
    the long group, so transversal blocks avoiding it are dropped."""
    v = sum(group_sizes)
    group_of = [0] * v
    start = 0
    for gi, g in enumerate(group_sizes):
        for p in range(start, start + g):
            group_of[p] = gi
        start += g
    sizes = sorted(group_sizes)
    u = sum(1 for g in sizes if g == 2)
    long_forced = (k == 4 and sizes[-1] == u - 1 and sizes[-1] > 2
                   and set(sizes[:-1]) == {2})
    long_gi = max(range(len(group_sizes)), key=lambda gi: group_sizes[gi]) if long_forced else None
    out = []
    for block in combinations(range(v), k):
        gs = [group_of[p] for p in block]
        if len(set(gs)) != k:
            continue
        if long_forced and long_gi not in gs:
            continue
        out.append(block)
    return out, group_of


def _gdd_exact_cover(group_sizes, k, order_fn, node_budget, deadline, stats,
                     decision_log=None, replay=None):
    """Exact cover of the cross-group pairs by candidate blocks.

    Straight Algorithm X on dict-of-sets state: the branching column is the
    uncovered pair with the fewest remaining candidate blocks (fail-first),
    coverage bookkeeping is maintained incrementally by select/deselect, and
    rows are tried in lexicographic block order (or an order_fn-shuffled
    copy).  decision_log, when a list, records the candidate rank taken at
    each depth for checkpointing; replay primes the first descent.
    """
    blocks, group_of = _candidate_blocks(group_sizes, k)
    pair_ids = {}
    v = sum(group_sizes)
    for a in range(v):
        for b in range(a + 1, v):
            if group_of[a] != group_of[b]:
                pair_ids[(a, b)] = len(pair_ids)
    Y = {}
    for r, block in enumerate(blocks):
        Y[r] = [pair_ids[pr] for pr in combinations(block, 2)]
    X = {j: set() for j in range(len(pair_ids))}
    for r, cols in Y.items():
        for j in cols:
            X[j].add(r)
    if any(not rows for rows in X.values()):
        return "dead", []

    solution = []

    def select(r):
        removed = []
        for j in Y[r]:
            for i in X[j]:
                for j2 in Y[i]:
                    if j2 != j:
                        X[j2].discard(i)
            removed.append((j, X.pop(j)))
        return removed

    def deselect(removed):
        for j, rows in reversed(removed):
            X[j] = rows
            for i in rows:
                for j2 in Y[i]:
                    if j2 != j:
                        X[j2].add(i)

    def dfs(depth):
        stats.nodes += 1
        if node_budget is not None and stats.nodes > node_budget:
            return "budget"
        if deadline is not None and stats.nodes % 256 == 0 and time.monotonic() > deadline:
            return "timeout"
        if not X:
            return "found"
        col = min(X, key=lambda j: (len(X[j]), j))
        rows = sorted(X[col])
        if order_fn is not None:
            rows = order_fn(rows)
        lo = 0
        if replay is not None and depth < len(replay):
            lo = replay[depth]
        for idx in range(lo, len(rows)):
            r = rows[idx]
            solution.append(r)
            if decision_log is not None:
                decision_log.append(idx)
            removed = select(r)
            res = dfs(depth + 1)
            deselect(removed)
            if res == "found":
                return res
            solution.pop()
            if decision_log is not None:
                decision_log.pop()
            if res in ("budget", "timeout"):
                return res
        return "dead"

    res = dfs(0)
    return res, [blocks[r] for r in solution]


def search_gdd(type_text: str, k: int = 4, seed: int = 0,
               time_budget: float | None = 60.0,
               node_budget: int | None = None,
               resume_path: str | None = None) -> tuple:
    """Find a k-GDD of the given type, or report none within budget.

    Strategy ladder, deterministic for a fixed seed in single-worker mode:

    1. for type 2^u, exact cover over difference orbits under a prescribed
       cyclic automorphism x -> x + s of Z_{2u} (groups {i, i+u}), trying
       subgroup orders largest-first;
    2. for type 2^u (u-1)^1 with u = m+1, a rotational scheme mod m: one
       base triangle class on Z_m x {0,1} + two fixed points, hitting every
       pair type once, developed through the long group (every block is
       forced to meet the long group by pair counting);
    3. generic exact cover on all candidate blocks, lexicographic first,
       then seeded randomized restarts until the budget runs out.

    Each phase uses fail-first column selection with incremental cover
    bookkeeping.  Returns (GddDesign | None, SearchStats); inadmissible
    types return None before any search.
    """
    stats = SearchStats()
    group_sizes = parse_gdd_type(type_text)
    ok, why = gdd_admissible(group_sizes, k)
    if not ok:
        stats.outcome = "inadmissible"
        stats.detail = why
        return None, stats

    start = time.monotonic()
    deadline = start + time_budget if time_budget is not None else None

    sizes_sorted = sorted(group_sizes)
    u = sum(1 for g in sizes_sorted if g == 2)
    long_m = sizes_sorted[-1]
    design = None
    if k == 4 and long_m == 2:
        design = _search_gdd_cyclic(u, deadline, stats)
    elif (k == 4 and long_m > 2 and set(sizes_sorted[:-1]) == {2}
          and long_m == u - 1 and long_m % 2 == 1):
        design = _search_gdd_rotational(long_m, deadline, stats)
    if design is None:
        design = _search_gdd_generic(group_sizes, k, seed, deadline, node_budget,
                                     stats, resume_path)

    stats.elapsed = time.monotonic() - start
    if design is None:
        if stats.outcome == "not_run":
            stats.outcome = "exhausted_budget"
        return None, stats
    rep = verify_gdd(design)
    if not rep.passed:
        raise AssertionError(f"search produced an invalid design: {rep.witness}")
    stats.outcome = "found"
    return design, stats


def _search_gdd_generic(group_sizes, k, seed, deadline, node_budget, stats,
                        resume_path):
    replay = None
    if resume_path is not None:
        try:
            with open(resume_path) as fh:
                saved = json.load(fh)
            if saved.get("version") == RESUME_FORMAT_VERSION and saved.get("kind") == "gdd":
                replay = saved.get("decisions")
        except FileNotFoundError:
            pass

    # deterministic lexicographic pass
    log: list = []
    res, blocks = _gdd_exact_cover(group_sizes, k, None,
                                   node_budget or 2_000_000, deadline, stats,
                                   decision_log=log, replay=replay)
    if res == "found":
        return _build_gdd(group_sizes, k, blocks)
    if res in ("budget", "timeout") and resume_path is not None:
        with open(resume_path, "w") as fh:
            json.dump({"version": RESUME_FORMAT_VERSION, "kind": "gdd",
                       "type": group_sizes, "k": k, "decisions": log}, fh)
    if res == "dead":
        stats.outcome = "exhausted_space"
        stats.detail = "no design exists"
        return None

    # randomized restarts
    rng = random.Random(seed)
    while deadline is None or time.monotonic() < deadline:
        stats.restarts += 1

        def shuffled(c, rng=rng):
            c = list(c)
            rng.shuffle(c)
            return c

        res, blocks = _gdd_exact_cover(group_sizes, k, shuffled, 200_000,
                                       deadline, stats)
        if res == "found":
            return _build_gdd(group_sizes, k, blocks)
        if res == "timeout":
            break
        if deadline is None and stats.restarts >= 50:
            break
    stats.detail = f"{stats.restarts} restarts, {stats.nodes} nodes"
    return None


def _solve_exact_cover(Y, node_budget, deadline, stats, order_fn=None):
    """Algorithm X on dict-of-sets: Y maps row id -> column list.  Returns
    the chosen rows or None; fail-first column choice, lexicographic rows."""
    X: dict = {}
    for r, cols in Y.items():
        for j in cols:
            X.setdefault(j, set()).add(r)
    if not Y:
        return None
    solution = []

    def select(r):
        removed = []
        for j in Y[r]:
            for i in X[j]:
                for j2 in Y[i]:
                    if j2 != j:
                        X[j2].discard(i)
            removed.append((j, X.pop(j)))
        return removed

    def deselect(removed):
        for j, rows in reversed(removed):
            X[j] = rows
            for i in rows:
                for j2 in Y[i]:
                    if j2 != j:
                        X[j2].add(i)

    def dfs():
        stats.nodes += 1
        if node_budget is not None and stats.nodes > node_budget:
            return "budget"
        if deadline is not None and stats.nodes % 256 == 0 and time.monotonic() > deadline:
            return "timeout"
        if not X:
            return "found"
        col = min(X, key=lambda j: (len(X[j]), j))
        rows = sorted(X[col])
        if order_fn is not None:
            rows = order_fn(rows)
        for r in rows:
            solution.append(r)
            removed = select(r)
            res = dfs()
            deselect(removed)
            if res == "found":
                return res
            solution.pop()
            if res in ("budget", "timeout"):
                return res
        return "dead"

    return solution if dfs() == "found" else None


def _search_gdd_cyclic(u: int, deadline, stats):
    """4-GDD of type 2^u invariant under x -> x + s on Z_{2u} with groups
    {i, i+u}: exact cover of the pair orbits by full-orbit base blocks.
    Subgroup orders are tried largest-first; blocks relabel to the
    consecutive-pair group convention on success."""
    v = 2 * u
    n_blocks = (comb(v, 2) - u) // 6
    orders = sorted((d for d in range(2, v) if v % d == 0 and n_blocks % d == 0),
                    reverse=True)
    for order in orders:
        if deadline is not None and time.monotonic() > deadline:
            return None
        step = v // order

        def orbit_rep_pair(a, b):
            best = None
            for t_ in range(order):
                x, y = (a + t_ * step) % v, (b + t_ * step) % v
                key = (x, y) if x < y else (y, x)
                if best is None or key < best:
                    best = key
            return best

        pair_col = {}
        col_ids = {}
        for a in range(v):
            for b in range(a + 1, v):
                if (b - a) % v == u:
                    continue
                rep = orbit_rep_pair(a, b)
                if rep not in col_ids:
                    col_ids[rep] = len(col_ids)
                pair_col[(a, b)] = col_ids[rep]

        seen = set()
        Y = {}
        for block in combinations(range(v), 4):
            if any((y - x) % v == u for x, y in combinations(block, 2)):
                continue
            imgs = sorted(tuple(sorted((p + t_ * step) % v for p in block))
                          for t_ in range(order))
            if len(set(imgs)) != order:
                continue  # short orbit: cannot cover each pair orbit once
            rep = imgs[0]
            if rep in seen:
                continue
            seen.add(rep)
            cols = [pair_col[pr] for pr in combinations(rep, 2)]
            if len(set(cols)) != 6:
                continue
            Y[rep] = cols

        sol = _solve_exact_cover(Y, 400_000, deadline, stats)
        if sol is None:
            continue
        stats.extra["strategy"] = f"cyclic automorphism step {step} (order {order})"
        relabel = lambda x: 2 * (x % u) + (0 if x < u else 1)
        blocks = []
        for base in sol:
            for t_ in range(order):
                blocks.append(frozenset(relabel((p + t_ * step) % v) for p in base))
        return _build_gdd([2] * u, 4, blocks)
    return None


def _search_gdd_rotational(m: int, deadline, stats):
    """4-GDD of type 2^{m+1} m^1 (m odd): every block meets the long group,
    so the blocks through long point x form a triangle parallel class of
    the 2(m+1) short points.  Prescribing the rotation i -> i+1 mod m on
    shorts Z_m x {0,1} + {A,B} and on the long group makes all classes
    translates of one base class, which must partition the shorts while
    hitting each pair difference type exactly once: an exact cover over
    36 points + 36 pair types solved by Algorithm X."""
    half = (m - 1) // 2
    A, B = 2 * m, 2 * m + 1
    n_short = 2 * m + 2

    def pair_type(x, y):
        if x > y:
            x, y = y, x
        if y == A:
            return ("A", x // m)
        if y == B:
            return None if x == A else ("B", x // m)
        cx, cy = x // m, y // m
        ix, iy = x % m, y % m
        if cx == cy:
            d = (iy - ix) % m
            return (f"D{cx}", min(d, m - d))
        if ix == iy:
            return None  # group pair {(i,0),(i,1)}
        return ("M", (iy - ix) % m)

    Y = {}
    for tri in combinations(range(n_short), 3):
        types = []
        ok = True
        for x, y in combinations(tri, 2):
            tp = pair_type(x, y)
            if tp is None:
                ok = False
                break
            types.append(tp)
        if not ok or len(set(types)) != 3:
            continue
        Y[tri] = [("pt", p) for p in tri] + types

    sol = _solve_exact_cover(Y, 2_000_000, deadline, stats)
    if sol is None:
        return None
    stats.extra["strategy"] = f"rotational base class mod {m}"

    def relabel(p, shift):
        if p >= 2 * m:
            return p  # A, B fixed
        return (p // m) * m + ((p % m) + shift) % m

    def final_label(p):
        if p < 2 * m:
            return 2 * (p % m) + p // m
        return p  # A, B land on the last short group {2m, 2m+1}

    blocks = []
    for x in range(m):
        long_pt = n_short + x
        for tri in sol:
            blocks.append(frozenset(final_label(relabel(p, x)) for p in tri) | {long_pt})
    return _build_gdd([2] * (m + 1) + [m], 4, blocks)


# ---------------------------------------------------------------------------
# base partition search


def search_base_partition(q: int, seed: int = 0, time_budget: float = 30.0,
                          max_restarts: int | None = None) -> tuple:
    """Look for a base partition of order 3q (q even): a triple partition of
    Z_{3q-1} + inf whose inside-triple differences hit every nonzero residue
    exactly twice, and whose covered pairs align under every nonzero shift.

    Strategy: randomized backtracking on the difference-count constraint
    (each of the (3q-2)/2 difference classes used by at most two pairs),
    restarting whenever the alignment property fails; every candidate is
    certified by verify_base_partition before being returned.
    """
    if q % 2 != 0 or q < 4:
        raise PreconditionError(f"base partition search expects even q >= 4, got q={q}")
    m = 3 * q
    n = m - 1  # modulus, odd
    half = (n - 1) // 2
    rng = random.Random(seed)
    stats = SearchStats()
    start = time.monotonic()
    deadline = start + time_budget

    def diff_class(a, b):
        d = (a - b) % n
        return d if d <= half else n - d

    def try_once():
        class_count = [0] * (half + 1)
        used = [False] * n
        inf_used = [False]
        triples = []

        def next_point():
            for p in range(n):
                if not used[p]:
                    return p
            return None

        def rec(nodes):
            stats.nodes += 1
            if nodes[0] > 60_000:
                return False
            a = next_point()
            if a is None:
                return True
            used[a] = True
            rest = [p for p in range(a + 1, n) if not used[p]]
            cands = []
            if not inf_used[0]:
                for b in rest:
                    if class_count[diff_class(a, b)] < 2:
                        cands.append((b, None))
            for i in range(len(rest)):
                b = rest[i]
                for j in range(i + 1, len(rest)):
                    c = rest[j]
                    counts = {}
                    for d in (diff_class(a, b), diff_class(a, c), diff_class(b, c)):
                        counts[d] = counts.get(d, 0) + 1
                    if all(class_count[d] + cnt <= 2 for d, cnt in counts.items()):
                        cands.append((b, c))
            rng.shuffle(cands)
            for b, c in cands:
                nodes[0] += 1
                if c is None:
                    inf_used[0] = True
                    used[b] = True
                    class_count[diff_class(a, b)] += 1
                    triples.append((a, b, INF))
                    if rec(nodes):
                        return True
                    triples.pop()
                    class_count[diff_class(a, b)] -= 1
                    used[b] = False
                    inf_used[0] = False
                else:
                    used[b] = used[c] = True
                    for d in (diff_class(a, b), diff_class(a, c), diff_class(b, c)):
                        class_count[d] += 1
                    triples.append((a, b, c))
                    if rec(nodes):
                        return True
                    triples.pop()
                    for d in (diff_class(a, b), diff_class(a, c), diff_class(b, c)):
                        class_count[d] -= 1
                    used[b] = used[c] = False
            used[a] = False
            return False

        if rec([0]) and inf_used[0]:
            return list(triples)
        return None

    while time.monotonic() < deadline:
        if max_restarts is not None and stats.restarts >= max_restarts:
            break
        stats.restarts += 1
        triples = try_once()
        if triples is None:
            continue
        bp = BasePartition(order=m, triples=Partition(tuple(frozenset(t) for t in triples)))
        rep = verify_base_partition(bp)
        if rep.passed:
            stats.elapsed = time.monotonic() - start
            stats.outcome = "found"
            return bp, stats
        stats.extra["last_failure"] = str(rep.witness)
    stats.elapsed = time.monotonic() - start
    stats.outcome = "exhausted_budget"
    stats.detail = f"{stats.restarts} restarts, {stats.nodes} nodes"
    return None, stats


# ---------------------------------------------------------------------------
# exhaustive double-cover enumeration


def _partitions_of_type(m: int, sizes: tuple) -> list:
    """All partitions of range(m) with the given part sizes, each encoded as
    a tuple of sorted tuples in canonical part order (size desc, then lex).

    Each set partition is produced exactly once: the smallest unassigned
    point starts a new part, whose size is drawn from the multiset of sizes
    still owed."""

    def rec(remaining, size_counts):
        if not remaining:
            yield ()
            return
        first = remaining[0]
        for size in sorted(size_counts, reverse=True):
            if size_counts[size] == 0:
                continue
            size_counts[size] -= 1
            for others in combinations(remaining[1:], size - 1):
                part = (first,) + others
                rest = tuple(p for p in remaining if p not in part)
                for tail in rec(rest, size_counts):
                    yield (part,) + tail
            size_counts[size] += 1

    counts: dict = {}
    for s in sizes:
        counts[s] = counts.get(s, 0) + 1
    out = [tuple(sorted(parts, key=lambda p: (-len(p), p)))
           for parts in rec(tuple(range(m)), counts)]
    out.sort()
    return out


def _pair_mask(parts, m) -> int:
    mask = 0
    for part in parts:
        for a, b in combinations(part, 2):
            mask |= 1 << (a * m + b)
    return mask


def _stabilizer(parts, m) -> list:
    """All point permutations preserving the partition as a set of parts:
    permute equal-size parts among themselves, permute within parts."""
    by_size: dict = {}
    for part in parts:
        by_size.setdefault(len(part), []).append(part)
    partial_maps = [{}]
    for size in sorted(by_size):
        group = by_size[size]
        new_maps = []
        for block_perm in permutations(range(len(group))):
            layouts = [[]]
            for i in range(len(group)):
                src = group[i]
                dst_part = group[block_perm[i]]
                layouts = [lay + list(zip(src, target))
                           for lay in layouts
                           for target in permutations(dst_part)]
            for lay in layouts:
                new_maps.append(dict(lay))
        partial_maps = [{**base, **extra} for base in partial_maps for extra in new_maps]
    return [tuple(mp[i] for i in range(m)) for mp in partial_maps]


def _encode(parts_iter) -> tuple:
    return tuple(sorted((tuple(sorted(part)) for part in parts_iter),
                        key=lambda part: (-len(part), part)))


def _map_onto(src_parts, dst_parts, m) -> tuple:
    """One point permutation carrying partition src onto partition dst
    (parts of equal size matched in canonical order)."""
    mapping = [0] * m
    for sp, dp in zip(src_parts, dst_parts):
        for s, d in zip(sp, dp):
            mapping[s] = d
    return tuple(mapping)


def _exhaust_tables(m: int, sizes: tuple, isomorph_pruning: bool):
    """Candidate partitions, pair masks, share counts, and stabilizer maps
    for the exhaustive enumeration frame."""
    cands = _partitions_of_type(m, sizes)
    masks = [_pair_mask(p, m) for p in cands]
    ncand = len(cands)
    share = [bytes((masks[i] & masks[j]).bit_count() for j in range(ncand))
             for i in range(ncand)]
    stab = _stabilizer(cands[0], m)
    index_of = {p: i for i, p in enumerate(cands)}
    stab_maps = []
    if isomorph_pruning:
        for perm in stab:
            stab_maps.append(tuple(
                index_of[_encode(tuple(perm[x] for x in part) for part in p)]
                for p in cands))
    return cands, masks, share, stab, index_of, stab_maps


def _exhaust_branch(m, sizes, mode, isomorph_pruning, stab_depth, node_ceiling,
                    branch_slice):
    """Enumerate the frame restricted to top-level candidates in
    branch_slice (positions into the init list); returns raw index-tuple
    solutions plus node/prune counts.  Top-level slices over all workers
    must cover the init list exactly once for completeness."""
    cands, masks, share, _stab, _index_of, stab_maps = _exhaust_tables(
        m, sizes, isomorph_pruning)
    ncand = len(cands)
    pairs_per = sum(comb(s, 2) for s in sizes)
    n = (2 * comb(m, 2)) // pairs_per

    full_mask = 0
    for a in range(m):
        for b in range(a + 1, m):
            full_mask |= 1 << (a * m + b)

    solutions = []
    counters = {"nodes": 0, "stab_pruned": 0}
    chosen = [0]

    def prefix_is_minimal():
        cur = tuple(chosen)
        for mp in stab_maps:
            if tuple(sorted(mp[i] for i in cur)) < cur:
                return False
        return True

    def dfs(cand_list, cnt1, cnt2):
        counters["nodes"] += 1
        if node_ceiling is not None and counters["nodes"] > node_ceiling:
            raise PreconditionError(f"node ceiling {node_ceiling} exceeded")
        depth = len(chosen)
        if depth == n:
            if cnt2 == full_mask:
                solutions.append(tuple(chosen))
            return
        if len(cand_list) < n - depth:
            return
        for pos, c in enumerate(cand_list):
            chosen.append(c)
            if isomorph_pruning and len(chosen) <= stab_depth and not prefix_is_minimal():
                chosen.pop()
                counters["stab_pruned"] += 1
                continue
            mask = masks[c]
            new_cnt2 = cnt2 | (mask & cnt1)
            new_cnt1 = cnt1 | mask
            row = share[c]
            nxt = []
            for c2 in cand_list[pos + 1:]:
                if masks[c2] & new_cnt2:
                    continue
                sc = row[c2]
                if (sc != 1) if mode == "exact" else (sc < 1):
                    continue
                nxt.append(c2)
            dfs(nxt, new_cnt1, new_cnt2)
            chosen.pop()

    row0 = share[0]
    init = [c for c in range(1, ncand)
            if ((row0[c] == 1) if mode == "exact" else (row0[c] >= 1))]
    lo, hi = branch_slice if branch_slice is not None else (0, len(init))
    for pos in range(lo, min(hi, len(init))):
        c = init[pos]
        chosen.append(c)
        skip = (isomorph_pruning and len(chosen) <= stab_depth
                and not prefix_is_minimal())
        if skip:
            counters["stab_pruned"] += 1
        else:
            mask = masks[c]
            new_cnt2 = mask & masks[0]
            new_cnt1 = masks[0] | mask
            row = share[c]
            nxt = []
            for c2 in init[pos + 1:]:
                if masks[c2] & new_cnt2:
                    continue
                sc = row[c2]
                if (sc != 1) if mode == "exact" else (sc < 1):
                    continue
                nxt.append(c2)
            dfs(nxt, new_cnt1, new_cnt2)
        chosen.pop()
    return solutions, counters["nodes"], counters["stab_pruned"], len(init)


def exhaust_double_cover(m: int, graph_type, mode: str,
                         isomorph_pruning: bool = True,
                         stab_depth: int = 3,
                         node_ceiling: int | None = None,
                         workers: int = 1) -> tuple:
    """Complete enumeration of double covers of [m] by partitions of the
    given part-size type, under the exact or at-least pairwise regime.

    The frame fixes the first partition to the lexicographically least
    partition of the type (every system can be relabeled to contain it,
    since that partition is the global minimum of the encoding order) and
    lists the remaining partitions in increasing encoding order, which
    kills the partition-permutation symmetry.  With isomorph_pruning,
    prefixes that a stabilizer permutation of the first partition would map
    to a lexicographically smaller prefix are cut; this is sound because
    the minimal image of any solution survives every such test.  Returned
    solutions are deduplicated to canonical representatives under the full
    relabeling group, so an empty result is a proof of nonexistence (up to
    the stated frame) and counts are per isomorphism class.

    workers > 1 splits the top-level branches over processes; the slices
    partition the root frontier exactly once, so completeness is kept.
    Single-worker mode is the reproducibility reference.

    Returns (solutions, stats) with solutions as PartitionSystem objects.
    """
    if mode not in ("exact", "at_least"):
        raise StructureError(f"mode must be exact or at_least, got {mode!r}")
    sizes = tuple(sorted(graph_type, reverse=True))
    if sum(sizes) != m:
        raise StructureError(f"graph type {sizes} does not span {m} points")
    stats = SearchStats()
    start = time.monotonic()
    pairs_per = sum(comb(s, 2) for s in sizes)
    total_cover = 2 * comb(m, 2)
    if pairs_per == 0 or total_cover % pairs_per != 0:
        stats.outcome = "inadmissible"
        stats.detail = f"2 C({m},2) = {total_cover} not divisible by {pairs_per} pairs per partition"
        return [], stats
    stats.extra["partitions_needed"] = total_cover // pairs_per

    if workers <= 1:
        solutions, nodes, pruned, _ninit = _exhaust_branch(
            m, sizes, mode, isomorph_pruning, stab_depth, node_ceiling, None)
        stats.nodes = nodes
        stats.extra["stab_pruned"] = pruned
    else:
        import concurrent.futures
        probe = _exhaust_tables(m, sizes, False)
        row0 = probe[2][0]
        ninit = sum(1 for c in range(1, len(probe[0]))
                    if ((row0[c] == 1) if mode == "exact" else (row0[c] >= 1)))
        bounds_ = [round(i * ninit / workers) for i in range(workers + 1)]
        slices = [(bounds_[i], bounds_[i + 1]) for i in range(workers)]
        solutions = []
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_exhaust_branch, m, sizes, mode,
                                   isomorph_pruning, stab_depth, node_ceiling, sl)
                       for sl in slices]
            for fut in futures:
                sols, nodes, pruned, _ = fut.result()
                solutions.extend(sols)
                stats.nodes += nodes
                stats.extra["stab_pruned"] = stats.extra.get("stab_pruned", 0) + pruned

    cands, _masks, _share, stab, index_of, _maps = _exhaust_tables(m, sizes, False)

    def canonical(sol):
        best = None
        for idx in sol:
            base = _map_onto(cands[idx], cands[0], m)
            for st in stab:
                perm = tuple(st[base[x]] for x in range(m))
                img = tuple(sorted(
                    index_of[_encode(tuple(perm[x] for x in part) for part in cands[i])]
                    for i in sol))
                if best is None or img < best:
                    best = img
        return best

    canon_set = {}
    for sol in solutions:
        canon_set.setdefault(canonical(sol), sol)
    reps = sorted(canon_set)

    pointset = PointSet(size=m)
    systems = [
        PartitionSystem(
            points=pointset,
            partitions=tuple(Partition(tuple(frozenset(part) for part in cands[i]))
                             for i in sol))
        for sol in reps
    ]
    stats.extra["raw_solutions"] = len(solutions)
    stats.elapsed = time.monotonic() - start
    stats.outcome = "complete"
    stats.detail = f"{len(systems)} canonical solutions, {stats.nodes} nodes"
    return systems, stats
