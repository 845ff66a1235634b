"""Closed-form and universal bounds on the maximum Armstrong-code length.

f(q,k) denotes the maximum n admitting a (q,k,n)-Armstrong code and
f_{s,t}(q,k) its generalized analogue.  Everything here is computed in
exact integer/rational arithmetic; the one square root (in the k>2 closed
bound) is bracketed explicitly so no bound is ever misclassified by
floating point.

The universal upper bound trades off two inequalities satisfied by any
(q,k,n)_{s,t} code of size m: C(m,t+1) >= C(n,k-1) (each (k-1)-column set
needs its own witnessing row subset) and n * phi(m) <= (k-1) * C(m,t+1)
(each of the n columns contributes at least phi low-diversity row subsets,
and a row subset tolerates at most k-1 such columns).  The first is
nondecreasing in m and the second nonincreasing, so the best code size sits
at their crossing.

phi(m, q, s, t) is the least possible number of (t+1)-element position
subsets showing at most s distinct symbols, over all ways to fill m cells
with q symbols; `phi_bruteforce` computes it exactly by enumerating symbol
count vectors, and the two closed forms cover the s=1 and s=t=2 cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, isqrt

from .report import CeilingError, PreconditionError, ceiling

DEFAULT_PHI_CEILING = 2_000_000   # symbol count vectors per phi evaluation
DEFAULT_SCAN_CEILING = 100_000    # code sizes m scanned by the universal bound

# (k, q) pairs excluded from the improved q(k-1) bound.
IMPROVED_BOUND_EXCEPTIONS = {(5, 2), (5, 3), (5, 4), (5, 5), (6, 2)}

# e to 40 digits, bracketed below/above for exact rational comparisons.
_E_LO = Fraction(27182818284590452353602874713526624977572, 10 ** 40)
_E_HI = _E_LO + Fraction(1, 10 ** 40)


@dataclass(frozen=True)
class BoundReport:
    """Evaluated bounds for one quantity, with the witnessing trade-off size."""

    quantity: str
    upper: int | None = None
    upper_trace: str = ""
    lower: int | None = None
    lower_witness: str | None = None
    m_star: int | None = None
    notes: tuple = ()

    def __post_init__(self):
        if self.upper is not None and self.lower is not None and self.lower > self.upper:
            raise AssertionError(f"lower bound {self.lower} exceeds upper bound {self.upper}")


class InapplicableBound(PreconditionError):
    """The requested closed-form bound does not apply at these parameters."""


def f_q2(q: int) -> int:
    """Exact maximum length for k=2: C(q+1, 2)."""
    if q <= 1:
        raise PreconditionError(f"q must exceed 1, got {q}")
    return comb(q + 1, 2)


def ub_f_q3(q: int) -> int:
    """Upper bound 3q-1 for k=3 (tight for every q >= 5 with known covers)."""
    if q <= 1:
        raise PreconditionError(f"q must exceed 1, got {q}")
    return 3 * q - 1


def _sqrt_brackets(x: Fraction, rel_digits: int = 30) -> tuple:
    """Rationals (lo, hi) with lo <= sqrt(x) <= hi; exact when x is square."""
    if x < 0:
        raise PreconditionError("square root of a negative value")
    scale = 10 ** rel_digits
    n = x.numerator * x.denominator
    r = isqrt(n)
    if r * r == n:
        exact = Fraction(r, x.denominator)
        return exact, exact
    r = isqrt(n * scale * scale)
    lo = Fraction(r, x.denominator * scale)
    hi = Fraction(r + 1, x.denominator * scale)
    return lo, hi


def eq1_upper_bound(q: int, k: int) -> Fraction:
    """The closed bound q(k-1)(1 + (q-1)/(sqrt(2(qk-q-k+2)^{k-1}/(k-1)!) - q)).

    Exact when the discriminant is a perfect square, otherwise an upper
    bracket at 30 digits (bracketing the root from below only ever weakens
    the bound, never invalidates it).  Raises InapplicableBound when the
    denominator is not positive.
    """
    if q <= 1 or k <= 2:
        raise PreconditionError(f"need q > 1 and k > 2, got q={q} k={k}")
    disc = Fraction(2 * (q * k - q - k + 2) ** (k - 1), factorial(k - 1))
    lo, hi = _sqrt_brackets(disc)
    if hi <= q:
        raise InapplicableBound(
            f"sqrt({float(disc):.6g}) <= q = {q}: denominator not positive")
    if lo <= q:
        raise InapplicableBound(
            f"sqrt({float(disc):.6g}) is too close to q = {q} to certify the bound")
    return q * (k - 1) * (1 + Fraction(q - 1) / (lo - q))


def improved_upper_bound(q: int, k: int) -> int:
    """q(k-1), valid for q >= 2 and k >= 5 outside the known exception list."""
    if not (q >= 2 and k >= 5):
        raise InapplicableBound(f"improved bound needs q >= 2 and k >= 5, got q={q} k={k}")
    if (k, q) in IMPROVED_BOUND_EXCEPTIONS:
        raise InapplicableBound(f"(k, q) = ({k}, {q}) is an excluded pair")
    return q * (k - 1)


def best_closed_upper_bound(q: int, k: int) -> tuple:
    """(value, trace) of the strongest applicable closed-form bound on f(q,k)."""
    if k == 2:
        return f_q2(q), "exact value C(q+1,2) for k=2"
    if k == 3:
        return ub_f_q3(q), "pair-counting bound 3q-1 for k=3"
    candidates = []
    try:
        candidates.append((improved_upper_bound(q, k), "q(k-1) bound"))
    except InapplicableBound:
        pass
    try:
        val = eq1_upper_bound(q, k)
        candidates.append((math.floor(val), "distance-direction counting bound"))
    except InapplicableBound:
        pass
    if not candidates:
        raise InapplicableBound(f"no closed-form bound applies at q={q} k={k}")
    return min(candidates)


def phi_lower_s1(m: int, q: int, t: int) -> int:
    """Lower bound for phi at s=1: q*C(h,t+1) + r*C(h,t) with m = qh + r.

    Balancing the symbol counts can only reduce the number of monochromatic
    (t+1)-subsets, so the balanced count vector is optimal.
    """
    if not q < m:
        raise PreconditionError(f"need q < m, got q={q} m={m}")
    h, r = divmod(m, q)
    return q * comb(h, t + 1) + r * comb(h, t)


def varphi(m: int, q: int) -> int:
    """Lower bound for phi at s=t=2 from the balanced count vector."""
    if not q < m:
        raise PreconditionError(f"need q < m, got q={q} m={m}")
    h, r = divmod(m, q)
    return (r * comb(h + 1, 3) + (q - r) * comb(h, 3)
            + r * comb(h + 1, 2) * (m - h - 1) + (q - r) * comb(h, 2) * (m - h))


def _count_vectors(m: int, q: int):
    """Nonincreasing symbol count vectors of length q summing to m."""
    def rec(remaining, slots, cap):
        if slots == 1:
            if remaining <= cap:
                yield (remaining,)
            return
        lo = -(-remaining // slots)  # ceil: keep nonincreasing order reachable
        for first in range(min(cap, remaining), lo - 1, -1):
            for rest in rec(remaining - first, slots - 1, first):
                yield (first,) + rest
    yield from rec(m, q, m)


def low_diversity_count(counts, s: int, t: int) -> int:
    """(t+1)-position subsets with at most s distinct symbols, for one
    symbol count vector, by inclusion-exclusion over exact supports."""
    q = len(counts)
    total = 0
    for size in range(1, s + 1):
        for support in combinations(range(q), size):
            # subsets with support exactly `support`
            exact = 0
            for r in range(size + 1):
                for sub in combinations(support, r):
                    exact += (-1) ** (size - r) * comb(sum(counts[i] for i in sub), t + 1)
            total += exact
    return total


def phi_bruteforce(m: int, q: int, s: int, t: int, size_ceiling: int | None = None) -> int:
    """Exact phi by enumerating all symbol count vectors (up to symmetry)."""
    if m < 1 or q < 1:
        raise PreconditionError(f"need positive m and q, got m={m} q={q}")
    cap = size_ceiling if size_ceiling is not None else ceiling("PHI_CEILING", DEFAULT_PHI_CEILING)
    if comb(m + q - 1, q - 1) > cap:
        raise CeilingError(f"C({m + q - 1},{q - 1}) count vectors exceed ceiling {cap}")
    return min(low_diversity_count(counts, s, t) for counts in _count_vectors(m, q))


def _ub1(m: int, k: int, t: int) -> int:
    """Largest n with C(n, k-1) <= C(m, t+1)."""
    target = comb(m, t + 1)
    n = k - 2
    while comb(n + 1, k - 1) <= target:
        n += 1
    return n


def universal_upper_bound(q: int, k: int, s: int, t: int,
                          phi_source: str = "formula",
                          max_m: int | None = None) -> BoundReport:
    """Scan code sizes m and intersect the two counting bounds.

    ub1(m) = max n with C(n,k-1) <= C(m,t+1) is nondecreasing; ub2(m) =
    floor((k-1) C(m,t+1) / phi(m)) is nonincreasing once phi turns positive
    (verified numerically along the scan).  The answer is max over m of
    min(ub1, ub2), reported with the smallest m attaining it; the scan stops
    once ub2 has dropped strictly below both ub1 and the running best,
    which monotonicity makes sound.
    """
    if phi_source not in ("formula", "oracle"):
        raise PreconditionError(f"phi_source must be formula or oracle, got {phi_source!r}")
    if phi_source == "formula" and not (s == 1 or (s, t) == (2, 2)):
        raise PreconditionError(f"no phi formula for (s,t)=({s},{t}); use the oracle")
    if not q > t >= s >= 1:
        raise PreconditionError(f"need q > t >= s >= 1, got q={q} s={s} t={t}")
    if k < 2:
        raise PreconditionError(f"need k >= 2, got k={k}")

    def phi(m):
        if m <= q:
            return 0  # an all-distinct filling has no low-diversity subset
        if phi_source == "oracle":
            return phi_bruteforce(m, q, s, t)
        return phi_lower_s1(m, q, t) if s == 1 else varphi(m, q)

    cap = max_m if max_m is not None else ceiling("SCAN_CEILING", DEFAULT_SCAN_CEILING)
    best = None
    best_m = None
    prev_ub2 = None
    stop_reason = f"scan ceiling {cap} reached without stabilizing"
    for m in range(max(2, t + 1), cap + 1):
        u1 = _ub1(m, k, t)
        ph = phi(m)
        if ph == 0:
            cand = u1
            u2 = None
        else:
            u2 = ((k - 1) * comb(m, t + 1)) // ph
            if prev_ub2 is not None and u2 > prev_ub2:
                raise AssertionError(
                    f"phi trade-off bound increased from {prev_ub2} to {u2} at m={m}")
            prev_ub2 = u2
            cand = min(u1, u2)
        if best is None or cand > best:
            best, best_m = cand, m
        if u2 is not None and u2 < u1 and u2 <= best:
            stop_reason = f"stopped at m={m}: trade-off bound {u2} below both ub1={u1} and best={best}"
            break

    quantity = f"f({q},{k})" if (s, t) == (1, 1) else f"f_{{{s},{t}}}({q},{k})"
    return BoundReport(
        quantity=quantity,
        upper=best,
        upper_trace=f"universal bound via {phi_source} phi; {stop_reason}",
        m_star=best_m,
    )


# ---------------------------------------------------------------------------
# probabilistic machinery


@dataclass(frozen=True)
class ChernoffResult:
    exact: Fraction          # exact binomial tail B(k, n, 1/q)
    estimate: float | None   # (n/(qk))^k e^{k-n/q} when k > n/q, else None


def chernoff_B(k: int, n: int, q: int) -> ChernoffResult:
    """Exact tail sum over l = k..n of C(n,l) (1/q)^l (1-1/q)^{n-l}, plus
    the exponential estimate valid above the mean."""
    if not 0 <= k <= n:
        raise PreconditionError(f"need 0 <= k <= n, got k={k} n={n}")
    if q < 2:
        raise PreconditionError(f"q must be at least 2, got {q}")
    p = Fraction(1, q)
    exact = sum(comb(n, l) * p ** l * (1 - p) ** (n - l) for l in range(k, n + 1))
    estimate = None
    if k > Fraction(n, q):
        estimate = (n / (q * k)) ** k * math.exp(k - n / q)
    return ChernoffResult(exact=exact, estimate=estimate)


@dataclass(frozen=True)
class LllFeasibility:
    feasible: bool
    lhs: Fraction             # 2 (t+1)^2 C(n, k-1) B(k, n, 1/q)
    bad_event_probability: Fraction
    dependency_degree: int    # 2 (t+1)^2 C(n,k-1) - 3 (t+1)^2 - 1
    detail: str = ""


def lll_feasible(q: int, k: int, t: int, n: int) -> LllFeasibility:
    """Exact evaluation of the local-lemma sufficient condition
    2 (t+1)^2 C(n,k-1) B(k,n,1/q) < 1/e for the block construction."""
    if not n > k:
        raise PreconditionError(f"need n > k, got n={n} k={k}")
    b = chernoff_B(k, n, q).exact
    lhs = 2 * (t + 1) ** 2 * comb(n, k - 1) * b
    degree = 2 * (t + 1) ** 2 * comb(n, k - 1) - 3 * (t + 1) ** 2 - 1
    if lhs * _E_HI < 1:
        feasible, detail = True, "lhs * e < 1 certified"
    elif lhs * _E_LO >= 1:
        feasible, detail = False, "lhs * e >= 1 certified"
    else:
        raise AssertionError("e bracket too coarse to decide feasibility")
    return LllFeasibility(feasible=feasible, lhs=lhs, bad_event_probability=b,
                          dependency_degree=degree, detail=detail)


def lll_lower_bound(q: int, k: int, t: int) -> BoundReport:
    """Existence bound n = (1/(2e(t+1)^2))^{1/(2k)} sqrt(q)/e * k, floored,
    applicable for q above the 4e^2 (2e(t+1)^2)^{1/k} threshold; the
    feasibility inequality is re-checked exactly at the returned n."""
    if t < 1 or k < 2 or q < 2:
        raise PreconditionError(f"need q >= 2, k >= 2, t >= 1, got q={q} k={k} t={t}")
    threshold = 4 * math.e ** 2 * (2 * math.e * (t + 1) ** 2) ** (1 / k)
    quantity = f"f_{{1,{t}}}({q},{k})"
    if q <= threshold:
        return BoundReport(
            quantity=quantity,
            notes=(f"inapplicable: q = {q} <= threshold {threshold:.3f}",),
        )
    n = math.floor((1 / (2 * math.e * (t + 1) ** 2)) ** (1 / (2 * k))
                   * math.sqrt(q) / math.e * k)
    check = lll_feasible(q, k, t, n)
    notes = (f"threshold {threshold:.3f}",
             f"feasibility at n={n}: {check.feasible} ({check.detail})")
    if not check.feasible:
        raise AssertionError(f"returned n={n} failed the exact feasibility cross-check")
    return BoundReport(quantity=quantity, lower=n,
                       lower_witness="randomized block construction", notes=notes)
