"""Finite field arithmetic over GF(p^e) for small prime powers.

Elements are represented by their index in 0..q-1; the base-p digits of an
index (least significant digit first) are the coefficients of the element as
a polynomial over GF(p).  Index 0 is the zero element and index 1 the one
element, and the enumeration order is fixed, so indices double as a stable
symbol mapping for code construction (symbol = index + 1).

The reducing modulus is chosen deterministically: the monic irreducible
polynomial of degree e whose coefficient vector encodes the smallest base-p
integer.  Armstrong-code properties do not depend on this choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .report import PreconditionError, StructureError


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as (prime, exponent) pairs, ascending."""
    if n < 2:
        raise StructureError(f"cannot factorize {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _poly_trim(a: tuple[int, ...]) -> tuple[int, ...]:
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _poly_add(a, b, p):
    n = max(len(a), len(b))
    return _poly_trim(tuple(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                            for i in range(n)))


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(tuple(out))


def _poly_divmod(a, b, p):
    """Quotient and remainder of a by b over GF(p); b must be nonzero."""
    b = _poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(_poly_trim(a))
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        d = len(a) - len(b)
        q[d] = c
        for i, bi in enumerate(b):
            a[d + i] = (a[d + i] - c * bi) % p
        a = list(_poly_trim(tuple(a)))
        if not a:
            break
    return _poly_trim(tuple(q)), _poly_trim(tuple(a))


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for idx in range(p ** d):
            cand = _digits(idx, p, d) + (1,)
            _, rem = _poly_divmod(poly, cand, p)
            if not rem:
                return False
    return True


def _digits(idx: int, p: int, length: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        out.append(idx % p)
        idx //= p
    return tuple(out)


def _index(digits: tuple[int, ...], p: int) -> int:
    out = 0
    for d in reversed(digits):
        out = out * p + d
    return out


@dataclass(frozen=True)
class Field:
    """GF(p^e) with a fixed monic irreducible modulus of degree e."""

    p: int
    e: int
    modulus: tuple[int, ...]  # ascending coefficients, length e+1, monic

    @property
    def q(self) -> int:
        return self.p ** self.e

    def elements(self) -> range:
        return range(self.q)

    def element_vector(self, a: int) -> tuple[int, ...]:
        """Coefficient vector (length e) of element index a."""
        if not 0 <= a < self.q:
            raise StructureError(f"element index {a} out of range for q={self.q}")
        return _digits(a, self.p, self.e)

    def vector_index(self, vec) -> int:
        vec = tuple(c % self.p for c in vec)
        if len(vec) != self.e:
            raise StructureError(f"coefficient vector must have length {self.e}")
        return _index(vec, self.p)

    def add(self, a: int, b: int) -> int:
        va, vb = self.element_vector(a), self.element_vector(b)
        return _index(tuple((x + y) % self.p for x, y in zip(va, vb)), self.p)

    def neg(self, a: int) -> int:
        va = self.element_vector(a)
        return _index(tuple((-x) % self.p for x in va), self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        va = _poly_trim(self.element_vector(a))
        vb = _poly_trim(self.element_vector(b))
        prod = _poly_mul(va, vb, self.p)
        _, rem = _poly_divmod(prod, self.modulus, self.p)
        return _index(rem + (0,) * (self.e - len(rem)), self.p)

    def inv(self, a: int) -> int:
        """Multiplicative inverse by the extended Euclidean algorithm."""
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        r0, r1 = self.modulus, _poly_trim(self.element_vector(a))
        s0, s1 = (), (1,)
        while r1:
            qpoly, rem = _poly_divmod(r0, r1, self.p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_add(s0, tuple((-c) % self.p for c in _poly_mul(qpoly, s1, self.p)), self.p)
        # r0 is a nonzero constant gcd; scale s0 by its inverse
        c = pow(r0[0], -1, self.p)
        res = _poly_trim(tuple((c * x) % self.p for x in s0))
        return _index(res + (0,) * (self.e - len(res)), self.p)

    def poly_eval(self, coeffs, x: int) -> int:
        """Horner evaluation of sum(coeffs[i] * x^i); coeffs are element indices."""
        acc = 0
        for c in reversed(tuple(coeffs)):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.e, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("x" if c == 1 else f"{c}x")
            else:
                terms.append(f"x^{i}" if c == 1 else f"{c}x^{i}")
        return " + ".join(terms)


@lru_cache(maxsize=None)
def field_make(q: int) -> Field:
    """Build GF(q) for a prime power q, rejecting non prime powers.

    The modulus is X itself for prime q, otherwise the minimal monic
    irreducible polynomial of degree e in base-p coefficient order.
    """
    fac = factorize(q)
    if len(fac) != 1:
        shown = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in fac)
        raise PreconditionError(f"q={q} is not a prime power (q = {shown})")
    p, e = fac[0]
    if e == 1:
        return Field(p=p, e=1, modulus=(0, 1))
    for idx in range(p ** e):
        cand = _digits(idx, p, e) + (1,)
        if _is_irreducible(cand, p):
            return Field(p=p, e=e, modulus=cand)
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


def field_arith(spec: Field, op: str, a: int, b: int | None = None) -> int:
    """Dispatch-style arithmetic surface: op in add|mul|neg|inv."""
    if op == "add":
        return spec.add(a, b)
    if op == "mul":
        return spec.mul(a, b)
    if op == "neg":
        return spec.neg(a)
    if op == "inv":
        return spec.inv(a)
    raise StructureError(f"unknown field operation {op!r}")


def poly_eval(spec: Field, coeffs, x: int) -> int:
    return spec.poly_eval(coeffs, x)
