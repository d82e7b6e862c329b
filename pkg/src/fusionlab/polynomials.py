"""Exact arithmetic on integer-coefficient polynomials.

Coefficients are arbitrary-precision Python ints stored in ascending degree
order with no trailing zeros; the zero polynomial has an empty tuple.
"""

from __future__ import annotations

import math
from typing import Iterable


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *args):
        raise AttributeError("IntPolynomial is immutable")

    # --- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "IntPolynomial":
        return cls((0,) * power + (coeff,))

    @classmethod
    def linear(cls, root: int) -> "IntPolynomial":
        """x - root"""
        return cls((-root, 1))

    # --- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, value: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    # --- ring operations --------------------------------------------------

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial.zero()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        acc = IntPolynomial.one()
        for _ in range(k):
            acc = acc * self
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def divide_linear(self, root: int) -> tuple["IntPolynomial", int]:
        """Synthetic division by ``x - root``; returns (quotient, remainder)."""
        if self.is_zero():
            return IntPolynomial.zero(), 0
        out = [0] * self.degree
        acc = 0
        for i in range(self.degree, 0, -1):
            acc = acc * root + self.coeffs[i]
            out[i - 1] = acc
        return IntPolynomial(out), acc * root + self.coeffs[0]

    def divexact(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """Exact division; raises ValueError if the division has a remainder."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dcs = divisor.coeffs
        dd, lead = len(dcs) - 1, dcs[-1]
        if len(rem) - 1 < dd:
            if any(rem):
                raise ValueError("division is not exact")
            return IntPolynomial.zero()
        out = [0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            q, r = divmod(rem[i], lead)
            if r:
                raise ValueError("division is not exact")
            out[i - dd] = q
            for j, c in enumerate(dcs):
                rem[i - dd + j] -= q * c
        if any(rem):
            raise ValueError("division is not exact")
        return IntPolynomial(out)

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive_part(self) -> "IntPolynomial":
        if self.is_zero():
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return IntPolynomial(x // c for x in self.coeffs)

    # --- display ------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                var = "x" if i == 1 else f"x^{i}"
                term = var if abs(c) == 1 else f"{abs(c)}*{var}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"IntPolynomial({self})"


def pseudo_remainder(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """prem(a, b): remainder of lc(b)^(deg a - deg b + 1) * a modulo b.

    Division-free: each elimination step scales the remainder by lc(b).
    """
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero")
    lead = b.leading
    steps = a.degree - b.degree + 1
    if steps <= 0:
        return a
    r = a
    while not r.is_zero() and r.degree >= b.degree:
        shift = IntPolynomial.monomial(r.degree - b.degree, r.leading)
        r = r * lead - shift * b
        steps -= 1
    if steps > 0:
        r = r * (lead ** steps)
    return r


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over the integers (positive leading coefficient)."""
    a, b = a.primitive_part(), b.primitive_part()
    while not b.is_zero():
        a, b = b, pseudo_remainder(a, b).primitive_part()
    return a


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """p / gcd(p, p'), normalized monic; requires monic input."""
    if not p.is_monic():
        raise ValueError("squarefree part requires a monic polynomial")
    g = poly_gcd(p, p.derivative())
    return p.divexact(g)
