"""Exact spectral integrality of 0/1 adjacency matrices.

Characteristic polynomials are computed over arbitrary-precision integers
(object-dtype matrices), so certificates are exact: the extracted integer
eigenvalues and the residual factor reconstruct the characteristic polynomial
with integer equality, which is re-checked on every call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polynomials import IntPolynomial, squarefree_part
from .schemes import AssociationScheme, adjacency

DIMENSION_CAP = 4096


def char_poly(matrix: np.ndarray) -> IntPolynomial:
    """Monic characteristic polynomial det(xI - A), exactly.

    Uses the trace recurrence with exact integer divisions; the final
    recurrence step must vanish, which re-verifies the whole computation.
    """
    a = np.asarray(matrix, dtype=object)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("characteristic polynomial of a non-square matrix")
    if n > DIMENSION_CAP:
        raise ValueError(f"dimension {n} exceeds cap {DIMENSION_CAP}")
    if n == 0:
        return IntPolynomial.one()
    ident = np.eye(n, dtype=object)
    am = np.zeros((n, n), dtype=object)
    coeff = 1
    descending = [1]
    for k in range(1, n + 1):
        mk = am + coeff * ident
        am = a @ mk
        trace = int(am.trace())
        if trace % k:
            raise ArithmeticError("trace recurrence produced a non-integer step")
        coeff = -(trace // k)
        descending.append(coeff)
    if ((am + coeff * ident) != 0).any():
        raise ArithmeticError("trace recurrence failed its final identity")
    return IntPolynomial(reversed(descending))


def min_poly_symmetric(p: IntPolynomial) -> IntPolynomial:
    """Minimal polynomial from the characteristic polynomial of a symmetric
    integer matrix (diagonalizable, so it is the squarefree part)."""
    return squarefree_part(p)


def min_poly(matrix: np.ndarray) -> IntPolynomial:
    """Minimal polynomial of a symmetric integer matrix; rejects
    non-symmetric input."""
    a = np.asarray(matrix)
    if not np.array_equal(a, a.T):
        raise ValueError("minimal polynomial is only computed for symmetric matrices")
    return min_poly_symmetric(char_poly(a))


def integer_roots(
    p: IntPolynomial, bound: int
) -> tuple[list[tuple[int, int]], IntPolynomial]:
    """All integer roots in [-bound, bound] with multiplicity, extracted by
    exact synthetic division; returns (roots, residual).

    For a monic p whose roots all lie in [-bound, bound] (e.g. the valency
    bound of a regular graph), the residual has no integer roots at all.
    """
    if not p.is_monic():
        raise ValueError("integer root extraction requires a monic polynomial")
    roots: list[tuple[int, int]] = []
    residual = p
    for r in range(-bound, bound + 1):
        mult = 0
        while not residual.is_zero() and residual.degree >= 1:
            quotient, rem = residual.divide_linear(r)
            if rem != 0:
                break
            residual = quotient
            mult += 1
        if mult:
            roots.append((r, mult))
    return roots, residual


@dataclass(frozen=True)
class IntegralityCertificate:
    """Exact verdict on the spectrum of one 0/1 adjacency matrix."""

    integral: bool
    eigenvalues: tuple[tuple[int, int], ...]  # (root, multiplicity) ascending
    residual: IntPolynomial
    char: IntPolynomial
    valency: int

    def verify(self) -> bool:
        """Recheck the reconstruction identity and verdict consistency."""
        product = self.residual
        for root, mult in self.eigenvalues:
            product = product * (IntPolynomial.linear(root) ** mult)
        if product != self.char:
            return False
        if self.integral != (self.residual == IntPolynomial.one()):
            return False
        return all(self.residual(r) != 0 for r in range(-self.valency, self.valency + 1))

    def to_dict(self) -> dict:
        return {
            "integral": self.integral,
            "eigenvalues": [[r, m] for r, m in self.eigenvalues],
            "residual": list(self.residual.coeffs),
            "char_poly": list(self.char.coeffs),
            "valency": self.valency,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IntegralityCertificate":
        return cls(
            integral=bool(data["integral"]),
            eigenvalues=tuple((int(r), int(m)) for r, m in data["eigenvalues"]),
            residual=IntPolynomial(data["residual"]),
            char=IntPolynomial(data["char_poly"]),
            valency=int(data["valency"]),
        )


def factored_str(cert: IntegralityCertificate) -> str:
    """Human-readable factored form, e.g. ``x*(x - 2)*(x + 1)^2*(x^2 - 12)``."""
    parts = []
    for root, mult in cert.eigenvalues:
        if root == 0:
            base = "x"
        else:
            base = f"(x - {root})" if root > 0 else f"(x + {-root})"
        parts.append(base if mult == 1 else f"{base}^{mult}")
    if cert.residual != IntPolynomial.one():
        parts.append(f"({cert.residual})")
    return "*".join(parts) if parts else "1"


def is_integral(matrix: np.ndarray, valency: int | None = None) -> IntegralityCertificate:
    """Exact integrality certificate for a 0/1 matrix with constant row sums."""
    a = np.asarray(matrix)
    if ((a != 0) & (a != 1)).any():
        raise ValueError("adjacency entries must be 0/1")
    sums = a.sum(axis=1)
    if a.shape[0] and (sums != sums[0]).any():
        raise ValueError("adjacency must have constant row sums")
    observed = int(sums[0]) if a.shape[0] else 0
    if valency is not None and valency != observed:
        raise ValueError(f"declared valency {valency} != row sum {observed}")
    p = char_poly(a)
    roots, residual = integer_roots(p, observed)
    cert = IntegralityCertificate(
        integral=(residual == IntPolynomial.one()),
        eigenvalues=tuple(roots),
        residual=residual,
        char=p,
        valency=observed,
    )
    if not cert.verify():
        raise ArithmeticError("integrality certificate failed self-verification")
    return cert


@dataclass(frozen=True)
class SchemeIntegrality:
    integral: bool
    first_failing_class: int | None
    certificates: tuple[IntegralityCertificate, ...]


def scheme_integral(scheme: AssociationScheme) -> SchemeIntegrality:
    """A scheme is integral iff every class's adjacency matrix is."""
    certs = []
    failing = None
    for s in range(scheme.rank):
        cert = is_integral(adjacency(scheme, [s]), int(scheme.valency[s]))
        certs.append(cert)
        if failing is None and not cert.integral:
            failing = s
    return SchemeIntegrality(failing is None, failing, tuple(certs))
