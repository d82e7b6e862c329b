"""Desirability verdicts: is every symmetric fusion of a scheme integral?

A group is checked through its regular-action scheme.  Verdicts carry
machine-checkable certificates: an ``undesirable`` verdict names a witness
partition and the exact non-integral spectrum of one fused relation; a
``desirable`` verdict requires a complete enumeration.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .errors import BlockNotInPartition, InvalidFusion
from .fusion import (
    FusionBudget,
    FusionPartition,
    enumerate_symmetric_fusions,
    is_symmetric_partition,
    is_valid_fusion,
    lift_subscheme_fusion,
    matrix_fusion_check,
)
from .groups import FiniteGroup, catalog
from .integrality import (
    IntegralityCertificate,
    char_poly,
    integer_roots,
    is_integral,
    min_poly_symmetric,
)
from .polynomials import IntPolynomial
from .schemes import AssociationScheme, adjacency, is_closed, scheme_from_group

ALLOWED_ELEMENT_ORDERS = frozenset({1, 2, 3, 4, 6})


def order_filter(group: FiniteGroup) -> tuple[int, int] | None:
    """First (element, order) with order outside {1, 2, 3, 4, 6}, else None.

    Any such element makes the group undesirable: the transpose pairing on
    its cyclic subgroup lifts to a symmetric fusion whose fused generator
    class is a disjoint union of n-cycles with non-integral spectrum.
    """
    for a in range(group.order):
        k = group.element_order(a)
        if k not in ALLOWED_ELEMENT_ORDERS:
            return a, k
    return None


@dataclass(frozen=True)
class DesirabilityVerdict:
    status: str  # desirable | undesirable | unknown
    group: str | None = None
    fusions_examined: int | None = None
    nodes_examined: int | None = None
    witness: FusionPartition | None = None
    failing_block: tuple[int, ...] | None = None
    certificate: IntegralityCertificate | None = None
    order_violation: tuple[int, int] | None = None
    budget_max_nodes: int | None = None

    def to_dict(self) -> dict:
        out: dict = {"group": self.group, "verdict": self.status}
        if self.fusions_examined is not None:
            out["fusions_examined"] = self.fusions_examined
        if self.nodes_examined is not None:
            out["nodes_examined"] = self.nodes_examined
        if self.budget_max_nodes is not None:
            out["budget"] = {"max_nodes": self.budget_max_nodes}
        if self.witness is not None and self.certificate is not None:
            out["witness"] = {
                "blocks": [list(b) for b in self.witness.blocks],
                "failing_block": list(self.failing_block or ()),
                "char_poly": list(self.certificate.char.coeffs),
                "min_poly": list(min_poly_symmetric(self.certificate.char).coeffs),
                "residual": list(self.certificate.residual.coeffs),
                "eigenvalues": [[r, m] for r, m in self.certificate.eigenvalues],
            }
        if self.order_violation is not None:
            out["order_violation"] = {
                "element": self.order_violation[0],
                "order": self.order_violation[1],
            }
        return out


def _cyclic_order_witness(
    group: FiniteGroup, scheme: AssociationScheme, element: int
) -> tuple[FusionPartition, tuple[int, ...]]:
    """Lift the transpose pairing of <element> to a fusion of the whole
    scheme; the fused class {element, element^-1} is the failing relation."""
    powers = []
    acc = element
    while acc != 0:
        powers.append(acc)
        acc = group.mul(acc, element)
    powers.append(0)
    closed = is_closed(scheme, powers)
    inner: list[tuple[int, ...]] = []
    seen: set[int] = set()
    for h in sorted(powers):
        if h in seen:
            continue
        inv = group.inv(h)
        seen.update({h, inv})
        inner.append((h,) if h == inv else tuple(sorted((h, inv))))
    partition = lift_subscheme_fusion(scheme, closed, inner)
    failing = tuple(sorted({element, group.inv(element)}))
    return partition, failing


def check_scheme_desirable(
    scheme: AssociationScheme,
    budget: FusionBudget | None = None,
    group_name: str | None = None,
) -> DesirabilityVerdict:
    """Enumerate symmetric fusions and test each fused relation's spectrum.

    Smallest fused blocks are tested first and the first non-integral
    certificate short-circuits; a ``desirable`` verdict requires the
    enumeration to have completed within budget.
    """
    budget = budget or FusionBudget()
    enum = enumerate_symmetric_fusions(scheme, budget)
    cache: dict[tuple[int, ...], IntegralityCertificate] = {}
    for partition in enum.partitions:
        for block in sorted(partition.blocks[1:], key=lambda b: (len(b), b)):
            cert = cache.get(block)
            if cert is None:
                valency = int(sum(scheme.valency[c] for c in block))
                cert = is_integral(adjacency(scheme, block), valency)
                cache[block] = cert
            if not cert.integral:
                return DesirabilityVerdict(
                    status="undesirable", group=group_name,
                    fusions_examined=len(enum.partitions),
                    nodes_examined=enum.nodes_examined,
                    witness=partition, failing_block=block, certificate=cert,
                    budget_max_nodes=budget.max_nodes)
    if enum.complete:
        return DesirabilityVerdict(
            status="desirable", group=group_name,
            fusions_examined=len(enum.partitions),
            nodes_examined=enum.nodes_examined,
            budget_max_nodes=budget.max_nodes)
    return DesirabilityVerdict(
        status="unknown", group=group_name,
        fusions_examined=len(enum.partitions),
        nodes_examined=enum.nodes_examined,
        budget_max_nodes=budget.max_nodes)


def check_desirable(group: FiniteGroup, budget: FusionBudget | None = None) -> DesirabilityVerdict:
    """Group-level check: the element-order filter first, then the full
    enumeration of symmetric fusions of the regular-action scheme."""
    budget = budget or FusionBudget()
    violation = order_filter(group)
    if violation is not None:
        element, order = violation
        scheme = scheme_from_group(group)
        partition, failing = _cyclic_order_witness(group, scheme, element)
        cert = is_integral(adjacency(scheme, failing), len(failing))
        if cert.integral:
            raise ArithmeticError(
                f"order-{order} cycle witness unexpectedly integral in {group.name}")
        return DesirabilityVerdict(
            status="undesirable", group=group.name,
            witness=partition, failing_block=failing, certificate=cert,
            order_violation=violation, budget_max_nodes=budget.max_nodes)
    return check_scheme_desirable(scheme_from_group(group), budget, group.name)


@dataclass(frozen=True)
class WitnessReport:
    group: str
    partition: FusionPartition
    failing_block: tuple[int, ...]
    valency: int
    char: IntPolynomial
    min: IntPolynomial
    eigenvalues: tuple[tuple[int, int], ...]
    residual: IntPolynomial
    non_integral: bool

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "blocks": [list(b) for b in self.partition.blocks],
            "failing_block": list(self.failing_block),
            "valency": self.valency,
            "char_poly": list(self.char.coeffs),
            "min_poly": list(self.min.coeffs),
            "eigenvalues": [[r, m] for r, m in self.eigenvalues],
            "residual": list(self.residual.coeffs),
            "non_integral": self.non_integral,
        }


def verify_witness(
    group: FiniteGroup, partition: FusionPartition, block: tuple[int, ...]
) -> WitnessReport:
    """Re-validate a witness through the matrix route and produce its exact
    polynomials; raises InvalidFusion / BlockNotInPartition on bad input."""
    scheme = scheme_from_group(group)
    if not is_symmetric_partition(scheme, partition):
        raise InvalidFusion("witness partition is not symmetric")
    if not matrix_fusion_check(scheme, partition):
        raise InvalidFusion("witness partition is not a valid fusion")
    block = tuple(sorted(int(c) for c in block))
    if block not in partition.blocks:
        raise BlockNotInPartition(f"block {block} not in partition")
    mat = adjacency(scheme, block)
    valency = int(mat.sum(axis=1)[0])
    p = char_poly(mat)
    roots, residual = integer_roots(p, valency)
    return WitnessReport(
        group=group.name, partition=partition, failing_block=block,
        valency=valency, char=p, min=min_poly_symmetric(p),
        eigenvalues=tuple(roots), residual=residual,
        non_integral=(residual != IntPolynomial.one()))


# --- certificate round-trip ----------------------------------------------------

def verify_certificate(data: dict, budget: FusionBudget | None = None) -> tuple[bool, str]:
    """Re-verify a certificate dict produced by ``DesirabilityVerdict.to_dict``.

    Undesirable certificates are re-validated from scratch through the
    independent matrix route; desirable ones re-run the full check with the
    stored node budget and must reproduce the verdict.
    """
    group = catalog(data["group"])
    verdict = data["verdict"]
    if verdict == "undesirable":
        wit = data.get("witness")
        if not wit:
            return False, "undesirable certificate lacks a witness"
        partition = FusionPartition(tuple(tuple(b) for b in wit["blocks"]))
        report = verify_witness(group, partition, tuple(wit["failing_block"]))
        if not report.non_integral:
            return False, "witness relation is integral"
        if list(report.char.coeffs) != list(wit["char_poly"]):
            return False, "characteristic polynomial mismatch"
        if list(report.residual.coeffs) != list(wit["residual"]):
            return False, "residual mismatch"
        if list(report.min.coeffs) != list(wit["min_poly"]):
            return False, "minimal polynomial mismatch"
        return True, "undesirable witness re-verified"
    if verdict == "desirable":
        if budget is None:
            stored = data.get("budget", {}).get("max_nodes")
            budget = FusionBudget(max_nodes=stored) if stored else FusionBudget()
        fresh = check_desirable(group, budget)
        if fresh.status != "desirable":
            return False, f"re-check produced {fresh.status}"
        if data.get("fusions_examined") not in (None, fresh.fusions_examined):
            return False, "fusion count mismatch"
        return True, "desirable verdict reproduced by full re-check"
    return False, "unknown verdicts carry no verifiable claim"
