"""Stored non-integrality witnesses for small groups of order 2^a 3^b.

Each fixture is a symmetric fusion partition given by element words resolved
against the catalog's generator naming, plus the failing fused relation.
Fixtures are re-checked for symmetry and validity at load time; if a stored
partition fails (the 27-element fixture's cosets are miscopied at the
source), the partition is recovered by a bounded search for a valid fusion
extending the trustworthy blocks and matching the expected minimal
polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fusion import (
    FusionBudget,
    FusionPartition,
    enumerate_symmetric_fusions,
    is_symmetric_partition,
    is_valid_fusion,
)
from .groups import FiniteGroup, catalog
from .integrality import min_poly
from .polynomials import IntPolynomial
from .schemes import AssociationScheme, adjacency, scheme_from_group

_X = IntPolynomial.x()


def _c(value: int) -> IntPolynomial:
    return IntPolynomial((value,))


@dataclass(frozen=True)
class WitnessFixture:
    ident: str
    group_key: str
    block_words: tuple[tuple[str, ...], ...]
    failing_words: tuple[str, ...]
    min_poly_target: IntPolynomial | None = None


FIXTURES: dict[str, WitnessFixture] = {
    "3.1": WitnessFixture(
        ident="3.1", group_key="D8",
        block_words=(
            ("1",), ("x^2",), ("x", "x^3"), ("y", "y*x"), ("y*x^2", "y*x^3")),
        failing_words=("y", "y*x"),
    ),
    "3.2": WitnessFixture(
        ident="3.2", group_key="A4",
        block_words=(
            ("1",), ("(12)(34)",),
            ("(13)(24)", "(123)", "(132)", "(124)", "(142)"),
            ("(14)(23)", "(134)", "(143)", "(234)", "(243)")),
        failing_words=("(13)(24)", "(123)", "(132)", "(124)", "(142)"),
    ),
    "3.3": WitnessFixture(
        ident="3.3", group_key="E9:C2",
        block_words=(
            ("1",), ("x", "x^2"),
            ("y", "x*y", "x^2*y", "y^2", "x*y^2", "x^2*y^2"),
            ("z", "y*z", "x*y^2*z"),
            ("x*z", "x^2*z", "y^2*z", "x*y*z", "x^2*y*z", "x^2*y^2*z")),
        failing_words=("z", "y*z", "x*y^2*z"),
    ),
    "3.4": WitnessFixture(
        ident="3.4", group_key="S3xC3",
        block_words=(
            ("1",), ("y", "y^2"),
            ("x", "x*y", "x*y^2", "x^2", "x^2*y", "x^2*y^2"),
            ("z", "x*y*z", "x^2*y*z"),
            ("y*z", "y^2*z", "x*z", "x*y^2*z", "x^2*z", "x^2*y^2*z")),
        failing_words=("z", "x*y*z", "x^2*y*z"),
    ),
    "3.5": WitnessFixture(
        ident="3.5", group_key="C2xC2xS3",
        block_words=(
            ("1",), ("x*y",), ("sigma", "sigma^2"),
            ("x*tau", "y*sigma*tau"), ("x*y*sigma", "x*y*sigma^2"),
            ("x*sigma^2*tau", "y*sigma^2*tau"), ("x*sigma*tau", "y*tau"),
            ("x",), ("y",), ("x*sigma", "x*sigma^2"),
            ("tau", "x*y*sigma*tau"), ("y*sigma", "y*sigma^2"),
            ("sigma^2*tau", "x*y*sigma^2*tau"), ("sigma*tau", "x*y*tau")),
        failing_words=("x*tau", "y*sigma*tau"),
    ),
    "3.6": WitnessFixture(
        ident="3.6", group_key="C3:C4xC2",
        block_words=(
            ("1",), ("x",), ("y^2",), ("x*y^2",),
            ("z", "z^2"), ("x*z", "x*z^2"),
            ("y^2*z", "y^2*z^2"), ("x*y^2*z", "x*y^2*z^2"),
            ("y", "x*y", "y^3", "x*y^3"),
            ("z*y", "z*y^3", "x*z^2*y^3", "z^2*x*y"),
            ("x*z*y", "x*z*y^3", "z^2*y^3", "z^2*y")),
        failing_words=("z*y", "z*y^3", "x*z^2*y^3", "z^2*x*y"),
        min_poly_target=_X * (_X**2 - _c(4)) * (_X**2 - _c(16)) * (_X**2 - _c(12)),
    ),
    "3.7": WitnessFixture(
        ident="3.7", group_key="Heis27",
        block_words=(
            ("1",), ("x", "x^2"),
            ("y", "y^2", "x*y", "x*y^2", "x^2*y", "x^2*y^2"),
            ("z", "z^2", "y*z", "x^2*y^2*z^2", "x^2*y^2*z", "x^2*y*z^2"),
            ("x*z", "x^2*z^2", "x*y*z", "x*y^2*z^2", "y^2*z", "x*y*z^2"),
            ("x^2*z", "x*z^2", "x^2*y*z", "y^2*z^2*z", "x*y^2*z", "y*z")),
        failing_words=("z", "z^2", "y*z", "x^2*y^2*z^2", "x^2*y^2*z", "x^2*y*z^2"),
        min_poly_target=_X * (_X + _c(3)) * (_X - _c(6)) * (_X**3 - 9 * _X - _c(9)),
    ),
}

# how many leading blocks of the stored 27-element fixture are trusted when
# the verbatim cosets fail and the partition must be recovered by search
_TRUSTED_PREFIX = 3


def witness_ids() -> list[str]:
    return sorted(FIXTURES)


def _resolve_blocks(
    group: FiniteGroup, words: tuple[tuple[str, ...], ...]
) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(group.element(w) for w in blk) for blk in words)


def load_witness(ident: str) -> tuple[FiniteGroup, FusionPartition, tuple[int, ...]]:
    """Resolve a stored witness to (group, partition, failing block).

    The stored partition is validated; on failure the partition is recovered
    by searching for a valid symmetric fusion that extends the trusted
    leading blocks and contains a block with the expected minimal polynomial.
    """
    fixture = FIXTURES[ident]
    group = catalog(fixture.group_key)
    scheme = scheme_from_group(group)
    try:
        blocks = _resolve_blocks(group, fixture.block_words)
        partition = FusionPartition(blocks)
        if partition.classes() != set(range(scheme.rank)):
            raise ValueError("stored blocks do not cover the group")
        if not is_symmetric_partition(scheme, partition):
            raise ValueError("stored partition is not symmetric")
        ok, _ = is_valid_fusion(scheme, partition)
        if not ok:
            raise ValueError("stored partition is not a valid fusion")
        failing = tuple(sorted(group.element(w) for w in fixture.failing_words))
        return group, partition, failing
    except ValueError:
        if fixture.min_poly_target is None:
            raise
        return group, *_recover_by_search(group, scheme, fixture)


def _recover_by_search(
    group: FiniteGroup, scheme: AssociationScheme, fixture: WitnessFixture
) -> tuple[FusionPartition, tuple[int, ...]]:
    trusted = _resolve_blocks(group, fixture.block_words[:_TRUSTED_PREFIX])
    enum = enumerate_symmetric_fusions(
        scheme, FusionBudget(max_nodes=5_000_000), fixed_blocks=trusted)
    if not enum.complete:
        raise LookupError(f"witness search for {fixture.ident} exhausted its budget")
    for partition in enum.partitions:
        for block in partition.blocks[1:]:
            if min_poly(adjacency(scheme, block)) == fixture.min_poly_target:
                return partition, block
    raise LookupError(f"no fusion matching the stored polynomial for {fixture.ident}")


# --- structural checks used to pin down witness graphs -------------------------

def connected_components(adj: np.ndarray) -> list[list[int]]:
    n = adj.shape[0]
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in np.flatnonzero(adj[v]):
                if not seen[w]:
                    seen[w] = True
                    stack.append(int(w))
        comps.append(sorted(comp))
    return comps


def cycle_component_lengths(adj: np.ndarray) -> list[int] | None:
    """Component sizes if the graph is a disjoint union of cycles, else None."""
    if (np.diagonal(adj) != 0).any() or not np.array_equal(adj, adj.T):
        return None
    if (adj.sum(axis=1) != 2).any():
        return None
    return sorted(len(c) for c in connected_components(adj))


def is_bipartite(adj: np.ndarray) -> bool:
    n = adj.shape[0]
    color = np.full(n, -1)
    for start in range(n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in np.flatnonzero(adj[v]):
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(int(w))
                elif color[w] == color[v]:
                    return False
    return True
