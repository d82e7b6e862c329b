"""Fusion partitions of a scheme's class set: validation, fusing, enumeration.

The enumeration kernel has two interchangeable backends: a compiled extension
(``fusionlab._speedups``) and a pure-python reference (``fusionlab._enum_py``).
The compiled one is preferred at import time; set ``FUSIONLAB_PURE=1`` to
force the fallback.  ``FUSIONLAB_THREADS`` sets the default parallel width.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidFusion
from .schemes import AssociationScheme, ClosedSubset, adjacency, validate

if os.environ.get("FUSIONLAB_PURE"):
    from . import _enum_py as _kernel
    _BACKEND = "pure"
else:
    try:
        from . import _speedups as _kernel  # type: ignore[attr-defined]
        _BACKEND = "compiled"
    except ImportError:
        from . import _enum_py as _kernel
        _BACKEND = "pure"


def kernel_backend() -> str:
    """Name of the search kernel selected at import: compiled or pure."""
    return _BACKEND


@dataclass(frozen=True)
class FusionPartition:
    """A partition of the class set with the diagonal class isolated.

    Blocks are stored canonically: each block sorted ascending, blocks sorted
    by their minimum element, so equal partitions compare equal.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(int(c) for c in b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise ValueError("empty block in fusion partition")
            if seen.intersection(b):
                raise ValueError("blocks are not disjoint")
            seen.update(b)
        if 0 not in seen:
            raise ValueError("partition must cover class 0")
        if blocks[0] != (0,):
            raise ValueError("the diagonal class must form its own block")

    @property
    def rank(self) -> int:
        return len(self.blocks)

    def classes(self) -> set[int]:
        return {c for b in self.blocks for c in b}

    def block_containing(self, cls: int) -> tuple[int, ...]:
        for b in self.blocks:
            if cls in b:
                return b
        raise ValueError(f"class {cls} not covered")

    def __iter__(self):
        return iter(self.blocks)


def canonical_form(partition: FusionPartition) -> str:
    """Unique key: blocks sorted by minimum, elements ascending."""
    return "|".join(",".join(str(c) for c in b) for b in partition.blocks)


@dataclass(frozen=True)
class FusionBudget:
    """Resource bounds for the enumeration search.

    ``max_nodes`` caps the number of candidate partitions examined,
    ``wall_limit`` is in seconds, ``width`` is the parallel fan-out
    (defaulting to the FUSIONLAB_THREADS environment variable, then 1).
    """

    max_nodes: int = 50_000_000
    wall_limit: float | None = None
    width: int | None = None

    def __post_init__(self):
        if self.max_nodes <= 0:
            raise ValueError("max_nodes must be positive")
        if self.wall_limit is not None and self.wall_limit <= 0:
            raise ValueError("wall_limit must be positive")
        if self.width is not None and self.width <= 0:
            raise ValueError("width must be positive")

    def resolved_width(self) -> int:
        if self.width is not None:
            return self.width
        env = os.environ.get("FUSIONLAB_THREADS", "").strip()
        return max(int(env), 1) if env else 1


@dataclass(frozen=True)
class EnumerationResult:
    partitions: tuple[FusionPartition, ...]
    complete: bool
    nodes_examined: int


def atoms_of(scheme: AssociationScheme) -> tuple[tuple[int, ...], ...]:
    """Transpose-pair units {s, s*}; every symmetric fusion block is a union
    of these."""
    atoms = []
    seen = set()
    for s in range(scheme.rank):
        if s in seen:
            continue
        t = int(scheme.star[s])
        seen.update({s, t})
        atoms.append((s,) if s == t else (s, t))
    return tuple(atoms)


def symmetrization(scheme: AssociationScheme) -> FusionPartition:
    """The partition pairing every class with its transpose."""
    return FusionPartition(atoms_of(scheme))


def is_symmetric_partition(scheme: AssociationScheme, partition: FusionPartition) -> bool:
    """True iff every block is closed under the transpose map."""
    return all({int(scheme.star[c]) for c in b} == set(b) for b in partition.blocks)


def _check_cover(scheme: AssociationScheme, partition: FusionPartition) -> None:
    if partition.classes() != set(range(scheme.rank)):
        raise ValueError("partition does not cover the class set exactly")


def is_valid_fusion(
    scheme: AssociationScheme, partition: FusionPartition
) -> tuple[bool, tuple | None]:
    """Decide whether fusing along the partition yields a scheme.

    The criterion: for all blocks B_i, B_j the summed structure constants
    must be constant over each block.  On failure the witness is
    ``("star", i, s, s*)`` for a block not closed under transposition as a
    set map, or ``("constants", i, j, u1, u2)`` for a non-constant sum.
    """
    _check_cover(scheme, partition)
    blocks = partition.blocks
    block_keys = {frozenset(b) for b in blocks}
    for i, b in enumerate(blocks):
        image = frozenset(int(scheme.star[c]) for c in b)
        if image not in block_keys:
            return False, ("star", i, b[0], int(scheme.star[b[0]]))
    k, r = len(blocks), scheme.rank
    member = np.zeros((k, r), dtype=np.int64)
    for i, b in enumerate(blocks):
        member[i, list(b)] = 1
    sums = np.einsum("is,jt,stu->iju", member, member, scheme.constants, optimize=True)
    for i in range(k):
        for j in range(k):
            vec = sums[i, j]
            for b in blocks:
                vals = vec[list(b)]
                if (vals != vals[0]).any():
                    bad = int(np.flatnonzero(vals != vals[0])[0])
                    return False, ("constants", i, j, b[0], b[bad])
    return True, None


def matrix_fusion_check(scheme: AssociationScheme, partition: FusionPartition) -> bool:
    """Independent validity route: every product of fused adjacency matrices
    must be constant on the support of each fused class."""
    _check_cover(scheme, partition)
    mats = [adjacency(scheme, b) for b in partition.blocks]
    supports = [m.astype(bool) for m in mats]
    for ai in mats:
        for aj in mats:
            prod = ai @ aj
            for sup in supports:
                vals = prod[sup]
                if vals.size and (vals != vals[0]).any():
                    return False
    return True


def fuse(scheme: AssociationScheme, partition: FusionPartition) -> AssociationScheme:
    """Relabel classes by block index; raises InvalidFusion if the partition
    does not induce a scheme."""
    ok, witness = is_valid_fusion(scheme, partition)
    if not ok:
        raise InvalidFusion(f"partition is not a fusion: {witness}")
    lookup = np.empty(scheme.rank, dtype=np.int16)
    for i, b in enumerate(partition.blocks):
        lookup[list(b)] = i
    return validate(lookup[scheme.color])


def _pair_tensor(scheme: AssociationScheme, atoms: Sequence[tuple[int, ...]]) -> np.ndarray:
    m, r = len(atoms), scheme.rank
    member = np.zeros((m, r), dtype=np.int64)
    for a, cls in enumerate(atoms):
        member[a, list(cls)] = 1
    return np.ascontiguousarray(
        np.einsum("as,bt,stu->abu", member, member, scheme.constants, optimize=True))


def _atom_prefix(
    atoms: Sequence[tuple[int, ...]], fixed_blocks: Iterable[Iterable[int]]
) -> tuple[tuple[int, ...], ...]:
    atom_of = {}
    for a, cls in enumerate(atoms):
        for c in cls:
            atom_of[c] = a
    prefix = []
    for blk in fixed_blocks:
        classes = set(int(c) for c in blk)
        atom_ids = sorted({atom_of[c] for c in classes})
        covered = {c for a in atom_ids for c in atoms[a]}
        if covered != classes:
            raise ValueError("fixed block is not a union of transpose-pair atoms")
        prefix.append(tuple(atom_ids))
    return tuple(prefix)


def _enum_worker(args):
    pair, atom_classes, max_nodes, wall_limit, lo, hi = args
    return _kernel.enumerate_atom_partitions(
        pair, atom_classes, (), max_nodes, wall_limit, (lo, hi))


def enumerate_symmetric_fusions(
    scheme: AssociationScheme,
    budget: FusionBudget | None = None,
    fixed_blocks: Iterable[Iterable[int]] | None = None,
) -> EnumerationResult:
    """All valid symmetric fusion partitions of the scheme's class set.

    The returned list is sorted canonically and is identical for any parallel
    width.  ``complete`` is False when the node or wall-clock budget ran out,
    in which case the list is a sound but possibly partial enumeration.
    ``fixed_blocks`` restricts the search to partitions containing the given
    class blocks (each must be a union of transpose-pair atoms).
    """
    budget = budget or FusionBudget()
    atoms = atoms_of(scheme)
    free_atoms = atoms[1:]
    m = len(free_atoms)
    # kernel works on the non-identity atoms; class ids stay global
    atom_classes = tuple(tuple(int(c) for c in a) for a in free_atoms)
    pair = _pair_tensor(scheme, free_atoms)
    prefix = _atom_prefix(free_atoms, _strip_identity(fixed_blocks)) if fixed_blocks else ()
    max_nodes = budget.max_nodes
    wall = budget.wall_limit or 0.0
    width = budget.resolved_width()

    if width > 1 and not prefix and m >= 12:
        total = 1 << (m - 1)
        chunk_count = min(width * 4, total)
        bounds = [total * i // chunk_count for i in range(chunk_count + 1)]
        tasks = [(pair, atom_classes, max_nodes, wall, bounds[i], bounds[i + 1])
                 for i in range(chunk_count)]
        with ProcessPoolExecutor(max_workers=width) as pool:
            outcomes = list(pool.map(_enum_worker, tasks))
        raw = [p for out in outcomes for p in out[0]]
        complete = all(out[1] for out in outcomes)
        nodes = sum(out[2] for out in outcomes)
    else:
        raw, complete, nodes = _kernel.enumerate_atom_partitions(
            pair, atom_classes, prefix, max_nodes, wall, None)

    partitions = []
    for atom_blocks in raw:
        blocks = [(0,)]
        for blk in atom_blocks:
            blocks.append(tuple(sorted(c for a in blk for c in atom_classes[a])))
        partitions.append(FusionPartition(tuple(blocks)))
    partitions.sort(key=lambda p: p.blocks)
    return EnumerationResult(tuple(partitions), bool(complete), int(nodes))


def _strip_identity(fixed_blocks: Iterable[Iterable[int]]) -> list[list[int]]:
    out = []
    for blk in fixed_blocks:
        classes = [int(c) for c in blk]
        if classes == [0]:
            continue
        if 0 in classes:
            raise ValueError("class 0 cannot be fused with other classes")
        out.append(classes)
    return out


# --- fusions induced by a closed subset ---------------------------------------

def lift_subscheme_fusion(
    scheme: AssociationScheme,
    closed: ClosedSubset,
    inner_blocks: Iterable[Iterable[int]],
) -> FusionPartition:
    """Extend a fusion of the classes inside a closed subset to the whole
    scheme by merging everything outside into one block."""
    blocks = [tuple(sorted(int(c) for c in b)) for b in inner_blocks]
    covered = {c for b in blocks for c in b}
    if covered != set(closed.classes):
        raise ValueError("inner blocks must partition the closed subset")
    rest = sorted(set(range(scheme.rank)) - covered)
    if rest:
        blocks.append(tuple(rest))
    return FusionPartition(tuple(blocks))


def lift_quotient_fusion(
    scheme: AssociationScheme,
    closed: ClosedSubset,
    quotient_partition: FusionPartition,
    class_map: np.ndarray,
) -> FusionPartition:
    """Pull a fusion of the factor scheme back to the whole scheme: class 0,
    the rest of the closed subset, and one block per non-identity quotient
    block (all classes mapping into it)."""
    blocks: list[tuple[int, ...]] = [(0,)]
    inside = sorted(set(closed.classes) - {0})
    if inside:
        blocks.append(tuple(inside))
    for qblock in quotient_partition.blocks:
        if qblock == (0,):
            continue
        lifted = sorted(int(s) for s in np.flatnonzero(np.isin(class_map, qblock)))
        blocks.append(tuple(lifted))
    return FusionPartition(tuple(blocks))
