"""Association schemes as dense color matrices over X x X.

``color[x, y]`` is the class index of the pair (x, y); class 0 is always the
diagonal.  Schemes are immutable after construction; the structure-constant
tensor is computed lazily once and then shared.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import FusionlabError, SchemeAxiomError
from .groups import FiniteGroup


@dataclass(frozen=True)
class AxiomViolation:
    axiom: int
    message: str
    witness: tuple


class NotClosed(FusionlabError):
    """A class subset fails closure; carries a witness triple (s, t, u)."""

    def __init__(self, witness: tuple[int, int, int]):
        self.witness = witness
        super().__init__(f"not closed: a_stu > 0 for (s, t, u) = {witness}")


class AssociationScheme:
    def __init__(self, color: np.ndarray, star: np.ndarray, valency: np.ndarray):
        self.color = color
        self.star = star
        self.valency = valency
        color.flags.writeable = False
        star.flags.writeable = False
        valency.flags.writeable = False

    @property
    def size(self) -> int:
        return self.color.shape[0]

    @property
    def rank(self) -> int:
        return len(self.star)

    @cached_property
    def constants(self) -> np.ndarray:
        """Structure constants a_stu as an (r, r, r) tensor.

        Counted from one representative pair per class and verified against a
        second representative where one exists.
        """
        color, r = self.color, self.rank
        c = np.zeros((r, r, r), dtype=np.int64)
        for u in range(r):
            xs, ys = np.nonzero(color == u)
            counts = self._pair_counts(xs[0], ys[0])
            c[:, :, u] = counts
            if len(xs) > 1 and not np.array_equal(counts, self._pair_counts(xs[1], ys[1])):
                raise SchemeAxiomError([AxiomViolation(
                    3, "structure constants differ between representatives",
                    (u, (int(xs[0]), int(ys[0])), (int(xs[1]), int(ys[1]))))])
        return c

    def _pair_counts(self, x: int, y: int) -> np.ndarray:
        r = self.rank
        counts = np.zeros((r, r), dtype=np.int64)
        np.add.at(counts, (self.color[x, :], self.color[:, y]), 1)
        return counts

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.star, np.arange(self.rank)))

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "rank": self.rank,
            "star": [int(s) for s in self.star],
            "valencies": [int(v) for v in self.valency],
            "color": [int(c) for c in self.color.ravel()],
        }

    def __repr__(self) -> str:
        return f"AssociationScheme(size={self.size}, rank={self.rank})"


def _star_and_valency(color: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    r = int(color.max()) + 1
    star = np.empty(r, dtype=np.int16)
    for s in range(r):
        xs, ys = np.nonzero(color == s)
        star[s] = color[ys[0], xs[0]]
    valency = np.bincount(color[0], minlength=r).astype(np.int64)
    return star, valency


def axiom_violations(color: np.ndarray) -> list[AxiomViolation]:
    """Full check of the three scheme axioms; empty list means valid."""
    color = np.asarray(color)
    n = color.shape[0]
    out: list[AxiomViolation] = []
    if color.shape != (n, n) or color.min() < 0:
        return [AxiomViolation(1, "not a square matrix of class indices", ())]
    r = int(color.max()) + 1
    diag = np.diagonal(color)
    if (diag != 0).any():
        x = int(np.flatnonzero(diag != 0)[0])
        out.append(AxiomViolation(1, "diagonal entry not in class 0", (x, x)))
    off = color.copy()
    np.fill_diagonal(off, 1)
    if (off == 0).any():
        x, y = (int(v[0]) for v in np.nonzero(off == 0))
        out.append(AxiomViolation(1, "class 0 contains an off-diagonal pair", (x, y)))
    if out:
        return out
    # axiom 2: the transpose of each class is a single class
    star = np.empty(r, dtype=np.int16)
    for s in range(r):
        xs, ys = np.nonzero(color == s)
        star[s] = color[ys[0], xs[0]]
    if not np.array_equal(color.T, star[color]):
        bad = np.nonzero(color.T != star[color])
        x, y = int(bad[0][0]), int(bad[1][0])
        out.append(AxiomViolation(2, "transpose of a class is not a class", (x, y)))
        return out
    # axiom 3: per class, the multiset of (color[x,z], color[z,y]) over z is
    # constant over representative pairs (x,y); compared via sorted codes
    for u in range(r):
        xs, ys = np.nonzero(color == u)
        codes = color[xs, :].astype(np.int64) * r + color[:, ys].T
        codes.sort(axis=1)
        if (codes != codes[0]).any():
            i = int(np.flatnonzero((codes != codes[0]).any(axis=1))[0])
            out.append(AxiomViolation(
                3, "pair count differs between representatives of a class",
                (u, (int(xs[0]), int(ys[0])), (int(xs[i]), int(ys[i])))))
    return out


def validate(color: np.ndarray | Sequence[Sequence[int]]) -> AssociationScheme:
    """Check all scheme axioms on a color matrix and build the scheme.

    Raises :class:`SchemeAxiomError` carrying the violation list on failure.
    """
    color = np.ascontiguousarray(np.asarray(color, dtype=np.int16))
    violations = axiom_violations(color)
    if violations:
        raise SchemeAxiomError(violations)
    star, valency = _star_and_valency(color)
    return AssociationScheme(color, star, valency)


def scheme_from_group(group: FiniteGroup) -> AssociationScheme:
    """The thin scheme of the regular action: color[a, b] = index of a^-1 b."""
    color = group.table[group.inverse, :].astype(np.int16)
    star = group.inverse.astype(np.int16)
    valency = np.ones(group.order, dtype=np.int64)
    return AssociationScheme(np.ascontiguousarray(color), star, valency)


def adjacency(scheme: AssociationScheme, classes: Iterable[int]) -> np.ndarray:
    """0/1 matrix with a one wherever the color lies in ``classes``."""
    classes = list(classes)
    if not classes:
        raise ValueError("adjacency of an empty class set")
    return np.isin(scheme.color, classes).astype(np.int64)


@dataclass(frozen=True)
class ClosedSubset:
    classes: frozenset[int]
    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def block_of(self, x: int) -> int:
        for i, b in enumerate(self.blocks):
            if x in b:
                return i
        raise ValueError(f"point {x} not in any block")


def is_closed(scheme: AssociationScheme, classes: Iterable[int]) -> ClosedSubset:
    """Accept a class subset iff products stay inside it; raises NotClosed
    with a witness triple otherwise.  Returns the block partition of X."""
    cls = sorted(set(int(c) for c in classes))
    if 0 not in cls:
        raise ValueError("a closed subset must contain class 0")
    sel = np.array(cls, dtype=np.intp)
    outside = np.setdiff1d(np.arange(scheme.rank), sel)
    if outside.size:
        bad = scheme.constants[np.ix_(sel, sel, outside)]
        if bad.any():
            s, t, u = (int(v[0]) for v in np.nonzero(bad))
            raise NotClosed((cls[s], cls[t], int(outside[u])))
    member = np.isin(scheme.color, cls)
    seen = np.zeros(scheme.size, dtype=bool)
    blocks = []
    for x in range(scheme.size):
        if seen[x]:
            continue
        block = np.flatnonzero(member[x])
        seen[block] = True
        blocks.append(tuple(int(p) for p in block))
    sizes = {len(b) for b in blocks}
    if len(sizes) != 1:
        raise SchemeAxiomError([AxiomViolation(3, "closed subset blocks differ in size", ())])
    return ClosedSubset(frozenset(cls), tuple(blocks))


def _renumber_by_min_class(sub: np.ndarray) -> np.ndarray:
    used = np.unique(sub)
    lookup = np.zeros(int(used.max()) + 1, dtype=np.int16)
    lookup[used] = np.arange(len(used), dtype=np.int16)
    return lookup[sub]


def subscheme(scheme: AssociationScheme, x: int, closed: ClosedSubset) -> AssociationScheme:
    """Restriction of the closed classes to the block containing ``x``."""
    block = np.array(closed.blocks[closed.block_of(x)], dtype=np.intp)
    sub = scheme.color[np.ix_(block, block)]
    return validate(_renumber_by_min_class(sub))


def quotient_with_class_map(
    scheme: AssociationScheme, closed: ClosedSubset
) -> tuple[AssociationScheme, np.ndarray]:
    """Factor scheme on the block set, plus the class map s -> class of s^T."""
    blocks = [np.array(b, dtype=np.intp) for b in closed.blocks]
    m = len(blocks)
    keys: dict[frozenset, int] = {}
    key_of: list[frozenset] = []
    qcolor_keys = np.empty((m, m), dtype=np.int32)
    for i, bi in enumerate(blocks):
        for j, bj in enumerate(blocks):
            key = frozenset(int(v) for v in np.unique(scheme.color[np.ix_(bi, bj)]))
            if key not in keys:
                keys[key] = len(key_of)
                key_of.append(key)
            qcolor_keys[i, j] = keys[key]
    order = sorted(range(len(key_of)), key=lambda k: min(key_of[k]))
    relabel = np.empty(len(key_of), dtype=np.int16)
    for new, old in enumerate(order):
        relabel[old] = new
    qscheme = validate(relabel[qcolor_keys])
    class_map = np.empty(scheme.rank, dtype=np.int16)
    for new, old in enumerate(order):
        for s in key_of[old]:
            class_map[s] = new
    return qscheme, class_map


def quotient(scheme: AssociationScheme, closed: ClosedSubset) -> AssociationScheme:
    return quotient_with_class_map(scheme, closed)[0]
