"""Finite groups as exact Cayley tables built from faithful permutation models.

Element 0 is always the identity; the remaining indices follow a
breadth-first closure of the generator list, so element numbering (and
everything downstream of it, e.g. scheme class indices in certificates)
is reproducible across runs.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CatalogMiss, GroupTooLarge

ELEMENT_CAP = 10000

Perm = tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    """Left-to-right composition: apply ``p`` first, then ``q``."""
    return tuple(q[i] for i in p)


def perm_from_cycles(degree: int, cycles: Sequence[Sequence[int]]) -> Perm:
    """Build a permutation of ``range(degree)`` from disjoint 0-based cycles."""
    images = list(range(degree))
    for cycle in cycles:
        for i, a in enumerate(cycle):
            images[a] = cycle[(i + 1) % len(cycle)]
    return tuple(images)


def cycle_notation(p: Perm) -> str:
    """1-based cycle notation, e.g. ``(12)(34)``; the identity is ``1``."""
    seen = [False] * len(p)
    parts = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        nxt = p[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = p[nxt]
        parts.append("(" + "".join(str(a + 1) for a in cycle) + ")")
    return "".join(parts) if parts else "1"


_FACTOR_RE = re.compile(r"^([A-Za-z]+)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its exact Cayley table.

    ``table[a, b]`` is the index of the product a*b; index 0 is the identity.
    """

    name: str
    table: np.ndarray
    inverse: np.ndarray
    generator_index: dict[str, int] = field(default_factory=dict)
    element_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        self.table.flags.writeable = False
        self.inverse.flags.writeable = False

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        acc = 0
        for _ in range(k):
            acc = int(self.table[acc, a])
        return acc

    def element_order(self, a: int) -> int:
        acc, k = a, 1
        while acc != 0:
            acc = int(self.table[acc, a])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def element(self, word: str) -> int:
        """Resolve an element word such as ``y*x^2`` against generator names.

        ``1`` denotes the identity; a word starting with ``(`` is looked up
        in ``element_labels`` (cycle notation for permutation-model groups).
        """
        word = word.strip()
        if word == "1":
            return 0
        if word.startswith("("):
            if self.element_labels is None:
                raise ValueError(f"group {self.name} has no element labels")
            try:
                return self.element_labels.index(word)
            except ValueError:
                raise ValueError(f"unknown element label {word!r} in {self.name}") from None
        acc = 0
        for factor in word.split("*"):
            m = _FACTOR_RE.match(factor.strip())
            if m is None:
                raise ValueError(f"malformed element word {word!r}")
            name, exp = m.group(1), int(m.group(2) or 1)
            if name not in self.generator_index:
                raise ValueError(f"unknown generator {name!r} in group {self.name}")
            acc = self.table[acc, self.power(self.generator_index[name], exp)]
        return int(acc)

    def validate(self) -> None:
        """Check identity, inverses and the Latin-square property; for
        order <= 64 also check associativity exhaustively."""
        n = self.order
        t = self.table
        if not (np.array_equal(t[0], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))):
            raise ValueError(f"{self.name}: identity law fails")
        if not np.array_equal(t[np.arange(n), self.inverse], np.zeros(n, dtype=t.dtype)):
            raise ValueError(f"{self.name}: inverse law fails")
        ident = np.arange(n)
        if not (np.array_equal(np.sort(t, axis=1), np.tile(ident, (n, 1)))
                and np.array_equal(np.sort(t, axis=0), np.tile(ident[:, None], (1, n)))):
            raise ValueError(f"{self.name}: Cayley table is not a Latin square")
        if n <= 64 and not np.array_equal(t[t, :], t[:, t]):
            raise ValueError(f"{self.name}: associativity fails")

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


def element_orders(group: FiniteGroup) -> list[int]:
    """orders[a] = least k >= 1 with a^k = identity."""
    return [group.element_order(a) for a in range(group.order)]


def exponent(group: FiniteGroup) -> int:
    return math.lcm(*element_orders(group))


def from_permutation_generators(
    degree: int,
    generators: Sequence[Perm],
    *,
    name: str | None = None,
    generator_names: Sequence[str] | None = None,
    labels: str | Sequence[str] | None = None,
    element_cap: int = ELEMENT_CAP,
) -> FiniteGroup:
    """Close a set of permutations of ``range(degree)`` under composition.

    Elements are indexed in BFS order from the identity, applying generators
    in the given order, which makes the numbering deterministic.  ``labels``
    may be ``"cycles"`` (label each element by its cycle notation) or a list
    of ``degree`` point labels (label each element by the image of point 0,
    useful for regular actions on a labelled carrier).
    """
    generators = [tuple(g) for g in generators]
    for g in generators:
        if sorted(g) != list(range(degree)):
            raise ValueError(f"not a permutation of range({degree}): {g}")
    identity = tuple(range(degree))
    elements: list[Perm] = [identity]
    index: dict[Perm, int] = {identity: 0}
    frontier = [identity]
    while frontier:
        nxt: list[Perm] = []
        for e in frontier:
            for g in generators:
                f = compose(e, g)
                if f not in index:
                    if len(elements) >= element_cap:
                        raise GroupTooLarge(
                            f"closure exceeds element cap {element_cap}")
                    index[f] = len(elements)
                    elements.append(f)
                    nxt.append(f)
        frontier = nxt
    n = len(elements)
    table = np.empty((n, n), dtype=np.int16)
    for a, pa in enumerate(elements):
        for b, pb in enumerate(elements):
            table[a, b] = index[compose(pa, pb)]
    inverse = np.empty(n, dtype=np.int16)
    for a in range(n):
        inverse[a] = int(np.flatnonzero(table[a] == 0)[0])
    gen_index: dict[str, int] = {}
    if generator_names is not None:
        if len(generator_names) != len(generators):
            raise ValueError("generator_names length mismatch")
        for gname, g in zip(generator_names, generators):
            gen_index[gname] = index[g]
    element_labels: tuple[str, ...] | None = None
    if labels == "cycles":
        element_labels = tuple(cycle_notation(p) for p in elements)
    elif labels is not None:
        if len(labels) != degree:
            raise ValueError("point labels length must equal degree")
        element_labels = tuple(labels[p[0]] for p in elements)
    return FiniteGroup(
        name=name or f"<order-{n} group>",
        table=table,
        inverse=inverse,
        generator_index=gen_index,
        element_labels=element_labels,
    )


def direct_product(g: FiniteGroup, h: FiniteGroup, *, name: str | None = None) -> FiniteGroup:
    """Componentwise product; element (a, b) maps to index a*|H| + b."""
    n, m = g.order, h.order
    if n * m > ELEMENT_CAP:
        raise GroupTooLarge(f"product order {n * m} exceeds cap {ELEMENT_CAP}")
    table = (g.table.astype(np.int32)[:, None, :, None] * m
             + h.table.astype(np.int32)[None, :, None, :]).reshape(n * m, n * m)
    inverse = (g.inverse.astype(np.int32)[:, None] * m
               + h.inverse.astype(np.int32)[None, :]).reshape(n * m)
    gen_index = {gname: a * m for gname, a in g.generator_index.items()}
    for hname, b in h.generator_index.items():
        if hname not in gen_index:
            gen_index[hname] = b
    return FiniteGroup(
        name=name or f"{g.name}x{h.name}",
        table=table.astype(np.int16),
        inverse=inverse.astype(np.int16),
        generator_index=gen_index,
    )


def trivial_group() -> FiniteGroup:
    return from_permutation_generators(1, [], name="C1")


# --- catalog -----------------------------------------------------------------

def _cyclic(n: int) -> FiniteGroup:
    if n == 1:
        return trivial_group()
    cycle = perm_from_cycles(n, [tuple(range(n))])
    return from_permutation_generators(n, [cycle], name=f"C{n}", generator_names=["g"])


def _dihedral(order: int) -> FiniteGroup:
    # <x, y | x^(order/2) = y^2 = 1, y x y = x^-1>
    half = order // 2
    rot = perm_from_cycles(half, [tuple(range(half))])
    refl = tuple((-i) % half for i in range(half))
    return from_permutation_generators(
        half, [rot, refl], name=f"D{order}", generator_names=["x", "y"])


def _sym3() -> FiniteGroup:
    return from_permutation_generators(
        3, [perm_from_cycles(3, [(0, 1, 2)]), perm_from_cycles(3, [(0, 1)])],
        name="S3", generator_names=["x", "y"], labels="cycles")


def _alt4() -> FiniteGroup:
    return from_permutation_generators(
        4, [perm_from_cycles(4, [(0, 1, 2)]), perm_from_cycles(4, [(0, 1), (2, 3)])],
        name="A4", generator_names=["a", "b"], labels="cycles")


def _sym4() -> FiniteGroup:
    return from_permutation_generators(
        4, [perm_from_cycles(4, [(0, 1, 2, 3)]), perm_from_cycles(4, [(0, 1)])],
        name="S4", generator_names=["a", "b"], labels="cycles")


_QUATERNION_UNITS = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def _quaternion_mul(a: int, b: int) -> int:
    # indices into _QUATERNION_UNITS; sign in bit 0, axis 1/i/j/k in bits 1-2
    sign = (a & 1) ^ (b & 1)
    ua, ub = a >> 1, b >> 1
    if ua == 0:
        axis = ub
    elif ub == 0:
        axis = ua
    elif ua == ub:
        axis, sign = 0, sign ^ 1
    else:
        axis = ua ^ ub  # {i,j,k} multiply to the third axis
        if (ua, ub) in ((1, 2), (2, 3), (3, 1)):  # ij=k, jk=i, ki=j
            pass
        else:
            sign ^= 1
    return (axis << 1) | sign


def quaternion_regular_generators() -> list[Perm]:
    """Right-multiplication permutations by i and j on (1,-1,i,-i,j,-j,k,-k)."""
    return [tuple(_quaternion_mul(e, g) for e in range(8)) for g in (2, 4)]


def _quaternion() -> FiniteGroup:
    gi, gj = quaternion_regular_generators()
    return from_permutation_generators(
        8, [gi, gj], name="Q8", generator_names=["i", "j"],
        labels=list(_QUATERNION_UNITS))


def _sl23() -> FiniteGroup:
    # natural action on the 8 nonzero vectors of GF(3)^2
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    idx = {v: i for i, v in enumerate(vecs)}

    def act(mat):
        return tuple(idx[((mat[0][0] * a + mat[0][1] * b) % 3,
                          (mat[1][0] * a + mat[1][1] * b) % 3)] for a, b in vecs)

    return from_permutation_generators(
        8, [act([[1, 1], [0, 1]]), act([[0, -1], [1, 0]])],
        name="SL(2,3)", generator_names=["s", "t"])


def _c3_c4() -> FiniteGroup:
    # <x, y | x^3 = y^4 = 1, y^-1 x y = x^-1>
    x = perm_from_cycles(7, [(0, 1, 2)])
    y = perm_from_cycles(7, [(1, 2), (3, 4, 5, 6)])
    return from_permutation_generators(7, [x, y], name="C3:C4", generator_names=["x", "y"])


def _e9_c2() -> FiniteGroup:
    # (C3 x C3) : C2, the involution inverting both translations
    pts = [(a, b) for a in range(3) for b in range(3)]
    idx = {p: i for i, p in enumerate(pts)}
    x = tuple(idx[((a + 1) % 3, b)] for a, b in pts)
    y = tuple(idx[(a, (b + 1) % 3)] for a, b in pts)
    z = tuple(idx[((-a) % 3, (-b) % 3)] for a, b in pts)
    return from_permutation_generators(
        9, [x, y, z], name="(C3xC3):C2", generator_names=["x", "y", "z"])


def _s3_x_c3() -> FiniteGroup:
    # x, y of order 3 commuting; z an involution inverting y and fixing x
    x = perm_from_cycles(6, [(0, 1, 2)])
    y = perm_from_cycles(6, [(3, 4, 5)])
    z = perm_from_cycles(6, [(4, 5)])
    return from_permutation_generators(
        6, [x, y, z], name="S3xC3", generator_names=["x", "y", "z"])


def _c2_c2_s3() -> FiniteGroup:
    x = perm_from_cycles(7, [(0, 1)])
    y = perm_from_cycles(7, [(2, 3)])
    sigma = perm_from_cycles(7, [(4, 5, 6)])
    tau = perm_from_cycles(7, [(5, 6)])
    return from_permutation_generators(
        7, [x, y, sigma, tau], name="C2xC2xS3",
        generator_names=["x", "y", "sigma", "tau"])


def _c3_c4_x_c2() -> FiniteGroup:
    # (C3:C4) x C2 with z of order 3, y of order 4 inverting z, x central of order 2
    z = perm_from_cycles(9, [(0, 1, 2)])
    y = perm_from_cycles(9, [(1, 2), (3, 4, 5, 6)])
    x = perm_from_cycles(9, [(7, 8)])
    return from_permutation_generators(
        9, [x, y, z], name="(C3:C4)xC2", generator_names=["x", "y", "z"])


def _heis27() -> FiniteGroup:
    # unitriangular 3x3 matrices over GF(3) acting on column vectors;
    # x = E13 (central), y = E12, z = E23, so z^-1 y z = x y
    pts = [(u, v, w) for u in range(3) for v in range(3) for w in range(3)]
    idx = {p: i for i, p in enumerate(pts)}
    x = tuple(idx[((u + w) % 3, v, w)] for u, v, w in pts)
    y = tuple(idx[((u + v) % 3, v, w)] for u, v, w in pts)
    z = tuple(idx[(u, (v + w) % 3, w)] for u, v, w in pts)
    return from_permutation_generators(
        27, [x, y, z], name="Heis27", generator_names=["x", "y", "z"])


@dataclass(frozen=True)
class GroupCatalogEntry:
    key: str
    order: int
    exponent: int
    description: str


_REGISTRY: dict[str, tuple] = {
    "S3": (_sym3, 6, 6, "symmetric group on 3 points"),
    "S4": (_sym4, 24, 12, "symmetric group on 4 points"),
    "A4": (_alt4, 12, 6, "alternating group on 4 points"),
    "D8": (lambda: _dihedral(8), 8, 4, "dihedral group of order 8"),
    "D12": (lambda: _dihedral(12), 12, 6, "dihedral group of order 12"),
    "Q8": (_quaternion, 8, 4, "quaternion group"),
    "SL23": (_sl23, 24, 12, "special linear group SL(2,3)"),
    "C3:C4": (_c3_c4, 12, 12, "dicyclic group C3:C4 (y^-1 x y = x^-1)"),
    "E9:C2": (_e9_c2, 18, 6, "(C3xC3):C2, inversion action"),
    "S3xC3": (_s3_x_c3, 18, 6, "direct product S3 x C3"),
    "C2xC2xS3": (_c2_c2_s3, 24, 6, "direct product C2 x C2 x S3"),
    "C3:C4xC2": (_c3_c4_x_c2, 24, 12, "direct product (C3:C4) x C2"),
    "Heis27": (_heis27, 27, 3, "non-abelian order 27, exponent 3"),
}

_CYCLIC_RE = re.compile(r"^C(\d+)$")


def _atom(key: str) -> FiniteGroup:
    if key in _REGISTRY:
        return _REGISTRY[key][0]()
    m = _CYCLIC_RE.match(key)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise CatalogMiss(key)
        return _cyclic(n)
    raise CatalogMiss(key)


def catalog(key: str) -> FiniteGroup:
    """Resolve a catalog key, e.g. ``D8``, ``C12`` or ``Q8xC2xC2``.

    Composite keys are split on ``x`` and folded with :func:`direct_product`;
    named entries (which may themselves contain ``x``) take precedence so
    their generator naming stays aligned with the stored witness words.
    """
    key = key.strip().replace(" ", "")
    if key in _REGISTRY:
        return _REGISTRY[key][0]()
    if "x" in key:
        parts = key.split("x")
        # allow the named entry "C3:C4xC2" to win over the composite parse
        group = _atom(parts[0])
        for part in parts[1:]:
            group = direct_product(group, _atom(part))
        return FiniteGroup(
            name=key, table=group.table, inverse=group.inverse,
            generator_index=group.generator_index,
            element_labels=group.element_labels)
    return _atom(key)


def catalog_entries() -> list[GroupCatalogEntry]:
    """Curated catalog keys with their declared order and exponent."""
    entries = [GroupCatalogEntry(k, o, e, d) for k, (_, o, e, d) in _REGISTRY.items()]
    for n in (1, 2, 3, 4, 6, 8, 12, 16):
        entries.append(GroupCatalogEntry(f"C{n}", n, n, f"cyclic group of order {n}"))
    for key, order, exp in [
        ("C2xC2", 4, 2), ("C2xC2xC2", 8, 2), ("C2xC2xC2xC2", 16, 2),
        ("C4xC2", 8, 4), ("C4xC2xC2", 16, 4), ("C4xC4", 16, 4),
        ("C3xC3", 9, 3), ("C6xC2", 12, 6),
        ("Q8xC2", 16, 4), ("S3xC2", 12, 6),
    ]:
        entries.append(GroupCatalogEntry(key, order, exp, "direct product"))
    return sorted(entries, key=lambda e: (e.order, e.key))
