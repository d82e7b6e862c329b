"""Pure-python kernel for the symmetric-fusion partition search.

Reference implementation; ``_speedups`` is the compiled equivalent with
identical semantics, selected at import time by ``fusionlab.fusion``.

The search completes one block at a time: the open block always contains the
smallest unassigned atom, and candidate blocks are drawn from the atoms that
are still indistinguishable from the pivot.  Whenever a block is completed,
every pair sum it forms with the already-completed blocks is required to be
constant on each completed block, and the remaining atoms are split by their
pair-sum values, so atoms that can no longer share a block are never tried
together.  At a leaf every pair of blocks has been checked, hence leaves are
exactly the valid symmetric fusions.
"""

from __future__ import annotations

import time

import numpy as np


def enumerate_atom_partitions(
    pair: np.ndarray,
    atom_classes: tuple[tuple[int, ...], ...],
    prefix: tuple[tuple[int, ...], ...] = (),
    max_nodes: int = -1,
    wall_limit: float = 0.0,
    root_range: tuple[int, int] | None = None,
):
    """Enumerate partitions of the atoms whose pair sums are block-constant.

    ``pair[a, b, u]`` is the structure-constant sum over the atom pair (a, b)
    at class u.  ``prefix`` fixes completed blocks before the search starts.
    ``max_nodes`` bounds the number of candidate blocks examined (-1 for
    unlimited); ``wall_limit`` is a soft time limit in seconds (0 for none).
    ``root_range`` restricts the candidate counter at the first free level,
    which is the unit of work splitting for parallel runs.

    Returns ``(partitions, complete, nodes)``; each partition is a tuple of
    atom-id tuples sorted by minimum atom.
    """
    m = len(atom_classes)
    if m == 0:
        return [()], True, 0
    pair = np.ascontiguousarray(pair, dtype=np.int64)
    rep = np.fromiter((c[0] for c in atom_classes), dtype=np.intp, count=m)
    dbl = [i for i, c in enumerate(atom_classes) if len(c) == 2]
    dbl_a = np.array([atom_classes[i][0] for i in dbl], dtype=np.intp)
    dbl_b = np.array([atom_classes[i][1] for i in dbl], dtype=np.intp)

    deadline = time.monotonic() + wall_limit if wall_limit > 0 else None
    assigned = np.zeros(m, dtype=bool)
    blocks: list[list[int]] = []
    block_reps: list[np.ndarray] = []
    row_to: list[np.ndarray] = []
    row_from: list[np.ndarray] = []
    results: list[tuple[tuple[int, ...], ...]] = []
    nodes = 0
    aborted = False

    def check_block(sel: np.ndarray) -> list[np.ndarray] | None:
        vecs = [pair[np.ix_(sel, sel)].sum(axis=(0, 1))]
        for i in range(len(blocks)):
            vecs.append(row_to[i][sel].sum(axis=0))
            vecs.append(row_from[i][sel].sum(axis=0))
        sel_rep = rep[sel]
        for v in vecs:
            if dbl_a.size and not np.array_equal(v[dbl_a], v[dbl_b]):
                return None
            w = v[sel_rep]
            if (w != w[0]).any():
                return None
            for br in block_reps:
                wb = v[br]
                if (wb != wb[0]).any():
                    return None
        return vecs

    def refined_cells(cells: np.ndarray, vecs: list[np.ndarray]) -> np.ndarray:
        rem = np.flatnonzero(~assigned)
        if rem.size == 0:
            return cells
        mat = np.stack([cells[rem]] + [v[rep[rem]] for v in vecs], axis=1)
        _, inv = np.unique(mat, axis=0, return_inverse=True)
        out = cells.copy()
        out[rem] = inv
        return out

    def recurse(cells: np.ndarray, depth: int) -> bool:
        nonlocal nodes, aborted
        rem = np.flatnonzero(~assigned)
        if rem.size == 0:
            results.append(tuple(sorted(tuple(b) for b in blocks)))
            return True
        pivot = int(rem[0])
        mates = [int(a) for a in rem[1:] if cells[a] == cells[pivot]]
        k = len(mates)
        lo, hi = (0, 1 << k)
        if depth == 0 and root_range is not None:
            lo, hi = root_range
        for mask in range(lo, hi):
            nodes += 1
            if max_nodes >= 0 and nodes > max_nodes:
                aborted = True
                return False
            if deadline is not None and nodes % 256 == 0 and time.monotonic() > deadline:
                aborted = True
                return False
            block = [pivot] + [mates[t] for t in range(k) if mask >> t & 1]
            sel = np.array(block, dtype=np.intp)
            vecs = check_block(sel)
            if vecs is None:
                continue
            assigned[sel] = True
            blocks.append(block)
            block_reps.append(rep[sel])
            row_to.append(pair[:, sel, :].sum(axis=1))
            row_from.append(pair[sel, :, :].sum(axis=0))
            ok = recurse(refined_cells(cells, vecs), depth + 1)
            assigned[sel] = False
            blocks.pop()
            block_reps.pop()
            row_to.pop()
            row_from.pop()
            if not ok:
                return False
        return True

    cells = np.zeros(m, dtype=np.int64)
    for blk in prefix:
        sel = np.array(sorted(blk), dtype=np.intp)
        vecs = check_block(sel)
        if vecs is None:
            return [], True, nodes
        assigned[sel] = True
        blocks.append([int(a) for a in sel])
        block_reps.append(rep[sel])
        row_to.append(pair[:, sel, :].sum(axis=1))
        row_from.append(pair[sel, :, :].sum(axis=0))
        cells = refined_cells(cells, vecs)
    complete = recurse(cells, 0)
    return results, complete and not aborted, nodes
