# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel for the symmetric-fusion partition search.

Semantics are identical to fusionlab._enum_py (the pure-python reference);
see that module for the algorithm description.  Fusion tests assert that the
two backends enumerate the same partitions.
"""

import time

import numpy as np


cdef class _Searcher:
    cdef long long[:, :, ::1] pair
    cdef int m, r, ndbl, nprefix
    cdef long long max_nodes, nodes
    cdef double deadline
    cdef bint aborted
    cdef int[::1] rep, dbl_a, dbl_b
    cdef unsigned char[::1] assigned
    cdef int nblocks
    cdef int[::1] block_atoms
    cdef int[::1] block_start
    cdef long long[:, :, ::1] row_to
    cdef long long[:, :, ::1] row_from
    cdef long long[:, ::1] cells
    cdef long long[::1] vbuf
    cdef long long[::1] keycell
    cdef long long[::1] keyval
    cdef int[:, ::1] mates_stack
    cdef long long root_lo, root_hi
    cdef bint has_root_range
    cdef list results

    def __init__(self, pair, atom_classes, long long max_nodes,
                 double wall_limit, root_range):
        self.pair = np.ascontiguousarray(pair, dtype=np.int64)
        self.m = len(atom_classes)
        self.r = self.pair.shape[2]
        self.max_nodes = max_nodes
        self.nodes = 0
        self.deadline = time.monotonic() + wall_limit if wall_limit > 0 else 0.0
        self.aborted = False
        rep = np.empty(self.m, dtype=np.intc)
        dbl_a, dbl_b = [], []
        for i, cls in enumerate(atom_classes):
            rep[i] = cls[0]
            if len(cls) == 2:
                dbl_a.append(cls[0])
                dbl_b.append(cls[1])
        self.rep = rep
        self.ndbl = len(dbl_a)
        self.dbl_a = np.array(dbl_a, dtype=np.intc) if dbl_a else np.empty(0, dtype=np.intc)
        self.dbl_b = np.array(dbl_b, dtype=np.intc) if dbl_b else np.empty(0, dtype=np.intc)
        self.assigned = np.zeros(self.m, dtype=np.uint8)
        self.nblocks = 0
        self.block_atoms = np.zeros(self.m, dtype=np.intc)
        self.block_start = np.zeros(self.m + 2, dtype=np.intc)
        self.row_to = np.zeros((self.m + 1, self.m, self.r), dtype=np.int64)
        self.row_from = np.zeros((self.m + 1, self.m, self.r), dtype=np.int64)
        self.cells = np.zeros((self.m + 2, self.m), dtype=np.int64)
        self.vbuf = np.zeros(self.r, dtype=np.int64)
        self.keycell = np.zeros(self.m, dtype=np.int64)
        self.keyval = np.zeros(self.m, dtype=np.int64)
        self.mates_stack = np.zeros((self.m + 1, self.m), dtype=np.intc)
        self.has_root_range = root_range is not None
        if self.has_root_range:
            self.root_lo, self.root_hi = root_range
        self.results = []

    cdef int _check_vec(self, int bstart, int bsize, long long[:] work) nogil:
        """Constancy checks for the vector in vbuf against the candidate block
        (at bstart/bsize in block_atoms), all completed blocks, and the
        remaining-atom cell refinement accumulated in ``work``."""
        cdef int t, i, a, j
        cdef long long w0
        for t in range(self.ndbl):
            if self.vbuf[self.dbl_a[t]] != self.vbuf[self.dbl_b[t]]:
                return 0
        w0 = self.vbuf[self.rep[self.block_atoms[bstart]]]
        for i in range(1, bsize):
            if self.vbuf[self.rep[self.block_atoms[bstart + i]]] != w0:
                return 0
        for j in range(self.nblocks):
            w0 = self.vbuf[self.rep[self.block_atoms[self.block_start[j]]]]
            for i in range(self.block_start[j] + 1, self.block_start[j + 1]):
                if self.vbuf[self.rep[self.block_atoms[i]]] != w0:
                    return 0
        # fold this vector into the work cells: (old cell, value) -> new id
        for a in range(self.m):
            if not self.assigned[a]:
                self.keycell[a] = work[a]
                self.keyval[a] = self.vbuf[self.rep[a]]
        for a in range(self.m):
            if self.assigned[a]:
                continue
            work[a] = -1
            for j in range(a):
                if not self.assigned[j] and self.keycell[j] == self.keycell[a] \
                        and self.keyval[j] == self.keyval[a]:
                    work[a] = work[j]
                    break
            if work[a] < 0:
                work[a] = a
        return 1

    cdef int _try_block(self, int bsize, long long[:] oldcells, long long[:] work):
        """Run all pair checks for the candidate block written at the top of
        block_atoms; on success ``work`` holds the refined cells."""
        cdef int bstart = self.block_start[self.nblocks]
        cdef int i, j, k, a, b, u, d
        cdef long long acc
        for a in range(self.m):
            work[a] = oldcells[a]
        # pair (B, B)
        for u in range(self.r):
            self.vbuf[u] = 0
        for i in range(bsize):
            a = self.block_atoms[bstart + i]
            for j in range(bsize):
                b = self.block_atoms[bstart + j]
                for u in range(self.r):
                    self.vbuf[u] += self.pair[a, b, u]
        if not self._check_vec(bstart, bsize, work):
            return 0
        # pairs (B, prev) and (prev, B) via the per-block row sums
        for k in range(self.nblocks):
            for d in range(2):
                for u in range(self.r):
                    self.vbuf[u] = 0
                for i in range(bsize):
                    a = self.block_atoms[bstart + i]
                    for u in range(self.r):
                        if d == 0:
                            self.vbuf[u] += self.row_to[k, a, u]
                        else:
                            self.vbuf[u] += self.row_from[k, a, u]
                if not self._check_vec(bstart, bsize, work):
                    return 0
        return 1

    cdef void _push(self, int bsize, long long[:] work):
        cdef int bstart = self.block_start[self.nblocks]
        cdef int i, a, b, u
        cdef int slot = self.nblocks
        for a in range(self.m):
            for u in range(self.r):
                self.row_to[slot, a, u] = 0
                self.row_from[slot, a, u] = 0
        for i in range(bsize):
            b = self.block_atoms[bstart + i]
            self.assigned[b] = 1
            for a in range(self.m):
                for u in range(self.r):
                    self.row_to[slot, a, u] += self.pair[a, b, u]
                    self.row_from[slot, a, u] += self.pair[b, a, u]
        self.block_start[slot + 1] = bstart + bsize
        self.nblocks += 1
        for a in range(self.m):
            self.cells[self.nblocks, a] = work[a]

    cdef void _pop(self):
        cdef int i
        self.nblocks -= 1
        for i in range(self.block_start[self.nblocks], self.block_start[self.nblocks + 1]):
            self.assigned[self.block_atoms[i]] = 0

    cdef int _recurse(self):
        cdef int level = self.nblocks
        cdef int pivot = -1
        cdef int a, k, t, bsize
        cdef long long mask, lo, hi
        cdef long long[:] oldcells = self.cells[level]
        for a in range(self.m):
            if not self.assigned[a]:
                pivot = a
                break
        if pivot < 0:
            blocks = []
            for t in range(self.nblocks):
                blocks.append(tuple(
                    self.block_atoms[i]
                    for i in range(self.block_start[t], self.block_start[t + 1])))
            blocks.sort()
            self.results.append(tuple(blocks))
            return 1
        k = 0
        for a in range(pivot + 1, self.m):
            if not self.assigned[a] and oldcells[a] == oldcells[pivot]:
                self.mates_stack[level, k] = a
                k += 1
        if k > 62:
            raise OverflowError("too many indistinguishable atoms at one level")
        lo, hi = 0, (<long long>1) << k
        if level == self.nprefix and self.has_root_range:
            lo, hi = self.root_lo, self.root_hi
        for mask in range(lo, hi):
            self.nodes += 1
            if self.max_nodes >= 0 and self.nodes > self.max_nodes:
                self.aborted = True
                return 0
            if self.deadline > 0 and self.nodes % 1024 == 0 \
                    and time.monotonic() > self.deadline:
                self.aborted = True
                return 0
            bsize = 1
            self.block_atoms[self.block_start[self.nblocks]] = pivot
            for t in range(k):
                if (mask >> t) & 1:
                    self.block_atoms[self.block_start[self.nblocks] + bsize] = \
                        self.mates_stack[level, t]
                    bsize += 1
            if not self._try_block(bsize, oldcells, self.cells[self.m + 1]):
                continue
            self._push(bsize, self.cells[self.m + 1])
            ok = self._recurse()
            self._pop()
            if not ok:
                return 0
        return 1

    def run(self, prefix):
        cdef int bsize, i
        cdef long long[:] work = self.cells[self.m + 1]
        self.nprefix = 0
        for blk in prefix:
            blk = sorted(blk)
            bsize = len(blk)
            for i in range(bsize):
                self.block_atoms[self.block_start[self.nblocks] + i] = blk[i]
            if not self._try_block(bsize, self.cells[self.nblocks], work):
                return [], True, int(self.nodes)
            self._push(bsize, work)
            self.nprefix += 1
        complete = self._recurse()
        return self.results, bool(complete and not self.aborted), int(self.nodes)


def enumerate_atom_partitions(pair, atom_classes, prefix=(), max_nodes=-1,
                              wall_limit=0.0, root_range=None):
    """Compiled equivalent of fusionlab._enum_py.enumerate_atom_partitions."""
    if len(atom_classes) == 0:
        return [()], True, 0
    searcher = _Searcher(pair, atom_classes, max_nodes, wall_limit, root_range)
    return searcher.run(prefix)
