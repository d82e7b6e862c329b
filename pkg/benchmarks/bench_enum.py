#!/usr/bin/env python3
"""Benchmark the fusion-enumeration kernels (compiled vs pure python).

Usage: python benchmarks/bench_enum.py [--heavy] [--repeat N]
"""

from __future__ import annotations

import argparse
import importlib
import time

from fusionlab import catalog, scheme_from_group
from fusionlab import fusion as fu

GROUPS = ["D8", "A4", "C3:C4", "S3xC2", "Q8xC2", "C4xC4", "C4xC2xC2"]
HEAVY = ["C2xC2xC2xC2"]


def kernels():
    out = [("pure", importlib.import_module("fusionlab._enum_py"))]
    try:
        out.insert(0, ("compiled", importlib.import_module("fusionlab._speedups")))
    except ImportError:
        pass
    return out


def bench(key: str, repeat: int) -> None:
    scheme = scheme_from_group(catalog(key))
    atoms = fu.atoms_of(scheme)[1:]
    atom_classes = tuple(tuple(int(c) for c in a) for a in atoms)
    pair = fu._pair_tensor(scheme, atoms)
    row = f"{key:<14} atoms={len(atoms):<3}"
    counts = set()
    for name, kernel in kernels():
        best = float("inf")
        for _ in range(repeat):
            start = time.perf_counter()
            parts, complete, nodes = kernel.enumerate_atom_partitions(
                pair, atom_classes, (), -1, 0.0, None)
            best = min(best, time.perf_counter() - start)
        counts.add((len(parts), nodes, complete))
        row += f"  {name}={best * 1000:9.2f}ms"
    assert len(counts) == 1, f"backends disagree on {key}: {counts}"
    parts_count, nodes, _ = counts.pop()
    print(row + f"  fusions={parts_count:<6} nodes={nodes}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--heavy", action="store_true",
                        help="include the 15-atom C2^4 case")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    for key in GROUPS + (HEAVY if args.heavy else []):
        bench(key, args.repeat)


if __name__ == "__main__":
    main()
