"""Tarry's problem: blocks with equal power sums up to degree k."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, TextIO

import numpy as np

from . import _config
from .errors import ResourceExceeded
from .tables import PowerSumSpace


@dataclass(frozen=True)
class TarryWitness:
    k: int
    h: int
    s: int
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, k: int, blocks: Iterable[Iterable[int]]) -> "TarryWitness":
        blocks = tuple(tuple(int(v) for v in b) for b in blocks)
        lengths = {len(b) for b in blocks}
        if len(lengths) != 1:
            raise ValueError("all blocks must have the same length")
        return cls(k, len(blocks), lengths.pop(), blocks)


def _power_sum(block, j):
    return sum(v**j for v in block)


def verify_witness(w: TarryWitness) -> bool:
    """Equal power sums of orders ``1..k`` across blocks, pairwise distinct at ``k + 1``."""
    if w.h < 2 or len(w.blocks) != w.h or any(len(b) != w.s for b in w.blocks):
        return False
    if any(v < 1 for b in w.blocks for v in b):
        return False
    for j in range(1, w.k + 1):
        if len({_power_sum(b, j) for b in w.blocks}) != 1:
            return False
    top = [_power_sum(b, w.k + 1) for b in w.blocks]
    return len(set(top)) == w.h


def search_witness(k: int, h: int, s: int, height: int,
                   memory_budget: int | None = None) -> TarryWitness | None:
    """Exhaustive search over multisets of size ``s`` from ``[1, height]``.

    Multisets are bucketed by their packed power-sum vector of orders
    ``1..k``.  Inside a bucket the members are split by their order-``k+1``
    sum; ``h`` classes give a witness.  The lexicographically smallest
    witness over all buckets is returned, ``None`` certifies that none
    exists at this height.
    """
    if min(k, s, height) < 1 or h < 2:
        raise ValueError("need k, s, height >= 1 and h >= 2")
    _, budget = _config.resolve(None, memory_budget)
    n = comb(height + s - 1, s)
    if n * (s + 3) * 8 * 2 > budget:
        raise ResourceExceeded(f"{n} multisets exceed memory budget")
    space = PowerSumSpace.build(range(1, height + 1), k, s)
    blocks = list(combinations_with_replacement(range(1, height + 1), s))
    dtype = np.int64 if space.packed_fits_int64 else object
    keys = np.array([space.pack([_power_sum(b, j) for j in range(1, k + 1)], s) for b in blocks],
                    dtype=dtype)
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    starts = np.concatenate(([0], np.flatnonzero(keys[1:] != keys[:-1]) + 1, [len(keys)]))

    best = None
    for lo, hi in zip(starts[:-1], starts[1:]):
        if hi - lo < h:
            continue
        # blocks were generated in lexicographic order, and the stable sort keeps it
        classes: dict[int, tuple[int, ...]] = {}
        for idx in order[lo:hi]:
            b = blocks[idx]
            classes.setdefault(_power_sum(b, k + 1), b)
        if len(classes) < h:
            continue
        cand = tuple(sorted(classes.values())[:h])
        if best is None or cand < best:
            best = cand
    return None if best is None else TarryWitness(k, h, s, best)


def write_witness(w: TarryWitness, stream: TextIO) -> None:
    """Header line ``k h s``, then one block per line, entries space-separated."""
    stream.write(f"{w.k} {w.h} {w.s}\n")
    for b in w.blocks:
        stream.write(" ".join(str(v) for v in b) + "\n")


def read_witness(stream: TextIO) -> TarryWitness:
    lines = [ln.split() for ln in stream.read().splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 3:
        raise ValueError("missing 'k h s' header")
    k, h, s = (int(v) for v in lines[0])
    blocks = tuple(tuple(int(v) for v in ln) for ln in lines[1:])
    if len(blocks) != h or any(len(b) != s for b in blocks):
        raise ValueError(f"expected {h} blocks of length {s}")
    return TarryWitness(k, h, s, blocks)
