"""Power-sum representation tables.

A table of order ``t`` over a finite set of integers ``V`` maps each
power-sum vector ``(sum x_i, sum x_i^2, ..., sum x_i^k)`` of an ordered
``t``-tuple from ``V`` to the number of tuples producing it.  Keys are
packed into one mixed-radix integer per vector so that adding two packed
keys adds the underlying vectors; all arithmetic on counts is exact.
"""
from __future__ import annotations

import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import BinaryIO, Sequence

import numpy as np

from . import _config
from .errors import ResourceExceeded

_INT64_LIMIT = 2**62
# pairs materialised per convolution chunk
_CHUNK_PAIRS = 1 << 22
# bytes held per materialised pair: key, count, sort permutation, slack
_BYTES_PER_PAIR = 40


@dataclass(frozen=True)
class PowerSumSpace:
    """Packing scheme for power-sum vectors of up to ``max_order`` summands.

    Component ``j`` of a single value ``v`` is stored shifted by
    ``offsets[j-1] = min(V**j)`` so every digit is nonnegative, and the
    radix of digit ``j`` is large enough to hold the sum of
    ``max_order`` shifted components without carrying.
    """

    values: tuple[int, ...]
    k: int
    max_order: int
    offsets: tuple[int, ...]
    radices: tuple[int, ...]

    @classmethod
    def build(cls, values: Sequence[int], k: int, max_order: int) -> "PowerSumSpace":
        vals = tuple(sorted({int(v) for v in values}))
        if not vals:
            raise ValueError("value set must be nonempty")
        if k < 1 or max_order < 1:
            raise ValueError("k and max_order must be positive")
        offsets, radices = [], []
        for j in range(1, k + 1):
            powers = [v**j for v in vals]
            lo, hi = min(powers), max(powers)
            offsets.append(lo)
            radices.append(max_order * (hi - lo) + 1)
        return cls(vals, k, max_order, tuple(offsets), tuple(radices))

    @property
    def weights(self) -> tuple[int, ...]:
        w, acc = [], 1
        for r in self.radices:
            w.append(acc)
            acc *= r
        return tuple(w)

    @property
    def packed_fits_int64(self) -> bool:
        acc = 1
        for r in self.radices:
            acc *= r
        return acc < _INT64_LIMIT

    @property
    def counts_fit_int64(self) -> bool:
        # every count and every partial sum of squared counts is at most |V|^(2t)
        return len(self.values) ** (2 * self.max_order) < _INT64_LIMIT

    def pack(self, vector: Sequence[int], order: int) -> int:
        key = 0
        for comp, off, w in zip(vector, self.offsets, self.weights):
            key += (int(comp) - order * off) * w
        return key

    def unpack(self, key: int, order: int) -> tuple[int, ...]:
        out = []
        key = int(key)
        for off, r in zip(self.offsets, self.radices):
            key, digit = divmod(key, r)
            out.append(digit + order * off)
        return tuple(out)


def _group(keys: np.ndarray, counts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if keys.size == 0:
        return keys, counts
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    counts = counts[order]
    starts = np.concatenate(([0], np.flatnonzero(keys[1:] != keys[:-1]) + 1))
    return keys[starts], np.add.reduceat(counts, starts)


class RepresentationTable:
    """Sorted (packed key, count) arrays for one order over one space."""

    def __init__(self, space: PowerSumSpace, order: int, keys: np.ndarray, counts: np.ndarray):
        self.space = space
        self.order = order
        self.keys = keys
        self.counts = counts

    def __len__(self) -> int:
        return int(self.keys.size)

    @property
    def key_dtype(self):
        return np.int64 if self.space.packed_fits_int64 else object

    @property
    def count_dtype(self):
        return np.int64 if self.space.counts_fit_int64 else object

    @classmethod
    def single(cls, space: PowerSumSpace) -> "RepresentationTable":
        keys = np.array([space.pack([v**j for j in range(1, space.k + 1)], 1)
                         for v in space.values], dtype=np.int64 if space.packed_fits_int64 else object)
        counts = np.ones(len(space.values), dtype=np.int64 if space.counts_fit_int64 else object)
        k, c = _group(keys, counts)
        return cls(space, 1, k, c)

    def total(self) -> int:
        return int(sum(int(c) for c in self.counts)) if self.counts.dtype == object \
            else int(self.counts.sum())

    def sum_of_squares(self) -> int:
        """Sum of squared counts; for a full order-s table this is J."""
        c = self.counts
        if c.dtype == object:
            return int((c * c).sum())
        return int(np.dot(c, c))

    def vectors(self) -> list[tuple[int, ...]]:
        return [self.space.unpack(key, self.order) for key in self.keys]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return {v: int(c) for v, c in zip(self.vectors(), self.counts)}

    @classmethod
    def from_dict(cls, space: PowerSumSpace, order: int,
                  entries: dict[tuple[int, ...], int]) -> "RepresentationTable":
        kd = np.int64 if space.packed_fits_int64 else object
        cd = np.int64 if space.counts_fit_int64 else object
        keys = np.array([space.pack(v, order) for v in entries], dtype=kd)
        counts = np.array([int(c) for c in entries.values()], dtype=cd)
        k, c = _group(keys, counts)
        return cls(space, order, k, c)

    # -- serialization --------------------------------------------------

    MAGIC = b"VMRT"

    def dump(self, stream: BinaryIO) -> None:
        """Write a sorted binary checkpoint.

        Layout: ``b"VMRT"``, then ``<I k``, ``<I order``, ``<Q n``; then per
        entry ``k`` little-endian u64 components followed by ``<I`` byte
        length and the count's big-endian magnitude.
        """
        stream.write(self.MAGIC)
        stream.write(struct.pack("<IIQ", self.space.k, self.order, len(self)))
        for key, count in zip(self.keys, self.counts):
            vec = self.space.unpack(key, self.order)
            if min(vec) < 0:
                raise ValueError("negative power sums cannot be stored as unsigned components")
            stream.write(struct.pack("<%dQ" % len(vec), *vec))
            count = int(count)
            mag = count.to_bytes(max(1, (count.bit_length() + 7) // 8), "big")
            stream.write(struct.pack("<I", len(mag)))
            stream.write(mag)

    @classmethod
    def load(cls, stream: BinaryIO, space: PowerSumSpace) -> "RepresentationTable":
        if stream.read(4) != cls.MAGIC:
            raise ValueError("not a representation table stream")
        k, order, n = struct.unpack("<IIQ", stream.read(16))
        if k != space.k:
            raise ValueError(f"stream has k={k}, space has k={space.k}")
        entries = {}
        for _ in range(n):
            vec = struct.unpack("<%dQ" % k, stream.read(8 * k))
            (length,) = struct.unpack("<I", stream.read(4))
            entries[vec] = int.from_bytes(stream.read(length), "big")
        return cls.from_dict(space, order, entries)


def convolve(a: RepresentationTable, b: RepresentationTable, workers: int | None = None,
             memory_budget: int | None = None) -> RepresentationTable:
    """Table of order ``a.order + b.order``: all sums of an ``a`` key and a ``b`` key.

    The rows of ``a`` are cut into fixed chunks (independent of ``workers``),
    each chunk is grouped on its own, and the partial tables are merged by
    one final sort, so the result is the same for every worker count.
    """
    if a.space is not b.space and a.space != b.space:
        raise ValueError("tables live in different power-sum spaces")
    order = a.order + b.order
    if order > a.space.max_order:
        raise ValueError("order exceeds the space's max_order")
    workers, budget = _config.resolve(workers, memory_budget)
    nb = len(b)
    rows = max(1, _CHUNK_PAIRS // max(nb, 1))
    chunk_pairs = min(len(a), rows) * nb
    if chunk_pairs * min(workers, -(-len(a) // rows)) * _BYTES_PER_PAIR > budget:
        raise ResourceExceeded(
            f"convolving {len(a)} x {nb} keys exceeds memory budget of {budget} bytes")

    count_dtype = np.int64 if a.space.counts_fit_int64 else object
    ak, ac = a.keys, a.counts.astype(count_dtype)
    bk, bc = b.keys, b.counts.astype(count_dtype)

    def chunk(start: int):
        ka = ak[start:start + rows]
        ca = ac[start:start + rows]
        keys = (ka[:, None] + bk[None, :]).ravel()
        counts = (ca[:, None] * bc[None, :]).ravel()
        return _group(keys, counts)

    starts = range(0, len(a), rows)
    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(chunk, starts))
    else:
        parts = [chunk(s) for s in starts]

    estimated = sum(p[0].size for p in parts) * _BYTES_PER_PAIR
    if estimated > budget:
        raise ResourceExceeded(f"merged table needs ~{estimated} bytes, budget is {budget}")
    keys = np.concatenate([p[0] for p in parts])
    counts = np.concatenate([p[1] for p in parts])
    keys, counts = _group(keys, counts)
    return RepresentationTable(a.space, order, keys, counts)


def table_of_order(space: PowerSumSpace, order: int, workers: int | None = None,
                   memory_budget: int | None = None, _cache: dict | None = None) -> RepresentationTable:
    """Build the order-``order`` table by halving: ``ceil(t/2) + floor(t/2)``."""
    if _cache is None:
        _cache = {}
    if order in _cache:
        return _cache[order]
    if order == 1:
        table = RepresentationTable.single(space)
    else:
        hi = (order + 1) // 2
        lo = order // 2
        ta = table_of_order(space, hi, workers, memory_budget, _cache)
        tb = table_of_order(space, lo, workers, memory_budget, _cache)
        table = convolve(ta, tb, workers, memory_budget)
    _cache[order] = table
    return table
