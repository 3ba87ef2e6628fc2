"""Linear-algebra ground truth over GF(2).

Nothing here uses the closed-form dual theory: codes are handled as row
spaces of bit matrices, and canonical generators are read off an echelon
basis. Matrices follow the bit layout of :mod:`tricyclic.triplecode`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterator, Sequence

import numpy as np

from .gf2poly import ZERO, Gf2Poly, gcd, xn_minus_1
from .triplecode import BinMatrix, TripleSpec, generator_matrix, rotate

__all__ = [
    "DEFAULT_CAP",
    "EnumerationCapError",
    "NotCyclicError",
    "WeightDist",
    "XorBasis",
    "block_matrix",
    "dual_oracle",
    "enumerate_words",
    "extract_spec",
    "is_triple_cyclic",
    "min_distance",
    "module_span",
    "null_space",
    "rank",
    "rref",
    "sigma_bits",
    "weight_distribution",
]

DEFAULT_CAP = 24


class EnumerationCapError(ValueError):
    def __init__(self, rank: int, cap: int):
        self.rank = rank
        self.cap = cap
        super().__init__(f"code dimension {rank} exceeds the enumeration cap {cap}")


class NotCyclicError(ValueError):
    """The row space is not invariant under the simultaneous block shift."""


def sigma_bits(v: int, r: int, s: int, t: int, times: int = 1) -> int:
    """Blockwise cyclic shift of a packed word."""
    c1 = v & ((1 << r) - 1)
    c2 = (v >> r) & ((1 << s) - 1)
    c3 = v >> (r + s)
    return rotate(c1, times, r) | (rotate(c2, times, s) << r) | (rotate(c3, times, t) << (r + s))


class XorBasis:
    """Echelon basis keyed by each row's highest set bit."""

    __slots__ = ("rows",)

    def __init__(self, vectors: Sequence[int] = ()):
        self.rows: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        rows = self.rows
        while v:
            top = v.bit_length() - 1
            row = rows.get(top)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v: int) -> bool:
        """Insert ``v``; return False if it was already in the span."""
        v = self.reduce(v)
        if not v:
            return False
        self.rows[v.bit_length() - 1] = v
        return True

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __len__(self) -> int:
        return len(self.rows)

    def vectors(self) -> list[int]:
        return [self.rows[k] for k in sorted(self.rows)]


def _as_rows(m) -> tuple[list[int], int]:
    if isinstance(m, BinMatrix):
        return list(m.rows), m.n
    rows, n = m
    return list(rows), n


def rref(m: BinMatrix) -> tuple[BinMatrix, int, list[int]]:
    """Reduced row echelon form with pivots chosen left to right (column 0 first)."""
    rows, n = _as_rows(m)
    pivots: list[int] = []
    out: list[int] = []
    for col in range(n):
        bit = 1 << col
        pick = next((i for i, v in enumerate(rows) if v & bit), None)
        if pick is None:
            continue
        prow = rows.pop(pick)
        rows = [v ^ prow if v & bit else v for v in rows]
        out = [v ^ prow if v & bit else v for v in out]
        out.append(prow)
        pivots.append(col)
    return BinMatrix(tuple(out), m.r, m.s, m.t), len(out), pivots


def rank(m: BinMatrix) -> int:
    return len(XorBasis(m.rows))


def null_space(m: BinMatrix) -> BinMatrix:
    """Basis of ``{v : m v^T = 0}`` as rows."""
    reduced, _, pivots = rref(m)
    pivot_set = set(pivots)
    out = []
    for free in range(m.n):
        if free in pivot_set:
            continue
        v = 1 << free
        for row, p in zip(reduced.rows, pivots):
            if (row >> free) & 1:
                v |= 1 << p
        out.append(v)
    return BinMatrix(tuple(out), m.r, m.s, m.t)


def _check_cap(k: int, cap: int | None) -> None:
    if cap is not None and k > cap:
        raise EnumerationCapError(k, cap)


def enumerate_words(m: BinMatrix, cap: int | None = DEFAULT_CAP) -> Iterator[int]:
    """Yield every codeword of the row space once, in Gray-code order."""
    basis = XorBasis(m.rows).vectors()
    _check_cap(len(basis), cap)
    word = 0
    yield word
    for i in range(1, 1 << len(basis)):
        word ^= basis[(i & -i).bit_length() - 1]
        yield word


@dataclass(frozen=True)
class WeightDist:
    """Hamming weight census of a binary linear code."""

    counts: dict[int, int]
    n: int
    k: int

    @property
    def d(self) -> int | None:
        nonzero = [w for w, c in self.counts.items() if w and c]
        return min(nonzero) if nonzero else None

    def total(self) -> int:
        return sum(self.counts.values())

    def table(self) -> str:
        return "\n".join(f"{w} {c}" for w, c in sorted(self.counts.items()))


def _limbs(v: int, nlimbs: int) -> list[int]:
    return [(v >> (64 * i)) & 0xFFFFFFFFFFFFFFFF for i in range(nlimbs)]


def weight_distribution(m: BinMatrix, cap: int | None = DEFAULT_CAP) -> WeightDist:
    """Full weight census by exhaustive enumeration of the row space."""
    basis = XorBasis(m.rows).vectors()
    k = len(basis)
    _check_cap(k, cap)
    nlimbs = max(1, -(-m.n // 64))
    vecs = np.array([_limbs(v, nlimbs) for v in basis], dtype=np.uint64).reshape(k, nlimbs)
    low = min(k, 16)
    table = np.zeros((1, nlimbs), dtype=np.uint64)
    for i in range(low):
        table = np.concatenate([table, table ^ vecs[i]])
    hist = np.zeros(m.n + 1, dtype=np.int64)
    high = vecs[low:]
    cur = np.zeros(nlimbs, dtype=np.uint64)
    for i in range(1 << (k - low)):
        if i:
            cur = cur ^ high[(i & -i).bit_length() - 1]
        weights = np.bitwise_count(table ^ cur).sum(axis=1, dtype=np.int64)
        hist += np.bincount(weights, minlength=m.n + 1)
    counts = {w: int(c) for w, c in enumerate(hist) if c}
    return WeightDist(counts, m.n, k)


def min_distance(m: BinMatrix, cap: int | None = DEFAULT_CAP) -> int | None:
    return weight_distribution(m, cap).d


def block_matrix(m: BinMatrix, block: int) -> BinMatrix:
    """Projection of the row space onto block 0, 1 or 2, as a one-block matrix."""
    offsets = (0, m.r, m.r + m.s)
    width = (m.r, m.s, m.t)[block]
    mask = (1 << width) - 1
    return BinMatrix(tuple((v >> offsets[block]) & mask for v in m.rows), width, 0, 0)


def is_triple_cyclic(m: BinMatrix) -> bool:
    basis = XorBasis(m.rows)
    return all(sigma_bits(v, m.r, m.s, m.t) in basis for v in m.rows)


def module_span(words: Sequence[int], r: int, s: int, t: int) -> BinMatrix:
    """Basis of the smallest shift-invariant code containing ``words``."""
    basis = XorBasis()
    queue = list(words)
    while queue:
        v = queue.pop()
        if basis.add(v):
            queue.append(sigma_bits(v, r, s, t))
    return BinMatrix(tuple(basis.vectors()), r, s, t)


def _solve_top(basis: XorBasis, target: int, floor: int) -> int | None:
    """Combination of basis rows agreeing with ``target`` on bits ``>= floor``."""
    acc = 0
    v = target
    while v.bit_length() > floor:
        row = basis.rows.get(v.bit_length() - 1)
        if row is None:
            return None
        v ^= row
        acc ^= row
    return acc


def _block_gcd(rows: list[int], shift: int, width: int) -> Gf2Poly:
    mask = (1 << width) - 1
    return gcd([xn_minus_1(width)] + [Gf2Poly((v >> shift) & mask) for v in rows])


def extract_spec(m: BinMatrix) -> TripleSpec:
    """Canonical generators of a shift-invariant row space.

    Works on an echelon basis keyed by top bit: rows whose top bit lies in the
    third block span the part that projects onto it, and the remaining rows
    span the subcode with zero third block (then likewise for the second
    block).
    """
    r, s, t = m.r, m.s, m.t
    basis = XorBasis(m.rows)
    if not all(sigma_bits(v, r, s, t) in basis for v in basis.rows.values()):
        raise NotCyclicError("row space is not invariant under the block shift")
    rs = r + s
    rows = list(basis.rows.values())

    top_t = [v for v in rows if v.bit_length() > rs]
    g3 = _block_gcd(top_t, rs, t)
    if top_t:
        word = _solve_top(basis, g3.bits << rs, rs)
        if word is None:
            raise AssertionError("third-block generator not attained")
        g1 = Gf2Poly(word & ((1 << r) - 1))
        g2 = Gf2Poly((word >> r) & ((1 << s) - 1))
    else:
        g1 = g2 = ZERO

    kernel = [v for v in rows if v.bit_length() <= rs]
    top_s = [v for v in kernel if v.bit_length() > r]
    a = _block_gcd(top_s, r, s)
    if top_s:
        word = _solve_top(basis, a.bits << r, r)
        if word is None:
            raise AssertionError("second-block generator not attained")
        l = Gf2Poly(word & ((1 << r) - 1))
    else:
        l = ZERO

    b = _block_gcd([v for v in kernel if v.bit_length() <= r], 0, r)

    xr = xn_minus_1(r)
    q, g2 = divmod(g2, a)
    g1 = ((g1 + q * l) % xr) % b
    l = l % b
    return TripleSpec(r, s, t, b=b, l=l, a=a, g1=g1, g2=g2, g3=g3)


def dual_oracle(spec: TripleSpec) -> TripleSpec:
    """Canonical spec of the dual code via null space and extraction."""
    return extract_spec(null_space(generator_matrix(spec)))


def shift_period(r: int, s: int, t: int) -> int:
    return lcm(r, s, t)
