"""Linear algebra over GF(2) on int bitsets.

A vector of length ``m`` is a Python ``int`` whose bit ``i`` is coordinate
``i``; a subset of ``{0, ..., m-1}`` and its indicator vector are the same
object.  Matrices store their rows as such ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_LEN = 64
ROW_SPACE_RANK_LIMIT = 24


class DimensionError(ValueError):
    pass


class CapacityError(RuntimeError):
    pass


def from_support(indices: Iterable[int]) -> int:
    v = 0
    for i in indices:
        v |= 1 << i
    return v


def support(v: int) -> list[int]:
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


def ones(m: int) -> int:
    return (1 << m) - 1


def dot(u: int, v: int) -> int:
    """Standard pairing of two vectors, in {0, 1}."""
    return (u & v).bit_count() & 1


def rank_of(vectors: Iterable[int]) -> int:
    """Rank of a family of vectors (xor basis keyed by leading bit)."""
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


def independent(vectors: Sequence[int]) -> bool:
    return rank_of(vectors) == len(vectors)


@dataclass(frozen=True)
class Gf2Matrix:
    """An ``nrows x ncols`` matrix over GF(2); ``rows[j]`` bit ``i`` is entry (j, i)."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        if not 0 <= self.ncols <= MAX_LEN:
            raise DimensionError(f"ncols={self.ncols} outside 0..{MAX_LEN}")
        mask = ones(self.ncols)
        for r in self.rows:
            if r & ~mask:
                raise DimensionError("row has bits beyond ncols")
        object.__setattr__(self, "rows", tuple(self.rows))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_columns(cls, codes: Sequence[int], n: int) -> "Gf2Matrix":
        """Build from column codes; bit ``j`` of a code is the entry in row ``j``."""
        rows = [0] * n
        for i, code in enumerate(codes):
            if code < 0 or code >> n:
                raise DimensionError(f"column code {code} does not fit in {n} rows")
            for j in range(n):
                if (code >> j) & 1:
                    rows[j] |= 1 << i
        return cls(tuple(rows), len(codes))

    @classmethod
    def from_bits(cls, bit_rows: Sequence[Sequence[int]]) -> "Gf2Matrix":
        if not bit_rows:
            return cls((), 0)
        m = len(bit_rows[0])
        rows = []
        for br in bit_rows:
            if len(br) != m:
                raise DimensionError("ragged bit rows")
            rows.append(from_support(i for i, b in enumerate(br) if b))
        return cls(tuple(rows), m)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def zero(cls, n: int, m: int) -> "Gf2Matrix":
        return cls((0,) * n, m)

    def column(self, i: int) -> int:
        code = 0
        for j, r in enumerate(self.rows):
            if (r >> i) & 1:
                code |= 1 << j
        return code

    def column_codes(self) -> list[int]:
        return [self.column(i) for i in range(self.ncols)]

    def to_bits(self) -> list[list[int]]:
        return [[(r >> i) & 1 for i in range(self.ncols)] for r in self.rows]

    def apply(self, v: int) -> int:
        """Image ``M v`` as a code in ``Z_2^nrows``."""
        out = 0
        for j, r in enumerate(self.rows):
            if dot(r, v):
                out |= 1 << j
        return out

    def rank(self) -> int:
        return rank_of(self.rows)

    def rref(self) -> tuple["Gf2Matrix", int, list[int]]:
        return rref(self)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(b) for b in row) for row in self.to_bits())


def rref(M: Gf2Matrix) -> tuple[Gf2Matrix, int, list[int]]:
    """Reduced row echelon form with zero rows dropped.

    Columns are scanned in index order, so the pivot of row ``k`` is the
    lowest set bit of that row.
    """
    work = [r for r in M.rows if r]
    pivots: list[int] = []
    out: list[int] = []
    for col in range(M.ncols):
        bit = 1 << col
        idx = next((k for k, r in enumerate(work) if r & bit), None)
        if idx is None:
            continue
        p = work.pop(idx)
        work = [r ^ p if r & bit else r for r in work]
        out = [r ^ p if r & bit else r for r in out]
        out.append(p)
        pivots.append(col)
        work = [r for r in work if r]
        if not work:
            break
    return Gf2Matrix(tuple(out), M.ncols), len(out), pivots


def reduce_against(R: Gf2Matrix, pivots: Sequence[int], u: int) -> int:
    for row, col in zip(R.rows, pivots):
        if (u >> col) & 1:
            u ^= row
    return u


def in_row_space(M: Gf2Matrix, u: int) -> bool:
    if u >> M.ncols:
        raise DimensionError("vector longer than matrix width")
    R, _, piv = rref(M)
    return reduce_against(R, piv, u) == 0


def kernel_basis(M: Gf2Matrix) -> list[int]:
    """Basis of ``{v : M v = 0}``, one vector per free column."""
    R, _, piv = rref(M)
    pivset = set(piv)
    basis = []
    for f in range(M.ncols):
        if f in pivset:
            continue
        v = 1 << f
        for row, col in zip(R.rows, piv):
            if (row >> f) & 1:
                v |= 1 << col
        basis.append(v)
    return basis


def span(vectors: Sequence[int]) -> Iterator[int]:
    """All ``2^k`` combinations of ``k`` vectors in Gray-code order, starting at 0."""
    k = len(vectors)
    cur = 0
    yield cur
    for step in range(1, 1 << k):
        flip = (step & -step).bit_length() - 1
        cur ^= vectors[flip]
        yield cur


def enumerate_row_space(M: Gf2Matrix) -> Iterator[int]:
    R, r, _ = rref(M)
    if r > ROW_SPACE_RANK_LIMIT:
        raise CapacityError(f"row space of rank {r} exceeds limit {ROW_SPACE_RANK_LIMIT}")
    return span(R.rows)


def encode_columns(M: Gf2Matrix) -> str:
    return ",".join(str(c) for c in M.column_codes())
