"""Characteristic maps over simplicial spheres."""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import Gf2Matrix, in_row_space, independent, ones, rref, support
from .simplicial import SimplicialComplex, join, polygon


class CharacteristicError(ValueError):
    pass


def is_characteristic(K: SimplicialComplex, M: Gf2Matrix) -> tuple[bool, list[int] | None]:
    """Whether the columns over every facet are independent; else the first failing facet."""
    if M.ncols != K.m:
        raise CharacteristicError(f"matrix has {M.ncols} columns, complex has {K.m} vertices")
    cols = M.column_codes()
    for f in K.facets:
        idx = support(f)
        if not independent([cols[i] for i in idx]):
            return False, idx
    # vertices outside every facet still need a nonzero column
    for i, c in enumerate(cols):
        if c == 0:
            return False, [i]
    return True, None


def dj_canonical(M: Gf2Matrix) -> Gf2Matrix:
    R, r, _ = rref(M)
    if r != M.nrows:
        raise CharacteristicError(f"rank {r} < {M.nrows}: not a characteristic matrix")
    return R


def dj_equivalent(A: Gf2Matrix, B: Gf2Matrix) -> bool:
    return A.ncols == B.ncols and dj_canonical(A) == dj_canonical(B)


def is_orientable(M: Gf2Matrix) -> bool:
    return in_row_space(M, ones(M.ncols))


@dataclass(frozen=True)
class CharacteristicMap:
    complex: SimplicialComplex
    matrix: Gf2Matrix

    def __post_init__(self):
        ok, bad = is_characteristic(self.complex, self.matrix)
        if not ok:
            raise CharacteristicError(f"columns over {bad} are dependent")

    @property
    def n(self) -> int:
        return self.matrix.nrows

    @property
    def m(self) -> int:
        return self.matrix.ncols

    def canonical(self) -> "CharacteristicMap":
        return CharacteristicMap(self.complex, dj_canonical(self.matrix))

    def orientable(self) -> bool:
        return is_orientable(self.matrix)


def block_product(a: CharacteristicMap, b: CharacteristicMap) -> CharacteristicMap:
    """Block-diagonal map over ``join(a.complex, b.complex)``."""
    rows = [r for r in a.matrix.rows] + [r << a.m for r in b.matrix.rows]
    M = Gf2Matrix(tuple(rows), a.m + b.m)
    return CharacteristicMap(join(a.complex, b.complex), M)


def alternating(m: int) -> int:
    """The vector (1, 0, 1, 0, ...) of length m."""
    return sum(1 << i for i in range(0, m, 2))


def polygon_product(m1: int, m2: int) -> SimplicialComplex:
    return join(polygon(m1), polygon(m2))


def normal_form_lambda_beta(m1: int, m2: int, beta: int) -> CharacteristicMap:
    """Rows ``(1|0), (eps|0), (0|1), (beta|eps)`` over the dual of ``P_m1 x P_m2``."""
    if m1 % 2 or m2 % 2:
        raise CharacteristicError("both polygons need an even number of sides")
    if m1 < 4 or m2 < 4:
        raise CharacteristicError("polygons need at least four sides")
    if beta >> m1:
        raise CharacteristicError("beta longer than the first factor")
    rows = (
        ones(m1),
        alternating(m1),
        ones(m2) << m1,
        beta | (alternating(m2) << m1),
    )
    return CharacteristicMap(polygon_product(m1, m2), Gf2Matrix(rows, m1 + m2))
