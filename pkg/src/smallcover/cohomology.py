"""Cohomology of real toric spaces and small covers.

Rational Betti numbers come from the Hochster-type sum over row-space
weights; mod 2 data comes from the face ring presentation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .gf2 import CapacityError, Gf2Matrix, enumerate_row_space, ones, rank_of, rref, support
from .simplicial import SimplicialComplex, f_and_h_vector

FULL_PROFILE_MAX_M = 16
RZ_MAX_M = 20


class InconsistencyError(RuntimeError):
    pass


@dataclass
class HochsterProfile:
    """Reduced Betti vectors ``(b~_-1, ..., b~_dim)`` of ``K_omega`` for each weight ``omega``."""

    m: int
    dim: int
    entries: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def betti(self) -> tuple[int, ...]:
        """Rational Betti numbers ``b_0..b_{dim+1}`` of the space."""
        out = [0] * (self.dim + 2)
        for vec in self.entries.values():
            for k, b in enumerate(vec):
                out[k] += b
        return tuple(out)

    def nonzero(self) -> list[tuple[int, tuple[int, ...]]]:
        return sorted((w, v) for w, v in self.entries.items() if any(v))

    def weights_in_degree(self, i: int) -> list[int]:
        """Weights contributing to ``H^i``; that is ``b~_{i-1}(K_omega) > 0``."""
        return sorted(w for w, v in self.entries.items() if v[i])


def hochster_profile(K: SimplicialComplex, lam: Gf2Matrix) -> HochsterProfile:
    if lam.ncols != K.m:
        raise ValueError("matrix width does not match the vertex count")
    prof = HochsterProfile(K.m, K.dim)
    for w in enumerate_row_space(lam):
        prof.entries[w] = K.induced_betti(w)
    return prof


def rz_betti(K: SimplicialComplex) -> tuple[int, ...]:
    """Betti numbers of the real moment-angle complex, summing over all ``2^m`` subsets."""
    if K.m > RZ_MAX_M:
        raise CapacityError(f"m={K.m} too large for the full subset sum")
    if K.m > FULL_PROFILE_MAX_M:
        warnings.warn(f"full profile over 2^{K.m} subsets is slow; consider rz_b1", stacklevel=2)
    out = [0] * (K.dim + 2)
    for w in range(1 << K.m):
        for k, b in enumerate(K.induced_betti(w)):
            out[k] += b
    return tuple(out)


def rz_b1(K: SimplicialComplex) -> int:
    """First Betti number of the real moment-angle complex from induced-subgraph components."""
    if K.m > 24:
        raise CapacityError(f"m={K.m} too large")
    return sum(K.induced_components(w) - 1 for w in range(1, 1 << K.m))


def mod2_betti(K: SimplicialComplex) -> list[int]:
    return f_and_h_vector(K)[1]


def euler_characteristic(K: SimplicialComplex) -> int:
    """Euler characteristic of any small cover over a 3-sphere ``K``, cross-checked two ways."""
    f, h = f_and_h_vector(K)
    chi = sum((-1) ** i * x for i, x in enumerate(h))
    if K.dim == 3:
        vertices, edges = f[1], f[2]
        alt = edges - 5 * vertices + 16
        if alt != chi:
            raise InconsistencyError(f"alternating h-sum {chi} != f1 - 5 f0 + 16 = {alt}")
    return chi


@dataclass(frozen=True)
class Mod2RingSlice:
    """Degrees one and two of ``H^*(M; Z_2)`` and the squaring map between them."""

    dim_h1: int
    dim_h2: int
    square_rank: int
    h_vector: tuple[int, ...]


def _pair_index(m: int) -> dict[tuple[int, int], int]:
    idx = {}
    for i in range(m):
        for j in range(i, m):
            idx[(i, j)] = len(idx)
    return idx


def squaring_rank(K: SimplicialComplex, lam: Gf2Matrix) -> Mod2RingSlice:
    """Rank of ``x -> x^2`` from degree one to degree two over Z_2.

    Degree two is the span of quadratic monomials modulo missing-edge
    monomials and the products of the linear relations with every variable.
    """
    m = K.m
    idx = _pair_index(m)

    def mono(i: int, j: int) -> int:
        return 1 << idx[(i, j) if i <= j else (j, i)]

    relations = []
    for i in range(m):
        for j in range(i + 1, m):
            if not K.has_face((1 << i) | (1 << j)):
                relations.append(mono(i, j))
    R, rank_lam, _ = rref(lam)
    for row in R.rows:
        for k in range(m):
            rel = 0
            for i in support(row):
                rel ^= mono(i, k)
            relations.append(rel)
    rel_rank = rank_of(relations)
    dim_h1 = m - rank_lam
    dim_h2 = len(idx) - rel_rank
    squares = [mono(i, i) for i in range(m)]
    q_rank = rank_of(relations + squares) - rel_rank

    h = tuple(f_and_h_vector(K)[1])
    if K.dim >= 1 and (dim_h1 != h[1] or (len(h) > 2 and dim_h2 != h[2])):
        raise InconsistencyError(f"slice dims ({dim_h1}, {dim_h2}) disagree with h-vector {h}")
    return Mod2RingSlice(dim_h1, dim_h2, q_rank, h)


def betti_of_small_cover(K: SimplicialComplex, lam: Gf2Matrix) -> tuple[int, ...]:
    return hochster_profile(K, lam).betti()


def profile_lines(prof: HochsterProfile) -> list[str]:
    return [
        f"omega={support(w)} betti={list(vec)}" for w, vec in prof.nonzero()
    ]


def rz_identity(m: int) -> Gf2Matrix:
    return Gf2Matrix(tuple(1 << i for i in range(m)), m)


__all__ = [
    "HochsterProfile",
    "InconsistencyError",
    "Mod2RingSlice",
    "euler_characteristic",
    "hochster_profile",
    "mod2_betti",
    "profile_lines",
    "rz_b1",
    "rz_betti",
    "squaring_rank",
]
