"""Symplecticity obstructions and the decision tree that combines them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .charmap import alternating, is_orientable
from .cohomology import euler_characteristic, hochster_profile, rz_b1
from .fibering import find_interval_certificate
from .gf2 import Gf2Matrix, enumerate_row_space, from_support, in_row_space, ones, support
from .report import FAIL, PASS, SKIP, ObstructionReport, Verdict
from .simplicial import (
    PolygonProduct,
    SimplicialComplex,
    _boundary_rows,
    is_induced_cycle,
    missing_face_census,
    rank_q,
    recognize_polygon_product_dual,
)


def c_symplectic(K: SimplicialComplex, lam: Gf2Matrix) -> tuple[bool, int | None]:
    """Orientable with a row-space weight ``omega`` having ``b~_1(K_omega) > 0``.

    The witness is the numerically smallest such weight.
    """
    if not is_orientable(lam):
        return False, None
    witnesses = [w for w in enumerate_row_space(lam) if K.induced_betti(w)[2] > 0]
    if not witnesses:
        return False, None
    return True, min(witnesses)


def euler_mod4(K: SimplicialComplex) -> bool:
    euler_characteristic(K)  # raises if the two formulas disagree
    return len(K.facets) % 4 == 0


@dataclass(frozen=True)
class FlagnessClass:
    kind: str  # Flag, MissingTriangle, MissingTetrahedron, BoundaryOfSimplex, PolygonTriangleJoin
    witness: int | None = None
    polygon: int | None = None

    def __str__(self) -> str:
        if self.kind == "PolygonTriangleJoin":
            return f"PolygonTriangleJoin({self.polygon})"
        if self.witness is not None:
            return f"{self.kind}({support(self.witness)})"
        return self.kind


def flagness_class(K: SimplicialComplex) -> FlagnessClass:
    census = missing_face_census(K)
    mf = census.missing_faces
    if mf.get(5):
        return FlagnessClass("BoundaryOfSimplex", mf[5][0])
    if census.has_missing_triangle:
        pp = recognize_polygon_product_dual(K)
        if pp is not None and pp.sizes[0] == 3:
            return FlagnessClass("PolygonTriangleJoin", polygon=pp.sizes[1])
        return FlagnessClass("MissingTriangle", mf[3][0])
    if census.has_missing_tetrahedron:
        return FlagnessClass("MissingTetrahedron", mf[4][0])
    return FlagnessClass("Flag")


# -- products of polygons ------------------------------------------------------


def block_labeling(m1: int, m2: int) -> PolygonProduct:
    return PolygonProduct((tuple(range(m1)), tuple(range(m1, m1 + m2))))


def _deltas(cycle: tuple[int, ...]) -> tuple[int, int]:
    """Opposite-pair indicator vectors of a 4-cycle."""
    return from_support(cycle[0::2]), from_support(cycle[1::2])


def factor_compatible_product(pp: PolygonProduct, lam: Gf2Matrix) -> tuple[bool, dict]:
    a, b = pp.factor_masks
    if lam.ncols != len(pp.cycles[0]) + len(pp.cycles[1]) or (a | b) != ones(lam.ncols):
        raise ValueError("labeling does not match the matrix width")
    if pp.sizes == (4, 4):
        d11, d12 = _deltas(pp.cycles[0])
        d21, d22 = _deltas(pp.cycles[1])
        pairings = [((d11, d12), (d21, d22)), ((d11, d21), (d12, d22)), ((d11, d22), (d12, d21))]
        for (p, q), (r, s) in pairings:
            if in_row_space(lam, p | q) and in_row_space(lam, r | s):
                return True, {"pairing": [support(p | q), support(r | s)]}
        return False, {"pairing": None}
    chi1, chi2 = in_row_space(lam, a), in_row_space(lam, b)
    return chi1 and chi2, {"chi1_in_row": chi1, "chi2_in_row": chi2}


def two_stage_compatible(pp: PolygonProduct, lam: Gf2Matrix) -> bool:
    """Both factor weights in the row space, for this fixed decomposition (no cube exception)."""
    a, b = pp.factor_masks
    return in_row_space(lam, a) and in_row_space(lam, b)


def factor_compatible(m1: int, m2: int, lam: Gf2Matrix) -> tuple[bool, dict]:
    """Factor-compatibility in the block labeling (first ``m1`` columns form the first polygon)."""
    if lam.ncols != m1 + m2:
        raise ValueError(f"expected {m1 + m2} columns, got {lam.ncols}")
    return factor_compatible_product(block_labeling(m1, m2), lam)


def count_formula_symplectic(m1: int, m2: int) -> int:
    """Closed-form count of symplectic classes over a product of polygons; 0 when a side is odd."""
    if m1 % 2 or m2 % 2:
        return 0
    if m1 < 4 or m2 < 4:
        raise ValueError("polygons need at least four sides")
    return 2 ** (m1 - 2) + 2 ** (m2 - 2) - 1


def diffeo_class_count(m1: int, m2: int) -> int:
    if m1 % 2 or m2 % 2 or m1 < 4 or m2 < 4:
        raise ValueError("defined for even sizes >= 4")
    return 2 if m1 == m2 else 3


def beta_class_is_trivial(m1: int, beta: int) -> bool:
    """Whether ``beta`` lies in the span of the all-ones and alternating vectors."""
    return beta in (0, ones(m1), alternating(m1), ones(m1) ^ alternating(m1))


# -- torus weights -------------------------------------------------------------


def induced_four_cycles(K: SimplicialComplex, omega: int) -> list[tuple[int, ...]]:
    """Induced 4-cycles inside ``omega``, each in cyclic order."""
    nb = K.neighbors
    out = []
    for quad in combinations(support(omega), 4):
        q = from_support(quad)
        degs = [(nb[v] & q).bit_count() for v in quad]
        if degs != [2, 2, 2, 2]:
            continue
        a = quad[0]
        x, y = support(nb[a] & q)
        c = next(v for v in quad if v not in (a, x, y))
        out.append((a, x, c, y))
    return out


def _cycle_vector(cycle: tuple[int, ...], edge_index: dict[int, int]) -> dict[int, int]:
    row = {}
    for u, v in zip(cycle, cycle[1:] + cycle[:1]):
        row[edge_index[(1 << u) | (1 << v)]] = 1 if u < v else -1
    return row


def h1_carried_by_four_cycles(K: SimplicialComplex, omega: int) -> bool:
    """Whether induced 4-cycles inside ``omega`` span ``H_1(K_omega; Q)``."""
    target = K.induced_betti(omega)[2]
    if target == 0:
        return True
    edges = [e for e in K.faces_by_dim.get(1, []) if e & omega == e]
    tris = [t for t in K.faces_by_dim.get(2, []) if t & omega == t]
    edge_index = {e: i for i, e in enumerate(edges)}
    bounds = _boundary_rows(tris, edge_index)
    cycles = [_cycle_vector(c, edge_index) for c in induced_four_cycles(K, omega)]
    return rank_q(bounds + cycles) - rank_q(bounds) == target


@dataclass
class TorusWeightResult:
    all_weights_are_4cycles: bool
    b1_rz: int
    prop_a1_applies: bool
    carried_by_4cycles: bool = False
    weights: list[tuple[int, int | None, bool]] = field(default_factory=list)  # (omega, cycle length, carried)

    @property
    def strict_failures(self) -> list[int]:
        return [w for w, q, _ in self.weights if q != 4]

    @property
    def applies(self) -> bool:
        """The hypothesis holds by either the strict or the carried check, and ``b_1 > 4``."""
        return (self.all_weights_are_4cycles or self.carried_by_4cycles) and self.b1_rz > 4


def torus_weight_check(K: SimplicialComplex, lam: Gf2Matrix) -> TorusWeightResult:
    """Check that degree-two classes come from square-zero tori.

    Strict form: every weight with ``b~_1(K_omega) > 0`` spans an induced
    4-cycle.  Carried form: ``H_1(K_omega)`` is spanned by induced 4-cycles
    inside ``omega``.  The strict form implies the carried one.
    """
    prof = hochster_profile(K, lam)
    weights = []
    for w in prof.weights_in_degree(2):
        q = is_induced_cycle(K.full_subcomplex(w))
        weights.append((w, q, q == 4 or h1_carried_by_four_cycles(K, w)))
    strict = all(q == 4 for _, q, _ in weights)
    carried = all(c for _, _, c in weights)
    b1 = rz_b1(K)
    return TorusWeightResult(strict, b1, strict and b1 > 4, carried, weights)


# -- decision tree -------------------------------------------------------------

TEST_ORDER = [
    "orientable",
    "c-symplectic",
    "euler-mod-4",
    "flagness",
    "product-recognition",
    "factor-compatible",
    "interval-fibering",
    "torus-weights",
]


def symplectic_verdict(K: SimplicialComplex, lam: Gf2Matrix, fibering_search: bool = True) -> ObstructionReport:
    rep = ObstructionReport()
    no = Verdict.NOT_SYMPLECTIC

    def skip_rest():
        done = {t.name for t in rep.tests}
        for name in TEST_ORDER:
            if name not in done:
                rep.add(name, SKIP)

    orient = is_orientable(lam)
    rep.add("orientable", PASS if orient else FAIL)
    if not orient:
        rep.decide(no, "not orientable")
        skip_rest()
        return rep

    cs, witness = c_symplectic(K, lam)
    rep.add("c-symplectic", PASS if cs else FAIL, witness=support(witness) if cs else None)
    if not cs:
        rep.decide(no, "not c-symplectic (no row-space weight with b~1 > 0)")
        skip_rest()
        return rep

    ok4 = euler_mod4(K)
    rep.add("euler-mod-4", PASS if ok4 else FAIL, facets=len(K.facets))
    if not ok4:
        rep.decide(no, f"facet count {len(K.facets)} not divisible by 4")
        skip_rest()
        return rep

    fc = flagness_class(K)
    rep.add("flagness", PASS if fc.kind == "Flag" else FAIL, cls=str(fc))
    if fc.kind != "Flag":
        rep.decide(no, f"non-flag sphere ({fc})")
        skip_rest()
        return rep

    pp = recognize_polygon_product_dual(K)
    rep.add("product-recognition", PASS if pp else FAIL, decomposition=pp.sizes if pp else "none")
    if pp is not None:
        compat, cert = factor_compatible_product(pp, lam)
        rep.add("factor-compatible", PASS if compat else FAIL, **cert)
        if compat:
            rep.certificate = cert
            rep.decide(Verdict.SYMPLECTIC, "factor-compatible product of polygons")
        else:
            rep.decide(no, "product of polygons that is not factor-compatible")
        skip_rest()
        return rep
    rep.add("factor-compatible", SKIP)

    found = find_interval_certificate(K, lam) if fibering_search else None
    if found is not None:
        cert, pair = found
        rep.add("interval-fibering", PASS, interval=list(pair), epsilon=support(cert.eps), divisor=cert.divisor)
        rep.certificate = cert
        rep.decide(Verdict.SYMPLECTIC, "circle times a fibered 3-manifold")
        skip_rest()
        return rep
    rep.add("interval-fibering", FAIL if fibering_search else SKIP, detail="no certificate found")

    tw = torus_weight_check(K, lam)
    rep.add(
        "torus-weights",
        FAIL if tw.applies else PASS,
        strict=tw.all_weights_are_4cycles,
        carried=tw.carried_by_4cycles,
        b1_rz=tw.b1_rz,
        weights=[support(w) for w, _, _ in tw.weights],
    )
    if tw.applies:
        how = "every weight an induced 4-cycle" if tw.all_weights_are_4cycles else "H_1 of every weight carried by induced 4-cycles"
        rep.decide(no, f"H_2 spanned by square-zero tori ({how}) and b1(RZ_K) = {tw.b1_rz} > 4")
    return rep
