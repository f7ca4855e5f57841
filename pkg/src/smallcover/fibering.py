"""Circle-fibering certificates for 3-dimensional small covers.

The cube complex of ``N = M(L, mu)`` has vertices ``Z_2^n``; the edge in
direction ``i`` at ``g`` runs from ``g`` to ``g + mu_i``.  A cochain with
slopes ``c(g, i) = (-1)^(<mu_i, g> + eps_i)`` that is affine on squares and
has connected ascending/descending links at every vertex gives a fibration
through the primitive class ``[c] / d``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from math import gcd
from typing import Sequence

from .charmap import CharacteristicMap, block_product, is_characteristic, is_orientable
from .gf2 import Gf2Matrix, dot, ones, rank_of, support
from .report import FAIL, PASS, ObstructionReport, Verdict
from .simplicial import (
    SimplicialComplex,
    missing_face_census,
    recognize_polygon_product_dual,
    sphere0,
)


class DegenerateCocycle(ValueError):
    pass


def slope(mu: Sequence[int], eps: int, g: int, i: int, magnitude: int = 1) -> int:
    return -magnitude if (dot(mu[i], g) ^ ((eps >> i) & 1)) else magnitude


def check_affine(L: SimplicialComplex, mu: Gf2Matrix, eps: int = 0) -> tuple[bool, tuple | None]:
    """Odd-weight columns, and orthogonal columns along every edge of ``L``.

    Returns the first failure as ``("column", i)`` or ``("square", (i, j))``.
    The slopes do not depend on ``eps`` for this test.
    """
    cols = mu.column_codes()
    for i, c in enumerate(cols):
        if not dot(c, c):
            return False, ("column", i)
    for e in L.faces_by_dim.get(1, []):
        i, j = support(e)
        if dot(cols[i], cols[j]):
            return False, ("square", (i, j))
    return True, None


def square_defects(L: SimplicialComplex, mu: Gf2Matrix, eps: int, magnitude: int = 1) -> list[tuple[int, int, int]]:
    """Squares ``(g, i, j)`` where the cochain has nonzero coboundary."""
    cols = mu.column_codes()
    bad = []
    for g in range(1 << mu.nrows):
        for e in L.faces_by_dim.get(1, []):
            i, j = support(e)
            total = (
                slope(cols, eps, g, i, magnitude)
                + slope(cols, eps, g ^ cols[i], j, magnitude)
                - slope(cols, eps, g ^ cols[j], i, magnitude)
                - slope(cols, eps, g, j, magnitude)
            )
            if total:
                bad.append((g, i, j))
    return bad


def edge_reversal_defects(mu: Gf2Matrix, eps: int) -> list[tuple[int, int]]:
    cols = mu.column_codes()
    return [
        (g, i)
        for g in range(1 << mu.nrows)
        for i in range(mu.ncols)
        if slope(cols, eps, g ^ cols[i], i) != -slope(cols, eps, g, i)
    ]


@dataclass(frozen=True)
class LinkRow:
    g: int
    ascending: tuple[int, ...]
    descending: tuple[int, ...]
    ascending_ok: bool
    descending_ok: bool

    @property
    def ok(self) -> bool:
        return self.ascending_ok and self.descending_ok


def links_table(L: SimplicialComplex, mu: Gf2Matrix, eps: int) -> list[LinkRow]:
    """Ascending set ``{i : c(g,i) > 0}`` and descending set for every vertex ``g``."""
    cols = mu.column_codes()
    rows = []
    for g in range(1 << mu.nrows):
        neg = 0
        for i, c in enumerate(cols):
            if dot(c, g) ^ ((eps >> i) & 1):
                neg |= 1 << i
        pos = ones(L.m) & ~neg
        rows.append(LinkRow(
            g,
            tuple(support(pos)),
            tuple(support(neg)),
            bool(pos) and L.induced_components(pos) == 1,
            bool(neg) and L.induced_components(neg) == 1,
        ))
    return rows


def format_links_table(rows: list[LinkRow]) -> str:
    out = ["g | P_g | N_g"]
    for r in rows:
        out.append(f"{r.g} | {','.join(map(str, r.ascending))} | {','.join(map(str, r.descending))}")
    return "\n".join(out)


def _edges(mu: Gf2Matrix) -> list[tuple[int, int, int]]:
    """Unoriented edges as ``(u, v, i)`` with ``u`` the lower endpoint code."""
    cols = mu.column_codes()
    out = []
    for i, c in enumerate(cols):
        for g in range(1 << mu.nrows):
            h = g ^ c
            if g < h:
                out.append((g, h, i))
    return out


def cocycle_image_divisor(
    L: SimplicialComplex,
    mu: Gf2Matrix,
    eps: int,
    magnitude: int = 1,
    root: int = 0,
    search: str = "bfs",
) -> int:
    """Positive generator of the image of ``[c]`` on loops of the 1-skeleton.

    Fundamental cycles of a spanning tree (BFS or DFS from ``root``)
    generate all loops, so the gcd of their values is the answer.
    """
    if rank_of(mu.rows) != mu.nrows:
        raise ValueError("mu must be surjective")
    cols = mu.column_codes()
    nverts = 1 << mu.nrows
    adj: dict[int, list[tuple[int, int]]] = {g: [] for g in range(nverts)}
    for u, v, i in _edges(mu):
        adj[u].append((v, i))
        adj[v].append((u, i))
    pot = {root: 0}
    tree: set[tuple[int, int, int]] = set()
    todo = deque([root])
    while todo:
        u = todo.popleft() if search == "bfs" else todo.pop()
        for v, i in adj[u]:
            if v not in pot:
                pot[v] = pot[u] + slope(cols, eps, u, i, magnitude)
                tree.add((min(u, v), max(u, v), i))
                todo.append(v)
    d = 0
    for u, v, i in _edges(mu):
        if (u, v, i) in tree:
            continue
        d = gcd(d, abs(pot[u] + slope(cols, eps, u, i, magnitude) - pot[v]))
    if d == 0:
        raise DegenerateCocycle("cocycle vanishes on every loop")
    return d


def evaluate_loop(mu: Gf2Matrix, eps: int, start: int, directions: list[tuple[int, int]], magnitude: int = 1) -> int:
    """Sum of slopes along a walk given as ``(direction, +1 forward / -1 backward)`` steps."""
    cols = mu.column_codes()
    g, total = start, 0
    for i, sign in directions:
        if sign > 0:
            total += slope(cols, eps, g, i, magnitude)
            g ^= cols[i]
        else:
            g ^= cols[i]
            total -= slope(cols, eps, g, i, magnitude)
    if g != start:
        raise ValueError("walk is not closed")
    return total


@dataclass
class FiberingCertificate:
    mu: tuple[int, ...]
    eps: int
    affine_ok: bool = False
    failing: tuple | None = None
    links: list[LinkRow] = field(default_factory=list)
    divisor: int = 0
    verdict: str = "Inconclusive"
    reason: str = ""

    @property
    def fibers(self) -> bool:
        return self.verdict == "Fibers"

    def describe(self) -> str:
        if self.fibers:
            return f"primitive class [c]/{self.divisor} is represented by a fibration over the circle"
        return f"inconclusive: {self.reason}"


def fibering_verdict(L: SimplicialComplex, mu: Gf2Matrix, eps: int) -> FiberingCertificate:
    cert = FiberingCertificate(tuple(mu.column_codes()), eps)
    if L.dim != 2:
        cert.reason = "complex is not 2-dimensional"
        return cert
    if not missing_face_census(L).flag:
        cert.reason = "flagness required"
        return cert
    ok, bad = is_characteristic(L, mu)
    if not ok:
        cert.reason = f"not characteristic over facet {bad}"
        return cert
    if not is_orientable(mu):
        cert.reason = "small cover is not orientable"
        return cert
    if rank_of(mu.rows) != mu.nrows:
        cert.reason = "mu is not surjective"
        return cert
    cert.affine_ok, cert.failing = check_affine(L, mu, eps)
    if not cert.affine_ok:
        cert.reason = f"cochain not affine: {cert.failing}"
        return cert
    cert.links = links_table(L, mu, eps)
    bad_rows = [r.g for r in cert.links if not r.ok]
    if bad_rows:
        cert.reason = f"ascending/descending link empty or disconnected at g={bad_rows}"
        return cert
    try:
        cert.divisor = cocycle_image_divisor(L, mu, eps)
    except DegenerateCocycle as exc:
        cert.reason = str(exc)
        return cert
    cert.verdict = "Fibers"
    cert.reason = cert.describe()
    return cert


def product_symplectic_certificate(L: SimplicialComplex, mu: Gf2Matrix, eps: int) -> ObstructionReport:
    """Report for the product map over ``S^0 * L`` (the dual of ``I x Q``)."""
    rep = ObstructionReport()
    cert = fibering_verdict(L, mu, eps)
    rep.certificate = cert
    rep.add("interval-fibering", PASS if cert.fibers else FAIL, divisor=cert.divisor, detail=cert.describe())
    if not cert.fibers:
        rep.reason = f"fibering certificate unavailable ({cert.reason})"
        return rep
    interval = CharacteristicMap(sphere0(), Gf2Matrix((0b11,), 2))
    prod = block_product(interval, CharacteristicMap(L, mu))
    rep.certificate = (cert, prod)
    pp = recognize_polygon_product_dual(prod.complex)
    rep.add("polygon-product", PASS if pp else FAIL, decomposition=pp.sizes if pp else "none")
    rep.add("vertices", PASS, count=prod.complex.m)
    rep.decide(Verdict.SYMPLECTIC, "circle times a 3-manifold fibering over the circle")
    return rep


# -- recognizing products with an interval -------------------------------------


def interval_split(K: SimplicialComplex, lam: Gf2Matrix) -> tuple[int, int, SimplicialComplex, list[int]] | None:
    """Find ``K = {w0, w1} * L`` with ``lam(w0) = lam(w1)`` not in the span of the rest.

    Returns ``(w0, w1, L, rest_columns)``.
    """
    cols = lam.column_codes()
    for w0 in range(K.m):
        for w1 in range(w0 + 1, K.m):
            b0, b1 = 1 << w0, 1 << w1
            if cols[w0] != cols[w1]:
                continue
            if any(bool(f & b0) == bool(f & b1) for f in K.facets):
                continue
            if {f & ~b0 for f in K.facets if f & b0} != {f & ~b1 for f in K.facets if f & b1}:
                continue
            rest = ones(K.m) & ~(b0 | b1)
            L = K.full_subcomplex(rest)
            rest_cols = [cols[i] for i in support(rest)]
            if rank_of(rest_cols) != lam.nrows - 1:
                continue
            return w0, w1, L, rest_cols
    return None


def _coordinate_maps(rest_cols: list[int], n: int):
    """Yield ``mu`` column tuples: ``rest_cols`` written in each ordered basis of their span."""
    span: set[int] = {0}
    for c in rest_cols:
        span |= {s ^ c for s in span}
    nonzero = sorted(span - {0})
    k = n - 1
    seen = set()
    for basis in permutations(nonzero, k):
        if rank_of(basis) != k:
            continue
        coords = {}
        for code in range(1 << k):
            v = 0
            for b in range(k):
                if (code >> b) & 1:
                    v ^= basis[b]
            coords[v] = code
        mu = tuple(coords[c] for c in rest_cols)
        if mu not in seen:
            seen.add(mu)
            yield mu


MAX_EPSILON_BITS = 16


def find_interval_certificate(K: SimplicialComplex, lam: Gf2Matrix) -> tuple[FiberingCertificate, tuple] | None:
    """Search for a fibering certificate when ``lam`` splits off an interval factor."""
    split = interval_split(K, lam)
    if split is None:
        return None
    w0, w1, L, rest_cols = split
    if L.m > MAX_EPSILON_BITS or not missing_face_census(L).flag:
        return None
    n = lam.nrows
    for mu_codes in _coordinate_maps(rest_cols, n):
        mu = Gf2Matrix.from_columns(mu_codes, n - 1)
        if not check_affine(L, mu)[0]:
            continue
        for eps in range(1 << L.m):
            rows = links_table(L, mu, eps)
            if all(r.ok for r in rows):
                cert = fibering_verdict(L, mu, eps)
                if cert.fibers:
                    return cert, (w0, w1)
    return None

