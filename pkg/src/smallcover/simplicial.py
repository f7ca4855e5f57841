"""Finite simplicial complexes on vertex sets {0, ..., m-1}.

Faces are int bitmasks.  Rational homology is computed by exact sparse
elimination over the integers (no torsion is tracked).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb, gcd
from typing import Iterable, Sequence

from .gf2 import MAX_LEN, from_support, ones, support


class ComplexError(ValueError):
    pass


def _lex_key(mask: int) -> tuple[int, ...]:
    return tuple(support(mask))


def _maximal(masks: Iterable[int]) -> list[int]:
    uniq = sorted(set(masks), key=lambda x: -x.bit_count())
    kept: list[int] = []
    for f in uniq:
        if not any(f & g == f for g in kept):
            kept.append(f)
    return sorted(kept, key=_lex_key)


@dataclass(frozen=True)
class SimplicialComplex:
    m: int
    facets: tuple[int, ...]
    # original vertex ids when this complex was cut out of a larger one
    labels: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.m <= MAX_LEN:
            raise ComplexError(f"vertex count {self.m} outside 0..{MAX_LEN}")
        for f in self.facets:
            if f >> self.m:
                raise ComplexError(f"facet {support(f)} uses a vertex >= m={self.m}")
        object.__setattr__(self, "facets", tuple(_maximal(self.facets) or [0]))

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], m: int | None = None) -> "SimplicialComplex":
        masks = [from_support(f) for f in facets]
        if m is None:
            m = max((mk.bit_length() for mk in masks), default=0)
        return cls(m, tuple(masks))

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls(0, (0,))

    @property
    def dim(self) -> int:
        return max(f.bit_count() for f in self.facets) - 1

    def facet_lists(self) -> list[list[int]]:
        return [support(f) for f in self.facets if f]

    def is_pure(self) -> bool:
        return len({f.bit_count() for f in self.facets}) == 1

    @cached_property
    def faces_by_dim(self) -> dict[int, list[int]]:
        seen: set[int] = set()
        for f in self.facets:
            verts = support(f)
            for k in range(len(verts) + 1):
                for sub in combinations(verts, k):
                    seen.add(from_support(sub))
        out: dict[int, list[int]] = {d: [] for d in range(-1, self.dim + 1)}
        for s in seen:
            out[s.bit_count() - 1].append(s)
        for d in out:
            out[d].sort(key=_lex_key)
        return out

    @cached_property
    def face_set(self) -> frozenset[int]:
        return frozenset(s for lst in self.faces_by_dim.values() for s in lst)

    def has_face(self, sigma: int | Iterable[int]) -> bool:
        mask = sigma if isinstance(sigma, int) else from_support(sigma)
        if mask >> self.m:
            raise ComplexError(f"vertex out of range in {support(mask)}")
        return mask in self.face_set

    @cached_property
    def neighbors(self) -> tuple[int, ...]:
        nb = [0] * self.m
        for e in self.faces_by_dim.get(1, []):
            a, b = support(e)
            nb[a] |= 1 << b
            nb[b] |= 1 << a
        return tuple(nb)

    def f_vector(self) -> list[int]:
        return [len(self.faces_by_dim[d]) for d in range(-1, self.dim + 1)]

    # -- full subcomplexes ------------------------------------------------

    def full_subcomplex(self, omega: int | Iterable[int]) -> "SimplicialComplex":
        """``K_omega``, re-indexed onto ``0..|omega|-1`` with ``labels`` recording the old ids."""
        mask = omega if isinstance(omega, int) else from_support(omega)
        verts = support(mask)
        pos = {v: i for i, v in enumerate(verts)}
        fs = []
        for f in self.facets:
            g = f & mask
            fs.append(from_support(pos[v] for v in support(g)))
        return SimplicialComplex(len(verts), tuple(fs), labels=tuple(verts))

    def induced_components(self, omega: int) -> int:
        """Number of connected components of the induced subgraph on ``omega``."""
        nb = self.neighbors
        left = omega
        count = 0
        while left:
            frontier = left & -left
            comp = 0
            while frontier:
                comp |= frontier
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    nxt |= nb[low.bit_length() - 1]
                    f ^= low
                frontier = nxt & omega & ~comp
            left &= ~comp
            count += 1
        return count

    @cached_property
    def _betti_cache(self) -> dict[int, tuple[int, ...]]:
        return {}

    def induced_betti(self, omega: int) -> tuple[int, ...]:
        """Reduced rational Betti numbers of ``K_omega`` in degrees -1..dim(K)."""
        cache = self._betti_cache
        hit = cache.get(omega)
        if hit is None:
            fb = {d: [s for s in lst if s & ~omega == 0] for d, lst in self.faces_by_dim.items()}
            hit = _reduced_betti(fb, self.dim)
            cache[omega] = hit
        return hit

    def reduced_betti(self) -> tuple[int, ...]:
        return self.induced_betti(ones(self.m))

    def link(self, v: int) -> "SimplicialComplex":
        bit = 1 << v
        fs = [f & ~bit for f in self.facets if f & bit]
        return SimplicialComplex(self.m, tuple(fs))

    def vertices_used(self) -> int:
        u = 0
        for f in self.facets:
            u |= f
        return u


# -- exact rational rank ----------------------------------------------------


def rank_q(rows: Iterable[dict[int, int]]) -> int:
    """Rank over Q of a sparse integer matrix given as ``{col: value}`` rows."""
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                pivots[col] = row
                break
            a, p = row[col], prow[col]
            new = {k: p * v for k, v in row.items()}
            for k, v in prow.items():
                new[k] = new.get(k, 0) - a * v
            row = {k: v for k, v in new.items() if v}
            if row:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if g > 1:
                    row = {k: v // g for k, v in row.items()}
    return len(pivots)


def _boundary_rows(faces_k: Sequence[int], index_km1: dict[int, int]) -> list[dict[int, int]]:
    rows = []
    for s in faces_k:
        verts = support(s)
        row = {}
        for t, v in enumerate(verts):
            row[index_km1[s & ~(1 << v)]] = -1 if t & 1 else 1
        rows.append(row)
    return rows


def _reduced_betti(faces_by_dim: dict[int, list[int]], top: int) -> tuple[int, ...]:
    counts = {d: len(faces_by_dim.get(d, [])) for d in range(-1, top + 2)}
    ranks = {d: 0 for d in range(-1, top + 3)}
    for d in range(0, top + 1):
        lst = faces_by_dim.get(d, [])
        if not lst:
            continue
        index = {s: i for i, s in enumerate(faces_by_dim[d - 1])}
        ranks[d] = rank_q(_boundary_rows(lst, index))
    return tuple(counts[d] - ranks[d] - ranks[d + 1] for d in range(-1, top + 1))


def reduced_betti_q(K: SimplicialComplex) -> tuple[int, ...]:
    return K.reduced_betti()


# -- combinatorics ----------------------------------------------------------


@dataclass(frozen=True)
class FaceCensus:
    f_vector: tuple[int, ...]
    missing_faces: dict[int, list[int]]
    flag: bool

    def sizes(self) -> list[int]:
        return sorted(k for k, v in self.missing_faces.items() if v)

    @property
    def has_missing_triangle(self) -> bool:
        return bool(self.missing_faces.get(3))

    @property
    def has_missing_tetrahedron(self) -> bool:
        return bool(self.missing_faces.get(4))


def missing_faces(K: SimplicialComplex, max_size: int | None = None) -> dict[int, list[int]]:
    """Minimal non-faces grouped by cardinality, up to ``max_size`` (default dim+2)."""
    if max_size is None:
        max_size = K.dim + 2
    faces = K.face_set
    out: dict[int, list[int]] = {}
    for s in range(1, max_size + 1):
        found = []
        for sigma in K.faces_by_dim.get(s - 2, []):
            start = sigma.bit_length()
            for v in range(start, K.m):
                cand = sigma | (1 << v)
                if cand in faces:
                    continue
                if all(cand & ~(1 << u) in faces for u in support(cand)):
                    found.append(cand)
        if found:
            out[s] = sorted(found, key=_lex_key)
    return out


def missing_face_census(K: SimplicialComplex) -> FaceCensus:
    mf = missing_faces(K)
    flag = all(size == 2 for size in mf)
    return FaceCensus(tuple(K.f_vector()), mf, flag)


def h_from_f(f: Sequence[int]) -> list[int]:
    """h-vector from ``(f_-1, ..., f_{n-1})`` by the binomial transform."""
    n = len(f) - 1
    return [
        sum((-1) ** (k - i) * comb(n - i, k - i) * f[i] for i in range(k + 1))
        for k in range(n + 1)
    ]


def f_and_h_vector(K: SimplicialComplex) -> tuple[list[int], list[int]]:
    if not K.is_pure():
        raise ComplexError("h-vector needs a pure complex")
    f = K.f_vector()
    return f, h_from_f(f)


def _cycle_order(K: SimplicialComplex) -> list[int] | None:
    """Vertices of ``K`` in cyclic order if ``K`` is exactly a cycle graph on all its vertices."""
    if K.m < 3 or K.dim != 1 or not K.is_pure():
        return None
    nb = K.neighbors
    if any(x.bit_count() != 2 for x in nb):
        return None
    order = [0]
    prev, cur = -1, 0
    while True:
        nxt = [v for v in support(nb[cur]) if v != prev]
        step = nxt[0]
        if step == 0:
            break
        order.append(step)
        prev, cur = cur, step
        if len(order) > K.m:
            return None
    return order if len(order) == K.m else None


def is_induced_cycle(K: SimplicialComplex) -> int | None:
    order = _cycle_order(K)
    return len(order) if order is not None else None


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    facets = [f1 | (f2 << K1.m) for f1 in K1.facets for f2 in K2.facets]
    return SimplicialComplex(K1.m + K2.m, tuple(facets))


def connected_sum(
    K1: SimplicialComplex, K2: SimplicialComplex, sigma: Iterable[int], glue_map: dict[int, int]
) -> SimplicialComplex:
    """Remove ``sigma`` from both and glue along its boundary.

    ``sigma`` is given in K1's labels; ``glue_map`` sends each vertex of the
    matching facet of K2 to its partner in ``sigma``.  The other vertices of
    K2 are appended after K1's in their original order.
    """
    s1 = from_support(sigma)
    s2 = from_support(glue_map)
    if {glue_map[v] for v in glue_map} != set(support(s1)):
        raise ComplexError("glue map does not land on sigma")
    if s1 not in K1.facets or s2 not in K2.facets:
        raise ComplexError("sigma is not a common facet")
    if K1.dim != K2.dim:
        raise ComplexError("dimension mismatch")
    relabel = dict(glue_map)
    nxt = K1.m
    for v in range(K2.m):
        if v not in relabel:
            relabel[v] = nxt
            nxt += 1
    facets = [f for f in K1.facets if f != s1]
    facets += [from_support(relabel[v] for v in support(f)) for f in K2.facets if f != s2]
    return SimplicialComplex(nxt, tuple(facets))


def polygon(q: int) -> SimplicialComplex:
    """Boundary of the dual of a q-gon: the cycle 0-1-...-(q-1)-0."""
    return SimplicialComplex.from_facets([(i, (i + 1) % q) for i in range(q)], q)


def boundary_simplex(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex on n+1 vertices."""
    full = ones(n + 1)
    return SimplicialComplex(n + 1, tuple(full & ~(1 << v) for v in range(n + 1)))


def sphere0() -> SimplicialComplex:
    return SimplicialComplex(2, (1, 2))


@dataclass(frozen=True)
class PolygonProduct:
    """A join decomposition ``K = C_1 * C_2`` into two induced cycles, ``m1 <= m2``."""

    cycles: tuple[tuple[int, ...], tuple[int, ...]]

    @property
    def sizes(self) -> tuple[int, int]:
        return len(self.cycles[0]), len(self.cycles[1])

    @property
    def factor_masks(self) -> tuple[int, int]:
        return from_support(self.cycles[0]), from_support(self.cycles[1])


def _components(adj: Sequence[int], verts: int) -> list[int]:
    comps = []
    left = verts
    while left:
        comp = 0
        frontier = left & -left
        while frontier:
            comp |= frontier
            nxt = 0
            for v in support(frontier):
                nxt |= adj[v]
            frontier = nxt & verts & ~comp
        comps.append(comp)
        left &= ~comp
    return comps


MAX_SPLIT_COMPONENTS = 16


def recognize_polygon_product_dual(K: SimplicialComplex) -> PolygonProduct | None:
    """Find ``A ⊔ B`` with ``K = K_A * K_B`` and both induced cycles of length >= 3."""
    if K.dim != 3 or not K.is_pure():
        return None
    allv = ones(K.m)
    if K.vertices_used() != allv:
        return None
    nb = K.neighbors
    non_adj = [allv & ~nb[v] & ~(1 << v) for v in range(K.m)]
    comps = _components(non_adj, allv)
    if len(comps) > MAX_SPLIT_COMPONENTS:
        return None
    best = None
    # comps[0] always sits in A, which halves the search
    rest = comps[1:]
    for pick in range(1 << len(rest)):
        a = comps[0]
        for i, c in enumerate(rest):
            if (pick >> i) & 1:
                a |= c
        b = allv & ~a
        if a.bit_count() < 3 or b.bit_count() < 3:
            continue
        ka, kb = K.full_subcomplex(a), K.full_subcomplex(b)
        oa, ob = _cycle_order(ka), _cycle_order(kb)
        if oa is None or ob is None:
            continue
        if len(K.facets) != len(oa) * len(ob):
            continue
        if any((f & a).bit_count() != 2 or f & a not in K.face_set for f in K.facets):
            continue
        ca = tuple(ka.labels[i] for i in oa)
        cb = tuple(kb.labels[i] for i in ob)
        cand = PolygonProduct((ca, cb) if len(ca) <= len(cb) else (cb, ca))
        if best is None:
            best = cand
    return best


# -- validation ---------------------------------------------------------------


@dataclass
class ValidationReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c[1] for c in self.checks)

    def failed(self) -> list[str]:
        return [name for name, good, _ in self.checks if not good]

    def add(self, name: str, good: bool, detail: str = "") -> None:
        self.checks.append((name, good, detail))


def _sphere_betti(d: int) -> tuple[int, ...]:
    return tuple(1 if k == d else 0 for k in range(-1, d + 1))


def validate_sphere_like(K: SimplicialComplex, dim: int = 3) -> ValidationReport:
    """Check that ``K`` is a closed ``dim``-manifold complex with sphere homology.

    This certifies a homology-sphere manifold, not PL sphericity.
    """
    rep = ValidationReport()
    rep.add("dimension", K.dim == dim, f"dim={K.dim}")
    if K.dim != dim:
        return rep
    rep.add("pure", K.is_pure())
    ridge_count: dict[int, int] = {}
    for f in K.facets:
        for v in support(f):
            r = f & ~(1 << v)
            ridge_count[r] = ridge_count.get(r, 0) + 1
    bad = [support(r) for r, c in ridge_count.items() if c != 2]
    rep.add("ridges-in-two-facets", not bad, f"bad ridges: {bad[:5]}" if bad else "")
    used = K.vertices_used()
    rep.add("all-vertices-used", used == ones(K.m))
    rep.add("connected", K.induced_components(used) == 1)
    bad_links = []
    for v in support(used):
        lk = K.link(v)
        lk = lk.full_subcomplex(lk.vertices_used())
        if lk.reduced_betti() != _sphere_betti(dim - 1):
            bad_links.append(v)
    rep.add("vertex-links-spheres", not bad_links, f"bad links at {bad_links}" if bad_links else "")
    rep.add("sphere-homology", K.reduced_betti() == _sphere_betti(dim), str(K.reduced_betti()))
    return rep


def validate_closed_3sphere_like(K: SimplicialComplex) -> ValidationReport:
    return validate_sphere_like(K, 3)
