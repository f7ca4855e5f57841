"""Orderly enumeration of characteristic matrices up to D-J equivalence.

A matrix is emitted only in its reduced row echelon form: scanning columns
left to right, a column either raises the rank ``r`` by being ``e_r`` or
lies in the span of ``e_0..e_{r-1}``.  Each D-J class has exactly one such
representative, so no deduplication is needed.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .charmap import dj_canonical, is_orientable
from .gf2 import CapacityError, Gf2Matrix, independent, support
from .obstructions import c_symplectic, factor_compatible_product, symplectic_verdict, two_stage_compatible
from .report import Verdict
from .simplicial import SimplicialComplex, recognize_polygon_product_dual

MAX_M = 14
BRUTE_FORCE_MAX_M = 7
FILTERS = ("orientable", "csymplectic", "symplectic", "factor-compatible")


@dataclass(frozen=True)
class SearchConfig:
    n: int = 4
    filters: frozenset[str] = frozenset()
    jobs: int = 1
    count_only: bool = False
    prefix_depth: int | None = None

    def __post_init__(self):
        bad = set(self.filters) - set(FILTERS)
        if bad:
            raise ValueError(f"unknown filter(s): {sorted(bad)}")


@dataclass
class EnumerationResult:
    count: int
    matrices: list[tuple[int, ...]] = field(default_factory=list)

    def as_matrices(self, n: int) -> list[Gf2Matrix]:
        return [Gf2Matrix.from_columns(c, n) for c in self.matrices]


@dataclass(frozen=True)
class WorkUnit:
    prefix: tuple[int, ...]


class _Search:
    def __init__(self, K: SimplicialComplex, config: SearchConfig):
        if K.m > MAX_M:
            raise CapacityError(f"m={K.m} exceeds the enumeration limit {MAX_M}")
        self.K, self.cfg = K, config
        self.m, self.n = K.m, config.n
        # for column j: maximal faces sigma with max(sigma) < j and sigma + {j} a face
        self.ready: list[list[int]] = []
        for j in range(self.m):
            low = (1 << j) - 1
            cands = {f & low for f in K.facets if (f >> j) & 1}
            self.ready.append([s for s in cands if not any(s != t and s & t == s for t in cands)])
        self.pp = recognize_polygon_product_dual(K) if K.dim == 3 else None

    def choices(self, codes: list[int], rank: int) -> list[int]:
        j = len(codes)
        if rank + (self.m - j) < self.n:
            return []
        forbidden = {0}
        for s in self.ready[j]:
            span = {0}
            for i in support(s):
                c = codes[i]
                span |= {x ^ c for x in span}
            forbidden |= span
        out = [c for c in range(1, 1 << rank) if c not in forbidden]
        if rank < self.n and (1 << rank) not in forbidden:
            out.append(1 << rank)
        return out

    def run(self, prefix: tuple[int, ...] = (), depth: int | None = None):
        """Yield complete code tuples below ``prefix``; stop at ``depth`` columns if given."""
        stop = self.m if depth is None else depth
        codes = list(prefix)
        rank = _rank_of_prefix(codes)
        if rank is None:
            return

        def rec(rank: int):
            if len(codes) == stop:
                if stop < self.m or rank == self.n:
                    yield tuple(codes)
                return
            for c in self.choices(codes, rank):
                codes.append(c)
                yield from rec(rank + 1 if c == 1 << rank else rank)
                codes.pop()

        yield from rec(rank)

    def keep(self, codes: tuple[int, ...]) -> bool:
        """Post-filters, cheapest first.

        Over a product of polygons ``symplectic`` means both factor weights lie
        in the row space for the recognized decomposition, which is what the
        closed-form count enumerates.  On the 4-cube this is stricter than
        ``factor-compatible``, whose opposite-pair rule also accepts the other
        two ways of splitting the cube into two squares.
        """
        f = self.cfg.filters
        if not f:
            return True
        M = Gf2Matrix.from_columns(codes, self.n)
        if not is_orientable(M):
            return False
        if "factor-compatible" in f and (self.pp is None or not factor_compatible_product(self.pp, M)[0]):
            return False
        if "symplectic" in f and self.pp is not None and not two_stage_compatible(self.pp, M):
            return False
        if ("csymplectic" in f or "symplectic" in f) and not c_symplectic(self.K, M)[0]:
            return False
        if "symplectic" in f and self.pp is None and symplectic_verdict(self.K, M).verdict is not Verdict.SYMPLECTIC:
            return False
        return True


def _rank_of_prefix(codes: list[int]) -> int | None:
    """Rank reached by a canonical prefix, or None if the prefix is not canonical."""
    r = 0
    for c in codes:
        if c == 1 << r:
            r += 1
        elif not (0 < c < (1 << r)):
            return None
    return r


def partition_search(K: SimplicialComplex, config: SearchConfig, prefix_depth: int) -> list[WorkUnit]:
    """Disjoint subtrees of the search, one per viable canonical prefix of length ``prefix_depth``."""
    if not 1 <= prefix_depth <= K.m:
        raise ValueError("prefix depth must be between 1 and m")
    s = _Search(K, config)
    return [WorkUnit(p) for p in s.run((), prefix_depth)]


def run_unit(K: SimplicialComplex, config: SearchConfig, unit: WorkUnit) -> list[tuple[int, ...]]:
    s = _Search(K, config)
    return [c for c in s.run(unit.prefix) if s.keep(c)]


def _run_unit_args(args):
    return run_unit(*args)


def _default_depth(m: int) -> int:
    return min(m, 4)


def enumerate_char_maps(K: SimplicialComplex, config: SearchConfig | None = None) -> EnumerationResult:
    config = config or SearchConfig()
    if config.jobs <= 1:
        s = _Search(K, config)
        found = [c for c in s.run() if s.keep(c)]
    else:
        depth = config.prefix_depth or _default_depth(K.m)
        units = partition_search(K, config, depth)
        found = []
        workers = min(config.jobs, os.cpu_count() or 1, max(1, len(units)))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_run_unit_args, [(K, config, u) for u in units]):
                found.extend(part)
    found.sort()
    return EnumerationResult(len(found), [] if config.count_only else found)


def iter_char_maps(K: SimplicialComplex, config: SearchConfig | None = None):
    """Stream canonical matrices (as code tuples) in search order without collecting them."""
    config = config or SearchConfig()
    s = _Search(K, config)
    for c in s.run():
        if s.keep(c):
            yield c


def _canonical_rows(cols: list[int], n: int) -> tuple[int, ...] | None:
    """RREF rows of the matrix with these column codes, or None when rank < n."""
    rows = _rows(cols, n)
    out = []
    for col in range(len(cols)):
        bit = 1 << col
        piv = next((r for r in rows if r & bit), None)
        if piv is None:
            continue
        rows.remove(piv)
        rows = [r ^ piv if r & bit else r for r in rows]
        out = [r ^ piv if r & bit else r for r in out]
        out.append(piv)
    return tuple(out) if len(out) == n else None


def gl_order(n: int) -> int:
    out = 1
    for i in range(n):
        out *= (1 << n) - (1 << i)
    return out


def brute_force_class_count(K: SimplicialComplex, n: int = 4, method: str = "dedup") -> int:
    """Independent oracle over every nonzero column assignment.

    ``dedup`` canonicalizes each characteristic matrix and counts distinct
    forms.  ``orbit`` only counts characteristic matrices and divides by
    ``|GL_n(Z_2)|``, which acts freely on full-rank matrices.  Branches stop
    once a fully assigned facet fails, which only skips rejected assignments.
    """
    if K.m > BRUTE_FORCE_MAX_M:
        raise CapacityError(f"brute force refuses m={K.m} > {BRUTE_FORCE_MAX_M}")
    if method not in ("dedup", "orbit"):
        raise ValueError(method)
    closing: dict[int, list[list[int]]] = {}
    for f in K.facets:
        idx = support(f)
        closing.setdefault(idx[-1], []).append(idx[:-1])
    full = range(1, 1 << n)
    classes = set()
    total = 0
    cols: list[int] = []

    def allowed(j: int) -> list[int]:
        bad = {0}
        for others in closing.get(j, []):
            vecs = [cols[i] for i in others]
            if not independent(vecs):
                return []
            span = {0}
            for v in vecs:
                span |= {x ^ v for x in span}
            bad |= span
        return [c for c in full if c not in bad]

    def rec(j: int):
        nonlocal total
        if j == K.m - 1 and method == "orbit":
            span = {0}
            for v in cols:
                if v not in span:
                    span |= {x ^ v for x in span}
            if len(span) == 1 << n:
                total += len(allowed(j))
            elif len(span) == 1 << (n - 1):
                total += sum(1 for c in allowed(j) if c not in span)
            return
        if j == K.m:
            key = _canonical_rows(cols, n)
            if key is not None:
                classes.add(key)
            return
        for c in allowed(j):
            cols.append(c)
            rec(j + 1)
            cols.pop()

    rec(0)
    if method == "orbit":
        q, r = divmod(total, gl_order(n))
        if r:
            raise AssertionError(f"{total} characteristic matrices is not a multiple of |GL_{n}|")
        return q
    return len(classes)


def _rows(cols: list[int], n: int) -> list[int]:
    return [sum(((c >> r) & 1) << i for i, c in enumerate(cols)) for r in range(n)]


def brute_force_product(K: SimplicialComplex, n: int) -> int:
    """Same oracle by a plain product over all columns; only practical for m <= 5."""
    if K.m > 5:
        raise CapacityError("plain product limited to m <= 5")
    classes = set()
    for cols in product(range(1, 1 << n), repeat=K.m):
        M = Gf2Matrix.from_columns(cols, n)
        if M.rank() < n:
            continue
        if all(independent([cols[i] for i in support(f)]) for f in K.facets):
            classes.add(dj_canonical(M).rows)
    return len(classes)
