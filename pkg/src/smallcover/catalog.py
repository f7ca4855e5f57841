"""Built-in complexes and matrices, plus the text formats for both."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .charmap import CharacteristicMap, block_product, is_characteristic, polygon_product
from .gf2 import Gf2Matrix, from_support, support
from .simplicial import (
    SimplicialComplex,
    boundary_simplex,
    join,
    sphere0,
    validate_sphere_like,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class UnknownEntry(KeyError):
    pass


# -- formats ------------------------------------------------------------------


def parse_complex(source: str | Path) -> SimplicialComplex:
    """Read a facet list (text or JSON) from a path or a literal string."""
    text = _read(source)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
            return SimplicialComplex.from_facets(data["facets"], data.get("m"))
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad JSON complex: {exc}") from exc
    m = None
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head = re.fullmatch(r"m\s*=\s*(\d+)", line)
        if head:
            m = int(head.group(1))
            continue
        try:
            facets.append([int(tok) for tok in line.replace(",", " ").split()])
        except ValueError:
            raise ParseError(f"not a facet: {raw!r}", lineno) from None
        if any(v < 0 for v in facets[-1]):
            raise ParseError("negative vertex index", lineno)
    if not facets:
        raise ParseError("no facets")
    if m is not None and max(max(f) for f in facets if f) >= m:
        raise ParseError(f"vertex index exceeds m={m}")
    return SimplicialComplex.from_facets(facets, m)


def serialize_complex(K: SimplicialComplex) -> str:
    lines = [f"m={K.m}"]
    lines += [" ".join(str(v) for v in f) for f in K.facet_lists()]
    return "\n".join(lines) + "\n"


def complex_to_json(K: SimplicialComplex) -> str:
    return json.dumps({"m": K.m, "facets": K.facet_lists()})


def parse_matrix(source: str | Path, n: int | None = None) -> Gf2Matrix:
    """Read column codes (``1,2,4,...``) or rows of bits from a path or a literal string."""
    text = _read(source)
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ParseError("empty matrix")
    if len(lines) == 1 and "," in lines[0]:
        try:
            codes = [int(tok) for tok in lines[0].split(",") if tok.strip()]
        except ValueError:
            raise ParseError(f"bad column code list {lines[0]!r}", 1) from None
        if n is None:
            n = max(codes).bit_length()
        try:
            return Gf2Matrix.from_columns(codes, n)
        except ValueError as exc:
            raise ParseError(str(exc), 1) from exc
    rows = []
    for lineno, line in enumerate(lines, 1):
        toks = line.split()
        if not all(t in ("0", "1") for t in toks):
            raise ParseError(f"expected 0/1 entries: {line!r}", lineno)
        rows.append([int(t) for t in toks])
    if n is not None and len(rows) != n:
        raise ParseError(f"expected {n} rows, got {len(rows)}")
    try:
        return Gf2Matrix.from_bits(rows)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def serialize_matrix(M: Gf2Matrix) -> str:
    if M.nrows <= 4:
        return ",".join(str(c) for c in M.column_codes()) + "\n"
    return "\n".join(" ".join(str(b) for b in row) for row in M.to_bits()) + "\n"


def _read(source: str | Path) -> str:
    if isinstance(source, Path):
        return source.read_text()
    if "\n" not in source and len(source) < 4096:
        p = Path(source)
        try:
            if p.is_file():
                return p.read_text()
        except OSError:
            pass
    return source


# -- data ---------------------------------------------------------------------

L_FACETS = [
    (0, 6, 8), (0, 6, 9), (0, 7, 8), (0, 7, 9), (1, 2, 5), (1, 2, 6), (1, 3, 5), (1, 3, 7),
    (1, 6, 8), (1, 7, 8), (2, 4, 5), (2, 4, 6), (3, 4, 5), (3, 4, 7), (4, 6, 9), (4, 7, 9),
]

LUTZ_247882 = (
    "0123 0124 0135 0146 0156 0237 0247 0357 0467 0567 1238 1248 1358 "
    "1468 1568 2379 2389 2479 2489 3579 3589 4679 4689 5679 5689"
)

LUTZ_247880 = (
    "0123 0124 0135 0146 0156 0237 0247 0357 0468 0478 0568 0578 "
    "1239 1249 1359 1469 1569 2379 2479 3579 4689 4789 5689 5789"
)

EXAMPLE_P5P4 = [1, 2, 1, 2, 7, 4, 8, 4, 8]
MU_CODES = [1, 1, 4, 4, 1, 2, 2, 2, 4, 4]
EPSILON_BITS = "0100001000"
LAMBDA_LUTZ = [1, 2, 4, 8, 14, 14, 4, 2, 8, 1]


def _digits(text: str) -> SimplicialComplex:
    return SimplicialComplex.from_facets([[int(ch) for ch in word] for word in text.split()], 10)


def bits_to_vector(bits: str) -> int:
    return from_support(i for i, ch in enumerate(bits) if ch == "1")


def vector_to_bits(v: int, m: int) -> str:
    return "".join("1" if (v >> i) & 1 else "0" for i in range(m))


@dataclass
class CatalogEntry:
    id: str
    complex: SimplicialComplex
    provenance: str
    matrices: dict[str, Gf2Matrix] = field(default_factory=dict)
    dim: int = 3


def _l_fig() -> SimplicialComplex:
    return SimplicialComplex.from_facets(L_FACETS, 10)


def _ixq() -> CharacteristicMap:
    interval = CharacteristicMap(sphere0(), Gf2Matrix((0b11,), 2))
    mu = CharacteristicMap(_l_fig(), Gf2Matrix.from_columns(MU_CODES, 3))
    return block_product(interval, mu)


def _build(entry_id: str) -> CatalogEntry:
    if entry_id == "boundary-simplex-4":
        return CatalogEntry(entry_id, boundary_simplex(4), "boundary of the 4-simplex")
    m = re.fullmatch(r"polygon-product-(\d+)-(\d+)", entry_id)
    if m:
        m1, m2 = int(m.group(1)), int(m.group(2))
        if m1 < 3 or m2 < 3:
            raise UnknownEntry(entry_id)
        e = CatalogEntry(entry_id, polygon_product(m1, m2),
                         f"dual of P_{m1} x P_{m2}; vertices 0..{m1 - 1} then {m1}..{m1 + m2 - 1}, each in cyclic order")
        if (m1, m2) == (5, 4):
            e.matrices["example-5.5"] = Gf2Matrix.from_columns(EXAMPLE_P5P4, 4)
        return e
    if entry_id == "L-fig1":
        return CatalogEntry(entry_id, _l_fig(), "flag 2-sphere dual to the indecomposable polytope Q",
                            {"mu-sec6": Gf2Matrix.from_columns(MU_CODES, 3)}, dim=2)
    if entry_id == "IxQ-fig1":
        cm = _ixq()
        return CatalogEntry(entry_id, cm.complex, "join of S^0 with L-fig1 (dual of I x Q); interval vertices 0,1",
                            {"lambda-IxQ": cm.matrix})
    if entry_id == "lutz_m10_247880":
        return CatalogEntry(entry_id, _digits(LUTZ_247880), "flag 3-sphere, dual of I x Q'",
                            {"lambda-A.2": Gf2Matrix.from_columns(LAMBDA_LUTZ, 4)})
    if entry_id == "lutz_m10_247882":
        return CatalogEntry(entry_id, _digits(LUTZ_247882), "flag 3-sphere with 25 facets")
    raise UnknownEntry(entry_id)


FIXED_IDS = [
    "boundary-simplex-4",
    "polygon-product-<m1>-<m2>",
    "L-fig1",
    "IxQ-fig1",
    "lutz_m10_247880",
    "lutz_m10_247882",
]

MATRIX_HOMES = {
    "example-5.5": "polygon-product-5-4",
    "mu-sec6": "L-fig1",
    "lambda-A.2": "lutz_m10_247880",
    "lambda-IxQ": "IxQ-fig1",
}

VECTOR_IDS = {"epsilon-sec6": EPSILON_BITS}

_cache: dict[str, CatalogEntry] = {}


def catalog_get(entry_id: str, validate: bool = True) -> CatalogEntry:
    if entry_id in MATRIX_HOMES:
        entry_id = MATRIX_HOMES[entry_id]
    if entry_id not in _cache:
        e = _build(entry_id)
        if validate:
            rep = validate_sphere_like(e.complex, e.dim)
            if not rep.ok:
                raise RuntimeError(f"catalog entry {entry_id} failed validation: {rep.failed()}")
            for name, M in e.matrices.items():
                ok, bad = is_characteristic(e.complex, M)
                if not ok:
                    raise RuntimeError(f"{name} is not characteristic over {entry_id} (facet {bad})")
        _cache[entry_id] = e
    return _cache[entry_id]


def catalog_matrix(matrix_id: str) -> tuple[CatalogEntry, Gf2Matrix]:
    if matrix_id not in MATRIX_HOMES:
        raise UnknownEntry(matrix_id)
    e = catalog_get(MATRIX_HOMES[matrix_id])
    return e, e.matrices[matrix_id]


def catalog_vector(vector_id: str) -> int:
    if vector_id not in VECTOR_IDS:
        raise UnknownEntry(vector_id)
    return bits_to_vector(VECTOR_IDS[vector_id])


def catalog_ids() -> list[str]:
    return FIXED_IDS + sorted(MATRIX_HOMES) + sorted(VECTOR_IDS)


def load_complex(ref: str) -> SimplicialComplex:
    """A catalog id or a file path / literal facet list."""
    try:
        return catalog_get(ref).complex
    except UnknownEntry:
        return parse_complex(ref)


def load_matrix(ref: str, n: int | None = None) -> Gf2Matrix:
    if ref in MATRIX_HOMES:
        return catalog_matrix(ref)[1]
    return parse_matrix(ref, n)


def cube_dual() -> SimplicialComplex:
    """Join of four copies of S^0."""
    s = sphere0()
    return join(join(s, s), join(s, s))


def show(entry: CatalogEntry) -> str:
    out = [f"# {entry.id}: {entry.provenance}", serialize_complex(entry.complex).rstrip()]
    for name, M in entry.matrices.items():
        out.append(f"# matrix {name}: {','.join(map(str, M.column_codes()))}")
    return "\n".join(out) + "\n"
