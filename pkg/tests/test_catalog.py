import json

import pytest

from smallcover.catalog import (
    FIXED_IDS,
    ParseError,
    UnknownEntry,
    catalog_get,
    catalog_ids,
    catalog_matrix,
    catalog_vector,
    complex_to_json,
    load_complex,
    load_matrix,
    parse_complex,
    parse_matrix,
    serialize_complex,
    serialize_matrix,
    show,
    vector_to_bits,
)
from smallcover.gf2 import Gf2Matrix
from smallcover.simplicial import validate_sphere_like


@pytest.mark.parametrize("cid", ["boundary-simplex-4", "polygon-product-5-4", "L-fig1", "IxQ-fig1",
                                 "lutz_m10_247880", "lutz_m10_247882"])
def test_entries_validate(cid):
    e = catalog_get(cid)
    assert validate_sphere_like(e.complex, e.dim).ok


def test_complex_roundtrip():
    for cid in ("lutz_m10_247880", "L-fig1", "polygon-product-4-6"):
        K = catalog_get(cid).complex
        assert parse_complex(serialize_complex(K)) == K
        assert parse_complex(complex_to_json(K)) == K


def test_complex_from_file(tmp_path):
    K = catalog_get("lutz_m10_247882").complex
    p = tmp_path / "k.txt"
    p.write_text(serialize_complex(K))
    assert parse_complex(p) == K
    assert load_complex(str(p)) == K


def test_parse_errors_report_lines():
    with pytest.raises(ParseError) as exc:
        parse_complex("m=4\n0 1 2\n# note\n0 x 3\n")
    assert exc.value.line == 4 and "line 4" in str(exc.value)
    with pytest.raises(ParseError):
        parse_complex("m=3\n0 1 5\n")
    with pytest.raises(ParseError):
        parse_complex("{not json")
    with pytest.raises(ParseError) as exc:
        parse_matrix("1 0\n0 2\n")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_matrix("1,a,3")
    with pytest.raises(ParseError):
        parse_matrix("1 0\n0 1\n", n=3)


def test_matrix_roundtrip():
    M = catalog_matrix("example-5.5")[1]
    assert serialize_matrix(M) == "1,2,1,2,7,4,8,4,8\n"
    assert parse_matrix(serialize_matrix(M), 4) == M
    wide = Gf2Matrix.from_columns([1, 2, 4, 8, 16, 31], 5)
    assert parse_matrix(serialize_matrix(wide)) == wide


def test_unknown_ids():
    for bad in ("nope", "polygon-product-2-5"):
        with pytest.raises(UnknownEntry):
            catalog_get(bad)
    with pytest.raises(UnknownEntry):
        catalog_matrix("lambda-zz")
    with pytest.raises(UnknownEntry):
        catalog_vector("epsilon-zz")


def test_ids_and_vectors():
    ids = catalog_ids()
    assert set(FIXED_IDS) <= set(ids)
    assert {"example-5.5", "mu-sec6", "lambda-A.2", "epsilon-sec6"} <= set(ids)
    assert vector_to_bits(catalog_vector("epsilon-sec6"), 10) == "0100001000"
    assert load_matrix("mu-sec6") == catalog_matrix("mu-sec6")[1]


def test_show_and_json():
    text = show(catalog_get("lutz_m10_247880"))
    assert text.startswith("# lutz_m10_247880") and "lambda-A.2" in text
    data = json.loads(complex_to_json(catalog_get("boundary-simplex-4").complex))
    assert data["m"] == 5 and len(data["facets"]) == 5
