import pytest

from smallcover.catalog import catalog_get, cube_dual
from smallcover.charmap import dj_canonical, is_characteristic, polygon_product
from smallcover.enumeration import (
    FILTERS,
    MAX_M,
    SearchConfig,
    brute_force_class_count,
    brute_force_product,
    enumerate_char_maps,
    iter_char_maps,
    partition_search,
    run_unit,
)
from smallcover.gf2 import CapacityError, Gf2Matrix
from smallcover.obstructions import c_symplectic
from smallcover.simplicial import SimplicialComplex, boundary_simplex, join, polygon


def _cfg(*filters, **kw):
    return SearchConfig(filters=frozenset(filters), **kw)


SMALL = {
    "simplex": lambda: boundary_simplex(4),
    "P3*P3": lambda: join(polygon(3), polygon(3)),
    "P3*P4": lambda: polygon_product(3, 4),
}


def test_plain_product_oracle():
    K = boundary_simplex(4)
    assert brute_force_product(K, 4) == enumerate_char_maps(K).count == 1
    P = polygon(5)
    assert brute_force_product(P, 2) == enumerate_char_maps(P, SearchConfig(n=2)).count


@pytest.mark.parametrize("name", ["simplex", "P3*P3"])
def test_dedup_oracle(name):
    K = SMALL[name]()
    assert brute_force_class_count(K, method="dedup") == enumerate_char_maps(K).count


def test_orbit_oracle_m7():
    K = polygon_product(3, 4)
    assert brute_force_class_count(K, method="orbit") == enumerate_char_maps(K).count == 69


def test_oracle_modes_agree_m6():
    K = join(polygon(3), polygon(3))
    assert brute_force_class_count(K, method="orbit") == brute_force_class_count(K, method="dedup")


def test_polygon_rank3_oracle():
    for q in (4, 5, 6):
        K = polygon(q)
        n = 2
        assert brute_force_class_count(K, n=n) == enumerate_char_maps(K, SearchConfig(n=n)).count


def test_outputs_are_canonical_and_characteristic():
    K = polygon_product(4, 5)
    res = enumerate_char_maps(K)
    assert len(set(res.matrices)) == res.count
    for M in res.as_matrices(4):
        assert dj_canonical(M) == M
        assert is_characteristic(K, M)[0]


def test_partition_matches_sequential():
    K = polygon_product(4, 4)
    seq = enumerate_char_maps(K)
    for depth in (1, 3, 5, 8):
        units = partition_search(K, SearchConfig(), depth)
        prefixes = [u.prefix for u in units]
        assert len(set(prefixes)) == len(prefixes)
        parts = [c for u in units for c in run_unit(K, SearchConfig(), u)]
        assert sorted(parts) == seq.matrices


def test_parallel_is_deterministic():
    K = polygon_product(4, 5)
    seq = enumerate_char_maps(K, _cfg("orientable"))
    for jobs in (2, 3):
        par = enumerate_char_maps(K, _cfg("orientable", jobs=jobs))
        assert par.matrices == seq.matrices


def test_iterator_matches():
    K = polygon_product(4, 4)
    assert sorted(iter_char_maps(K)) == enumerate_char_maps(K).matrices


def test_filter_monotonicity():
    K = polygon_product(4, 6)
    counts = {f: enumerate_char_maps(K, _cfg(*f)).count for f in [(), ("orientable",), ("csymplectic",), ("symplectic",)]}
    assert counts[()] >= counts[("orientable",)] >= counts[("csymplectic",)] >= counts[("symplectic",)] == 19


def test_csymplectic_filter_is_exact():
    K = polygon_product(4, 4)
    every = enumerate_char_maps(K).as_matrices(4)
    expect = sorted(tuple(M.column_codes()) for M in every if c_symplectic(K, M)[0])
    assert enumerate_char_maps(K, _cfg("csymplectic")).matrices == expect


def test_cube_filters():
    K = polygon_product(4, 4)
    assert enumerate_char_maps(K, _cfg("symplectic")).count == 7
    fc = enumerate_char_maps(K, _cfg("factor-compatible")).count
    assert fc == enumerate_char_maps(K, _cfg("csymplectic")).count == 19


def test_cube_dual_is_the_square_product():
    assert enumerate_char_maps(cube_dual()).count == enumerate_char_maps(polygon_product(4, 4)).count


def test_factor_compatible_needs_product():
    K = catalog_get("lutz_m10_247880").complex
    assert enumerate_char_maps(K, _cfg("factor-compatible")).count == 0


def test_count_only():
    K = polygon_product(4, 4)
    res = enumerate_char_maps(K, SearchConfig(count_only=True))
    assert res.matrices == [] and res.count == enumerate_char_maps(K).count


def test_capacity_guards():
    big = SimplicialComplex.from_facets([(i, i + 1) for i in range(MAX_M)] + [(MAX_M, 0)], MAX_M + 1)
    with pytest.raises(CapacityError):
        enumerate_char_maps(big, SearchConfig(n=2))
    with pytest.raises(CapacityError):
        brute_force_class_count(polygon_product(4, 4))
    with pytest.raises(ValueError):
        SearchConfig(filters=frozenset({"nonsense"}))
    assert "symplectic" in FILTERS


def test_rank_deficient_space_gives_nothing():
    # a 3-sphere cannot carry a rank-3 characteristic matrix
    assert enumerate_char_maps(boundary_simplex(4), SearchConfig(n=3)).count == 0


def test_empty_when_not_canonical_prefix():
    from smallcover.enumeration import WorkUnit

    assert run_unit(polygon_product(4, 4), SearchConfig(), WorkUnit((2,))) == []
    assert Gf2Matrix.from_columns([1, 2, 4, 8], 4).rank() == 4
