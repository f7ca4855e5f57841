"""One test per acceptance criterion; the summary table is printed by conftest."""

import random
import time

import pytest

from smallcover.catalog import catalog_get, catalog_matrix, catalog_vector, cube_dual
from smallcover.charmap import is_characteristic, is_orientable, normal_form_lambda_beta, polygon_product
from smallcover.cohomology import euler_characteristic, hochster_profile, rz_b1, rz_betti, rz_identity, squaring_rank
from smallcover.enumeration import SearchConfig, brute_force_class_count, enumerate_char_maps
from smallcover.fibering import (
    check_affine,
    cocycle_image_divisor,
    fibering_verdict,
    links_table,
    product_symplectic_certificate,
)
from smallcover.gf2 import Gf2Matrix, dot, in_row_space, kernel_basis, ones, rref, span, support
from smallcover.obstructions import (
    beta_class_is_trivial,
    c_symplectic,
    count_formula_symplectic,
    diffeo_class_count,
    euler_mod4,
    factor_compatible,
    flagness_class,
    symplectic_verdict,
    torus_weight_check,
)
from smallcover.report import Verdict
from smallcover.simplicial import (
    boundary_simplex,
    connected_sum,
    f_and_h_vector,
    join,
    missing_face_census,
    polygon,
)
from smallcover.verify import LINKS_REFERENCE

SPHERES = ["boundary-simplex-4", "polygon-product-5-4", "polygon-product-4-6", "IxQ-fig1",
           "lutz_m10_247880", "lutz_m10_247882"]


def _f(cfg_filters, **kw):
    return SearchConfig(filters=frozenset(cfg_filters), **kw)


def test_criterion_01_genus_formula():
    got = [rz_betti(polygon(m))[1] for m in range(3, 9)]
    assert got == [0, 2, 10, 34, 98, 258]
    assert got == [2 * (1 + (m - 4) * 2 ** (m - 3)) for m in range(3, 9)]


def test_criterion_02_orientability():
    for m in range(3, 13):
        assert in_row_space(rz_identity(m), ones(m))
    assert is_orientable(catalog_matrix("example-5.5")[1])
    assert is_orientable(catalog_matrix("mu-sec6")[1])


def test_criterion_03_euler_obstruction():
    k882 = catalog_get("lutz_m10_247882").complex
    p46 = polygon_product(4, 6)
    assert len(k882.facets) == 25 and euler_mod4(k882) is False
    assert len(p46.facets) == 24 and euler_mod4(p46) is True
    for cid in SPHERES:
        K = catalog_get(cid).complex
        f, h = f_and_h_vector(K)
        alternating = sum((-1) ** i * x for i, x in enumerate(h))
        assert euler_characteristic(K) == alternating == f[2] - 5 * f[1] + 16


def test_criterion_04_flagness_census():
    assert missing_face_census(boundary_simplex(4)).sizes() == [5]
    assert missing_face_census(cube_dual()).flag
    assert flagness_class(catalog_get("lutz_m10_247880").complex).kind == "Flag"
    p36 = polygon_product(3, 6)
    assert missing_face_census(p36).has_missing_triangle
    assert str(flagness_class(p36)) == "PolygonTriangleJoin(6)"


def test_criterion_05_triangle_factor_exclusion():
    t = time.perf_counter()
    res = enumerate_char_maps(polygon_product(3, 4), _f({"csymplectic"}))
    assert res.count == 0
    assert time.perf_counter() - t < 60


def test_criterion_06_counting(note):
    for m1, m2 in ((4, 4), (4, 6), (6, 6)):
        res = enumerate_char_maps(polygon_product(m1, m2), _f({"symplectic"}, count_only=True))
        assert res.count == count_formula_symplectic(m1, m2) == {4: 7, 6: 19}.get(m1 + m2 - 4, 31)
    cube_fc = enumerate_char_maps(polygon_product(4, 4), _f({"factor-compatible"})).count
    note(f"cube: {7} classes with both factor weights in the row space, {cube_fc} under the opposite-pair rule")


def test_criterion_07_pentagon_square_example():
    e, lam = catalog_matrix("example-5.5")
    ok, w = c_symplectic(e.complex, lam)
    assert ok and support(w) == [0, 2, 5, 7]
    assert factor_compatible(5, 4, lam)[0] is False
    assert symplectic_verdict(e.complex, lam).verdict is Verdict.NOT_SYMPLECTIC


def test_criterion_08_squaring_rank():
    for m1, m2 in ((4, 4), (4, 6), (6, 4), (6, 8)):
        for beta in range(1 << m1):
            cm = normal_form_lambda_beta(m1, m2, beta)
            sl = squaring_rank(cm.complex, cm.matrix)
            assert sl.dim_h1 == sl.h_vector[1] and sl.dim_h2 == sl.h_vector[2]
            assert sl.square_rank == (0 if beta_class_is_trivial(m1, beta) else m2 - 2), (m1, m2, beta)


def test_criterion_09_diffeo_counts():
    for a, b in ((4, 4), (6, 6), (8, 8), (4, 6), (6, 4), (6, 8)):
        assert diffeo_class_count(a, b) == (2 if a == b else 3)


def test_criterion_10_fibering_certificate():
    L = catalog_get("L-fig1").complex
    mu = catalog_matrix("mu-sec6")[1]
    eps = catalog_vector("epsilon-sec6")
    assert is_characteristic(L, mu)[0]
    assert check_affine(L, mu, eps)[0]
    rows = [(r.g, ",".join(map(str, r.ascending)), ",".join(map(str, r.descending))) for r in links_table(L, mu, eps)]
    assert rows == LINKS_REFERENCE
    assert cocycle_image_divisor(L, mu, eps) == 2
    assert fibering_verdict(L, mu, eps).verdict == "Fibers"
    rep = product_symplectic_certificate(L, mu, eps)
    assert rep.verdict is Verdict.SYMPLECTIC
    assert rep.test("polygon-product").evidence["decomposition"] == "none"


def test_criterion_11_census(note):
    K = catalog_get("lutz_m10_247880").complex
    t = time.perf_counter()
    seq = enumerate_char_maps(K, _f({"csymplectic"}))
    elapsed = time.perf_counter() - t
    assert seq.count == 100
    assert elapsed < 300
    par = enumerate_char_maps(K, _f({"csymplectic"}, jobs=8))
    assert par.matrices == seq.matrices
    note(f"census: 100 classes in {elapsed:.1f}s single-threaded, identical with 8 jobs")


def test_criterion_12_torus_weights(note):
    e, lam = catalog_matrix("lambda-A.2")
    K = e.complex
    assert is_characteristic(K, lam)[0] and is_orientable(lam)
    assert hochster_profile(K, lam).betti()[2] == 2
    assert rz_b1(K) == 32
    tw = torus_weight_check(K, lam)
    assert tw.prop_a1_applies is False  # one weight is not an induced 4-cycle
    assert tw.carried_by_4cycles
    assert symplectic_verdict(K, lam).verdict is Verdict.NOT_SYMPLECTIC

    res = enumerate_char_maps(K, _f({"csymplectic"}))
    strict = carried = 0
    for M in res.as_matrices(4):
        r = torus_weight_check(K, M)
        strict += r.prop_a1_applies
        carried += r.applies
    note(f"torus weights over the census: strict check {strict}/{res.count}, carried check {carried}/{res.count}")
    assert carried == res.count == 100


def test_criterion_13_property_suites():
    rng = random.Random(13)
    for _ in range(10_000):
        m, n = rng.randint(1, 12), rng.randint(1, 6)
        M = Gf2Matrix(tuple(rng.getrandbits(m) for _ in range(n)), m)
        R = rref(M)[0]
        assert rref(R)[0] == R
        u = rng.getrandbits(m)
        assert in_row_space(M, u) != any(dot(u, g) for g in span(kernel_basis(M)))
    for m in range(1, 13):
        M = Gf2Matrix(tuple(rng.getrandbits(m) for _ in range(min(m, 4))), m)
        ker = list(span(kernel_basis(M)))
        for u in range(1 << m):
            assert in_row_space(M, u) != any(dot(u, g) for g in ker)

    mats = {"polygon-product-5-4": "example-5.5", "lutz_m10_247880": "lambda-A.2", "IxQ-fig1": "lambda-IxQ"}
    for cid in SPHERES:
        K = catalog_get(cid).complex
        full = ones(K.m)
        for w in range(1, full):
            a, b = K.induced_betti(w), K.induced_betti(full ^ w)
            assert a[1] == b[3] and a[2] == b[2]
        lam = catalog_matrix(mats[cid])[1] if cid in mats else rz_identity(K.m)
        betti = hochster_profile(K, lam).betti()
        assert betti == betti[::-1]

    for K in (boundary_simplex(4), join(polygon(3), polygon(3))):
        assert brute_force_class_count(K, method="dedup") == enumerate_char_maps(K).count
    assert brute_force_class_count(polygon_product(3, 4), method="orbit") == enumerate_char_maps(polygon_product(3, 4)).count

    d4 = boundary_simplex(4)
    cs = connected_sum(d4, d4, [0, 1, 2, 3], {i: i for i in range(4)})
    assert rz_b1(cs) == 4 * rz_b1(d4) + 1

    L = catalog_get("L-fig1").complex
    mu = catalog_matrix("mu-sec6")[1]
    eps = catalog_vector("epsilon-sec6")
    assert {cocycle_image_divisor(L, mu, eps, root=r, search=s) for r in range(8) for s in ("bfs", "dfs")} == {2}
