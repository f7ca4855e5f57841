import random

import pytest

from smallcover.catalog import catalog_get, catalog_matrix
from smallcover.charmap import (
    CharacteristicError,
    CharacteristicMap,
    block_product,
    dj_canonical,
    dj_equivalent,
    is_characteristic,
    is_orientable,
    normal_form_lambda_beta,
    polygon_product,
)
from smallcover.gf2 import Gf2Matrix, in_row_space, ones
from smallcover.simplicial import polygon, sphere0


def test_examples_are_characteristic():
    e, lam = catalog_matrix("example-5.5")
    assert is_characteristic(e.complex, lam) == (True, None)
    e, mu = catalog_matrix("mu-sec6")
    assert is_characteristic(e.complex, mu)[0]


def test_zero_column_rejected():
    K = polygon(4)
    ok, bad = is_characteristic(K, Gf2Matrix.from_columns([1, 2, 1, 0], 2))
    assert not ok and bad is not None


def test_dependent_facet_reported():
    K = polygon(4)
    ok, bad = is_characteristic(K, Gf2Matrix.from_columns([1, 1, 2, 2], 2))
    assert not ok and bad == [0, 1]


def test_width_mismatch():
    with pytest.raises(CharacteristicError):
        is_characteristic(polygon(4), Gf2Matrix.from_columns([1, 2, 1], 2))


def test_canonical_form():
    A = Gf2Matrix.from_columns([1, 2, 4, 8, 3, 5, 15], 4)
    assert dj_canonical(A) == A
    rows = list(A.rows)
    random.Random(0).shuffle(rows)
    B = Gf2Matrix(tuple(rows), 7)
    assert dj_canonical(B) == A and dj_equivalent(A, B)
    with pytest.raises(CharacteristicError):
        dj_canonical(Gf2Matrix.zero(2, 3))


def test_canonical_idempotent_and_characteristic_invariant():
    e, lam = catalog_matrix("lambda-A.2")
    c = dj_canonical(lam)
    assert dj_canonical(c) == c
    assert is_characteristic(e.complex, c)[0]


def test_normal_form_golden():
    # hand elimination of rows (1111|0..), (1010|0..), (0|1..), (1000|101010)
    cm = normal_form_lambda_beta(4, 6, 0b0001)
    assert dj_canonical(cm.matrix).column_codes() == [1, 2, 4, 2, 8, 13, 8, 13, 8, 13]


def test_normal_forms_valid_and_orientable():
    for m1, m2 in ((4, 4), (4, 6), (6, 4), (6, 8)):
        for beta in range(1 << m1):
            cm = normal_form_lambda_beta(m1, m2, beta)
            assert cm.orientable() and in_row_space(cm.matrix, ones(m1 + m2))


def test_normal_form_beta_classes():
    a = normal_form_lambda_beta(4, 4, 0).matrix
    b = normal_form_lambda_beta(4, 4, 0b1111).matrix
    assert dj_equivalent(a, b)
    with pytest.raises(CharacteristicError):
        normal_form_lambda_beta(5, 4, 0)


def test_orientability_examples():
    assert is_orientable(catalog_matrix("example-5.5")[1])
    assert is_orientable(catalog_matrix("mu-sec6")[1])
    assert is_orientable(catalog_matrix("lambda-A.2")[1])
    assert not is_orientable(Gf2Matrix.from_columns([1, 2, 1, 2, 3], 2))


def test_block_product():
    e, mu = catalog_matrix("mu-sec6")
    interval = CharacteristicMap(sphere0(), Gf2Matrix((0b11,), 2))
    prod = block_product(interval, CharacteristicMap(e.complex, mu))
    assert prod.matrix == catalog_matrix("lambda-IxQ")[1]
    assert prod.complex == catalog_get("IxQ-fig1").complex
    sq = CharacteristicMap(polygon(4), Gf2Matrix.from_columns([1, 2, 1, 2], 2))
    odd = CharacteristicMap(polygon(5), Gf2Matrix.from_columns([1, 2, 1, 2, 3], 2))
    assert block_product(sq, sq).orientable()
    assert not block_product(sq, odd).orientable()


def test_polygon_product_labels():
    K = polygon_product(5, 4)
    assert K.has_face([0, 1, 5, 6]) and not K.has_face([0, 2])
