"""The symbolic exterior-algebra model and its cone bookkeeping."""

import random
from itertools import combinations
from math import comb

import numpy as np
import pytest

from smallhom.linalg import FieldSpec, FpMatrix
from smallhom.lefschetz import (
    LEFSCHETZ_TERMS,
    LefschetzModel,
    cone_dimensions,
    cone_oracle,
    family_lengths,
    multiplication_matrix,
    multiply_generator,
    multiply_monomial,
    total_with_tail,
    verify_lefschetz_profile,
    w_matrix,
)

F3 = FieldSpec(3)


def test_grade_dimensions():
    model = LefschetzModel(8, F3)
    assert [model.grade_dim(t) for t in range(9)] == [comb(8, t) for t in range(9)]
    assert sum(model.grade_dim(t) for t in range(9)) == 2 ** 8 == model.total_dim()


def test_generator_multiplication_signs():
    assert multiply_generator((2,), 1) == (1, (1, 2))
    assert multiply_generator((1,), 2) == (-1, (1, 2))
    assert multiply_generator((1, 2), 1) is None
    assert multiply_monomial((3,), (1, 2)) == (1, (1, 2, 3))
    # t1 t2 . e_3 : apply t2 (one swap), then t1 (no swap)... sign (-1)^2
    sign, out = multiply_monomial((2,), (1, 3))
    assert out == (1, 2, 3) and sign == -1


def test_w_matrix_ranks_f3():
    model = LefschetzModel(8, F3)
    assert w_matrix(model, 0).rank() == 1
    assert w_matrix(model, 3).rank() == 56 == comb(8, 3) == comb(8, 5)
    assert w_matrix(model, 3).shape == (comb(8, 5), comb(8, 3))


def test_profile_pass_f3_f5():
    for p in (3, 5):
        prof = verify_lefschetz_profile(LefschetzModel(8, FieldSpec(p)))
        assert prof.ok and not prof.failures
        assert prof.ranks == {0: 1, 1: 8, 2: 28, 3: 56, 4: 28, 5: 8, 6: 1}


def test_profile_fails_char2_with_element_in_kernel():
    model = LefschetzModel(8, FieldSpec(2))
    prof = verify_lefschetz_profile(model)
    assert not prof.ok
    assert prof.failures[0][0] == 2
    basis2 = model.grade_basis(2)
    wvec = np.zeros((len(basis2), 1), dtype=np.int64)
    for _, pair in LEFSCHETZ_TERMS:
        wvec[basis2.index(pair), 0] = 1
    assert (w_matrix(model, 2) @ FpMatrix(2, wvec)).is_zero()


def test_w_needs_rank_8():
    with pytest.raises(ValueError):
        w_matrix(LefschetzModel(4, F3), 0)


def test_cone_dimensions_table_and_total():
    table = cone_dimensions(LefschetzModel(8, F3))
    assert table.total == 252 == 2 ** 8 - 4
    assert table.entries == {
        (0, 0): 1, (1, 0): 8, (2, 0): 27, (3, 0): 48, (4, 0): 42,
        (6, 1): 42, (7, 1): 48, (8, 1): 27, (9, 1): 8, (10, 1): 1,
    }
    # degrees 5m and 6m vanish
    assert (5, 0) not in table.entries and (6, 0) not in table.entries
    assert table.bound() == 256


def test_cone_dimensions_at_weight():
    table = cone_dimensions(LefschetzModel(8, F3))
    deg = table.at_m(3)
    assert deg[0] == 1 and deg[3] == 8 and deg[12] == 42 and deg[19] == 42 and deg[31] == 1
    assert sum(deg.values()) == 252
    deg1 = table.at_m(1)
    assert sum(deg1.values()) == 252 and deg1[7] == 42  # 6m+1 at m=1


def test_cone_dimensions_requires_rank8():
    with pytest.raises(ValueError):
        cone_dimensions(LefschetzModel(9, F3))


def test_total_with_tail_values():
    assert total_with_tail(8) == 252 < 256
    assert total_with_tail(10) == 1008 == 2 ** 10 - 2 ** 4
    assert total_with_tail(16) == 64512 == 2 ** 16 - 2 ** 10
    with pytest.raises(ValueError):
        total_with_tail(7)


def test_cone_oracle_zero_element():
    model = LefschetzModel(2, F3)
    table = cone_oracle(model, (), grade=2)
    assert table.total == 2 * 2 ** 2
    assert table.entries == {(0, 0): 1, (1, 0): 2, (2, 0): 1,
                             (2, 1): 1, (3, 1): 2, (4, 1): 1}


def test_cone_oracle_quadratic_rank2():
    model = LefschetzModel(2, F3)
    table = cone_oracle(model, ((1, (1, 2)),))
    assert table.total == 6 == 2 * 2 ** 2 - 2 * 1
    assert table.entries == {(0, 0): 1, (1, 0): 2, (3, 1): 2, (4, 1): 1}
    assert table.at_m(1) == {0: 1, 1: 2, 4: 2, 5: 1}


def test_cone_oracle_rejects_odd_grade():
    model = LefschetzModel(1, F3)
    with pytest.raises(ValueError):
        cone_oracle(model, ((1, (1,)),))


def test_cone_conservation_random_elements():
    rng = random.Random(5)
    for _ in range(30):
        d = rng.randint(2, 6)
        model = LefschetzModel(d, FieldSpec(rng.choice((3, 5))))
        grade = rng.choice([g for g in (2, 4) if g <= d])
        monos = list(combinations(range(1, d + 1), grade))
        element = tuple((rng.randint(1, model.field.p - 1), mono)
                        for mono in monos if rng.random() < 0.6)
        if not element:
            element = ((1, monos[0]),)
        table = cone_oracle(model, element)
        ranks = sum(multiplication_matrix(model, element, t).rank() for t in range(d + 1))
        assert table.total == 2 * 2 ** d - 2 * ranks


def test_ratio_constancy():
    for d in range(8, 21):
        assert 64 * total_with_tail(d) == 63 * 2 ** d


def test_family_lengths_formula():
    assert family_lengths(8, 2, range(1, 6)) == [12, 32, 52, 72, 92]
    assert family_lengths(8, 4, [1, 2]) == [32, 72]
    assert family_lengths(10, 2, [1]) == [14]
    with pytest.raises(ValueError):
        family_lengths(8, 3, [1])


def test_anticommutation_in_subset_basis():
    # t_i t_j = -t_j t_i as matrices, any grade
    model = LefschetzModel(4, F3)
    for t in range(0, 3):
        ij = multiplication_matrix(model, ((1, (1, 3)),), t)
        ji = multiplication_matrix(model, ((1, (3, 1)),), t)
        assert ij == ji.scale(-1)
