"""Split-local algebras, modules, covers, resolutions, tensor structures."""

import numpy as np
import pytest

from smallhom.linalg import FieldSpec, FpMatrix
from smallhom.algebra import (
    Budget,
    BudgetExceeded,
    DiagonalTensor,
    Module,
    ModuleMorphism,
    OverBaseTensor,
    complexity_estimate,
    composition_length,
    dimension,
    direct_sum_modules,
    enveloping,
    free_module,
    hom_space_basis,
    is_projective,
    minimal_resolution,
    one_sided_projective,
    projective_cover,
    qci_algebra,
    radical_subspace,
    regular_bimodule,
    regular_module,
    restrict_left,
    restrict_right,
    tensor_diagonal,
    tensor_over_base,
    trivial_module,
    zero_module,
)

F3 = FieldSpec(3)


@pytest.fixture(scope="module")
def truncated():
    return qci_algebra(F3, [3], coproduct="primitive")


@pytest.fixture(scope="module")
def two_vars():
    return qci_algebra(F3, [3, 3], {(0, 1): 1}, coproduct="primitive")


def test_qci_dimensions_and_basis_order(truncated, two_vars):
    assert truncated.dim == 3 and truncated.basis == ((0,), (1,), (2,))
    assert two_vars.dim == 9
    assert two_vars.basis[0] == (0, 0) and two_vars.basis[-1] == (2, 2)
    ext = qci_algebra(F3, [2, 2], {(0, 1): -1})
    assert ext.dim == 4


def test_qci_rejects_bad_parameters():
    with pytest.raises(ValueError):
        qci_algebra(F3, [1])
    with pytest.raises(ValueError):
        qci_algebra(F3, [2, 2], {(0, 1): 0})
    with pytest.raises(ValueError):
        qci_algebra(F3, [2, 2], {(0, 1): -1}, coproduct="primitive")  # needs a_i = p, q = 1
    with pytest.raises(ValueError):
        qci_algebra(F3, [3], coproduct="mystery")


def test_commutation_scalar_moves_correctly():
    A = qci_algebra(FieldSpec(5), [2, 2], {(0, 1): 2})
    # x2 * x1 = 2 * x1 x2
    coeff, mono = A.mono_mul((0, 1), (1, 0))
    assert mono == (1, 1) and coeff == 2
    coeff, mono = A.mono_mul((1, 0), (0, 1))
    assert mono == (1, 1) and coeff == 1


def test_opposite_inverts_commutators():
    A = qci_algebra(FieldSpec(5), [2, 2], {(0, 1): 2})
    assert A.opposite().commutator(0, 1) == 3  # inverse of 2 mod 5


def test_multiplication_associative_on_all_triples():
    for A in (qci_algebra(FieldSpec(5), [2, 2], {(0, 1): 2}),
              qci_algebra(FieldSpec(3), [3, 2], {(0, 1): -1})):
        for e in A.basis:
            for f in A.basis:
                for g in A.basis:
                    ef = A.mono_mul(e, f)
                    fg = A.mono_mul(f, g)
                    left = None
                    if ef is not None:
                        c, m = ef
                        r = A.mono_mul(m, g)
                        if r is not None:
                            left = ((c * r[0]) % A.p, r[1])
                    right = None
                    if fg is not None:
                        c, m = fg
                        r = A.mono_mul(e, m)
                        if r is not None:
                            right = ((c * r[0]) % A.p, r[1])
                    assert left == right


def test_trivial_and_regular(truncated):
    k = trivial_module(truncated)
    reg = regular_module(truncated)
    assert k.dim == 1 and all(x.is_zero() for x in k.action)
    assert reg.dim == 3
    x = reg.action[0]
    assert not x.is_zero() and x.power(3).is_zero()
    assert is_projective(reg) and not is_projective(k)
    assert is_projective(zero_module(truncated))


def test_module_construction_rejects_broken_relations(truncated):
    bad = [FpMatrix(3, [[0, 0], [1, 1]])]  # square is not zero... cube is
    with pytest.raises(ValueError):
        Module(truncated, [FpMatrix(3, [[1, 0], [0, 1]])])  # identity is not nilpotent
    A2 = qci_algebra(F3, [3, 3], {(0, 1): 1})
    x = FpMatrix(3, [[0, 0], [1, 0]])
    y = FpMatrix(3, [[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        Module(A2, [x, y])  # xy != yx


def test_morphism_must_intertwine(truncated):
    reg = regular_module(truncated)
    k = trivial_module(truncated)
    aug = projective_cover(k).epi
    assert aug.matrix.shape == (1, 3)
    with pytest.raises(ValueError):
        ModuleMorphism(reg, reg, FpMatrix(3, [[0, 1, 0], [0, 0, 0], [0, 0, 0]]))


def test_projective_cover_cases(truncated):
    reg = regular_module(truncated)
    cov = projective_cover(reg)
    assert cov.rank == 1 and cov.kernel.dim == 0
    k = trivial_module(truncated)
    cov2 = projective_cover(k)
    assert cov2.rank == 1 and cov2.free.dim == 3 and cov2.kernel.dim == 2
    z = zero_module(truncated)
    assert projective_cover(z).rank == 0


def test_minimal_resolution_betti(truncated, two_vars):
    assert minimal_resolution(trivial_module(truncated), 4).betti() == [1, 1, 1, 1, 1]
    assert minimal_resolution(trivial_module(two_vars), 3).betti() == [1, 2, 3, 4]
    assert minimal_resolution(regular_module(truncated), 3).betti() == [1, 0, 0, 0]


def test_resolution_exactness_and_minimality(two_vars):
    res = minimal_resolution(trivial_module(two_vars), 3)
    for i in range(1, 3):
        assert res.diff(i).rank() + res.diff(i + 1).rank() == res.projectives[i].dim
    # minimality: every differential lands inside the radical
    for i in range(1, 4):
        rad = radical_subspace(res.projectives[i - 1])
        assert rad.solve(res.diff(i).matrix) is not None
    assert res.aug.matrix.rank() == 1


def test_syzygy_periodicity_rank_one(truncated):
    res = minimal_resolution(trivial_module(truncated), 4)
    # syzygies alternate between dimensions 2 and 1: (x) and (x^2)
    dims = [res.omega(i).module.dim for i in range(1, 5)]
    assert dims == [2, 1, 2, 1]


def test_lengths_and_dimension(truncated):
    k = trivial_module(truncated)
    reg = regular_module(truncated)
    assert composition_length(k) == dimension(k) == 1
    assert composition_length(reg) == 3
    both, _ = direct_sum_modules([k, reg])
    assert composition_length(both) == 4  # additivity


def test_complexity_estimates(truncated, two_vars):
    assert complexity_estimate(regular_module(truncated), 5) == 0
    assert complexity_estimate(trivial_module(truncated), 5) == 1
    assert complexity_estimate(trivial_module(two_vars), 5) == 2
    with pytest.raises(ValueError):
        complexity_estimate(trivial_module(truncated), 2)


def test_tensor_diagonal_unit_laws(truncated):
    k = trivial_module(truncated)
    reg = regular_module(truncated)
    left_unit = tensor_diagonal(k, reg)
    assert left_unit.dim == 3
    # unit (x) M has exactly the action matrices of M under the index pairing
    assert all(a == b for a, b in zip(left_unit.action, reg.action))
    assert tensor_diagonal(reg, k).dim == 3
    t = tensor_diagonal(reg, reg)
    assert t.dim == 9 and is_projective(t)


def test_tensor_diagonal_projective_ideal(truncated):
    # projective (x) anything is projective, and regular (x) M is free of rank dim M
    k = trivial_module(truncated)
    m = projective_cover(k).kernel  # dim 2, not projective
    t = tensor_diagonal(regular_module(truncated), m)
    assert t.dim == 6 and is_projective(t)
    assert not is_projective(tensor_diagonal(k, m))


def test_tensor_diagonal_needs_coproduct():
    A = qci_algebra(F3, [3])
    with pytest.raises(ValueError):
        tensor_diagonal(trivial_module(A), trivial_module(A))


def test_tensor_diagonal_shifted_coproduct():
    A = qci_algebra(F3, [3], coproduct="shifted")
    t = tensor_diagonal(regular_module(A), regular_module(A))
    assert t.dim == 9 and is_projective(t)
    u = tensor_diagonal(trivial_module(A), regular_module(A))
    assert all(a == b for a, b in zip(u.action, regular_module(A).action))


def test_tensor_associativity_on_the_nose(two_vars):
    # both coproducts are strictly coassociative and the Kronecker pairing is
    # row-major, so the two associations have identical action matrices
    k = trivial_module(two_vars)
    m = projective_cover(k).kernel
    a = tensor_diagonal(tensor_diagonal(m, m), k)
    b = tensor_diagonal(m, tensor_diagonal(m, k))
    assert a.dim == b.dim == 64
    assert all(x == y for x, y in zip(a.action, b.action))
    A = qci_algebra(F3, [3], coproduct="shifted")
    r = regular_module(A)
    t = trivial_module(A)
    left = tensor_diagonal(tensor_diagonal(r, t), r)
    right = tensor_diagonal(r, tensor_diagonal(t, r))
    assert all(x == y for x, y in zip(left.action, right.action))


def test_enveloping_and_regular_bimodule(truncated):
    env = enveloping(truncated)
    assert env.algebra.dim == 9
    bim = regular_bimodule(env)
    assert bim.dim == 3
    assert is_projective(restrict_left(env, bim))
    assert is_projective(restrict_right(env, bim))


def test_enveloping_of_commutative_is_plain_tensor(two_vars):
    env = enveloping(two_vars)
    assert env.algebra.dim == 81
    assert all(v == 1 for v in env.algebra.q.values()) or not env.algebra.q


def test_enveloping_noncommutative_right_block():
    A = qci_algebra(FieldSpec(5), [2, 2], {(0, 1): 2})
    env = enveloping(A)
    assert env.algebra.commutator(0, 1) == 2
    assert env.algebra.commutator(2, 3) == 3  # inverted on the right block
    assert env.algebra.commutator(0, 3) == 1
    bim = regular_bimodule(env)  # validates all mixed relations
    assert bim.dim == 4


def test_tensor_over_base_unit_laws(truncated):
    env = enveloping(truncated)
    bim = regular_bimodule(env)
    assert tensor_over_base(env, bim, bim).dim == 3
    k = trivial_module(truncated)
    assert tensor_over_base(env, bim, k).dim == 1
    reg = regular_module(truncated)
    t = tensor_over_base(env, bim, reg)
    assert t.dim == 3 and is_projective(t)


def test_projective_bimodule_tensor_is_projective(truncated):
    env = enveloping(truncated)
    q0 = free_module(env.algebra, 1)  # dim 9 free bimodule
    assert one_sided_projective(env, q0)
    k = trivial_module(truncated)
    t = tensor_over_base(env, q0, k)
    assert is_projective(t) and t.dim == 3


def test_budget_guard(truncated):
    ctx = DiagonalTensor(truncated, Budget(max_dim=5))
    reg = regular_module(truncated)
    with pytest.raises(BudgetExceeded):
        ctx.pair(reg, reg)


def test_hom_space_basis_counts(truncated):
    k = trivial_module(truncated)
    reg = regular_module(truncated)
    assert len(hom_space_basis(k, k)) == 1
    # Hom(A, A) = A as a vector space for the regular module
    assert len(hom_space_basis(reg, reg)) == 3
    assert len(hom_space_basis(reg, k)) == 1


def test_free_module_slot_major_indexing(truncated):
    f = free_module(truncated, 2)
    assert f.dim == 6
    x = f.action[0]
    # slot 1 block sits at rows/cols 3..5 and matches the regular action
    assert np.array_equal(x.a[3:, 3:], regular_module(truncated).action[0].a)
    assert not x.a[:3, 3:].any()
