"""The pushout construction, parameter systems, theta maps and pipelines."""

import numpy as np
import pytest

from smallhom.linalg import FieldSpec, FpMatrix
from smallhom.algebra import (
    Budget,
    BudgetExceeded,
    DiagonalTensor,
    is_projective,
    minimal_resolution,
    qci_algebra,
    trivial_module,
)
from smallhom.chain import (
    compose_shifted,
    homology_dims,
    induced_on_homology,
    is_null_homotopic,
    mapping_cone,
    tensor_tower,
)
from smallhom.construction import (
    BimoduleRun,
    ChainRun,
    ParameterSystem,
    SymbolicRun,
    UnsupportedRank,
    build_class_complex,
    build_thetas,
    class_from_images,
    ext_classes,
    find_parameter_system,
    lefschetz_chain_map,
    pushout_module,
    quadratic_product,
    tensor_pushouts,
    verify_parameter_system,
    yoneda_power,
)

F3 = FieldSpec(3)


@pytest.fixture(scope="module")
def one_var():
    return qci_algebra(F3, [3], coproduct="primitive")


@pytest.fixture(scope="module")
def two_vars():
    return qci_algebra(F3, [3, 3], {(0, 1): 1}, coproduct="primitive")


@pytest.fixture(scope="module")
def res1(one_var):
    return minimal_resolution(trivial_module(one_var), 5)


@pytest.fixture(scope="module")
def res2(two_vars):
    return minimal_resolution(trivial_module(two_vars), 3)


def test_ext_class_counts(res1, res2):
    assert len(ext_classes(res1, 2)) == 1
    assert len(ext_classes(res2, 2)) == 3
    assert len(ext_classes(res1, 0)) == 1  # the identity class


def test_ext_class_degree_limit(res1):
    with pytest.raises(ValueError):
        ext_classes(res1, 5)  # needs d_6


def test_zero_class_rejected(res1, one_var):
    with pytest.raises(ValueError):
        class_from_images(res1, 2, FpMatrix.zeros(3, 1, 1))


def test_induced_morphism_is_epi_onto_unit(res1):
    z = ext_classes(res1, 2)[0]
    assert z.induced.matrix.rank() == 1
    assert z.induced.source.dim == res1.omega(2).module.dim


def test_yoneda_power_identity_and_growth(res1):
    z = ext_classes(res1, 2)[0]
    assert yoneda_power(z, 1) is z
    z2 = yoneda_power(z, 2)
    assert z2.degree == 4 and not z2.images.is_zero()
    with pytest.raises(ValueError):
        yoneda_power(z, 3)  # resolution of length 5 < 3*2+1


def test_yoneda_power_coherence(one_var):
    res = minimal_resolution(trivial_module(one_var), 9)
    z = ext_classes(res, 2)[0]
    a = yoneda_power(z, 4).images
    b = yoneda_power(yoneda_power(z, 2), 2).images
    stacked = FpMatrix(3, np.vstack([a.a.reshape(1, -1), b.a.reshape(1, -1)]))
    assert stacked.rank() == 1  # equal up to a nonzero scalar


def test_pushout_dimensions_rank1(res1):
    z = ext_classes(res1, 2)[0]
    K, mu, rho = pushout_module(z)
    # 1 + dim P_1 - dim Omega^2 = 1 + 3 - 1
    assert K.dim == 3
    assert K.dim == 1 + res1.omega(1).module.dim  # extension by Omega^{n-1}
    assert mu.matrix.rank() == 1
    assert is_projective(K)
    assert (rho @ mu).is_zero()


def test_pushout_dimensions_rank2(res2):
    z = ext_classes(res2, 2)[0]
    K, mu, rho = pushout_module(z)
    assert K.dim == 1 + 2 * 9 - res2.omega(2).module.dim == 9
    assert res2.omega(2).module.dim == 10
    assert K.dim == 1 + res2.omega(1).module.dim


def test_class_complex_homology_and_self_map(res1):
    z = ext_classes(res1, 2)[0]
    cc = build_class_complex(z)
    assert homology_dims(cc.complex) == {0: 1, 1: 1}
    assert not is_null_homotopic(cc.self_map)[0]
    square = compose_shifted(cc.self_map, cc.self_map)
    assert is_null_homotopic(square)[0]
    ind = induced_on_homology(cc.self_map)
    assert ind[0].rank() == 1  # isomorphism between the two unit homologies


def test_parameter_system_search_and_duplicate_failure(res2, two_vars):
    ctx = DiagonalTensor(two_vars)
    ps = find_parameter_system(res2, 2, ctx)
    assert ps.verified
    big = tensor_pushouts(ps.classes, ctx)
    assert big.dim == 81 and is_projective(big)
    cls = ext_classes(res2, 2)
    bad = ParameterSystem((cls[0], cls[0]), 2, (0, 0))
    assert not verify_parameter_system(bad, ctx)


def test_theta_maps_rank2(res2, two_vars):
    ctx = DiagonalTensor(two_vars)
    ps = find_parameter_system(res2, 2, ctx)
    ccs = [build_class_complex(z) for z in ps.classes]
    tower = tensor_tower([cc.complex for cc in ccs], ctx)
    assert homology_dims(tower.complex) == {0: 1, 1: 2, 2: 1}
    thetas = build_thetas(tower, ccs)
    # graded commutator vanishes on the nose at chain level
    anti = quadratic_product(thetas, 0, 1) + quadratic_product(thetas, 1, 0)
    assert anti.is_zero()
    sq = compose_shifted(thetas[0], thetas[0])
    assert sq.is_zero()
    # homology matrices: theta_1 theta_2 = -theta_2 theta_1, both isos H_0 -> H_2
    h = [induced_on_homology(t) for t in thetas]
    prod01 = h[0][1] @ h[1][0]
    prod10 = h[1][1] @ h[0][0]
    assert prod01 == prod10.scale(-1)
    assert prod01.rank() == 1


def test_mini_cone_matches_oracle(res2, two_vars):
    from smallhom.lefschetz import LefschetzModel, cone_oracle

    ctx = DiagonalTensor(two_vars)
    ps = find_parameter_system(res2, 2, ctx)
    ccs = [build_class_complex(z) for z in ps.classes]
    tower = tensor_tower([cc.complex for cc in ccs], ctx)
    thetas = build_thetas(tower, ccs)
    cone = mapping_cone(quadratic_product(thetas, 0, 1))
    got = homology_dims(cone)
    predicted = cone_oracle(LefschetzModel(2, F3), ((1, (1, 2)),)).at_m(1)
    assert got == predicted
    assert sum(got.values()) == 6


def test_lefschetz_chain_map_needs_eight(res1):
    z = ext_classes(res1, 2)[0]
    cc = build_class_complex(z)
    with pytest.raises(ValueError):
        lefschetz_chain_map([cc.self_map] * 7)


def test_chain_run_rank_windows(one_var, two_vars):
    with pytest.raises(UnsupportedRank):
        ChainRun(one_var, 5)
    with pytest.raises(UnsupportedRank):
        ChainRun(one_var, 9)
    with pytest.raises(UnsupportedRank):
        ChainRun(one_var, 0)
    with pytest.raises(UnsupportedRank):
        ChainRun(two_vars, 1)  # rank must match the generator count
    with pytest.raises(ValueError):
        ChainRun(one_var, 1, degree=3)


def test_chain_run_rank1_report(one_var):
    rep = ChainRun(one_var, 1).run()
    assert all(v.passed for v in rep["verdicts"])
    assert rep["betti"] == [1, 1, 1, 1]
    assert rep["family_lengths"] == [(1 + 2) * (2 * s - 1) + 2 for s in range(1, 6)]


def test_chain_run_budget(two_vars):
    with pytest.raises(BudgetExceeded):
        ChainRun(two_vars, 2, budget=Budget(max_dim=50)).run()


def test_symbolic_run_values():
    rep = SymbolicRun(F3, 8).run()
    assert all(v.passed for v in rep["verdicts"])
    assert rep["total"] == 252 and rep["bound"] == 256
    rep10 = SymbolicRun(F3, 10).run()
    assert rep10["total"] == 1008 == 2 ** 10 - 2 ** 4
    with pytest.raises(UnsupportedRank):
        SymbolicRun(F3, 7)


def test_symbolic_char2_is_a_control():
    rep = SymbolicRun(FieldSpec(2), 8).run()
    names = {v.name: v.passed for v in rep["verdicts"]}
    assert names["lefschetz_profile_control"]


def test_bimodule_run_report():
    A = qci_algebra(F3, [3])
    rep = BimoduleRun(A, degree=2).run()
    assert all(v.passed for v in rep["verdicts"])
    assert rep["bimodule_betti"] == [1, 1, 1, 1]
    assert rep["pushout_dim"] == 9
    assert rep["homology_dims"] == {0: 3, 1: 3}
    assert rep["reduced_pushout_dim"] == 3


def test_bimodule_run_rank_window():
    A = qci_algebra(F3, [3, 3, 3], {})
    with pytest.raises(UnsupportedRank):
        BimoduleRun(A)


def test_corrupted_sign_hook_breaks_thetas(two_vars):
    rep = ChainRun(two_vars, 2, drop_koszul_sign=True).run()
    names = {v.name: v.passed for v in rep["verdicts"]}
    assert names["theta_chain_maps"] is False
