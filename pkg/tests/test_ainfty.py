import pytest

from defquant import poisson as P
from defquant.ainfty import (TaylorComponents, build_constant_instance, build_linear_instance,
                             check_stasheff, check_unitality, custom_instance, flip_deformation_sign,
                             shifted_degree, stasheff_value, verified)
from defquant.algebra import ExtElement, ext_basis
from defquant.poisson import PoissonBivector
from defquant.series import HSeries


def e(*idx, dim=2, coeff=1, trunc=4):
    return ExtElement.basis_element(tuple(i - 1 for i in idx), dim, coeff, trunc)


def ce_oracle(pi: PoissonBivector, k: int) -> ExtElement:
    """h * sum_{i<j} f_ij^k e_i ^ e_j, read straight off the matrix entries."""
    d = pi.dim
    terms = {}
    for i in range(d):
        for j in range(i + 1, d):
            c = pi.entries[i][j].coeff(tuple(1 if t == k else 0 for t in range(d)))[0]
            if c:
                terms[(i, j)] = HSeries.h(1, c, pi.trunc)
    return ExtElement(d, terms, pi.trunc)


def test_constant_instance_components():
    inst = build_constant_instance(P.weyl())
    assert inst.curvature() == e(1, 2, coeff=HSeries.h(1, 1, 4))
    assert inst.d(2, e(1), e(2)) == -e(1, 2)
    assert inst.d(2, e(1), e(1)).is_zero()
    assert inst.components.arities() == [0, 2]
    assert not inst.is_flat()


def test_zero_constant_bivector_is_flat():
    inst = build_constant_instance(PoissonBivector.constant([[0, 0], [0, 0]]))
    assert inst.is_flat()


def test_constant_instance_rejects_other_classes():
    with pytest.raises(ValueError):
        build_constant_instance(P.sl2())
    with pytest.raises(ValueError):
        build_linear_instance(P.quantum_plane())


def test_linear_instance_matches_ce_oracle():
    for pi in (P.heisenberg(), P.sl2(), P.solvable2()):
        inst = build_linear_instance(pi)
        assert inst.is_flat()
        assert inst.components.arities() == [1, 2]
        for k in range(pi.dim):
            basis_k = ExtElement.basis_element((k,), pi.dim, 1, 4)
            assert inst.d(1, basis_k) == ce_oracle(pi, k)


def test_heisenberg_ce_examples():
    inst = build_linear_instance(P.heisenberg())
    assert inst.d(1, e(3, dim=3)) == e(1, 2, dim=3, coeff=HSeries.h(1, 1, 4))
    assert inst.d(1, e(1, dim=3)).is_zero() and inst.d(1, e(2, dim=3)).is_zero()


def test_abelian_instance_is_wedge_dga():
    inst = build_linear_instance(P.abelian(3))
    assert inst.components.arities() == [2]


def test_ce_squares_to_zero_iff_jacobi():
    for pi in (P.heisenberg(), P.sl2(), P.solvable2(), P.broken_jacobi()):
        inst = build_linear_instance(pi)
        square_zero = all(inst.d(1, inst.d(1, ExtElement.basis_element(I, pi.dim, 1, 4))).is_zero()
                          for I in ext_basis(pi.dim))
        assert square_zero == pi.is_poisson()


def test_degrees_are_shifted_plus_one():
    for inst in (build_constant_instance(P.weyl(4)), build_linear_instance(P.sl2())):
        inst.components.check_degrees()
        for k, table in inst.components.tables.items():
            for inputs, out in table.items():
                for J in out:
                    assert shifted_degree(J) == sum(shifted_degree(I) for I in inputs) + 1


def test_stasheff_constant_and_linear():
    for inst in (build_constant_instance(P.weyl()),
                 build_constant_instance(PoissonBivector.constant([[0, 1, -2], [-1, 0, 3], [2, -3, 0]])),
                 build_linear_instance(P.heisenberg()), build_linear_instance(P.sl2())):
        report = check_stasheff(inst, 3)
        assert report.ok, report.to_json()


def test_stasheff_arity_two_relation_of_curved_structure():
    # d^2(d^0, b) + (-1)^{|b|_sh} d^2(b, d^0) = 0 on every basis b
    inst = build_constant_instance(P.weyl(4))
    for I in ext_basis(4):
        assert stasheff_value(inst, (I,)).is_zero()


def test_non_derivation_d1_breaks_stasheff():
    # d^1 vanishes on 2-forms for sl2; forcing d^1(e12) = h*e123 breaks d1 d1 = 0
    inst = build_linear_instance(P.sl2())
    comps = inst.components.replace(1, ((0, 1),), e(1, 2, 3, dim=3, coeff=HSeries.h(1, 1, 4)))
    report = check_stasheff(inst.with_components(comps), 3)
    assert not report.ok
    assert ((2,),) in [v.inputs for v in report.violations]  # d1 d1 e3 = h^2 e123


def test_dropping_a_generator_value_in_dim_three_is_invisible():
    # the result is the structure of another Lie algebra, so nothing breaks
    inst = build_linear_instance(P.sl2())
    comps = inst.components.replace(1, ((0,),), ExtElement(3, trunc=4))
    assert check_stasheff(inst.with_components(comps), 3).ok


def test_sign_mutation_on_wedge_detected():
    inst = build_constant_instance(P.weyl(4))
    out = inst.components.component(2, ((0,), (1,)))
    comps = inst.components.replace(2, ((0,), (1,)), -out)
    report = check_stasheff(inst.with_components(comps), 3)
    assert not report.ok
    assert ((0,), (1,), (2,)) in [v.inputs for v in report.violations]


def test_sign_mutation_invisible_in_dim_two():
    # with only two generators associativity never compares e1*e2 to anything
    inst = build_constant_instance(P.weyl())
    out = inst.components.component(2, ((0,), (1,)))
    comps = inst.components.replace(2, ((0,), (1,)), -out)
    assert check_stasheff(inst.with_components(comps), 3).ok


def test_flipped_deformation_is_still_a_structure():
    # negating h*pi is the structure of -pi, so the axioms alone do not see it
    flipped = flip_deformation_sign(build_linear_instance(P.sl2()))
    assert check_stasheff(flipped, 3).ok


def test_unitality():
    for inst in (build_constant_instance(P.weyl(4)), build_linear_instance(P.sl2())):
        assert check_unitality(inst).ok
    inst = build_constant_instance(P.weyl())
    for I in ext_basis(2):
        b = ExtElement.basis_element(I, 2, 1, 4)
        assert inst.d(2, ExtElement.unit(2), b) == b
        assert inst.d(2, b, ExtElement.unit(2)) == b.scale(-1 if (shifted_degree(I) - 1) % 2 else 1)
    lin = build_linear_instance(P.sl2())
    assert lin.d(1, ExtElement.unit(3)).is_zero()


def test_broken_unit_reported():
    inst = build_constant_instance(P.weyl())
    comps = inst.components.replace(2, ((), (0,)), ExtElement(2, trunc=4))
    assert not check_unitality(inst.with_components(comps)).ok


def test_json_round_trip_and_custom_instance():
    inst = build_linear_instance(P.sl2())
    data = inst.components.to_json()
    comps = TaylorComponents.from_json(data)
    assert comps.to_json() == data
    custom = custom_instance(comps)
    assert not custom.verified
    assert verified(custom).verified


def test_custom_degree_violation_rejected():
    data = {"dim": 2, "trunc": 1, "components": [
        {"arity": 1, "inputs": [[0]], "output": [[[0], ["1", "0"]]]}]}
    with pytest.raises(ValueError, match="shifted degree"):
        TaylorComponents.from_json(data)


def test_stasheff_budget_guard():
    with pytest.raises(ValueError, match="budget"):
        check_stasheff(build_linear_instance(P.abelian(4)), 6)


def test_stasheff_basis_tuple_counts():
    report = check_stasheff(build_constant_instance(P.weyl()), 2)
    assert report.checked == sum(4 ** n for n in range(3))
