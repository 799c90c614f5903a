import random

import pytest

from taumod.drinfeld import CoverMap, drinfeld_module
from taumod.errors import CapExceeded, ShapeMismatch
from taumod.extend import (
    ExtensionProblem,
    brute_oracle,
    enumerate_extensions,
    extension_iso_classes,
    galois_merge_report,
)
from taumod.ff import FieldTower
from taumod.skew import SkewPoly


def tower_f2():
    return FieldTower(2, [0, 1])


def tower_f3():
    return FieldTower(3, [0, 1])


def tower_f9():
    return FieldTower(3, [0, 1], [1, 0, 1])


def flagship_problem(tower=None):
    K = tower or tower_f3()
    M = drinfeld_module(K, "A", SkewPoly.tau(K, 2))
    return ExtensionProblem(M, CoverMap(K, (0, 0, 1)), 1)


def test_flagship_extensions_over_f3():
    prob = flagship_problem()
    sols = enumerate_extensions(prob)
    assert [s.delta.indices for s in sols] == [(0, 1), (0, 2)]  # t and -t
    assert all(s.lifted_characteristic.is_zero() for s in sols)
    assert sols == brute_oracle(prob)


def test_flagship_extensions_over_f9():
    prob = flagship_problem(tower_f9())
    sols = enumerate_extensions(prob)
    # b^2 = 0 forces b = 0 and the lead solves a^4 = 1: four solutions
    assert len(sols) == 4
    K = prob.base_module.tower
    for s in sols:
        a = s.delta.lead
        assert a**4 == K.one
        assert s.delta.constant.is_zero()
    assert sols == brute_oracle(prob)


def test_identity_cover_returns_the_module_itself():
    K = tower_f3()
    M = drinfeld_module(K, "A", SkewPoly(K, (1, 2, 1)))
    prob = ExtensionProblem(M, CoverMap(K, (0, 1)), 2)
    sols = enumerate_extensions(prob)
    assert len(sols) == 1
    assert sols[0].delta == M.gen_image


def test_inconsistent_instance_is_empty():
    K = tower_f3()
    M = drinfeld_module(K, "A", SkewPoly(K, (0, 0, 1, 1)))  # t^3 + t^2... rank 3
    with pytest.raises(ShapeMismatch):
        ExtensionProblem(M, CoverMap(K, (0, 0, 1)), 1)
    # the documented inconsistent system: a(b + b^q) = 1, b^2 = 0
    M2 = drinfeld_module(K, "A", SkewPoly(K, (0, 1, 1)))  # t^2 + t
    prob = ExtensionProblem(M2, CoverMap(K, (0, 0, 1)), 1)
    assert enumerate_extensions(prob) == ()
    assert brute_oracle(prob) == ()


def test_cap_exceeded():
    prob = flagship_problem(tower_f9())
    with pytest.raises(CapExceeded):
        enumerate_extensions(prob, cap=10)


def test_flagship_classes():
    prob = flagship_problem()
    classes = extension_iso_classes(prob)
    assert classes.partition == ((0,), (1,))
    assert classes.count == 2
    assert classes.aut_order == 2

    prob9 = flagship_problem(tower_f9())
    classes9 = extension_iso_classes(prob9)
    assert classes9.count == 1
    assert len(classes9.partition[0]) == 4
    assert classes9.aut_order == 8


def test_identity_cover_single_class():
    K = tower_f3()
    M = drinfeld_module(K, "A", SkewPoly(K, (2, 1, 1)))
    prob = ExtensionProblem(M, CoverMap(K, (0, 1)), 2)
    classes = extension_iso_classes(prob)
    assert classes.partition == ((0,),)


def test_galois_merge_flagship():
    prob = flagship_problem()
    report = galois_merge_report(prob, 2)
    assert report == {1: (2, 2), 2: (4, 1)}


def test_galois_merge_q2():
    K = tower_f2()
    M = drinfeld_module(K, "A", SkewPoly.tau(K, 2))
    prob = ExtensionProblem(M, CoverMap(K, (0, 0, 1)), 1)
    report = galois_merge_report(prob, 1)
    assert report == {1: (1, 1)}


def test_classes_with_distinct_lifted_characteristics():
    # p(Y) = Y^2 + Y over F_2 sends both 0 and 1 to 0, so the fiber can carry
    # solutions with different lifted characteristics; those are never
    # isomorphic and must land in different classes.
    K = tower_f2()
    cover = CoverMap(K, (0, 1, 1))
    delta = SkewPoly(K, (1, 1))  # 1 + t, lifted characteristic 1
    from taumod.skew import substitute

    M = drinfeld_module(K, "A", substitute(cover.coeffs, delta))
    prob = ExtensionProblem(M, cover, 1)
    sols = enumerate_extensions(prob)
    chars = {s.lifted_characteristic.index for s in sols}
    if len(chars) > 1:
        classes = extension_iso_classes(prob, sols)
        for orbit in classes.partition:
            assert len({sols[k].lifted_characteristic.index for k in orbit}) == 1


def test_oracle_equality_random_sweep():
    rng = random.Random(31337)
    towers = {
        (2, 1): FieldTower(2, [0, 1]),
        (2, 2): FieldTower(2, [0, 1], [1, 1, 1]),
        (3, 1): FieldTower(3, [0, 1]),
        (3, 2): FieldTower(3, [0, 1], [1, 0, 1]),
    }
    for K in towers.values():
        for rp in (1, 2):
            for n in (2, 3):
                for _ in range(6):
                    p_coeffs = [rng.randrange(K.q) for _ in range(n)] + [1]
                    cover = CoverMap(K, p_coeffs)
                    if rng.random() < 0.5:
                        # plant a solvable instance
                        delta = SkewPoly(
                            K,
                            [rng.randrange(K.order) for _ in range(rp)]
                            + [rng.randrange(1, K.order)],
                        )
                        from taumod.skew import substitute

                        gen = substitute(p_coeffs, delta)
                    else:
                        gen = SkewPoly(
                            K,
                            [rng.randrange(K.order) for _ in range(n * rp)]
                            + [rng.randrange(1, K.order)],
                        )
                    M = drinfeld_module(K, "A", gen)
                    prob = ExtensionProblem(M, cover, rp)
                    assert enumerate_extensions(prob) == brute_oracle(prob)
