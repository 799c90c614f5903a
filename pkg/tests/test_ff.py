import pytest

from taumod.errors import (
    CapExceeded,
    DivisionByZero,
    InvalidModulus,
    NoEmbedding,
    TowerMismatch,
    ZeroArgument,
)
from taumod.ff import (
    FieldTower,
    embed,
    enumerate_field,
    extension_tower,
    field_arith,
    frobenius,
    smallest_irreducible,
    solve_power_equation,
)


def tower_f2():
    return FieldTower(2, [0, 1])


def tower_f3():
    return FieldTower(3, [0, 1])


def tower_f4():
    # z^2 + z + 1 over F_2
    return FieldTower(2, [0, 1], [1, 1, 1])


def tower_f9():
    # z^2 + 1 over F_3; the generator squares to -1
    return FieldTower(3, [0, 1], [1, 0, 1])


def tower_f16():
    return extension_tower(tower_f4(), 2)


SMALL_TOWERS = [tower_f2, tower_f3, tower_f4, tower_f9]


def test_construction_rejects_bad_moduli():
    with pytest.raises(InvalidModulus):
        FieldTower(4, [0, 1])  # not prime
    with pytest.raises(InvalidModulus):
        FieldTower(2, [1])  # degree 0
    with pytest.raises(InvalidModulus):
        FieldTower(2, [0, 1], [1, 0, 1])  # z^2 + 1 = (z+1)^2 over F_2
    with pytest.raises(InvalidModulus):
        FieldTower(3, [0, 1], [2, 0, 2])  # not monic


def test_char3_addition():
    K = tower_f3()
    assert (K.element(2) + K.element(2)).index == 1


def test_f9_generator_squares_to_minus_one():
    K = tower_f9()
    i = K.gen
    assert i * i == -K.one
    # (1+i)(1-i) = 1 - i^2 = 2, derived by expanding mod i^2 + 1
    assert (K.one + i) * (K.one - i) == K.element(2)


def test_division_and_errors():
    K = tower_f9()
    a = K.element(5)
    assert (a / a) == K.one
    with pytest.raises(DivisionByZero):
        a / K.zero
    with pytest.raises(TowerMismatch):
        field_arith(a, tower_f3().one, "add")


@pytest.mark.parametrize("make", SMALL_TOWERS)
def test_field_axioms_exhaustive(make):
    K = make()
    elems = enumerate_field(K)
    for a in elems:
        for b in elems:
            assert (a + b) == (b + a)
            assert (a * b) == (b * a)
            if not b.is_zero():
                assert (a / b) * b == a
    for a in elems:
        assert a + K.zero == a
        assert a * K.one == a
        assert a + (-a) == K.zero


def test_frobenius_on_f9():
    K = tower_f9()
    i = K.gen
    # i^3 = -i, computed by reducing i^3 modulo i^2 + 1
    assert frobenius(i, 1) == -i
    assert frobenius(i, 0) == i
    for c in range(3):
        assert frobenius(K.element(c), 1) == K.element(c)


@pytest.mark.parametrize("make", SMALL_TOWERS)
def test_frobenius_is_a_field_automorphism(make):
    K = make()
    elems = enumerate_field(K)
    for e in range(3):
        for a in elems:
            for b in elems:
                assert frobenius(a + b, e) == frobenius(a, e) + frobenius(b, e)
                assert frobenius(a * b, e) == frobenius(a, e) * frobenius(b, e)
    for a in elems:
        assert frobenius(a, K.m) == a
        assert a ** K.order == a


def test_enumeration_order_and_caps():
    assert [a.index for a in enumerate_field(tower_f2())] == [0, 1]
    assert [a.index for a in enumerate_field(tower_f3())] == [0, 1, 2]
    f4 = enumerate_field(tower_f4())
    assert len(set(f4)) == 4
    with pytest.raises(CapExceeded):
        enumerate_field(tower_f9(), cap=8)


def test_solve_power_equation_paper_values():
    # eps^2 = -1 has no solution in F_3 but two in F_9
    F3 = tower_f3()
    assert solve_power_equation(2, -F3.one) == ()
    F9 = tower_f9()
    sols = solve_power_equation(2, -F9.one)
    i = F9.gen
    assert sols == (i, -i) or sols == (-i, i)
    assert [s.index for s in sols] == sorted(s.index for s in sols)


def test_solve_power_equation_basics():
    K = tower_f9()
    c = K.element(7)
    assert solve_power_equation(1, c) == (c,)
    with pytest.raises(ZeroArgument):
        solve_power_equation(2, K.zero)


@pytest.mark.parametrize("make", SMALL_TOWERS)
def test_power_equation_size_law(make):
    from math import gcd

    K = make()
    for n in range(1, 9):
        g = gcd(n, K.order - 1)
        for c in enumerate_field(K)[1:]:
            sols = solve_power_equation(n, c)
            assert len(sols) in (0, g)
            for s in sols:
                assert s**n == c


def test_embed_prime_field_and_identity():
    F3, F9 = tower_f3(), tower_f9()
    two = F3.element(2)
    assert embed(two, F9).index == 2
    a = F9.element(5)
    assert embed(a, F9) == a


def test_embed_f4_into_f16():
    F4, F16 = tower_f4(), tower_f16()
    g = F4.gen
    img = embed(g, F16)
    # the image must be a root of g's minimal polynomial z^2 + z + 1
    assert img * img + img + F16.one == F16.zero
    # homomorphism property on the full enumeration
    for a in enumerate_field(F4):
        for b in enumerate_field(F4):
            assert embed(a + b, F16) == embed(a, F16) + embed(b, F16)
            assert embed(a * b, F16) == embed(a, F16) * embed(b, F16)


def test_embed_requires_divisibility():
    F9 = tower_f9()
    F27 = extension_tower(tower_f3(), 3)
    with pytest.raises(NoEmbedding):
        embed(F9.gen, F27)


def test_extension_tower_is_deterministic_and_cached():
    F3 = tower_f3()
    E = extension_tower(F3, 2)
    assert E.ext_modulus == (1, 0, 1)  # z^2 + 1 is the first irreducible
    assert extension_tower(F3, 2) is E
    with pytest.raises(CapExceeded):
        extension_tower(F3, 5, cap=100)


def test_smallest_irreducible_over_f2():
    F2 = tower_f2()
    assert smallest_irreducible(F2, 2) == (1, 1, 1)
    assert smallest_irreducible(F2, 3) == (1, 1, 0, 1)


def test_coords_round_trip():
    F9 = tower_f9()
    for a in enumerate_field(F9):
        assert F9.element(a.coords) == a
    assert F9.element([[1], [2]]).coords == ((1,), (2,))
