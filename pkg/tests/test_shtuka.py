import pytest

from taumod.drinfeld import CoverMap, drinfeld_module
from taumod.errors import ShapeMismatch, VerificationError
from taumod.ff import FieldTower, enumerate_field
from taumod.polys import Poly, mat_equal, mat_identity
from taumod.sheaves import from_drinfeld, pushforward, semilinear_iso_solver
from taumod.shtuka import (
    Shtuka,
    from_abelian_sheaf,
    pushforward_shtuka,
    shtuka_iso_solver,
    verify_shtuka,
)
from taumod.skew import SkewPoly


def tower_f3():
    return FieldTower(3, [0, 1])


def tower_f9():
    return FieldTower(3, [0, 1], [1, 0, 1])


def cover_y_squared(tower=None):
    K = tower or tower_f3()
    return CoverMap(K, (0, 0, 1))


def line_shtuka(coeff=1, xi=0, tower=None):
    """1x1 right shtuka from the rank-1 ladder: J = 1, T = coeff*(y - xi),
    pole at infinity, zero at xi."""
    K = tower or tower_f3()
    c, x0 = K.element(coeff), K.element(xi)
    return Shtuka(
        "right",
        K,
        1,
        1,
        None,
        x0,
        (1,),
        (2,),
        ((Poly.one(K),),),
        ((Poly(K, [-x0 * c, c]),),),
    )


def affine_line_shtuka(beta, xi, tower=None):
    """1x1 shtuka with both pole and zero affine: J = x - beta, T = x - xi."""
    K = tower or tower_f3()
    b, x0 = K.element(beta), K.element(xi)
    return Shtuka(
        "right",
        K,
        1,
        1,
        b,
        x0,
        (0,),
        (1,),
        ((Poly(K, [-b, K.one]),),),
        ((Poly(K, [-x0, K.one]),),),
    )


def test_verify_line_shtuka():
    report = verify_shtuka(line_shtuka())
    assert report.ok, report.summary()


def test_verify_affine_shtuka_any_pole_zero():
    for beta in range(3):
        for xi in range(3):
            report = verify_shtuka(affine_line_shtuka(beta, xi))
            assert report.ok, report.summary()


def test_verify_rejects_singular_tau():
    K = tower_f3()
    S = Shtuka(
        "right",
        K,
        2,
        1,
        None,
        K.zero,
        (0, 0),
        (1, 0),
        mat_identity(K, 2),
        ((Poly.zero(K), Poly.x(K)), (Poly.zero(K), Poly.zero(K))),
    )
    report = verify_shtuka(S)
    assert not report.ok
    assert any("zero: tau" in c.name and not c.passed for c in report.clauses)


def test_from_abelian_sheaf_flagship():
    K = tower_f3()
    M = drinfeld_module(K, "A", SkewPoly.tau(K, 2))
    L = from_drinfeld(M)
    for i in range(3):
        S = from_abelian_sheaf(L, i)
        assert verify_shtuka(S).ok
        x = Poly.x(K)
        if i == 0:
            assert mat_equal(S.T, ((Poly.zero(K), x), (Poly.one(K), Poly.zero(K))))
    s0 = from_abelian_sheaf(L, 0)
    s1 = from_abelian_sheaf(L, 1)
    assert s0.split_Eprime == s1.split_E


def test_from_abelian_sheaf_rank1():
    K = tower_f3()
    M = drinfeld_module(K, "Aprime", SkewPoly.tau(K))
    L = from_drinfeld(M)
    S = from_abelian_sheaf(L, 0)
    assert S.rank == 1
    assert S.T == ((Poly.x(K),),)
    assert verify_shtuka(S).ok


def test_pushforward_line_shtuka():
    K = tower_f3()
    S = line_shtuka(1)
    P = pushforward_shtuka(S, cover_y_squared())
    assert P.rank == 2
    x = Poly.x(K)
    assert mat_equal(P.T, ((Poly.zero(K), x), (Poly.one(K), Poly.zero(K))))
    assert mat_equal(P.J, mat_identity(K, 2))
    assert P.pole is None and P.zero == K.zero
    assert verify_shtuka(P).ok


def test_pushforward_identity_cover():
    S = line_shtuka(1)
    P = pushforward_shtuka(S, CoverMap(tower_f3(), (0, 1)))
    assert mat_equal(P.T, S.T) and mat_equal(P.J, S.J)


@pytest.mark.parametrize("make", [tower_f3, tower_f9])
def test_pushforward_moves_zero_through_cover(make):
    from taumod.polys import mat_det, smith_finite, divisors_are_powers_of

    K = make()
    for xi in enumerate_field(K):
        S = line_shtuka(1, 0, K)
        S = Shtuka(
            "right", K, 1, 1, None, xi, (1,), (2,),
            ((Poly.one(K),),), ((Poly(K, [-xi, K.one]),),),
        )
        assert verify_shtuka(S).ok
        P = pushforward_shtuka(S, cover_y_squared(K))
        assert P.zero == xi * xi
        divisors, full = smith_finite(P.T)
        assert full
        assert divisors_are_powers_of(divisors, xi * xi)
        assert sum(int(d.degree) for d in divisors) == 1


def test_iso_solver_self_and_pairs():
    S = line_shtuka(1)
    sols = shtuka_iso_solver(S, S)
    K = tower_f3()
    assert any(
        mat_equal(iso.U, mat_identity(K, 1)) and mat_equal(iso.U_prime, mat_identity(K, 1))
        for iso in sols
    )
    # y vs -y: empty over F_3
    assert shtuka_iso_solver(line_shtuka(1), line_shtuka(2)) == ()
    # but the pushforwards are isomorphic over F_3 via diag(1, -1)
    P1 = pushforward_shtuka(line_shtuka(1), cover_y_squared())
    P2 = pushforward_shtuka(line_shtuka(2), cover_y_squared())
    sols = shtuka_iso_solver(P1, P2)
    assert sols
    diag = ((Poly.one(K), Poly.zero(K)), (Poly.zero(K), Poly(K, [2])))
    assert any(mat_equal(iso.U, diag) and mat_equal(iso.U_prime, diag) for iso in sols)


def test_iso_solver_merges_over_f9():
    K = tower_f9()
    sols = shtuka_iso_solver(line_shtuka(1, 0, K), Shtuka(
        "right", K, 1, 1, None, K.zero, (1,), (2,),
        ((Poly.one(K),),), ((Poly(K, [K.zero, -K.one]),),),
    ))
    assert sols
    for iso in sols:
        u = iso.U[0][0]
        assert u.is_constant() and (u.coeffs[0] ** 2) == -K.one


def test_iso_solver_shape_checks():
    with pytest.raises(ShapeMismatch):
        shtuka_iso_solver(line_shtuka(1), affine_line_shtuka(0, 0))


def test_left_shtuka_mirror():
    K = tower_f3()
    left = Shtuka(
        "left",
        K,
        1,
        1,
        K.one,
        K.zero,
        (1,),
        (0,),
        ((Poly(K, [-K.one, K.one]),),),  # j = x - 1 into sigma*E
        ((Poly.x(K),),),  # tau = x into E
    )
    report = verify_shtuka(left)
    assert report.ok, report.summary()
    sols = shtuka_iso_solver(left, left)
    assert any(
        mat_equal(iso.U, mat_identity(K, 1)) and mat_equal(iso.U_prime, mat_identity(K, 1))
        for iso in sols
    )


def test_pushforward_verify_failure_propagates():
    K = tower_f3()
    bad = Shtuka(
        "right", K, 1, 1, None, K.zero, (1,), (2,),
        ((Poly.one(K),),), ((Poly.zero(K),),),
    )
    with pytest.raises(VerificationError):
        pushforward_shtuka(bad, cover_y_squared())


def test_shtuka_pushforward_commutes_with_ladder_pushforward():
    K = tower_f3()
    Mp = drinfeld_module(K, "Aprime", SkewPoly.tau(K))
    L = from_drinfeld(Mp)
    cover = cover_y_squared()
    P = pushforward(L, cover)
    # level-0 squares on both paths agree up to shtuka isomorphism
    S_pushed = pushforward_shtuka(from_abelian_sheaf(L, 0), cover)
    S_direct = from_abelian_sheaf(P, 0)
    sols = shtuka_iso_solver(S_pushed, S_direct)
    assert sols
