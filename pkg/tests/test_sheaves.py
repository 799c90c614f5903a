import itertools
import random

import pytest

from taumod.drinfeld import CoverMap, drinfeld_module
from taumod.errors import NonDivisibleRank, ShapeMismatch
from taumod.ff import FieldTower
from taumod.polys import Poly, mat_det, mat_equal, mat_identity, mat_mul, mat_sigma
from taumod.sheaves import (
    AbelianSheafLadder,
    LadderLevel,
    enumerate_sheaf_module_structures,
    from_drinfeld,
    pushforward,
    semilinear_iso_solver,
    verify_abelian_sheaf,
)
from taumod.skew import SkewPoly


def tower_f2():
    return FieldTower(2, [0, 1])


def tower_f3():
    return FieldTower(3, [0, 1])


def tower_f9():
    return FieldTower(3, [0, 1], [1, 0, 1])


def rank2_companion_ladder(tower=None, sign=1):
    """The rank-2 ladder with tau = [[0, x],[1, 0]] (sign twists both
    entries), splits (floor((i+1)/2), floor(i/2)), identity inclusions."""
    K = tower or tower_f3()
    x = Poly.x(K)
    s = K.element(sign)
    tau = ((Poly.zero(K), x * Poly(K, [s])), (Poly(K, [s]), Poly.zero(K)))
    levels = []
    for i in range(2):
        splits = ((i + 1) // 2, i // 2)
        levels.append(LadderLevel(splits, mat_identity(K, 2), tau))
    return AbelianSheafLadder(K, 2, 1, 2, 1, K.zero, tuple(levels))


def rank1_line_ladder(coeff=1, tower=None, xi=0):
    """Rank-1 ladder with splits (i+1) and tau = coeff * (y - xi)."""
    K = tower or tower_f3()
    c = K.element(coeff)
    xi_e = K.element(xi)
    tau = ((Poly(K, [-xi_e * c, c]),),)
    level = LadderLevel((1,), ((Poly.one(K),),), tau)
    return AbelianSheafLadder(K, 1, 1, 1, 1, xi_e, (level,))


def cover_y_squared(tower=None):
    K = tower or tower_f3()
    return CoverMap(K, (0, 0, 1))


def test_companion_ladder_verifies():
    report = verify_abelian_sheaf(rank2_companion_ladder())
    assert report.ok, report.summary()


def test_singular_tau_fails_axiom_4():
    K = tower_f3()
    x = Poly.x(K)
    tau = ((Poly.zero(K), x), (Poly.zero(K), Poly.zero(K)))
    levels = tuple(
        LadderLevel(((i + 1) // 2, i // 2), mat_identity(K, 2), tau) for i in range(2)
    )
    L = AbelianSheafLadder(K, 2, 1, 2, 1, K.zero, levels)
    report = verify_abelian_sheaf(L)
    assert not report.ok
    assert any("axiom 4" in c.name for c in report.failures())


def test_rank1_ladder_verifies():
    for coeff in (1, 2):
        report = verify_abelian_sheaf(rank1_line_ladder(coeff))
        assert report.ok, report.summary()


def test_broken_period_composite_fails_axiom_2():
    K = tower_f3()
    L = rank1_line_ladder()
    two = ((Poly(K, [2]),),)
    bad = AbelianSheafLadder(K, 1, 1, 1, 1, K.zero, (LadderLevel((1,), two, L.levels[0].tau),))
    report = verify_abelian_sheaf(bad)
    assert any("axiom 2" in c.name and not c.passed for c in report.clauses)


def test_from_drinfeld_flagship():
    K = tower_f3()
    M = drinfeld_module(K, "A", SkewPoly.tau(K, 2))
    L = from_drinfeld(M)
    assert L.rank == 2 and L.dim == 1 and L.period == 2 and L.twist == 1
    x = Poly.x(K)
    expected_tau = ((Poly.zero(K), x), (Poly.one(K), Poly.zero(K)))
    for i in range(2):
        assert mat_equal(L.levels[i].tau, expected_tau)
        assert L.levels[i].splits == ((i + 1) // 2, i // 2)
    assert verify_abelian_sheaf(L).ok


def test_from_drinfeld_rank1():
    K = tower_f3()
    M = drinfeld_module(K, "Aprime", SkewPoly.tau(K))
    L = from_drinfeld(M)
    assert L.rank == 1 and L.period == 1
    assert L.levels[0].splits == (0,)
    assert L.levels[0].tau == ((Poly.x(K),),)

    Mneg = drinfeld_module(K, "Aprime", SkewPoly(K, (0, 2)))
    Lneg = from_drinfeld(Mneg)
    assert Lneg.levels[0].tau == ((Poly(K, [0, 2]),),)


def test_from_drinfeld_rank1_with_characteristic():
    K = tower_f9()
    xi = K.gen
    M = drinfeld_module(K, "A", SkewPoly(K, (xi, K.one)))
    L = from_drinfeld(M)
    # tau = (x - xi) and its determinant vanishes exactly at xi
    assert L.levels[0].tau == ((Poly(K, [-xi, K.one]),),)
    assert verify_abelian_sheaf(L).ok


@pytest.mark.parametrize("make", [tower_f2, tower_f3, tower_f9])
def test_from_drinfeld_verifies_across_ranks(make):
    K = make()
    rng = random.Random(11)
    for r in (1, 2, 3):
        for _ in range(5):
            coeffs = [rng.randrange(K.order) for _ in range(r)] + [
                rng.randrange(1, K.order)
            ]
            M = drinfeld_module(K, "A", SkewPoly(K, coeffs))
            assert verify_abelian_sheaf(from_drinfeld(M)).ok


def test_pushforward_flagship():
    K = tower_f3()
    L = rank1_line_ladder(1)
    P = pushforward(L, cover_y_squared())
    assert P.rank == 2 and P.period == 2 and P.twist == 1
    x = Poly.x(K)
    expected = ((Poly.zero(K), x), (Poly.one(K), Poly.zero(K)))
    for i in range(2):
        assert mat_equal(P.levels[i].tau, expected)
        assert P.levels[i].splits == ((i + 1) // 2, i // 2)
    # levelwise identical to the companion ladder
    sols = semilinear_iso_solver(P, rank2_companion_ladder())
    assert sols and sols[0].shift == 0


def test_pushforward_negative_generator():
    K = tower_f3()
    P = pushforward(rank1_line_ladder(2), cover_y_squared())
    x = Poly.x(K)
    expected = ((Poly.zero(K), Poly(K, [0, 2])), (Poly(K, [2]), Poly.zero(K)))
    assert mat_equal(P.levels[0].tau, expected)


def test_pushforward_identity_cover():
    K = tower_f3()
    L = rank1_line_ladder(1)
    P = pushforward(L, CoverMap(K, (0, 1)))
    assert P.rank == 1
    assert mat_equal(P.levels[0].tau, L.levels[0].tau)
    assert P.levels[0].splits == L.levels[0].splits


def test_pushforward_zero_moves_through_cover():
    K = tower_f9()
    xi = K.gen
    L = rank1_line_ladder(tower=K)
    L = AbelianSheafLadder(
        K, 1, 1, 1, 1, xi, (LadderLevel((1,), L.levels[0].Pi, ((Poly(K, [-xi, K.one]),),)),)
    )
    assert verify_abelian_sheaf(L).ok
    P = pushforward(L, cover_y_squared(K))
    assert P.characteristic == xi * xi
    det = mat_det(P.levels[0].tau)
    assert det.monic() == Poly(K, [-(xi * xi), K.one])


def test_iso_solver_pushforwards_isomorphic_over_f3():
    P1 = pushforward(rank1_line_ladder(1), cover_y_squared())
    P2 = pushforward(rank1_line_ladder(2), cover_y_squared())
    sols = semilinear_iso_solver(P1, P2)
    assert sols
    K = tower_f3()
    diag = ((Poly.one(K), Poly.zero(K)), (Poly.zero(K), Poly(K, [2])))
    assert any(all(mat_equal(U, diag) for U in iso.maps) for iso in sols)


def test_iso_solver_rank1_pair():
    # y and -y: no isomorphism over F_3, two over F_9
    sols3 = semilinear_iso_solver(rank1_line_ladder(1), rank1_line_ladder(2))
    assert sols3 == ()
    K9 = tower_f9()
    sols9 = semilinear_iso_solver(
        rank1_line_ladder(1, K9), rank1_line_ladder(-K9.one, K9)
    )
    assert sols9
    for iso in sols9:
        u = iso.maps[0][0][0]
        assert u.is_constant()
        assert (u.coeffs[0] ** 2) == -K9.one


def test_iso_solver_shape_checks():
    with pytest.raises(ShapeMismatch):
        semilinear_iso_solver(rank1_line_ladder(1), rank2_companion_ladder())


def test_iso_solver_self_contains_identity():
    L = rank2_companion_ladder()
    sols = semilinear_iso_solver(L, L)
    assert any(all(mat_equal(U, mat_identity(L.tower, 2)) for U in iso.maps) for iso in sols)


def test_iso_solver_solutions_satisfy_equations():
    L1 = pushforward(rank1_line_ladder(1), cover_y_squared())
    L2 = rank2_companion_ladder()
    for iso in semilinear_iso_solver(L1, L2):
        A = L1.shifted(iso.shift)
        for i in range(L1.period):
            U_next = iso.maps[(i + 1) % L1.period]
            U_i = iso.maps[i]
            assert mat_equal(
                mat_mul(U_next, A.level(i).Pi), mat_mul(L2.level(i).Pi, U_i)
            )
            assert mat_equal(
                mat_mul(U_next, A.level(i).tau),
                mat_mul(L2.level(i).tau, mat_sigma(U_i)),
            )


def brute_force_ladder_isos(L1, L2, max_entry_deg=1):
    """Independent completeness oracle: try every degree-bounded matrix
    family directly (1x1 ladders with small bounds only)."""
    K = L1.tower
    assert L1.rank == 1 and L1.period == L2.period
    out = []
    bounds = []
    for i in range(L1.period):
        b = L2.level(i).splits[0] - L1.level(i).splits[0]
        bounds.append(min(b, max_entry_deg))
    spaces = []
    for b in bounds:
        if b < 0:
            spaces.append([()])
        else:
            spaces.append(list(itertools.product(range(K.order), repeat=b + 1)))
    for combo in itertools.product(*spaces):
        Us = [((Poly._raw(K, c),),) for c in combo]
        ok = True
        for i in range(L1.period):
            U_next = Us[(i + 1) % L1.period]
            lhs = mat_mul(U_next, L1.level(i).Pi)
            rhs = mat_mul(L2.level(i).Pi, Us[i])
            if not mat_equal(lhs, rhs):
                ok = False
                break
            lhs = mat_mul(U_next, L1.level(i).tau)
            rhs = mat_mul(L2.level(i).tau, mat_sigma(Us[i]))
            if not mat_equal(lhs, rhs):
                ok = False
                break
        if ok and all(not mat_det(U).is_zero() and mat_det(U).is_constant() for U in Us):
            out.append(tuple(U[0][0].indices for U in Us))
    return sorted(out)


@pytest.mark.parametrize("make", [tower_f2, tower_f3])
def test_solver_completeness_against_brute_force_rank1(make):
    K = make()
    rng = random.Random(5)
    for _ in range(10):
        c1 = rng.randrange(1, K.order)
        c2 = rng.randrange(1, K.order)
        xi = rng.randrange(K.order)
        L1 = _rank1(K, c1, xi)
        L2 = _rank1(K, c2, xi)
        got = sorted(
            tuple(U[0][0].indices for U in iso.maps)
            for iso in semilinear_iso_solver(L1, L2, shift=0)
        )
        assert got == brute_force_ladder_isos(L1, L2)


def _rank1(K, coeff, xi):
    c, x0 = K.element(coeff), K.element(xi)
    tau = ((Poly(K, [-x0 * c, c]),),)
    return AbelianSheafLadder(
        K, 1, 1, 1, 1, x0, (LadderLevel((1,), ((Poly.one(K),),), tau),)
    )


def test_sheaf_module_structures_flagship():
    K = tower_f3()
    L = rank2_companion_ladder()
    cover = cover_y_squared()
    structures = enumerate_sheaf_module_structures(L, cover)
    assert len(structures) == 2
    x = Poly.x(K)
    plus = ((Poly.zero(K), x), (Poly.one(K), Poly.zero(K)))
    minus = ((Poly.zero(K), Poly(K, [0, 2])), (Poly(K, [2]), Poly.zero(K)))
    ys = [s.y_action[0] for s in structures]
    assert any(mat_equal(Y, plus) for Y in ys)
    assert any(mat_equal(Y, minus) for Y in ys)
    for s in structures:
        assert s.ladder is not None
        assert s.ladder.rank == 1
        assert verify_abelian_sheaf(s.ladder).ok
        assert s.ladder.levels[0].splits == (1,)
    taus = sorted(s.ladder.levels[0].tau[0][0].indices for s in structures)
    assert taus == [(0, 1), (0, 2)]  # y and -y


def test_sheaf_module_structures_witness_identifies_pushforward():
    L = rank2_companion_ladder()
    cover = cover_y_squared()
    for s in enumerate_sheaf_module_structures(L, cover):
        P = pushforward(s.ladder, cover)
        sols = semilinear_iso_solver(P, L)
        assert sols


def test_sheaf_module_structures_identity_cover():
    K = tower_f3()
    L = rank2_companion_ladder()
    structures = enumerate_sheaf_module_structures(L, CoverMap(K, (0, 1)))
    assert len(structures) == 1
    x_id = tuple(
        tuple(Poly.x(K) if i == j else Poly.zero(K) for j in range(2)) for i in range(2)
    )
    assert mat_equal(structures[0].y_action[0], x_id)
    assert structures[0].ladder is not None


def test_sheaf_module_structures_merge_over_f9():
    K = tower_f9()
    L = rank2_companion_ladder(K)
    structures = enumerate_sheaf_module_structures(L, cover_y_squared(K))
    ladders = [s.ladder for s in structures if s.ladder is not None]
    plus = [lad for lad in ladders if lad.levels[0].tau[0][0] == Poly(K, [0, 1])]
    minus = [lad for lad in ladders if lad.levels[0].tau[0][0] == Poly(K, [0, -K.one])]
    assert plus and minus
    assert semilinear_iso_solver(plus[0], minus[0])


def test_sheaf_module_structures_rank_check():
    K = tower_f3()
    L = rank1_line_ladder(1)
    with pytest.raises(NonDivisibleRank):
        enumerate_sheaf_module_structures(L, cover_y_squared())


def test_two_commutativity_flagship():
    from taumod.drinfeld import restrict

    K = tower_f3()
    cover = cover_y_squared()
    Mp = drinfeld_module(K, "Aprime", SkewPoly.tau(K))
    left = from_drinfeld(restrict(Mp, cover))
    right = pushforward(from_drinfeld(Mp), cover)
    sols = semilinear_iso_solver(left, right)
    assert sols
    assert sols[0].shift == -1
