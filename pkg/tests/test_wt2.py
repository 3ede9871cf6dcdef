import random

import pytest

from genkoszul.complex import homology, is_spherical
from genkoszul.gb import FPModule, fp_iso_check
from genkoszul.koszul import validate_koszul_cube
from genkoszul.matrix import RingMatrix, compose, determinant, matrix_from_strings
from genkoszul.random_instances import random_graded_koszul_2cube
from genkoszul.wt2 import (CannotCertify, Claim1Violation, Membership, Unsolvable, WeightInput, Wt2Error,
                           assemble_ubar, build_wt2_cube, claim1_check, reduction_identity, resolve_wt2,
                           solve_claim2, wt_membership)


def mat(R, rows):
    return matrix_from_strings(R, rows)


def test_membership_examples(R2):
    x, y = R2.gens()
    Mxy = FPModule.coker(mat(R2, [["x", "y"]]))
    r = wt_membership(Mxy, [x, y])
    assert r.status is Membership.MEMBER and r.projective_dimension == 2
    assert wt_membership(FPModule.coker(mat(R2, [["x"]])), [x, y]).status is Membership.NOT_MEMBER
    assert wt_membership(FPModule.free(R2, 1), [x, y]).status is Membership.NOT_MEMBER


def test_membership_unknown_for_inhomogeneous(R2):
    x, y = R2.gens()
    M = FPModule.coker(mat(R2, [["x^2+y", "y"]]))
    r = wt_membership(M, [x, y])
    assert r.status is Membership.UNKNOWN and r.supported


def test_claim1_examples(R2):
    x, _ = R2.gens()
    assert claim1_check(mat(R2, [["x"]]), x) == (1, 1)
    assert claim1_check(RingMatrix.diag(R2, [x**2, x]), x)[0] == 3
    with pytest.raises(Claim1Violation):
        claim1_check(mat(R2, [["x+1"]]), x)


def test_claim2_examples(R2):
    x, y = R2.gens()
    X, V = solve_claim2(x, y, mat(R2, [["y"]]))
    assert X == mat(R2, [["1"]]) and V == mat(R2, [["0"]])
    X, V = solve_claim2(x, y, mat(R2, [["x+y"]]))
    assert X == mat(R2, [["1"]]) and V == mat(R2, [["1"]])
    with pytest.raises(Unsolvable):
        solve_claim2(x, y, mat(R2, [["x"]]))


def test_assemble_ubar_examples(R2):
    x, y = R2.gens()
    U, X, V = mat(R2, [["y"]]), mat(R2, [["1"]]), mat(R2, [["0"]])
    ubar = assemble_ubar(x, V, U, X, 1, g=y)
    assert ubar == mat(R2, [["0", "y"], ["1", "1"]])
    assert determinant(ubar) == -y
    assert reduction_identity(y, U, X, ubar)
    # m = 0: Ubar = [f V] needs f V = -g
    empty_u = RingMatrix.zeros(R2, 1, 0)
    empty_x = RingMatrix.zeros(R2, 0, 1)
    with pytest.raises(Wt2Error):
        assemble_ubar(x, mat(R2, [["1"]]), empty_u, empty_x, 0, g=y)


def test_worked_instance(R2):
    x, y = R2.gens()
    cert = build_wt2_cube(WeightInput(x, y, mat(R2, [["y"]]), mat(R2, [["x"]])))
    c = cert.cube.cube
    assert c.d(1, 1) == RingMatrix.diag(R2, [x, R2.one()])
    assert c.d(3, 1) == RingMatrix.diag(R2, [R2.one(), x])
    assert c.d(2, 2) == mat(R2, [["0", "y"], ["1", "1"]])
    assert c.d(3, 2) == mat(R2, [["0", "y"], ["1", "x"]])
    assert compose(c.d(1, 1), c.d(3, 2)) == mat(R2, [["0", "x*y"], ["1", "x"]])
    assert determinant(cert.ubar) == -y
    assert cert.exponents == (1, 1) and cert.verified
    Axy = FPModule.coker(mat(R2, [["x", "y"]]))
    assert fp_iso_check(cert.module, Axy, RingMatrix.identity(R2, 1))


def test_second_instance(R2):
    x, y = R2.gens()
    cert = build_wt2_cube(WeightInput(x, y, mat(R2, [["x+y"]]), mat(R2, [["x"]])))
    assert cert.ubar == mat(R2, [["x", "x+y"], ["1", "1"]])
    assert determinant(cert.ubar) == -y
    assert cert.verified


def test_bad_P_aborts(R2):
    x, y = R2.gens()
    with pytest.raises(Wt2Error):
        build_wt2_cube(WeightInput(x, y, mat(R2, [["y"]]), mat(R2, [["x+1"]])))


def test_resolve_examples(R2):
    x, y = R2.gens()
    cert = resolve_wt2(FPModule.coker(mat(R2, [["x", "y"]])), x, y)
    assert cert.U == mat(R2, [["y"]]) and cert.P == mat(R2, [["x"]])
    assert cert.ubar == mat(R2, [["0", "y"], ["1", "1"]])
    cert2 = resolve_wt2(FPModule.coker(mat(R2, [["x^2", "y"]])), x, y)
    assert cert2.shape["f_power"] == 2 and cert2.exponents == (2, 1)
    with pytest.raises(CannotCertify) as info:
        resolve_wt2(FPModule.coker(mat(R2, [["x"]])), x, y)
    assert info.value.stage == "annihilation"


def test_resolve_rejects_higher_weight(R3):
    # A/(x, y, z) has projective dimension 3
    x, y, z = R3.gens()
    with pytest.raises(CannotCertify):
        resolve_wt2(FPModule.coker(mat(R3, [["x", "y", "z"]])), x, y)


def test_resolve_rejects_inhomogeneous(R2):
    x, y = R2.gens()
    with pytest.raises(CannotCertify) as info:
        resolve_wt2(FPModule.coker(mat(R2, [["x", "y"]])), x + 1, y)
    assert info.value.stage == "input"


def test_random_round_trip(R3):
    rng = random.Random(99)
    x, y, _ = R3.gens()
    for _ in range(4):
        _, M = random_graded_koszul_2cube(rng, R3, x, y)
        cert = resolve_wt2(M, x, y)
        validate_koszul_cube(cert.cube.cube, (x, y))
        assert is_spherical(cert.complex, 0)
        assert fp_iso_check(homology(cert.complex, 0), M, cert.comparison_to_input)
        assert wt_membership(cert.module, [x, y]).status is Membership.MEMBER
        # Claim 2 identity and the determinant on the nose
        n = cert.U.nrows
        assert compose(cert.U, cert.X) == RingMatrix.identity(R3, n).scale(cert.g) + cert.V.scale(cert.f)
        assert determinant(cert.ubar) == (-cert.g) ** n
        assert cert.g == y ** cert.shape["g_power"]
