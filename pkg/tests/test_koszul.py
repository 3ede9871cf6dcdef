import random

import pytest

from genkoszul.complex import ChainComplex, homology, is_spherical, tot_of_cube
from genkoszul.cube import Cube, typical_koszul_cube
from genkoszul.gb import FPModule, fp_is_zero, fp_iso_check
from genkoszul.koszul import (BoundaryFamily, HypothesisError, KoszulCubeViolation, KoszulError,
                              admcriterion_check, be_check, boundary_condition_check, classical_koszul,
                              generalized_koszul, resolcriterion_check, validate_koszul_cube)
from genkoszul.matrix import RingMatrix, matrix_from_strings
from genkoszul.random_instances import mutate_family, random_boundary_family
from test_cube import worked


def test_classical_examples(R2):
    x, y = R2.gens()
    c1 = classical_koszul([x])
    assert c1.ranks() == [1, 1] and c1.d(1) == RingMatrix(R2, [[x]])
    c2 = classical_koszul([x, y])
    assert c2.ranks() == [1, 2, 1]
    assert fp_iso_check(homology(c2, 0), FPModule.coker(RingMatrix(R2, [[x, y]])), RingMatrix.identity(R2, 1))
    assert fp_is_zero(homology(c2, 1)) and fp_is_zero(homology(c2, 2))
    assert not fp_is_zero(homology(classical_koszul([x, x]), 1))


def test_generalized_examples(R2):
    x, y = R2.gens()
    d = BoundaryFamily.constant(R2, [RingMatrix.diag(R2, [x, R2.one()])], [x])
    _, c = generalized_koszul(d)
    assert c.ranks() == [2, 2]
    Ax = FPModule.coker(RingMatrix(R2, [[x]]))
    assert fp_iso_check(homology(c, 0), Ax, RingMatrix(R2, [[R2.one(), R2.zero()]]))
    _, c1 = generalized_koszul(BoundaryFamily.constant(R2, [RingMatrix(R2, [[x]])], [x]))
    assert c1.d(1) == classical_koszul([x]).d(1)
    _, c2 = generalized_koszul(BoundaryFamily.constant(R2, [RingMatrix(R2, [[x]]), RingMatrix(R2, [[y]])], [x, y]))
    t = tot_of_cube(typical_koszul_cube([x, y]))
    assert all(c2.d(k) == t.d(k) for k in (1, 2))


def test_m1_matches_classical_matrix_for_matrix(R3):
    x, y, z = R3.gens()
    for fs in ([x, y], [x, y, z], [x + y, y * z, z**2]):
        mats = [RingMatrix(R3, [[f]]) for f in fs]
        _, c = generalized_koszul(BoundaryFamily.constant(R3, mats, fs))
        k = classical_koszul(fs)
        assert c.ranks() == k.ranks()
        assert all(c.d(n) == k.d(n) for n in range(1, len(fs) + 1))


def test_family_determinant_condition(R2):
    x, y = R2.gens()
    d = BoundaryFamily.constant(R2, [RingMatrix.diag(R2, [x, y])], [x])
    with pytest.raises(KoszulError):
        generalized_koszul(d)


def test_validate_koszul_cube_examples(R2):
    x, y = R2.gens()
    kc = validate_koszul_cube(worked(R2), [x, y])
    assert kc.exponents == (1, 1) and kc.rank == 2
    assert kc.det(1) == x and kc.det(2) == -y
    kt = validate_koszul_cube(typical_koszul_cube([x, y]), [x, y])
    assert kt.exponents == (1, 1) and kt.rank == 1
    bad = Cube(R2, (1,), {0: 2, 1: 2}, {(1, 1): RingMatrix.diag(R2, [x, y])})
    with pytest.raises(KoszulCubeViolation):
        validate_koszul_cube(bad, [x])
    with pytest.raises(KoszulCubeViolation):
        validate_koszul_cube(typical_koszul_cube([x, x]), [x, x])


def test_be_examples(R2):
    x, y = R2.gens()
    one = RingMatrix.diag(R2, [x, R2.one()])
    r = be_check(ChainComplex(R2, {0: 2, 1: 2}, {1: one}))
    assert r.passed and r.rows == [(1, 2, 1)]
    prop = matrix_from_strings(R2, [["x", "y"], ["x", "y"]])
    r = be_check(ChainComplex(R2, {0: 2, 1: 2}, {1: prop}))
    assert not r.passed and r.rows == [(1, 2, 0)]
    r = be_check(classical_koszul([x, y]))
    assert r.passed and r.rows == [(1, 1, 2), (2, 1, 2)]


def test_resolcriterion_examples(R2):
    x, y = R2.gens()
    d = BoundaryFamily.constant(R2, [RingMatrix.diag(R2, [x, R2.one()])], [x])
    r = resolcriterion_check(d)
    assert r.be and r.spherical
    bad = BoundaryFamily.constant(R2, [RingMatrix(R2, [[x]]), RingMatrix(R2, [[x]])], [x, x])
    r = resolcriterion_check(bad)
    assert not r.regular and r.be is None and "not a regular sequence" in r.note


def test_admcriterion_examples(R2):
    x, y = R2.gens()
    one = R2.one()
    assert admcriterion_check(BoundaryFamily.constant(R2, [RingMatrix(R2, [[x]]), RingMatrix(R2, [[y]])], [x, y]))
    d = BoundaryFamily.constant(R2, [RingMatrix.diag(R2, [x, one]), RingMatrix.diag(R2, [y, one])], [x, y])
    assert admcriterion_check(d)
    with pytest.raises(HypothesisError):
        admcriterion_check(BoundaryFamily.constant(R2, [RingMatrix(R2, [[x]])] * 2, [x, x]))


def test_boundary_condition_examples(R2):
    x, y = R2.gens()
    assert boundary_condition_check(RingMatrix.diag(R2, [x, R2.one()]), x).ok
    r = boundary_condition_check(RingMatrix.diag(R2, [x, y]), x)
    assert not r.applicable and "not applicable" in r.note
    assert boundary_condition_check(RingMatrix(R2, [[x]]), x).ok


def test_random_families_and_mutations(R3):
    rng = random.Random(2024)
    for _ in range(6):
        d = random_boundary_family(rng, R3, 2)
        r = resolcriterion_check(d)
        assert r.ok and r.agree
        assert validate_koszul_cube(d.cube(), d.targets).exponents == (1, 1)
        mu = resolcriterion_check(mutate_family(rng, d), force=True)
        assert mu.agree and not mu.be
