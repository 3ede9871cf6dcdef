"""Acceptance criteria 1-8, each with its runtime limit.

Every criterion records one PASS/FAIL line, shown in the terminal summary
(and printed directly under ``pytest -s``).
"""

import functools
import io
import json
import os
import random
import subprocess
import sys
import time

import pytest

from acceptance_log import RESULTS
from cli_corpus import CORPUS, fx
from genkoszul.cli import main
from genkoszul.complex import homology, is_spherical, tot_of_cube
from genkoszul.cube import coincidence_check, face, h0_iterated, is_admissible
from genkoszul.gb import (FPModule, SubmoduleBasis, fp_is_zero, fp_iso_check, is_A_sequence,
                          is_regular_sequence)
from genkoszul.graded_oracle import free_dimension, span_dimension, standard_count, syzygy_dimension
from genkoszul.koszul import admcriterion_check, classical_koszul, resolcriterion_check, validate_koszul_cube
from genkoszul.matrix import RingMatrix, determinant
from genkoszul import random_instances as ri
from genkoszul.ring import PolyRing
from genkoszul.wt2 import CannotCertify, WeightInput, build_wt2_cube, resolve_wt2

SRC = os.path.join(os.path.dirname(__file__), "..", "src")
R3 = PolyRing(["x", "y", "z"])


def criterion(num, title, limit=None):
    """Record PASS/FAIL for a criterion test; the test returns a short detail string."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*a, **kw):
            t0 = time.perf_counter()
            ok, detail = False, ""
            try:
                detail = fn(*a, **kw) or ""
                ok = True
            except BaseException as exc:
                detail = "%s: %s" % (type(exc).__name__, str(exc).splitlines()[0][:120] if str(exc) else "")
                raise
            finally:
                elapsed = time.perf_counter() - t0 + getattr(run, "setup_time", 0.0)
                if ok and limit is not None and elapsed >= limit:
                    ok = False
                    detail += " (over the %ds limit)" % limit
                line = "criterion %d %s: %s  [%.1fs%s] %s" % (
                    num, "PASS" if ok else "FAIL", title, elapsed,
                    "" if limit is None else " / %ds" % limit, detail)
                RESULTS.append(line)
                print(line)
            assert elapsed < limit if limit is not None else True, line

        return run

    return wrap


# ---------------------------------------------------------------- 1

@criterion(1, "classical Koszul complex of x_1..x_n is a resolution of A/(x), n <= 4", 30)
def test_criterion_1_classical_koszul():
    for n in range(1, 5):
        R = PolyRing(["x%d" % i for i in range(1, n + 1)])
        xs = R.gens()
        c = classical_koszul(xs)
        assert c.verify() is None
        for k in range(1, n + 1):
            assert fp_is_zero(homology(c, k)), (n, k)
        quotient = FPModule.coker(RingMatrix(R, [list(xs)], ncols=n))
        assert fp_iso_check(homology(c, 0), quotient, RingMatrix.identity(R, 1))
    return "n = 1..4"


# ---------------------------------------------------------------- 2, 3

@pytest.fixture(scope="module")
def families():
    t0 = time.perf_counter()
    rng = random.Random(20261014)
    fams = []
    while len(fams) < 30:
        d = ri.random_boundary_family(rng, R3, 2, m=rng.randint(1, 3), degree_bound=2)
        fams.append(d)
    mutated = [ri.mutate_family(rng, fams[i], degree_bound=3) for i in range(12)]
    return fams, mutated, time.perf_counter() - t0


@criterion(2, "BE test and direct homology agree on generalized Koszul complexes", 300)
def test_criterion_2_resolcriterion(families):
    fams, mutated, setup = families
    test_criterion_2_resolcriterion.setup_time = setup
    ms = set()
    for d in fams:
        assert d.n == 2 and d.m <= 3
        assert all(M.max_degree() <= 2 for M in d.maps.values())
        assert is_regular_sequence(list(d.targets))
        r = resolcriterion_check(d)
        assert r.be is True and r.spherical is True, (d.targets, r.be_rows)
        ms.add(d.m)
    broken = 0
    for mu in mutated:
        assert not is_regular_sequence(list(mu.targets))
        r = resolcriterion_check(mu, force=True)
        assert r.agree, (mu.targets, r.be, r.spherical)
        assert r.be is False and r.spherical is False
        broken += 1
    assert broken >= 10
    return "%d regular families (ranks %s), %d mutated, both false" % (len(fams), sorted(ms), broken)


@criterion(3, "families over A-sequences are admissible", 300)
def test_criterion_3_admcriterion(families):
    fams, _, setup = families
    test_criterion_3_admcriterion.setup_time = setup
    checked = 0
    for d in fams:
        if is_A_sequence(list(d.targets)):
            assert admcriterion_check(d)
            checked += 1
    assert checked == len(fams)
    return "%d/%d admissible" % (checked, len(fams))


# ---------------------------------------------------------------- 4, 5

@pytest.fixture(scope="module")
def admissible_cubes():
    t0 = time.perf_counter()
    rng = random.Random(7)
    cubes = []
    while len(cubes) < 12:
        n = 3 if len(cubes) % 3 == 0 else 2
        d = ri.random_boundary_family(rng, R3, n, m=rng.randint(1, 2), degree_bound=2)
        x = d.cube()
        if is_admissible(x):
            cubes.append(x)
    return cubes, rng, time.perf_counter() - t0


@criterion(4, "iterated H_0 is independent of the order of directions", 120)
def test_criterion_4_coincidence(admissible_cubes):
    cubes, rng, setup = admissible_cubes
    test_criterion_4_coincidence.setup_time = setup
    for x in cubes:
        a, b = list(x.dims), list(x.dims)
        rng.shuffle(a)
        rng.shuffle(b)
        assert coincidence_check(x, x.dims, a, b), (a, b)
        if len(x.dims) == 3:
            T = sorted(rng.sample(list(x.dims), 2))
            assert coincidence_check(x, T, T, T[::-1])
    return "%d cubes (%d with n = 3)" % (len(cubes), sum(len(x.dims) == 3 for x in cubes))


@criterion(5, "Tot homology: H_0 only on admissible cubes, H_>=2 = 0 when faces are admissible", 180)
def test_criterion_5_tot_homology(admissible_cubes):
    cubes, _, setup = admissible_cubes
    test_criterion_5_tot_homology.setup_time = setup
    for x in cubes:
        c = tot_of_cube(x)
        for p in c.degrees:
            if p >= 1:
                assert fp_is_zero(homology(c, p)), p
        top = h0_iterated(x, x.dims)
        assert fp_iso_check(homology(c, 0), top, RingMatrix.identity(x.ring, x.ranks[0]))
    rng = random.Random(11)
    faces_only = nonzero_h1 = 0
    for i in range(8):
        n = 2 if i % 2 == 0 else 3
        x = ri.face_admissible_family(rng, R3, n=n).cube()
        k = n
        assert all(is_admissible(face(x, k, side)) for side in ("domain", "range"))
        assert not is_admissible(x)
        c = tot_of_cube(x)
        for p in c.degrees:
            if p >= 2:
                assert fp_is_zero(homology(c, p)), p
        nonzero_h1 += not fp_is_zero(homology(c, 1))
        faces_only += 1
    assert faces_only >= 5
    return "%d admissible cubes; %d face-admissible cubes (%d with H_1 != 0)" % (
        len(cubes), faces_only, nonzero_h1)


# ---------------------------------------------------------------- 6

def _cli_json(argv):
    out = io.StringIO()
    code = main(argv + ["--json"], stdin=io.StringIO(""), stdout=out)
    return code, json.loads(out.getvalue())


@criterion(6, "weight-two round trip: worked instance, random modules, negative control", 600)
def test_criterion_6_wt2_round_trip():
    x, y, z = R3.gens()
    R2 = PolyRing(["x", "y"])
    a, b = R2.gens()
    # (a) the worked instance
    cert = build_wt2_cube(WeightInput(a, b, RingMatrix(R2, [[b]]), RingMatrix(R2, [[a]])))
    assert cert.verified
    assert determinant(cert.ubar) == -b
    code, doc = _cli_json(["resolve-wt2", fx("wt2_modules.json"), "--f", "f", "--g", "g", "--module", "Mxy"])
    assert code == 0 and doc["status"] == "pass"
    assert any(ch["witness"] == "det Ubar = -y" for ch in doc["checks"])
    # (b) random homogeneous weight-two modules
    rng = random.Random(2026)
    pairs = [(x, y), (x + z, y), (x, y - z)]
    certified = 0
    ranks = set()
    for i in range(21):
        f, g = pairs[i % len(pairs)]
        _, M = ri.random_graded_koszul_2cube(rng, R3, f, g)
        cert = resolve_wt2(M, f, g)
        kc = validate_koszul_cube(cert.cube.cube, (f, g))
        c = tot_of_cube(cert.cube.cube)
        assert is_spherical(c, 0)
        assert fp_iso_check(homology(c, 0), M, cert.comparison_to_input)
        assert cert.verified
        ranks.add(kc.rank)
        certified += 1
    # (c) negative control
    with pytest.raises(CannotCertify) as exc:
        resolve_wt2(FPModule.coker(RingMatrix(R2, [[a]])), a, b)
    code, _ = _cli_json(["resolve-wt2", fx("wt2_modules.json"), "--f", "f", "--g", "g", "--module", "Mx"])
    assert code == 1
    return "det Ubar = -y; %d random modules certified (cube ranks %s); A/(x) -> CannotCertify at %s" % (
        certified, sorted(ranks), exc.value.stage)


# ---------------------------------------------------------------- 7

@criterion(7, "Groebner graded dimensions match the dense linear-algebra oracle up to degree 6", 300)
def test_criterion_7_gb_oracle():
    rng = random.Random(99)
    rings = [PolyRing(["x", "y"]), PolyRing(["x", "y", "z"])]
    count = {"ideal": 0, "submodule": 0}
    for i in range(60):
        R = rings[i % 2]
        rank = 1 if i % 3 else 2
        shifts, gens = ri.random_homogeneous_generators(rng, R, rank, rng.randint(1, 4), 3)
        N = SubmoduleBasis(R, rank, gens)
        leads = N.leading_terms()
        S = N.syzygies()
        gdeg = [max(sum(e) + s for p, s in zip(g, shifts) for e in p.term_dict()) for g in gens]
        sleads = S.leading_terms()
        for D in range(7):
            assert span_dimension(R, gens, shifts, D) == \
                free_dimension(R.nvars, shifts, D) - standard_count(R.nvars, shifts, leads, D), (i, D)
            assert syzygy_dimension(R, gens, shifts, D) == \
                free_dimension(R.nvars, gdeg, D) - standard_count(R.nvars, gdeg, sleads, D), (i, D)
        count["ideal" if rank == 1 else "submodule"] += 1
    assert sum(count.values()) >= 50
    return "%d ideals, %d submodules" % (count["ideal"], count["submodule"])


# ---------------------------------------------------------------- 8

def _subprocess_json(argv, hashseed):
    env = dict(os.environ, PYTHONPATH=SRC, PYTHONHASHSEED=str(hashseed))
    p = subprocess.run([sys.executable, "-m", "genkoszul.cli"] + argv + ["--json"],
                       capture_output=True, env=env)
    return p.returncode, p.stdout


@criterion(8, "repeated CLI runs give byte-identical certificates")
def test_criterion_8_determinism():
    for argv, expected in CORPUS:
        code1, out1 = _subprocess_json(argv, 0)
        code2, out2 = _subprocess_json(argv, 4242)
        assert code1 == code2 == expected, argv
        assert out1 == out2, argv
        assert out1
    return "%d commands, two hash seeds each" % len(CORPUS)
