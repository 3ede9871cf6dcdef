"""Seeded random generators for the property harnesses.

Boundary families and Koszul cubes are produced by conjugating diagonal
cubes with vertex-wise unimodular base changes: if D_j are commuting
diagonal matrices and C_S is invertible over A for every vertex S, then
d_S^j = C_{S-j} D_j C_S^{-1} commutes automatically and keeps det D_j.
"""

from __future__ import annotations

import random
from typing import List, Optional, Sequence, Tuple

from .cube import Cube, h0_iterated, members, subsets
from .gb import FPModule, is_A_sequence, is_regular_sequence
from .koszul import BoundaryFamily
from .matrix import RingMatrix, compose
from .ring import Polynomial, PolyRing


def random_linear_form(rng: random.Random, ring: PolyRing, coeffs=(-1, 1, 2)) -> Polynomial:
    while True:
        p = ring.zero()
        for v in ring.gens():
            if rng.random() < 0.6:
                p = p + v * rng.choice(coeffs)
        if not p.is_zero():
            return p


def random_homogeneous(rng: random.Random, ring: PolyRing, degree: int, density: float = 0.5,
                       coeffs=(-2, -1, 1, 2, 3)) -> Polynomial:
    from .graded_oracle import monomials

    if degree == 0:
        return ring.const(rng.choice(coeffs))
    monos = monomials(ring.nvars, degree)
    while True:
        p = ring.zero()
        for e in monos:
            if rng.random() < density:
                p = p + ring.monomial(e, rng.choice(coeffs))
        if not p.is_zero():
            return p


def _elementary(ring: PolyRing, m: int, p: int, q: int, c: Polynomial) -> Tuple[RingMatrix, RingMatrix]:
    """E + c e_pq and its inverse E - c e_pq (p != q)."""
    rows = [[ring.one() if i == j else ring.zero() for j in range(m)] for i in range(m)]
    inv = [list(r) for r in rows]
    rows[p][q] = c
    inv[p][q] = -c
    return RingMatrix(ring, rows, ncols=m), RingMatrix(ring, inv, ncols=m)


def _random_unimodular(rng: random.Random, ring: PolyRing, m: int, shifts: Sequence[int] = None,
                       ops: int = 2) -> Tuple[RingMatrix, RingMatrix]:
    """A product of elementary matrices (determinant 1) and its inverse.

    With ``shifts`` the result is a degree-0 automorphism of A^m(-shifts):
    an entry at (p, q) must have degree shifts[q] - shifts[p] >= 0.
    """
    C = RingMatrix.identity(ring, m)
    Ci = RingMatrix.identity(ring, m)
    if m < 2:
        return C, Ci
    for _ in range(rng.randint(0, ops)):
        p, q = rng.sample(range(m), 2)
        if shifts is None:
            deg = rng.choice((0, 0, 1))
            c = ring.const(rng.choice((-1, 1, 2))) if deg == 0 else random_linear_form(rng, ring)
        else:
            deg = shifts[q] - shifts[p]
            if deg < 0:
                continue
            c = random_homogeneous(rng, ring, deg)
        E, Ei = _elementary(ring, m, p, q, c)
        C = compose(E, C)
        Ci = compose(Ci, Ei)
    return C, Ci


def conjugated_cube(rng: random.Random, ring: PolyRing, diagonals: Sequence[Sequence[Polynomial]],
                    shifts: Sequence[Sequence[int]] = None, ops: int = 2) -> Cube:
    """Cube with d_S^j = C_{S-j} diag(diagonals[j-1]) C_S^{-1}.

    ``shifts[S]`` (indexed by vertex mask) grades the vertices when given.
    """
    n = len(diagonals)
    m = len(diagonals[0])
    full = (1 << n) - 1
    base = {}
    for S in subsets(full):
        base[S] = _random_unimodular(rng, ring, m, None if shifts is None else shifts[S], ops)
    D = [RingMatrix.diag(ring, list(dg)) for dg in diagonals]
    boundary = {}
    for S in subsets(full):
        for j in members(S):
            C_dst = base[S & ~(1 << (j - 1))][0]
            Ci_src = base[S][1]
            boundary[(S, j)] = compose(compose(C_dst, D[j - 1]), Ci_src)
    return Cube(ring, tuple(range(1, n + 1)), {S: m for S in subsets(full)}, boundary)


def family_from_cube(x: Cube, targets: Sequence[Polynomial]) -> BoundaryFamily:
    return BoundaryFamily(x.ring, len(x.dims), x.ranks[0], dict(x.boundary), tuple(targets))


def _diagonals(rng: random.Random, ring: PolyRing, targets: Sequence[Polynomial], m: int,
               same_position: bool = False) -> List[List[Polynomial]]:
    pos0 = rng.randrange(m)
    out = []
    for f in targets:
        pos = pos0 if same_position else rng.randrange(m)
        out.append([f if i == pos else ring.one() for i in range(m)])
    return out


def random_regular_targets(rng: random.Random, ring: PolyRing, n: int, max_degree: int = 1) -> Tuple[Polynomial, ...]:
    while True:
        fs = tuple(random_homogeneous(rng, ring, rng.randint(1, max_degree), density=0.4) for _ in range(n))
        if is_regular_sequence(list(fs)):
            return fs


def random_boundary_family(rng: random.Random, ring: PolyRing, n: int = 2, m: int = None,
                           degree_bound: int = 2, targets: Sequence[Polynomial] = None,
                           same_position: bool = False, tries: int = 50) -> BoundaryFamily:
    """A BoundaryFamily with det d_S^j = targets[j-1] and entry degree <= degree_bound."""
    if targets is None:
        targets = random_regular_targets(rng, ring, n)
    for _ in range(tries):
        mm = m if m is not None else rng.randint(1, 3)
        x = conjugated_cube(rng, ring, _diagonals(rng, ring, targets, mm, same_position))
        if all(M.max_degree() <= degree_bound for M in x.boundary.values()):
            return family_from_cube(x, targets)
    raise RuntimeError("could not meet the degree bound")


def mutate_family(rng: random.Random, d: BoundaryFamily, degree_bound: int = 3) -> BoundaryFamily:
    """A family over the non-regular targets (f_1, ..., f_1 * h) with all determinants in one slot.

    The totalization is still a complex but carries the homology of
    Kos(f_1, f_1 h), so both exactness checkers must report failure.
    """
    if d.n < 2:
        raise ValueError("mutation needs at least two directions")
    R = d.ring
    f1 = d.targets[0]
    for _ in range(50):
        h = random_linear_form(rng, R)
        bad = tuple([f1] * (d.n - 1) + [f1 * h])
        try:
            return random_boundary_family(rng, R, d.n, d.m, degree_bound, targets=bad, same_position=True)
        except RuntimeError:
            continue
    raise RuntimeError("mutation failed")


def face_admissible_family(rng: random.Random, ring: PolyRing, m: int = None, n: int = 2) -> BoundaryFamily:
    """Cube whose last-direction faces are admissible while its targets are not a regular sequence.

    For n = 2 the faces are 1-cubes with nonzero determinant; for n = 3 the
    first two targets are regular and the third repeats a factor of them.
    """
    x, y = ring.gens()[:2]
    if n == 2:
        choices = [(x, x), (x, x * y), (x * x, x * y), (x * y, x), (x + y, (x + y) * y)]
    elif n == 3:
        choices = [(x, y, x), (x, y, x * y), (x + y, y, x + y), (x, y, y * y)]
    else:
        raise ValueError("n must be 2 or 3")
    targets = rng.choice(choices)
    return random_boundary_family(rng, ring, n, m if m is not None else rng.randint(1, 2), 3,
                                  targets=targets, same_position=True)


def random_graded_koszul_2cube(rng: random.Random, ring: PolyRing, f: Polynomial, g: Polynomial,
                               max_rank: int = 2, max_power: int = 2, degree_bound: int = 2,
                               tries: int = 100) -> Tuple[Cube, FPModule]:
    """A homogeneous Koszul 2-cube over (f, g) and its module M = H_0 along both directions."""
    df, dg = f.total_degree(), g.total_degree()
    for _ in range(tries):
        m = rng.randint(1, max_rank)
        a = [rng.randint(0, max_power) for _ in range(m)]
        b = [rng.randint(0, max_power) for _ in range(m)]
        if not any(ai and bi for ai, bi in zip(a, b)):
            continue
        if sum(a) == 0 or sum(b) == 0:
            continue
        s0 = [rng.randint(0, 1) for _ in range(m)]
        shifts = {0: s0,
                  1: [s + ai * df for s, ai in zip(s0, a)],
                  2: [s + bi * dg for s, bi in zip(s0, b)],
                  3: [s + ai * df + bi * dg for s, ai, bi in zip(s0, a, b)]}
        diag1 = [f ** ai for ai in a]
        diag2 = [g ** bi for bi in b]
        x = conjugated_cube(rng, ring, [diag1, diag2], shifts)
        if any(M.max_degree() > degree_bound for M in x.boundary.values()):
            continue
        M = h0_iterated(x, [1, 2])
        return x, M
    raise RuntimeError("could not build a graded cube within the degree bound")


def random_homogeneous_generators(rng: random.Random, ring: PolyRing, rank: int, count: int,
                                  max_degree: int = 3) -> Tuple[List[int], List[Tuple[Polynomial, ...]]]:
    """Shifts and homogeneous generators of a random graded submodule of A^rank."""
    shifts = [rng.randint(0, 1) for _ in range(rank)] if rank > 1 else [0]
    gens = []
    while len(gens) < count:
        d = rng.randint(max(shifts) + 1 if rank > 1 else 1, max_degree)
        v = []
        for s in shifts:
            if d - s < 1 or rng.random() < 0.3:
                v.append(ring.zero())
            else:
                v.append(random_homogeneous(rng, ring, d - s, density=0.35))
        if all(p.is_zero() for p in v):
            continue
        gens.append(tuple(v))
    return shifts, gens
