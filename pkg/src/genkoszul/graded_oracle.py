"""Graded-piece dimensions by dense linear algebra over Q.

Independent of the Gröbner engine: a homogeneous submodule N = <g_1..g_s>
of F = A^r(-shifts) has degree-D piece spanned by the monomial multiples
m * g_i with deg m = D - deg g_i, so dim N_D is the rank of a rational
matrix, and the syzygy module has dim Syz_D = sum_i #mon(D - deg g_i) - dim N_D.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Sequence, Tuple

from .ring import PolyRing, Polynomial


def monomials(nvars: int, d: int) -> List[Tuple[int, ...]]:
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out)


def rank_q(rows: List[Dict[object, Fraction]]) -> int:
    """Rank of a sparse rational matrix given as a list of row dicts (Gaussian elimination)."""
    pivots: Dict[object, Dict[object, Fraction]] = {}
    rank = 0
    for row in rows:
        r = dict(row)
        while r:
            col = min(r, key=_colkey)
            if col in pivots:
                p = pivots[col]
                c = r[col]
                for k, a in p.items():
                    v = r.get(k, 0) - c * a
                    if v:
                        r[k] = v
                    else:
                        r.pop(k, None)
                continue
            c = r[col]
            pivots[col] = {k: a / c for k, a in r.items()}
            rank += 1
            break
    return rank


def _colkey(k):
    return repr(k)


def _homog_degree(v: Sequence[Polynomial], shifts: Sequence[int]) -> int:
    deg = None
    for p, s in zip(v, shifts):
        for e in p.term_dict():
            d = sum(e) + s
            if deg is None:
                deg = d
            elif d != deg:
                raise ValueError("vector is not homogeneous")
    if deg is None:
        raise ValueError("zero vector has no degree")
    return deg


def span_dimension(ring: PolyRing, gens: Sequence[Sequence[Polynomial]], shifts: Sequence[int], D: int) -> int:
    """dim_Q of the degree-D piece of the submodule generated by ``gens``."""
    rows = []
    for g in gens:
        if all(p.is_zero() for p in g):
            continue
        dg = _homog_degree(g, shifts)
        for mono in monomials(ring.nvars, D - dg):
            row = {}
            for pos, p in enumerate(g):
                for e, c in p.term_dict().items():
                    row[(pos, tuple(a + b for a, b in zip(e, mono)))] = Fraction(c)
            rows.append(row)
    return rank_q(rows)


def syzygy_dimension(ring: PolyRing, gens: Sequence[Sequence[Polynomial]], shifts: Sequence[int], D: int) -> int:
    """dim_Q of Syz_D, with e_i in degree deg g_i (zero generators contribute a free summand)."""
    total = 0
    for g in gens:
        if all(p.is_zero() for p in g):
            raise ValueError("zero generator has no degree; drop it first")
        total += len(monomials(ring.nvars, D - _homog_degree(g, shifts)))
    return total - span_dimension(ring, gens, shifts, D)


def free_dimension(nvars: int, shifts: Sequence[int], D: int) -> int:
    return sum(len(monomials(nvars, D - s)) for s in shifts)


def standard_count(nvars: int, shifts: Sequence[int], leads: Sequence[Tuple[int, Tuple[int, ...]]], D: int) -> int:
    """Monomials of degree D in A^r(-shifts) not divisible by any leading term."""
    n = 0
    for pos, s in enumerate(shifts):
        lp = [e for p, e in leads if p == pos]
        for mono in monomials(nvars, D - s):
            if not any(all(a <= b for a, b in zip(l, mono)) for l in lp):
                n += 1
    return n
