"""Graded bookkeeping: degree shifts, minimal generators, minimal resolutions.

Only homogeneous data admits canonical minimal generators, so every helper
here raises NotGraded on inhomogeneous input.  Unit-pivot pruning of a
presentation does not need a grading and works for any input.
"""

from __future__ import annotations

from collections import deque
from typing import List, Optional, Sequence, Tuple

from .gb import FPModule, SubmoduleBasis, Vector, kernel
from .matrix import RingMatrix, compose
from .ring import Polynomial, PolyRing


class NotGraded(ValueError):
    pass


def vector_degree(v: Sequence[Polynomial], shifts: Sequence[int]) -> Optional[int]:
    """Degree of a homogeneous vector in a free module with the given generator shifts."""
    deg = None
    for p, s in zip(v, shifts):
        if p.is_zero():
            continue
        ok, d = p.is_homogeneous()
        if not ok or (deg is not None and deg != d + s):
            raise NotGraded("vector is not homogeneous")
        deg = d + s
    return deg


def infer_shifts(M: RingMatrix, row_shifts: Sequence[int] = None) -> Tuple[List[int], List[Optional[int]]]:
    """Row shifts and column degrees making every column of M homogeneous.

    Connected components of the row/column incidence graph are anchored at
    degree 0 on their first row unless row shifts are given.
    """
    m, n = M.shape
    degs = [[None] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            e = M[i, j]
            if e.is_zero():
                continue
            ok, d = e.is_homogeneous()
            if not ok:
                raise NotGraded("entry (%d,%d) = %s is not homogeneous" % (i, j, e))
            degs[i][j] = d
    rows: List[Optional[int]] = list(row_shifts) if row_shifts is not None else [None] * m
    cols: List[Optional[int]] = [None] * n
    for start in range(m):
        if rows[start] is None:
            rows[start] = 0
        queue = deque([("r", start)])
        while queue:
            kind, k = queue.popleft()
            if kind == "r":
                for j in range(n):
                    if degs[k][j] is None:
                        continue
                    want = rows[k] + degs[k][j]
                    if cols[j] is None:
                        cols[j] = want
                        queue.append(("c", j))
                    elif cols[j] != want:
                        raise NotGraded("column %d has no consistent degree" % j)
            else:
                for i in range(m):
                    if degs[i][k] is None:
                        continue
                    want = cols[k] - degs[i][k]
                    if rows[i] is None:
                        rows[i] = want
                        queue.append(("r", i))
                    elif rows[i] != want:
                        raise NotGraded("row %d has no consistent shift" % i)
    return [r if r is not None else 0 for r in rows], cols


def is_graded_matrix(M: RingMatrix) -> bool:
    try:
        infer_shifts(M)
    except NotGraded:
        return False
    return True


def minimal_generators(ring: PolyRing, rank: int, candidates: Sequence[Vector], shifts: Sequence[int],
                       base: Sequence[Vector] = ()) -> List[int]:
    """Indices of a minimal homogeneous generating set of span(candidates) + span(base), modulo base.

    Greedy in increasing degree: a candidate is kept iff it is not already in
    the span of the kept ones together with ``base``.
    """
    order = []
    for idx, v in enumerate(candidates):
        d = vector_degree(v, shifts)
        if d is not None:
            order.append((d, idx))
    order.sort()
    kept: List[int] = []
    span = SubmoduleBasis(ring, rank, list(base))
    for _, idx in order:
        if span.contains(candidates[idx]):
            continue
        kept.append(idx)
        span = SubmoduleBasis(ring, rank, list(base) + [candidates[k] for k in kept])
    return sorted(kept)


def prune_presentation(M: FPModule) -> Tuple[FPModule, RingMatrix, RingMatrix]:
    """Eliminate generators killed by unit-entry relations.

    Returns (M', inc, proj): ``inc`` maps generators of M' to generators of
    M, ``proj`` maps generators of M to M'; both are isomorphisms of the
    presented modules.
    """
    R = M.ring
    rel = [list(r) for r in M.relations.rows]
    b = M.generators_rank
    ncols = M.relations.ncols
    live = list(range(b))           # original generator index of each current row
    # proj_rows[i] expresses original generator i in the current generators
    proj = [[R.one() if i == k else R.zero() for k in range(b)] for i in range(b)]
    while True:
        pivot = None
        for j in range(ncols):
            for p in range(len(rel)):
                e = rel[p][j]
                if e and e.is_constant():
                    pivot = (p, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        p, j = pivot
        c = rel[p][j].constant_value()
        col = [rel[i][j] for i in range(len(rel))]
        # e_p = -(1/c) * sum_{i != p} col_i e_i in the cokernel
        for orig in range(b):
            coeff = proj[orig][p]
            if coeff:
                for i in range(len(rel)):
                    if i != p:
                        proj[orig][i] = proj[orig][i] - coeff * col[i] * (1 / c)
        for jj in range(ncols):
            if jj == j:
                continue
            a = rel[p][jj]
            if a:
                factor = a * (1 / c)
                for i in range(len(rel)):
                    rel[i][jj] = rel[i][jj] - factor * col[i]
        del rel[p]
        for row in proj:
            del row[p]
        del live[p]
        for row in rel:
            del row[j]
        ncols -= 1
    keep_cols = [j for j in range(ncols) if any(not rel[i][j].is_zero() for i in range(len(rel)))]
    nb = len(live)
    relations = RingMatrix(R, [[r[j] for j in keep_cols] for r in rel], ncols=len(keep_cols))
    out = FPModule(R, nb, relations)
    inc = RingMatrix(R, [[R.one() if live[k] == i else R.zero() for k in range(nb)] for i in range(b)],
                     ncols=nb)
    projm = RingMatrix(R, [[proj[orig][k] for orig in range(b)] for k in range(nb)], ncols=b)
    return out, inc, projm


def minimal_presentation(M: FPModule, shifts: Sequence[int] = None
                         ) -> Tuple[FPModule, RingMatrix, List[int]]:
    """Minimal graded presentation; returns (M', inclusion M' -> M, shifts of M')."""
    R = M.ring
    if shifts is None:
        shifts, _ = infer_shifts(M.relations)
    pruned, inc, _ = prune_presentation(M)
    new_shifts = [shifts[i] for i in range(M.generators_rank)
                  if any(inc[i, k] == 1 for k in range(pruned.generators_rank))]
    cols = pruned.relations.columns()
    keep = minimal_generators(R, pruned.generators_rank, cols, new_shifts)
    rel = RingMatrix.from_columns(R, [cols[k] for k in keep], pruned.generators_rank)
    return FPModule(R, pruned.generators_rank, rel), inc, new_shifts


def minimal_free_resolution(M: FPModule, max_length: int = 8, shifts: Sequence[int] = None
                            ) -> List[RingMatrix]:
    """Maps d_1, d_2, ... of a minimal graded free resolution of M (d_1 presents M)."""
    R = M.ring
    Mmin, _, shifts = minimal_presentation(M, shifts)
    maps: List[RingMatrix] = []
    d = Mmin.relations
    src_shifts = shifts
    while d.ncols > 0:
        maps.append(d)
        if len(maps) > max_length:
            raise RuntimeError("resolution longer than %d" % max_length)
        col_deg = [vector_degree(c, src_shifts) for c in d.columns()]
        K = kernel(d).generators
        keep = minimal_generators(R, d.ncols, K, col_deg)
        d = RingMatrix.from_columns(R, [K[k] for k in keep], d.ncols)
        src_shifts = col_deg
    return maps


def projective_dimension(M: FPModule, max_length: int = 8) -> int:
    """Length of the minimal graded free resolution (0 for a free module)."""
    return len(minimal_free_resolution(M, max_length))
