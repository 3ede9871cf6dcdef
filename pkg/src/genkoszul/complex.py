"""Bounded multi-complexes, the total complex and homology of free complexes."""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .cube import Cube, bit, members, validate
from .gb import FPModule, SubmoduleBasis, fp_is_zero, kernel
from .matrix import RingMatrix, compose
from .ring import PolyRing

Multidegree = Tuple[int, ...]


class ComplexError(ValueError):
    pass


class MultiComplex:
    """Free modules at multidegrees with boundaries d^s : x_f -> x_{f - delta^s}.

    ``directions`` lists the labels of S; multidegrees are tuples in that order.
    Boundaries not listed are zero.
    """

    def __init__(self, ring: PolyRing, directions: Sequence[int], modules: Dict[Multidegree, int],
                 boundaries: Dict[Tuple[Multidegree, int], RingMatrix]):
        self.ring = ring
        self.directions = tuple(directions)
        self.modules = {tuple(f): r for f, r in modules.items() if r}
        self.boundaries = {}
        for (f, s), M in boundaries.items():
            f = tuple(f)
            g = self.shift(f, s)
            if M.shape != (self.rank(g), self.rank(f)):
                raise ComplexError("boundary d^%d at %s has shape %s" % (s, f, M.shape))
            self.boundaries[(f, s)] = M

    def rank(self, f: Multidegree) -> int:
        return self.modules.get(tuple(f), 0)

    def shift(self, f: Multidegree, s: int) -> Multidegree:
        i = self.directions.index(s)
        return f[:i] + (f[i] - 1,) + f[i + 1:]

    def d(self, f: Multidegree, s: int) -> RingMatrix:
        f = tuple(f)
        M = self.boundaries.get((f, s))
        if M is None:
            M = RingMatrix.zeros(self.ring, self.rank(self.shift(f, s)), self.rank(f))
        return M

    def support(self) -> List[Multidegree]:
        return sorted(self.modules, reverse=True)

    def verify(self) -> Optional[str]:
        """None if d^s d^s = 0 and d^t d^s + d^s d^t = 0 everywhere, else a description."""
        dirs = self.directions
        for f in self.support():
            for a, s in enumerate(dirs):
                for t in dirs[a:]:
                    h = self.shift(self.shift(f, s), t)
                    if self.rank(h) == 0:
                        continue
                    lhs = compose(self.d(self.shift(f, s), t), self.d(f, s))
                    if s == t:
                        if not lhs.is_zero():
                            return "d^%d d^%d != 0 at %s" % (s, s, f)
                        continue
                    rhs = compose(self.d(self.shift(f, t), s), self.d(f, t))
                    if not (lhs + rhs).is_zero():
                        return "d^%d d^%d + d^%d d^%d != 0 at %s" % (t, s, s, t, f)
        return None


class ChainComplex:
    """Bounded complex of free modules; d_n maps degree n to degree n - 1."""

    def __init__(self, ring: PolyRing, modules: Dict[int, int], boundaries: Dict[int, RingMatrix]):
        self.ring = ring
        self.modules = {n: r for n, r in modules.items() if r}
        self.boundaries = {}
        for n, M in boundaries.items():
            if M.shape != (self.rank(n - 1), self.rank(n)):
                raise ComplexError("d_%d has shape %s, expected %s" % (n, M.shape, (self.rank(n - 1), self.rank(n))))
            self.boundaries[n] = M

    def rank(self, n: int) -> int:
        return self.modules.get(n, 0)

    def d(self, n: int) -> RingMatrix:
        M = self.boundaries.get(n)
        if M is None:
            M = RingMatrix.zeros(self.ring, self.rank(n - 1), self.rank(n))
        return M

    @property
    def degrees(self) -> List[int]:
        if not self.modules:
            return []
        return list(range(min(self.modules), max(self.modules) + 1))

    def ranks(self) -> List[int]:
        return [self.rank(n) for n in self.degrees]

    def verify(self) -> Optional[str]:
        for n in self.degrees:
            if self.rank(n - 1) and self.rank(n + 1):
                if not compose(self.d(n), self.d(n + 1)).is_zero():
                    return "d_%d d_%d != 0" % (n, n + 1)
        return None


def cube_sign(T: int, k: int) -> int:
    """(-1)^(number of t in T with t > k)."""
    return -1 if sum(1 for t in members(T) if t > k) % 2 else 1


def from_cube(x: Cube) -> MultiComplex:
    """Place the vertex at T in multidegree chi_T with boundaries signed by cube_sign."""
    report = validate(x)
    if not report.ok:
        raise ComplexError("invalid cube: %s" % report.violation.describe(x.dims))
    dims = x.dims

    def chi(T):
        return tuple(1 if T & bit(k) else 0 for k in dims)

    modules = {chi(T): x.ranks[T] for T in x.vertices()}
    boundaries = {}
    for T in x.vertices():
        for k in members(T):
            M = x.d(T, k)
            boundaries[(chi(T), k)] = M if cube_sign(T, k) > 0 else -M
    mc = MultiComplex(x.ring, dims, modules, boundaries)
    problem = mc.verify()
    if problem:
        raise ComplexError("sign verification failed: %s" % problem)
    return mc


def tot(m: MultiComplex) -> ChainComplex:
    """Total complex; summands of each degree in descending lexicographic multidegree order."""
    R = m.ring
    by_deg: Dict[int, List[Multidegree]] = {}
    for f in m.support():
        by_deg.setdefault(sum(f), []).append(f)
    for fs in by_deg.values():
        fs.sort(reverse=True)
    modules = {n: sum(m.rank(f) for f in fs) for n, fs in by_deg.items()}
    boundaries = {}
    for n, fs in by_deg.items():
        targets = by_deg.get(n - 1, [])
        if not targets:
            continue
        rows = []
        for g in targets:
            for i in range(m.rank(g)):
                row = []
                for f in fs:
                    blk = None
                    for s in m.directions:
                        if m.shift(f, s) == g:
                            blk = m.d(f, s)
                            break
                    if blk is None:
                        row.extend([R.zero()] * m.rank(f))
                    else:
                        row.extend(blk.rows[i])
                rows.append(row)
        boundaries[n] = RingMatrix(R, rows, ncols=modules[n])
    c = ChainComplex(R, modules, boundaries)
    problem = c.verify()
    if problem:
        raise ComplexError("total complex is not a complex: %s" % problem)
    return c


def tot_of_cube(x: Cube) -> ChainComplex:
    return tot(from_cube(x))


def kernel_basis(c: ChainComplex, k: int) -> List[tuple]:
    R = c.ring
    n = c.rank(k)
    if n == 0:
        return []
    if c.rank(k - 1) == 0:
        return RingMatrix.identity(R, n).columns()
    return list(kernel(c.d(k)).generators)


def homology(c: ChainComplex, k: int) -> FPModule:
    """ker d_k / im d_(k+1) on the kernel generators K.

    Relations are the lifts of the columns of d_(k+1) over K together with
    the syzygies among K.
    """
    R = c.ring
    problem = c.verify()
    if problem:
        raise ComplexError(problem)
    K = kernel_basis(c, k)
    if not K:
        return FPModule(R, 0)
    n = c.rank(k)
    span = SubmoduleBasis(R, n, K)
    rels = []
    if c.rank(k + 1):
        for col in c.d(k + 1).columns():
            rels.append(tuple(span.lift(col)))
    rels.extend(span.syzygies().generators)
    return FPModule(R, len(K), RingMatrix.from_columns(R, rels, len(K)))


def is_spherical(c: ChainComplex, n: int) -> bool:
    return all(fp_is_zero(homology(c, k)) for k in c.degrees if k != n)


def single_direction(c: ChainComplex) -> MultiComplex:
    """View a complex as a one-direction multi-complex."""
    return MultiComplex(c.ring, (1,), {(n,): r for n, r in c.modules.items()},
                        {((n,), 1): M for n, M in c.boundaries.items()})
