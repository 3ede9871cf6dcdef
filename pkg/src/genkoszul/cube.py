"""S-cubes of finite free modules and their direction-wise homology.

Directions are labelled by positive integers; a subset T of the directions
is a bitmask with bit ``k - 1`` standing for direction ``k``.  The boundary
``d^k_T`` (for k in T) is a matrix from the vertex at T to the vertex at
T minus {k}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .gb import FPModule, IncompatibleMap, SubmoduleBasis, check_hom, hom_is_injective, kernel
from .matrix import RingMatrix, compose, hstack, is_injective
from .ring import Polynomial, PolyRing

MAX_DIRECTIONS = 16


def bit(k: int) -> int:
    return 1 << (k - 1)


def mask_of(T: Sequence[int]) -> int:
    m = 0
    for k in T:
        m |= bit(k)
    return m


def members(mask: int) -> List[int]:
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def subsets(mask: int) -> Iterator[int]:
    """All submasks of mask in increasing numeric order."""
    subs = []
    s = mask
    while True:
        subs.append(s)
        if s == 0:
            break
        s = (s - 1) & mask
    return iter(sorted(subs))


def bitstring(mask: int, dims: Sequence[int]) -> str:
    """'110' style encoding, leftmost character is the first direction."""
    return "".join("1" if mask & bit(k) else "0" for k in dims)


def parse_bitstring(s: str, dims: Sequence[int]) -> int:
    if len(s) != len(dims) or set(s) - {"0", "1"}:
        raise ValueError("bad subset bitstring %r for %d directions" % (s, len(dims)))
    return mask_of([k for k, c in zip(dims, s) if c == "1"])


class CubeError(ValueError):
    pass


@dataclass
class Violation:
    kind: str
    T: int
    j: Optional[int] = None
    k: Optional[int] = None
    detail: str = ""

    def describe(self, dims: Sequence[int]) -> str:
        where = "T={%s}" % ",".join(str(t) for t in members(self.T))
        if self.j is not None:
            where += ", j=%d" % self.j
        if self.k is not None:
            where += ", k=%d" % self.k
        return "%s at %s%s" % (self.kind, where, (": " + self.detail) if self.detail else "")


@dataclass
class CubeReport:
    ok: bool
    violation: Optional[Violation] = None
    checked_squares: int = 0


class Cube:
    """Cube of free modules: vertex ranks and boundary matrices indexed by subsets."""

    def __init__(self, ring: PolyRing, dims: Sequence[int], ranks: Dict[int, int],
                 boundary: Dict[Tuple[int, int], RingMatrix]):
        dims = tuple(sorted(dims))
        if len(dims) > MAX_DIRECTIONS:
            raise CubeError("at most %d directions" % MAX_DIRECTIONS)
        if any(k < 1 for k in dims) or len(set(dims)) != len(dims):
            raise CubeError("directions must be distinct positive integers")
        self.ring = ring
        self.dims = dims
        self.full = mask_of(dims)
        self.ranks = dict(ranks)
        self.boundary = dict(boundary)
        for T in subsets(self.full):
            if T not in self.ranks:
                raise CubeError("missing vertex %s" % bitstring(T, dims))
            for k in members(T):
                if (T, k) not in self.boundary:
                    raise CubeError("missing boundary d^%d at %s" % (k, bitstring(T, dims)))

    def vertices(self) -> List[int]:
        return list(subsets(self.full))

    def d(self, T: int, k: int) -> RingMatrix:
        return self.boundary[(T, k)]

    def is_constant_rank(self) -> bool:
        return len(set(self.ranks.values())) <= 1

    def __repr__(self):
        return "Cube(dims=%s, ranks=%s)" % (self.dims, [self.ranks[T] for T in self.vertices()])

    def replace(self, T: int, k: int, M: RingMatrix) -> "Cube":
        b = dict(self.boundary)
        b[(T, k)] = M
        return Cube(self.ring, self.dims, self.ranks, b)


def validate(x: Cube) -> CubeReport:
    """Check shapes and every commuting square d^j d^k = d^k d^j."""
    for T in x.vertices():
        for k in members(T):
            M = x.d(T, k)
            want = (x.ranks[T & ~bit(k)], x.ranks[T])
            if M.shape != want:
                return CubeReport(False, Violation("shape", T, k=k,
                                                   detail="got %s, expected %s" % (M.shape, want)))
            if M.ring != x.ring:
                return CubeReport(False, Violation("ring", T, k=k))
    squares = 0
    for T in x.vertices():
        for j, k in combinations(members(T), 2):
            lhs = compose(x.d(T & ~bit(k), j), x.d(T, k))
            rhs = compose(x.d(T & ~bit(j), k), x.d(T, j))
            squares += 1
            if lhs != rhs:
                return CubeReport(False, Violation("non-commuting square", T, j=j, k=k), squares)
    return CubeReport(True, None, squares)


def face(x: Cube, k: int, side: str) -> Cube:
    """Range side: vertices without k.  Domain side: vertices T u {k}, reindexed by T."""
    if k not in x.dims:
        raise CubeError("direction %d not in cube" % k)
    if side not in ("domain", "range"):
        raise ValueError("side must be 'domain' or 'range'")
    dims = tuple(t for t in x.dims if t != k)
    rest = mask_of(dims)
    extra = bit(k) if side == "domain" else 0
    ranks = {T: x.ranks[T | extra] for T in subsets(rest)}
    boundary = {(T, j): x.d(T | extra, j) for T in subsets(rest) for j in members(T)}
    return Cube(x.ring, dims, ranks, boundary)


def typical_koszul_cube(fs: Sequence[Polynomial], ring: PolyRing = None) -> Cube:
    """Kos(f_1..f_n): rank-one vertices, boundary (f_j) in direction j."""
    fs = list(fs)
    if ring is None:
        if not fs:
            raise ValueError("ring required for the empty sequence")
        ring = fs[0].ring
    dims = tuple(range(1, len(fs) + 1))
    full = mask_of(dims)
    ranks = {T: 1 for T in subsets(full)}
    boundary = {(T, j): RingMatrix(ring, [[fs[j - 1]]]) for T in subsets(full) for j in members(T)}
    return Cube(ring, dims, ranks, boundary)


@dataclass
class PresentedCube:
    """Cube of finitely presented modules; boundaries act on generators."""

    ring: PolyRing
    dims: Tuple[int, ...]
    vertex: Dict[int, FPModule]
    boundary: Dict[Tuple[int, int], RingMatrix] = field(default_factory=dict)

    @property
    def full(self) -> int:
        return mask_of(self.dims)

    def vertices(self) -> List[int]:
        return list(subsets(self.full))

    def d(self, T: int, k: int) -> RingMatrix:
        return self.boundary[(T, k)]

    def check(self) -> None:
        for (T, k), G in self.boundary.items():
            check_hom(self.vertex[T], self.vertex[T & ~bit(k)], G)

    def single(self) -> FPModule:
        """The vertex of a cube with no directions."""
        if self.dims:
            raise CubeError("cube still has directions %s" % (self.dims,))
        return self.vertex[0]


def as_presented(x: Union[Cube, PresentedCube]) -> PresentedCube:
    if isinstance(x, PresentedCube):
        return x
    vertex = {T: FPModule.free(x.ring, x.ranks[T]) for T in x.vertices()}
    return PresentedCube(x.ring, x.dims, vertex, dict(x.boundary))


def h0_direction(x: Union[Cube, PresentedCube], k: int, verify: bool = True) -> PresentedCube:
    """Homo_0^k: vertex T is coker of d^k at T u {k}, relations kept as a presentation."""
    p = as_presented(x)
    if k not in p.dims:
        raise CubeError("direction %d not in cube" % k)
    R = p.ring
    dims = tuple(t for t in p.dims if t != k)
    rest = mask_of(dims)
    vertex = {}
    for T in subsets(rest):
        base = p.vertex[T]
        d = p.d(T | bit(k), k)
        rel = hstack(R, [base.relations, d], nrows=base.generators_rank)
        vertex[T] = FPModule(R, base.generators_rank, rel)
    boundary = {(T, j): p.d(T, j) for T in subsets(rest) for j in members(T)}
    out = PresentedCube(R, dims, vertex, boundary)
    if verify:
        try:
            out.check()
        except IncompatibleMap as exc:
            raise CubeError("induced map is not well defined (non-functorial input): %s" % exc)
    return out


def h1_direction(x: Cube, k: int) -> PresentedCube:
    """Homo_1^k: vertex T presents ker d^k at T u {k}; boundaries induced by lifting."""
    if k not in x.dims:
        raise CubeError("direction %d not in cube" % k)
    R = x.ring
    dims = tuple(t for t in x.dims if t != k)
    rest = mask_of(dims)
    gens: Dict[int, List[tuple]] = {}
    vertex = {}
    for T in subsets(rest):
        K = list(kernel(x.d(T | bit(k), k)).generators)
        gens[T] = K
        n = x.ranks[T | bit(k)]
        if K:
            rels = kernel(RingMatrix.from_columns(R, K, n)).generators
            vertex[T] = FPModule(R, len(K), RingMatrix.from_columns(R, rels, len(K)))
        else:
            vertex[T] = FPModule(R, 0)
    boundary = {}
    for T in subsets(rest):
        for j in members(T):
            src, dst = gens[T], gens[T & ~bit(j)]
            d = x.d(T | bit(k), j)
            cols = []
            if dst:
                target = SubmoduleBasis(R, x.ranks[(T & ~bit(j)) | bit(k)], dst)
                cols = [tuple(target.lift(d.apply(v))) for v in src]
            boundary[(T, j)] = RingMatrix.from_columns(R, cols, len(dst)) if cols else \
                RingMatrix.zeros(R, len(dst), len(src))
    return PresentedCube(R, dims, vertex, boundary)


@dataclass
class AdmissibilityResult:
    admissible: bool
    chain: Tuple[int, ...] = ()
    failure: Optional[Tuple[int, int]] = None

    def __bool__(self):
        return self.admissible


def _boundaries_injective(p: PresentedCube) -> Optional[Tuple[int, int]]:
    for T in p.vertices():
        for k in members(T):
            G = p.d(T, k)
            src, dst = p.vertex[T], p.vertex[T & ~bit(k)]
            if src.relations.ncols == 0 and dst.relations.ncols == 0:
                ok = is_injective(G)
            else:
                ok = hom_is_injective(src, dst, G)
            if not ok:
                return T, k
    return None


def is_admissible(x: Union[Cube, PresentedCube]) -> AdmissibilityResult:
    """Injective boundaries, recursively for every Homo_0^k; failing chain is reported."""
    top = as_presented(x)
    seen: Dict[frozenset, AdmissibilityResult] = {}

    def rec(p: PresentedCube, applied: Tuple[int, ...]) -> AdmissibilityResult:
        key = frozenset(applied)
        if key in seen:
            return seen[key]
        bad = _boundaries_injective(p)
        if bad is not None:
            res = AdmissibilityResult(False, applied, bad)
        else:
            res = AdmissibilityResult(True, applied)
            if len(p.dims) > 1:
                for k in p.dims:
                    sub = rec(h0_direction(p, k), applied + (k,))
                    if not sub:
                        res = sub
                        break
        seen[key] = res
        return res

    return rec(top, ())


def h0_iterated(x: Union[Cube, PresentedCube], T: Sequence[int], order: Sequence[int] = None,
                require_admissible: bool = False) -> Union[PresentedCube, FPModule]:
    """Apply Homo_0 along the directions of T, first element of ``order`` first.

    Returns the single vertex module when T exhausts the directions.
    """
    T = list(T)
    order = list(order) if order is not None else sorted(T)
    if sorted(order) != sorted(T):
        raise ValueError("order must be a permutation of T")
    if require_admissible and not is_admissible(x):
        raise CubeError("h0_iterated needs an admissible cube")
    p = as_presented(x)
    for k in order:
        p = h0_direction(p, k)
    if not p.dims:
        return p.single()
    return p


def comparison_maps(x: Union[Cube, PresentedCube], T: Sequence[int]) -> Dict[int, RingMatrix]:
    """Canonical comparison between two iterated H_0 along T: identity on surviving generators."""
    p = as_presented(x)
    rest = p.full & ~mask_of(T)
    return {S: RingMatrix.identity(p.ring, p.vertex[S].generators_rank) for S in subsets(rest)}


def coincidence_check(x: Union[Cube, PresentedCube], T: Sequence[int], order_a: Sequence[int],
                      order_b: Sequence[int]) -> bool:
    """Both iterated H_0 along T agree via the canonical comparison map (vertex-wise iso)."""
    from .gb import fp_iso_check

    a = h0_iterated(x, T, order_a)
    b = h0_iterated(x, T, order_b)
    maps = comparison_maps(x, T)
    if isinstance(a, FPModule):
        return fp_iso_check(a, b, maps[0])
    return all(fp_iso_check(a.vertex[S], b.vertex[S], G) for S, G in maps.items())
