"""Gröbner bases for ideals and submodules of free modules over Q[x_1..x_n].

Module elements are handled internally as sparse dictionaries mapping
``(position, exponent)`` to a rational coefficient.  The module order is
position-over-term with the lower position dominant, refined by the ring's
monomial order inside a position.

Lifting and syzygies use one mechanism: every generator g_i is augmented
with the unit vector e_i in extra trailing positions, and Buchberger's
algorithm runs on the head positions only.  Whenever the head of a vector
reduces to zero, its tail is a syzygy; when a target v reduces to zero
against the augmented basis, the negated tail holds the cofactors of v.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .matrix import RingMatrix, compose, hstack
from .ring import Exponent, Polynomial, PolyRing

Term = Tuple[int, Exponent]
Vec = Dict[Term, Fraction]
Vector = Tuple[Polynomial, ...]

MAX_PERMUTATION_LENGTH = 6


class NotMember(ArithmeticError):
    pass


class Unsupported(ValueError):
    pass


class IncompatibleMap(ValueError):
    pass


# sparse vector plumbing

def to_vec(v: Sequence[Polynomial], offset: int = 0) -> Vec:
    out: Vec = {}
    for i, p in enumerate(v):
        for e, c in p._terms.items():
            out[(i + offset, e)] = c
    return out


def from_vec(ring: PolyRing, v: Vec, rank: int, offset: int = 0) -> Vector:
    comps: List[Dict[Exponent, Fraction]] = [{} for _ in range(rank)]
    for (pos, e), c in v.items():
        p = pos - offset
        if 0 <= p < rank:
            comps[p][e] = c
    return tuple(Polynomial(ring, d) for d in comps)


def _divides(a: Exponent, b: Exponent) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _axpy(v: Vec, c: Fraction, shift: Exponent, b: Vec) -> None:
    """v -= c * x^shift * b, in place."""
    for (p, e), bc in b.items():
        k = (p, tuple(x + y for x, y in zip(e, shift)))
        s = v.get(k, 0) - c * bc
        if s:
            v[k] = s
        else:
            v.pop(k, None)


class _Engine:
    """One Buchberger run; keeps the (unreduced) basis for later reductions."""

    def __init__(self, ring: PolyRing, head_rank: int):
        self.ring = ring
        self.head_rank = head_rank
        key = ring.key
        self.mkey = lambda t: (-t[0], key(t[1]))
        self.basis: List[Vec] = []
        self.leads: List[Term] = []
        self.by_pos: Dict[int, List[int]] = {}
        self.syz: List[Vec] = []

    def lead(self, v: Vec) -> Term:
        return max(v, key=self.mkey)

    def _divisor(self, t: Term) -> Optional[int]:
        for idx in self.by_pos.get(t[0], ()):
            if _divides(self.leads[idx][1], t[1]):
                return idx
        return None

    def top_reduce(self, v: Vec) -> Vec:
        """Reduce until the head is zero or its leading term is irreducible."""
        v = dict(v)
        while v:
            lt = self.lead(v)
            if lt[0] >= self.head_rank:
                return v
            idx = self._divisor(lt)
            if idx is None:
                return v
            b = self.basis[idx]
            bl = self.leads[idx]
            shift = tuple(x - y for x, y in zip(lt[1], bl[1]))
            _axpy(v, v[lt] / b[bl], shift, b)
        return v

    def full_reduce(self, v: Vec) -> Vec:
        """Remainder with no term divisible by a basis leading term (head positions)."""
        v = dict(v)
        rem: Vec = {}
        while v:
            lt = self.lead(v)
            idx = self._divisor(lt) if lt[0] < self.head_rank else None
            if idx is None:
                rem[lt] = v.pop(lt)
                continue
            b = self.basis[idx]
            bl = self.leads[idx]
            shift = tuple(x - y for x, y in zip(lt[1], bl[1]))
            _axpy(v, v[lt] / b[bl], shift, b)
        return rem

    def _push(self, v: Vec, pending: set, heap: list, product_criterion: bool) -> None:
        lt = self.lead(v)
        c = v[lt]
        v = {k: a / c for k, a in v.items()}
        j = len(self.basis)
        self.basis.append(v)
        self.leads.append(lt)
        for i in self.by_pos.get(lt[0], ()):
            li = self.leads[i][1]
            if product_criterion and all(x == 0 or y == 0 for x, y in zip(li, lt[1])):
                continue
            l = _lcm(li, lt[1])
            pending.add((i, j))
            heapq.heappush(heap, (sum(l), self.mkey((lt[0], l)), i, j))
        self.by_pos.setdefault(lt[0], []).append(j)

    def _chain_skip(self, i: int, j: int, pending: set) -> bool:
        pos = self.leads[i][0]
        l = _lcm(self.leads[i][1], self.leads[j][1])
        for k in self.by_pos.get(pos, ()):
            if k == i or k == j or not _divides(self.leads[k][1], l):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
        return False

    def run(self, vectors: Sequence[Vec], product_criterion: bool) -> None:
        pending: set = set()
        heap: list = []
        for v in vectors:
            r = self.top_reduce(v)
            self._absorb(r, pending, heap, product_criterion)
        while heap:
            _, _, i, j = heapq.heappop(heap)
            if (i, j) not in pending:
                continue
            if self._chain_skip(i, j, pending):
                pending.discard((i, j))
                continue
            pending.discard((i, j))
            bi, bj = self.basis[i], self.basis[j]
            li, lj = self.leads[i], self.leads[j]
            l = _lcm(li[1], lj[1])
            s: Vec = {}
            _axpy(s, Fraction(-1), tuple(x - y for x, y in zip(l, li[1])), bi)
            _axpy(s, Fraction(1), tuple(x - y for x, y in zip(l, lj[1])), bj)
            r = self.top_reduce(s)
            self._absorb(r, pending, heap, product_criterion)

    def _absorb(self, r: Vec, pending, heap, product_criterion) -> None:
        if not r:
            return
        if self.lead(r)[0] >= self.head_rank:
            self.syz.append(r)
        else:
            self._push(r, pending, heap, product_criterion)

    def reduced_head_basis(self) -> List[Vec]:
        """Unique reduced Gröbner basis of the head module, sorted by descending leading term."""
        hr = self.head_rank
        heads = [{k: c for k, c in b.items() if k[0] < hr} for b in self.basis]
        order = sorted(range(len(heads)), key=lambda i: self.mkey(self.leads[i]))
        keep: List[int] = []
        for i in order:
            li = self.leads[i]
            if any(self.leads[k][0] == li[0] and _divides(self.leads[k][1], li[1]) for k in keep):
                continue
            keep = [k for k in keep
                    if not (self.leads[k][0] == li[0] and _divides(li[1], self.leads[k][1]))]
            keep.append(i)
        sub = _Engine(self.ring, hr)
        for i in keep:
            sub.basis.append(heads[i])
            sub.leads.append(self.leads[i])
            sub.by_pos.setdefault(self.leads[i][0], []).append(len(sub.basis) - 1)
        out = []
        for idx, i in enumerate(keep):
            h = heads[i]
            lt = self.leads[i]
            tail = {k: c for k, c in h.items() if k != lt}
            # reduce the non-leading part against all other elements
            saved = sub.by_pos[lt[0]]
            sub.by_pos[lt[0]] = [k for k in saved if k != idx]
            rest = sub.full_reduce(tail)
            sub.by_pos[lt[0]] = saved
            c = h[lt]
            g = {k: a / c for k, a in rest.items()}
            g[lt] = Fraction(1)
            out.append(g)
        out.sort(key=lambda g: self.mkey(self.lead(g)), reverse=True)
        return out


def _run(ring: PolyRing, rank: int, gens: Sequence[Vector], track: bool) -> _Engine:
    eng = _Engine(ring, rank)
    vecs = []
    for i, g in enumerate(gens):
        v = to_vec(g)
        if track:
            v[(rank + i, ring._zero_exp)] = Fraction(1)
        if v:
            vecs.append(v)
    eng.run(vecs, product_criterion=(rank == 1 and not track))
    return eng


class SubmoduleBasis:
    """Submodule of A^rank generated by the given vectors."""

    def __init__(self, ring: PolyRing, rank: int, generators: Sequence[Sequence]):
        self.ring = ring
        self.ambient_rank = rank
        gens = []
        for g in generators:
            g = tuple(ring(p) for p in g)
            if len(g) != rank:
                raise ValueError("generator of length %d in a rank-%d module" % (len(g), rank))
            gens.append(g)
        self.generators: Tuple[Vector, ...] = tuple(gens)
        self._plain: Optional[_Engine] = None
        self._tracked: Optional[_Engine] = None
        self._reduced: Optional[Tuple[Vector, ...]] = None

    @classmethod
    def from_matrix(cls, M: RingMatrix) -> "SubmoduleBasis":
        return cls(M.ring, M.nrows, M.columns())

    def as_matrix(self) -> RingMatrix:
        return RingMatrix.from_columns(self.ring, self.generators, self.ambient_rank)

    def _check(self, v) -> Vector:
        v = tuple(self.ring(p) for p in v)
        if len(v) != self.ambient_rank:
            raise ValueError("vector of length %d in a rank-%d module" % (len(v), self.ambient_rank))
        return v

    def _plain_engine(self) -> _Engine:
        if self._plain is None:
            self._plain = _run(self.ring, self.ambient_rank, self.generators, track=False)
        return self._plain

    def _tracked_engine(self) -> _Engine:
        if self._tracked is None:
            self._tracked = _run(self.ring, self.ambient_rank, self.generators, track=True)
        return self._tracked

    def groebner(self) -> Tuple[Vector, ...]:
        if self._reduced is None:
            eng = self._plain_engine()
            self._reduced = tuple(from_vec(self.ring, g, self.ambient_rank)
                                  for g in eng.reduced_head_basis())
        return self._reduced

    def normal_form(self, v) -> Vector:
        v = self._check(v)
        red = _Engine(self.ring, self.ambient_rank)
        for g in self.groebner():
            gv = to_vec(g)
            red.basis.append(gv)
            red.leads.append(red.lead(gv))
            red.by_pos.setdefault(red.leads[-1][0], []).append(len(red.basis) - 1)
        return from_vec(self.ring, red.full_reduce(to_vec(v)), self.ambient_rank)

    def contains(self, v) -> bool:
        v = self._check(v)
        return not self._plain_engine().top_reduce(to_vec(v))

    def contains_module(self, other: "SubmoduleBasis") -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "SubmoduleBasis") -> bool:
        return self.groebner() == other.groebner()

    def is_zero(self) -> bool:
        return all(all(p.is_zero() for p in g) for g in self.generators)

    def lift(self, v) -> List[Polynomial]:
        """Coefficients c with sum c_i * generators_i == v; raises NotMember."""
        v = self._check(v)
        eng = self._tracked_engine()
        r = eng.top_reduce(to_vec(v))
        if any(pos < self.ambient_rank for pos, _ in r):
            raise NotMember("vector is not in the submodule")
        coeffs = [-c for c in from_vec(self.ring, r, len(self.generators), offset=self.ambient_rank)]
        check = [self.ring.zero()] * self.ambient_rank
        for c, g in zip(coeffs, self.generators):
            if c:
                check = [a + c * b for a, b in zip(check, g)]
        if tuple(check) != v:  # pragma: no cover - guarded invariant
            raise AssertionError("lift failed re-verification")
        return coeffs

    def syzygies(self) -> "SubmoduleBasis":
        eng = self._tracked_engine()
        s = len(self.generators)
        vecs = [from_vec(self.ring, t, s, offset=self.ambient_rank) for t in eng.syz]
        return SubmoduleBasis(self.ring, s, _dedupe(vecs))

    def leading_terms(self) -> List[Term]:
        eng = _Engine(self.ring, self.ambient_rank)
        return [eng.lead(to_vec(g)) for g in self.groebner()]

    def __repr__(self):
        return "SubmoduleBasis(rank=%d, %d generators)" % (self.ambient_rank, len(self.generators))


def _dedupe(vecs: Sequence[Vector]) -> List[Vector]:
    seen = set()
    out = []
    for v in vecs:
        if all(p.is_zero() for p in v) or v in seen:
            continue
        seen.add(v)
        out.append(v)
    return out


class IdealBasis:
    """Ideal of a polynomial ring given by generators; the reduced basis is cached."""

    def __init__(self, ring: PolyRing, generators: Sequence):
        self.ring = ring
        self.generators: Tuple[Polynomial, ...] = tuple(ring(g) for g in generators)
        self._module = SubmoduleBasis(ring, 1, [(g,) for g in self.generators])

    @property
    def module(self) -> SubmoduleBasis:
        return self._module

    def groebner(self) -> Tuple[Polynomial, ...]:
        return tuple(g[0] for g in self._module.groebner())

    @property
    def reduced_gb(self) -> Tuple[Polynomial, ...]:
        return self.groebner()

    def normal_form(self, f) -> Polynomial:
        return self._module.normal_form((f,))[0]

    def contains(self, f) -> bool:
        return self._module.contains((f,))

    def contains_ideal(self, other: "IdealBasis") -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "IdealBasis") -> bool:
        return self.groebner() == other.groebner()

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.groebner()

    def lift(self, f) -> List[Polynomial]:
        return self._module.lift((f,))

    def leading_exponents(self) -> List[Exponent]:
        return [g.leading_exponent() for g in self.groebner()]

    def __repr__(self):
        return "IdealBasis(%s)" % ", ".join(str(g) for g in self.generators)


Basis = Union[IdealBasis, SubmoduleBasis]


def groebner(basis: Basis):
    return basis.groebner()


def normal_form(v, B: Basis):
    return B.normal_form(v)


def lift(v, gens: Sequence, ring: PolyRing = None) -> List[Polynomial]:
    """Express ``v`` in terms of ``gens`` (polynomials or vectors); raises NotMember."""
    gens = list(gens)
    if isinstance(v, Polynomial):
        ring = v.ring
        return IdealBasis(ring, gens).lift(v)
    v = tuple(v)
    ring = ring or v[0].ring
    return SubmoduleBasis(ring, len(v), gens).lift(v)


def syzygies(gens: Sequence[Sequence], ring: PolyRing = None, rank: int = None) -> SubmoduleBasis:
    gens = [tuple(g) for g in gens]
    if ring is None:
        ring = next(p.ring for g in gens for p in g)
    if rank is None:
        rank = len(gens[0]) if gens else 0
    return SubmoduleBasis(ring, rank, gens).syzygies()


def kernel(M: RingMatrix) -> SubmoduleBasis:
    """Generators of ker(M : A^ncols -> A^nrows)."""
    if M.ncols == 0:
        return SubmoduleBasis(M.ring, 0, [])
    if M.nrows == 0:
        R = M.ring
        return SubmoduleBasis(R, M.ncols, RingMatrix.identity(R, M.ncols).columns())
    return SubmoduleBasis.from_matrix(M).syzygies()


def module_quotient(N: SubmoduleBasis, v: Vector) -> IdealBasis:
    """(N : v) = {a : a*v in N}."""
    R = N.ring
    syz = SubmoduleBasis(R, N.ambient_rank, [tuple(v)] + list(N.generators)).syzygies()
    return IdealBasis(R, [s[0] for s in syz.generators if not s[0].is_zero()])


def ideal_quotient(I: IdealBasis, f: Polynomial) -> IdealBasis:
    """(I : f), read off the first coordinates of the syzygies of (f, I)."""
    if f.is_zero():
        return IdealBasis(I.ring, [I.ring.one()])
    return module_quotient(I.module, (f,))


def ideal_intersection(I: IdealBasis, J: IdealBasis) -> IdealBasis:
    R = I.ring
    gens = [(R.one(), R.one())] + [(g, R.zero()) for g in I.generators] + \
        [(R.zero(), g) for g in J.generators]
    syz = SubmoduleBasis(R, 2, gens).syzygies()
    return IdealBasis(R, [s[0] for s in syz.generators if not s[0].is_zero()])


def is_regular_sequence(fs: Sequence[Polynomial]) -> bool:
    fs = list(fs)
    if not fs:
        return True
    R = fs[0].ring
    for k, f in enumerate(fs):
        if f.is_zero():
            return False
        I = IdealBasis(R, fs[:k])
        if not I.contains_ideal(ideal_quotient(I, f)):
            return False
    return not IdealBasis(R, fs).is_unit()


def is_A_sequence(fs: Sequence[Polynomial]) -> bool:
    fs = list(fs)
    if all(f.is_homogeneous()[0] and f.total_degree() > 0 for f in fs):
        return is_regular_sequence(fs)
    if len(fs) > MAX_PERMUTATION_LENGTH:
        raise Unsupported("permutation check capped at length %d" % MAX_PERMUTATION_LENGTH)
    return all(is_regular_sequence(list(p)) for p in permutations(fs))


def dim_quotient(I: IdealBasis) -> int:
    """Krull dimension of A/I from a maximal independent set of the leading-term ideal."""
    R = I.ring
    if I.is_unit():
        return -1
    leads = I.leading_exponents()
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in leads]
    for size in range(R.nvars, -1, -1):
        for U in combinations(range(R.nvars), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return size
    return 0  # pragma: no cover


def grade(I: IdealBasis) -> int:
    """Codimension of I; nvars + 1 is the sentinel for the unit ideal."""
    R = I.ring
    if I.is_zero():
        return 0
    if I.is_unit():
        return R.nvars + 1
    return R.nvars - dim_quotient(I)


def radical_membership(f: Polynomial, I: IdealBasis) -> bool:
    """f in sqrt(I) iff 1 in I + (1 - t*f) over A[t]."""
    if f.is_zero():
        return True
    R = I.ring
    S = R.extend(R.fresh_name("t"))
    t = S.gen(S.nvars - 1)
    gens = [R.embed(g, S) for g in I.generators] + [S.one() - t * R.embed(f, S)]
    return IdealBasis(S, gens).is_unit()


# finitely presented modules

class FPModule:
    """coker(relations : A^r -> A^b); relations has b rows."""

    def __init__(self, ring: PolyRing, generators_rank: int, relations: RingMatrix = None):
        if relations is None:
            relations = RingMatrix.zeros(ring, generators_rank, 0)
        if relations.nrows != generators_rank:
            raise ValueError("relations have %d rows for %d generators" % (relations.nrows, generators_rank))
        self.ring = ring
        self.generators_rank = generators_rank
        self.relations = relations
        self._sub: Optional[SubmoduleBasis] = None

    @classmethod
    def free(cls, ring: PolyRing, b: int) -> "FPModule":
        return cls(ring, b)

    @classmethod
    def coker(cls, M: RingMatrix) -> "FPModule":
        return cls(M.ring, M.nrows, M)

    @property
    def relation_module(self) -> SubmoduleBasis:
        if self._sub is None:
            self._sub = SubmoduleBasis.from_matrix(self.relations)
        return self._sub

    def __repr__(self):
        return "FPModule(%d generators, %d relations)" % (self.generators_rank, self.relations.ncols)


def _unit_vector(ring: PolyRing, n: int, i: int) -> Vector:
    return tuple(ring.one() if k == i else ring.zero() for k in range(n))


def check_hom(M: FPModule, N: FPModule, G: RingMatrix) -> None:
    """Raise IncompatibleMap unless G maps relations of M into relations of N."""
    if G.shape != (N.generators_rank, M.generators_rank):
        raise IncompatibleMap("map of shape %s between modules with %d and %d generators"
                              % (G.shape, M.generators_rank, N.generators_rank))
    if M.relations.ncols == 0:
        return
    image = compose(G, M.relations)
    for j, col in enumerate(image.columns()):
        if not N.relation_module.contains(col):
            raise IncompatibleMap("image of relation %d is not a relation of the target" % j)


def _preimage(N: FPModule, G: RingMatrix) -> List[Vector]:
    """Generators of {v : G v in relations(N)} inside A^(G.ncols)."""
    R = G.ring
    k = G.ncols
    if k == 0:
        return []
    if N.generators_rank == 0:
        return RingMatrix.identity(R, k).columns()
    big = hstack(R, [G, N.relations], nrows=N.generators_rank)
    syz = kernel(big)
    return _dedupe([s[:k] for s in syz.generators])


def fp_kernel_of_hom(M: FPModule, N: FPModule, G: RingMatrix) -> FPModule:
    """Presentation of ker(M -> N): generators K = G^-1(rel N), relations = K^-1(rel M)."""
    check_hom(M, N, G)
    R = M.ring
    K = _preimage(N, G)
    if not K:
        return FPModule(R, 0)
    Kmat = RingMatrix.from_columns(R, K, M.generators_rank)
    rels = _preimage(M, Kmat)
    return FPModule(R, len(K), RingMatrix.from_columns(R, rels, len(K)))


def hom_is_injective(M: FPModule, N: FPModule, G: RingMatrix) -> bool:
    check_hom(M, N, G)
    return all(M.relation_module.contains(k) for k in _preimage(N, G))


def hom_is_surjective(M: FPModule, N: FPModule, G: RingMatrix) -> bool:
    R = G.ring
    b = N.generators_rank
    if b == 0:
        return True
    span = SubmoduleBasis(R, b, list(G.columns()) + list(N.relations.columns()))
    return all(span.contains(_unit_vector(R, b, i)) for i in range(b))


def fp_is_zero(M: FPModule) -> bool:
    R = M.ring
    return all(M.relation_module.contains(_unit_vector(R, M.generators_rank, i))
               for i in range(M.generators_rank))


def fp_iso_check(M: FPModule, N: FPModule, G: RingMatrix) -> bool:
    return hom_is_injective(M, N, G) and hom_is_surjective(M, N, G)


def annihilator(M: FPModule) -> IdealBasis:
    R = M.ring
    if M.generators_rank == 0:
        return IdealBasis(R, [R.one()])
    ann = None
    for i in range(M.generators_rank):
        q = module_quotient(M.relation_module, _unit_vector(R, M.generators_rank, i))
        ann = q if ann is None else ideal_intersection(ann, q)
    return ann


def fitting_ideal(M: FPModule, j: int = 0) -> IdealBasis:
    """Fitt_j(M): minors of size b - j of the relation matrix."""
    from .matrix import minors_ideal

    return minors_ideal(M.relations, M.generators_rank - j)
