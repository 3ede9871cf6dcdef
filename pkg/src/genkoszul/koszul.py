"""Classical and generalized Koszul complexes, Koszul cubes, and the
Buchsbaum-Eisenbud exactness test."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .complex import ChainComplex, is_spherical, tot_of_cube
from .cube import Cube, bitstring, is_admissible, members, subsets, validate
from .gb import grade, is_A_sequence, is_regular_sequence, radical_membership
from .matrix import RingMatrix, determinant, is_injective, minors_ideal
from .ring import NotAssociate, Polynomial, PolyRing, associate_power


class KoszulError(ValueError):
    pass


class HypothesisError(KoszulError):
    pass


def classical_koszul(fs: Sequence[Polynomial]) -> ChainComplex:
    """Kos(f): degree k has basis e_I for I of size k in lexicographic order,
    d(e_I) = sum_i (-1)^(k - i) f_(I_i) e_(I minus I_i)."""
    fs = list(fs)
    n = len(fs)
    if n < 1:
        raise ValueError("need at least one element")
    R = fs[0].ring
    bases = {k: list(combinations(range(n), k)) for k in range(n + 1)}
    modules = {k: len(b) for k, b in bases.items()}
    boundaries = {}
    for k in range(1, n + 1):
        index = {I: r for r, I in enumerate(bases[k - 1])}
        rows = [[R.zero()] * len(bases[k]) for _ in bases[k - 1]]
        for c, I in enumerate(bases[k]):
            for pos, p in enumerate(I, start=1):
                J = I[:pos - 1] + I[pos:]
                term = fs[p]
                rows[index[J]][c] = term if (k - pos) % 2 == 0 else -term
        boundaries[k] = RingMatrix(R, rows, ncols=len(bases[k]))
    return ChainComplex(R, modules, boundaries)


@dataclass
class BoundaryFamily:
    """Endomorphisms d_S^j of A^m for every S in P(1..n) and j in S, with det d_S^j = f_j."""

    ring: PolyRing
    n: int
    m: int
    maps: Dict[Tuple[int, int], RingMatrix]
    targets: Tuple[Polynomial, ...]

    def __post_init__(self):
        self.targets = tuple(self.targets)
        if len(self.targets) != self.n:
            raise KoszulError("need %d targets, got %d" % (self.n, len(self.targets)))

    @classmethod
    def constant(cls, ring: PolyRing, mats: Sequence[RingMatrix], targets: Sequence[Polynomial]) -> "BoundaryFamily":
        """Family with d_S^j = mats[j-1] for every S."""
        n = len(mats)
        m = mats[0].nrows if mats else 0
        full = (1 << n) - 1
        maps = {(S, j): mats[j - 1] for S in subsets(full) for j in members(S)}
        return cls(ring, n, m, maps, tuple(targets))

    def determinant_violations(self) -> List[str]:
        bad = []
        dims = tuple(range(1, self.n + 1))
        for S in subsets((1 << self.n) - 1):
            for j in members(S):
                M = self.maps.get((S, j))
                if M is None:
                    bad.append("missing d^%d at %s" % (j, bitstring(S, dims)))
                    continue
                if M.shape != (self.m, self.m):
                    bad.append("d^%d at %s has shape %s" % (j, bitstring(S, dims), M.shape))
                    continue
                if determinant(M) != self.targets[j - 1]:
                    bad.append("det d^%d at %s = %s, expected %s"
                               % (j, bitstring(S, dims), determinant(M), self.targets[j - 1]))
        return bad

    def cube(self) -> Cube:
        full = (1 << self.n) - 1
        return Cube(self.ring, tuple(range(1, self.n + 1)), {S: self.m for S in subsets(full)},
                    dict(self.maps))


def generalized_koszul(d: BoundaryFamily) -> Tuple[Cube, ChainComplex]:
    """The cube of the family and its signed totalization Kos(d)."""
    bad = d.determinant_violations()
    if bad:
        raise KoszulError("determinant condition fails: " + "; ".join(bad))
    x = d.cube()
    report = validate(x)
    if not report.ok:
        raise KoszulError("family does not commute: " + report.violation.describe(x.dims))
    return x, tot_of_cube(x)


@dataclass
class KoszulCube:
    cube: Cube
    sequence: Tuple[Polynomial, ...]
    exponents: Tuple[int, ...]
    rank: int
    units: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)

    def det(self, j: int) -> Polynomial:
        """j-th determinant: det d^j at {j}."""
        return determinant(self.cube.d(1 << (j - 1), j))


class KoszulCubeViolation(KoszulError):
    pass


def validate_koszul_cube(x: Cube, fs: Sequence[Polynomial], check_sequence: bool = True) -> KoszulCube:
    """Constant rank, det d_S^s = unit * f_s^(m_s) with m_s >= 1 independent of S, A-sequence."""
    fs = tuple(fs)
    report = validate(x)
    if not report.ok:
        raise KoszulCubeViolation("not a cube: " + report.violation.describe(x.dims))
    if len(fs) != len(x.dims):
        raise KoszulCubeViolation("%d elements for %d directions" % (len(fs), len(x.dims)))
    if not x.is_constant_rank():
        raise KoszulCubeViolation("vertex ranks are not constant")
    rank = x.ranks[0]
    exponents = []
    units = {}
    for s, f in zip(x.dims, fs):
        exp = None
        for T in x.vertices():
            if not T & (1 << (s - 1)):
                continue
            det = determinant(x.d(T, s))
            if det.is_zero():
                raise KoszulCubeViolation("det d^%d at %s is zero" % (s, bitstring(T, x.dims)))
            try:
                a, c = associate_power(det, f)
            except NotAssociate:
                raise KoszulCubeViolation("det d^%d at %s = %s is not a unit times a power of %s"
                                          % (s, bitstring(T, x.dims), det, f))
            if exp is None:
                exp = a
            elif a != exp:
                raise KoszulCubeViolation("direction %d exponents differ (%d vs %d)" % (s, exp, a))
            units[(T, s)] = c
        if exp is None or exp < 1:
            raise KoszulCubeViolation("direction %d needs a positive exponent" % s)
        exponents.append(exp)
    if check_sequence and not is_A_sequence(list(fs)):
        raise KoszulCubeViolation("sequence is not an A-sequence")
    return KoszulCube(x, fs, tuple(exponents), rank, units)


@dataclass
class BEReport:
    passed: bool
    rows: List[Tuple[int, int, int]]  # (i, r_i, grade I_{r_i}(phi_i))

    def __bool__(self):
        return self.passed


def be_check(c: ChainComplex) -> BEReport:
    """grade I_{r_i}(phi_i) >= i for i = 1..s, r_i = sum_{j>=i} (-1)^(j-i) rank F_j."""
    problem = c.verify()
    if problem:
        raise KoszulError("not a complex: " + problem)
    if c.modules and min(c.modules) < 0:
        raise KoszulError("complex must live in degrees >= 0")
    s = max(c.modules) if c.modules else 0
    rows = []
    ok = True
    R = c.ring
    for i in range(1, s + 1):
        r = sum((-1) ** (j - i) * c.rank(j) for j in range(i, s + 1))
        if r <= 0:
            g = R.nvars + 1
        else:
            g = grade(minors_ideal(c.d(i), r))
        rows.append((i, r, g))
        if g < i:
            ok = False
    return BEReport(ok, rows)


@dataclass
class ResolCriterionReport:
    regular: bool
    be: Optional[bool] = None
    spherical: Optional[bool] = None
    be_rows: List[Tuple[int, int, int]] = field(default_factory=list)
    note: str = ""

    @property
    def agree(self) -> bool:
        return self.be == self.spherical

    @property
    def ok(self) -> bool:
        return self.regular and bool(self.be) and bool(self.spherical)


def resolcriterion_check(d: BoundaryFamily, force: bool = False) -> ResolCriterionReport:
    """Regular targets should give a 0-spherical Kos(d); checked by BE and by homology.

    With ``force`` both checkers run even when the targets are not regular.
    """
    regular = is_regular_sequence(list(d.targets))
    rep = ResolCriterionReport(regular)
    if not regular and not force:
        rep.note = "targets are not a regular sequence; claim not applicable"
        return rep
    _, c = generalized_koszul(d)
    be = be_check(c)
    rep.be = be.passed
    rep.be_rows = be.rows
    rep.spherical = is_spherical(c, 0)
    if rep.be != rep.spherical:
        rep.note = "BE test and homology disagree"
    return rep


def admcriterion_check(d: BoundaryFamily) -> bool:
    if not is_A_sequence(list(d.targets)):
        raise HypothesisError("targets are not an A-sequence")
    x, _ = generalized_koszul(d)
    return is_admissible(x).admissible


@dataclass
class BoundaryConditionReport:
    applicable: bool
    exponent: Optional[int] = None
    unit: Optional[Fraction] = None
    injective: Optional[bool] = None
    supported: Optional[bool] = None
    pd_at_most_one: Optional[bool] = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return bool(self.applicable and self.injective and self.supported and self.pd_at_most_one)


def boundary_condition_check(psi: RingMatrix, f: Polynomial) -> BoundaryConditionReport:
    """det psi = unit * f^a implies psi injective and coker psi of weight one on V(f)."""
    if not psi.is_square():
        raise ValueError("psi must be square")
    det = determinant(psi)
    try:
        if det.is_zero():
            raise NotAssociate("zero determinant")
        a, c = associate_power(det, f)
    except NotAssociate:
        return BoundaryConditionReport(False, note="det psi = %s is not a unit times a power of %s; "
                                                   "implication (1) => (2) not applicable" % (det, f))
    rep = BoundaryConditionReport(True, a, c)
    rep.injective = is_injective(psi)
    rep.supported = radical_membership(f, minors_ideal(psi, psi.nrows))
    # 0 -> A^n -> A^n -> coker -> 0 is a free resolution once psi is injective
    rep.pd_at_most_one = rep.injective
    return rep
