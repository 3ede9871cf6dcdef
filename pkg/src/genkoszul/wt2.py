"""Pure weight two modules and their generalized Koszul resolutions.

Given f, g forming an A-sequence and a square matrix P presenting a module
L of weight one on V(f) together with U : A^m -> A^n with U P = f W, the
2-cube

    x_{12} --T--> x_{1}
      |             |
  diag(E_n, P)  diag(f E_n, E_m)
      v             v
    x_{2}  --Ubar--> x_{0}

with Ubar = [[f V, U], [X, E_m]] and T = [[V, W], [X, P]] is a Koszul cube
whose total complex resolves coker([f E_n | U]).  Direction 1 carries the
f-determinants, direction 2 the g-determinants.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .complex import ChainComplex, homology, is_spherical, tot_of_cube
from .cube import Cube, validate
from .gb import (FPModule, IdealBasis, NotMember, SubmoduleBasis, annihilator, fitting_ideal,
                 fp_iso_check, is_A_sequence, kernel, radical_membership)
from .graded import (NotGraded, infer_shifts, minimal_generators, minimal_presentation,
                     projective_dimension, vector_degree)
from .koszul import KoszulCube, KoszulCubeViolation, validate_koszul_cube
from .matrix import RingMatrix, block, block_diag, compose, determinant, hstack
from .ring import DoesNotDivide, NotAssociate, Polynomial, associate_power, exact_div

MAX_POWER = 8


class Membership(enum.Enum):
    MEMBER = "Member"
    NOT_MEMBER = "NotMember"
    UNKNOWN = "Unknown"


class Wt2Error(ArithmeticError):
    pass


class Claim1Violation(Wt2Error):
    pass


class Unsolvable(Wt2Error):
    pass


class CannotCertify(Wt2Error):
    def __init__(self, stage: str, reason: str):
        super().__init__("%s: %s" % (stage, reason))
        self.stage = stage
        self.reason = reason


@dataclass
class WtResult:
    status: Membership
    supported: bool
    projective_dimension: Optional[int] = None
    note: str = ""


def wt_membership(M: FPModule, fs: Sequence[Polynomial], require_homogeneous: bool = False,
                  certificate: "Wt2Certificate" = None) -> WtResult:
    """Is M of projective dimension <= len(fs) and supported on V(fs)?

    The support test is fs inside the radical of Fitt_0(M).  Projective
    dimension is only decided for graded input (minimal resolution) or when
    a verified certificate is supplied.
    """
    fs = list(fs)
    r = len(fs)
    fitt = fitting_ideal(M, 0)
    supported = all(radical_membership(f, fitt) for f in fs)
    if not supported:
        return WtResult(Membership.NOT_MEMBER, False, note="support is not contained in V(fs)")
    try:
        pd = projective_dimension(M)
    except NotGraded:
        if certificate is not None and certificate.verified:
            return WtResult(Membership.MEMBER, True, None, note="pd <= 2 from certificate")
        note = "inhomogeneous input; projective dimension not decided"
        if require_homogeneous:
            raise
        return WtResult(Membership.UNKNOWN, True, note=note)
    if pd <= r:
        return WtResult(Membership.MEMBER, True, pd)
    return WtResult(Membership.NOT_MEMBER, True, pd, note="projective dimension %d > %d" % (pd, r))


def claim1_check(P: RingMatrix, f: Polynomial) -> Tuple[int, Fraction]:
    """det P = unit * f^alpha; returns (alpha, unit)."""
    if not P.is_square():
        raise Claim1Violation("P must be square, got %s" % (P.shape,))
    d = determinant(P)
    if d.is_zero():
        raise Claim1Violation("det P = 0")
    try:
        return associate_power(d, f)
    except NotAssociate:
        raise Claim1Violation("det P = %s is not a unit times a power of %s" % (d, f))


def solve_claim2(f: Polynomial, g: Polynomial, U: RingMatrix) -> Tuple[RingMatrix, RingMatrix]:
    """X, V with U X = g E_n + f V, lifting g e_k over the columns of U and f e_1..f e_n."""
    R = f.ring
    n, m = U.shape
    fE = RingMatrix.identity(R, n).scale(f)
    gens = list(U.columns()) + list(fE.columns())
    span = SubmoduleBasis(R, n, gens)
    xs, vs = [], []
    for k in range(n):
        target = tuple(g if i == k else R.zero() for i in range(n))
        try:
            c = span.lift(target)
        except NotMember:
            raise Unsolvable("g e_%d is not in im U + f A^n: g does not kill coker [f E | U]" % (k + 1))
        xs.append(tuple(c[:m]))
        vs.append(tuple(-a for a in c[m:]))
    X = RingMatrix.from_columns(R, xs, m) if m else RingMatrix.zeros(R, 0, n)
    V = RingMatrix.from_columns(R, vs, n)
    lhs = compose(U, X)
    rhs = RingMatrix.identity(R, n).scale(g) + V.scale(f)
    if lhs != rhs:  # pragma: no cover - guarded invariant
        raise AssertionError("U X != g E + f V")
    return X, V


def assemble_ubar(f: Polynomial, V: RingMatrix, U: RingMatrix, X: RingMatrix, m: int,
                  g: Polynomial = None) -> RingMatrix:
    """Ubar = [[f V, U], [X, E_m]]; with g given, det Ubar = (-g)^n is verified exactly."""
    R = f.ring
    n = V.nrows
    if V.shape != (n, n) or U.shape != (n, m) or X.shape != (m, n):
        raise Wt2Error("inconsistent shapes V %s, U %s, X %s for m = %d" % (V.shape, U.shape, X.shape, m))
    ubar = block([[V.scale(f), U], [X, RingMatrix.identity(R, m)]])
    if g is not None:
        det = determinant(ubar)
        want = (-g) ** n
        if det != want:
            raise Wt2Error("det Ubar = %s, expected (-g)^%d = %s" % (det, n, want))
    return ubar


def reduction_identity(g: Polynomial, U: RingMatrix, X: RingMatrix, ubar: RingMatrix) -> bool:
    """[[E, -U], [0, E]] Ubar [[E, 0], [-X, E]] == diag(-g E_n, E_m)."""
    R = g.ring
    n, m = U.shape
    En, Em = RingMatrix.identity(R, n), RingMatrix.identity(R, m)
    left = block([[En, -U], [RingMatrix.zeros(R, m, n), Em]])
    right = block([[En, RingMatrix.zeros(R, n, m)], [-X, Em]])
    return compose(compose(left, ubar), right) == block_diag(R, [En.scale(-g), Em])


@dataclass
class WeightInput:
    f: Polynomial
    g: Polynomial
    U: RingMatrix
    P: RingMatrix


@dataclass
class Check:
    identity: str
    status: bool
    witness: str = ""


@dataclass
class Wt2Certificate:
    cube: KoszulCube
    module: FPModule
    comparison: RingMatrix
    exponents: Tuple[int, int]
    f: Polynomial
    g: Polynomial
    U: RingMatrix
    P: RingMatrix
    X: RingMatrix
    V: RingMatrix
    W: RingMatrix
    ubar: RingMatrix
    top: RingMatrix
    complex: ChainComplex
    checks: List[Check] = field(default_factory=list)
    shape: Dict[str, object] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return all(c.status for c in self.checks)


def build_wt2_cube(inp: WeightInput, sequence: Sequence[Polynomial] = None) -> Wt2Certificate:
    """Assemble the Koszul 2-cube from (f, g, U, P) and verify every identity.

    ``sequence`` is the A-sequence the cube is validated against (defaults
    to (f, g)); it lets callers validate against (f, g) after replacing them
    by powers.
    """
    f, g, U, P = inp.f, inp.g, inp.U, inp.P
    R = f.ring
    n, m = U.shape
    seq = tuple(sequence) if sequence is not None else (f, g)
    checks: List[Check] = []

    def record(identity, status, witness=""):
        checks.append(Check(identity, bool(status), witness))
        if not status:
            raise Wt2Error("%s fails%s" % (identity, (": " + witness) if witness else ""))

    record("(f, g) is an A-sequence", is_A_sequence([f, g]))
    if P.shape != (m, m):
        record("P is %dx%d" % (m, m), False, "P has shape %s" % (P.shape,))
    UP = compose(U, P)
    try:
        W = UP.map_entries(lambda e: exact_div(e, f))
    except DoesNotDivide:
        record("U P = f W", False, "an entry of U P is not divisible by f")
    record("U P = f W", W.scale(f) == UP)
    try:
        alpha, unit = claim1_check(P, f)
    except Claim1Violation as exc:
        record("det P = unit * f^alpha", False, str(exc))
    record("det P = unit * f^alpha", True, "alpha = %d, unit = %s" % (alpha, unit))
    X, V = solve_claim2(f, g, U)
    record("U X = g E_n + f V", compose(U, X) == RingMatrix.identity(R, n).scale(g) + V.scale(f))
    ubar = assemble_ubar(f, V, U, X, m)
    det_ubar = determinant(ubar)
    record("det Ubar = (-g)^n", det_ubar == (-g) ** n, "det Ubar = %s" % det_ubar)
    record("[[E,-U],[0,E]] Ubar [[E,0],[-X,E]] = diag(-g E_n, E_m)", reduction_identity(g, U, X, ubar))

    right = block_diag(R, [RingMatrix.identity(R, n).scale(f), RingMatrix.identity(R, m)])
    left = block_diag(R, [RingMatrix.identity(R, n), P])
    # top map: divide the first n rows of Ubar . left by f
    prod = compose(ubar, left)
    top_rows = [[exact_div(e, f) for e in row] for row in prod.rows[:n]] + [list(r) for r in prod.rows[n:]]
    top = RingMatrix(R, top_rows, ncols=n + m)
    record("T = [[V, W], [X, P]]", top == block([[V, W], [X, P]]))
    record("diag(f E, E) T = Ubar diag(E, P)", compose(right, top) == prod)

    N = n + m
    ranks = {0: N, 1: N, 2: N, 3: N}
    boundary = {(1, 1): right, (3, 1): left, (2, 2): ubar, (3, 2): top}
    x = Cube(R, (1, 2), ranks, boundary)
    rep = validate(x)
    record("cube squares commute", rep.ok)
    try:
        kc = validate_koszul_cube(x, seq)
    except KoszulCubeViolation as exc:
        record("Koszul cube conditions", False, str(exc))
    record("Koszul cube conditions", True, "exponents %s" % (kc.exponents,))

    module = FPModule(R, n, hstack(R, [RingMatrix.identity(R, n).scale(f), U], nrows=n))
    c = tot_of_cube(x)
    h0 = homology(c, 0)
    comparison = hstack(R, [RingMatrix.identity(R, n), RingMatrix.zeros(R, n, m)], nrows=n)
    record("H_0(Tot x) -> coker [f E | U] is an isomorphism", fp_iso_check(h0, module, comparison))
    record("Tot x is 0-spherical", is_spherical(c, 0))
    return Wt2Certificate(kc, module, comparison, kc.exponents, f, g, U, P, X, V, W, ubar, top, c,
                          checks, {"f": str(f), "g": str(g), "n": n, "m": m, "verified": False})


def _smallest_power(f: Polynomial, ann: IdealBasis) -> Optional[int]:
    p = f
    for a in range(1, MAX_POWER + 1):
        if ann.contains(p):
            return a
        p = p * f
    return None


def resolve_wt2(M: FPModule, f: Polynomial, g: Polynomial) -> Wt2Certificate:
    """Construct a Koszul cube over (f, g) whose H_0(Tot) is isomorphic to M (graded input).

    Raises CannotCertify naming the failing stage.
    """
    R = M.ring
    for name, h in (("f", f), ("g", g)):
        if not h.is_homogeneous()[0] or h.total_degree() <= 0:
            raise CannotCertify("input", "%s must be homogeneous of positive degree" % name)
    try:
        shifts, _ = infer_shifts(M.relations)
    except NotGraded as exc:
        raise CannotCertify("input", "module presentation is not graded (%s)" % exc)
    if not is_A_sequence([f, g]):
        raise CannotCertify("input", "(f, g) is not an A-sequence")

    ann = annihilator(M)
    a = _smallest_power(f, ann)
    b = _smallest_power(g, ann)
    if a is None or b is None:
        raise CannotCertify("annihilation", "no power <= %d of %s kills M" % (MAX_POWER, "f" if a is None else "g"))
    F, G = f ** a, g ** b

    Mmin, inc, sh = minimal_presentation(M, shifts)
    n = Mmin.generators_rank
    if n == 0:
        raise CannotCertify("input", "M is the zero module")
    rel_cols = Mmin.relations.columns()
    fE_cols = RingMatrix.identity(R, n).scale(F).columns()
    keep = minimal_generators(R, n, rel_cols, sh, base=fE_cols)
    m = len(keep)
    U = RingMatrix.from_columns(R, [rel_cols[k] for k in keep], n) if m else RingMatrix.zeros(R, n, 0)
    # L = im U in (A/F)^n; its relations are {c : U c in F A^n}
    if m:
        u_deg = [vector_degree(c, sh) for c in U.columns()]
        K = [s[:m] for s in kernel(hstack(R, [U, RingMatrix.identity(R, n).scale(F)], nrows=n)).generators]
        K = [v for v in K if any(not p.is_zero() for p in v)]
        kk = minimal_generators(R, m, K, u_deg)
        P = RingMatrix.from_columns(R, [K[k] for k in kk], m)
    else:
        P = RingMatrix.zeros(R, 0, 0)
    if P.ncols > 0 and not kernel(P).is_zero():
        raise CannotCertify("pd bound", "the kernel L has a minimal resolution of length > 1")
    if P.ncols != m:
        raise CannotCertify("square-matrix mismatch", "L needs %d relations on %d generators" % (P.ncols, m))
    try:
        cert = build_wt2_cube(WeightInput(F, G, U, P), sequence=(f, g))
    except Unsolvable as exc:
        raise CannotCertify("annihilation", str(exc))
    except Wt2Error as exc:
        raise CannotCertify("construction", str(exc))
    ok = fp_iso_check(cert.module, M, inc)
    cert.checks.append(Check("coker [f E | U] -> M is an isomorphism", ok))
    if not ok:
        raise CannotCertify("comparison", "constructed module is not isomorphic to M")
    cert.shape.update({"f_power": a, "g_power": b})
    cert.comparison_to_input = compose(inc, cert.comparison)
    return cert
