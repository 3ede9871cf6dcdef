"""Command-line front end.

Documents are JSON objects:

    {"ring": {"variables": ["x", "y"], "order": "degrevlex"},
     "polynomials": {"f": "x"},
     "sequences": {"s": ["x", "y"]},
     "matrices": {"U": [["y"]]},
     "modules": {"M": {"generators": 1, "relations": [["x", "y"]]}},
     "cubes": {"c": {"dims": [1, 2], "ranks": {"00": 1, ...},
                     "boundaries": {"10:1": [["x"]], ...}}},
     "families": {"d": {"n": 2, "m": 1, "targets": ["x", "y"], "maps": {"10:1": [["x"]], ...}}},
     "complexes": {"K": {"modules": {"0": 1, "1": 2}, "boundaries": {"1": [["x", "y"]]}}},
     "params": {"degree": 1}}

Subsets are bitstrings, leftmost character = first direction.  With
``--json`` the output is the normalized document extended with ``command``,
``result`` and ``checks``; feeding it to ``verify`` re-runs the command.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from itertools import permutations
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .complex import ChainComplex, ComplexError, homology, tot_of_cube
from .cube import (Cube, CubeError, bitstring, coincidence_check, h0_iterated, is_admissible, members,
                   parse_bitstring, subsets, validate)
from .gb import (FPModule, IdealBasis, SubmoduleBasis, Unsupported, fp_is_zero, fp_iso_check, ideal_quotient,
                 is_A_sequence, is_regular_sequence)
from .koszul import (BoundaryFamily, KoszulCubeViolation, KoszulError, be_check, boundary_condition_check,
                     classical_koszul, resolcriterion_check, validate_koszul_cube)
from .matrix import DimensionMismatch, RingMatrix, compose
from .ring import ParseError, Polynomial, PolyRing, RingMismatch
from .wt2 import CannotCertify, Membership, resolve_wt2, wt_membership

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# ---------------------------------------------------------------- documents

def _mat_to_json(M: RingMatrix) -> Any:
    if M.nrows == 0:
        return {"rows": 0, "cols": M.ncols}
    return M.to_strings()


class Document:
    def __init__(self, raw: Dict[str, Any]):
        if not isinstance(raw, dict):
            raise InputError("document must be a JSON object")
        self.raw = raw
        ring = raw.get("ring")
        if not isinstance(ring, dict) or "variables" not in ring:
            raise InputError("document needs ring.variables")
        try:
            self.ring = PolyRing(ring["variables"], ring.get("order", "degrevlex"))
        except ValueError as exc:
            raise InputError(str(exc))
        self.params = dict(raw.get("params", {}))
        self.polynomials = {k: self.poly(v, named=False) for k, v in self._section("polynomials").items()}
        self.sequences = {k: [self.poly(p) for p in v] for k, v in self._section("sequences").items()}
        self.matrices = {k: self.matrix(v) for k, v in self._section("matrices").items()}
        self.modules = {k: self.module(v) for k, v in self._section("modules").items()}
        self.cubes = {k: self.cube(v) for k, v in self._section("cubes").items()}
        self.families = {k: self.family(v) for k, v in self._section("families").items()}
        self.complexes = {k: self.complex(v) for k, v in self._section("complexes").items()}

    def _section(self, name: str) -> Dict[str, Any]:
        sec = self.raw.get(name, {})
        if not isinstance(sec, dict):
            raise InputError("section %r must be an object" % name)
        return sec

    # parsing helpers
    def poly(self, text, named: bool = True) -> Polynomial:
        if named and isinstance(text, str) and text in getattr(self, "polynomials", {}):
            return self.polynomials[text]
        if isinstance(text, int) and not isinstance(text, bool):
            return self.ring.const(text)
        try:
            return self.ring.parse(text)
        except ParseError as exc:
            raise InputError("cannot parse polynomial %r: %s" % (text, exc))

    def matrix(self, v) -> RingMatrix:
        if isinstance(v, str):
            if v not in self.matrices:
                raise InputError("unknown matrix %r" % v)
            return self.matrices[v]
        if isinstance(v, dict):
            if v.get("rows") == 0:
                return RingMatrix.zeros(self.ring, 0, int(v.get("cols", 0)))
            raise InputError("matrix objects must be {'rows': 0, 'cols': c}")
        if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
            raise InputError("matrix must be a list of rows")
        widths = {len(r) for r in v}
        if len(widths) > 1:
            raise InputError("ragged matrix rows")
        return RingMatrix(self.ring, [[self.poly(e) for e in r] for r in v], ncols=widths.pop() if widths else 0)

    def module(self, v) -> FPModule:
        if not isinstance(v, dict) or "generators" not in v:
            raise InputError("module needs 'generators'")
        b = int(v["generators"])
        rel = v.get("relations")
        if rel is None:
            return FPModule.free(self.ring, b)
        M = self.matrix(rel)
        if M.nrows == 0 and b:
            M = RingMatrix.zeros(self.ring, b, 0)
        if M.nrows != b:
            raise InputError("relations have %d rows for %d generators" % (M.nrows, b))
        return FPModule(self.ring, b, M)

    def _keyed(self, key: str, dims: Sequence[int]) -> Tuple[int, int]:
        try:
            bits, k = key.split(":")
            return parse_bitstring(bits, dims), int(k)
        except ValueError as exc:
            raise InputError("bad boundary key %r: %s" % (key, exc))

    def cube(self, v) -> Cube:
        try:
            dims = tuple(v["dims"])
            ranks = {parse_bitstring(b, dims): int(r) for b, r in v["ranks"].items()}
            boundary = {self._keyed(k, dims): self.matrix(M) for k, M in v["boundaries"].items()}
            return Cube(self.ring, dims, ranks, boundary)
        except (KeyError, TypeError) as exc:
            raise InputError("malformed cube: %s" % exc)
        except (CubeError, ValueError) as exc:
            raise InputError("malformed cube: %s" % exc)

    def family(self, v) -> BoundaryFamily:
        try:
            n = int(v["n"])
            dims = tuple(range(1, n + 1))
            maps = {self._keyed(k, dims): self.matrix(M) for k, M in v["maps"].items()}
            targets = [self.poly(t) for t in v["targets"]]
            return BoundaryFamily(self.ring, n, int(v["m"]), maps, targets)
        except (KeyError, TypeError, KoszulError) as exc:
            raise InputError("malformed family: %s" % exc)

    def complex(self, v) -> ChainComplex:
        try:
            modules = {int(k): int(r) for k, r in v["modules"].items()}
            bds = {int(k): self.matrix(M) for k, M in v.get("boundaries", {}).items()}
            return ChainComplex(self.ring, modules, bds)
        except (KeyError, TypeError, ComplexError) as exc:
            raise InputError("malformed complex: %s" % exc)

    # lookup
    def pick(self, section: str, name: Optional[str]):
        sec = getattr(self, section)
        if name is not None:
            if name not in sec:
                raise InputError("no %s named %r" % (section[:-1], name))
            return sec[name]
        if not sec:
            raise InputError("document has no %s" % section)
        return sec[sorted(sec)[0]]

    def normalized(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"ring": {"variables": list(self.ring.variables), "order": self.ring.order}}
        if self.polynomials:
            out["polynomials"] = {k: str(p) for k, p in self.polynomials.items()}
        if self.sequences:
            out["sequences"] = {k: [str(p) for p in s] for k, s in self.sequences.items()}
        if self.matrices:
            out["matrices"] = {k: _mat_to_json(M) for k, M in self.matrices.items()}
        if self.modules:
            out["modules"] = {k: module_to_json(M) for k, M in self.modules.items()}
        if self.cubes:
            out["cubes"] = {k: cube_to_json(x) for k, x in self.cubes.items()}
        if self.families:
            out["families"] = {k: family_to_json(d) for k, d in self.families.items()}
        if self.complexes:
            out["complexes"] = {k: complex_to_json(c) for k, c in self.complexes.items()}
        if self.params:
            out["params"] = self.params
        return out


def module_to_json(M: FPModule) -> Dict[str, Any]:
    return {"generators": M.generators_rank, "relations": M.relations.to_strings()}


def cube_to_json(x: Cube) -> Dict[str, Any]:
    return {"dims": list(x.dims),
            "ranks": {bitstring(T, x.dims): x.ranks[T] for T in x.vertices()},
            "boundaries": {"%s:%d" % (bitstring(T, x.dims), k): _mat_to_json(x.d(T, k))
                           for T in x.vertices() for k in members(T)}}


def family_to_json(d: BoundaryFamily) -> Dict[str, Any]:
    dims = tuple(range(1, d.n + 1))
    return {"n": d.n, "m": d.m, "targets": [str(t) for t in d.targets],
            "maps": {"%s:%d" % (bitstring(S, dims), j): _mat_to_json(M) for (S, j), M in sorted(d.maps.items())}}


def complex_to_json(c: ChainComplex) -> Dict[str, Any]:
    return {"modules": {str(n): c.rank(n) for n in c.degrees},
            "boundaries": {str(n): _mat_to_json(c.d(n)) for n in c.degrees
                           if c.rank(n) and c.rank(n - 1)}}


# ---------------------------------------------------------------- reports

class Report:
    def __init__(self):
        self.checks: List[Dict[str, Any]] = []
        self.result: Dict[str, Any] = {}

    def check(self, identity: str, status: bool, witness: str = "") -> bool:
        self.checks.append({"identity": identity, "status": "pass" if status else "fail", "witness": witness})
        return status

    @property
    def ok(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)


def _complex_checks(rep: Report, c: ChainComplex) -> None:
    for n in c.degrees:
        if c.rank(n - 1) and c.rank(n + 1):
            rep.check("d_%d d_%d = 0" % (n, n + 1), compose(c.d(n), c.d(n + 1)).is_zero())


def _source_complex(doc: Document, name: Optional[str]) -> Tuple[str, ChainComplex]:
    """A complex from the named object: complex, family (Kos(d)), cube (Tot) or sequence (Kos(f))."""
    for section, build in (("complexes", lambda c: c),
                           ("families", lambda d: tot_of_cube(d.cube())),
                           ("cubes", tot_of_cube),
                           ("sequences", classical_koszul)):
        sec = getattr(doc, section)
        if (name is None and sec) or (name is not None and name in sec):
            obj = doc.pick(section, name)
            try:
                return section, build(obj)
            except (ComplexError, ValueError) as exc:
                raise InputError("cannot build a complex from %s: %s" % (section[:-1], exc))
    raise InputError("no complex, family, cube or sequence%s" % ("" if name is None else " named %r" % name))


def _cube_or_family(doc: Document, name: Optional[str]) -> Tuple[Cube, Optional[BoundaryFamily]]:
    if name is not None and name in doc.families or (name is None and doc.families and not doc.cubes):
        d = doc.pick("families", name)
        return d.cube(), d
    return doc.pick("cubes", name), None


def _poly_arg(doc: Document, text: Optional[str], key: str) -> Polynomial:
    if text is None:
        text = doc.params.get(key)
    if text is None:
        raise InputError("missing --%s" % key)
    return doc.poly(text)


# ---------------------------------------------------------------- commands

def cmd_gb(doc: Document, args, rep: Report) -> None:
    if args.name is not None and args.name in doc.matrices or (args.name is None and doc.matrices and not doc.sequences):
        M = doc.pick("matrices", args.name)
        N = SubmoduleBasis.from_matrix(M)
        G = N.groebner()
        rep.result["basis"] = [[str(p) for p in g] for g in G]
        H = SubmoduleBasis(doc.ring, M.nrows, G)
        rep.check("input columns reduce to 0 modulo the basis", all(H.contains(c) for c in M.columns()))
        rep.check("basis lies in the input module", all(N.contains(g) for g in G))
        return
    fs = doc.pick("sequences", args.name)
    I = IdealBasis(doc.ring, fs)
    G = I.reduced_gb
    rep.result["basis"] = [str(g) for g in G]
    H = IdealBasis(doc.ring, G)
    rep.check("input generators reduce to 0 modulo the basis", all(H.contains(f) for f in fs))
    rep.check("basis lies in the input ideal", all(I.contains(g) for g in G))


def _regseq_checks(rep: Report, fs: Sequence[Polynomial], label: str = "") -> bool:
    R = fs[0].ring
    ok = True
    for k, f in enumerate(fs):
        I = IdealBasis(R, fs[:k])
        nzd = ideal_quotient(I, f).equals(I)
        prefix = "(%s) " % label if label else ""
        mod = "(0)" if k == 0 else "(f_1)" if k == 1 else "(f_1..f_%d)" % k
        ok &= rep.check("%sf_%d is a non-zero-divisor modulo %s" % (prefix, k + 1, mod), nzd,
                        "(I : f) = I" if nzd else "(I : f) strictly contains I")
        if not nzd:
            return False
    proper = not IdealBasis(R, fs).is_unit()
    return rep.check("%s(f_1..f_%d) is a proper ideal" % ("(%s) " % label if label else "", len(fs)), proper) and ok


def cmd_regseq(doc: Document, args, rep: Report) -> None:
    fs = doc.pick("sequences", args.name)
    if not fs:
        raise InputError("empty sequence")
    rep.result["sequence"] = [str(f) for f in fs]
    rep.result["regular"] = _regseq_checks(rep, fs)


def cmd_aseq(doc: Document, args, rep: Report) -> None:
    fs = doc.pick("sequences", args.name)
    if not fs:
        raise InputError("empty sequence")
    rep.result["sequence"] = [str(f) for f in fs]
    try:
        a = is_A_sequence(fs)
    except Unsupported as exc:
        raise InputError(str(exc))
    if all(f.is_homogeneous()[0] and f.total_degree() > 0 for f in fs):
        ok = _regseq_checks(rep, fs)
        rep.check("homogeneous regular sequences are permutable", True, "graded case")
    else:
        ok = True
        for perm in permutations(range(len(fs))):
            label = ",".join(str(i + 1) for i in perm)
            ok &= _regseq_checks(rep, [fs[i] for i in perm], label)
    rep.check("A-sequence", a and ok)
    rep.result["A_sequence"] = a


def cmd_koszul(doc: Document, args, rep: Report) -> None:
    fs = doc.pick("sequences", args.name)
    if not fs:
        raise InputError("empty sequence")
    c = classical_koszul(fs)
    rep.result["complex"] = complex_to_json(c)
    _complex_checks(rep, c)


def cmd_gkoszul(doc: Document, args, rep: Report) -> None:
    d = doc.pick("families", args.name)
    dims = tuple(range(1, d.n + 1))
    bad = d.determinant_violations()
    for S in subsets((1 << d.n) - 1):
        for j in members(S):
            where = "d^%d at %s" % (j, bitstring(S, dims))
            viol = [b for b in bad if where in b]
            rep.check("det %s = f_%d" % (where, j), not viol, "; ".join(viol))
    x = d.cube()
    r = validate(x)
    rep.check("family squares commute", r.ok, "" if r.ok else r.violation.describe(dims))
    if not rep.ok:
        return
    c = tot_of_cube(x)
    rep.result["cube"] = cube_to_json(x)
    rep.result["complex"] = complex_to_json(c)
    _complex_checks(rep, c)


def cmd_validate_cube(doc: Document, args, rep: Report) -> None:
    x, _ = _cube_or_family(doc, args.name)
    r = validate(x)
    rep.result["valid"] = r.ok
    rep.result["checked_squares"] = r.checked_squares
    if r.ok:
        rep.check("boundary shapes and %d squares commute" % r.checked_squares, True)
    else:
        v = r.violation
        rep.result["violation"] = {"kind": v.kind, "T": bitstring(v.T, x.dims), "j": v.j, "k": v.k}
        rep.check("cube squares commute", False, v.describe(x.dims))
    if args.sequence is not None and r.ok:
        fs = doc.pick("sequences", args.sequence)
        try:
            kc = validate_koszul_cube(x, fs)
            rep.check("Koszul cube over the sequence", True, "exponents %s" % (list(kc.exponents),))
            rep.result["exponents"] = list(kc.exponents)
        except KoszulCubeViolation as exc:
            rep.check("Koszul cube over the sequence", False, str(exc))


def cmd_tot(doc: Document, args, rep: Report) -> None:
    x, _ = _cube_or_family(doc, args.name)
    r = validate(x)
    if not rep.check("cube squares commute", r.ok, "" if r.ok else r.violation.describe(x.dims)):
        return
    c = tot_of_cube(x)
    rep.result["complex"] = complex_to_json(c)
    _complex_checks(rep, c)


def _homology_json(H: FPModule) -> Dict[str, Any]:
    out = module_to_json(H)
    out["zero"] = fp_is_zero(H)
    return out


def cmd_homology(doc: Document, args, rep: Report) -> None:
    k = args.degree if args.degree is not None else doc.params.get("degree")
    if k is None:
        raise InputError("missing --degree")
    src, c = _source_complex(doc, args.name)
    _complex_checks(rep, c)
    H = homology(c, int(k))
    rep.result["source"] = src
    rep.result["degree"] = int(k)
    rep.result["homology"] = _homology_json(H)


def cmd_spherical(doc: Document, args, rep: Report) -> None:
    n = args.n if args.n is not None else doc.params.get("n", 0)
    src, c = _source_complex(doc, args.name)
    rep.result["source"] = src
    _complex_checks(rep, c)
    for k in c.degrees:
        if k == int(n):
            continue
        z = fp_is_zero(homology(c, k))
        rep.check("H_%d = 0" % k, z)
    rep.result["spherical"] = rep.ok
    rep.result["n"] = int(n)


def cmd_be_check(doc: Document, args, rep: Report) -> None:
    src, c = _source_complex(doc, args.name)
    rep.result["source"] = src
    b = be_check(c)
    rep.result["rows"] = [{"i": i, "r": r, "grade": g} for i, r, g in b.rows]
    for i, r, g in b.rows:
        rep.check("grade I_%d(d_%d) >= %d" % (r, i, i), g >= i, "r=%d, grade=%d" % (r, g))
    rep.result["exact"] = b.passed


def cmd_adm_check(doc: Document, args, rep: Report) -> None:
    x, d = _cube_or_family(doc, args.name)
    r = validate(x)
    if not rep.check("cube squares commute", r.ok, "" if r.ok else r.violation.describe(x.dims)):
        return
    if d is not None:
        a = is_A_sequence(list(d.targets))
        rep.result["targets_A_sequence"] = a
    res = is_admissible(x)
    rep.result["admissible"] = res.admissible
    if res.admissible:
        rep.check("all boundaries injective, recursively along every Homo_0", True)
    else:
        T, k = res.failure
        chain = ",".join(str(t) for t in res.chain) or "none"
        rep.result["failure"] = {"chain": list(res.chain), "T": bitstring(T, tuple(t for t in x.dims if t not in res.chain)),
                                 "k": k}
        rep.check("all boundaries injective, recursively along every Homo_0", False,
                  "d^%d at T={%s} not injective after Homo_0 along (%s)"
                  % (k, ",".join(str(t) for t in members(T)), chain))


def cmd_resolve_wt2(doc: Document, args, rep: Report) -> None:
    f = _poly_arg(doc, args.f, "f")
    g = _poly_arg(doc, args.g, "g")
    M = doc.pick("modules", args.module)
    try:
        cert = resolve_wt2(M, f, g)
    except CannotCertify as exc:
        rep.result["certified"] = False
        rep.result["stage"] = exc.stage
        rep.check("resolve_wt2 (%s)" % exc.stage, False, exc.reason)
        return
    rep.result["certified"] = True
    rep.result["cube"] = cube_to_json(cert.cube.cube)
    rep.result["exponents"] = list(cert.exponents)
    rep.result["powers"] = {"f": cert.shape["f_power"], "g": cert.shape["g_power"]}
    for key, M_ in (("U", cert.U), ("P", cert.P), ("X", cert.X), ("V", cert.V), ("W", cert.W),
                    ("Ubar", cert.ubar), ("T", cert.top), ("comparison", cert.comparison_to_input)):
        rep.result[key] = _mat_to_json(M_)
    rep.result["module"] = module_to_json(cert.module)
    rep.result["tot"] = complex_to_json(cert.complex)
    for c in cert.checks:
        rep.check(c.identity, c.status, c.witness)


def cmd_check_wt(doc: Document, args, rep: Report) -> None:
    M = doc.pick("modules", args.module)
    if args.weights is not None and args.weights in doc.sequences:
        fs = doc.sequences[args.weights]
    elif args.weights is not None:
        fs = [doc.poly(t.strip()) for t in args.weights.split(",")]
    else:
        fs = doc.pick("sequences", None)
    res = wt_membership(M, fs)
    rep.result["status"] = res.status.value
    rep.result["weights"] = [str(f) for f in fs]
    if res.projective_dimension is not None:
        rep.result["projective_dimension"] = res.projective_dimension
    rep.check("support contained in V(%s)" % ", ".join(str(f) for f in fs), res.supported)
    if res.supported:
        rep.check("projective dimension <= %d" % len(fs), res.status is Membership.MEMBER, res.note)


def cmd_boundary_lemma(doc: Document, args, rep: Report) -> None:
    psi = doc.pick("matrices", args.matrix)
    f = _poly_arg(doc, args.f, "f")
    try:
        r = boundary_condition_check(psi, f)
    except ValueError as exc:
        raise InputError(str(exc))
    rep.result["applicable"] = r.applicable
    if not rep.check("det psi = unit * f^a", r.applicable, r.note):
        return
    rep.result["exponent"] = r.exponent
    rep.result["unit"] = str(r.unit)
    rep.check("psi is injective", r.injective)
    rep.check("coker psi is supported on V(f)", r.supported)
    rep.check("projective dimension of coker psi <= 1", r.pd_at_most_one)


def cmd_harness(doc: Optional[Document], args, rep: Report) -> None:
    from . import random_instances as ri

    R = doc.ring if doc is not None else PolyRing(["x", "y", "z"])
    rng = random.Random(args.seed)
    kind = args.kind
    count = args.count
    bound = args.degree_bound
    rep.result.update({"kind": kind, "seed": args.seed, "count": count, "degree_bound": bound})
    if kind == "resolcriterion":
        for i in range(count):
            d = ri.random_boundary_family(rng, R, 2, degree_bound=bound)
            r = resolcriterion_check(d)
            rep.check("instance %d: BE and homology report exact" % i, bool(r.be and r.spherical),
                      "m=%d, targets %s" % (d.m, ", ".join(map(str, d.targets))))
            mu = ri.mutate_family(rng, d, bound + 1)
            rm = resolcriterion_check(mu, force=True)
            rep.check("instance %d mutated: BE and homology agree" % i, rm.agree,
                      "be=%s, spherical=%s" % (rm.be, rm.spherical))
    elif kind == "admcriterion":
        for i in range(count):
            d = ri.random_boundary_family(rng, R, 2, degree_bound=bound)
            rep.check("instance %d admissible" % i, bool(is_admissible(d.cube())))
    elif kind == "coincidence":
        for i in range(count):
            n = rng.choice((2, 3))
            d = ri.random_boundary_family(rng, R, n, m=rng.randint(1, 2), degree_bound=bound)
            x = d.cube()
            a, b = list(x.dims), list(x.dims)
            rng.shuffle(a)
            rng.shuffle(b)
            rep.check("instance %d: Homo_0 along %s vs %s" % (i, a, b), coincidence_check(x, x.dims, a, b))
    elif kind == "wt2":
        f, g = R.gens()[:2]
        for i in range(count):
            _, M = ri.random_graded_koszul_2cube(rng, R, f, g, degree_bound=bound)
            try:
                cert = resolve_wt2(M, f, g)
                rep.check("instance %d certified" % i, cert.verified, "exponents %s" % (list(cert.exponents),))
            except CannotCertify as exc:
                rep.check("instance %d certified" % i, False, str(exc))
    elif kind == "gb-oracle":
        from .graded_oracle import free_dimension, span_dimension, standard_count, syzygy_dimension

        for i in range(count):
            rank = rng.choice((1, 1, 2))
            shifts, gens = ri.random_homogeneous_generators(rng, R, rank, rng.randint(1, 3), 3)
            N = SubmoduleBasis(R, rank, gens)
            leads = N.leading_terms()
            S = N.syzygies()
            sshifts = [max(sum(e) + s for p, s in zip(g, shifts) for e in p.term_dict()) for g in gens]
            sl = S.leading_terms()
            ok = True
            for D in range(bound + 1):
                ok &= span_dimension(R, gens, shifts, D) == free_dimension(R.nvars, shifts, D) - \
                    standard_count(R.nvars, shifts, leads, D)
                ok &= syzygy_dimension(R, gens, shifts, D) == free_dimension(R.nvars, sshifts, D) - \
                    standard_count(R.nvars, sshifts, sl, D)
            rep.check("instance %d: graded dimensions up to degree %d" % (i, bound), ok)
    else:
        raise InputError("unknown harness kind %r" % kind)


COMMANDS: Dict[str, Callable] = {
    "gb": cmd_gb, "regseq": cmd_regseq, "aseq": cmd_aseq, "koszul": cmd_koszul, "gkoszul": cmd_gkoszul,
    "validate-cube": cmd_validate_cube, "tot": cmd_tot, "homology": cmd_homology, "spherical": cmd_spherical,
    "be-check": cmd_be_check, "adm-check": cmd_adm_check, "resolve-wt2": cmd_resolve_wt2,
    "check-wt": cmd_check_wt, "boundary-lemma": cmd_boundary_lemma, "harness": cmd_harness,
}

# flags recorded in certificates (and replayed by verify)
ARG_NAMES = ("name", "sequence", "degree", "n", "f", "g", "module", "weights", "matrix",
             "kind", "seed", "count", "degree_bound")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genkoszul", description="Koszul cubes and generalized Koszul resolutions")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, needs_input=True):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", nargs="?" if not needs_input else None, default=None,
                        help="JSON document path, or - for stdin")
        sp.add_argument("--json", action="store_true", help="machine-readable certificate")
        sp.add_argument("--name", help="object to operate on (default: first by name)")
        return sp

    add("gb", "reduced Gröbner basis of a sequence (ideal) or matrix columns (submodule)")
    add("regseq", "is the sequence regular")
    add("aseq", "is the sequence regular in every order")
    add("koszul", "classical Koszul complex of a sequence")
    add("gkoszul", "generalized Koszul complex of a boundary family")
    add("validate-cube", "check boundary shapes and commuting squares").add_argument(
        "--sequence", help="also validate as a Koszul cube over this sequence")
    add("tot", "total complex of a cube or family")
    add("homology", "homology presentation").add_argument("--degree", type=int)
    add("spherical", "homology concentrated in one degree").add_argument("--n", type=int)
    add("be-check", "Buchsbaum-Eisenbud exactness test")
    add("adm-check", "admissibility of a cube or family")
    sp = add("resolve-wt2", "resolve a graded weight-two module by a Koszul 2-cube")
    sp.add_argument("--f")
    sp.add_argument("--g")
    sp.add_argument("--module")
    sp = add("check-wt", "pure weight membership")
    sp.add_argument("--weights", help="sequence name or comma-separated polynomials")
    sp.add_argument("--module")
    sp = add("boundary-lemma", "det psi = unit * f^a => coker psi has weight one")
    sp.add_argument("--matrix")
    sp.add_argument("--f")
    sp = add("harness", "seeded random property checks", needs_input=False)
    sp.add_argument("--kind", default="resolcriterion",
                    choices=["resolcriterion", "admcriterion", "coincidence", "wt2", "gb-oracle"])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=5)
    sp.add_argument("--degree-bound", type=int, default=2)
    add("verify", "re-run the command stored in a certificate")
    return p


def _read(path: str, stdin) -> Dict[str, Any]:
    try:
        if path == "-":
            text = stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise InputError("invalid JSON: %s" % exc)


def execute(command: str, raw: Optional[Dict[str, Any]], args) -> Tuple[int, Dict[str, Any]]:
    """Run one command; returns (exit code, certificate)."""
    doc = Document(raw) if raw is not None else None
    if doc is None and command != "harness":
        raise InputError("command %r needs an input document" % command)
    rep = Report()
    recorded = {k: getattr(args, k) for k in ARG_NAMES if getattr(args, k, None) is not None}
    try:
        COMMANDS[command](doc, args, rep)
    except (DimensionMismatch, RingMismatch, ComplexError, CubeError) as exc:
        raise InputError(str(exc))
    out = doc.normalized() if doc is not None else {}
    out["command"] = {"name": command, "args": recorded}
    out["result"] = rep.result
    out["checks"] = rep.checks
    out["status"] = "pass" if rep.ok else "fail"
    return (EXIT_OK if rep.ok else EXIT_FAIL), out


def _verify(raw: Dict[str, Any]) -> Tuple[int, Dict[str, Any]]:
    cmd = raw.get("command")
    if not isinstance(cmd, dict) or cmd.get("name") not in COMMANDS:
        raise InputError("not a certificate: missing command")
    ns = argparse.Namespace(**{k: None for k in ARG_NAMES})
    for k, v in cmd.get("args", {}).items():
        if k not in ARG_NAMES:
            raise InputError("unknown recorded argument %r" % k)
        setattr(ns, k, v)
    if cmd["name"] == "harness":
        for k, default in (("kind", "resolcriterion"), ("seed", 0), ("count", 5), ("degree_bound", 2)):
            if getattr(ns, k) is None:
                setattr(ns, k, default)
    doc_raw = {k: v for k, v in raw.items() if k not in ("command", "result", "checks", "status")}
    code, fresh = execute(cmd["name"], doc_raw if "ring" in doc_raw else None, ns)
    rep = Report()
    rep.check("re-run reproduces the stored result", fresh["result"] == raw.get("result"))
    rep.check("re-run reproduces the stored checks", fresh["checks"] == raw.get("checks"))
    rep.check("stored checks all pass", code == EXIT_OK)
    out = {"command": {"name": "verify", "args": {}}, "verified": cmd["name"], "checks": rep.checks,
           "result": {"status": fresh["status"]}, "status": "pass" if rep.ok else "fail"}
    return (EXIT_OK if rep.ok else EXIT_FAIL), out


def render_text(cert: Dict[str, Any]) -> str:
    lines = ["command: %s" % cert["command"]["name"]]
    for key in sorted(cert.get("result", {})):
        val = cert["result"][key]
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
        lines.append("  %s: %s" % (key, val))
    for c in cert.get("checks", []):
        w = ("  (%s)" % c["witness"]) if c["witness"] else ""
        lines.append("%s  %s%s" % ("PASS" if c["status"] == "pass" else "FAIL", c["identity"], w))
    lines.append("status: %s" % cert.get("status"))
    return "\n".join(lines)


def main(argv: Sequence[str] = None, stdin=None, stdout=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        raw = _read(args.input, stdin) if args.input is not None else None
        if args.command == "verify":
            if raw is None:
                raise InputError("verify needs a certificate")
            code, cert = _verify(raw)
        else:
            code, cert = execute(args.command, raw, args)
    except InputError as exc:
        if getattr(args, "json", False):
            stdout.write(json.dumps({"error": str(exc), "status": "input-error"}, sort_keys=True) + "\n")
        else:
            stdout.write("input error: %s\n" % exc)
        return EXIT_INPUT
    if args.json:
        stdout.write(json.dumps(cert, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        stdout.write(render_text(cert) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
