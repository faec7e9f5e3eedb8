"""Decision procedures for domain-ness, normality and closedness of gr_p R.

Every test is phrased through heights of minor ideals of the syzygy
matrix of p, through biduals of graded components, or through explicit
membership computations; primes are never localized at explicitly.  Grade
is computed as height, which is valid in the Cohen-Macaulay ambient ring.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import combinations

from .arith.orders import MonomialOrder
from .arith.polynomial import PolyRing, Polynomial
from .blowup import ClosureCandidate, GradedAlgebra, associated_graded, graded_component
from .errors import ComputationLimitError, InputError
from .groebner.basis import eliminate_polys
from .groebner.matrix import Matrix
from .groebner.syzygy import kernel
from .ideals import (
    INFINITE_HEIGHT,
    HeightEntry,
    HeightProfile,
    Ideal,
    dimension_and_height,
    fitting_ideal,
    ideal_intersection,
    ideal_quotient,
    minimal_generators,
)
from .modules import (
    FPModule,
    bidual_and_compare,
    depth_via_ab,
    determinant_ideal,
    ext_against_ring,
    koszul_homology,
    module_rank,
    present_conormal,
    projective_dimension,
    syzygy_matrix,
)

HOLDS, FAILS, INCONCLUSIVE = "holds", "fails", "inconclusive"
BASE_ASSUMPTIONS = [
    "p prime (asserted, not verified)",
    "R/p normal (asserted, not verified)",
    "grade computed as height (Cohen-Macaulay ambient ring)",
]


def fingerprint(p: Ideal) -> str:
    text = ",".join(p.ring.names) + "|" + str(p.ring.field) + "|" + ";".join(str(f) for f in p.gens)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _height(I: Ideal):
    return I.height()


def _fmt_height(h):
    return "infinity" if h == INFINITE_HEIGHT else int(h)


@dataclass
class CriterionReport:
    """Verdict of one criterion with the evidence needed to re-derive it."""

    criterion: str
    inputs: dict
    verdict: str
    evidence: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    assumptions: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def as_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "inputs": self.inputs,
            "assumptions": list(self.assumptions),
            "evidence": self.evidence,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
        }


def _inputs(p: Ideal) -> dict:
    return {
        "ring": list(p.ring.names),
        "field": str(p.ring.field),
        "generators": [str(f) for f in p.gens],
        "fingerprint": fingerprint(p),
    }


@dataclass
class _Setup:
    p: Ideal
    gens: list
    phi: Matrix
    n: int
    g: int
    d: int


def _setup(p: Ideal) -> _Setup:
    if p.is_unit() or p.is_zero():
        raise InputError("criteria need a proper nonzero ideal")
    gens = minimal_generators(p)
    phi = syzygy_matrix(p)
    d = p.ring.nvars
    g = dimension_and_height(p)[1]
    return _Setup(p, gens, phi, len(gens), g, d)


def fitting_height_profile(p: Ideal, offset: int = 2) -> HeightProfile:
    """Heights of I_t(phi) for 1 <= t <= n - height(p) against ``n - t + offset``.

    ``offset = 2`` is the domain bound, ``offset = 3`` the normality bound.
    """
    s = _setup(p)
    entries = []
    for t in range(1, s.n - s.g + 1):
        h = _height(fitting_ideal(s.phi, t))
        bound = s.n - t + offset
        entries.append(HeightEntry(t, h, bound, h >= bound))
    return HeightProfile(entries)


def domain_criterion(p: Ideal) -> CriterionReport:
    """G is a domain iff height I_t(phi) >= n - t + 2 on the whole range."""
    s = _setup(p)
    prof = fitting_height_profile(p, 2)
    verdict = HOLDS if prof.passed else FAILS
    wit = {"n": s.n, "height_p": s.g, "dim_R": s.d}
    if not prof.passed:
        e = prof.failing()[0]
        wit["failing_index"] = e.index
        wit["nu"] = s.n - e.index + 1
        wit["required_height"] = e.bound
    return CriterionReport(
        "domain-criterion", _inputs(p), verdict, prof.as_dicts(), wit,
        BASE_ASSUMPTIONS + ["p is not maximal (homogeneous p inside m)", "sliding depth checked separately"],
    )


def normality_criterion(p: Ideal) -> CriterionReport:
    """Local bound nu(p_q) <= max(height p, height q - 2) via heights of I_t(phi).

    A prime q containing I_t(phi) has nu(p_q) >= n - t + 1; the bound can
    only fail when that exceeds height p, and then it holds for every such
    q exactly when height I_t(phi) >= n - t + 3.
    """
    s = _setup(p)
    prof = fitting_height_profile(p, 3)
    verdict = HOLDS if prof.passed else FAILS
    wit: dict = {"n": s.n, "height_p": s.g, "dim_R": s.d}
    rows = []
    for e in prof.entries:
        row = e.as_dict()
        row["nu"] = s.n - e.index + 1
        row["local_bound"] = max(s.g, int(e.height) - 2) if e.height != INFINITE_HEIGHT else None
        rows.append(row)
    if not prof.passed:
        e = prof.failing()[0]
        h = int(e.height)
        wit.update(
            failing_index=e.index,
            prime="m" if h == s.d else f"minimal prime of I_{e.index}(phi)",
            prime_height=h,
            nu=s.n - e.index + 1,
            bound=max(s.g, h - 2),
        )
    return CriterionReport(
        "normality-criterion", _inputs(p), verdict, rows, wit,
        BASE_ASSUMPTIONS + ["sliding depth (check with sliding-depth)"],
    )


def normal_locus_obstructions(p: Ideal) -> CriterionReport:
    """Sigma = {t : height I_{n-t+2}(phi) = t, height p + 2 <= t <= min(n+1, dim R)}."""
    s = _setup(p)
    dom = domain_criterion(p)
    rows = []
    sigma = []
    for t in range(s.g + 2, min(s.n + 1, s.d) + 1):
        idx = s.n - t + 2
        I = fitting_ideal(s.phi, idx)
        h = _height(I)
        hit = h == t
        row = {"t": t, "minor_size": idx, "height": _fmt_height(h), "in_sigma": hit}
        if hit:
            sigma.append(t)
            row["obstruction_ideal"] = [str(f) for f in I.reduced_generators()]
            row["locus"] = "exact (m-primary)" if t == s.d else "unsplit; contains the non-normal locus"
        rows.append(row)
    verdict = HOLDS if dom.holds else INCONCLUSIVE
    return CriterionReport(
        "normal-locus", _inputs(p), verdict, rows,
        {"sigma": sigma, "normal_everywhere": (not sigma) if dom.holds else None, "domain_criterion": dom.verdict},
        BASE_ASSUMPTIONS + ["obstruction ideals reported without splitting off higher-height components"],
    )


# -- reflexivity side ------------------------------------------------------

def choose_embedding(M: FPModule, res=None):
    """A rank-r embedding from r dual generators with a surviving r x r minor.

    Returns ``(matrix for M, matrix for the bidual, chosen indices)``.
    """
    res = res or bidual_and_compare(M)
    K = res.dual.embedding
    if K is None or K.ncols == 0:
        return None, None, ()
    r = module_rank(M)
    Kt = K.transpose()
    K2 = res.bidual.embedding
    for idx in combinations(range(Kt.nrows), r):
        sub = Kt.submatrix(rows=idx)
        if any(not M.ideal.contains(f) for f in sub.minors(r)):
            return sub, K2.submatrix(rows=idx), idx
    return None, None, ()


def is_divisorial(J: Ideal, base: Ideal) -> bool:
    """Whether ``J`` (containing ``base``) is divisorial in R/base.

    Uses the reflexive hull ``(x) : ((x) : J)`` for an element x of J
    outside the base ideal.
    """
    Jb = J + base
    x = next((f for f in Jb.gens if not base.contains(f)), None)
    if x is None:
        return False
    X = Ideal(J.ring, [x]) + base
    hull = ideal_quotient(X, ideal_quotient(X, Jb))
    return hull == Jb


def conormal_closedness_pipeline(p: Ideal, embedding: Matrix | None = None) -> CriterionReport:
    """p/p^2 is integrally closed iff reflexive (under the standing hypotheses)."""
    s = _setup(p)
    dim_S = s.d - s.g
    assumptions = list(BASE_ASSUMPTIONS)
    path = None
    if dim_S == 2:
        path = "dim R/p = 2"
    elif s.g == 2:
        pd = projective_dimension(FPModule.cyclic(p))
        if pd == 2:
            path = "height-2 perfect"
    if path:
        assumptions.append(f"hypothesis path: {path} (strongly Cohen-Macaulay, G_infinity asserted)")
    E = present_conormal(p)
    res = bidual_and_compare(E)
    nu_E, nu_E0 = E.nu(), res.bidual.nu()
    wit: dict = {
        "nu_E": nu_E,
        "nu_bidual": nu_E0,
        "reflexive": res.is_reflexive,
        "evaluation_injective": res.injective,
        "evaluation_surjective": res.surjective,
    }
    emb_E, emb_E0, idx = choose_embedding(E, res)
    if embedding is not None:
        det_E = determinant_ideal(embedding) + p
        wit["embedding"] = "supplied"
    elif emb_E is not None:
        det_E = determinant_ideal(emb_E) + p
        wit["embedding"] = f"dual generators {list(idx)}"
    else:
        det_E = None
    if det_E is not None:
        wit["det_E"] = [str(f) for f in det_E.reduced_generators()]
    if emb_E0 is not None and emb_E0.ncols:
        det_E0 = determinant_ideal(emb_E0) + p
        wit["det_bidual"] = [str(f) for f in det_E0.reduced_generators()]
        if det_E is not None and embedding is None:
            equal = det_E == det_E0
            wit["det_equal"] = equal
            wit["det_divisorial"] = is_divisorial(det_E, p) if equal else False
    if path is None:
        verdict = INCONCLUSIVE
    else:
        verdict = "integrally_closed" if res.is_reflexive else "not_integrally_closed"
    if not res.is_reflexive and wit.get("det_equal") and wit.get("det_divisorial"):
        wit["closure"] = "bidual"
        wit["nu_closure"] = nu_E0
    return CriterionReport("closedness-pipeline", _inputs(p), verdict, [], wit, assumptions)


def top_component_nonreflexive(p: Ideal, max_degree: int = 4) -> CriterionReport:
    """G_{n-g} should fail to be reflexive whenever n > g."""
    s = _setup(p)
    t = s.n - s.g
    inputs = _inputs(p)
    if t <= 0:
        return CriterionReport(
            "top-component", inputs, "inapplicable", [], {"n": s.n, "height_p": s.g, "component": t}, BASE_ASSUMPTIONS,
        )
    if t > max_degree:
        raise ComputationLimitError(f"component {t} exceeds the materialization bound {max_degree}")
    G = associated_graded(p)
    Gt = graded_component(G, t, max_degree)
    res = bidual_and_compare(Gt)
    wit = {
        "component": t,
        "nu_component": Gt.nu(),
        "nu_bidual": res.bidual.nu(),
        "reflexive": res.is_reflexive,
    }
    if res.is_reflexive:
        wit["contradiction"] = True
    verdict = HOLDS if not res.is_reflexive else "contradiction"
    return CriterionReport("top-component", inputs, verdict, [], wit, BASE_ASSUMPTIONS)


def _align(a: dict, b: dict):
    """Shift making two graded dimension functions agree, or None."""
    if not a and not b:
        return 0
    if not a or not b:
        return None
    shift = min(b) - min(a)
    if {k + shift: v for k, v in a.items()} == b:
        return shift
    return None


def nu2_defect_check(p: Ideal, max_degree: int = 4) -> CriterionReport:
    """Compare G_{n-2}**/G_{n-2} with Ext^d(R/I_1(phi), R) degree by degree."""
    s = _setup(p)
    inputs = _inputs(p)
    notes = list(BASE_ASSUMPTIONS)
    perfect = projective_dimension(FPModule.cyclic(p)) == 2
    applicable = s.g == 2 and perfect and s.d >= 3
    if not applicable:
        notes.append("hypotheses not met: needs height-2 perfect p and dim R >= 3")
    t = s.n - 2
    if t < 0:
        return CriterionReport("nu2-check", inputs, INCONCLUSIVE, [], {"component": t}, notes)
    G = associated_graded(p)
    Gt = graded_component(G, t, max_degree)
    res = bidual_and_compare(Gt)
    I1 = fitting_ideal(s.phi, 1)
    ext = ext_against_ring(FPModule.cyclic(I1), s.d)
    wit: dict = {"component": t, "ext_index": s.d, "reflexive": res.is_reflexive}
    try:
        defect_dims = res.defect.hilbert_dimensions()
        ext_dims = ext.hilbert_dimensions()
    except InputError as exc:
        wit["diagnostic"] = str(exc)
        return CriterionReport("nu2-check", inputs, INCONCLUSIVE, [], wit, notes)
    shift = _align(defect_dims, ext_dims)
    rows = [{"degree": k, "defect": v} for k, v in defect_dims.items()]
    rows += [{"degree": k, "ext": v} for k, v in ext_dims.items()]
    wit.update(
        defect_dimensions={str(k): v for k, v in defect_dims.items()},
        ext_dimensions={str(k): v for k, v in ext_dims.items()},
        defect_length=sum(defect_dims.values()),
        ext_length=sum(ext_dims.values()),
        degree_shift=shift,
    )
    notes.append("dimension functions compared up to one uniform degree shift")
    if not applicable:
        verdict = INCONCLUSIVE
    else:
        verdict = HOLDS if shift is not None else FAILS
    return CriterionReport("nu2-check", inputs, verdict, rows, wit, notes)


def sliding_depth_check(p: Ideal) -> CriterionReport:
    """depth H_i >= d - n + i for every nonzero Koszul homology module."""
    s = _setup(p)
    K = Ideal(p.ring, s.gens)
    dim_S = s.d - s.g
    rows = []
    ok = True
    strong = True
    for i in range(s.n + 1):
        H = koszul_homology(K, i)
        if H.is_zero():
            continue
        dep = depth_via_ab(H)
        need = s.d - s.n + i
        passed = dep >= need
        ok &= passed
        strong &= dep == dim_S
        rows.append({"index": i, "depth": dep, "bound": need, "pass": passed})
    return CriterionReport(
        "sliding-depth", _inputs(p), HOLDS if ok else FAILS, rows,
        {"strongly_cohen_macaulay": strong, "dim_R_mod_p": dim_S}, ["depth via Auslander-Buchsbaum"],
    )


# -- candidate closures ------------------------------------------------------

@dataclass
class ConductorResult:
    """Conductor of G in a candidate closure, with the checks that led to it."""

    generators: list
    equals_named: bool | None
    named: str | None
    degree_zero: list
    integral: bool
    monic_relations: dict
    relations_in_ideal: bool
    consistent: bool
    injective: bool
    annihilates: bool

    def as_dict(self) -> dict:
        return {
            "conductor": [str(f) for f in self.generators],
            "named_ideal": self.named,
            "equals_named": self.equals_named,
            "degree_zero_part": [str(f) for f in self.degree_zero],
            "integral": self.integral,
            "monic_relations": self.monic_relations,
            "relations_in_ideal": self.relations_in_ideal,
            "consistent": self.consistent,
            "injective": self.injective,
            "annihilates_quotient": self.annihilates,
        }


def _reduce_by_monic(f: Polynomial, monic: dict, k_of: dict) -> Polynomial:
    """Rewrite ``f`` so every new variable Y_i appears below its monic degree."""
    ring = f.ring
    changed = True
    while changed:
        changed = False
        for i, (rel, k) in monic.items():
            tail = rel - ring.monomial(tuple(k if j == i else 0 for j in range(ring.nvars)))
            terms = {}
            extra = ring.zero()
            for e, c in f.terms.items():
                if e[i] >= k:
                    rest = tuple(x - k if j == i else x for j, x in enumerate(e))
                    extra = extra - tail.mul_term(rest, c)
                    changed = True
                else:
                    terms[e] = c
            if changed:
                f = Polynomial(ring, terms) + extra
                break
    return f


def verify_integral_closure_candidate(G: GradedAlgebra, cand: ClosureCandidate, named: str | None = "mG") -> ConductorResult:
    """Certify integrality, the inclusion G -> Gbar, and compute (G :_G Gbar)."""
    ring = cand.ring
    ny = len(cand.new_variables)
    amb = G.ambient
    J = G.defining
    monic = {}
    for k, y in enumerate(cand.new_variables):
        found = cand.monic.get(y)
        if found is None:
            raise InputError(f"no monic relation for the new variable {y}")
        rel, deg = found
        if any(e[j] for e in rel.terms for j in range(ny) if j != k):
            raise InputError(f"the monic relation for {y} involves other new variables")
        monic[k] = (rel, deg)
    full = cand.defining_ideal()
    consistent = not full.is_unit()
    if not consistent:
        raise InputError("candidate is inconsistent: its defining ideal is the unit ideal")
    relations_in_ideal = all(full.contains(r) for r in cand.relations)
    # inclusion G -> Gbar: eliminating the new variables must give back J
    elim = eliminate_polys(full.gens, list(cand.new_variables), ring)
    back = Ideal(amb, [amb.convert(f) for f in elim])
    injective = back == J
    # Gbar as a G-module on the monomials Y^a with a_i below the monic degree
    basis = [()]
    for k in range(ny):
        basis = [b + (a,) for b in basis for a in range(monic[k][1])]
    pos = {b: i for i, b in enumerate(basis)}
    ydeg = cand.degrees
    twists = [sum(a * d for a, d in zip(b, ydeg)) for b in basis]

    def yvec(f: Polynomial) -> dict:
        v = {}
        for e, c in f.terms.items():
            v[(pos[e[:ny]], e[ny:])] = c
        return v

    def ymono(b):
        return ring.monomial(tuple(b) + (0,) * amb.nvars)

    cols, cdeg = [], []
    for r in cand.relations:
        for b in basis:
            f = _reduce_by_monic(ymono(b) * r, monic, None)
            if f:
                v = yvec(f)
                cols.append(v)
                (row, e) = next(iter(v))
                cdeg.append(twists[row] + amb.degree(e))
    one = {(0, (0,) * amb.nvars): amb.field.one}
    cols.append(one)
    cdeg.append(0)
    Rel = Matrix(amb, len(basis), cols, twists, cdeg)
    conductor = None
    for b in basis[1:]:
        eb = Matrix(amb, len(basis), [{(pos[b], (0,) * amb.nvars): amb.field.one}], twists, [twists[pos[b]]])
        K = kernel(eb, modulo=Rel, ideal=J.gens)
        colon = Ideal(amb, [K.entry(0, j) for j in range(K.ncols)])
        conductor = colon if conductor is None else ideal_intersection(conductor, colon)
    if conductor is None:
        conductor = Ideal(amb, [amb.one()])
    conductor = conductor + J
    # independent check: c*Y^b is congruent to a Y-free element
    elim_ring = PolyRing(ring.names, ring.field, MonomialOrder("elim", split=ny), ring.weights)
    full_e = Ideal(elim_ring, [elim_ring.convert(f) for f in full.gens])
    annihilates = True
    for c in conductor.gens:
        for b in basis[1:]:
            nf = full_e.normal_form(elim_ring.convert(ring.convert(c) * ymono(b)))
            if any(any(e[:ny]) for e in nf.terms):
                annihilates = False
    gens = [f for f in conductor.reduced_generators() if not J.contains(f)]
    equals = None
    if named == "mG":
        target = J + Ideal(amb, [amb.var(n) for n in G.base.names])
        equals = conductor == target
    elif named == "G":
        equals = conductor.is_unit()
    drop = list(G.x_names)
    L = eliminate_polys(conductor.gens, drop, amb)
    integral = all(monic.get(k) is not None for k in range(ny))
    return ConductorResult(
        generators=gens,
        equals_named=equals,
        named=named,
        degree_zero=L,
        integral=integral,
        monic_relations={y: str(monic[k][0]) for k, y in enumerate(cand.new_variables)},
        relations_in_ideal=relations_in_ideal,
        consistent=consistent,
        injective=injective,
        annihilates=annihilates,
    )
