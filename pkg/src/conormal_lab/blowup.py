"""Blowup algebras: Rees algebras, symmetric algebras, associated graded rings.

A ``GradedAlgebra`` is ``base[x_1..x_n] / J``.  The ambient ring carries
the base variables first and then the presentation variables; variable
weights are the *internal* degrees (x_i weighted by the degree of the
element it stands for), so J is homogeneous for the internal grading and,
separately, for the x-degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith.polynomial import PolyRing, Polynomial
from .errors import ComputationLimitError, InputError, NonHomogeneousError
from .groebner.basis import eliminate_polys
from .groebner.matrix import Matrix
from .ideals import Ideal, dimension_and_height, minimal_generators
from .modules import FPModule, present_conormal

DEFAULT_MAX_DEGREE = 4


def _fresh_names(base_names, count: int, stem: str = "x") -> list[str]:
    taken = set(base_names)
    for prefix in (stem, stem.upper(), "_" + stem):
        names = [f"{prefix}{i + 1}" for i in range(count)]
        if not taken & set(names):
            return names
    k = 0
    while True:
        names = [f"_{stem}{k}_{i + 1}" for i in range(count)]
        if not taken & set(names):
            return names
        k += 1


def _positive_shift(degrees) -> list[int]:
    low = min(degrees, default=1)
    return [d - low + 1 for d in degrees] if low < 1 else list(degrees)


class GradedAlgebra:
    """``base[x_1..x_n] / defining`` graded by the x-degree."""

    def __init__(self, base: PolyRing, x_names, x_degrees, defining, base_ideal=None, label: str = ""):
        self.base = base
        self.x_names = tuple(x_names)
        self.x_degrees = tuple(x_degrees)
        weights = tuple(base.weights) + tuple(_positive_shift(self.x_degrees))
        self.ambient = PolyRing(tuple(base.names) + self.x_names, base.field, base.order, weights)
        self.nbase = base.nvars
        gens = [self.ambient.convert(f) if isinstance(f, Polynomial) else self.ambient.parse(f) for f in defining]
        self.base_ideal = base_ideal if isinstance(base_ideal, Ideal) else Ideal(base, list(base_ideal or []))
        extra = [self.ambient.convert(f) for f in self.base_ideal.gens]
        self.defining = Ideal(self.ambient, extra + gens)
        self.label = label
        self._components: dict[int, FPModule] = {}

    def __repr__(self) -> str:
        return f"GradedAlgebra({self.label or 'algebra'}: {len(self.x_names)} variables, {len(self.defining.gens)} relations)"

    @property
    def nx(self) -> int:
        return len(self.x_names)

    def x_degree(self, exps) -> int:
        return sum(exps[self.nbase:])

    def x_part(self, f: Polynomial) -> dict[int, Polynomial]:
        """Split ``f`` into its x-homogeneous pieces."""
        out: dict[int, dict] = {}
        for e, c in f.terms.items():
            out.setdefault(self.x_degree(e), {})[e] = c
        return {d: Polynomial(self.ambient, t, _trusted=True) for d, t in out.items()}

    def relations(self) -> list[Polynomial]:
        """Reduced generators of the defining ideal (base ideal included)."""
        return self.defining.reduced_generators()

    def relations_of_degree(self, d: int) -> list[Polynomial]:
        out = []
        for g in self.relations():
            for k, piece in self.x_part(g).items():
                if k == d:
                    out.append(piece)
        return out

    def equals(self, other: GradedAlgebra) -> bool:
        """Same ambient variables and GB-equal defining ideals."""
        if set(self.ambient.names) != set(other.ambient.names):
            return False
        conv = Ideal(self.ambient, [self.ambient.convert(f) for f in other.defining.gens])
        return conv == self.defining

    def dimension(self) -> int:
        return dimension_and_height(self.defining)[0]

    def component(self, t: int, max_degree: int = DEFAULT_MAX_DEGREE) -> FPModule:
        return graded_component(self, t, max_degree)

    def special_fiber_dimension(self) -> int:
        m = [self.ambient.var(n) for n in self.base.names]
        return dimension_and_height(Ideal(self.ambient, self.defining.gens + m))[0]


def _generators_of(I: Ideal) -> list[Polynomial]:
    if not I.gens:
        raise InputError("the zero ideal has no Rees algebra")
    return minimal_generators(I) if I.is_homogeneous() else list(I.gens)


def rees_of_ideal(I: Ideal, x_names=None) -> GradedAlgebra:
    """R[x]/J with J the kernel of ``x_i -> f_i T`` (eliminate T)."""
    if not I.is_homogeneous():
        raise NonHomogeneousError("Rees algebras are built for homogeneous ideals")
    gens = _generators_of(I)
    ring = I.ring
    degs = [f.degree() for f in gens]
    xs = list(x_names) if x_names else _fresh_names(ring.names, len(gens))
    tname = "_T"
    while tname in ring.names or tname in xs:
        tname += "_"
    names = (tname,) + tuple(ring.names) + tuple(xs)
    weights = (1,) + tuple(ring.weights) + tuple(d + 1 for d in degs)
    big = PolyRing(names, ring.field, ring.order, weights)
    T = big.var(tname)
    graph = [big.var(x) - big.convert(f) * T for x, f in zip(xs, gens)]
    polys = eliminate_polys(graph, [tname], big)
    alg = GradedAlgebra(ring, xs, degs, [], label="rees")
    alg.defining = Ideal(alg.ambient, [alg.ambient.convert(p) for p in polys])
    alg.generators = gens
    return alg


def associated_graded(p: Ideal, x_names=None) -> GradedAlgebra:
    """gr_p R = R(p) / p R(p)."""
    if p.is_unit():
        raise InputError("the unit ideal has no associated graded ring")
    R = rees_of_ideal(p, x_names)
    alg = GradedAlgebra(p.ring, R.x_names, R.x_degrees, R.defining.gens, base_ideal=p, label="assoc_graded")
    alg.generators = R.generators
    return alg


def symmetric_algebra(M: FPModule, x_names=None) -> GradedAlgebra:
    """base[x]/(linear forms of the presentation columns, base ideal)."""
    ring = M.ring
    xs = list(x_names) if x_names else _fresh_names(ring.names, M.ngens)
    alg = GradedAlgebra(ring, xs, M.twists, [], base_ideal=M.ideal, label="symmetric")
    amb = alg.ambient
    xv = [amb.var(x) for x in xs]
    forms = []
    for j in range(M.presentation.ncols):
        f = amb.zero()
        for i, a in enumerate(M.presentation.column(j)):
            if a:
                f = f + amb.convert(a) * xv[i]
        if f:
            forms.append(f)
    alg.defining = Ideal(amb, alg.defining.gens + forms)
    return alg


def _x_monomials(n: int, t: int):
    if n == 0:
        if t == 0:
            yield ()
        return
    if n == 1:
        yield (t,)
        return
    for k in range(t, -1, -1):
        for rest in _x_monomials(n - 1, t - k):
            yield (k,) + rest


def graded_component(A: GradedAlgebra, t: int, max_degree: int = DEFAULT_MAX_DEGREE) -> FPModule:
    """The degree-t piece of A as a module over base/base_ideal.

    Basis: x-monomials of degree t; relations: x-monomial multiples of
    the defining generators of x-degree at most t, written in that basis.
    """
    if t < 0:
        raise InputError("component degree must be non-negative")
    if t > max_degree:
        raise ComputationLimitError(f"component {t} exceeds the materialization bound {max_degree}")
    if t in A._components:
        return A._components[t]
    base = A.base
    nb, nx = A.nbase, A.nx
    monos = list(_x_monomials(nx, t))
    index = {m: k for k, m in enumerate(monos)}
    twists = [sum(a * d for a, d in zip(m, A.x_degrees)) for m in monos]
    cols, cdeg = [], []
    base_extra = []
    for g in A.relations():
        for s, piece in A.x_part(g).items():
            if s == 0:
                base_extra.append(Polynomial(base, {e[:nb]: c for e, c in piece.terms.items()}, _trusted=True))
                continue
            if s > t:
                continue
            for mu in _x_monomials(nx, t - s):
                v = {}
                for e, c in piece.terms.items():
                    xm = tuple(a + b for a, b in zip(e[nb:], mu))
                    v[(index[xm], e[:nb])] = c
                cols.append(v)
                deg = None
                for (r, be) in v:
                    deg = twists[r] + base.degree(be)
                    break
                cdeg.append(deg)
    ideal = Ideal(base, A.base_ideal.gens + base_extra)
    M = Matrix(base, len(monos), cols, twists, cdeg)
    mod = FPModule(base, M, ideal).minimal_presentation()
    A._components[t] = mod
    return mod


def rees_of_module(M: FPModule, embedding: Matrix | None = None, x_names=None, t_names=None) -> GradedAlgebra:
    """Kernel of ``base[x] -> base[T]``, ``x_j -> sum_i E_ij T_i`` (eliminate T)."""
    E = embedding if embedding is not None else M.embedding
    if E is None:
        raise InputError("the Rees algebra of a module needs an embedding")
    ring = M.ring
    if E.ncols != M.ngens:
        raise InputError("embedding must have one column per generator")
    e = E.nrows
    # rank check: some e x e minor must survive modulo the base ideal
    minors = E.minors(e)
    if not minors or all(M.ideal.contains(f) for f in minors):
        raise InputError("embedding matrix is rank deficient")
    xs = list(x_names) if x_names else _fresh_names(ring.names, M.ngens)
    ts = list(t_names) if t_names else _fresh_names(list(ring.names) + xs, e, "T")
    shift = min(list(E.row_degrees) + [0])
    tw = [-a - shift + 1 for a in (E.row_degrees)]
    c = 1 - shift
    xw = [b + c for b in E.col_degrees]
    if min(xw + tw, default=1) < 1:
        lift = 1 - min(xw + tw)
        xw = [w + lift for w in xw]
        tw = [w + lift for w in tw]
    names = tuple(ts) + tuple(ring.names) + tuple(xs)
    big = PolyRing(names, ring.field, ring.order, tuple(tw) + tuple(ring.weights) + tuple(xw))
    Tv = [big.var(n) for n in ts]
    graph = []
    for j in range(M.ngens):
        f = big.var(xs[j])
        for i, a in enumerate(E.column(j)):
            if a:
                f = f - big.convert(a) * Tv[i]
        graph.append(f)
    graph += [big.convert(g) for g in M.ideal.gens]
    polys = eliminate_polys(graph, ts, big)
    alg = GradedAlgebra(ring, xs, M.twists, [], base_ideal=M.ideal, label="rees_module")
    alg.defining = Ideal(alg.ambient, [alg.ambient.convert(p) for p in polys] + [alg.ambient.convert(g) for g in M.ideal.gens])
    return alg


def linear_type_check(p: Ideal) -> bool:
    """Whether gr_p R equals the symmetric algebra of p/p^2 (GB equality)."""
    G = associated_graded(p)
    Sym = symmetric_algebra(present_conormal(p), x_names=G.x_names)
    return G.equals(Sym)


def analytic_spread(p: Ideal) -> int:
    """Krull dimension of the special fiber G/mG."""
    return associated_graded(p).special_fiber_dimension()


# -- candidate closures ---------------------------------------------------

@dataclass
class ClosureCandidate:
    """``base_algebra[Y...] / relations`` proposed as an integral closure."""

    base: GradedAlgebra
    new_variables: tuple
    relations: list
    degrees: tuple = ()
    ring: PolyRing | None = None
    monic: dict = field(default_factory=dict)

    @classmethod
    def build(cls, base: GradedAlgebra, new_variables, relations, degrees=None) -> ClosureCandidate:
        new_variables = tuple(new_variables)
        clash = set(new_variables) & set(base.ambient.names)
        if clash:
            raise InputError(f"new variable names clash with the algebra: {sorted(clash)}")
        texts = list(relations)
        if degrees is None:
            degrees = _infer_degrees(base.ambient, new_variables, texts)
        degrees = tuple(degrees)
        amb = base.ambient
        ring = PolyRing(new_variables + amb.names, amb.field, amb.order, degrees + amb.weights)
        rels = [ring.convert(r) if isinstance(r, Polynomial) else ring.parse(r) for r in texts]
        cand = cls(base, new_variables, rels, degrees, ring)
        cand.monic = {y: cand._monic_relation(k) for k, y in enumerate(new_variables)}
        return cand

    def _monic_relation(self, k: int):
        """A relation whose top power of variable k has a nonzero constant coefficient."""
        best = None
        for f in self.relations:
            top = max((e[k] for e in f.terms), default=0)
            if top == 0:
                continue
            lead = [(e, c) for e, c in f.terms.items() if e[k] == top]
            if len(lead) == 1 and sum(lead[0][0]) == top:
                if best is None or top < best[1]:
                    best = (f, top)
        return best

    def defining_ideal(self) -> Ideal:
        ring = self.ring
        return Ideal(ring, [ring.convert(g) for g in self.base.defining.gens] + self.relations)


def _infer_degrees(amb: PolyRing, new_vars, texts) -> tuple:
    """Smallest weights for the new variables making the relations homogeneous."""
    from itertools import product

    for combo in product(range(1, 9), repeat=len(new_vars)):
        ring = PolyRing(tuple(new_vars) + amb.names, amb.field, amb.order, tuple(combo) + amb.weights)
        try:
            rels = [ring.parse(t) if isinstance(t, str) else ring.convert(t) for t in texts]
        except Exception:
            raise
        if all(r.is_homogeneous() for r in rels):
            return tuple(combo)
    return (1,) * len(new_vars)
