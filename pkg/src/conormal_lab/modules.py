"""Finitely presented graded modules over R or a quotient R/I.

A module is stored as an R-presentation: ``M = F0 / (im A + I*F0)`` where
``F0`` is graded by ``twists``.  All homological algebra happens over the
polynomial ring R with the ideal folded into every membership test, so the
Groebner engine never needs quotient-ring arithmetic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations

from .arith.polynomial import PolyRing, Polynomial
from .errors import InputError, NonHomogeneousError, RingMismatchError
from .groebner.matrix import Matrix
from .groebner.resolution import FreeResolution, minimal_free_resolution
from .groebner.syzygy import (
    SubmoduleGB,
    ideal_matrix,
    kernel,
    lift_vectors,
    minimize_columns,
    polys_to_vector,
    prune_presentation,
    vector_to_polys,
)
from .ideals import Ideal

INFINITE_DEPTH = math.inf


def _ideal_of(ring: PolyRing, ideal) -> Ideal:
    if ideal is None:
        return Ideal(ring, [])
    if isinstance(ideal, Ideal):
        if ideal.ring != ring:
            raise RingMismatchError("base ideal lives in another ring")
        return ideal
    return Ideal(ring, list(ideal))


class FPModule:
    """The graded module ``F0 / (im(presentation) + I*F0)`` over ``R/I``."""

    def __init__(self, ring: PolyRing, presentation: Matrix, ideal=None, embedding: Matrix | None = None):
        if presentation.ring != ring:
            raise RingMismatchError("presentation matrix lives in another ring")
        self.ring = ring
        self.presentation = presentation
        self.ideal = _ideal_of(ring, ideal)
        if embedding is not None and embedding.ncols != presentation.nrows:
            raise InputError("embedding must have one column per generator")
        self.embedding = embedding
        self._gb: SubmoduleGB | None = None

    # -- constructors ----------------------------------------------------
    @classmethod
    def free(cls, ring: PolyRing, twists, ideal=None) -> FPModule:
        twists = tuple(twists)
        M = Matrix(ring, len(twists), [], twists, ())
        return cls(ring, M, ideal, embedding=Matrix.identity(ring, len(twists), twists))

    @classmethod
    def cokernel(cls, A: Matrix, ideal=None) -> FPModule:
        return cls(A.ring, A, ideal)

    @classmethod
    def cyclic(cls, I: Ideal) -> FPModule:
        """R/I as an R-module (generator in degree 0)."""
        ring = I.ring
        A = Matrix.from_rows(ring, [I.gens], row_degrees=(0,), col_degrees=[f.degree() for f in I.gens]) if I.gens else Matrix(ring, 1, [], (0,), ())
        return cls(ring, A)

    # -- basic data ------------------------------------------------------
    @property
    def twists(self) -> tuple:
        return self.presentation.row_degrees

    @property
    def ngens(self) -> int:
        return self.presentation.nrows

    @property
    def ideal_gens(self) -> list[Polynomial]:
        return self.ideal.gens

    def __repr__(self) -> str:
        base = "R" if self.ideal.is_zero() else "R/I"
        return f"FPModule({self.ngens} generators over {base}, {self.presentation.ncols} relations)"

    def relations(self) -> Matrix:
        """Presentation with ``I*F0`` written out as explicit columns."""
        extra = ideal_matrix(self.ring, self.ideal.gens, self.ngens, self.twists)
        return self.presentation.hstack(extra) if extra.ncols else self.presentation

    def is_homogeneous(self) -> bool:
        return self.presentation.is_homogeneous() and self.ideal.is_homogeneous()

    def relation_gb(self) -> SubmoduleGB:
        if self._gb is None:
            self._gb = SubmoduleGB.of(self.presentation, self.ideal.gens)
        return self._gb

    def is_zero(self) -> bool:
        gb = self.relation_gb()
        z = (0,) * self.ring.nvars
        one = self.ring.field.one
        return all(gb.contains({(i, z): one}) for i in range(self.ngens))

    def reduce(self, v: dict) -> dict:
        return self.relation_gb().reduce(v)

    def contains_zero(self, v: dict) -> bool:
        """Whether the element with coordinates ``v`` is zero in the module."""
        return self.relation_gb().contains(v)

    # -- minimality ------------------------------------------------------
    def minimal_presentation(self) -> FPModule:
        """Prune unit relations and redundant relation columns."""
        if self.ideal.is_unit():
            return FPModule(self.ring, Matrix(self.ring, 0, [], (), ()), self.ideal)
        B, kept, _ = prune_presentation(self.presentation, self.ideal.gens)
        emb = self.embedding.submatrix(cols=kept) if self.embedding is not None else None
        return FPModule(self.ring, B, self.ideal, emb)

    def nu(self) -> int:
        """Minimal number of generators: rank of the module tensored with k."""
        if self.ideal.is_unit():
            return 0
        if self.ideal.gens and any(f.constant_term() for f in self.ideal.gens):
            return 0 if self.is_zero() else self.minimal_presentation().ngens
        if not self.presentation.is_homogeneous():
            raise NonHomogeneousError("minimal generator counts need a graded module")
        return self.ngens - _rank(self.ring.field, self.presentation.constant_part())

    # -- Hilbert functions -----------------------------------------------
    def _standard_terms(self):
        """Leading terms per component of a GB of the relations."""
        per: dict[int, list] = {i: [] for i in range(self.ngens)}
        for c, e in self.relation_gb().leading_terms():
            per[c].append(e)
        return per

    def is_finite_length(self) -> bool:
        n = self.ring.nvars
        for lts in self._standard_terms().values():
            for k in range(n):
                if not any(e[k] and sum(e) == e[k] for e in lts):
                    if not any(not any(e) for e in lts):
                        return False
        return True

    def hilbert_function(self, degree: int) -> int:
        """Vector-space dimension of the degree-``degree`` piece."""
        ring = self.ring
        total = 0
        for i, lts in self._standard_terms().items():
            d = degree - self.twists[i]
            if d < 0:
                continue
            for e in _monomials_of_degree(ring, d):
                if not any(all(a <= b for a, b in zip(l, e)) for l in lts):
                    total += 1
        return total

    def hilbert_dimensions(self) -> dict[int, int]:
        """All nonzero graded dimensions of a finite-length module."""
        if not self.is_finite_length():
            raise InputError("module does not have finite length")
        ring = self.ring
        out: dict[int, int] = {}
        for i, lts in self._standard_terms().items():
            for e in _standard_monomials(lts, ring.nvars):
                d = self.twists[i] + ring.degree(e)
                out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def length(self) -> int:
        return sum(self.hilbert_dimensions().values())

    # -- duals -----------------------------------------------------------
    def dual(self) -> FPModule:
        """Hom(M, R/I), embedded in the dual free module ``F0*``."""
        K = self._dual_generators()
        Z = kernel(K, ideal=self.ideal.gens, source_ideal=self.ideal.gens)
        return FPModule(self.ring, Z, self.ideal, embedding=K)

    def _dual_generators(self) -> Matrix:
        A = self.presentation
        At = A.transpose()
        if A.ncols == 0:
            return Matrix.identity(self.ring, self.ngens, tuple(-d for d in self.twists))
        return kernel(At, ideal=self.ideal.gens, source_ideal=self.ideal.gens)

    def resolution(self) -> FreeResolution:
        """Minimal free resolution over the polynomial ring."""
        return minimal_free_resolution(self.presentation, self.ideal.gens)

    def tensor_residue_rank(self) -> int:
        return self.nu()


@dataclass
class ModuleMap:
    """Homomorphism given by a matrix on generators (target coordinates)."""

    source: FPModule
    target: FPModule
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.nrows != self.target.ngens or self.matrix.ncols != self.source.ngens:
            raise InputError("map matrix has the wrong shape")

    def is_well_defined(self) -> bool:
        """Source relations land in the target relations (normal-form check)."""
        image = self.matrix * self.source.presentation if self.source.presentation.ncols else None
        gb = self.target.relation_gb()
        if image is not None and not gb.contains_all(image.cols):
            return False
        if self.source.ideal.gens:
            for f in self.source.ideal.gens:
                for col in self.matrix.cols:
                    v = _scale_vec(col, f)
                    if v and not gb.contains(v):
                        return False
        return True

    def kernel_generators(self) -> Matrix:
        """Elements of the source free module mapping to zero in the target."""
        return kernel(self.matrix, modulo=self.target.presentation, ideal=self.target.ideal.gens)

    def is_injective(self) -> bool:
        K = self.kernel_generators()
        gb = self.source.relation_gb()
        return gb.contains_all(K.cols)

    def cokernel(self) -> FPModule:
        A = self.matrix.hstack(self.target.presentation) if self.target.presentation.ncols else self.matrix
        return FPModule(self.target.ring, A, self.target.ideal)

    def is_surjective(self) -> bool:
        return self.cokernel().is_zero()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()


def _scale_vec(v: dict, f: Polynomial) -> dict:
    out: dict = {}
    for (c, e), x in v.items():
        for e2, y in f.terms.items():
            k = (c, tuple(a + b for a, b in zip(e, e2)))
            out[k] = out.get(k, 0) + x * y
    mod = f.ring.field.modulus
    if mod:
        return {k: x % mod for k, x in out.items() if x % mod}
    return {k: x for k, x in out.items() if x}


def _rank(field, rows) -> int:
    """Rank of a scalar matrix by Gaussian elimination."""
    mat = [list(r) for r in rows]
    if not mat or not mat[0]:
        return 0
    mod = field.modulus
    rank = 0
    ncols = len(mat[0])
    for c in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = field.inverse(mat[rank][c])
        for r in range(len(mat)):
            if r != rank and mat[r][c]:
                f = mat[r][c] * inv
                mat[r] = [(a - f * b) % mod if mod else a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def _monomials_of_degree(ring: PolyRing, d: int):
    w = ring.weights
    n = ring.nvars

    def rec(i, left, cur):
        if i == n:
            if left == 0:
                yield tuple(cur)
            return
        for k in range(left // w[i] + 1):
            cur.append(k)
            yield from rec(i + 1, left - k * w[i], cur)
            cur.pop()

    if n == 0:
        if d == 0:
            yield ()
        return
    yield from rec(0, d, [])


def _standard_monomials(lts, nvars: int):
    """Monomials outside the monomial ideal generated by ``lts`` (finite case)."""
    def divisible(e):
        return any(all(a <= b for a, b in zip(l, e)) for l in lts)

    start = (0,) * nvars
    if divisible(start):
        return []
    seen = {start}
    stack = [start]
    while stack:
        e = stack.pop()
        for k in range(nvars):
            f = e[:k] + (e[k] + 1,) + e[k + 1:]
            if f not in seen and not divisible(f):
                seen.add(f)
                stack.append(f)
    return sorted(seen)


# -- constructions -------------------------------------------------------

def present_conormal(p: Ideal) -> FPModule:
    """p/p^2 over R/p: minimal generators, relations = syzygies mod p."""
    if not p.is_homogeneous():
        raise NonHomogeneousError("the conormal module needs a homogeneous ideal")
    if p.is_unit():
        raise InputError("the unit ideal has no conormal module")
    from .ideals import minimal_generators

    ring = p.ring
    gens = minimal_generators(p)
    degs = [f.degree() for f in gens]
    row = Matrix.from_rows(ring, [gens], row_degrees=(0,), col_degrees=degs)
    syz = kernel(row)
    phi = Matrix(ring, len(gens), syz.cols, degs, syz.col_degrees)
    gb = SubmoduleGB(ring, len(gens), degs, (), p.gens)
    cols = [gb.reduce(c) for c in phi.cols]
    keep = [j for j, c in enumerate(cols) if c]
    phibar = Matrix(ring, len(gens), [cols[j] for j in keep], degs, [phi.col_degrees[j] for j in keep])
    phibar = minimize_columns(phibar, ideal=p.gens)
    return FPModule(ring, phibar, p)


def syzygy_matrix(p: Ideal) -> Matrix:
    """Minimal syzygies of the minimal generators of ``p`` (degree-graded rows)."""
    from .ideals import minimal_generators

    ring = p.ring
    gens = minimal_generators(p)
    degs = [f.degree() for f in gens]
    row = Matrix.from_rows(ring, [gens], row_degrees=(0,), col_degrees=degs)
    syz = kernel(row)
    return Matrix(ring, len(gens), syz.cols, degs, syz.col_degrees)


def minimal_generators_count(M: FPModule) -> int:
    return M.nu()


def hom_module(M: FPModule, N: FPModule) -> FPModule:
    """Hom over R/I of two presented modules, presented on its generators.

    Hom(M, N) is the kernel of ``N^{r0} -> N^{r1}`` induced by the
    transpose of M's presentation; the generators found in ``G0^{r0}``
    are then presented by their own syzygies modulo ``N``'s relations.
    """
    if M.ring != N.ring or not (M.ideal == N.ideal):
        raise RingMismatchError("Hom needs modules over the same base ring")
    ring = M.ring
    ideal = M.ideal.gens
    A = M.presentation
    B = N.presentation
    r0, r1 = A.nrows, A.ncols
    g0 = B.nrows
    if r0 == 0 or g0 == 0:
        return FPModule(ring, Matrix(ring, 0, [], (), ()), M.ideal)
    # coordinates of X in Hom(F0, G0): index f*g0 + g, degree b_g - a_f
    src_deg = [N.twists[g] - M.twists[f] for f in range(r0) for g in range(g0)]
    tgt_deg = [N.twists[g] - A.col_degrees[j] for j in range(r1) for g in range(g0)]
    cols = []
    for f in range(r0):
        for g in range(g0):
            v = {}
            for j in range(r1):
                for (row, e), x in A.cols[j].items():
                    if row == f:
                        v[(j * g0 + g, e)] = x
            cols.append(v)
    big_B_src = _block_diag(B, r0)
    if r1:
        Phi = Matrix(ring, r1 * g0, cols, tgt_deg, src_deg)
        big_B_tgt = _block_diag(B, r1)
        W = kernel(Phi, modulo=big_B_tgt if big_B_tgt.ncols else None, ideal=ideal, minimal=False)
        W = minimize_columns(W, modulo=big_B_src if big_B_src.ncols else None, ideal=ideal)
    else:
        W = minimize_columns(Matrix.identity(ring, r0 * g0, src_deg), modulo=big_B_src if big_B_src.ncols else None, ideal=ideal)
    if W.ncols == 0:
        return FPModule(ring, Matrix(ring, 0, [], (), ()), M.ideal)
    rel = kernel(W, modulo=big_B_src if big_B_src.ncols else None, ideal=ideal, source_ideal=ideal)
    return FPModule(ring, rel, M.ideal, embedding=W)


def _block_diag(B: Matrix, copies: int) -> Matrix:
    rows = B.nrows
    cols, rdeg, cdeg = [], [], []
    for k in range(copies):
        rdeg.extend(B.row_degrees)
        for j, c in enumerate(B.cols):
            cols.append({(r + k * rows, e): x for (r, e), x in c.items()})
            cdeg.append(B.col_degrees[j])
    return Matrix(B.ring, rows * copies, cols, rdeg, cdeg)


@dataclass
class BidualResult:
    """Outcome of comparing a module with its double dual."""

    module: FPModule
    dual: FPModule
    bidual: FPModule
    canonical_map: ModuleMap
    injective: bool
    surjective: bool
    defect: FPModule

    @property
    def is_reflexive(self) -> bool:
        return self.injective and self.surjective

    def as_tuple(self):
        return self.bidual, self.canonical_map, self.is_reflexive, self.defect


def bidual_and_compare(M: FPModule) -> BidualResult:
    """Double dual, evaluation map, reflexivity and the cokernel of evaluation.

    The dual is generated by the columns of K inside ``F0*``; the bidual
    is generated by the columns of K2 inside the dual of K's free source,
    and evaluation sends generator i of M to row i of K.  Torsion-freeness
    of M is the caller's responsibility.
    """
    ring = M.ring
    ideal = M.ideal.gens
    D = M.dual()
    K = D.embedding
    if K.ncols == 0:
        zero = FPModule(ring, Matrix(ring, 0, [], (), ()), M.ideal)
        ev = ModuleMap(M, zero, Matrix(ring, 0, [{} for _ in range(M.ngens)], (), M.twists))
        inj = M.is_zero()
        return BidualResult(M, D, zero, ev, inj, True, zero)
    DD = D.dual()
    K2 = DD.embedding
    Kt = K.transpose()
    lifted = lift_vectors(K2, Kt.cols, ideal)
    if any(v is None for v in lifted):
        raise InputError("evaluation map does not land in the bidual (is the module graded?)")
    ev_mat = Matrix(ring, K2.ncols, lifted, K2.col_degrees, M.twists)
    ev = ModuleMap(M, DD, ev_mat)
    # injectivity: elements of F0 killed by K^T must already be relations
    ker = kernel(Kt, ideal=ideal, source_ideal=ideal)
    injective = M.relation_gb().contains_all(ker.cols)
    defect = ev.cokernel().minimal_presentation()
    surjective = defect.is_zero()
    return BidualResult(M, D, DD, ev, injective, surjective, defect)


def is_reflexive(M: FPModule) -> bool:
    return bidual_and_compare(M).is_reflexive


# -- Koszul complex, depth, Ext ------------------------------------------

def koszul_matrix(gens, i: int, ring: PolyRing) -> Matrix:
    """Differential ``K_i -> K_{i-1}`` on the exterior powers of R^n."""
    n = len(gens)
    degs = [f.degree() for f in gens]
    src = list(combinations(range(n), i))
    tgt = list(combinations(range(n), i - 1))
    pos = {s: k for k, s in enumerate(tgt)}
    cols = []
    for s in src:
        v = {}
        for k, idx in enumerate(s):
            rest = s[:k] + s[k + 1:]
            sign = -1 if k % 2 else 1
            for e, x in gens[idx].terms.items():
                v[(pos[rest], e)] = sign * x if not ring.field.modulus else (sign * x) % ring.field.modulus
        cols.append(v)
    return Matrix(ring, len(tgt), cols, [sum(degs[j] for j in t) for t in tgt], [sum(degs[j] for j in s) for s in src])


def koszul_homology(I: Ideal, i: int) -> FPModule:
    """H_i of the Koszul complex on the listed generators of I, over R."""
    ring = I.ring
    gens = list(I.gens)
    n = len(gens)
    if i < 0 or i > n:
        raise InputError(f"Koszul index {i} outside [0, {n}]")
    if i == 0:
        cyc = Matrix.identity(ring, 1, (0,))
    else:
        d_i = koszul_matrix(gens, i, ring)
        cyc = kernel(d_i)
    if cyc.ncols == 0:
        return FPModule(ring, Matrix(ring, 0, [], (), ()))
    bnd = koszul_matrix(gens, i + 1, ring) if i < n else None
    rel = kernel(cyc, modulo=bnd if bnd is not None and bnd.ncols else None)
    return FPModule(ring, rel, embedding=cyc)


def depth_via_ab(M: FPModule):
    """depth = dim R - projective dimension (Auslander-Buchsbaum)."""
    if M.is_zero():
        return INFINITE_DEPTH
    res = M.resolution()
    return M.ring.nvars - res.length


def projective_dimension(M: FPModule) -> int:
    return M.resolution().length


def ext_against_ring(M: FPModule, i: int) -> FPModule:
    """Ext^i_R(M, R) from the dual of a minimal free resolution."""
    if i < 0:
        raise InputError("Ext index must be non-negative")
    ring = M.ring
    res = M.resolution()
    maps = res.maps
    twists = res.twists
    if i >= len(twists) or not twists[i]:
        return FPModule(ring, Matrix(ring, 0, [], (), ()))
    dual_tw = tuple(-d for d in twists[i])
    # d_{i+1}: F_{i+1} -> F_i is maps[i]; its transpose leaves F_i*
    if i < len(maps) and maps[i].ncols:
        cyc = kernel(maps[i].transpose())
    else:
        cyc = Matrix.identity(ring, len(dual_tw), dual_tw)
    if cyc.ncols == 0:
        return FPModule(ring, Matrix(ring, 0, [], (), ()))
    bnd = maps[i - 1].transpose() if i >= 1 else None
    rel = kernel(cyc, modulo=bnd if bnd is not None and bnd.ncols else None)
    return FPModule(ring, rel, embedding=cyc)


def determinant_ideal(embedding: Matrix, rank: int | None = None) -> Ideal:
    """Ideal of maximal (rank x rank) minors of an embedding into a free module."""
    r = embedding.nrows if rank is None else rank
    if rank is not None and rank != embedding.nrows:
        raise InputError("embedding target rank must equal the module rank")
    if embedding.ncols < r:
        raise InputError(f"embedding has {embedding.ncols} columns, fewer than its rank {r}")
    return Ideal(embedding.ring, embedding.minors(r))


def module_rank(M: FPModule) -> int:
    """Generic rank over a domain R/I: generators minus the rank of the relations.

    The relation rank is the largest s with an s x s minor outside I.
    """
    A = M.presentation
    n = M.ngens
    for s in range(min(n, A.ncols), 0, -1):
        if any(not M.ideal.contains(f) for f in A.minors(s)):
            return n - s
    return n


def m_full_test(M: FPModule, candidates=None, seed: int = 0, attempts: int = 32):
    """First form x with ``(m N :_F x) = N`` for N the embedded image of M.

    Candidates default to the variables followed by seeded pseudo-random
    linear forms.  Returns the witness polynomial or None (inconclusive).
    """
    if M.embedding is None:
        raise InputError("m-full test needs a module with an embedding")
    ring = M.ring
    E = M.embedding
    ideal = M.ideal.gens
    e = E.nrows
    if candidates is None:
        candidates = list(ring.gens)
        rng = random.Random(seed)
        while len(candidates) < attempts:
            f = ring.zero()
            for v in ring.gens:
                f = f + v.scale(ring.field.convert(rng.randint(-5, 5)))
            if f:
                candidates.append(f)
    N_gb = SubmoduleGB.of(E, ideal)
    # m*N as explicit columns
    mcols, mdeg = [], []
    for j, col in enumerate(E.cols):
        for k, v in enumerate(ring.gens):
            w = _scale_vec(col, v)
            if w:
                mcols.append(w)
                mdeg.append(E.col_degrees[j] + ring.weights[k])
    mN = Matrix(ring, e, mcols, E.row_degrees, mdeg)
    for x in list(candidates)[:attempts]:
        x = ring.convert(x)
        if not x:
            continue
        xcols = [{(i, ee): c for ee, c in x.terms.items()} for i in range(e)]
        X = Matrix(ring, e, xcols, E.row_degrees, [d + x.degree() for d in E.row_degrees])
        col = kernel(X, modulo=mN if mN.ncols else None, ideal=ideal)
        if N_gb.contains_all(col.cols):
            return x
    return None


def vector_of(polys) -> dict:
    return polys_to_vector(polys)


def polys_of(M: FPModule, v: dict) -> list[Polynomial]:
    return vector_to_polys(M.ring, v, M.ngens)
