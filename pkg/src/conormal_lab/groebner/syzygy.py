"""Kernels, syzygies, minimal generators and submodule membership.

Everything here works on sparse vectors over a polynomial ring R, possibly
modulo a submodule ``im(Q) + I*F`` where I is an ideal of R.  Kernels use
the extended-component trick: the vectors ``(A_j, e_j)`` live in
``R^r (+) R^m`` with the first block ordered above the second, and Groebner
basis elements whose leading term falls in the second block are exactly
the kernel.
"""

from __future__ import annotations

from functools import lru_cache

from ..arith.polynomial import PolyRing, Polynomial
from ..errors import InputError
from .basis import poly_to_vec
from .engine import GBState, ModuleOrder
from .matrix import Matrix, vec_degree


def _shift(v: dict, off: int) -> dict:
    return {(c + off, e): x for (c, e), x in v.items()}


@lru_cache(maxsize=256)
def _ideal_basis_vectors(ring: PolyRing, polys: tuple) -> tuple:
    """Reduced GB of an ideal under the degree-compatible module order."""
    order = ModuleOrder(ring, twists=(0,), graded=True)
    st = GBState(order, ring.field, ideal_mode=True)
    st.add_generators([poly_to_vec(f) for f in polys if f])
    st.complete()
    return tuple(st.reduced_basis())


def ideal_on_components(ring: PolyRing, ideal, comps) -> list[dict]:
    """GB(I) placed on each listed component; together a GB of I*F."""
    polys = tuple(f for f in (ideal or ()) if f)
    if not polys:
        return []
    base = _ideal_basis_vectors(ring, polys)
    out = []
    for c in comps:
        for g in base:
            out.append(_shift(g, c))
    return out


def _check_ring(ring: PolyRing, ideal):
    for f in ideal or ():
        if f.ring != ring:
            raise InputError("ideal and matrix live in different rings")


class SubmoduleGB:
    """Groebner basis of ``im(A) + I*F`` inside a graded free module F."""

    def __init__(self, ring: PolyRing, rank: int, twists, columns=(), ideal=None):
        self.ring = ring
        self.rank = rank
        self.twists = tuple(twists)
        _check_ring(ring, ideal)
        order = ModuleOrder(ring, twists=self.twists, graded=True)
        self.state = GBState(order, ring.field)
        self.state.add_known_basis(ideal_on_components(ring, ideal, range(rank)))
        self.state.add_generators([dict(c) for c in columns if c])
        self.state.complete()

    @classmethod
    def of(cls, A: Matrix, ideal=None) -> SubmoduleGB:
        return cls(A.ring, A.nrows, A.row_degrees, A.cols, ideal)

    def reduce(self, v: dict) -> dict:
        return self.state.reduce(v)

    def contains(self, v: dict) -> bool:
        return self.state.contains(v)

    def contains_all(self, vectors) -> bool:
        return all(self.state.contains(v) for v in vectors)

    def leading_terms(self):
        return self.state.leading_terms()


def kernel(A: Matrix, modulo: Matrix | None = None, ideal=None, minimal: bool = True, source_ideal=None) -> Matrix:
    """Generators of ``{x in R^m : A x in im(modulo) + I*R^r}``.

    The result has ``A.ncols`` rows (graded by ``A.col_degrees``).  With
    ``minimal`` the generators are pruned to a minimal set (homogeneous
    input) or a greedy irredundant set otherwise.  When the source is
    itself a module over R/J, pass J as ``source_ideal``: generators are
    then minimized modulo ``J*R^m`` and returned in normal form.
    """
    ring = A.ring
    r, m = A.nrows, A.ncols
    _check_ring(ring, ideal)
    if modulo is not None and modulo.nrows != r:
        raise InputError("modulo matrix must have as many rows as the map")
    if m == 0:
        return Matrix(ring, 0, [], (), ())
    twists = tuple(A.row_degrees) + tuple(A.col_degrees)
    blocks = (0,) * r + (1,) * m
    order = ModuleOrder(ring, twists=twists, blocks=blocks, graded=True)
    st = GBState(order, ring.field, kernel_from=r)
    st.add_known_basis(ideal_on_components(ring, ideal, range(r)))
    gens = []
    for j, col in enumerate(A.cols):
        v = dict(col)
        v[(r + j, (0,) * ring.nvars)] = ring.field.one
        gens.append(v)
    if modulo is not None:
        gens.extend(dict(c) for c in modulo.cols if c)
    st.add_generators(gens)
    st.complete()
    kern = [_shift(v, -r) for v in st.syzygies + st.retired_syzygies()]
    out = Matrix(ring, m, kern, A.col_degrees)
    if source_ideal:
        gb = SubmoduleGB(ring, m, A.col_degrees, (), source_ideal)
        cols = [gb.reduce(c) for c in out.cols]
        keep = [j for j, c in enumerate(cols) if c]
        out = Matrix(ring, m, [cols[j] for j in keep], A.col_degrees, [out.col_degrees[j] for j in keep])
    if minimal:
        out = minimize_columns(out, ideal=source_ideal)
    return out


def syzygies(A: Matrix, minimal: bool = True) -> Matrix:
    """Syzygy matrix: columns generate the kernel of ``A`` on column vectors."""
    return kernel(A, minimal=minimal)


def minimize_columns(A: Matrix, modulo: Matrix | None = None, ideal=None) -> Matrix:
    """Subset of the columns of ``A`` generating ``im(A)`` modulo ``im(modulo) + I*F``.

    For homogeneous data the subset is minimal: generators are visited by
    increasing degree and kept only when their normal form against a
    degree-truncated basis of the already-kept part is nonzero.  Columns
    that vanish modulo the rest are dropped in any case.
    """
    ring = A.ring
    order = ModuleOrder(ring, twists=A.row_degrees, graded=True)
    st = GBState(order, ring.field)
    st.add_known_basis(ideal_on_components(ring, ideal, range(A.nrows)))
    if modulo is not None:
        st.add_generators([dict(c) for c in modulo.cols if c])
    homog = A.is_homogeneous() and (modulo is None or modulo.is_homogeneous())
    idx = [j for j in range(A.ncols) if A.cols[j]]
    if homog:
        idx.sort(key=lambda j: (A.col_degrees[j], j))
    keep = []
    for j in idx:
        col = A.cols[j]
        st.complete(A.col_degrees[j] if homog else None)
        if st.reduce(col):
            keep.append(j)
            st.add_generators([dict(col)])
    keep.sort()
    return A.submatrix(cols=keep)


def lift_vector(A: Matrix, v: dict, ideal=None) -> dict | None:
    """Coefficients ``c`` with ``v = A c`` modulo ``I*F``, or None if impossible."""
    lifts = lift_vectors(A, [v], ideal)
    return lifts[0]


def lift_vectors(A: Matrix, vectors, ideal=None) -> list:
    ring = A.ring
    r, m = A.nrows, A.ncols
    twists = tuple(A.row_degrees) + tuple(A.col_degrees)
    blocks = (0,) * r + (1,) * m
    order = ModuleOrder(ring, twists=twists, blocks=blocks, graded=True)
    st = GBState(order, ring.field)
    st.add_known_basis(ideal_on_components(ring, ideal, range(r)))
    z = (0,) * ring.nvars
    gens = []
    for j, col in enumerate(A.cols):
        g = dict(col)
        g[(r + j, z)] = ring.field.one
        gens.append(g)
    st.add_generators(gens)
    st.complete()
    out = []
    for v in vectors:
        rem = st.reduce(dict(v))
        if any(c < r for (c, _) in rem):
            out.append(None)
            continue
        out.append({(c - r, e): -x for (c, e), x in rem.items()})
    return out


def columns_in(A: Matrix, B: Matrix, ideal=None) -> bool:
    """Whether every column of A lies in ``im(B) + I*F``."""
    if A.nrows != B.nrows:
        raise InputError("row count mismatch")
    gb = SubmoduleGB.of(B, ideal)
    return gb.contains_all(A.cols)


def same_image(A: Matrix, B: Matrix, ideal=None) -> bool:
    return columns_in(A, B, ideal) and columns_in(B, A, ideal)


def ideal_matrix(ring: PolyRing, ideal, rank: int, twists) -> Matrix:
    """Columns ``f*e_i`` for generators f of I; presents I*F explicitly."""
    cols, degs = [], []
    for i in range(rank):
        for f in ideal or ():
            if f:
                cols.append(_shift(poly_to_vec(f), i))
                degs.append(twists[i] + f.degree())
    return Matrix(ring, rank, cols, twists, degs)


def prune_presentation(A: Matrix, ideal=None):
    """Remove generators killed by unit entries of a presentation matrix.

    Returns ``(B, kept_rows, substitution)`` where ``B`` presents the same
    module on the generators ``kept_rows`` of the original, and
    ``substitution`` maps each removed original row to a vector in the new
    generators expressing it.  Redundant relation columns are then dropped.
    """
    ring = A.ring
    field = ring.field
    z = (0,) * ring.nvars
    rows = list(range(A.nrows))
    cols = [dict(c) for c in A.cols]
    cdeg = list(A.col_degrees)
    subst: dict[int, dict] = {}
    mod = field.modulus
    while True:
        hit = None
        for j, col in enumerate(cols):
            for (r, e), c in col.items():
                if e == z:
                    hit = (j, r, c)
                    break
            if hit:
                break
        if hit is None:
            break
        j, i, c = hit
        pivot = cols.pop(j)
        cdeg.pop(j)
        inv = field.inverse(c)
        # e_i = -(1/c) * (pivot - c e_i)
        expr = {}
        for (r, e), x in pivot.items():
            if r != i:
                v = -x * inv
                expr[(r, e)] = v % mod if mod else v
        subst[i] = expr
        newcols = []
        for col in cols:
            a = {e: x for (r, e), x in col.items() if r == i}
            if not a:
                newcols.append(col)
                continue
            out = {k: x for k, x in col.items() if k[0] != i}
            for ea, xa in a.items():
                for (r, e), x in expr.items():
                    key = (r, tuple(p + q for p, q in zip(ea, e)))
                    v = out.get(key, 0) + xa * x
                    if mod:
                        v %= mod
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
            newcols.append(out)
        cols = newcols
        rows.remove(i)
    # rows removed earlier may refer to rows removed later; resolve in order
    order_removed = list(subst)
    resolved: dict[int, dict] = {}
    for i in reversed(order_removed):
        expr = subst[i]
        acc: dict = {}
        for (r, e), x in expr.items():
            if r in resolved:
                for (r2, e2), x2 in resolved[r].items():
                    key = (r2, tuple(p + q for p, q in zip(e, e2)))
                    v = acc.get(key, 0) + x * x2
                    if mod:
                        v %= mod
                    acc[key] = v
            else:
                key = (r, e)
                v = acc.get(key, 0) + x
                if mod:
                    v %= mod
                acc[key] = v
        resolved[i] = {k: v for k, v in acc.items() if v}
    pos = {r: k for k, r in enumerate(rows)}
    new_cols = [{(pos[r], e): x for (r, e), x in col.items()} for col in cols]
    B = Matrix(ring, len(rows), new_cols, [A.row_degrees[r] for r in rows], cdeg)
    B = minimize_columns(B, ideal=ideal)
    substitution = {i: {(pos[r], e): x for (r, e), x in v.items()} for i, v in resolved.items()}
    return B, rows, substitution


def vector_degree(ring: PolyRing, v: dict, twists) -> int | None:
    return vec_degree(ring, v, twists)


def vector_to_polys(ring: PolyRing, v: dict, rank: int) -> list[Polynomial]:
    parts: list[dict] = [{} for _ in range(rank)]
    for (c, e), x in v.items():
        parts[c][e] = x
    return [Polynomial(ring, p, _trusted=True) for p in parts]


def polys_to_vector(polys) -> dict:
    v = {}
    for i, f in enumerate(polys):
        for e, x in f.terms.items():
            v[(i, e)] = x
    return v
