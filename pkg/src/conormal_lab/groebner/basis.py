"""Groebner bases of ideals, normal forms, elimination and ring-map kernels."""

from __future__ import annotations

from ..arith.orders import MonomialOrder
from ..arith.polynomial import PolyRing, Polynomial
from ..errors import InputError, RingMismatchError
from .engine import GBState, ModuleOrder


def poly_to_vec(f: Polynomial, comp: int = 0) -> dict:
    return {(comp, e): c for e, c in f.terms.items()}


def vec_to_poly(ring: PolyRing, v: dict) -> Polynomial:
    return Polynomial(ring, {e: c for (_, e), c in v.items()}, _trusted=True)


def _common_ring(polys) -> PolyRing:
    rings = {f.ring for f in polys}
    if len(rings) > 1:
        raise RingMismatchError("generators live in different rings")
    return rings.pop()


class GroebnerBasis:
    """A Groebner basis of an ideal for one monomial order."""

    def __init__(self, ring: PolyRing, state: GBState, reduced: bool):
        self.ring = ring
        self.order = ring.order
        self.reduced = reduced
        self._state = state
        vecs = state.reduced_basis() if reduced else state.basis()
        self.generators = [vec_to_poly(ring, v) for v in vecs]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(map(str, self.generators))}], order={self.order})"

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and self.generators == other.generators

    @property
    def leading_monomials(self) -> list[tuple]:
        return [g.lm for g in self.generators]

    def normal_form(self, f: Polynomial) -> Polynomial:
        f = self.ring.convert(f)
        return vec_to_poly(self.ring, self._state.reduce(poly_to_vec(f)))

    def contains(self, f: Polynomial) -> bool:
        f = self.ring.convert(f)
        return self._state.contains(poly_to_vec(f))

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.generators)


def ideal_state(ring: PolyRing, polys) -> GBState:
    order = ModuleOrder(ring, graded=False)
    state = GBState(order, ring.field, ideal_mode=True)
    state.add_generators([poly_to_vec(f) for f in polys if f])
    return state


def groebner_basis(gens, order: MonomialOrder | str | None = None, reduced: bool = True, ring: PolyRing | None = None) -> GroebnerBasis:
    """Buchberger Groebner basis of the ideal generated by ``gens``."""
    gens = list(getattr(gens, "gens", gens))
    if ring is None:
        if not gens:
            raise InputError("cannot infer the ring of an empty generator list")
        ring = _common_ring(gens)
    if isinstance(order, str):
        order = MonomialOrder(order)
    if order is not None and order != ring.order:
        work = ring.with_order(order)
    else:
        work = ring
    polys = [work.convert(f) for f in gens]
    state = ideal_state(work, polys).complete()
    return GroebnerBasis(work, state, reduced)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of ``f`` modulo ``gb``; no term is divisible by a leading term."""
    if f.ring.names != gb.ring.names or f.ring.field != gb.ring.field:
        raise RingMismatchError("polynomial and basis live in different rings")
    return gb.normal_form(f)


def eliminate_polys(gens, drop, ring: PolyRing | None = None, weights=None) -> list[Polynomial]:
    """Generators of (gens) intersected with the subring without ``drop``.

    ``weights`` optionally regrades the working ring (e.g. to make a graph
    ideal homogeneous); it is given per variable of ``ring``.
    """
    gens = list(gens)
    if ring is None:
        ring = _common_ring(gens)
    drop = [ring.names[d] if isinstance(d, int) else d for d in drop]
    for d in drop:
        ring.index(d)
    if not drop:
        return [f for f in gens if f]
    keep = [n for n in ring.names if n not in drop]
    w = weights if weights is not None else ring.weights
    wmap = dict(zip(ring.names, w))
    names = tuple(drop) + tuple(keep)
    work = PolyRing(names, ring.field, MonomialOrder("elim", split=len(drop)), [wmap[n] for n in names])
    state = ideal_state(work, [work.convert(f) for f in gens]).complete()
    out_ring = PolyRing(keep, ring.field, ring.order, [ring.weights[ring.index(n)] for n in keep])
    k = len(drop)
    result = []
    for v in state.reduced_basis():
        if all(not any(e[:k]) for (_, e) in v):
            result.append(Polynomial(out_ring, {e[k:]: c for (_, e), c in v.items()}, _trusted=True))
    return result


def eliminate(I, drop_vars):
    """The elimination ideal of ``I`` in the variables outside ``drop_vars``."""
    from ..ideals import Ideal

    gens = list(getattr(I, "gens", I))
    ring = I.ring if hasattr(I, "ring") else _common_ring(gens)
    drop = list(drop_vars)
    keep = [n for n in ring.names if n not in drop]
    polys = eliminate_polys(gens, drop, ring)
    sub = PolyRing(keep, ring.field, ring.order, [ring.weights[ring.index(n)] for n in keep])
    return Ideal(sub, polys)


def kernel_of_ring_map(source: PolyRing, target_exprs):
    """Defining ideal of the subalgebra generated by ``target_exprs``.

    Variable ``source.names[i]`` maps to ``target_exprs[i]``; the kernel is
    found by eliminating the target variables from the graph ideal.
    """
    from ..ideals import Ideal

    exprs = list(target_exprs)
    if len(exprs) != source.nvars:
        raise InputError("need one target expression per source variable")
    if not exprs:
        return Ideal(source, [])
    target = _common_ring(exprs)
    if target.field != source.field:
        raise RingMismatchError("source and target fields differ")
    clash = set(source.names) & set(target.names)
    src_names = [f"_s{i}" if clash else n for i, n in enumerate(source.names)]
    # regrade so that the graph ideal is homogeneous when possible
    degs = [f.degree() for f in exprs]
    homog = all(f.is_homogeneous() and d > 0 for f, d in zip(exprs, degs) if f)
    src_w = [d if (homog and d > 0) else 1 for d in degs]
    tw = target.weights if homog else (1,) * target.nvars
    big = PolyRing(tuple(target.names) + tuple(src_names), source.field, target.order, tuple(tw) + tuple(src_w))
    graph = []
    for i, f in enumerate(exprs):
        graph.append(big.var(src_names[i]) - big.convert(f))
    polys = eliminate_polys(graph, list(target.names), big)
    out = [Polynomial(source, p.terms, _trusted=True) for p in polys]
    return Ideal(source, out)
