"""Ideals of a polynomial ring: arithmetic, colon, saturation, dimension, minors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arith.orders import MonomialOrder
from .arith.polynomial import PolyRing, Polynomial
from .errors import InputError, NonHomogeneousError, RingMismatchError
from .groebner.basis import GroebnerBasis, eliminate_polys, groebner_basis
from .groebner.matrix import Matrix
from .groebner.syzygy import kernel, minimize_columns

INFINITE_HEIGHT = math.inf


class Ideal:
    """An ideal given by generators, with Groebner bases cached per order."""

    def __init__(self, ring: PolyRing, gens=()):
        self.ring = ring
        out = []
        for f in gens:
            f = ring(f) if not isinstance(f, Polynomial) else f
            if f.ring != ring:
                f = ring.convert(f)
            if f and f not in out:
                out.append(f)
        self.gens = out
        self._gb: dict[MonomialOrder, GroebnerBasis] = {}

    def __repr__(self) -> str:
        return f"Ideal({', '.join(map(str, self.gens)) or '0'})"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    # -- Groebner data ---------------------------------------------------
    def gb(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        if order not in self._gb:
            if not self.gens:
                work = self.ring if order == self.ring.order else self.ring.with_order(order)
                self._gb[order] = groebner_basis([work.zero()], ring=work)
            else:
                self._gb[order] = groebner_basis(self.gens, order)
        return self._gb[order]

    def contains(self, f) -> bool:
        f = self.ring(f) if not isinstance(f, Polynomial) else self.ring.convert(f)
        if not f:
            return True
        if not self.gens:
            return False
        return self.gb().contains(f)

    def contains_ideal(self, other: Ideal) -> bool:
        self._same_ring(other)
        return all(self.contains(f) for f in other.gens)

    def normal_form(self, f) -> Polynomial:
        if not self.gens:
            return self.ring.convert(f)
        return self.gb().normal_form(f)

    def is_unit(self) -> bool:
        return bool(self.gens) and self.gb().is_unit()

    def is_zero(self) -> bool:
        return not self.gens

    def is_homogeneous(self) -> bool:
        return all(f.is_homogeneous() for f in self.gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ring != self.ring:
            return False
        return self.contains_ideal(other) and other.contains_ideal(self)

    def __hash__(self):
        return hash(self.ring)

    def _same_ring(self, other: Ideal):
        if other.ring != self.ring:
            raise RingMismatchError("ideals live in different rings")

    def reduced_generators(self) -> list[Polynomial]:
        return list(self.gb().generators) if self.gens else []

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: Ideal) -> Ideal:
        return ideal_sum(self, other)

    def __mul__(self, other: Ideal) -> Ideal:
        return ideal_product(self, other)

    def __and__(self, other: Ideal) -> Ideal:
        return ideal_intersection(self, other)

    def quotient(self, other: Ideal) -> Ideal:
        return ideal_quotient(self, other)

    def saturate(self, other: Ideal) -> Ideal:
        return saturate(self, other)

    def dimension(self) -> int:
        return dimension_and_height(self)[0]

    def height(self):
        """Height, with the unit ideal at the infinite sentinel."""
        if self.is_unit():
            return INFINITE_HEIGHT
        return dimension_and_height(self)[1]

    def minimal_generators(self) -> list[Polynomial]:
        return minimal_generators(self)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    I._same_ring(J)
    return Ideal(I.ring, I.gens + J.gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    I._same_ring(J)
    return Ideal(I.ring, [f * g for f in I.gens for g in J.gens])


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I meet J as the t-free part of ``t*I + (1 - t)*J``."""
    I._same_ring(J)
    ring = I.ring
    if not I.gens or not J.gens:
        return Ideal(ring, [])
    tname = "_t"
    while tname in ring.names:
        tname += "_"
    big = ring.extend([tname], front=True)
    t = big.var(tname)
    one = big.one()
    gens = [t * big.convert(f) for f in I.gens] + [(one - t) * big.convert(g) for g in J.gens]
    polys = eliminate_polys(gens, [tname], big, weights=(1,) * big.nvars)
    return Ideal(ring, [ring.convert(p) for p in polys])


def colon_element(I: Ideal, g: Polynomial) -> Ideal:
    """I : g from the syzygies of ``(g, I)``; the first coordinates."""
    ring = I.ring
    g = ring.convert(g)
    if not g:
        return Ideal(ring, [ring.one()])
    if not I.gens:
        return Ideal(ring, [])
    A = Matrix.from_rows(ring, [[g]], row_degrees=(0,), col_degrees=(g.degree(),))
    Q = Matrix.from_rows(ring, [I.gens], row_degrees=(0,), col_degrees=[f.degree() for f in I.gens])
    K = kernel(A, modulo=Q)
    return Ideal(ring, [K.entry(0, j) for j in range(K.ncols)])


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    I._same_ring(J)
    if not J.gens:
        raise InputError("quotient by the zero ideal")
    out = None
    for g in J.gens:
        c = colon_element(I, g)
        out = c if out is None else ideal_intersection(out, c)
    return Ideal(I.ring, out.reduced_generators()) if out.gens else out


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """I : J^infinity as the stable value of repeated quotients."""
    I._same_ring(J)
    if not J.gens:
        raise InputError("saturation by the zero ideal")
    current = I
    while True:
        nxt = ideal_quotient(current, J)
        if nxt == current:
            return nxt
        current = nxt


def max_independent_set(leading_monomials, nvars: int) -> tuple[int, ...]:
    """A largest variable set containing no support of a leading monomial."""
    supports = []
    for e in leading_monomials:
        s = frozenset(i for i, x in enumerate(e) if x)
        supports.append(s)
    if any(not s for s in supports):
        return ()
    best: list[tuple[int, ...]] = [()]

    def extend(chosen: list[int], start: int):
        if len(chosen) + (nvars - start) <= len(best[0]):
            return
        if len(chosen) > len(best[0]):
            best[0] = tuple(chosen)
        for v in range(start, nvars):
            cand = set(chosen) | {v}
            if any(s <= cand for s in supports):
                continue
            chosen.append(v)
            extend(chosen, v + 1)
            chosen.pop()

    extend([], 0)
    return best[0]


def dimension_and_height(I: Ideal) -> tuple[int, int]:
    """Krull dimension of R/I and height of I (a polynomial ring is catenary)."""
    n = I.ring.nvars
    if not I.gens:
        return n, 0
    gb = I.gb()
    if gb.is_unit():
        raise InputError("the unit ideal has no dimension")
    d = len(max_independent_set(gb.leading_monomials, n))
    return d, n - d


def height(I: Ideal):
    return I.height()


def fitting_ideal(A: Matrix, t: int) -> Ideal:
    """Ideal of the t x t minors (minor-size indexing, t <= 0 is the unit ideal)."""
    return Ideal(A.ring, A.minors(t))


def minimal_generators(I: Ideal) -> list[Polynomial]:
    if not I.is_homogeneous():
        raise NonHomogeneousError("minimal generators need a homogeneous ideal")
    if not I.gens:
        return []
    ring = I.ring
    A = Matrix.from_rows(ring, [I.gens], row_degrees=(0,), col_degrees=[f.degree() for f in I.gens])
    B = minimize_columns(A)
    return [B.entry(0, j) for j in range(B.ncols)]


def minimal_generator_count(I: Ideal) -> int:
    return len(minimal_generators(I))


@dataclass
class HeightEntry:
    index: int
    height: float
    bound: int
    passed: bool

    def as_dict(self) -> dict:
        h = self.height
        return {
            "index": self.index,
            "height": "infinity" if h == INFINITE_HEIGHT else int(h),
            "bound": self.bound,
            "pass": self.passed,
        }


@dataclass
class HeightProfile:
    """Heights of the minor ideals of a presentation against a bound per index."""

    entries: list[HeightEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failing(self) -> list[HeightEntry]:
        return [e for e in self.entries if not e.passed]

    def as_dicts(self) -> list[dict]:
        return [e.as_dict() for e in self.entries]
