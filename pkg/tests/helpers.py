"""Shared fixtures data and independent oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import sympy

from conormal_lab.arith import QQ, ring_create
from conormal_lab.groebner.matrix import Matrix
from conormal_lab.ideals import Ideal

CUBIC_VARS = ("u", "v", "t", "w")
# generator order matching the syzygy matrix and relation forms used below
CUBIC_GENS = ("u*t - v^2", "u*w - t*v", "v*w - t^2")
CUBIC_LINEAR_FORMS = ("-t*x1 + v*x2 - u*x3", "w*x1 - t*x2 + v*x3")
CUBIC_CLOSURE = ("Y*w - t*x3", "Y*t - v*x3", "Y*v - u*x3", "Y*u + v*x1 - u*x2", "Y^2 - Y*x2 + x1*x3")

MINORS_VARS = ("x", "y", "z", "u", "v")
MINORS_MATRIX = (("x", "v - u", "z"), ("y", "x", "v"), ("z", "u", "x"), ("u", "z", "y"))


def twisted_cubic():
    R = ring_create(CUBIC_VARS)
    return R, Ideal(R, list(CUBIC_GENS))


def four_minors():
    R = ring_create(MINORS_VARS)
    A = Matrix.from_rows(R, [list(r) for r in MINORS_MATRIX])
    return R, A, Ideal(R, A.minors(3))


# -- sympy oracle ------------------------------------------------------------

def to_sympy(f, symbols):
    """Convert a polynomial term by term (no string round trip)."""
    expr = sympy.Integer(0)
    for e, c in f.terms.items():
        c = Fraction(int(c.numerator), int(c.denominator)) if hasattr(c, "numerator") else Fraction(int(c))
        mono = sympy.Integer(1)
        for s, k in zip(symbols, e):
            mono *= s**k
        expr += sympy.Rational(c.numerator, c.denominator) * mono
    return expr


def sympy_reduced_gb(polys, ring):
    """Reduced GB from sympy, as a set of sorted term dictionaries."""
    syms = sympy.symbols(ring.names)
    order = {"grevlex": "grevlex", "lex": "lex"}[ring.order.kind]
    G = sympy.groebner([to_sympy(f, syms) for f in polys], *syms, order=order, domain="QQ")
    return {_sym_key(g, syms, order) for g in G.exprs}


def _sym_key(expr, syms, order):
    P = sympy.Poly(expr, *syms, domain="QQ")
    lc = P.LC(order=order)
    out = []
    for m, c in P.terms():
        q = sympy.Rational(c / lc)
        out.append((m, Fraction(int(q.p), int(q.q))))
    return frozenset(out)


def our_key(f):
    """Monic normalization of one of our polynomials, comparable with ``_sym_key``."""
    lc = f.lc
    return frozenset((e, Fraction(int((c / lc).numerator), int((c / lc).denominator))) for e, c in f.terms.items())


# -- random data -------------------------------------------------------------

def monomials_of_degree(n: int, d: int):
    for c in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in c:
            e[i] += 1
        yield tuple(e)


def random_poly(rng: random.Random, ring, degree: int, terms: int, homogeneous: bool = True, coeff: int = 5):
    n = ring.nvars
    if homogeneous:
        pool = list(monomials_of_degree(n, degree))
    else:
        pool = [m for d in range(degree + 1) for m in monomials_of_degree(n, d)]
    f = ring.zero()
    for e in rng.sample(pool, min(terms, len(pool))):
        c = rng.randint(-coeff, coeff) or 1
        f = f + ring.monomial(e, c)
    return f


def brute_monomial_dimension(monomials, n: int) -> int:
    """Largest variable subset avoiding every monomial's support (Krull dim of R/I)."""
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in monomials]
    if any(not s for s in supports):
        return -1
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            if not any(s <= set(S) for s in supports):
                return size
    return 0


def regular_sequence_depth(I: Ideal, rng: random.Random, tries: int = 3) -> int:
    """Depth of R/I by greedily extending a regular sequence of random linear forms."""
    from conormal_lab.ideals import ideal_quotient

    ring = I.ring
    J = I
    depth = 0
    for _ in range(ring.nvars):
        found = False
        for _ in range(tries):
            x = ring.zero()
            for v in ring.gens:
                x = x + v * ring.const(rng.randint(1, 97))
            if J.is_unit():
                return depth
            if ideal_quotient(J, Ideal(ring, [x])) == J:
                J = J + Ideal(ring, [x])
                depth += 1
                found = True
                break
        if not found:
            break
    return depth
