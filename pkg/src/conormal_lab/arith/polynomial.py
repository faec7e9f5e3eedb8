"""Polynomial rings and sparse multivariate polynomials."""

from __future__ import annotations

from fractions import Fraction
from operator import add

from ..errors import DivisionError, FieldError, InputError, RingMismatchError
from .fields import QQ, Field
from .orders import GREVLEX, MonomialOrder


class PolyRing:
    """k[x_1, ..., x_n] with a monomial order and positive grading weights."""

    __slots__ = ("names", "field", "order", "weights", "nvars", "key", "_index", "_hash")

    def __init__(self, names, field: Field = QQ, order: MonomialOrder = GREVLEX, weights=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise InputError(f"duplicate variable name(s): {', '.join(dup)}")
        for n in names:
            if not isinstance(n, str) or not n or not (n[0].isalpha() or n[0] == "_"):
                raise InputError(f"invalid variable name {n!r}")
            if not all(ch.isalnum() or ch == "_" for ch in n):
                raise InputError(f"invalid variable name {n!r}")
        if not isinstance(field, Field):
            raise FieldError(f"not a field descriptor: {field!r}")
        if isinstance(order, str):
            order = MonomialOrder(order)
        weights = tuple(int(w) for w in weights) if weights is not None else (1,) * len(names)
        if len(weights) != len(names) or any(w <= 0 for w in weights):
            raise InputError("grading weights must be strictly positive, one per variable")
        self.names = names
        self.field = field
        self.order = order
        self.weights = weights
        self.nvars = len(names)
        self.key = order.key_function(self.nvars, weights)
        self._index = {n: i for i, n in enumerate(names)}
        self._hash = hash((names, field, order, weights))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.field == other.field
            and self.order == other.order
            and self.weights == other.weights
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"PolyRing({', '.join(self.names)}; {self.field}; {self.order})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown variable {name!r}") from None

    def degree(self, exps) -> int:
        return sum(map(int.__mul__, self.weights, exps))

    @property
    def gens(self) -> list[Polynomial]:
        return [self.var(n) for n in self.names]

    def var(self, name: str) -> Polynomial:
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): self.field.one}, _trusted=True)

    def zero(self) -> Polynomial:
        return Polynomial(self, {}, _trusted=True)

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        c = self.field.convert(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {}, _trusted=True)

    def monomial(self, exps, coeff=1) -> Polynomial:
        exps = tuple(int(x) for x in exps)
        if len(exps) != self.nvars or min(exps, default=0) < 0:
            raise InputError("exponent vector does not match the ring")
        c = self.field.convert(coeff)
        return Polynomial(self, {exps: c} if c else {}, _trusted=True)

    def parse(self, text: str) -> Polynomial:
        from .parsing import parse_polynomial

        return parse_polynomial(self, text)

    def __call__(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            return self.convert(value)
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def convert(self, f: Polynomial) -> Polynomial:
        """Reinterpret ``f`` in this ring, matching variables by name."""
        if f.ring == self:
            return f
        if f.ring.field != self.field:
            raise RingMismatchError(f"cannot move {f.ring.field} polynomial into {self.field}")
        pos = []
        for i, n in enumerate(f.ring.names):
            j = self._index.get(n)
            pos.append(j)
        terms = {}
        for e, c in f.terms.items():
            new = [0] * self.nvars
            for i, x in enumerate(e):
                if x:
                    if pos[i] is None:
                        raise RingMismatchError(f"variable {f.ring.names[i]} is not in {self}")
                    new[pos[i]] = x
            terms[tuple(new)] = c
        return Polynomial(self, terms, _trusted=True)

    def with_order(self, order: MonomialOrder) -> PolyRing:
        return PolyRing(self.names, self.field, order, self.weights)

    def with_weights(self, weights) -> PolyRing:
        return PolyRing(self.names, self.field, self.order, weights)

    def extend(self, names, weights=None, order: MonomialOrder | None = None, front=False) -> PolyRing:
        """A ring with extra variables appended (or prepended when ``front``)."""
        names = tuple(names)
        extra_w = tuple(weights) if weights is not None else (1,) * len(names)
        if front:
            return PolyRing(names + self.names, self.field, order or self.order, extra_w + self.weights)
        return PolyRing(self.names + names, self.field, order or self.order, self.weights + extra_w)


class Polynomial:
    """Immutable sparse polynomial: terms map exponent tuples to nonzero scalars.

    The term dict is kept in strictly descending order for the ring's
    monomial order, so the first entry is the leading term.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms=None, _trusted: bool = False):
        self.ring = ring
        self._hash = None
        if not terms:
            self.terms = {}
            return
        if not _trusted:
            conv = ring.field.convert
            clean = {}
            n = ring.nvars
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != n or (e and min(e) < 0):
                    raise InputError("exponent vector does not match the ring")
                c = conv(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            terms = {e: c for e, c in clean.items() if c}
            if ring.field.modulus:
                terms = {e: c % ring.field.modulus for e, c in terms.items() if c % ring.field.modulus}
        else:
            terms = {e: c for e, c in terms.items() if c}
        key = ring.key
        self.terms = dict(sorted(terms.items(), key=lambda t: key(t[0]), reverse=True))

    # -- basic accessors -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def lm(self) -> tuple:
        if not self.terms:
            raise InputError("zero polynomial has no leading monomial")
        return next(iter(self.terms))

    @property
    def lc(self):
        if not self.terms:
            return self.ring.field.zero
        return next(iter(self.terms.values()))

    def degree(self) -> int:
        """Weighted total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        deg = self.ring.degree
        return max(deg(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        deg = self.ring.degree
        return len({deg(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def variables(self) -> set[int]:
        out = set()
        for e in self.terms:
            out.update(i for i, x in enumerate(e) if x)
        return out

    def homogeneous_components(self) -> dict[int, Polynomial]:
        parts: dict[int, dict] = {}
        deg = self.ring.degree
        for e, c in self.terms.items():
            parts.setdefault(deg(e), {})[e] = c
        return {d: Polynomial(self.ring, t, _trusted=True) for d, t in sorted(parts.items())}

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: Polynomial):
        if other.ring != self.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.const(other)
        if hasattr(other, "numerator") and not isinstance(other, bool):
            return self.ring.const(other)
        return NotImplemented

    def _reduce_mod(self, terms):
        m = self.ring.field.modulus
        if m:
            return {e: c % m for e, c in terms.items() if c % m}
        return {e: c for e, c in terms.items() if c}

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(self.ring, self._reduce_mod(terms), _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        m = self.ring.field.modulus
        if m:
            return Polynomial(self.ring, {e: (-c) % m for e, c in self.terms.items()}, _trusted=True)
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        get = terms.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(add, e1, e2))
                terms[e] = get(e, 0) + c1 * c2
        return Polynomial(self.ring, self._reduce_mod(terms), _trusted=True)

    __rmul__ = __mul__

    def scale(self, c) -> Polynomial:
        c = self.ring.field.convert(c)
        return Polynomial(self.ring, self._reduce_mod({e: c * v for e, v in self.terms.items()}), _trusted=True)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InputError("polynomial powers need a non-negative integer exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        """Division by a nonzero scalar, or exact division by a polynomial."""
        if isinstance(other, Polynomial):
            return self.exact_divide(other)
        c = self.ring.field.convert(other)
        if not c:
            raise ZeroDivisionError("division by zero scalar")
        return self.scale(self.ring.field.inverse(c))

    def exact_divide(self, other: Polynomial) -> Polynomial:
        self._check(other)
        if other.is_zero():
            raise DivisionError("division by the zero polynomial")
        field = self.ring.field
        lm_g, lc_g = other.lm, other.lc
        inv = field.inverse(lc_g)
        rest = self
        quotient: dict = {}
        while rest.terms:
            e, c = next(iter(rest.terms.items()))
            shift = tuple(a - b for a, b in zip(e, lm_g))
            if min(shift, default=0) < 0:
                raise DivisionError(f"{other} does not divide {self}")
            q = c * inv
            if field.modulus:
                q %= field.modulus
            quotient[shift] = q
            rest = rest - Polynomial(self.ring, {shift: q}, _trusted=True) * other
        return Polynomial(self.ring, quotient, _trusted=True)

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        return self.scale(self.ring.field.inverse(self.lc))

    def mul_term(self, exps, coeff) -> Polynomial:
        m = self.ring.field.modulus
        terms = {tuple(map(add, e, exps)): c * coeff for e, c in self.terms.items()}
        return Polynomial(self.ring, self._reduce_mod(terms) if m else terms, _trusted=True)

    def subs(self, values: dict | list) -> Polynomial:
        """Substitute polynomials (possibly from another ring) for variables.

        ``values`` maps variable names or indices to polynomials or scalars;
        a list gives one value per variable.  Unlisted variables are kept
        only if the target ring has them.
        """
        if isinstance(values, (list, tuple)):
            values = dict(enumerate(values))
        images = {}
        target = None
        for k, v in values.items():
            i = k if isinstance(k, int) else self.ring.index(k)
            images[i] = v
            if isinstance(v, Polynomial):
                if target is None:
                    target = v.ring
                elif v.ring != target:
                    raise RingMismatchError("substituted values live in different rings")
        target = target or self.ring
        if target.field != self.ring.field:
            raise RingMismatchError("cannot substitute across fields")
        vals = []
        for i in range(self.ring.nvars):
            v = images.get(i)
            if v is None:
                v = target.var(self.ring.names[i])
            elif not isinstance(v, Polynomial):
                v = target.const(v)
            vals.append(v)
        powers: dict = {}
        result = target.zero()
        for e, c in self.terms.items():
            term = Polynomial(target, {(0,) * target.nvars: c}, _trusted=True)
            for i, x in enumerate(e):
                if x:
                    if (i, x) not in powers:
                        powers[i, x] = vals[i] ** x
                    term = term * powers[i, x]
            result = result + term
        return result

    def evaluate(self, point) -> object:
        """Evaluate at a point given as a sequence of scalars."""
        field = self.ring.field
        pt = [field.convert(x) for x in point]
        total = field.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * x**k
            total += v
        if field.modulus:
            total %= field.modulus
        return total

    # -- comparison and hashing -----------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- formatting ------------------------------------------------------
    def format(self) -> str:
        if not self.terms:
            return "0"
        field = self.ring.field
        names = self.ring.names
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(
                names[i] if x == 1 else f"{names[i]}^{x}" for i, x in enumerate(e) if x
            )
            if field.modulus:
                sign, mag = "+", field.format(c)
            else:
                sign = "-" if c < 0 else "+"
                mag = field.format(abs(c))
            if mono:
                body = mono if mag == "1" else f"{mag}*{mono}"
            else:
                body = mag
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = format

    def __repr__(self) -> str:
        return f"Polynomial({self.format()!r})"

    def validate(self) -> None:
        """Raise AssertionError if the canonical-form invariants are broken."""
        key = self.ring.key
        keys = [key(e) for e in self.terms]
        assert all(a > b for a, b in zip(keys, keys[1:])), "terms not strictly descending"
        assert all(c for c in self.terms.values()), "zero coefficient stored"
        m = self.ring.field.modulus
        if m:
            assert all(0 < c < m for c in self.terms.values()), "coefficient outside [0, p)"
        for e in self.terms:
            assert len(e) == self.ring.nvars and min(e, default=0) >= 0
