"""Monomial orders.

A monomial is an exponent tuple.  Each order is realised as a sort key:
``key(a) > key(b)`` exactly when ``a > b`` in the order.  All keys are
linear in the exponents, which keeps them multiplicative.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InputError

_KINDS = ("grevlex", "lex", "elim", "wgrevlex")


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex``, ``elim`` (block order, split after ``split``
    variables, grevlex inside each block) or ``wgrevlex`` (grevlex refined
    from an explicit weight vector)."""

    kind: str = "grevlex"
    split: int | None = None
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InputError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and (self.split is None or self.split < 0):
            raise InputError("block elimination order needs a non-negative split point")
        if self.kind == "wgrevlex":
            if not self.weights or any(w <= 0 for w in self.weights):
                raise InputError("weighted order needs strictly positive weights")
            object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    def key_function(self, nvars: int, grading: tuple[int, ...] | None = None):
        """Return ``exps -> tuple``; ``grading`` supplies degree weights for grevlex."""
        w = grading if grading is not None else (1,) * nvars
        rng = range(nvars - 1, -1, -1)
        if self.kind == "lex":
            return tuple
        if self.kind == "grevlex" or self.kind == "wgrevlex":
            if self.kind == "wgrevlex":
                if len(self.weights) != nvars:
                    raise InputError("weight vector length does not match the ring")
                w = self.weights
            if all(x == 1 for x in w):
                def key(e):
                    return (sum(e),) + tuple(-e[i] for i in rng)
            else:
                def key(e):
                    return (sum(a * b for a, b in zip(w, e)),) + tuple(-e[i] for i in rng)
            return key
        k = self.split
        if k > nvars:
            raise InputError("split point exceeds the number of variables")
        first = range(k - 1, -1, -1)
        second = range(nvars - 1, k - 1, -1)
        w1, w2 = w[:k], w[k:]

        def key(e):
            return (
                (sum(a * b for a, b in zip(w1, e[:k])),)
                + tuple(-e[i] for i in first)
                + (sum(a * b for a, b in zip(w2, e[k:])),)
                + tuple(-e[i] for i in second)
            )

        return key

    def is_degree_compatible(self) -> bool:
        return self.kind in ("grevlex", "wgrevlex")

    def __str__(self) -> str:
        if self.kind == "elim":
            return f"elim({self.split})"
        if self.kind == "wgrevlex":
            return f"wgrevlex{self.weights}"
        return self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def monomial_compare(order: MonomialOrder, m1, m2, grading=None) -> int:
    """Return 1, 0 or -1 as ``m1`` is greater than, equal to, or less than ``m2``."""
    if len(m1) != len(m2):
        raise InputError(f"monomial arity mismatch: {len(m1)} vs {len(m2)}")
    key = order.key_function(len(m1), grading)
    a, b = key(tuple(m1)), key(tuple(m2))
    return (a > b) - (a < b)


def parse_order(text: str) -> MonomialOrder:
    text = text.strip()
    if text in ("grevlex", "lex"):
        return MonomialOrder(text)
    if text.startswith("elim"):
        inner = text[4:].strip("() ")
        return MonomialOrder("elim", split=int(inner))
    if text.startswith("wgrevlex"):
        inner = text[len("wgrevlex"):].strip("() ")
        return MonomialOrder("wgrevlex", weights=tuple(int(x) for x in inner.split(",")))
    raise InputError(f"unknown monomial order {text!r}")
