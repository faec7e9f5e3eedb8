"""Buchberger's algorithm over free modules R^r.

Vectors are dicts mapping a term ``(component, exponents)`` to a nonzero
raw scalar.  An ideal is the rank-one case (component 0 everywhere).  The
engine is deliberately low level: the public wrappers in ``basis``,
``matrix`` and ``syzygy`` convert to and from Polynomial objects.

Strategy: sugar-degree selection, Gebauer-Moeller pair elimination, full
reduction of every new element, heap-driven leading-term extraction.  For
homogeneous input the computation can be truncated at a degree and resumed.
"""

from __future__ import annotations

import contextlib
from heapq import heapify, heappop, heappush
from operator import add, le, mul, sub

from ..errors import ComputationLimitError

_STEP_LIMIT: list[int | None] = [None]


def get_step_limit() -> int | None:
    return _STEP_LIMIT[0]


@contextlib.contextmanager
def step_limit(limit: int | None):
    """Bound the number of S-pair/generator reductions per Groebner run."""
    old = _STEP_LIMIT[0]
    _STEP_LIMIT[0] = limit
    try:
        yield
    finally:
        _STEP_LIMIT[0] = old


class _Memo(dict):
    __slots__ = ("fn",)

    def __init__(self, fn):
        super().__init__()
        self.fn = fn

    def __missing__(self, k):
        v = self[k] = self.fn(k)
        return v


def _mask(e):
    m = 0
    for i, x in enumerate(e):
        if x:
            m |= 1 << i
    return m


class ModuleOrder:
    """Term order on ``(component, exponents)``.

    Comparison runs: block of the component (lower block number is larger),
    then, when ``graded``, the twisted degree ``twists[c] + deg(e)``, then
    the ring order, then the component index (lower index is larger).
    ``nk`` is a memoised key for which *smaller* means *larger term*.
    """

    def __init__(self, ring, twists=None, blocks=None, graded: bool = True):
        self.ring = ring
        self.weights = ring.weights
        self.twists = twists
        self.blocks = blocks
        self.graded = graded
        rk = ring.key
        w = ring.weights
        tw = twists
        blk = blocks

        def tdeg(m):
            d = sum(map(mul, w, m[1]))
            return d + tw[m[0]] if tw is not None else d

        def neg_key(m):
            c, e = m
            head = (blk[c],) if blk is not None else ()
            if graded:
                head += (-tdeg(m),)
            return head + tuple(-x for x in rk(e)) + (c,)

        def pos_key(m):
            return tuple(-x for x in neg_key(m))

        self.tdeg = tdeg
        self.pos_key = pos_key
        self.nk = _Memo(neg_key)


class GBState:
    """Incremental Groebner basis of a submodule of a free module."""

    PAIR = 1
    GEN = 0

    def __init__(self, order: ModuleOrder, field, ideal_mode: bool = False, kernel_from: int | None = None):
        self.order = order
        # with kernel_from set, remainders whose leading term sits in a
        # component >= kernel_from are collected as syzygies, not inserted
        self.kernel_from = kernel_from
        self.syzygies: list[dict] = []
        self.nk = order.nk
        self.tdeg = order.tdeg
        self.field = field
        self.mod = field.modulus
        self.ideal_mode = ideal_mode
        self.polys: list[dict] = []
        self.tails: list[list] = []
        self.lms: list = []
        self.lmexps: list = []
        self.masks: list[int] = []
        self.sugar: list[int] = []
        self.by_comp: dict[int, list[int]] = {}
        self.pairs: dict[int, dict] = {}
        self.queue: list = []
        self.seq = 0
        self.steps = 0
        self.homogeneous = True
        self.done_degree: int | None = None
        self._maskmemo = _Memo(_mask)

    # -- helpers ---------------------------------------------------------
    def _monic(self, f: dict) -> dict:
        nk = self.nk
        lm = min(f, key=nk.__getitem__)
        lc = f[lm]
        if lc == 1:
            return f
        if self.mod:
            inv = pow(lc, -1, self.mod)
            return {m: v * inv % self.mod for m, v in f.items()}
        inv = 1 / lc
        return {m: v * inv for m, v in f.items()}

    def _vector_degree(self, f: dict) -> int:
        tdeg = self.tdeg
        degs = {tdeg(m) for m in f}
        if len(degs) > 1:
            self.homogeneous = False
        return max(degs)

    def _find(self, m) -> int:
        lst = self.by_comp.get(m[0])
        if not lst:
            return -1
        e = m[1]
        mk = self._maskmemo[e]
        masks = self.masks
        lmexps = self.lmexps
        for i in lst:
            if masks[i] & ~mk:
                continue
            if all(map(le, lmexps[i], e)):
                return i
        return -1

    def _tick(self):
        self.steps += 1
        limit = _STEP_LIMIT[0]
        if limit is not None and self.steps > limit:
            raise ComputationLimitError(
                f"Groebner step limit {limit} exceeded ({len(self.polys)} basis elements so far)"
            )

    # -- reduction -------------------------------------------------------
    def reduce(self, f: dict, full: bool = True) -> dict:
        """Normal form of ``f`` modulo the current basis (input not mutated)."""
        if not f or not self.polys:
            return dict(f)
        f = dict(f)
        nk = self.nk
        heap = [(nk[m], m) for m in f]
        heapify(heap)
        rem: dict = {}
        tails = self.tails
        lmexps = self.lmexps
        mod = self.mod
        find = self._find
        while heap:
            m = heappop(heap)[1]
            c = f.pop(m, None)
            if c is None:
                continue
            i = find(m)
            if i < 0:
                rem[m] = c
                if not full:
                    rem.update(f)
                    return rem
                continue
            shift = tuple(map(sub, m[1], lmexps[i]))
            get = f.get
            if mod:
                for (gc, ge), gv in tails[i]:
                    mm = (gc, tuple(map(add, ge, shift)))
                    old = get(mm)
                    if old is None:
                        f[mm] = (-c * gv) % mod
                        heappush(heap, (nk[mm], mm))
                    else:
                        v = (old - c * gv) % mod
                        if v:
                            f[mm] = v
                        else:
                            del f[mm]
            else:
                for (gc, ge), gv in tails[i]:
                    mm = (gc, tuple(map(add, ge, shift)))
                    old = get(mm)
                    if old is None:
                        f[mm] = -c * gv
                        heappush(heap, (nk[mm], mm))
                    else:
                        v = old - c * gv
                        if v:
                            f[mm] = v
                        else:
                            del f[mm]
        return rem

    def contains(self, f: dict) -> bool:
        return not self.reduce(f, full=False)

    # -- basis maintenance ----------------------------------------------
    def _insert(self, h: dict, sugar: int, skip_below: int | None = None) -> int:
        """Append monic ``h`` and update the pair set (Gebauer-Moeller).

        Pairs with indices ``>= skip_below`` are not created (used for
        batches already known to form a Groebner basis).
        """
        nk = self.nk
        lm = min(h, key=nk.__getitem__)
        idx = len(self.polys)
        c, e = lm
        self.polys.append(h)
        self.tails.append([(m, v) for m, v in h.items() if m != lm])
        self.lms.append(lm)
        self.lmexps.append(e)
        mk = self._maskmemo[e]
        self.masks.append(mk)
        self.sugar.append(sugar)

        active = self.by_comp.setdefault(c, [])
        comp_pairs = self.pairs.setdefault(c, {})
        lmexps = self.lmexps
        ideal = self.ideal_mode
        # candidate new pairs
        cands = []
        for g in active:
            if skip_below is not None and g >= skip_below:
                continue
            ge = lmexps[g]
            L = tuple(map(max, ge, e))
            coprime = ideal and not (self.masks[g] & mk)
            cands.append((g, L, coprime))
        kept = []
        for pos, (g, L, coprime) in enumerate(cands):
            if coprime:
                kept.append((g, L, True))
                continue
            dominated = False
            for _, L2, _c in cands[pos + 1:]:
                if all(map(le, L2, L)):
                    dominated = True
                    break
            if not dominated:
                for _, L2, _c in kept:
                    if all(map(le, L2, L)):
                        dominated = True
                        break
            if not dominated:
                kept.append((g, L, False))
        # prune old pairs whose lcm is divisible by the new leading monomial
        if comp_pairs:
            dead = []
            for (a, b), L in comp_pairs.items():
                if all(map(le, e, L)):
                    La = tuple(map(max, lmexps[a], e))
                    Lb = tuple(map(max, lmexps[b], e))
                    if La != L and Lb != L:
                        dead.append((a, b))
            for p in dead:
                del comp_pairs[p]
        tdeg = self.tdeg
        for g, L, coprime in kept:
            if coprime:
                continue
            dL = tdeg((c, L))
            s = max(
                self.sugar[g] + dL - tdeg((c, lmexps[g])),
                sugar + dL - tdeg(lm),
            )
            comp_pairs[(g, idx)] = L
            self.seq += 1
            heappush(self.queue, (s, self.seq, self.PAIR, (g, idx)))
        # drop basis elements made redundant by h
        active[:] = [g for g in active if not all(map(le, e, lmexps[g]))]
        active.append(idx)
        return idx

    def _spoly(self, i: int, j: int) -> dict:
        e_i, e_j = self.lmexps[i], self.lmexps[j]
        L = tuple(map(max, e_i, e_j))
        si = tuple(map(sub, L, e_i))
        sj = tuple(map(sub, L, e_j))
        f: dict = {}
        for (gc, ge), gv in self.tails[i]:
            f[(gc, tuple(map(add, ge, si)))] = gv
        get = f.get
        mod = self.mod
        for (gc, ge), gv in self.tails[j]:
            mm = (gc, tuple(map(add, ge, sj)))
            v = get(mm, 0) - gv
            if mod:
                v %= mod
            if v:
                f[mm] = v
            else:
                f.pop(mm, None)
        return f

    # -- public driver ---------------------------------------------------
    def add_generators(self, vectors) -> None:
        for f in vectors:
            if not f:
                continue
            s = self._vector_degree(f)
            self.seq += 1
            heappush(self.queue, (s, self.seq, self.GEN, f))
        self.done_degree = None if not self.queue else self.done_degree

    def add_known_basis(self, vectors) -> None:
        """Insert vectors that already form a Groebner basis among themselves.

        They must be nonzero, monic-able and have pairwise non-divisible
        leading terms.  Only pairs against previously present elements are
        scheduled.
        """
        start = len(self.polys)
        for f in vectors:
            if not f:
                continue
            s = self._vector_degree(f)
            self._insert(self._monic(dict(f)), s, skip_below=start)

    def complete(self, deg_bound: int | None = None) -> GBState:
        queue = self.queue
        while queue:
            if deg_bound is not None and queue[0][0] > deg_bound:
                break
            s, _, kind, payload = heappop(queue)
            if kind == self.PAIR:
                i, j = payload
                comp_pairs = self.pairs.get(self.lms[i][0])
                if comp_pairs is None or comp_pairs.pop((i, j), None) is None:
                    continue
                f = self._spoly(i, j)
            else:
                f = payload
            self._tick()
            r = self.reduce(f)
            if r:
                if self.kernel_from is not None and min(r, key=self.nk.__getitem__)[0] >= self.kernel_from:
                    self.syzygies.append(r)
                else:
                    self._insert(self._monic(r), s)
        self.done_degree = deg_bound if queue else None
        return self

    def retired_syzygies(self) -> list[dict]:
        """Remainders of basis elements dropped from the active set.

        Each dropped element is a combination of active ones; the leftover
        after reduction lies in the kernel block and completes the
        Schreyer generating set of syzygies.
        """
        active = set(self.basis_indices())
        out = []
        for i in range(len(self.polys)):
            if i in active:
                continue
            r = self.reduce(self.polys[i])
            if r:
                out.append(r)
        return out

    @property
    def is_complete(self) -> bool:
        return not self.queue

    def basis_indices(self) -> list[int]:
        out = []
        for lst in self.by_comp.values():
            out.extend(lst)
        return sorted(out)

    def basis(self) -> list[dict]:
        return [self.polys[i] for i in self.basis_indices()]

    def leading_terms(self) -> list:
        return [self.lms[i] for i in self.basis_indices()]

    def reduced_basis(self) -> list[dict]:
        """Inter-reduced monic basis, sorted by increasing leading term."""
        idx = self.basis_indices()
        out = []
        for i in idx:
            g = self.polys[i]
            lm = self.lms[i]
            tail = {m: v for m, v in g.items() if m != lm}
            r = self.reduce(tail)
            r[lm] = g[lm]
            out.append(r)
        nk = self.nk
        out.sort(key=lambda f: nk[min(f, key=nk.__getitem__)], reverse=True)
        return out


def leading_term(f: dict, order: ModuleOrder):
    nk = order.nk
    return min(f, key=nk.__getitem__)
