"""Groebner bases (Buchberger with the Gebauer-Moeller criteria and the
sugar strategy), normal forms, elimination, saturation by the irrelevant
ideal, projective dimension, emptiness, and the Jacobian certificate.

Monomial orders are represented by a function ``negkey`` whose *ascending*
order is the *descending* monomial order, so ``min(terms, key=negkey)`` is
the leading monomial and heaps pop the largest monomial first.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations

from .errors import BudgetExceeded, ValidationError
from .poly import MultiPoly, PolyRing


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, or ``block`` = grevlex on the first ``block`` variables,
    ties broken by grevlex on the rest (an elimination order)."""

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def negkey(self):
        if self.kind == "grevlex":
            def key(m):
                return (-sum(m),) + m[::-1]
            return key
        b = self.block

        def key(m):
            head, tail = m[:b], m[b:]
            return (-sum(head),) + head[::-1] + (-sum(tail),) + tail[::-1]

        return key


GREVLEX = MonomialOrder()


def block_order(first_block: int) -> MonomialOrder:
    return MonomialOrder("block", first_block)


@dataclass
class Budget:
    """Resource caps; exceeding one raises BudgetExceeded."""

    max_pairs: int = 500_000
    max_terms: int = 500_000
    max_degree: int = 200

    @classmethod
    def from_dict(cls, d: dict | None) -> "Budget":
        return cls(**(d or {}))


DEFAULT_BUDGET = Budget()


class Ideal:
    """An ideal given by generators, with cached Groebner bases per order."""

    def __init__(self, ring: PolyRing, gens):
        self.ring = ring
        self.gens = [g for g in gens if not g.is_zero()]
        for g in self.gens:
            if g.ring != ring:
                raise ValidationError("generator lives in a different ring")
        self._gb: dict = {}

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(str, self.gens))})"

    def __add__(self, other):
        gens = other.gens if isinstance(other, Ideal) else list(other)
        return type(self)(self.ring, self.gens + gens)

    def groebner(self, order: MonomialOrder = GREVLEX, budget: Budget | None = None) -> list[MultiPoly]:
        if order not in self._gb:
            self._gb[order] = groebner_basis(self.gens, order, budget)
        return self._gb[order]


class HomIdeal(Ideal):
    def __init__(self, ring: PolyRing, gens):
        super().__init__(ring, gens)
        for g in self.gens:
            if not g.is_homogeneous():
                raise ValidationError(f"generator {g} is not homogeneous", kind="not-homogeneous")


def _as_gens(I) -> tuple[PolyRing, list[MultiPoly]]:
    if isinstance(I, Ideal):
        return I.ring, I.gens
    gens = list(I)
    if not gens:
        raise ValidationError("cannot infer the ring of an empty generator list")
    return gens[0].ring, [g for g in gens if not g.is_zero()]


# -- the engine (works on raw dicts)


class _Engine:
    def __init__(self, F, nvars: int, order: MonomialOrder, budget: Budget):
        self.F = F
        self.n = nvars
        self.negkey = order.negkey()
        self.budget = budget
        self.lms: list[tuple] = []
        self.masks: list[int] = []
        self.tails: list[list] = []     # tail terms as (mono, coeff), LM excluded; monic
        self.polys: list[dict] = []
        self.sugar: list[int] = []
        self._div_cache: dict = {}

    @staticmethod
    def _mask(m) -> int:
        out = 0
        for i, e in enumerate(m):
            if e:
                out |= 1 << i
        return out

    def leading(self, f: dict):
        return min(f, key=self.negkey)

    def _divisor(self, m):
        """Index of a basis element whose LM divides m, or -1 (cached)."""
        hit = self._div_cache.get(m)
        start = 0
        if hit is not None:
            idx, upto = hit
            if idx >= 0:
                return idx
            start = upto
        lms, masks = self.lms, self.masks
        mm = self._mask(m)
        for i in range(start, len(lms)):
            if masks[i] & ~mm:
                continue
            lm = lms[i]
            for a, b in zip(m, lm):
                if a < b:
                    break
            else:
                self._div_cache[m] = (i, 0)
                return i
        self._div_cache[m] = (-1, len(lms))
        return -1

    def reduce(self, f: dict, skip: int = -1) -> dict:
        """Full reduction of f by the basis (optionally ignoring one element)."""
        F = self.F
        zero = F.zero
        sub, mul, neg = F.sub, F.mul, F.neg
        negkey = self.negkey
        max_terms = self.budget.max_terms
        h = dict(f)
        heap = [(negkey(m), m) for m in h]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = h.pop(m, None)
            if c is None:
                continue
            i = self._divisor(m) if skip < 0 else self._divisor_skip(m, skip)
            if i < 0:
                rem[m] = c
                continue
            lm = self.lms[i]
            q = tuple(a - b for a, b in zip(m, lm))
            for tm, tc in self.tails[i]:
                mm = tuple(a + b for a, b in zip(tm, q))
                v = mul(c, tc)
                old = h.get(mm)
                if old is None:
                    h[mm] = neg(v)
                    heapq.heappush(heap, (negkey(mm), mm))
                else:
                    nv = sub(old, v)
                    if nv == zero:
                        del h[mm]
                    else:
                        h[mm] = nv
            if len(h) > max_terms:
                raise BudgetExceeded(f"intermediate polynomial exceeds {max_terms} terms", kind="max-terms")
        return rem

    def _divisor_skip(self, m, skip):
        mm = self._mask(m)
        for i, lm in enumerate(self.lms):
            if i == skip or not self.active[i] or self.masks[i] & ~mm:
                continue
            if all(a >= b for a, b in zip(m, lm)):
                return i
        return -1

    def monic(self, f: dict) -> tuple[tuple, dict]:
        lm = self.leading(f)
        inv = self.F.inv(f[lm])
        if inv != self.F.one:
            f = {m: self.F.mul(c, inv) for m, c in f.items()}
        return lm, f

    def add(self, f: dict, sugar: int) -> int:
        lm, f = self.monic(f)
        self.lms.append(lm)
        self.masks.append(self._mask(lm))
        self.tails.append([(m, c) for m, c in f.items() if m != lm])
        self.polys.append(f)
        self.sugar.append(sugar)
        return len(self.lms) - 1

    def spoly(self, i: int, j: int) -> dict:
        F = self.F
        lcm = tuple(max(a, b) for a, b in zip(self.lms[i], self.lms[j]))
        qi = tuple(a - b for a, b in zip(lcm, self.lms[i]))
        qj = tuple(a - b for a, b in zip(lcm, self.lms[j]))
        out: dict = {}
        for m, c in self.tails[i]:
            out[tuple(a + b for a, b in zip(m, qi))] = c
        for m, c in self.tails[j]:
            mm = tuple(a + b for a, b in zip(m, qj))
            old = out.get(mm)
            v = F.neg(c) if old is None else F.sub(old, c)
            if v == F.zero:
                out.pop(mm, None)
            else:
                out[mm] = v
        return out

    def run(self, gens: list[dict], stop=None) -> bool:
        """Buchberger's algorithm. Returns False if ``stop`` ended it early."""
        negkey = self.negkey
        budget = self.budget
        lms = self.lms
        self.active: list[bool] = []
        pairs: set = set()
        heap: list = []

        def lcm(a, b):
            return tuple(max(x, y) for x, y in zip(a, b))

        def divides(a, b):
            return all(x <= y for x, y in zip(a, b))

        def coprime(a, b):
            return all(x == 0 or y == 0 for x, y in zip(a, b))

        def push(i, j):
            L = lcm(lms[i], lms[j])
            dL = sum(L)
            s = max(self.sugar[i] + dL - sum(lms[i]), self.sugar[j] + dL - sum(lms[j]))
            pairs.add((i, j))
            heapq.heappush(heap, (s, tuple(-x for x in negkey(L)), i, j))

        def update(h):
            lh = lms[h]
            act = [g for g in range(h) if self.active[g]]
            C = [(g, lcm(lms[g], lh)) for g in act]
            D = []
            for k, (g1, L1) in enumerate(C):
                if coprime(lms[g1], lh):
                    D.append((g1, L1))
                    continue
                rest = [L for _, L in C[k + 1:]] + [L for _, L in D]
                if not any(divides(L2, L1) for L2 in rest):
                    D.append((g1, L1))
            for (a, b) in list(pairs):
                Lab = lcm(lms[a], lms[b])
                if divides(lh, Lab) and lcm(lms[a], lh) != Lab and lcm(lms[b], lh) != Lab:
                    pairs.discard((a, b))
            for g1, _ in D:
                if not coprime(lms[g1], lh):
                    push(g1, h)
            for g in act:
                if divides(lh, lms[g]):
                    self.active[g] = False

        def insert(f, sugar):
            idx = self.add(f, sugar)
            self.active.append(True)
            update(idx)
            return idx

        for f in gens:
            if not f:
                continue
            r = self.reduce(f)
            if r:
                insert(r, max(sum(m) for m in f))
                if stop is not None and stop(self):
                    return False
        processed = 0
        while heap:
            s, _, i, j = heapq.heappop(heap)
            if (i, j) not in pairs:
                continue
            pairs.discard((i, j))
            processed += 1
            if processed > budget.max_pairs:
                raise BudgetExceeded(f"more than {budget.max_pairs} critical pairs", kind="max-pairs")
            L = lcm(lms[i], lms[j])
            if sum(L) > budget.max_degree:
                raise BudgetExceeded(f"critical pair degree {sum(L)} exceeds {budget.max_degree}", kind="max-degree")
            r = self.reduce(self.spoly(i, j))
            if r:
                insert(r, s)
                if stop is not None and stop(self):
                    return False
        return True

    def reduced_basis(self) -> list[dict]:
        idx = [i for i, a in enumerate(self.active) if a]
        out = []
        for i in idx:
            tail = {m: c for m, c in self.polys[i].items() if m != self.lms[i]}
            red = self.reduce(tail, skip=i)
            red[self.lms[i]] = self.F.one
            out.append(red)
        out.sort(key=lambda f: tuple(-x for x in self.negkey(min(f, key=self.negkey))))
        return out


def _engine_basis(ring: PolyRing, gens: list[MultiPoly], order: MonomialOrder, budget: Budget | None, stop=None):
    eng = _Engine(ring.field, ring.nvars, order, budget or DEFAULT_BUDGET)
    complete = eng.run([dict(g.terms) for g in gens], stop)
    return eng, complete


def groebner_basis(I, order: MonomialOrder = GREVLEX, budget: Budget | None = None) -> list[MultiPoly]:
    """Reduced Groebner basis, monic, sorted by increasing leading monomial."""
    ring, gens = _as_gens(I)
    if not gens:
        return []
    eng, _ = _engine_basis(ring, gens, order, budget)
    return [MultiPoly(ring, f) for f in eng.reduced_basis()]


def leading_monomial(f: MultiPoly, order: MonomialOrder = GREVLEX) -> tuple:
    return min(f.terms, key=order.negkey())


def normal_form(f: MultiPoly, I, order: MonomialOrder = GREVLEX, budget: Budget | None = None) -> MultiPoly:
    if isinstance(I, Ideal):
        gb = I.groebner(order, budget)
        ring = I.ring
    else:
        ring, gens = _as_gens(I)
        gb = groebner_basis(gens, order, budget)
    eng = _Engine(ring.field, ring.nvars, order, budget or DEFAULT_BUDGET)
    for g in gb:
        eng.add(dict(g.terms), g.degree())
    return MultiPoly(ring, eng.reduce(dict(f.terms)))


def contains(I, f: MultiPoly, order: MonomialOrder = GREVLEX) -> bool:
    return normal_form(f, I, order).is_zero()


def _unit(gb: list[MultiPoly]) -> bool:
    return any(all(e == 0 for e in m) for g in gb for m in g.terms if len(g.terms) == 1)


def _lift(f: MultiPoly, ring: PolyRing, shift: int) -> MultiPoly:
    pad = (0,) * shift
    return MultiPoly(ring, {pad + m: c for m, c in f.terms.items()})


def eliminate(I, first_block: int, target: PolyRing | None = None, budget: Budget | None = None) -> Ideal:
    """I intersected with the subring of the variables after ``first_block``."""
    ring, gens = _as_gens(I)
    n = ring.nvars
    target = target or PolyRing(n - first_block, ring.field, "U")
    if target.nvars != n - first_block:
        raise ValidationError("target ring has the wrong number of variables")
    gb = groebner_basis(gens, block_order(first_block), budget)
    keep = [g for g in gb if all(all(e == 0 for e in m[:first_block]) for m in g.terms)]
    polys = [MultiPoly(target, {m[first_block:]: c for m, c in g.terms.items()}) for g in keep]
    if all(p.is_homogeneous() for p in polys):
        return HomIdeal(target, polys)
    return Ideal(target, polys)


def colon_variable_power(I, i: int, budget: Budget | None = None) -> Ideal:
    """(I : T_i^oo) via (I, t*T_i - 1) and elimination of t."""
    ring, gens = _as_gens(I)
    F = ring.field
    big = PolyRing(ring.nvars + 1, F, "_t")
    lifted = [_lift(g, big, 1) for g in gens]
    e = [0] * (ring.nvars + 1)
    e[0] = 1
    e[i + 1] = 1
    rab = MultiPoly(big, {tuple(e): F.one, (0,) * (ring.nvars + 1): F.neg(F.one)})
    return eliminate(lifted + [rab], 1, ring, budget)


def intersect(I, J, budget: Budget | None = None) -> Ideal:
    """I cap J via (s*I + (1-s)*J) and elimination of s."""
    ring, gi = _as_gens(I)
    _, gj = _as_gens(J)
    F = ring.field
    big = PolyRing(ring.nvars + 1, F, "_s")
    s = big.var(0)
    one = big.one()
    gens = [s * _lift(g, big, 1) for g in gi] + [(one - s) * _lift(g, big, 1) for g in gj]
    return eliminate(gens, 1, ring, budget)


def saturate_irrelevant(I, budget: Budget | None = None) -> HomIdeal:
    """(I : (T_0, ..., T_n)^oo) as the intersection of the (I : T_i^oo)."""
    ring, gens = _as_gens(I)
    if not gens:
        return HomIdeal(ring, [])
    parts = [colon_variable_power(gens, i, budget) for i in range(ring.nvars)]
    acc = parts[0]
    for P in parts[1:]:
        acc = intersect(acc, P, budget)
    gb = groebner_basis(acc.gens, GREVLEX, budget) if acc.gens else []
    return HomIdeal(ring, gb)


def radical_contains(I, f: MultiPoly, budget: Budget | None = None) -> bool:
    """f in rad(I), via 1 in (I, 1 - t*f) with one extra variable."""
    ring, gens = _as_gens(I)
    F = ring.field
    big = PolyRing(ring.nvars + 1, F, "_t")
    t = big.var(0)
    test = [_lift(g, big, 1) for g in gens] + [big.one() - t * _lift(f, big, 1)]
    return _unit(groebner_basis(test, GREVLEX, budget))


def _has_all_pure_powers(lms, n: int) -> bool:
    seen = 0
    full = (1 << n) - 1
    for m in lms:
        nz = [i for i, e in enumerate(m) if e]
        if not nz:
            return True
        if len(nz) == 1:
            seen |= 1 << nz[0]
    return seen == full


def is_projectively_empty(I, budget: Budget | None = None) -> bool:
    """V_+(I) = {} over the algebraic closure.

    Equivalent to R/I being Artinian, i.e. the leading-term ideal holding a
    pure power of every variable.  Leading terms found before Buchberger
    finishes already lie in LT(I), so the run stops as soon as they suffice.
    """
    ring, gens = _as_gens(I)
    if not gens:
        return ring.nvars == 0
    n = ring.nvars
    eng, complete = _engine_basis(ring, gens, GREVLEX, budget, stop=lambda e: _has_all_pure_powers(e.lms, n))
    if not complete:
        return True
    return _has_all_pure_powers([eng.lms[i] for i, a in enumerate(eng.active) if a], n)


def krull_dimension_from_leading(lms: list[tuple], n: int) -> int:
    """Largest set of variables containing the support of no leading monomial."""
    supports = []
    for m in lms:
        s = 0
        for i, e in enumerate(m):
            if e:
                s |= 1 << i
        if s == 0:
            return -1
        supports.append(s)
    for k in range(n, -1, -1):
        for S in combinations(range(n), k):
            mask = 0
            for i in S:
                mask |= 1 << i
            if not any(s & ~mask == 0 for s in supports):
                return k
    return 0


def krull_dimension(I, order: MonomialOrder = GREVLEX, budget: Budget | None = None) -> int:
    ring, gens = _as_gens(I)
    if not gens:
        return ring.nvars
    gb = I.groebner(order, budget) if isinstance(I, Ideal) else groebner_basis(gens, order, budget)
    lms = [leading_monomial(g, order) for g in gb]
    return krull_dimension_from_leading(lms, ring.nvars)


def projective_dimension(I, order: MonomialOrder = GREVLEX, budget: Budget | None = None) -> int:
    """dim Proj(R/I); -1 when V_+(I) is empty.

    Computed as Krull dim(R/I) - 1 with 0 mapped to -1: saturating by the
    irrelevant ideal only removes an m-primary component, which changes the
    Krull dimension only when nothing else is left.
    """
    d = krull_dimension(I, order, budget)
    return max(d - 1, -1) if d > 0 else -1


def determinant(rows: list[list[MultiPoly]], ring: PolyRing) -> MultiPoly:
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    acc = ring.zero()
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * determinant(minor, ring)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def jacobian_minors(gens: list[MultiPoly], ring: PolyRing) -> list[MultiPoly]:
    c = len(gens)
    J = [[g.derivative(i) for i in range(ring.nvars)] for g in gens]
    out = []
    for cols in combinations(range(ring.nvars), c):
        d = determinant([[row[j] for j in cols] for row in J], ring)
        if not d.is_zero():
            out.append(d)
    return out


def minors_2x2(rows: list[list[MultiPoly]], ring: PolyRing) -> list[MultiPoly]:
    """All 2x2 minors of a 2 x N matrix of polynomials."""
    a, b = rows
    out = []
    for i, j in combinations(range(len(a)), 2):
        d = a[i] * b[j] - a[j] * b[i]
        if not d.is_zero():
            out.append(d)
    return out


@dataclass
class SmoothnessCertificate:
    codim: int
    expected_dim: int
    dimension: int
    dim_ok: bool
    smooth: bool
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.dim_ok and self.smooth


def jacobian_smooth_certificate(gens: list[MultiPoly], budget: Budget | None = None) -> SmoothnessCertificate:
    """Certify V(g_1..g_c) as a smooth complete intersection of dim n - c."""
    ring, gens = _as_gens(gens)
    for g in gens:
        if not g.is_homogeneous():
            raise ValidationError(f"generator {g} is not homogeneous", kind="not-homogeneous")
    c = len(gens)
    n = ring.nvars - 1
    dim = projective_dimension(gens, budget=budget)
    minors = jacobian_minors(gens, ring)
    smooth = is_projectively_empty(gens + minors, budget) if minors else is_projectively_empty(gens, budget)
    return SmoothnessCertificate(c, n - c, dim, dim == n - c, smooth, {"minors": len(minors)})
