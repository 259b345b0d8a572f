"""Sparse multivariate polynomials over a field object.

A polynomial is a dict from exponent tuples to nonzero coefficients.
Printing uses graded lexicographic order, highest term first; the Groebner
term orders live in ``ideals``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from ._expr import parse_sparse
from .errors import ParseError, ValidationError

MAX_EXPONENT = 2**31 - 1


@dataclass(frozen=True)
class PolyRing:
    nvars: int
    field: object
    prefix: str = "T"

    @property
    def names(self) -> list[str]:
        return [f"{self.prefix}{i}" for i in range(self.nvars)]

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(self.field.one)

    def const(self, c) -> "MultiPoly":
        return MultiPoly(self, {(0,) * self.nvars: c} if c != self.field.zero else {})

    def var(self, i: int) -> "MultiPoly":
        e = [0] * self.nvars
        e[i] = 1
        return MultiPoly(self, {tuple(e): self.field.one})

    def gens(self) -> list["MultiPoly"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, c=None) -> "MultiPoly":
        c = self.field.one if c is None else c
        return MultiPoly(self, {tuple(exps): c} if c != self.field.zero else {})


class MultiPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict, check: bool = False):
        self.ring = ring
        self.terms = terms
        if check:
            zero = ring.field.zero
            for m, c in terms.items():
                if len(m) != ring.nvars:
                    raise ValidationError("exponent vector has the wrong length")
                if c == zero:
                    raise ValidationError("stored zero coefficient")
                if any(e < 0 or e > MAX_EXPONENT for e in m):
                    raise ValidationError("exponent out of range")

    def __repr__(self):
        return f"MultiPoly({format_poly(self)})"

    def __str__(self):
        return format_poly(self)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def copy(self) -> "MultiPoly":
        return MultiPoly(self.ring, dict(self.terms))

    # -- arithmetic

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValidationError("polynomials live in different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(self.ring.field.from_int(other))
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = F.add(out[m], c) if m in out else c
            if v == F.zero:
                del out[m]
            else:
                out[m] = v
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return MultiPoly(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, int):
                other = self.ring.field.from_int(other)
            return self.scale(other)
        other = self._coerce(other)
        F = self.ring.field
        add, mul, zero = F.add, F.mul, F.zero
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                v = mul(ca, cb)
                if m in out:
                    v = add(out[m], v)
                out[m] = v
        return MultiPoly(self.ring, {m: c for m, c in out.items() if c != zero})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, c) -> "MultiPoly":
        F = self.ring.field
        if c == F.zero:
            return self.ring.zero()
        return MultiPoly(self.ring, {m: F.mul(c, v) for m, v in self.terms.items()})

    # -- structure

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_parts(self) -> dict[int, "MultiPoly"]:
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {d: MultiPoly(self.ring, t) for d, t in parts.items()}

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        """Terms in descending graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]), reverse=True)

    def evaluate(self, point, field=None, embed=None):
        """Value at a point with coordinates in ``field`` (default: the
        coefficient field); ``embed`` maps coefficients into that field."""
        F = field or self.ring.field
        acc = F.zero
        powers = [[F.one] for _ in point]
        for m, c in self.terms.items():
            v = embed(c) if embed else c
            for i, e in enumerate(m):
                if e:
                    pw = powers[i]
                    while len(pw) <= e:
                        pw.append(F.mul(pw[-1], point[i]))
                    v = F.mul(v, pw[e])
            acc = F.add(acc, v)
        return acc

    def derivative(self, i: int) -> "MultiPoly":
        F = self.ring.field
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                v = F.mul(F.from_int(m[i]), c)
                if v != F.zero:
                    n = list(m)
                    n[i] -= 1
                    out[tuple(n)] = v
        return MultiPoly(self.ring, out)

    def map_coefficients(self, fn, ring: PolyRing | None = None) -> "MultiPoly":
        ring = ring or self.ring
        zero = ring.field.zero
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v != zero:
                out[m] = v
        return MultiPoly(ring, out)


def monomial_basis(nvars: int, d: int) -> list[tuple]:
    """Exponent vectors of total degree d, graded lex descending (T0^d first)."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if nvars == 0:
        return [()] if d == 0 else []
    out = []

    def rec(prefix, left, k):
        if k == nvars - 1:
            out.append(tuple(prefix + [left]))
            return
        for e in range(left, -1, -1):
            rec(prefix + [e], left - e, k + 1)

    rec([], d, 0)
    assert len(out) == comb(nvars - 1 + d, d)
    return out


def _is_monomial_matrix(F, M) -> bool:
    n = len(M)
    for i in range(n):
        if sum(1 for j in range(n) if M[j][i] != F.zero) != 1:
            return False
    return True


def substitute_linear(f: MultiPoly, M: list[list]) -> MultiPoly:
    """f(T . M): T_i -> sum_j T_j M[j][i], M with entries in the base field.

    Entries are embedded into the coefficient field; exponents of a
    monomial matrix are permuted directly without expansion.
    """
    ring = f.ring
    n = ring.nvars
    if len(M) != n or any(len(row) != n for row in M):
        raise ValidationError(f"matrix is not {n}x{n}", kind="dimension-mismatch")
    F = ring.field
    Me = [[F.embed(x) for x in row] for row in M]
    if _is_monomial_matrix(F, Me):
        target = []
        scal = []
        for i in range(n):
            j = next(j for j in range(n) if Me[j][i] != F.zero)
            target.append(j)
            scal.append(Me[j][i])
        out: dict = {}
        for m, c in f.terms.items():
            e = [0] * n
            v = c
            for i, a in enumerate(m):
                if a:
                    e[target[i]] += a
                    v = F.mul(v, F.pow(scal[i], a))
            key = tuple(e)
            out[key] = F.add(out[key], v) if key in out else v
        return MultiPoly(ring, {m: c for m, c in out.items() if c != F.zero})
    lin = [MultiPoly(ring, {tuple(1 if k == j else 0 for k in range(n)): Me[j][i] for j in range(n) if Me[j][i] != F.zero}) for i in range(n)]
    powers: list[dict[int, MultiPoly]] = [{0: ring.one(), 1: lin[i]} for i in range(n)]

    def power(i, e):
        pw = powers[i]
        if e not in pw:
            pw[e] = power(i, e - 1) * lin[i]
        return pw[e]

    acc = ring.zero()
    for m, c in f.terms.items():
        term = ring.const(c)
        for i, a in enumerate(m):
            if a:
                term = term * power(i, a)
        acc = acc + term
    return acc


def twist_coefficients(f: MultiPoly, ext, g: int) -> MultiPoly:
    """Apply sigma_g (g indexes Gamma) to every coefficient of f."""
    return f.map_coefficients(lambda c: ext.apply(g, c))


def compose(h: MultiPoly, images: list[MultiPoly], ring: PolyRing, embed=None) -> MultiPoly:
    """h(images[0], ..., images[s]) in ``ring``; ``embed`` maps h's coefficients."""
    if len(images) != h.ring.nvars:
        raise ValidationError("wrong number of substitution images", kind="dimension-mismatch")
    F = ring.field
    embed = embed or F.embed
    cache: list[dict[int, MultiPoly]] = [{0: ring.one(), 1: p} for p in images]

    def power(i, e):
        pw = cache[i]
        if e not in pw:
            pw[e] = power(i, e - 1) * images[i]
        return pw[e]

    acc = ring.zero()
    for m, c in h.sorted_terms():
        term = ring.const(embed(c))
        for i, a in enumerate(m):
            if a:
                term = term * power(i, a)
        acc = acc + term
    return acc


# -- text grammar


def _format_monomial(names, m) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: MultiPoly) -> str:
    """Canonical text: terms in descending grlex order joined by + / -.

    A coefficient with more than one x-term is parenthesized; a coefficient
    equal to 1 is omitted in front of a nonconstant monomial.
    """
    if not f.terms:
        return "0"
    F = f.ring.field
    names = f.ring.names
    pieces = []
    for m, c in f.sorted_terms():
        cs = F.fmt(c)
        mono = _format_monomial(names, m)
        neg = False
        if cs.startswith("-") and " " not in cs:
            neg, cs = True, cs[1:]
        if " " in cs:
            cs = f"({cs})"
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        pieces.append((neg, body))
    neg, body = pieces[0]
    out = ("-" if neg else "") + body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def parse_poly(text: str, ring: PolyRing, gen=None) -> MultiPoly:
    """Parse text in the variables of ``ring`` plus ``x`` for the field generator."""
    F = ring.field
    names = ["x"] + ring.names
    sp = parse_sparse(text, names)
    if gen is None and F.degree == 1 and any(m[0] for m in sp):
        raise ParseError(f"{text!r} uses x but the coefficient field has degree 1")
    gen = F.gen if gen is None else gen
    out: dict = {}
    xpow: dict[int, object] = {0: F.one}
    for m, c in sp.items():
        k = m[0]
        if k not in xpow:
            xpow[k] = F.pow(gen, k)
        v = F.mul(F.from_fraction(c), xpow[k])
        key = m[1:]
        out[key] = F.add(out[key], v) if key in out else v
    return MultiPoly(ring, {m: c for m, c in out.items() if c != F.zero})
