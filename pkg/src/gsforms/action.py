"""The semilinear action (g.f)(T) = pi(g)(f(T . tau(g))) on k'[T_0..T_n],
the Reynolds projector, degree-d invariants over k, and the generation
certificate for the Veronese subring A^(d).

Invariant spaces are k-spaces: k'[T]_d is identified with k^(deg * N) by
taking, for each monomial in ``monomial_basis`` order, the power-basis
coordinates of its coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ModularCharacteristicError, ValidationError
from .linalg import IncrementalSpan, rank, row_reduce
from .poly import MultiPoly, PolyRing, monomial_basis, substitute_linear, twist_coefficients
from .rep import SemilinearRep


def upstairs_ring(rep: SemilinearRep) -> PolyRing:
    return PolyRing(rep.nplus1, rep.ext.field)


def act(rep: SemilinearRep, g: int, f: MultiPoly) -> MultiPoly:
    """(g.f)(T) = pi(g)(f(T . tau(g))), for g an index into E."""
    out = substitute_linear(f, rep.mats[g])
    return twist_coefficients(out, rep.ext, rep.grpext.pi(g))


def require_nonmodular(rep: SemilinearRep, order: int | None = None, stage: str = "action") -> None:
    F = rep.field
    order = order or rep.grpext.E.order
    if F.char and order % F.char == 0:
        raise ModularCharacteristicError(F.char, order, stage)


def reynolds(rep: SemilinearRep, f: MultiPoly, elements=None) -> MultiPoly:
    """|S|^-1 sum_{g in S} g.f over S = E (default) or a given subgroup."""
    elements = list(range(rep.grpext.E.order)) if elements is None else list(elements)
    require_nonmodular(rep, len(elements))
    K = f.ring.field
    acc = f.ring.zero()
    for g in elements:
        acc = acc + act(rep, g, f)
    return acc.scale(K.inv(K.from_int(len(elements))))


# -- coordinates over k


def _to_kvector(f: MultiPoly, index: dict, deg: int, base) -> list:
    v = [base.zero] * (len(index) * deg)
    K = f.ring.field
    for m, c in f.terms.items():
        i = index[m] * deg
        for t, x in enumerate(K.to_vector(c)):
            v[i + t] = x
    return v


def _from_kvector(v: list, monos: list, deg: int, ring: PolyRing) -> MultiPoly:
    K = ring.field
    out = {}
    for i, m in enumerate(monos):
        c = K.from_vector(v[i * deg:(i + 1) * deg])
        if c != K.zero:
            out[m] = c
    return MultiPoly(ring, out)


def _spanning_set(ring: PolyRing, ext, d: int):
    """b * monomial for b in the power basis of k' and monomials of degree d."""
    K = ring.field
    powers = [K.one]
    for _ in range(ext.degree - 1):
        powers.append(K.mul(powers[-1], ext.gen))
    for m in monomial_basis(ring.nvars, d):
        for b in powers:
            yield MultiPoly(ring, {m: b})


@dataclass
class GenerationCertificate:
    d: int
    J: int
    dims: list = field(default_factory=list)    # (j, dim of A_d * A_(j-1)d, dim A_jd)
    ok: bool = False

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "J": self.J,
            "ok": self.ok,
            "per_j": [{"j": j, "product_span": a, "invariants": b} for j, a, b in self.dims],
        }


@dataclass
class QuotientMapData:
    d: int
    fs: list
    gen_cert: GenerationCertificate | None = None

    @property
    def s(self) -> int:
        return len(self.fs) - 1


def invariant_basis(rep: SemilinearRep, d: int) -> QuotientMapData:
    """A k-basis (in reduced echelon form) of (k'[T]_d)^E."""
    require_nonmodular(rep)
    ring = upstairs_ring(rep)
    if d < 0:
        raise ValidationError("degree must be nonnegative")
    base = rep.field
    if d == 0:
        return QuotientMapData(0, [ring.one()])
    deg = rep.ext.degree
    monos = monomial_basis(ring.nvars, d)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    seen = set()
    for f in _spanning_set(ring, rep.ext, d):
        r = reynolds(rep, f)
        if r.is_zero():
            continue
        key = frozenset(r.terms.items())
        if key in seen:
            continue
        seen.add(key)
        rows.append(_to_kvector(r, index, deg, base))
    basis, _ = row_reduce(base, rows)
    return QuotientMapData(d, [_from_kvector(v, monos, deg, ring) for v in basis])


def invariant_dimension(rep: SemilinearRep, d: int) -> int:
    return len(invariant_basis(rep, d).fs) if d > 0 else 1


def product_span_dimension(rep: SemilinearRep, left: list, right: list, d: int) -> int:
    ring = upstairs_ring(rep)
    monos = monomial_basis(ring.nvars, d)
    index = {m: i for i, m in enumerate(monos)}
    deg = rep.ext.degree
    span = IncrementalSpan(rep.field, len(monos) * deg)
    same = left is right
    for a, f in enumerate(left):
        for b, g in enumerate(right):
            if same and b < a:
                continue
            span.add(_to_kvector(f * g, index, deg, rep.field))
    return len(span)


def generation_certificate(rep: SemilinearRep, qmd: QuotientMapData, J: int) -> GenerationCertificate:
    """Check A_jd = A_d * A_(j-1)d for j = 2..J."""
    if J < 2:
        raise ValidationError("J must be at least 2")
    cert = GenerationCertificate(qmd.d, J)
    prev = qmd.fs
    ok = True
    for j in range(2, J + 1):
        target = invariant_basis(rep, j * qmd.d).fs
        got = product_span_dimension(rep, qmd.fs, prev, j * qmd.d) if qmd.fs and prev else 0
        cert.dims.append((j, got, len(target)))
        if got != len(target):
            ok = False
            break
        prev = target
    cert.ok = ok
    return cert


def default_generation_bound(rep: SemilinearRep) -> int:
    """J = max(2, |G|).

    Over k', A tensor k' is k'[T]^G, generated in degrees <= |G| in the
    non-modular case; a monomial in such generators of degree jd with
    j > |G| contains a sub-product of degree divisible by d and at most
    d*|G|, so A^(d) is generated by its pieces of degree <= d*|G|.
    """
    return max(2, rep.grpext.G.order)


def geometric_invariant_dimension(rep: SemilinearRep, d: int) -> int:
    """dim over k' of (k'[T]_d)^G, G acting k'-linearly."""
    G = rep.grpext.kernel_elements()
    require_nonmodular(rep, len(G))
    ring = upstairs_ring(rep)
    K = ring.field
    monos = monomial_basis(ring.nvars, d)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for m in monos:
        r = reynolds(rep, ring.monomial(m), G)
        v = [K.zero] * len(monos)
        for mm, c in r.terms.items():
            v[index[mm]] = c
        rows.append(v)
    return rank(K, rows)


def descent_dimensions(rep: SemilinearRep, dmax: int) -> tuple[list[int], list[int]]:
    """(dim_k' (k'[T]_d)^G, dim_k (k'[T]_d)^E) for d = 1..dmax."""
    lhs = [geometric_invariant_dimension(rep, d) for d in range(1, dmax + 1)]
    rhs = [invariant_dimension(rep, d) for d in range(1, dmax + 1)]
    return lhs, rhs
