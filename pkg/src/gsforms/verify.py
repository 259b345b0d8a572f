"""Certificates re-checked from scratch on a construction result.

Mandatory: invariance, dimension, smoothness, freeness.  Also run:
generation (echo of the quotient-map certificate), descent dimensions,
base-point-freeness when requested, and the orbit spot-check over a finite
extension k'' of k'.

The spot-check uses the point action w = sigma^-1(v . tau(g)), with sigma
extended to k'' as the same power of Frobenius.  For invariant f this
gives f(w) = sigma^-1(f(v)) exactly, which is what is tested.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .action import act, default_generation_bound, descent_dimensions, generation_certificate, upstairs_ring
from .errors import BudgetExceeded
from .fields import finite_field, ueval
from .ideals import is_projectively_empty, jacobian_minors, projective_dimension
from .poly import compose
from .rep import minors_ideal

MANDATORY = ("invariance", "dimension", "smoothness", "freeness")


@dataclass
class Certificate:
    name: str
    passed: bool
    mandatory: bool = False
    witness: str | None = None
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"passed": self.passed, "mandatory": self.mandatory, "witness": self.witness, "details": self.details}


@dataclass
class CertificateBundle:
    certs: dict = field(default_factory=dict)
    seed: int = 0
    claims: dict = field(default_factory=dict)

    def add(self, cert: Certificate) -> None:
        self.certs[cert.name] = cert

    @property
    def green(self) -> bool:
        return all(name in self.certs and self.certs[name].passed for name in MANDATORY)

    def first_failure(self):
        for name in MANDATORY + tuple(sorted(set(self.certs) - set(MANDATORY))):
            c = self.certs.get(name)
            if c is None and name in MANDATORY:
                return name, Certificate(name, False, True, "missing")
            if c is not None and not c.passed:
                return name, c
        return None, None

    def as_dict(self) -> dict:
        return {
            "green": self.green,
            "seed": self.seed,
            "certificates": {k: c.as_dict() for k, c in sorted(self.certs.items())},
            "claims": self.claims,
        }

    def timings(self) -> dict:
        return {k: round(c.seconds, 3) for k, c in sorted(self.certs.items())}


def _timed(fn, *args):
    t = time.perf_counter()
    cert = fn(*args)
    cert.seconds = time.perf_counter() - t
    return cert


def certify_invariance(result) -> Certificate:
    rep = result.rep
    E = rep.grpext.E
    ring = upstairs_ring(rep)
    for j, (h, g) in enumerate(zip(result.hs, result.gs), start=1):
        if compose(h, result.qmd.fs, ring) != g:
            return Certificate("invariance", False, True, f"g_{j} is not h_{j}(f_0..f_s)")
    for j, g in enumerate(result.gs, start=1):
        for e in range(E.order):
            if act(rep, e, g) != g:
                return Certificate("invariance", False, True, f"g_{j} moved by {E.labels[e]}")
    for i, f in enumerate(result.qmd.fs):
        for e in range(E.order):
            if act(rep, e, f) != f:
                return Certificate("invariance", False, True, f"f_{i} moved by {E.labels[e]}")
    return Certificate("invariance", True, True, details={"forms": len(result.gs), "group_order": E.order})


def certify_dimension(result) -> Certificate:
    n, r = result.rep.n, result.params.r
    count = len(result.gs)
    dim = projective_dimension(result.gs, budget=result.params.gb) if result.gs else n
    ok = count == n - r and dim == r
    witness = None if ok else f"{count} forms (want {n - r}), dimension {dim} (want {r})"
    return Certificate("dimension", ok, True, witness, {"n": n, "r": r, "forms": count, "dimension": dim})


def certify_smoothness(result) -> Certificate:
    gs = result.gs
    if not gs:
        return Certificate("smoothness", True, True, details={"minors": 0})
    minors = jacobian_minors(gs, gs[0].ring)
    ok = is_projectively_empty(gs + minors, result.params.gb)
    return Certificate("smoothness", ok, True, None if ok else "Jacobian minors vanish somewhere on Y",
                       {"minors": len(minors)})


def certify_freeness(result) -> Certificate:
    rep = result.rep
    E = rep.grpext.E
    gamma = rep.grpext.gamma
    ring = upstairs_ring(rep)
    tested = []
    for g in rep.geometric_elements():
        if rep.grpext.pi(g) != gamma.identity:
            return Certificate("freeness", False, True, f"{E.labels[g]} is twisted but was tested")
        Q = minors_ideal(rep, g, ring)
        tested.append(E.labels[g])
        if not is_projectively_empty(result.gs + Q.gens, result.params.gb):
            return Certificate("freeness", False, True, f"Y meets the fixed locus of {E.labels[g]}", {"tested": tested})
    return Certificate("freeness", True, True, details={"tested": tested})


def certify_base_point_freeness(result) -> Certificate:
    ok = is_projectively_empty(result.gs + result.qmd.fs, result.params.gb)
    return Certificate("base_point_freeness", ok, False, None if ok else "f_0..f_s vanish together on Y")


def certify_generation(result) -> Certificate:
    J = result.params.J or default_generation_bound(result.rep)
    cert = generation_certificate(result.rep, result.qmd, J)
    return Certificate("generation", cert.ok, False, None if cert.ok else "A_jd is not spanned by products",
                       cert.as_dict())


def certify_descent(result, dmax: int | None = None) -> Certificate:
    dmax = dmax or result.params.descent_dmax
    lhs, rhs = descent_dimensions(result.rep, dmax)
    ok = lhs == rhs
    return Certificate("descent", ok, False, None if ok else f"{lhs} != {rhs}",
                       {"geometric_over_kprime": lhs, "semilinear_over_k": rhs, "dmax": dmax})


# -- orbit spot-check


class _Tables:
    """numpy lookup tables for a finite field on integer codes 0..q-1."""

    def __init__(self, K):
        q = K.order
        self.q = q
        self.add = np.array([[K.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int32)
        self.mul = np.array([[K.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int32)


def _embedding(ext, K2):
    """A field embedding k' -> k'' (as a function on codes) via a root of m."""
    Kp = ext.field
    if ext.degree == 1:
        return lambda a: a
    mod = [K2.embed(c) for c in ext.modulus]
    z = next(a for a in range(K2.order) if ueval(K2, mod, a) == K2.zero)
    powers = [K2.one]
    for _ in range(ext.degree - 1):
        powers.append(K2.mul(powers[-1], z))
    table = []
    for code in range(Kp.order):
        acc = K2.zero
        for c, pw in zip(Kp.to_vector(code), powers):
            if c:
                acc = K2.add(acc, K2.mul(c, pw))
        table.append(acc)
    return table.__getitem__


def _points_on(forms, nvars: int, T: _Tables, chunk: int = 1 << 18):
    """Normalized projective points (first nonzero coordinate 1) killing all forms."""
    q = T.q
    out = []
    for lead in range(nvars):
        free = nvars - lead - 1
        total = q**free
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            cols = []
            for _ in range(free):
                cols.append((idx % q).astype(np.int32))
                idx //= q
            cols = cols[::-1]
            length = len(cols[0]) if cols else 1
            coords = [np.zeros(length, dtype=np.int32) for _ in range(lead)]
            coords.append(np.ones(length, dtype=np.int32))
            coords.extend(cols)
            pts = np.stack(coords, axis=1)
            for terms in forms:
                if not len(pts):
                    break
                val = np.zeros(len(pts), dtype=np.int32)
                for mono, c in terms:
                    v = np.full(len(pts), c, dtype=np.int32)
                    for i, e in enumerate(mono):
                        for _ in range(e):
                            v = T.mul[v, pts[:, i]]
                    val = T.add[val, v]
                pts = pts[val == 0]
            out.extend(tuple(int(x) for x in p) for p in pts)
    return out


def _eval(terms, point, K2) -> int:
    acc = K2.zero
    for mono, c in terms:
        v = c
        for x, e in zip(point, mono):
            for _ in range(e):
                v = K2.mul(v, x)
        acc = K2.add(acc, v)
    return acc


def _normalize(vec, K2):
    for x in vec:
        if x != K2.zero:
            inv = K2.inv(x)
            return tuple(K2.mul(inv, y) for y in vec)
    return tuple(vec)


def orbit_spotcheck(result, N: int | None = None, max_points: int | None = None) -> Certificate:
    rep = result.rep
    ext = rep.ext
    base = ext.base
    if not base.is_finite:
        return Certificate("orbit_spotcheck", True, False, details={"skipped": "k is infinite"})
    if N is None:
        N = result.params.orbit_degree or (2 if ext.degree == 1 else 1)
    p = base.p
    D = ext.degree * N
    K2 = finite_field(p, D)
    nvars = rep.nplus1
    budget = max_points or result.params.orbit_max_points
    count = sum(K2.order**(nvars - 1 - i) for i in range(nvars))
    if count > budget:
        return Certificate("orbit_spotcheck", False, False, f"{count} points exceed the budget {budget}")
    emb = _embedding(ext, K2)
    T = _Tables(K2)

    def lift(f):
        return [(m, emb(c)) for m, c in f.terms.items()]

    forms = [lift(g) for g in result.gs]
    fs = [lift(f) for f in result.qmd.fs]
    points = _points_on(forms, nvars, T)
    E = rep.grpext.E
    gamma = rep.grpext.gamma

    def frob(a, k):
        return K2.frobenius(a, k % D) if D > 1 else a

    sig = {g: ext.frobenius_power(rep.grpext.pi(g)) for g in range(E.order)}
    mats = [[[K2.embed(x) for x in row] for row in rep.mats[g]] for g in range(E.order)]

    def move(v, g):
        M = mats[g]
        u = []
        for i in range(nvars):
            acc = K2.zero
            for j in range(nvars):
                if M[j][i]:
                    acc = K2.add(acc, K2.mul(v[j], M[j][i]))
            u.append(acc)
        return tuple(frob(x, -sig[g]) for x in u)

    checked = 0
    G = set(rep.grpext.kernel_elements())
    for v in points:
        fv = tuple(_eval(f, v, K2) for f in fs)
        for g in range(E.order):
            w = move(v, g)
            if any(_eval(t, w, K2) != K2.zero for t in forms):
                return Certificate("orbit_spotcheck", False, False, f"w = {w} left Y for {E.labels[g]}")
            fw = tuple(_eval(f, w, K2) for f in fs)
            want = tuple(frob(x, -sig[g]) for x in fv)
            if fw != want:
                return Certificate("orbit_spotcheck", False, False, f"f(w) != sigma^-1 f(v) at v={v}, g={E.labels[g]}")
            if g in G and _normalize(fw, K2) != _normalize(fv, K2):
                return Certificate("orbit_spotcheck", False, False, f"G-orbit of {v} has different f-images")
            if move(w, E.inv(g)) != v:
                return Certificate("orbit_spotcheck", False, False, f"inverse of {E.labels[g]} does not return {v}")
            checked += 1
    return Certificate("orbit_spotcheck", True, False, details={
        "field_order": K2.order, "points_on_Y": len(points), "checks": checked, "gamma_order": gamma.order,
    })


def certify_bundle(result, orbit: bool = True) -> CertificateBundle:
    bundle = CertificateBundle(seed=result.seed)
    bundle.add(_timed(certify_invariance, result))
    bundle.add(_timed(certify_dimension, result))
    bundle.add(_timed(certify_smoothness, result))
    bundle.add(_timed(certify_freeness, result))
    if result.params.emit_x_ideal:
        bundle.add(_timed(certify_base_point_freeness, result))
    bundle.add(_timed(certify_generation, result))
    bundle.add(_timed(certify_descent, result))
    if orbit and result.rep.field.is_finite:
        try:
            bundle.add(_timed(orbit_spotcheck, result))
        except BudgetExceeded as err:
            bundle.add(Certificate("orbit_spotcheck", False, False, str(err)))
    bundle.claims = {
        "smooth": "certified" if bundle.certs["smoothness"].passed else "failed",
        "complete_intersection": "certified" if bundle.certs["dimension"].passed else "failed",
        "geometrically_connected": "derived (complete intersection of positive dimension)",
        "free_action": "certified" if bundle.certs["freeness"].passed else "failed",
        "etale_quotient": "cited, not computed",
    }
    return bundle
