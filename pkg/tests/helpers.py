"""Brute-force oracles shared by the tests.

Nothing here calls the Groebner engine or the invariant machinery; the
linear algebra is a separate, deliberately naive Gaussian elimination.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from gsforms.fields import QQ, PrimeField, finite_field
from gsforms.poly import MultiPoly, PolyRing


# -- linear algebra over a field object (independent of gsforms.linalg)


def naive_rank(F, rows) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != F.zero), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = F.inv(rows[rank][col])
        rows[rank] = [F.mul(inv, x) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != F.zero:
                c = rows[i][col]
                rows[i] = [F.sub(a, F.mul(c, b)) for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def naive_inverse(F, M) -> list[list] | None:
    """Gauss-Jordan inverse, or None for a singular matrix."""
    n = len(M)
    aug = [list(M[i]) + [F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != F.zero), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = F.inv(aug[col][col])
        aug[col] = [F.mul(inv, x) for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != F.zero:
                c = aug[i][col]
                aug[i] = [F.sub(a, F.mul(c, b)) for a, b in zip(aug[i], aug[col])]
    return [r[n:] for r in aug]


def naive_matmul(F, A, B) -> list[list]:
    out = []
    for row in A:
        out_row = []
        for j in range(len(B[0])):
            acc = F.zero
            for a, brow in zip(row, B):
                acc = F.add(acc, F.mul(a, brow[j]))
            out_row.append(acc)
        out.append(out_row)
    return out


def conjugate_rep(rep, rng):
    """P tau(g) P^-1 for a random invertible P over the prime field."""
    from gsforms.rep import SemilinearRep

    F = rep.field
    n = rep.nplus1
    while True:
        P = [[F.from_int(rng.randrange(F.p)) for _ in range(n)] for _ in range(n)]
        Pinv = naive_inverse(F, P)
        if Pinv is not None:
            break
    mats = tuple(tuple(map(tuple, naive_matmul(F, naive_matmul(F, P, M), Pinv))) for M in rep.mats)
    return SemilinearRep(rep.ext, rep.grpext, mats)


def monomials(nvars: int, d: int) -> list[tuple]:
    """All exponent vectors of total degree d (order irrelevant here)."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    assert len(out) == comb(nvars + d - 1, d)
    return out


# -- naive polynomial arithmetic on {exponent: coefficient} dicts


def pmul(F, a: dict, b: dict) -> dict:
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = F.add(out.get(m, F.zero), F.mul(ca, cb))
    return {m: c for m, c in out.items() if c != F.zero}


def padd(F, a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        out[m] = F.add(out.get(m, F.zero), c)
    return {m: c for m, c in out.items() if c != F.zero}


def evaluate(F, f: dict, point) -> object:
    acc = F.zero
    for m, c in f.items():
        t = c
        for x, e in zip(point, m):
            for _ in range(e):
                t = F.mul(t, x)
        acc = F.add(acc, t)
    return acc


def naive_substitute(F, f: dict, M) -> dict:
    """f(T . M) by expanding products of linear forms one factor at a time."""
    n = len(M)
    lin = []
    for i in range(n):
        lin.append({tuple(1 if k == j else 0 for k in range(n)): F.embed(M[j][i]) for j in range(n) if M[j][i] != 0})
    out = {}
    for m, c in f.items():
        term = {(0,) * n: c}
        for i, e in enumerate(m):
            for _ in range(e):
                term = pmul(F, term, lin[i])
        out = padd(F, out, term)
    return out


# -- ideal oracles for homogeneous ideals


def degree_piece_rows(F, gens: list[dict], nvars: int, D: int) -> list[list]:
    """Coefficient vectors spanning I_D = sum of (monomial * g) in degree D."""
    monos = monomials(nvars, D)
    idx = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in gens:
        dg = sum(next(iter(g)))
        if dg > D:
            continue
        for u in monomials(nvars, D - dg):
            v = [F.zero] * len(monos)
            for m, c in g.items():
                v[idx[tuple(a + b for a, b in zip(m, u))]] = c
            rows.append(v)
    return rows


def membership_oracle(F, gens: list[dict], f: dict, nvars: int) -> bool:
    """f (homogeneous) lies in the homogeneous ideal iff rank does not grow."""
    if not f:
        return True
    D = sum(next(iter(f)))
    rows = degree_piece_rows(F, gens, nvars, D)
    monos = monomials(nvars, D)
    idx = {m: i for i, m in enumerate(monos)}
    v = [F.zero] * len(monos)
    for m, c in f.items():
        v[idx[m]] = c
    return naive_rank(F, rows + [v]) == naive_rank(F, rows)


def emptiness_oracle(F, gens: list[dict], nvars: int) -> bool:
    """V(I) empty in P^(nvars-1) iff I_D is everything for D past the Macaulay bound.

    An ideal with empty zero set generated in degrees <= delta contains,
    after a field extension, a regular sequence of nvars forms of degree
    delta, whose quotient vanishes from degree nvars*(delta-1)+1 on.
    """
    gens = [g for g in gens if g]
    if not gens:
        return False
    delta = max(sum(next(iter(g))) for g in gens)
    D = nvars * (delta - 1) + 1
    rows = degree_piece_rows(F, gens, nvars, D)
    return naive_rank(F, rows) == comb(nvars + D - 1, D)


def has_point(p: int, gens: list[dict], nvars: int, j: int) -> bool:
    """Search P^(nvars-1)(F_{p^j}) for a common zero of forms over F_p."""
    K = finite_field(p, j)
    emb = [[K.embed(c) for c in (g.values())] for g in gens]
    ms = [list(g.keys()) for g in gens]
    for lead in range(nvars):
        for tail in itertools.product(range(K.order), repeat=nvars - lead - 1):
            pt = (K.zero,) * lead + (K.one,) + tuple(tail)
            if all(_eval_lifted(K, m, c, pt) == K.zero for m, c in zip(ms, emb)):
                return True
    return False


def _eval_lifted(K, ms, cs, pt):
    acc = K.zero
    for m, c in zip(ms, cs):
        t = c
        for x, e in zip(pt, m):
            if e:
                t = K.mul(t, K.pow(x, e))
        acc = K.add(acc, t)
    return acc


def random_form(F, rng, nvars: int, d: int, density: float = 0.6) -> dict:
    out = {}
    for m in monomials(nvars, d):
        if rng.random() < density:
            c = F.from_int(rng.randrange(1, F.p)) if isinstance(F, PrimeField) else Fraction(rng.randint(-3, 3))
            if c != F.zero:
                out[m] = c
    if not out:
        out[monomials(nvars, d)[0]] = F.one
    return out


def to_poly(ring: PolyRing, f: dict) -> MultiPoly:
    return MultiPoly(ring, dict(f))


# -- invariant-theory oracle


def semilinear_action_matrix(rep, g: int, d: int) -> list[list]:
    """k-matrix of f -> g.f on k'[T]_d in k-coordinates, built term by term.

    Coordinates: (monomial, power-basis index t) for the basis x^t * T^a.
    """
    ext = rep.ext
    K = ext.field
    F = ext.base
    deg = ext.degree
    nvars = rep.nplus1
    monos = monomials(nvars, d)
    idx = {m: i for i, m in enumerate(monos)}
    sigma = rep.grpext.pi(g)
    M = rep.mats[g]
    size = len(monos) * deg
    cols = []
    xt = K.one
    powers = []
    for _ in range(deg):
        powers.append(xt)
        xt = K.mul(xt, ext.gen)
    for m in monos:
        for t in range(deg):
            moved = naive_substitute(K, {m: powers[t]}, M)
            col = [F.zero] * size
            for mm, c in moved.items():
                for u, a in enumerate(K.to_vector(ext.apply(sigma, c))):
                    col[idx[mm] * deg + u] = a
            cols.append(col)
    return [[cols[j][i] for j in range(size)] for i in range(size)]


def fixed_space_dimension(rep, d: int) -> int:
    """dim_k of the common fixed space of all g in E on k'[T]_d."""
    F = rep.ext.base
    size = len(monomials(rep.nplus1, d)) * rep.ext.degree
    rows = []
    for g in rep.grpext.E.generators() or [rep.grpext.E.identity]:
        A = semilinear_action_matrix(rep, g, d)
        rows.extend([[F.sub(A[i][j], F.one if i == j else F.zero) for j in range(size)] for i in range(size)])
    return size - naive_rank(F, rows)


__all__ = [
    "subgroups_by_subsets", "is_normal_naive",
    "QQ", "naive_rank", "naive_inverse", "naive_matmul", "conjugate_rep", "monomials", "pmul", "padd", "evaluate", "naive_substitute",
    "degree_piece_rows", "membership_oracle", "emptiness_oracle", "has_point",
    "random_form", "to_poly", "semilinear_action_matrix", "fixed_space_dimension",
]


# -- group oracles


def subgroups_by_subsets(E) -> set:
    """Every subgroup of E, found by testing subsets whose size divides |E|."""
    others = [a for a in range(E.order) if a != E.identity]
    found = set()
    for k in range(E.order):
        if E.order % (k + 1):
            continue
        for combo in itertools.combinations(others, k):
            S = frozenset(combo) | {E.identity}
            if all(E.mul(a, E.inv(b)) in S for a in S for b in S):
                found.add(S)
    return found


def is_normal_naive(E, H) -> bool:
    return all(E.mul(E.mul(g, h), E.inv(g)) in H for g in range(E.order) for h in H)
