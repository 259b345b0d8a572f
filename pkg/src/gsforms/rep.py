"""Linear representations tau: E -> GL_{n+1}(k) feeding the semilinear action.

Convention: ``mats[g]`` acts on row vectors, T -> T . tau(g).  For the
regular representation ``tau(g)[g*j][j] = 1``, so the substitution sends
T_j to T_{g*j} and g -> tau(g) is a homomorphism.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import RepresentationError, ValidationError
from .fields import NumberField, PrimeField, QQ, _trim, finite_field, udivmod
from .groups import GroupExtension
from .ideals import HomIdeal, minors_2x2, projective_dimension
from .linalg import identity, mat_mul, rank
from .poly import MultiPoly, PolyRing


@dataclass(frozen=True, eq=False)
class SemilinearRep:
    ext: object                 # GaloisExtension
    grpext: GroupExtension
    mats: tuple                 # mats[g] for each E index, entries in k
    copies: int = 1

    def __post_init__(self):
        F = self.ext.base
        E = self.grpext.E
        if len(self.mats) != E.order:
            raise RepresentationError(f"{len(self.mats)} matrices for |E| = {E.order}", kind="not-a-homomorphism")
        n = len(self.mats[0])
        for g, M in enumerate(self.mats):
            if len(M) != n or any(len(row) != n for row in M):
                raise RepresentationError(f"matrix of {E.labels[g]} is not {n}x{n}", kind="dimension-mismatch")
            for row in M:
                for x in row:
                    if not _in_base(F, x):
                        raise RepresentationError(f"entry {x!r} of tau({E.labels[g]}) is not in k", kind="entry-not-in-k")
        if self.mats[E.identity] != tuple(tuple(r) for r in identity(F, n)):
            raise RepresentationError("tau(1) is not the identity", kind="not-a-homomorphism")
        for g in range(E.order):
            for h in range(E.order):
                if tuple(map(tuple, mat_mul(F, self.mats[g], self.mats[h]))) != self.mats[E.mul(g, h)]:
                    raise RepresentationError(
                        f"tau({E.labels[g]}) tau({E.labels[h]}) != tau({E.labels[E.mul(g, h)]})",
                        kind="not-a-homomorphism",
                    )

    @property
    def nplus1(self) -> int:
        return len(self.mats[0])

    @property
    def n(self) -> int:
        return self.nplus1 - 1

    @property
    def field(self):
        return self.ext.base

    def matrix(self, g: int) -> tuple:
        return self.mats[g]

    def geometric_elements(self) -> list[int]:
        """E indices of iota(G) minus the identity: the only elements with fixed points."""
        E = self.grpext.E
        return [g for g in self.grpext.kernel_elements() if g != E.identity]


def _in_base(F, x) -> bool:
    if isinstance(F, PrimeField):
        return isinstance(x, int) and 0 <= x < F.p
    return isinstance(x, Fraction)


def _freeze(M) -> tuple:
    return tuple(tuple(r) for r in M)


def regular_rep(ext, grpext: GroupExtension) -> SemilinearRep:
    """Permutation matrices with tau(g)[g*j][j] = 1."""
    F = ext.base
    E = grpext.E
    n = E.order
    mats = []
    for g in range(n):
        M = [[F.zero] * n for _ in range(n)]
        for j in range(n):
            M[E.mul(g, j)][j] = F.one
        mats.append(_freeze(M))
    return SemilinearRep(ext, grpext, tuple(mats))


def rep_from_generators(ext, grpext: GroupExtension, gens: dict[int, list[list]]) -> SemilinearRep:
    """Extend matrices given on generators of E to all of E (then validated)."""
    F = ext.base
    E = grpext.E
    if not gens:
        raise RepresentationError("no generator matrices given")
    size = len(next(iter(gens.values())))
    if E.closure(gens) != frozenset(range(E.order)):
        raise RepresentationError("the given elements do not generate E", kind="not-generating")
    mats: dict[int, tuple] = {E.identity: _freeze(identity(F, size))}
    queue = deque([E.identity])
    while queue:
        a = queue.popleft()
        for s, Ms in gens.items():
            b = E.mul(s, a)
            if b not in mats:
                mats[b] = _freeze(mat_mul(F, Ms, mats[a]))
                queue.append(b)
    return SemilinearRep(ext, grpext, tuple(mats[g] for g in range(E.order)))


def sum_copies(rep: SemilinearRep, m: int) -> SemilinearRep:
    """Block-diagonal sum of m copies of rep."""
    if m < 1:
        raise ValidationError("m must be at least 1")
    if m == 1:
        return rep
    F = rep.field
    k = rep.nplus1
    mats = []
    for M in rep.mats:
        B = [[F.zero] * (m * k) for _ in range(m * k)]
        for c in range(m):
            for i in range(k):
                for j in range(k):
                    B[c * k + i][c * k + j] = M[i][j]
        mats.append(_freeze(B))
    return SemilinearRep(rep.ext, rep.grpext, tuple(mats), rep.copies * m)


@dataclass
class RepCertificate:
    ok: bool
    faithful: bool
    nonscalar: bool
    witness: str | None = None

    def as_dict(self) -> dict:
        return {"ok": self.ok, "faithful": self.faithful, "nonscalar": self.nonscalar, "witness": self.witness}


def _is_scalar(F, M) -> bool:
    c = M[0][0]
    return all(M[i][j] == (c if i == j else F.zero) for i in range(len(M)) for j in range(len(M)))


def nonscalar_faithful_check(rep: SemilinearRep) -> RepCertificate:
    F = rep.field
    E = rep.grpext.E
    ident = rep.mats[E.identity]
    faithful, nonscalar, witness = True, True, None
    for g in range(E.order):
        if g == E.identity:
            continue
        M = rep.mats[g]
        if M == ident and faithful:
            faithful = False
            witness = witness or f"tau({E.labels[g]}) is the identity"
        if _is_scalar(F, M) and nonscalar:
            nonscalar = False
            witness = witness or f"tau({E.labels[g]}) is scalar"
    return RepCertificate(faithful and nonscalar, faithful, nonscalar, witness)


# -- fixed loci


def minors_ideal(rep: SemilinearRep, g: int, ring: PolyRing | None = None) -> HomIdeal:
    """2x2 minors of [T ; T.tau(g)], cutting out the projective fixed locus of tau(g)."""
    F = rep.field
    ring = ring or PolyRing(rep.nplus1, F)
    T = ring.gens()
    M = rep.mats[g]
    n = rep.nplus1
    unit = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    TM = [MultiPoly(ring, {unit[j]: ring.field.embed(M[j][i]) for j in range(n) if M[j][i] != F.zero}) for i in range(n)]
    return HomIdeal(ring, minors_2x2([T, TM], ring))


def bad_locus_dim_gb(rep: SemilinearRep, g: int) -> int:
    return projective_dimension(minors_ideal(rep, g))


def cyclotomic(o: int) -> list[Fraction]:
    """Phi_o over Q, low to high."""
    from .fields import _divisors

    num = [Fraction(-1)] + [Fraction(0)] * (o - 1) + [Fraction(1)]
    for d in _divisors(o):
        if d < o:
            q, r = udivmod(QQ, num, cyclotomic(d))
            assert not _trim(QQ, r)
            num = q
    return num


def _roots_of_unity(F, o: int):
    """A field containing the o-th roots of unity (o prime to char) and the roots."""
    if isinstance(F, PrimeField):
        p = F.p
        f = 1
        while (p**f - 1) % o:
            f += 1
        K = finite_field(p, f)
        q = p**f
        if f == 1:
            prim = next(a for a in range(1, p) if all(pow(a, (p - 1) // r, p) != 1 for r in _prime_divisors(p - 1))) if p > 2 else 1
        else:
            prim = K.primitive
        z = K.pow(prim, (q - 1) // o)
        return K, [K.pow(z, i) for i in range(o)]
    if o <= 2:
        return QQ, [Fraction(1), Fraction(-1)][:o]
    K = NumberField(cyclotomic(o), check=False)
    return K, [K.pow(K.gen, i) for i in range(o)]


def _prime_divisors(n: int) -> list[int]:
    from .fields import prime_factors

    return sorted(set(prime_factors(n)))


def eigen_multiplicities(rep: SemilinearRep, g: int) -> list[int]:
    """dim ker(tau(g) - zeta) for each ord(g)-th root of unity zeta."""
    F = rep.field
    o = rep.grpext.E.element_order(g)
    K, roots = _roots_of_unity(F, o)
    M = rep.mats[g]
    n = rep.nplus1
    out = []
    for z in roots:
        rows = [[K.sub(K.embed(M[i][j]), z if i == j else K.zero) for j in range(n)] for i in range(n)]
        out.append(n - rank(K, rows))
    return out


def bad_locus_dim_fast(rep: SemilinearRep, g: int) -> int:
    """Dimension of the projective fixed locus of tau(g) over the algebraic closure.

    With char k prime to ord(g), tau(g) is diagonalizable with roots of unity
    as eigenvalues, so the answer is the largest eigenspace dimension minus
    one.  Otherwise fall back to the Groebner dimension of the minors ideal.
    """
    if g not in rep.geometric_elements():
        raise ValidationError(f"{rep.grpext.E.labels[g]} is not a nontrivial element of G", kind="g-not-in-G")
    F = rep.field
    o = rep.grpext.E.element_order(g)
    if F.char and o % F.char == 0:
        return bad_locus_dim_gb(rep, g)
    return max(eigen_multiplicities(rep, g)) - 1


def bad_locus_dim(rep: SemilinearRep) -> int:
    """dim Q = max over G minus 1 of dim Q_g, or -1 when G is trivial."""
    return max((bad_locus_dim_fast(rep, g) for g in rep.geometric_elements()), default=-1)
