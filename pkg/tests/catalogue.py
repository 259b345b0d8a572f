"""Small groups, extensions and representations used across the tests."""

from __future__ import annotations

from gsforms.fields import PrimeField, make_extension, trivial_extension
from gsforms.groups import FiniteGroup, GroupExtension, GroupHom
from gsforms.rep import SemilinearRep, regular_rep, rep_from_generators, sum_copies

F5 = PrimeField(5)
F7 = PrimeField(7)
F17 = PrimeField(17)


def untwisted(E: FiniteGroup) -> GroupExtension:
    """1 -> E -> E -> 1 -> 1: everything geometric."""
    one = FiniteGroup.trivial()
    return GroupExtension(E, E, one, GroupHom(E, E, tuple(range(E.order))), GroupHom(E, one, (0,) * E.order))


def pure_galois(gamma: FiniteGroup) -> GroupExtension:
    """1 -> 1 -> Gamma -> Gamma -> 1."""
    one = FiniteGroup.trivial()
    return GroupExtension(one, gamma, gamma, GroupHom(one, gamma, (0,)), GroupHom(gamma, gamma, tuple(range(gamma.order))))


def z4_over_z2(gamma: FiniteGroup) -> GroupExtension:
    """Z/4 with G = {0, 2} and pi = reduction mod 2."""
    E = FiniteGroup.cyclic(4)
    G = FiniteGroup.cyclic(2)
    return GroupExtension(G, E, gamma, GroupHom(G, E, (0, 2)), GroupHom(E, gamma, (0, 1, 0, 1)))


def regular(F, E: FiniteGroup) -> SemilinearRep:
    return regular_rep(trivial_extension(F), untwisted(E))


def swap_copies(m: int, F=F5) -> SemilinearRep:
    return sum_copies(regular(F, FiniteGroup.cyclic(2)), m)


def sign_rep(F=F5) -> SemilinearRep:
    """Z/2 acting by T0 -> -T0 on one variable."""
    return rep_from_generators(trivial_extension(F), untwisted(FiniteGroup.cyclic(2)), {1: [[F.neg(F.one)]]})


def f25():
    return make_extension(F5, "x^2 + 2", ["x", "4*x"], FiniteGroup.cyclic(2))


def instance_b_rep() -> SemilinearRep:
    ext = f25()
    return regular_rep(ext, pure_galois(ext.gamma))


def instance_c_rep() -> SemilinearRep:
    ext = f25()
    return rep_from_generators(ext, z4_over_z2(ext.gamma), {1: [[2, 0], [0, 1]]})


def diag_rep(F, order: int, zeta: int, exps: list[int]) -> SemilinearRep:
    """Z/order acting diagonally by zeta^e on T_i (untwisted)."""
    M = [[F.zero] * len(exps) for _ in exps]
    for i, e in enumerate(exps):
        M[i][i] = F.pow(zeta, e)
    return rep_from_generators(trivial_extension(F), untwisted(FiniteGroup.cyclic(order)), {1: M})


def d4_square(F=F5) -> SemilinearRep:
    """Dihedral group of order 8 permuting the vertices of a square."""
    rot = (1, 2, 3, 0)
    ref = (0, 3, 2, 1)

    def compose(a, b):
        return tuple(a[b[i]] for i in range(4))

    elems = [tuple(range(4))]
    frontier = list(elems)
    while frontier:
        x = frontier.pop()
        for s in (rot, ref):
            y = compose(s, x)
            if y not in elems:
                elems.append(y)
                frontier.append(y)
    labels = ["".join(map(str, p)) for p in elems]
    E = FiniteGroup.from_function(labels, lambda a, b: "".join(map(str, compose(tuple(map(int, a)), tuple(map(int, b))))))
    ext = trivial_extension(F)

    def perm_matrix(p):
        M = [[F.zero] * 4 for _ in range(4)]
        for j in range(4):
            M[p[j]][j] = F.one
        return M

    gens = {E.index("".join(map(str, rot))): perm_matrix(rot), E.index("".join(map(str, ref))): perm_matrix(ref)}
    return rep_from_generators(ext, untwisted(E), gens)


def oracle_catalogue() -> list[tuple[str, SemilinearRep]]:
    """Every representation with |E| <= 8 and n+1 <= 6 used by the invariant oracle."""
    C2, C3, C4 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.cyclic(4)
    V4 = FiniteGroup.direct_product(C2, C2)
    out = [
        ("trivial, 2 vars", sum_copies(regular(F5, FiniteGroup.trivial()), 2)),
        ("Z/2 sign, 1 var", sign_rep()),
        ("Z/2 swap", swap_copies(1)),
        ("Z/2 swap x2", swap_copies(2)),
        ("Z/2 swap x3", swap_copies(3)),
        ("Z/3 regular over F7", regular(F7, C3)),
        ("Z/3 regular x2 over F7", sum_copies(regular(F7, C3), 2)),
        ("Z/4 regular", regular(F5, C4)),
        ("V4 regular", regular(F5, V4)),
        ("Z/4 diag(2,1)", diag_rep(F5, 4, 2, [1, 0])),
        ("Z/4 diag(2,4,3)", diag_rep(F5, 4, 2, [1, 2, 3])),
        ("Z/6 regular over F7", regular(F7, FiniteGroup.cyclic(6))),
        ("S3 regular over F7", regular(F7, FiniteGroup.symmetric(3))),
        ("Z/8 diag over F17", diag_rep(F17, 8, 2, [1, 3, 0])),
        ("D4 on a square", d4_square()),
        ("Galois Z/2 over F25, 2 vars", instance_b_rep()),
        ("Z/4 over Gal(F25|F5), diag(2,1)", instance_c_rep()),
        ("Z/4 over Gal(F25|F5), diag(2,1) x2", sum_copies(instance_c_rep(), 2)),
    ]
    return out


# -- extensions for the fiber-product reduction


def s3_from_table() -> FiniteGroup:
    """S_3 from an explicit multiplication table (r = rotation, s = reflection)."""
    labels = ["e", "r", "rr", "s", "rs", "rrs"]
    rows = [
        "e r rr s rs rrs",
        "r rr e rs rrs s",
        "rr e r rrs s rs",
        "s rrs rs e rr r",
        "rs s rrs r e rr",
        "rrs rs s rr r e",
    ]
    from gsforms.groups import group_from_table

    return group_from_table(labels, [r.split() for r in rows], "S3")


def split_extension(G: FiniteGroup, gamma: FiniteGroup) -> GroupExtension:
    E = FiniteGroup.direct_product(G, gamma)
    iota = tuple(E.index(f"{G.labels[g]}.{gamma.labels[gamma.identity]}") for g in range(G.order))
    pi = tuple(gamma.index(lab.split(".", 1)[1]) for lab in E.labels)
    return GroupExtension(G, E, gamma, GroupHom(G, E, iota), GroupHom(E, gamma, pi))


def lemma_suite() -> list[tuple[str, GroupExtension]]:
    """Z/4 over Z/2 and every split G x Gamma with G, Gamma in {Z/2, Z/3, S3}, |E| <= 24."""
    small = {"Z2": FiniteGroup.cyclic(2), "Z3": FiniteGroup.cyclic(3), "S3": s3_from_table()}
    out = [("Z4 over Z2", z4_over_z2(FiniteGroup.cyclic(2)))]
    for a, G in small.items():
        for b, gamma in small.items():
            if G.order * gamma.order <= 24:
                out.append((f"{a} x {b}", split_extension(G, gamma)))
    return out
