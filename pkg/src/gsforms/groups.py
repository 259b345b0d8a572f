"""Finite groups as multiplication tables, extensions, and the reduction of
an extension to a finite quotient reconstructed as a fiber product."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations

from .errors import GroupError, ParseError


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Elements are indices ``0..n-1``; ``table[a][b]`` is the index of ab."""

    labels: tuple
    table: tuple
    name: str = ""

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise GroupError("duplicate element labels", kind="bad-table")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise GroupError("table shape does not match the element count", kind="bad-table")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise GroupError("table entry out of range", kind="bad-table")
        ident = [e for e in range(n) if all(self.table[e][a] == a and self.table[a][e] == a for a in range(n))]
        if not ident:
            raise GroupError("no two-sided identity", kind="bad-table")
        object.__setattr__(self, "identity", ident[0])
        inv = []
        for a in range(n):
            cands = [b for b in range(n) if self.table[a][b] == ident[0] and self.table[b][a] == ident[0]]
            if not cands:
                raise GroupError(f"{self.labels[a]} has no inverse", kind="bad-table")
            inv.append(cands[0])
        object.__setattr__(self, "_inv", tuple(inv))
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                ab = ta[b]
                tb = t[b]
                tab = t[ab]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise GroupError(
                            f"not associative at ({self.labels[a]}, {self.labels[b]}, {self.labels[c]})",
                            kind="bad-table",
                        )

    # -- constructors

    @classmethod
    def from_function(cls, labels, mul, name=""):
        labels = list(labels)
        idx = {x: i for i, x in enumerate(labels)}
        table = tuple(tuple(idx[mul(a, b)] for b in labels) for a in labels)
        return cls(tuple(str(x) for x in labels), table, name)

    @classmethod
    def trivial(cls):
        return cls(("1",), ((0,),), "trivial")

    @classmethod
    def cyclic(cls, n: int):
        if n < 1:
            raise GroupError("cyclic group order must be positive")
        return cls(
            tuple(str(i) for i in range(n)),
            tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
            f"cyclic {n}",
        )

    @classmethod
    def symmetric(cls, n: int):
        """S_n in one-line notation, composing right to left."""
        perms = sorted(permutations(range(n)))
        idx = {p: i for i, p in enumerate(perms)}
        table = tuple(tuple(idx[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms)
        return cls(tuple("".join(map(str, p)) for p in perms), table, f"symmetric {n}")

    @classmethod
    def direct_product(cls, A: "FiniteGroup", B: "FiniteGroup"):
        pairs = [(a, b) for a in range(A.order) for b in range(B.order)]
        idx = {p: i for i, p in enumerate(pairs)}
        table = tuple(
            tuple(idx[(A.table[a1][a2], B.table[b1][b2])] for (a2, b2) in pairs) for (a1, b1) in pairs
        )
        labels = tuple(f"{A.labels[a]}.{B.labels[b]}" for a, b in pairs)
        return cls(labels, table, f"product ({A.name}) x ({B.name})")

    # -- basic structure

    @property
    def order(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, cur = 1, a
        while cur != self.identity:
            cur = self.table[cur][a]
            k += 1
        return k

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ParseError(f"unknown element {label!r} of {self.name or 'group'}") from None

    def order_profile(self) -> tuple:
        return tuple(sorted(self.element_order(a) for a in range(self.order)))

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.order) for b in range(a))

    # -- subgroups

    def closure(self, gens) -> frozenset:
        seen = {self.identity}
        queue = deque([self.identity])
        gens = list(gens)
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def subgroups(self) -> list[frozenset]:
        """All subgroups, obtained by closing joins of cyclic subgroups."""
        cyclic = {self.closure([a]) for a in range(self.order)}
        found = set(cyclic)
        frontier = list(cyclic)
        while frontier:
            nxt = []
            for S in frontier:
                for C in cyclic:
                    if C <= S:
                        continue
                    J = self.closure(S | C)
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
            frontier = nxt
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def is_subgroup(self, H) -> bool:
        H = set(H)
        return self.identity in H and all(self.table[a][b] in H for a in H for b in H)

    def is_normal(self, H) -> bool:
        H = set(H)
        return all(self.table[self.table[g][h]][self.inv(g)] in H for g in range(self.order) for h in H)

    def normal_subgroups(self) -> list[frozenset]:
        return [H for H in self.subgroups() if self.is_normal(H)]

    def quotient(self, H) -> tuple["FiniteGroup", list[int]]:
        """G/H for normal H, with the projection as an index list."""
        H = frozenset(H)
        if not self.is_subgroup(H) or not self.is_normal(H):
            raise GroupError("quotient by a non-normal subset")
        cosets: list[frozenset] = []
        proj = [-1] * self.order
        for a in range(self.order):
            if proj[a] >= 0:
                continue
            c = frozenset(self.table[a][h] for h in H)
            for x in c:
                proj[x] = len(cosets)
            cosets.append(c)
        reps = [min(c) for c in cosets]
        table = tuple(tuple(proj[self.table[ra][rb]] for rb in reps) for ra in reps)
        labels = tuple(f"[{self.labels[r]}]" for r in reps)
        return FiniteGroup(labels, table, f"({self.name})/H"), proj

    def generators(self) -> list[int]:
        """A small generating set, preferring elements of large order."""
        by_order = sorted(range(self.order), key=lambda a: (-self.element_order(a), a))
        gens: list[int] = []
        span = frozenset([self.identity])
        for a in by_order:
            if a not in span:
                gens.append(a)
                span = self.closure(gens)
            if len(span) == self.order:
                break
        return gens


@dataclass(frozen=True, eq=False)
class GroupHom:
    domain: FiniteGroup
    codomain: FiniteGroup
    images: tuple

    def __call__(self, a: int) -> int:
        return self.images[a]

    def first_failure(self):
        D, C = self.domain, self.codomain
        if len(self.images) != D.order:
            return ("shape", None, None)
        for a in range(D.order):
            for b in range(D.order):
                if self.images[D.mul(a, b)] != C.mul(self.images[a], self.images[b]):
                    return ("multiplicative", a, b)
        return None

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def image(self) -> frozenset:
        return frozenset(self.images)

    def kernel(self) -> frozenset:
        return frozenset(a for a in range(self.domain.order) if self.images[a] == self.codomain.identity)


@dataclass(frozen=True, eq=False)
class GroupExtension:
    """1 -> G --iota--> E --pi--> Gamma -> 1."""

    G: FiniteGroup
    E: FiniteGroup
    gamma: FiniteGroup
    iota: GroupHom
    pi: GroupHom

    def kernel_elements(self) -> list[int]:
        """Indices in E of iota(G), sorted."""
        return sorted(set(self.iota.images))


@dataclass
class ExtensionCertificate:
    iota_hom: bool
    pi_hom: bool
    injective: bool
    surjective: bool
    exact: bool
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.iota_hom and self.pi_hom and self.injective and self.surjective and self.exact

    def as_dict(self) -> dict:
        return {
            "iota_homomorphism": self.iota_hom,
            "pi_homomorphism": self.pi_hom,
            "injective": self.injective,
            "surjective": self.surjective,
            "exact": self.exact,
            "witness": self.witness,
        }

    def require(self) -> None:
        if not self.ok:
            raise GroupError(self.witness or "invalid extension", kind="invalid-extension")


def validate_extension(ext: GroupExtension) -> ExtensionCertificate:
    """Check that iota, pi are homomorphisms and the sequence is exact."""
    E, Gam = ext.E, ext.gamma
    witness = None

    def note(msg):
        nonlocal witness
        if witness is None:
            witness = msg

    iota_fail = ext.iota.first_failure()
    if iota_fail:
        _, a, b = iota_fail
        if a is None:
            note("iota has the wrong number of images")
        else:
            note(f"iota({ext.G.labels[a]}*{ext.G.labels[b]}) != iota({ext.G.labels[a]})*iota({ext.G.labels[b]})")
    pi_fail = ext.pi.first_failure()
    if pi_fail:
        _, a, b = pi_fail
        if a is None:
            note("pi has the wrong number of images")
        else:
            note(f"pi({E.labels[a]}*{E.labels[b]}) != pi({E.labels[a]})*pi({E.labels[b]})")
    injective = ext.iota.is_injective()
    if not injective:
        seen = {}
        for a, x in enumerate(ext.iota.images):
            if x in seen:
                note(f"iota not injective: {ext.G.labels[seen[x]]} and {ext.G.labels[a]} both map to {E.labels[x]}")
                break
            seen[x] = a
    missing = [c for c in range(Gam.order) if c not in set(ext.pi.images)]
    surjective = not missing
    if missing:
        note(f"pi not surjective: {Gam.labels[missing[0]]} has no preimage")
    img, ker = ext.iota.image(), ext.pi.kernel()
    exact = img == ker
    if not exact:
        diff = sorted(img ^ ker)
        note(f"image(iota) != kernel(pi): {E.labels[diff[0]]} lies in exactly one of them")
    return ExtensionCertificate(not iota_fail, not pi_fail, injective, surjective, exact, witness)


# -- reduction to a finite quotient


@dataclass
class SectionSubgroup:
    """Normal H in E meeting iota(G) trivially, with H' = pi(H) and H -> H'."""

    elements: frozenset
    image: frozenset
    iso: dict


def find_section_subgroups(ext: GroupExtension) -> list[SectionSubgroup]:
    E = ext.E
    G_img = frozenset(ext.iota.images)
    out = []
    for H in E.normal_subgroups():
        if H & G_img == {E.identity}:
            iso = {h: ext.pi(h) for h in sorted(H)}
            out.append(SectionSubgroup(H, frozenset(iso.values()), iso))
    return out


def find_isomorphism(A: FiniteGroup, B: FiniteGroup, allowed=None) -> list[int] | None:
    """An isomorphism A -> B as an image list, by backtracking on generators.

    ``allowed(a, b)`` optionally restricts which images an element may take;
    it is enforced on every element of the final map.
    """
    if A.order != B.order or A.order_profile() != B.order_profile():
        return None
    gens = A.generators()
    a_ord = [A.element_order(a) for a in range(A.order)]
    b_ord = [B.element_order(b) for b in range(B.order)]
    cands = [[b for b in range(B.order) if b_ord[b] == a_ord[g] and (allowed is None or allowed(g, b))] for g in gens]

    def build(images):
        phi = {A.identity: B.identity}
        queue = deque([A.identity])
        while queue:
            x = queue.popleft()
            for g, img in zip(gens, images):
                y = A.mul(x, g)
                val = B.mul(phi[x], img)
                if y in phi:
                    if phi[y] != val:
                        return None
                else:
                    phi[y] = val
                    queue.append(y)
        if len(phi) != A.order or len(set(phi.values())) != B.order:
            return None
        out = [phi[a] for a in range(A.order)]
        if allowed is not None and not all(allowed(a, out[a]) for a in range(A.order)):
            return None
        return out

    def search(i, images):
        if i == len(gens):
            return build(images)
        for b in cands[i]:
            if b in images:
                continue
            res = search(i + 1, images + [b])
            if res is not None:
                return res
        return None

    return search(0, [])


@dataclass
class Reconstruction:
    quotient: FiniteGroup          # E~ = E/H
    proj: list                     # E -> E/H
    gamma_quotient: FiniteGroup    # Gamma/H'
    gamma_proj: list               # Gamma -> Gamma/H'
    fiber: FiniteGroup             # E/H x_{Gamma/H'} Gamma
    pairs: list                    # fiber index -> (E/H index, Gamma index)
    iso: list | None               # fiber index -> E index
    commutes: bool

    @property
    def ok(self) -> bool:
        return self.iso is not None and self.commutes


def fiber_product_reconstruct(ext: GroupExtension, H) -> Reconstruction:
    E, Gam = ext.E, ext.gamma
    H = frozenset(H)
    Et, proj = E.quotient(H)
    Hp = frozenset(ext.pi(h) for h in H)
    Gq, gproj = Gam.quotient(Hp)
    # induced E/H -> Gamma/H'
    pit = [None] * Et.order
    for e in range(E.order):
        val = gproj[ext.pi(e)]
        if pit[proj[e]] is None:
            pit[proj[e]] = val
        elif pit[proj[e]] != val:
            raise GroupError("pi does not descend to E/H", kind="internal")
    pairs = [(a, c) for a in range(Et.order) for c in range(Gam.order) if pit[a] == gproj[c]]
    idx = {p: i for i, p in enumerate(pairs)}
    table = tuple(
        tuple(idx[(Et.mul(a1, a2), Gam.mul(c1, c2))] for (a2, c2) in pairs) for (a1, c1) in pairs
    )
    labels = tuple(f"({Et.labels[a]},{Gam.labels[c]})" for a, c in pairs)
    F = FiniteGroup(labels, table, "fiber product")

    def allowed(f, e):
        return pairs[f] == (proj[e], ext.pi(e))

    iso = find_isomorphism(F, E, allowed)
    if iso is None:
        raise GroupError("no isomorphism between the fiber product and E", kind="no-isomorphism-found")
    commutes = all(pairs[f] == (proj[iso[f]], ext.pi(iso[f])) for f in range(F.order))
    return Reconstruction(Et, proj, Gq, gproj, F, pairs, iso, commutes)


# -- text input


def parse_group(text: str) -> FiniteGroup:
    """``trivial``, ``cyclic n``, ``symmetric n`` or ``product A x B``."""
    s = text.strip()
    low = s.lower()
    if low.startswith("product"):
        parts = _split_product(s[len("product"):])
        groups = [parse_group(p) for p in parts]
        out = groups[0]
        for g in groups[1:]:
            out = FiniteGroup.direct_product(out, g)
        return out
    words = low.split()
    if words == ["trivial"]:
        return FiniteGroup.trivial()
    if len(words) == 2 and words[0] in ("cyclic", "symmetric"):
        try:
            n = int(words[1])
        except ValueError:
            raise ParseError(f"bad group size in {text!r}") from None
        return FiniteGroup.cyclic(n) if words[0] == "cyclic" else FiniteGroup.symmetric(n)
    raise ParseError(f"unknown group shorthand {text!r}")


def _split_product(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    for tok in tokens:
        if tok == "(":
            depth += 1
            if depth == 1:
                continue
        elif tok == ")":
            depth -= 1
            if depth == 0:
                continue
        if tok == "x" and depth == 0:
            parts.append(cur.strip())
            cur = ""
            continue
        cur += " " + tok
    parts.append(cur.strip())
    if len(parts) < 2 or not all(parts):
        raise ParseError(f"bad product shorthand {text!r}")
    return parts


def group_from_table(labels: list[str], rows: list[list[str]], name: str = "") -> FiniteGroup:
    idx = {x: i for i, x in enumerate(labels)}
    try:
        table = tuple(tuple(idx[x] for x in row) for row in rows)
    except KeyError as exc:
        raise ParseError(f"unknown label {exc.args[0]!r} in multiplication table") from None
    return FiniteGroup(tuple(labels), table, name)


def parse_map(text: str, domain: FiniteGroup, codomain: FiniteGroup) -> GroupHom:
    """``a:b`` pairs (whitespace or comma separated), or ``trivial``."""
    if text.strip().lower() == "trivial":
        return GroupHom(domain, codomain, tuple([codomain.identity] * domain.order))
    images: dict[int, int] = {}
    for item in text.replace(",", " ").split():
        if ":" not in item:
            raise ParseError(f"map entry {item!r} is not of the form src:dst")
        a, b = item.split(":", 1)
        images[domain.index(a)] = codomain.index(b)
    if len(images) != domain.order:
        raise ParseError(f"map gives {len(images)} images for {domain.order} elements")
    return GroupHom(domain, codomain, tuple(images[a] for a in range(domain.order)))
