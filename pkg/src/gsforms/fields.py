"""Exact arithmetic for the base field k (Q or F_p) and for k' = k[x]/(m).

Field objects carry the operations; elements are plain Python values so
that polynomial code can keep them in dicts without wrapper overhead:

* ``PrimeField``      ints in ``range(p)``
* ``RationalField``   ``Fraction``
* ``FiniteExtField``  ints in ``range(p**n)`` encoding the coefficient
  vector in base p (``code = sum(c_i * p**i)``); table driven
* ``NumberField``     tuples of ``Fraction`` of length ``deg m``

In every case ``to_vector`` returns the coordinates in the power basis
``1, x, ..., x^(n-1)`` over the base field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product

from ._expr import parse_sparse
from .errors import FieldError, ParseError, ValidationError
from .groups import FiniteGroup


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- univariate polynomials over a field object, coefficient lists low -> high


def _trim(F, a: list) -> list:
    a = list(a)
    while a and a[-1] == F.zero:
        a.pop()
    return a


def umul(F, a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == F.zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _trim(F, out)


def usub(F, a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = list(a) + [F.zero] * (n - len(a))
    b = list(b) + [F.zero] * (n - len(b))
    return _trim(F, [F.sub(x, y) for x, y in zip(a, b)])


def udivmod(F, a: list, b: list) -> tuple[list, list]:
    a = _trim(F, a)
    b = _trim(F, b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = F.inv(b[-1])
    q = [F.zero] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b):
        c = F.mul(r[-1], inv_lead)
        shift = len(r) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] = F.sub(r[shift + i], F.mul(c, y))
        r = _trim(F, r[:-1]) if r[-1] == F.zero else _trim(F, r)
    return _trim(F, q), r


def umod(F, a: list, b: list) -> list:
    return udivmod(F, a, b)[1]


def ugcd(F, a: list, b: list) -> list:
    a, b = _trim(F, a), _trim(F, b)
    while b:
        a, b = b, umod(F, a, b)
    if not a:
        return a
    inv = F.inv(a[-1])
    return [F.mul(c, inv) for c in a]


def upowmod(F, a: list, e: int, m: list) -> list:
    result = [F.one]
    base = umod(F, a, m)
    while e:
        if e & 1:
            result = umod(F, umul(F, result, base), m)
        base = umod(F, umul(F, base, base), m)
        e >>= 1
    return result


def uderiv(F, a: list) -> list:
    return _trim(F, [F.mul(F.from_int(i), c) for i, c in enumerate(a)][1:])


def ueval(F, a: list, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


# -- base fields


class PrimeField:
    """F_p with elements ``0 .. p-1``."""

    is_finite = True
    degree = 1
    zero = 0
    one = 1

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValidationError(f"{p} is not prime", kind="not-prime")
        self.p = p
        self.char = p
        self.order = p
        self.base = self
        self.gen = 0

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __reduce__(self):
        return (PrimeField, (self.p,))

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e: int):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def from_int(self, n: int):
        return n % self.p

    def from_fraction(self, q: Fraction):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise ParseError(f"{q} has no image in GF({self.p})")
        return q.numerator * pow(q.denominator, self.p - 2, self.p) % self.p

    def embed(self, c):
        return c

    def to_vector(self, a) -> tuple:
        return (a,)

    def from_vector(self, v):
        return v[0] % self.p

    def elements(self):
        return range(self.p)

    def fmt(self, a) -> str:
        return str(a)

    def frobenius(self, a, k: int = 1):
        return a


class RationalField:
    is_finite = False
    degree = 1
    char = 0
    zero = Fraction(0)
    one = Fraction(1)
    gen = Fraction(0)

    def __init__(self):
        self.base = self

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __reduce__(self):
        return (RationalField, ())

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def pow(self, a, e: int):
        return a**e

    def from_int(self, n: int):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def embed(self, c):
        return c

    def to_vector(self, a) -> tuple:
        return (a,)

    def from_vector(self, v):
        return Fraction(v[0])

    def fmt(self, a) -> str:
        return str(a)


QQ = RationalField()


def _fmt_coeff_poly(base, coeffs) -> str:
    """Render sum c_i x^i (low to high) in the element text syntax."""
    parts = []
    for i, c in enumerate(coeffs):
        if c == base.zero:
            continue
        s = base.fmt(c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        if i == 0:
            body = s
        else:
            mono = "x" if i == 1 else f"x^{i}"
            body = mono if s == "1" else f"{s}*{mono}"
        parts.append(("-" if neg else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- extensions


class FiniteExtField:
    """F_{p^n} = F_p[x]/(m) with table-driven arithmetic on integer codes."""

    is_finite = True

    def __init__(self, base: PrimeField, modulus: list[int]):
        p = base.p
        n = len(modulus) - 1
        if n < 2 or modulus[-1] != 1:
            raise ValidationError("modulus must be monic of degree >= 2")
        if not rabin_irreducible(base, list(modulus)):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})", kind="reducible-modulus")
        self.base = base
        self.p = p
        self.char = p
        self.degree = n
        self.order = q = p**n
        self.modulus = tuple(modulus)
        self.zero = 0
        self.one = 1
        self.gen = p  # code of x
        self._digits = [tuple((c // p**i) % p for i in range(n)) for c in range(q)]
        self._weights = [p**i for i in range(n)]
        # discrete log tables from a primitive element
        exp, log = self._build_logs()
        self._exp = exp + exp
        self._log = log
        self._neg = [self.from_vector([(-d) % p for d in self._digits[c]]) for c in range(q)]
        self._add = None
        if q <= 1024:
            self._add = [
                [self.from_vector([(x + y) % p for x, y in zip(self._digits[a], self._digits[b])]) for b in range(q)]
                for a in range(q)
            ]

    def __repr__(self):
        return f"GF({self.p}^{self.degree}; {self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FiniteExtField) and other.modulus == self.modulus and other.p == self.p

    def __hash__(self):
        return hash(("GFext", self.p, self.modulus))

    def __reduce__(self):
        return (FiniteExtField, (self.base, list(self.modulus)))

    def _polymul(self, a: int, b: int) -> int:
        F = self.base
        prod = umul(F, list(self._digits[a]), list(self._digits[b]))
        rem = umod(F, prod, list(self.modulus))
        return self.from_vector(rem)

    def _build_logs(self):
        q = self.order
        for cand in range(2, q):
            exp = [1]
            cur = 1
            for _ in range(q - 2):
                cur = self._polymul(cur, cand)
                if cur == 1:
                    break
                exp.append(cur)
            if len(exp) == q - 1:
                log = [0] * q
                log[0] = -1
                for i, c in enumerate(exp):
                    log[c] = i
                self.primitive = cand
                return exp, log
        if q == 2:
            self.primitive = 1
            return [1], [-1, 0]
        raise FieldError("no primitive element found", kind="reducible-modulus")

    def from_vector(self, v) -> int:
        v = list(v) + [0] * (self.degree - len(v))
        return sum((c % self.p) * w for c, w in zip(v, self._weights))

    def to_vector(self, a) -> tuple:
        return self._digits[a]

    def add(self, a, b):
        if self._add is not None:
            return self._add[a][b]
        return self.from_vector([x + y for x, y in zip(self._digits[a], self._digits[b])])

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def frobenius(self, a, k: int = 1):
        """a -> a^(p^k)."""
        return self.pow(a, pow(self.p, k % self.degree if self.degree else 0))

    def from_int(self, n: int):
        return n % self.p

    def from_fraction(self, q):
        return self.base.from_fraction(q)

    def embed(self, c):
        return c

    def elements(self):
        return range(self.order)

    def fmt(self, a) -> str:
        return _fmt_coeff_poly(self.base, self._digits[a])


class NumberField:
    """Q[x]/(m) with elements as tuples of Fractions."""

    is_finite = False
    char = 0

    def __init__(self, modulus: list, check: bool = True):
        modulus = [Fraction(c) for c in modulus]
        n = len(modulus) - 1
        if n < 2 or modulus[-1] != 1:
            raise ValidationError("modulus must be monic of degree >= 2")
        if check:
            q_irreducible(modulus)
        self.base = QQ
        self.degree = n
        self.modulus = tuple(modulus)
        self.zero = (Fraction(0),) * n
        self.one = (Fraction(1),) + (Fraction(0),) * (n - 1)
        self.gen = (Fraction(0), Fraction(1)) + (Fraction(0),) * (n - 2)
        # x^(n+i) reduced, for fast multiplication
        self._red = []
        cur = [-c for c in modulus[:-1]]
        for _ in range(n - 1):
            self._red.append(tuple(cur))
            shifted = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            cur = [s - top * m for s, m in zip(shifted, modulus[:-1])]
        self._red.append(tuple(cur))

    def __repr__(self):
        return f"QQ[x]/({_fmt_coeff_poly(QQ, self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("NF", self.modulus))

    def __reduce__(self):
        return (NumberField, (list(self.modulus), False))

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        n = self.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:n]
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c:
                red = self._red[k - n]
                out = [o + c * r for o, r in zip(out, red)]
        return tuple(out)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in Q[x]
        F = QQ
        r0, r1 = list(self.modulus), _trim(F, list(a))
        s0, s1 = [], [F.one]
        while len(r1) > 1:
            q, r = udivmod(F, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, usub(F, s0, umul(F, q, s1))
        c = r1[0]
        out = [x / c for x in s1]
        out = umod(F, out, list(self.modulus))
        return tuple(out + [Fraction(0)] * (self.degree - len(out)))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        out = self.one
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def from_int(self, n: int):
        return (Fraction(n),) + (Fraction(0),) * (self.degree - 1)

    def from_fraction(self, q):
        return (Fraction(q),) + (Fraction(0),) * (self.degree - 1)

    def embed(self, c):
        return self.from_fraction(c)

    def to_vector(self, a) -> tuple:
        return a

    def from_vector(self, v):
        v = [Fraction(c) for c in v]
        return tuple(v + [Fraction(0)] * (self.degree - len(v)))

    def fmt(self, a) -> str:
        return _fmt_coeff_poly(QQ, a)


def field_pow(F, a, e: int):
    if hasattr(F, "pow"):
        return F.pow(a, e)
    out = F.one
    for _ in range(e):
        out = F.mul(out, a)
    return out


# -- irreducibility


def rabin_irreducible(F: PrimeField, m: list) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    m = _trim(F, [F.from_int(c) for c in m])
    n = len(m) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    p = F.p
    if upowmod(F, x, p**n, m) != umod(F, x, m):
        return False
    for r in prime_factors(n):
        h = usub(F, upowmod(F, x, p ** (n // r), m), x)
        if len(ugcd(F, h, m)) != 1:
            return False
    return True


def _ddf_degrees(F: PrimeField, f: list) -> list[int]:
    """Degrees of irreducible factors of a squarefree monic f over F_p."""
    degs = []
    x = [0, 1]
    h = [0, 1]
    f = list(f)
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = upowmod(F, h, F.p, f)
        g = ugcd(F, usub(F, h, x), f)
        if len(g) > 1:
            degs.extend([i] * ((len(g) - 1) // i))
            f = udivmod(F, f, g)[0]
            h = umod(F, h, f)
    if len(f) > 1:
        degs.append(len(f) - 1)
    return degs


def _subset_sums(degs: list[int], n: int) -> set[int]:
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return {s for s in sums if 0 < s < n}


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.extend({d, n // d})
        d += 1
    return sorted(out)


def q_irreducible(modulus: list) -> None:
    """Raise FieldError unless the monic rational polynomial is irreducible.

    Procedure: scale to a monic integer polynomial; rational root test
    (decisive up to degree 3); explicit quadratic-factor search in degree 4;
    for degree >= 5 intersect the possible factor degrees implied by the
    factorization pattern modulo the primes below 200 that keep the
    reduction squarefree.  An undecided case raises
    ``irreducibility-inconclusive``.
    """
    m = [Fraction(c) for c in modulus]
    n = len(m) - 1
    if n == 1:
        return
    D = reduce(lambda a, b: a * b // math.gcd(a, b), [c.denominator for c in m], 1)
    M = [int(m[i] * D ** (n - i)) for i in range(n + 1)]  # monic integer
    reducible = FieldError(f"modulus {modulus} is reducible over QQ", kind="reducible-modulus")
    if M[0] == 0:
        raise reducible
    ZZ = lambda coeffs, t: sum(c * t**i for i, c in enumerate(coeffs))  # noqa: E731
    for d in _divisors(M[0]):
        if ZZ(M, d) == 0 or ZZ(M, -d) == 0:
            raise reducible
    if n <= 3:
        return
    if n == 4:
        a3, a2, a1, a0 = M[3], M[2], M[1], M[0]
        for qd in _divisors(a0):
            for q in (qd, -qd):
                s = a0 // q
                if q != s:
                    num = a1 - a3 * q
                    if num % (s - q):
                        continue
                    pp = num // (s - q)
                    r = a3 - pp
                    if pp * r + q + s == a2:
                        raise reducible
                else:
                    if q * a3 != a1:
                        continue
                    disc = a3 * a3 - 4 * (a2 - 2 * q)
                    if disc >= 0 and math.isqrt(disc) ** 2 == disc:
                        raise reducible
        return
    possible = set(range(1, n))
    for p in range(2, 200):
        if not is_prime(p):
            continue
        F = PrimeField(p)
        f = [F.from_int(c) for c in M]
        if len(ugcd(F, f, uderiv(F, f))) != 1:
            continue
        possible &= _subset_sums(_ddf_degrees(F, f), n)
        if not possible:
            return
    raise FieldError(f"could not decide irreducibility of {modulus} over QQ", kind="irreducibility-inconclusive")


def smallest_irreducible(base: PrimeField, n: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree n over F_p."""
    p = base.p
    for tail in product(range(p), repeat=n):
        m = list(reversed(tail)) + [1]
        if m[0] != 0 and rabin_irreducible(base, m):
            return m
    raise FieldError(f"no irreducible polynomial of degree {n}")


def finite_field(p: int, n: int = 1):
    base = PrimeField(p)
    if n == 1:
        return base
    return FiniteExtField(base, smallest_irreducible(base, n))


def make_field(base, modulus: list):
    """The field k[x]/(m) as a field object; degree 1 returns ``base`` itself."""
    if len(modulus) == 2:
        return base
    if isinstance(base, PrimeField):
        return FiniteExtField(base, modulus)
    return NumberField(modulus)


# -- Galois extensions


@dataclass(frozen=True, eq=False)
class GaloisExtension:
    """k'|k with explicit automorphisms indexed by the elements of Gamma.

    ``images[g]`` is the image of the generator x under sigma_g for the
    Gamma element with index g.
    """

    base: object
    field: object
    modulus: tuple
    gamma: FiniteGroup
    images: tuple
    _tables: list = field(default_factory=list, repr=False)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def gen(self):
        return self.field.gen if self.degree > 1 else self.base.neg(self.modulus[0])

    def apply(self, g: int, a):
        """sigma_g(a)."""
        if not 0 <= g < len(self.images):
            raise IndexError(f"no automorphism with index {g}")
        return self._tables[g](a)

    def sigma_matrix(self, g: int) -> list[list]:
        """k-matrix of sigma_g on the power basis (column j = sigma_g(x^j))."""
        K = self.field
        n = self.degree
        cols = []
        img = self.images[g]
        cur = K.one
        for _ in range(n):
            cols.append(list(K.to_vector(cur)))
            cur = K.mul(cur, img)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def frobenius_power(self, g: int) -> int:
        """For finite k: the a with sigma_g = (z -> z^(p^a)) on k'."""
        K = self.field
        if not self.base.is_finite:
            raise ValueError("Frobenius powers only exist over finite fields")
        if self.degree == 1:
            return 0
        for a in range(self.degree):
            if K.frobenius(K.gen, a) == self.images[g]:
                return a
        raise FieldError("automorphism is not a Frobenius power")


def _make_sigma(K, base, img, degree):
    if degree == 1:
        return lambda a: a
    if K.is_finite:
        table = []
        powers = [K.one]
        for _ in range(degree - 1):
            powers.append(K.mul(powers[-1], img))
        for code in range(K.order):
            acc = K.zero
            for c, pw in zip(K.to_vector(code), powers):
                if c:
                    acc = K.add(acc, K.mul(K.embed(c), pw))
            table.append(acc)
        return table.__getitem__
    powers = [K.one]
    for _ in range(degree - 1):
        powers.append(K.mul(powers[-1], img))

    def sigma(a):
        acc = K.zero
        for c, pw in zip(K.to_vector(a), powers):
            if c:
                acc = K.add(acc, K.mul(K.embed(c), pw))
        return acc

    return sigma


def _kernel_dim(F, rows: list[list], ncols: int) -> int:
    from .linalg import rank

    return ncols - rank(F, rows)


def make_extension(base, modulus, autos, gamma: FiniteGroup, gamma_iso=None) -> GaloisExtension:
    """Build and validate k' = k[x]/(m) with Gamma acting through ``autos``.

    ``modulus`` is a low-to-high coefficient list over ``base`` (or text);
    ``autos`` lists images of x in k' (elements or text); ``gamma_iso[g]``
    is the index into ``autos`` attached to the Gamma element g (identity
    map if omitted).
    """
    if isinstance(modulus, str):
        modulus = parse_univariate(modulus, base)
    modulus = _trim(base, [base.from_fraction(c) for c in modulus])
    if len(modulus) < 2 or modulus[-1] != base.one:
        raise ValidationError("modulus must be monic of degree >= 1", kind="bad-modulus")
    K = make_field(base, modulus)
    if len(autos) != gamma.order:
        raise FieldError(
            f"{len(autos)} automorphisms given for |Gamma| = {gamma.order}", kind="composition-table-mismatch"
        )
    degree = len(modulus) - 1
    gen = K.gen if degree > 1 else base.neg(modulus[0])
    autos = [parse_element(a, K, gen=gen) if isinstance(a, str) else a for a in autos]
    if gamma_iso is None:
        gamma_iso = list(range(gamma.order))
    if sorted(gamma_iso) != list(range(gamma.order)):
        raise FieldError("gamma_iso is not a bijection", kind="composition-table-mismatch")
    images = tuple(autos[gamma_iso[g]] for g in range(gamma.order))
    Kmod = [K.embed(c) for c in modulus]
    for g, img in enumerate(images):
        if ueval(K, Kmod, img) != K.zero:
            raise FieldError(
                f"image {K.fmt(img)} of x under {gamma.labels[g]} is not a root of the modulus",
                kind="automorphism-not-a-root",
            )
    if len(set(images)) != len(images):
        raise FieldError("automorphisms are not distinct", kind="composition-table-mismatch")
    tables = [_make_sigma(K, base, img, degree) for img in images]
    ext = GaloisExtension(base, K, tuple(modulus), gamma, images, tables)
    # sigma_g(sigma_h(x)) = sigma_gh(x)
    for g in range(gamma.order):
        for h in range(gamma.order):
            if tables[g](images[h]) != images[gamma.mul(g, h)]:
                raise FieldError(
                    f"sigma_{gamma.labels[g]} o sigma_{gamma.labels[h]} != sigma of their product",
                    kind="composition-table-mismatch",
                )
    if degree > 1:
        rows = []
        for g in range(gamma.order):
            S = ext.sigma_matrix(g)
            rows.extend([[base.sub(S[i][j], base.one if i == j else base.zero) for j in range(degree)] for i in range(degree)])
        if _kernel_dim(base, rows, degree) != 1:
            raise FieldError("the automorphisms fix more than k", kind="fixed-field-too-large")
    return ext


def apply_automorphism(ext: GaloisExtension, g: int, a):
    return ext.apply(g, a)


def trivial_extension(base) -> GaloisExtension:
    """k' = k with the trivial Galois group."""
    gamma = FiniteGroup.trivial()
    return make_extension(base, [base.zero, base.one], [base.zero], gamma)


# -- text syntax


def parse_base_field(text: str):
    t = text.strip()
    if t.upper() in ("Q", "QQ"):
        return QQ
    t = t.upper().removeprefix("GF").removeprefix("F").strip("() _")
    try:
        return PrimeField(int(t))
    except ValueError as exc:
        raise ParseError(f"cannot parse base field {text!r}") from exc


def parse_univariate(text: str, base) -> list:
    """Coefficient list (low to high) over ``base`` of a polynomial in x."""
    sp = parse_sparse(text, ["x"])
    if not sp:
        return []
    n = max(m[0] for m in sp)
    out = [base.zero] * (n + 1)
    for (i,), c in sp.items():
        out[i] = base.from_fraction(c)
    return _trim(base, out)


def parse_element(text: str, K, gen=None):
    """Element of K from text such as ``3 + 2*x`` or ``1/2``.

    ``x`` denotes ``gen`` (default: the field generator).
    """
    return ext_from_poly(K, parse_univariate(text, K.base), gen)


def ext_from_poly(K, coeffs: list, gen=None):
    """Evaluate a polynomial in x (coefficients in the base) at ``gen``."""
    gen = K.gen if gen is None else gen
    acc = K.zero
    for c in reversed(coeffs):
        acc = K.add(K.mul(acc, gen), K.embed(c))
    return acc


def format_element(K, a) -> str:
    return K.fmt(a)
