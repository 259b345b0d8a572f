"""Dense row reduction over an exact field object (see ``fields``)."""

from __future__ import annotations


def row_reduce(F, rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    zero, one = F.zero, F.one
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    basis: list[list] = []
    for col in range(ncols):
        piv = None
        for i, r in enumerate(rows):
            if r[col] != zero:
                piv = i
                break
        if piv is None:
            continue
        pr = rows.pop(piv)
        inv = F.inv(pr[col])
        if inv != one:
            pr = [F.mul(x, inv) for x in pr]
        nxt = []
        for r in rows:
            c = r[col]
            if c != zero:
                r = [F.sub(x, F.mul(c, y)) if y != zero else x for x, y in zip(r, pr)]
            if any(x != zero for x in r):
                nxt.append(r)
        rows = nxt
        for k, b in enumerate(basis):
            c = b[col]
            if c != zero:
                basis[k] = [F.sub(x, F.mul(c, y)) if y != zero else x for x, y in zip(b, pr)]
        basis.append(pr)
        pivots.append(col)
        if not rows:
            break
    return basis, pivots


def rank(F, rows: list[list]) -> int:
    return len(row_reduce(F, rows)[1])


def nullspace(F, rows: list[list], ncols: int) -> list[list]:
    """Basis of {v : M v = 0} for the matrix with the given rows."""
    basis, pivots = row_reduce(F, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for r, p in zip(basis, pivots):
            v[p] = F.neg(r[f])
        out.append(v)
    return out


class IncrementalSpan:
    """Echelon basis that absorbs vectors one at a time (for span dimensions)."""

    def __init__(self, F, ncols: int):
        self.F = F
        self.ncols = ncols
        self.rows: dict[int, list] = {}  # pivot column -> row with 1 at pivot

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: list) -> list:
        F, zero = self.F, self.F.zero
        v = list(v)
        for col in sorted(self.rows):
            c = v[col]
            if c != zero:
                r = self.rows[col]
                v = [F.sub(x, F.mul(c, y)) if y != zero else x for x, y in zip(v, r)]
        return v

    def add(self, v: list) -> bool:
        """Insert v; return True if it enlarged the span."""
        F, zero = self.F, self.F.zero
        v = self.reduce(v)
        for col, c in enumerate(v):
            if c != zero:
                inv = F.inv(c)
                self.rows[col] = [F.mul(x, inv) for x in v]
                return True
        return False


def mat_mul(F, A: list[list], B: list[list]) -> list[list]:
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = F.zero
            for k in range(m):
                a = A[i][k]
                if a != F.zero:
                    acc = F.add(acc, F.mul(a, B[k][j]))
            row.append(acc)
        out.append(row)
    return out


def identity(F, n: int) -> list[list]:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
