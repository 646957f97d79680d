"""Dense linear algebra over a :class:`~hlc.gf.Field`.

Matrices are lists of rows of serialized field elements.  Everything here
is exact Gaussian elimination; sizes in this package stay in the tens.
"""

from __future__ import annotations

import io

from .gf import Field


def zeros(rows: int, cols: int) -> list[list[int]]:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(col) for col in zip(*M)]


def columns(M, idx) -> list[list[int]]:
    """Submatrix of M made of the given columns, in the given order."""
    return [[row[j] for j in idx] for row in M]


def column(M, j) -> list[int]:
    return [row[j] for row in M]


def matmul(field: Field, A, B) -> list[list[int]]:
    Bt = transpose(B)
    return [[field.dot(row, col) for col in Bt] for row in A]


def vecmat(field: Field, v, M) -> list[int]:
    """Row vector times matrix."""
    out = [0] * (len(M[0]) if M else 0)
    for x, row in zip(v, M):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] = field.add(out[j], field.mul(x, y))
    return out


def rref(field: Field, M) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form and pivot columns (zero rows dropped)."""
    R = [list(r) for r in M]
    if not R:
        return [], []
    ncols = len(R[0])
    pivots = []
    top = 0
    for c in range(ncols):
        piv = next((r for r in range(top, len(R)) if R[r][c]), None)
        if piv is None:
            continue
        R[top], R[piv] = R[piv], R[top]
        s = field.inv(R[top][c])
        R[top] = [field.mul(s, x) for x in R[top]]
        for r in range(len(R)):
            if r != top and R[r][c]:
                f = field.neg(R[r][c])
                R[r] = [field.add(x, field.mul(f, y)) for x, y in zip(R[r], R[top])]
        pivots.append(c)
        top += 1
        if top == len(R):
            break
    return R[:top], pivots


def rank(field: Field, M) -> int:
    return len(rref(field, M)[1])


def nullspace(field: Field, M, ncols: int | None = None) -> list[list[int]]:
    """Basis of {x : M x = 0}, one vector per free column, in column order."""
    if ncols is None:
        ncols = len(M[0])
    if not M:
        return identity(ncols)
    R, pivots = rref(field, M)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        x = [0] * ncols
        x[fcol] = 1
        for row, pc in zip(R, pivots):
            x[pc] = field.neg(row[fcol])
        basis.append(x)
    return basis


def inverse(field: Field, M) -> list[list[int]]:
    n = len(M)
    aug = [list(row) + e for row, e in zip(M, identity(n))]
    R, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


class Echelon:
    """Incrementally built span that remembers how each basis vector was formed.

    ``add`` inserts a vector and reports whether it enlarged the span;
    ``express`` writes a vector as a combination of the inserted vectors.
    """

    def __init__(self, field: Field):
        self.field = field
        self.count = 0           # vectors offered via add(), accepted or not
        self._rows = []          # (pivot, normalized vector, combination over inserted)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, v):
        F = self.field
        v = list(v)
        combo = {}
        for p, b, c in self._rows:
            f = v[p]
            if f:
                nf = F.neg(f)
                v = [F.add(x, F.mul(nf, y)) if y else x for x, y in zip(v, b)]
                for j, cj in c.items():
                    combo[j] = F.add(combo.get(j, 0), F.mul(f, cj))
        return v, combo

    def add(self, v) -> bool:
        F = self.field
        idx = self.count
        self.count += 1
        resid, combo = self._reduce(v)
        p = next((i for i, x in enumerate(resid) if x), None)
        if p is None:
            return False
        s = F.inv(resid[p])
        c = {j: F.mul(s, F.neg(x)) for j, x in combo.items() if x}
        c[idx] = s
        self._rows.append((p, [F.mul(s, x) for x in resid], c))
        return True

    def contains(self, v) -> bool:
        return not any(self._reduce(v)[0])

    def express(self, v) -> dict[int, int] | None:
        """Coefficients {insertion index: coefficient} reproducing v, or None."""
        resid, combo = self._reduce(v)
        if any(resid):
            return None
        return {j: x for j, x in combo.items() if x}


def to_csv(M) -> str:
    """Row-major CSV of serialized elements."""
    buf = io.StringIO()
    for row in M:
        buf.write(",".join(str(int(x)) for x in row))
        buf.write("\n")
    return buf.getvalue()
