"""Dense and sparse exact linear algebra over Q or a cyclotomic field.

Matrices are plain lists of rows.  Entries may be ``int``, ``Fraction`` or
:class:`~mtckit.cyclotomic.Cyclotomic`; anything supporting ``+ - * /`` and
truthiness-as-nonzero works.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cyclotomic import Cyclotomic

Matrix = list


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[0] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def shape(a: Sequence[Sequence]) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in a:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def scale(c, a: Sequence[Sequence]) -> Matrix:
    return [[c * x for x in row] for row in a]


def sub(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def diag(values: Sequence) -> Matrix:
    n = len(values)
    return [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]


def mat_equal(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    return shape(a) == shape(b) and all(
        x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def is_zero_matrix(a: Sequence[Sequence]) -> bool:
    return not any(x for row in a for x in row)


def matpow(a: Sequence[Sequence], k: int) -> Matrix:
    result = identity(len(a))
    base = [list(r) for r in a]
    while k:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def _inv(x):
    if isinstance(x, Cyclotomic):
        return x.inverse()
    return 1 / Fraction(x)


def _echelon(rows: list[list], ncols: int, augment: int = 0):
    """In-place Gauss-Jordan; returns (rows, pivot_columns, sign_of_permutation, pivot_product).

    Only the first ``ncols - augment`` columns are used for pivoting.
    """
    rows = [list(r) for r in rows]
    pivots = []
    sign = 1
    prod = 1
    r = 0
    for col in range(ncols - augment):
        p = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            sign = -sign
        piv = rows[r][col]
        prod = prod * piv
        inv = _inv(piv)
        rows[r] = [x * inv if x else 0 for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][col]
                if f:
                    rows[i] = [x - f * y if y else x for x, y in zip(rows[i], pr)]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots, sign, prod


def rank(a: Sequence[Sequence]) -> int:
    if not a:
        return 0
    return len(_echelon(list(a), len(a[0]))[1])


def det(a: Sequence[Sequence]):
    n = len(a)
    if n == 0:
        return 1
    _, pivots, sign, prod = _echelon(list(a), n)
    if len(pivots) < n:
        return 0
    return sign * prod


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    rows, pivots, _, _ = _echelon(aug, 2 * n, augment=n)
    if len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in rows]


def solve(a: Sequence[Sequence], b: Sequence):
    """One solution x of a x = b, or None when the system is inconsistent."""
    if not a:
        return []
    m = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    rows, pivots, _, _ = _echelon(aug, m + 1, augment=1)
    for row in rows[len(pivots):]:
        if row[m]:
            return None
    x = [0] * m
    for i, col in enumerate(pivots):
        x[col] = rows[i][m]
    return x


def nullspace(a: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of {x : a x = 0}, one vector per free column, dense version."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    if not a:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    rows, pivots, _, _ = _echelon(list(a), ncols)
    piv_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in piv_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for i, col in enumerate(pivots):
            c = rows[i][free]
            if c:
                v[col] = -c
        basis.append(v)
    return basis


class SparseEliminator:
    """Incremental row reduction for tall sparse systems.

    Rows are dicts ``{column: value}``.  Each added row is reduced against the
    pivots found so far; only independent rows are kept.  This avoids ever
    materialising a dense equation matrix with thousands of redundant rows.
    """

    def __init__(self, ncols: int, pivot: str = "min"):
        self.ncols = ncols
        self.pivot_rows: dict[int, dict] = {}
        # "max" pivots on the last column of each row, leaving early columns free
        self._choose = max if pivot == "max" else min

    def add(self, row: dict) -> bool:
        row = {c: v for c, v in row.items() if v}
        # pivot rows are kept fully reduced, so one pass over the hit pivots suffices
        for c in [c for c in row if c in self.pivot_rows]:
            f = row.get(c)
            if not f:
                continue
            for k, v in self.pivot_rows[c].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        if not row:
            return False
        col = self._choose(row)
        inv = _inv(row[col])
        row = {k: v * inv for k, v in row.items()}
        # keep existing pivot rows fully reduced
        for pc, prow in self.pivot_rows.items():
            f = prow.get(col)
            if f:
                for k, v in row.items():
                    nv = prow.get(k, 0) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        self.pivot_rows[col] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def nullspace(self) -> Matrix:
        """Reduced basis: vector j has a 1 at the j-th free column, 0 at the others."""
        basis = []
        for free in range(self.ncols):
            if free in self.pivot_rows:
                continue
            v = [Fraction(0)] * self.ncols
            v[free] = Fraction(1)
            for pc, prow in self.pivot_rows.items():
                c = prow.get(free)
                if c:
                    v[pc] = -c
            basis.append(v)
        return basis
