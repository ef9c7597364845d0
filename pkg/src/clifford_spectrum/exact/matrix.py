"""Symmetric matrices over Q(sqrt 2)."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .poly import Poly
from .qs2 import ONE, ZERO, QS2, Scalar


class SymMatrix:
    """Square symmetric matrix with exact QS2 entries."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows: Sequence[Sequence[Scalar]], check: bool = True) -> None:
        self.rows: tuple[tuple[QS2, ...], ...] = tuple(tuple(QS2.coerce(x) for x in r) for r in rows)
        self.dim = len(self.rows)
        if self.dim == 0:
            raise ValueError("empty matrix")
        if any(len(r) != self.dim for r in self.rows):
            raise ValueError("matrix is not square")
        if check:
            for i in range(self.dim):
                for j in range(i):
                    if self.rows[i][j] != self.rows[j][i]:
                        raise ValueError(f"matrix not symmetric at ({i}, {j})")

    @classmethod
    def identity(cls, n: int) -> SymMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], check=False)

    @classmethod
    def diagonal(cls, diag: Iterable[Scalar]) -> SymMatrix:
        d = [QS2.coerce(x) for x in diag]
        return cls([[d[i] if i == j else ZERO for j in range(len(d))] for i in range(len(d))], check=False)

    def __getitem__(self, ij: tuple[int, int]) -> QS2:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SymMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __repr__(self) -> str:
        return f"SymMatrix(dim={self.dim})"

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows])

    def to_json(self) -> list[list[dict[str, str]]]:
        return [[x.to_json() for x in r] for r in self.rows]

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def components(self) -> list[list[int]]:
        """Index sets of the connected components of the nonzero pattern.

        Permuting to these components block-diagonalises the matrix.
        """
        seen = [False] * self.dim
        comps = []
        for start in range(self.dim):
            if seen[start]:
                continue
            stack, comp = [start], []
            seen[start] = True
            while stack:
                i = stack.pop()
                comp.append(i)
                for j, x in enumerate(self.rows[i]):
                    if x and not seen[j]:
                        seen[j] = True
                        stack.append(j)
            comps.append(sorted(comp))
        return comps

    def submatrix(self, idx: Sequence[int]) -> SymMatrix:
        return SymMatrix([[self.rows[i][j] for j in idx] for i in idx], check=False)

    def char_poly(self) -> Poly:
        """Monic ``det(x I - M)``, computed blockwise by exact Hessenberg reduction."""
        p = Poly([1])
        for comp in self.components():
            p = p * _hessenberg_charpoly([list(r) for r in self.submatrix(comp).rows])
        return p

    def rank(self) -> int:
        return bareiss_rank([list(r) for r in self.rows])


def _hessenberg_charpoly(h: list[list[QS2]]) -> Poly:
    n = len(h)
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if h[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            h[piv], h[m] = h[m], h[piv]
            for row in h:
                row[piv], row[m] = row[m], row[piv]
        inv = h[m][m - 1].inverse()
        for i in range(m + 1, n):
            if not h[i][m - 1]:
                continue
            u = h[i][m - 1] * inv
            hm, hi = h[m], h[i]
            for j in range(m - 1, n):
                if hm[j]:
                    hi[j] = hi[j] - u * hm[j]
            for row in h:
                if row[i]:
                    row[m] = row[m] + u * row[i]
    x = Poly.x()
    polys = [Poly([1])]
    for k in range(n):
        pk = polys[k] * (x - Poly.const(h[k][k]))
        t = ONE
        for i in range(k - 1, -1, -1):
            t = t * h[i + 1][i]
            if not t:
                break
            if h[i][k]:
                pk = pk - polys[i] * (t * h[i][k])
        polys.append(pk)
    return polys[n]


def bareiss_rank(m: list[list[QS2]]) -> int:
    """Rank by fraction-free (Bareiss) elimination; ``m`` is modified in place."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    prev = ONE
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev
            m[i][c] = ZERO
        prev = m[r][c]
        r += 1
        if r == rows:
            break
    return r


def matmul(a: Sequence[Sequence[QS2]], b: Sequence[Sequence[QS2]]) -> list[list[QS2]]:
    n, k, m = len(a), len(b), len(b[0])
    out = [[ZERO] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            if not ai[t]:
                continue
            bt = b[t]
            for j in range(m):
                if bt[j]:
                    oi[j] = oi[j] + ai[t] * bt[j]
    return out


def poly_at_matrix(p: Poly, mat: SymMatrix) -> list[list[QS2]]:
    """Evaluate ``p(M)`` exactly by Horner's scheme."""
    n = mat.dim
    acc = [[ZERO] * n for _ in range(n)]
    for c in reversed(p.coeffs):
        acc = matmul(acc, mat.rows)
        for i in range(n):
            acc[i][i] = acc[i][i] + c
    return acc


def faddeev_leverrier(mat: SymMatrix) -> Poly:
    """Characteristic polynomial by the Faddeev-LeVerrier recursion.

    Independent of :meth:`SymMatrix.char_poly`; kept for cross-validation.
    """
    n = mat.dim
    a = mat.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = [[ZERO] * n for _ in range(n)]
    for k in range(1, n + 1):
        am = matmul(a, mk)
        for i in range(n):
            am[i][i] = am[i][i] + coeffs[n - k + 1]
        mk = am
        amk = matmul(a, mk)
        tr = ZERO
        for i in range(n):
            tr = tr + amk[i][i]
        coeffs[n - k] = -tr / k
    return Poly(coeffs)
