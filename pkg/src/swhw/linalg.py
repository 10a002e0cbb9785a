"""Exact linear algebra over Q with fractions.Fraction.

Mat is an immutable matrix that always knows its shape, so 0 x c and r x 0
matrices stay distinguishable (complex boundary degrees produce them all
the time).  Dimensions in this package stay tiny (Gram matrices up to ~25,
complexes of total dimension <= 12), so plain Gaussian elimination is the
right tool.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import Degenerate


@dataclass(frozen=True)
class Mat:
    r: int
    c: int
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.r or any(len(row) != self.c for row in self.rows):
            raise ValueError("matrix rows do not match the declared shape")

    def __getitem__(self, i: int) -> tuple[Fraction, ...]:
        return self.rows[i]

    def __len__(self) -> int:
        return self.r

    def __iter__(self):
        return iter(self.rows)


Matrix = Mat


def mat(rows, cols: int | None = None) -> Mat:
    rows = [tuple(Fraction(x) for x in row) for row in rows]
    if cols is None:
        cols = len(rows[0]) if rows else 0
    return Mat(len(rows), cols, tuple(rows))


def zeros(r: int, c: int) -> Mat:
    z = Fraction(0)
    return Mat(r, c, tuple((z,) * c for _ in range(r)))


def eye(n: int, scale=1) -> Mat:
    s = Fraction(scale)
    return Mat(
        n, n, tuple(tuple(s if i == j else Fraction(0) for j in range(n)) for i in range(n))
    )


def shape(m: Mat) -> tuple[int, int]:
    return (m.r, m.c)


def is_zero(m: Mat) -> bool:
    return all(x == 0 for row in m.rows for x in row)


def _same_shape(a: Mat, b: Mat):
    if (a.r, a.c) != (b.r, b.c):
        raise ValueError(f"shape mismatch: {(a.r, a.c)} vs {(b.r, b.c)}")


def add(a: Mat, b: Mat) -> Mat:
    _same_shape(a, b)
    return Mat(a.r, a.c, tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a.rows, b.rows)))


def sub(a: Mat, b: Mat) -> Mat:
    _same_shape(a, b)
    return Mat(a.r, a.c, tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a.rows, b.rows)))


def scale(c, a: Mat) -> Mat:
    c = Fraction(c)
    return Mat(a.r, a.c, tuple(tuple(c * x for x in row) for row in a.rows))


def mul(a: Mat, b: Mat) -> Mat:
    if a.c != b.r:
        raise ValueError(f"shape mismatch: {(a.r, a.c)} * {(b.r, b.c)}")
    bt = transpose(b)
    return Mat(
        a.r,
        b.c,
        tuple(
            tuple(sum(x * y for x, y in zip(row, col)) for col in bt.rows)
            for row in a.rows
        ),
    )


def mulv(a: Mat, v) -> tuple:
    if a.c != len(v):
        raise ValueError("vector length mismatch")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a.rows)


def transpose(a: Mat) -> Mat:
    return Mat(a.c, a.r, tuple(tuple(a.rows[i][j] for i in range(a.r)) for j in range(a.c)))


def block_diag(*bs: Mat) -> Mat:
    r = sum(b.r for b in bs)
    c = sum(b.c for b in bs)
    out = [[Fraction(0)] * c for _ in range(r)]
    i0 = j0 = 0
    for b in bs:
        for i in range(b.r):
            row = out[i0 + i]
            for j in range(b.c):
                row[j0 + j] = b.rows[i][j]
        i0 += b.r
        j0 += b.c
    return Mat(r, c, tuple(tuple(row) for row in out))


def blocks(grid) -> Mat:
    """Assemble a matrix from a 2D grid of blocks (rows of blocks)."""
    out_rows: list[tuple] = []
    width = None
    for brow in grid:
        h = brow[0].r
        w = sum(b.c for b in brow)
        if any(b.r != h for b in brow):
            raise ValueError("ragged block row")
        if width is None:
            width = w
        elif width != w:
            raise ValueError("block rows have different widths")
        for i in range(h):
            row: list[Fraction] = []
            for b in brow:
                row.extend(b.rows[i])
            out_rows.append(tuple(row))
    return Mat(len(out_rows), width or 0, tuple(out_rows))


def _echelon(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(a: Mat) -> int:
    if a.r == 0 or a.c == 0:
        return 0
    _, pivots = _echelon([list(row) for row in a.rows], a.c)
    return len(pivots)


def nullspace(a: Mat) -> list[tuple]:
    """Basis of the right kernel of a."""
    if a.c == 0:
        return []
    if a.r == 0:
        return [tuple(eye(a.c).rows[i]) for i in range(a.c)]
    m, pivots = _echelon([list(row) for row in a.rows], a.c)
    free = [j for j in range(a.c) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * a.c
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(tuple(v))
    return basis


def solve(a: Mat, b) -> tuple | None:
    """One solution of a x = b, or None if inconsistent."""
    if a.r != len(b):
        raise ValueError("right-hand side length mismatch")
    if a.c == 0:
        return () if all(x == 0 for x in b) else None
    aug = [list(row) + [Fraction(b[i])] for i, row in enumerate(a.rows)]
    m, pivots = _echelon(aug, a.c + 1)
    if a.c in pivots:
        return None
    x = [Fraction(0)] * a.c
    for i, pc in enumerate(pivots):
        x[pc] = m[i][a.c]
    return tuple(x)


def inverse(a: Mat) -> Mat:
    if a.r != a.c:
        raise ValueError("inverse of a non-square matrix")
    n = a.r
    if n == 0:
        return a
    aug = [list(row) + list(eye(n).rows[i]) for i, row in enumerate(a.rows)]
    m, pivots = _echelon(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise Degenerate("matrix is singular")
    return Mat(n, n, tuple(tuple(m[i][n:]) for i in range(n)))


def det(a: Mat) -> Fraction:
    if a.r != a.c:
        raise ValueError("determinant of a non-square matrix")
    n = a.r
    m = [list(row) for row in a.rows]
    out = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            out = -out
        out *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return out


def congruence_diagonalize(g: Mat, order: str = "first") -> tuple[list[Fraction], Mat]:
    """Diagonalize a symmetric matrix by congruence: returns (entries, P)
    with P^T g P diagonal.

    order picks the pivot strategy: "first" takes the first usable diagonal
    entry, "largest" the one of largest absolute value; both must yield the
    same Hasse-Witt data.
    """
    if g.r != g.c:
        raise ValueError("Gram matrix must be square")
    n = g.r
    m = [list(row) for row in g.rows]
    p = [list(row) for row in eye(n).rows]

    def add_col(dst, src, f):  # col_dst += f * col_src, same on rows of m
        for i in range(n):
            m[i][dst] += f * m[i][src]
        for i in range(n):
            m[dst][i] += f * m[src][i]
        for i in range(n):
            p[i][dst] += f * p[i][src]

    def swap_cols(i, j):
        for r_ in range(n):
            m[r_][i], m[r_][j] = m[r_][j], m[r_][i]
        for r_ in range(n):
            m[i][r_], m[j][r_] = m[j][r_], m[i][r_]
        for r_ in range(n):
            p[r_][i], p[r_][j] = p[r_][j], p[r_][i]

    entries: list[Fraction] = []
    for k in range(n):
        cand = [j for j in range(k, n) if m[j][j] != 0]
        if not cand:
            # symmetric, nonzero block, char != 2: create a diagonal entry
            pair = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if m[i][j] != 0),
                None,
            )
            if pair is None:
                raise Degenerate("Gram matrix is singular")
            i, j = pair
            add_col(i, j, Fraction(1))
            cand = [i]
        if order == "largest":
            piv = max(cand, key=lambda j: abs(m[j][j]))
        else:
            piv = cand[0]
        if piv != k:
            swap_cols(k, piv)
        d = m[k][k]
        for j in range(k + 1, n):
            if m[k][j] != 0:
                add_col(j, k, -m[k][j] / d)
        entries.append(d)
    return entries, mat([list(row) for row in p], n)
