"""Exact linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction`.  Sizes in this
package stay below a few hundred unknowns, so plain Gaussian elimination is
fast enough and keeps every wall and midpoint decision exact.
"""

from fractions import Fraction


def _as_fraction_rows(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows, ncols=None):
    """Return ``(R, pivots)``, the reduced row echelon form and pivot columns."""
    m = _as_fraction_rows(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row_r = m[r]
                m[i] = [a - f * b for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols=None):
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis of the kernel of the matrix, one vector per free column."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows, rhs, ncols):
    """One solution of ``rows * x = rhs`` or ``None`` if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[ncols]
    return x


def det2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def smith_diagonal(rows):
    """Diagonal of the Smith normal form of an integer matrix.

    Straightforward elimination with gcd steps; meant for tiny matrices.
    """
    m = [list(map(int, r)) for r in rows]
    diag = []
    while m and m[0]:
        nz = [(abs(m[i][j]), i, j) for i in range(len(m)) for j in range(len(m[0])) if m[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        m[0], m[i0] = m[i0], m[0]
        for row in m:
            row[0], row[j0] = row[j0], row[0]
        done = False
        while not done:
            done = True
            p = m[0][0]
            for i in range(1, len(m)):
                q = m[i][0] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[0])]
                if m[i][0]:
                    done = False
            for j in range(1, len(m[0])):
                q = m[0][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[0]
                if m[0][j]:
                    done = False
            if not done:
                nz = [(abs(m[i][0]), i, 0) for i in range(len(m)) if m[i][0]]
                nz += [(abs(m[0][j]), 0, j) for j in range(len(m[0])) if m[0][j]]
                _, i0, j0 = min(nz)
                m[0], m[i0] = m[i0], m[0]
                for row in m:
                    row[0], row[j0] = row[j0], row[0]
                continue
            # divisibility of the remaining block
            p = m[0][0]
            for i in range(1, len(m)):
                for j in range(1, len(m[0])):
                    if m[i][j] % p:
                        m[0] = [a + b for a, b in zip(m[0], m[i])]
                        done = False
                        break
                if not done:
                    break
        diag.append(abs(m[0][0]))
        m = [row[1:] for row in m[1:]]
    return diag
