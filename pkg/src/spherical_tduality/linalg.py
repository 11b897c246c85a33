"""Exact linear algebra over the rationals.

Matrices are lists of rows, entries are ``fractions.Fraction``.  A matrix
with zero rows is ``[]``; a matrix with zero columns is a list of empty
rows.  Model sizes stay well below a few hundred, so plain Gaussian
elimination is all we ever need.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def zeros(rows, cols):
    return [[ZERO] * cols for _ in range(rows)]


def identity(n):
    M = zeros(n, n)
    for i in range(n):
        M[i][i] = ONE
    return M


def copy_matrix(A):
    return [row[:] for row in A]


def shape(A):
    if not A:
        return 0, 0
    return len(A), len(A[0])


def mat_eq(A, B):
    return shape(A) == shape(B) and all(ra == rb for ra, rb in zip(A, B))


def is_zero_matrix(A):
    return all(all(x == 0 for x in row) for row in A)


def mat_mul(A, B, cols=None):
    """Matrix product A @ B.

    ``cols`` is only needed when B has zero rows, in which case the column
    count of the (zero) result cannot be inferred.
    """
    m = len(A)
    if m == 0:
        return []
    n = len(A[0])
    if len(B) != n:
        raise ValueError(f"shape mismatch: {shape(A)} @ {shape(B)}")
    if n == 0:
        if cols is None:
            raise ValueError("mat_mul needs explicit cols for an empty middle dimension")
        return zeros(m, cols)
    p = len(B[0])
    C = zeros(m, p)
    for i in range(m):
        Ai = A[i]
        Ci = C[i]
        for k in range(n):
            a = Ai[k]
            if a == 0:
                continue
            Bk = B[k]
            for j in range(p):
                b = Bk[j]
                if b != 0:
                    Ci[j] += a * b
    return C


def mat_vec(A, v):
    out = [ZERO] * len(A)
    for i, row in enumerate(A):
        s = ZERO
        for a, x in zip(row, v):
            if a != 0 and x != 0:
                s += a * x
        out[i] = s
    return out


def rref(A):
    """Reduced row echelon form.

    Returns:
        (R, pivots) where R is the echelon matrix and pivots the list of
        pivot column indices, one per nonzero row.
    """
    R = copy_matrix(A)
    if not R:
        return R, []
    rows, cols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if R[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = ONE / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                Ri, Rr = R[i], R[r]
                R[i] = [x - f * y for x, y in zip(Ri, Rr)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(A):
    return len(rref(A)[1])


def nullspace(A, ncols):
    """Basis of the right kernel of A, as a list of length-``ncols`` vectors."""
    if ncols == 0:
        return []
    if not A:
        return [ [ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols) ]
    R, pivots = rref(A)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def solve(A, b, ncols):
    """One exact solution x of A x = b, or None if the system is inconsistent."""
    if ncols == 0:
        return [] if all(x == 0 for x in b) else None
    aug = [row[:] + [bv] for row, bv in zip(A, b)]
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for i, p in enumerate(pivots):
        x[p] = R[i][ncols]
    return x


def columns(A, ncols):
    """The columns of A as vectors."""
    return [[row[c] for row in A] for c in range(ncols)]


def from_columns(cols, nrows):
    """Assemble a matrix from a list of column vectors."""
    return [[col[i] for col in cols] for i in range(nrows)]


class Echelon:
    """Incremental row-echelon accumulator for picking independent vectors."""

    def __init__(self):
        self.rows = []  # (pivot_index, vector) with vector[pivot] == 1

    def reduce(self, v):
        v = v[:]
        for piv, row in self.rows:
            c = v[piv]
            if c != 0:
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def insert(self, v):
        """Reduce v against the accumulated rows; insert and return True if
        independent, return False if v lies in the current span."""
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x != 0), None)
        if piv is None:
            return False
        inv = ONE / v[piv]
        v = [x * inv for x in v]
        self.rows.append((piv, v))
        return True

    def contains(self, v):
        return all(x == 0 for x in self.reduce(v))
