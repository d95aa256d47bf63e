"""Exact integer and rational linear algebra.

Matrices are plain lists of rows holding Python ints (arbitrary precision).
Every function copies its input; nothing is mutated in place.
"""

from fractions import Fraction
from math import gcd

Matrix = list[list[int]]


class LinalgError(ValueError):
    pass


def as_matrix(A) -> Matrix:
    rows = [[int(x) for x in row] for row in A]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise LinalgError("ragged matrix")
    return rows


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A) -> Matrix:
    return [list(col) for col in zip(*A)]


def matmul(A, B) -> list:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, x) -> list:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def bilinear(G, x, y):
    """x^T G y."""
    return dot(x, matvec(G, y))


def block_diag(*blocks) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = int(x)
        k += len(b)
    return out


def is_symmetric(G) -> bool:
    n = len(G)
    return all(len(row) == n for row in G) and all(
        G[i][j] == G[j][i] for i in range(n) for j in range(i)
    )


def vector_gcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive(v) -> tuple:
    g = vector_gcd(v)
    if g == 0:
        raise LinalgError("zero vector has no primitive form")
    return tuple(int(x) // g for x in v)


def _row_swap(M, i, j):
    M[i], M[j] = M[j], M[i]


def _row_addmul(M, dst, src, q):
    # row[dst] -= q * row[src]
    if q:
        rs = M[src]
        M[dst] = [a - q * b for a, b in zip(M[dst], rs)]


def _col_swap(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _col_addmul(M, dst, src, q):
    # col[dst] -= q * col[src]
    if q:
        for row in M:
            row[dst] -= q * row[src]


def hnf(A):
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U A = H``. Pivots are
    positive and entries above each pivot lie in ``[0, pivot)``.
    """
    H = as_matrix(A)
    if not H or not H[0]:
        raise LinalgError("hnf of an empty matrix")
    m, n = len(H), len(H[0])
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(H[i][c]), i))
            if p != r:
                _row_swap(H, p, r)
                _row_swap(U, p, r)
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    _row_addmul(H, i, r, q)
                    _row_addmul(U, i, r, q)
                    if H[i][c]:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            _row_addmul(H, i, r, q)
            _row_addmul(U, i, r, q)
        r += 1
    return H, U


def rank(A) -> int:
    if not A or not A[0]:
        return 0
    H, _ = hnf(A)
    return sum(1 for row in H if any(row))


def pivot_columns(A) -> list[int]:
    """Column indices of the HNF pivots."""
    H, _ = hnf(A)
    cols = []
    for row in H:
        for j, x in enumerate(row):
            if x:
                cols.append(j)
                break
    return cols


def _smallest_entry(D, t):
    best = None
    for i in range(t, len(D)):
        for j in range(t, len(D[0])):
            x = D[i][j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
    return best


def snf(A):
    """Smith normal form ``(D, U, V)`` with ``U A V = D``.

    Pivot rule: smallest nonzero absolute value in the active block,
    ties broken by (row, col). Diagonal entries are nonnegative and each
    divides the next.
    """
    D = as_matrix(A)
    if not D or not D[0]:
        raise LinalgError("snf of an empty matrix")
    m, n = len(D), len(D[0])
    U = identity(m)
    V = identity(n)
    for t in range(min(m, n)):
        best = _smallest_entry(D, t)
        if best is None:
            break
        while True:
            _, i, j = best
            if i != t:
                _row_swap(D, i, t)
                _row_swap(U, i, t)
            if j != t:
                _col_swap(D, j, t)
                _col_swap(V, j, t)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // p
                    _row_addmul(D, i, t, q)
                    _row_addmul(U, i, t, q)
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // p
                    _col_addmul(D, j, t, q)
                    _col_addmul(V, j, t, q)
                    clean = clean and D[t][j] == 0
            if not clean:
                best = min(
                    [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
                    + [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
                )
                continue
            bad = next(
                (
                    i
                    for i in range(t + 1, m)
                    for j in range(t + 1, n)
                    if D[i][j] % p
                ),
                None,
            )
            if bad is None:
                break
            # pull a non-divisible row into the pivot row and repeat
            _row_addmul(D, t, bad, -1)
            _row_addmul(U, t, bad, -1)
            best = (abs(p), t, t)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return D, U, V


def invariant_factors(A) -> list[int]:
    """Nonzero diagonal of the Smith form."""
    D, _, _ = snf(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]))) if D[i][i]]


def integer_kernel(A) -> list[list[int]]:
    """Saturated Z-basis of {x : A x = 0}."""
    A = as_matrix(A)
    if not A:
        return []
    n = len(A[0])
    H, U = hnf(transpose(A))
    return [U[i] for i in range(n) if not any(H[i])]


def is_saturated(vectors) -> bool:
    """True when the span of ``vectors`` is primitive in Z^n."""
    if not vectors:
        return True
    fac = invariant_factors(vectors)
    return len(fac) == len(vectors) and all(d == 1 for d in fac)


def det_exact(A) -> int:
    """Bareiss fraction-free determinant."""
    M = as_matrix(A)
    n = len(M)
    if any(len(row) != n for row in M):
        raise LinalgError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def signature(G) -> tuple[int, int]:
    """(t_plus, t_minus) by rational congruence diagonalization."""
    n = len(G)
    if not is_symmetric(G):
        raise LinalgError("signature needs a symmetric matrix")
    A = [[Fraction(x) for x in row] for row in G]
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if A[i][i] != 0), None)
        if piv is None:
            pair = next(
                ((i, j) for i in active for j in active if i < j and A[i][j] != 0),
                None,
            )
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j makes A[i][i] = 2 A[i][j] != 0
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            piv = i
        p = A[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = A[i][piv] / p
            if f:
                for k in active:
                    A[i][k] -= f * A[piv][k]
                A[i][piv] = Fraction(0)
        for k in active:
            A[piv][k] = Fraction(0)
    if pos + neg != n:
        raise LinalgError("signature of a degenerate form")
    return pos, neg


def rational_inverse(A) -> list[list[Fraction]]:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            raise LinalgError("singular matrix")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return [row[n:] for row in M]


def solve_rational(A, b) -> list[Fraction]:
    """Solve the square system A x = b over Q."""
    inv = rational_inverse(A)
    return [sum(Fraction(a) * y for a, y in zip(row, b)) for row in inv]
