"""Exact integer matrix algebra.

Matrices are plain lists of rows of Python ints, so entries never
overflow.  The main entry points are :func:`smith` (Smith normal form with
both transformation matrices), :func:`hermite`, :func:`kernel_basis`,
:func:`image_basis`, :func:`solve_in_lattice` and :func:`eigen_integer`.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Matrix = list  # list[list[int]]
Vector = list  # list[int]


# -- basic helpers ----------------------------------------------------------

def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape(A: Matrix, cols: Optional[int] = None) -> tuple[int, int]:
    m = len(A)
    if m == 0:
        return 0, (cols or 0)
    return m, len(A[0])


def copy(A: Matrix) -> Matrix:
    return [list(r) for r in A]


def transpose(A: Matrix, cols: Optional[int] = None) -> Matrix:
    m, n = shape(A, cols)
    return [[A[i][j] for i in range(m)] for j in range(n)]


def matmul(A: Matrix, B: Matrix, inner: Optional[int] = None, cols: Optional[int] = None) -> Matrix:
    """Product ``A @ B``.  ``inner``/``cols`` disambiguate empty shapes."""
    m = len(A)
    k = len(A[0]) if m else (inner if inner is not None else len(B))
    n = len(B[0]) if B else (cols or 0)
    if len(B) != k:
        raise ValueError(f"shape mismatch: {m}x{k} times {len(B)}x{n}")
    Bt = [[B[i][j] for i in range(k)] for j in range(n)]
    out = []
    for row in A:
        nz = [(i, a) for i, a in enumerate(row) if a]
        out.append([sum(a * col[i] for i, a in nz) for col in Bt])
    return out


def matvec(A: Matrix, x: Sequence[int]) -> Vector:
    return [sum(a * b for a, b in zip(row, x) if a) for row in A]


def column(A: Matrix, j: int) -> Vector:
    return [r[j] for r in A]


def columns(A: Matrix) -> list[Vector]:
    return [list(c) for c in zip(*A)] if A else []


def from_columns(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
    return [[c[i] for c in cols] for i in range(nrows)]


def is_zero(A: Matrix) -> bool:
    return all(x == 0 for r in A for x in r)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> Vector:
    """Divide by content and make the leading nonzero entry positive."""
    g = content(v)
    if g == 0:
        return list(v)
    w = [x // g for x in v]
    for x in w:
        if x:
            if x < 0:
                w = [-y for y in w]
            break
    return w


def det(A: Matrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = copy(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A: Matrix) -> int:
    """Rank over Q (fraction-free elimination)."""
    M = [list(r) for r in A if any(r)]
    if not M:
        return 0
    m, n = len(M), len(M[0])
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                M[i][j] = (M[i][j] * M[r][c] - M[i][c] * M[r][j]) // prev
            M[i][c] = 0
        prev = M[r][c]
        r += 1
        if r == m:
            break
    return r


# -- Smith normal form ------------------------------------------------------

@dataclass
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    U: Matrix
    D: Matrix
    V: Matrix
    rows: int
    cols: int

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(self.rows, self.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d]


def smith(A: Matrix, cols: Optional[int] = None) -> SmithDecomposition:
    """Smith normal form with transformation matrices.

    Pivots are chosen with minimal absolute value to keep intermediate
    entries small.  ``cols`` gives the column count when ``A`` has no rows.
    """
    m, n = shape(A, cols)
    D = copy(A)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for r in D:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row dst -= q * row src
        if q:
            rs, rd = D[src], D[dst]
            for j in range(n):
                if rs[j]:
                    rd[j] -= q * rs[j]
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] -= q * us[j]

    def add_col(dst, src, q):
        if q:
            for r in D:
                if r[src]:
                    r[dst] -= q * r[src]
            for r in V:
                if r[src]:
                    r[dst] -= q * r[src]

    for t in range(min(m, n)):
        # choose the smallest nonzero entry of the trailing block
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            done = True
            # clear column t
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, D[i][t] // D[t][t])
                    if D[i][t]:
                        done = False
            # clear row t
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, D[t][j] // D[t][t])
                    if D[t][j]:
                        done = False
            if not done:
                # move smallest remaining entry of row/column t into the pivot
                cand = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]]
                cand += [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # divisibility condition on the trailing block
            p = D[t][t]
            bad = None
            for i in range(t + 1, m):
                row = D[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(U, D, V, m, n)


# -- Hermite normal form ----------------------------------------------------

def determinant_divisors(A: Matrix, cols: Optional[int] = None) -> list[int]:
    """``d_k`` = gcd of all ``k x k`` minors, for ``k = 1 .. min(m, n)``.

    Brute force over all minors; meant as an independent check of
    :func:`smith` on small matrices.
    """
    m, n = shape(A, cols)
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                g = math.gcd(g, det([[A[i][j] for j in cs] for i in rows]))
                if g == 1:
                    break
            if g == 1:
                break
        out.append(g)
    return out


def invariant_factors_by_minors(A: Matrix, cols: Optional[int] = None) -> list[int]:
    """Nonzero invariant factors ``d_k / d_(k-1)`` from determinant divisors."""
    out = []
    prev = 1
    for d in determinant_divisors(A, cols):
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return out


def hermite(A: Matrix, cols: Optional[int] = None) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form: returns ``(H, U)`` with ``U @ A == H``.

    ``H`` is in row echelon form, pivots positive, entries above each pivot
    reduced into ``[0, pivot)``; zero rows sit at the bottom.
    """
    m, n = shape(A, cols)
    H = copy(A)
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[p] = H[p], H[r]
            U[r], U[p] = U[p], U[r]
            finished = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c]:
                        finished = False
            if finished:
                break
        if r < m and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
                U[r] = [-x for x in U[r]]
            p = H[r][c]
            for i in range(r):
                q = H[i][c] // p
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
            r += 1
    return H, U


def row_basis(vectors: Iterable[Sequence[int]], n: int) -> list[Vector]:
    """Hermite-reduced basis of the lattice spanned by ``vectors`` in Z^n."""
    rows = [list(v) for v in vectors]
    if not rows:
        return []
    H, _ = hermite(rows, n)
    return [r for r in H if any(r)]


# -- lattices ---------------------------------------------------------------

def kernel_basis(A: Matrix, cols: Optional[int] = None) -> Matrix:
    """Basis (as matrix columns) of the saturated lattice ``{x : A x = 0}``."""
    m, n = shape(A, cols)
    s = smith(A, n)
    r = s.rank
    vecs = [column(s.V, j) for j in range(r, n)]
    vecs = row_basis(vecs, n)
    return from_columns(vecs, n)


def image_basis(A: Matrix, cols: Optional[int] = None) -> Matrix:
    """Basis (as matrix columns) of the column lattice of ``A``."""
    m, n = shape(A, cols)
    vecs = row_basis(transpose(A, n), m)
    return from_columns(vecs, m)


def saturate(vectors: Sequence[Sequence[int]], n: int) -> list[Vector]:
    """Basis of ``(Q-span of vectors) ∩ Z^n``."""
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return []
    # the saturation is the kernel of a matrix whose kernel is the Q-span
    perp = kernel_basis(vecs, n)
    if not perp or not perp[0]:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    return columns(kernel_basis(transpose(perp), n)) if perp else []


def solve_in_lattice(A: Matrix, b: Sequence[int], cols: Optional[int] = None) -> Optional[Vector]:
    """Integer solution of ``A x = b`` or ``None`` when none exists."""
    m, n = shape(A, cols)
    if len(b) != m:
        raise ValueError("right-hand side has wrong length")
    s = smith(A, n)
    c = matvec(s.U, b)
    y = [0] * n
    for i in range(m):
        d = s.D[i][i] if i < n else 0
        if d == 0:
            if c[i]:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return matvec(s.V, y) if n else []


def solve_rational(A: Matrix, b: Sequence[int], cols: Optional[int] = None) -> Optional[list[Fraction]]:
    """Some rational solution of ``A x = b`` by Gaussian elimination, or ``None``."""
    m, n = shape(A, cols)
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(M[i][n] for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = M[i][n]
    return x


# -- characteristic polynomial and eigenvectors -----------------------------

def charpoly(A: Matrix) -> list[int]:
    """Coefficients ``[c_n, ..., c_0]`` of ``det(x I - A)`` (``c_n = 1``).

    Faddeev-LeVerrier recursion; every division is exact over Z.
    """
    n = len(A)
    coeffs = [1]
    Mk = zeros(n, n)
    c = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        AM = matmul(A, Mk) if k > 1 else zeros(n, n)
        for i in range(n):
            AM[i][i] += c
        Mk = AM
        AMk = matmul(A, Mk)
        tr = sum(AMk[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        c = -tr // k
        coeffs.append(c)
    return coeffs


def poly_eval(coeffs: Sequence[int], x: int) -> int:
    v = 0
    for c in coeffs:
        v = v * x + c
    return v


def _divide_root(coeffs: Sequence[int], r: int) -> list[int]:
    out = []
    acc = 0
    for c in coeffs[:-1]:
        acc = acc * r + c
        out.append(acc)
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def integer_roots(coeffs: Sequence[int]) -> list[tuple[int, int]]:
    """Integer roots of a monic integer polynomial with multiplicities."""
    coeffs = list(coeffs)
    roots = []
    zero_mult = 0
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
        zero_mult += 1
    if zero_mult:
        roots.append((0, zero_mult))
    if len(coeffs) > 1:
        for d in _divisors(coeffs[-1]):
            for r in (d, -d):
                mult = 0
                while len(coeffs) > 1 and poly_eval(coeffs, r) == 0:
                    coeffs = _divide_root(coeffs, r)
                    mult += 1
                if mult:
                    roots.append((r, mult))
    roots.sort(key=lambda t: (-abs(t[0]), -t[0]))
    return roots


def eigen_integer(A: Matrix) -> list[tuple[int, Vector]]:
    """Integer eigenvalues with primitive integer eigenvectors.

    Each eigenvalue is listed once per basis vector of its (saturated)
    eigenlattice, ordered by decreasing absolute value.
    """
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("eigen_integer needs a square matrix")
    out = []
    for lam, _ in integer_roots(charpoly(A)):
        shifted = [[A[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        K = kernel_basis(shifted, n)
        for v in columns(K):
            out.append((lam, primitive(v)))
    return out


# -- IO ---------------------------------------------------------------------

def to_csv(A: Matrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in A:
        w.writerow(row)
    return buf.getvalue()


def from_csv(text: str) -> Matrix:
    rows = [[int(x) for x in row] for row in csv.reader(io.StringIO(text)) if row]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged CSV matrix")
    return rows


def to_json(A: Matrix) -> str:
    return json.dumps(A)


def from_json(text: str) -> Matrix:
    data = json.loads(text)
    rows = [[int(x) for x in r] for r in data]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged JSON matrix")
    return rows


def inverse_unimodular(U: Matrix) -> Matrix:
    """Inverse of a unimodular matrix (its Hermite form is the identity)."""
    n = len(U)
    H, T = hermite(U, n)
    if H != identity(n):
        raise ValueError("matrix is not unimodular")
    return T


class LatticeSolver:
    """Repeated integer solves ``A x = b`` against one fixed matrix."""

    def __init__(self, A: Matrix, cols: Optional[int] = None):
        self.m, self.n = shape(A, cols)
        self.smith = smith(A, self.n)

    def solve(self, b: Sequence[int]) -> Optional[Vector]:
        s = self.smith
        if len(b) != self.m:
            raise ValueError("right-hand side has wrong length")
        c = matvec(s.U, b)
        y = [0] * self.n
        for i in range(self.m):
            d = s.D[i][i] if i < self.n else 0
            if d == 0:
                if c[i]:
                    return None
            else:
                if c[i] % d:
                    return None
                y[i] = c[i] // d
        return matvec(s.V, y) if self.n else []

    def contains(self, b: Sequence[int]) -> bool:
        return self.solve(b) is not None
