"""Exact matrices over rational functions.

Includes deterministic kernel bases (signed-minor convention), Faddeev's
characteristic polynomial, Gauss-Jordan inversion, and 2x2 eigenvalue
extraction via exact square roots.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Polynomial, REGISTRY
from .ratfunc import RationalFunction, rf_int, rf_sqrt, _coerce


class Matrix:
    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = [[_ensure_rf(x) for x in row] for row in rows]
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise ValueError("ragged matrix")

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def identity(n):
        return Matrix([[rf_int(1 if i == j else 0) for j in range(n)]
                       for i in range(n)])

    @staticmethod
    def zeros(n, m=None):
        m = n if m is None else m
        return Matrix([[rf_int(0)] * m for _ in range(n)])

    # -- basic structure ------------------------------------------------------

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, key):
        i, j = key
        return self.rows[i][j]

    def entries(self):
        for row in self.rows:
            yield from row

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.shape == other.shape and
                all(a == b for a, b in zip(self.entries(), other.entries())))

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    __hash__ = None

    def map(self, fn):
        return Matrix([[fn(x) for x in row] for row in self.rows])

    def __neg__(self):
        return self.map(lambda x: -x)

    def __add__(self, other):
        if not isinstance(other, Matrix) or self.shape != other.shape:
            return NotImplemented
        return Matrix([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, Matrix) or self.shape != other.shape:
            return NotImplemented
        return Matrix([[a - b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            n, k = self.shape
            k2, m = other.shape
            if k != k2:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.rows))
            return Matrix([[_dot(row, col) for col in cols]
                           for row in self.rows])
        scal = _coerce(other)
        if scal is None:
            return NotImplemented
        return self.map(lambda x: x * scal)

    def __rmul__(self, other):
        scal = _coerce(other)
        if scal is None:
            return NotImplemented
        return self.map(lambda x: scal * x)

    def scale(self, s):
        s = _ensure_rf(s)
        return self.map(lambda x: x * s)

    def trace(self):
        n, m = self.shape
        if n != m:
            raise ValueError("trace of non-square matrix")
        tot = rf_int(0)
        for i in range(n):
            tot = tot + self.rows[i][i]
        return tot

    def transpose(self):
        return Matrix([list(col) for col in zip(*self.rows)])

    def is_zero(self):
        return all(x.is_zero() for x in self.entries())

    def is_diagonal(self):
        n, m = self.shape
        return all(self.rows[i][j].is_zero()
                   for i in range(n) for j in range(m) if i != j)

    def __repr__(self):
        from .parse import to_string
        body = "; ".join(", ".join(to_string(x) for x in row)
                         for row in self.rows)
        return f"[{body}]"

    # -- solvers ---------------------------------------------------------------

    def det(self):
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of non-square matrix")
        if n == 0:
            return rf_int(1)
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            a, b = self.rows[0]
            c, d = self.rows[1]
            return a * d - b * c
        if n == 3:
            (a, b, c), (d, e, f), (g, h, i) = self.rows
            return (a * (e * i - f * h) - b * (d * i - f * g)
                    + c * (d * h - e * g))
        # Gauss with pivoting, exact
        rows = [list(r) for r in self.rows]
        det = rf_int(1)
        sign = 1
        for col in range(n):
            piv = next((r for r in range(col, n)
                        if not rows[r][col].is_zero()), None)
            if piv is None:
                return rf_int(0)
            if piv != col:
                rows[col], rows[piv] = rows[piv], rows[col]
                sign = -sign
            pv = rows[col][col]
            det = det * pv
            for r in range(col + 1, n):
                if not rows[r][col].is_zero():
                    f = rows[r][col] / pv
                    rows[r] = [rows[r][j] - f * rows[col][j] for j in range(n)]
        return det if sign == 1 else -det

    def inverse(self):
        n, m = self.shape
        if n != m:
            raise ValueError("inverse of non-square matrix")
        aug = [list(r) + [rf_int(1 if i == j else 0) for j in range(n)]
               for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n)
                        if not aug[r][col].is_zero()), None)
            if piv is None:
                raise ValueError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(n):
                if r != col and not aug[r][col].is_zero():
                    f = aug[r][col]
                    aug[r] = [aug[r][j] - f * aug[col][j] for j in range(2 * n)]
        return Matrix([row[n:] for row in aug])

    def rank(self):
        rows = [list(r) for r in self.rows]
        n, m = self.shape
        r = 0
        for col in range(m):
            piv = next((i for i in range(r, n)
                        if not rows[i][col].is_zero()), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            for i in range(n):
                if i != r and not rows[i][col].is_zero():
                    f = rows[i][col] / rows[r][col]
                    rows[i] = [rows[i][j] - f * rows[r][j] for j in range(m)]
            r += 1
        return r


def _dot(row, col):
    tot = rf_int(0)
    for a, b in zip(row, col):
        if not (a.is_zero() or b.is_zero()):
            tot = tot + a * b
    return tot


def _ensure_rf(x):
    v = _coerce(x)
    if v is None:
        raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")
    return v


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

def kernel_basis(M):
    """Deterministic kernel basis.

    Pivots are found by scanning columns left to right, taking the first
    usable row; for each free column the kernel vector is given by the
    alternating signed minors of the pivot rows over (pivot columns + the
    free column).  For a rank-one 2x2 matrix [[p, q], [r, s]] with p != 0
    this yields exactly (q, -p); for the zero matrix, the standard basis;
    for an invertible matrix, the empty list.
    """
    n, m = M.shape
    work = [list(r) for r in M.rows]
    pivot_rows = []
    pivot_cols = []
    used = [False] * n
    for col in range(m):
        piv = next((r for r in range(n)
                    if not used[r] and not work[r][col].is_zero()), None)
        if piv is None:
            continue
        used[piv] = True
        pivot_rows.append(piv)
        pivot_cols.append(col)
        for r in range(n):
            if r != piv and not work[r][col].is_zero():
                f = work[r][col] / work[piv][col]
                work[r] = [work[r][j] - f * work[piv][j] for j in range(m)]
    rows_sorted = sorted(pivot_rows)
    free_cols = [c for c in range(m) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        cols = sorted(pivot_cols + [f])
        vec = [rf_int(0)] * m
        for k, c in enumerate(cols):
            sub = Matrix([[M.rows[i][j] for j in cols if j != c]
                          for i in rows_sorted])
            minor = sub.det()
            vec[c] = minor if k % 2 == 0 else -minor
        # safety: the construction must really produce a kernel vector
        for i in range(n):
            s = _dot(M.rows[i], vec)
            if not s.is_zero():
                raise ArithmeticError("kernel vector verification failed")
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# characteristic polynomials / eigenvalues
# ---------------------------------------------------------------------------

def char_poly(M, name=None):
    """Characteristic polynomial det(w*I - M) as a RationalFunction in the
    symbol `name` (a fresh auxiliary symbol is registered if None).
    Uses the Faddeev-LeVerrier recursion (exact, division only by integers).
    """
    n, m = M.shape
    if n != m:
        raise ValueError("characteristic polynomial of non-square matrix")
    if name is None:
        name = REGISTRY.fresh("w")
    elif not REGISTRY.contains(name):
        REGISTRY.register(name)
    coeffs = [rf_int(1)]
    Mk = Matrix.zeros(n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        Mk = M * Mk + ident.scale(coeffs[-1])
        AM = M * Mk
        ck = -(AM.trace() / rf_int(k))
        coeffs.append(ck)
    w = RationalFunction(Polynomial.var(name))
    total = rf_int(0)
    for k, c in enumerate(coeffs):
        total = total + c * w ** (n - k)
    return total


def char_poly_coeffs(M):
    """[1, c1, ..., cn] with char(w) = w^n + c1 w^(n-1) + ... + cn."""
    n, m = M.shape
    if n != m:
        raise ValueError("characteristic polynomial of non-square matrix")
    coeffs = [rf_int(1)]
    Mk = Matrix.zeros(n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        Mk = M * Mk + ident.scale(coeffs[-1])
        AM = M * Mk
        coeffs.append(-(AM.trace() / rf_int(k)))
    return coeffs


def verify_eigenvalue(M, value):
    """True when det(M - value*I) == 0, exactly."""
    n, _ = M.shape
    value = _ensure_rf(value)
    return (M - Matrix.identity(n).scale(value)).det().is_zero()


def eigenvalues_2x2(M):
    """Both eigenvalues of a 2x2 matrix, via an exact square root of the
    discriminant.  Raises ValueError if the discriminant is not a perfect
    square in the rational-function field."""
    if M.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    tr = M.trace()
    dt = M.det()
    disc = tr * tr - rf_int(4) * dt
    s = rf_sqrt(disc)
    if s is None:
        raise ValueError("eigenvalues are not rational in the parameters")
    half = rf_frac_half()
    return ((tr - s) * half, (tr + s) * half)


def rf_frac_half():
    return RationalFunction(Polynomial.const(Fraction(1, 2)))


def spectrum_matches(M, values):
    """Exact check that the multiset of eigenvalues of M equals `values`,
    via comparison of characteristic polynomial coefficients with the
    elementary symmetric functions of the candidates."""
    n, m = M.shape
    if n != m or len(values) != n:
        return False
    values = [_ensure_rf(v) for v in values]
    coeffs = char_poly_coeffs(M)
    # elementary symmetric functions e_k of the candidate values
    es = [rf_int(1)]
    for v in values:
        new = [rf_int(1)]
        for k in range(1, len(es) + 1):
            prev = es[k] if k < len(es) else rf_int(0)
            new.append(prev + v * es[k - 1])
        es = new
    # char(w) = w^n - e1 w^(n-1) + e2 w^(n-2) - ...
    for k in range(1, n + 1):
        want = es[k] if k % 2 == 0 else -es[k]
        if coeffs[k] != want:
            return False
    return True
