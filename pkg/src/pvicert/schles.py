"""Rank-2 Fuchsian systems in residue form and their Painlevé-VI data.

A system D Y = A(z) Y with simple poles at three finite points and at
infinity is stored as the three residue matrices plus the pole locations.
This module converts matrix systems to and from that form, normalizes the
pole locations to (t, 0, 1) by rescaling z, diagonalizes the residue at
infinity, and translates between the residue picture and the coordinates
(lambda, mu) of the sixth Painlevé equation, in both directions.  The
translation layer also provides the coordinate swap (which exchanges the
roles of the two off-diagonal entries) and scalar twists by powers of
(z - p).
"""

from __future__ import annotations

from .linalg import Matrix, eigenvalues_2x2, kernel_basis
from .ratfunc import RationalFunction, partial_fractions, rf_int, rf_var
from .roots import zero_of_linear
from .scalar import mu_from_nu, nu_from_mu
from .systems import LinearSystem


class SchlesingerSystem:
    """Residues (Q1, Q2, Q3) at finite points (t1, 0, t3).

    The second singular point is always the origin.  `apparent` optionally
    records the zero of the combined (1,2) entry, carried along through
    transformations so the solution coordinate stays attached.
    """

    __slots__ = ("points", "residues", "apparent")

    def __init__(self, points, residues, apparent=None):
        if len(points) != 3 or len(residues) != 3:
            raise ValueError("expected three singular points with residues")
        self.points = tuple(points)
        if not self.points[1].is_zero():
            raise ValueError("second singular point must be the origin")
        shape = residues[0].shape
        if shape[0] != shape[1] or any(q.shape != shape for q in residues):
            raise ValueError("residues must be square and equally sized")
        self.residues = tuple(residues)
        self.apparent = apparent

    def size(self):
        return self.residues[0].shape[0]

    def theta(self):
        """Traces of the finite residues."""
        return tuple(q.trace() for q in self.residues)

    def infinity_residue(self):
        """-(Q1 + Q2 + Q3), the residue of A(z) dz at infinity."""
        total = self.residues[0] + self.residues[1] + self.residues[2]
        return -total

    def is_normalized(self):
        """Points are (t, 0, 1) and the residue at infinity is diagonal."""
        return ((self.points[2] - rf_int(1)).is_zero()
                and self.infinity_residue().is_diagonal())

    def combined(self, var="z"):
        """The coefficient matrix A(z) = sum Q_i/(z - t_i)."""
        zv = rf_var(var)
        n = self.size()
        total = Matrix.zeros(n)
        for q, p in zip(self.residues, self.points):
            total = total + q.scale(rf_int(1) / (zv - p))
        return total

    def to_linear_system(self, var="z"):
        return LinearSystem(self.combined(var), var, self.points)

    def __repr__(self):
        return f"SchlesingerSystem(size={self.size()})"


def to_schlesinger(system):
    """Read the residues of a matrix system off its partial fractions.

    The system must declare exactly three finite singular points; every
    entry must decompose into simple poles there with no polynomial part.
    """
    if system.points is None or len(system.points) != 3:
        raise ValueError("system must declare three finite singular points")
    pts = list(system.points)
    n = system.size()
    var = system.var
    rows = [[[rf_int(0)] * n for _ in range(n)] for _ in range(3)]
    for i in range(n):
        for j in range(n):
            quot, parts = partial_fractions(system.matrix[i, j], var, pts)
            if quot:
                raise ValueError(
                    "matrix entry has a nonzero polynomial part")
            for k, coeffs in enumerate(parts):
                if len(coeffs) > 1:
                    raise ValueError(
                        "pole of order above one at a declared point")
                if coeffs:
                    rows[k][i][j] = coeffs[0]
    residues = tuple(Matrix(r) for r in rows)
    return SchlesingerSystem(system.points, residues)


def normalize_moebius(s):
    """Rescale z so the singular points become (t1/t3, 0, 1).

    Rescaling fixes the residues and divides the apparent-singularity
    record by t3.
    """
    t1, _, t3 = s.points
    if t3.is_zero():
        raise ValueError("third singular point is identically zero")
    t = t1 / t3
    if (t - rf_int(1)).is_zero():
        raise ValueError("degenerate normalization: singular points collide")
    apparent = None if s.apparent is None else s.apparent / t3
    return SchlesingerSystem((t, rf_int(0), rf_int(1)), s.residues, apparent)


def _unit_leading(vec):
    """Scale a vector so its first nonzero entry is 1."""
    lead = next((x for x in vec if not x.is_zero()), None)
    if lead is None:
        raise ValueError("zero vector has no leading entry")
    return [x / lead for x in vec]


def diagonalize_infinity(s, alpha=None):
    """Conjugate so the residue at infinity becomes diag(e1, e2).

    With `alpha` given, the eigenvalue equal to it is placed first (the
    remaining one is then alpha + theta4 - 1); otherwise the order follows
    the square-root branch convention of the eigenvalue solver.  Equal
    eigenvalues (theta4 identically 1) are rejected.
    """
    if s.size() != 2:
        raise ValueError("infinity diagonalization expects a 2x2 system")
    m_inf = s.infinity_residue()
    e1, e2 = eigenvalues_2x2(m_inf)
    if (e1 - e2).is_zero():
        raise ValueError("residue at infinity has a double eigenvalue")
    if alpha is not None:
        if (e2 - alpha).is_zero():
            e1, e2 = e2, e1
        elif not (e1 - alpha).is_zero():
            raise ValueError("requested leading eigenvalue not in spectrum")
    ident = Matrix.identity(2)
    cols = []
    for e in (e1, e2):
        basis = kernel_basis(m_inf - ident.scale(e))
        cols.append(_unit_leading(basis[0]))
    gauge = Matrix([[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]])
    inv = gauge.inverse()
    residues = tuple(inv * q * gauge for q in s.residues)
    return SchlesingerSystem(s.points, residues, s.apparent)


class PVIData:
    """Painlevé-VI data: angles theta1..theta4, coordinates (lambda, mu),
    the singular location t, and the derived accessory value nu.

    alpha is pinned by 2*alpha + sum(theta) = 1; lam_swap records the
    apparent singularity of the opposite coordinate when known.
    """

    __slots__ = ("theta", "lam", "mu", "t", "nu", "alpha", "lam_swap")

    def __init__(self, theta, lam, mu, t, nu=None, lam_swap=None):
        if len(theta) != 4:
            raise ValueError("expected four angle parameters")
        self.theta = tuple(theta)
        self.lam = lam
        self.mu = mu
        self.t = t
        total = self.theta[0] + self.theta[1] + self.theta[2] + self.theta[3]
        self.alpha = -(total - 1) / rf_int(2)
        if nu is None:
            nu = nu_from_mu(mu, self.theta, lam,
                            (t, rf_int(0), rf_int(1)))
        self.nu = nu
        self.lam_swap = lam_swap

    def kappa(self):
        s = self.theta[0] + self.theta[1] + self.theta[2] - 1
        return (s * s - self.theta[3] * self.theta[3]) / rf_int(4)

    def __repr__(self):
        from .parse import to_string
        return (f"PVIData(lam={to_string(self.lam)}, "
                f"mu={to_string(self.mu)}, t={to_string(self.t)})")


def _offdiag_zero(s, row, col, var="z"):
    """Zero of the combined (row, col) entry; None when the entry vanishes
    identically or its zero is not unique."""
    zv = rf_var(var)
    total = rf_int(0)
    for q, p in zip(s.residues, s.points):
        total = total + q[row, col] / (zv - p)
    if total.is_zero():
        return None
    try:
        return zero_of_linear(total, var)
    except ValueError:
        return None


def extract_pvi(s):
    """Read (theta, lambda, mu, t) off a normalized system.

    lambda is the zero of the combined (1,2) entry; mu comes from comparing
    the diagonal residue entries against the parametrized form, which is
    invariant under the remaining diagonal gauge freedom.
    """
    if s.size() != 2:
        raise ValueError("expected a 2x2 system")
    if not s.is_normalized():
        raise ValueError("system must be normalized to points (t, 0, 1) "
                         "with a diagonal residue at infinity")
    m_inf = s.infinity_residue()
    alpha = m_inf[0, 0]
    theta4 = m_inf[1, 1] - alpha + rf_int(1)
    if (theta4 - rf_int(1)).is_zero():
        raise ValueError("theta4 is identically 1")
    th = s.theta()
    t = s.points[0]
    lam = _offdiag_zero(s, 0, 1)
    if lam is None:
        raise ValueError("combined (1,2) entry has no usable zero")
    for bad in (lam, lam - rf_int(1), lam - t):
        if bad.is_zero():
            raise ValueError("apparent singularity sits on a singular point")
    m1 = (lam - t) / (t * (t - rf_int(1)))
    m2 = lam / t
    u1 = s.residues[0][0, 0] / m1
    u2 = s.residues[1][0, 0] / m2
    x = ((u1 - u2) - t * alpha / lam) / (t * (lam - rf_int(1)))
    mu = x - alpha / lam
    data = PVIData((th[0], th[1], th[2], theta4), lam, mu, t,
                   lam_swap=_offdiag_zero(s, 1, 0))
    return data


def build_from_pvi(d):
    """The residue parametrization of a normalized system from its
    Painlevé-VI data; the residue at infinity comes out diagonal with
    entries (alpha, alpha + theta4 - 1)."""
    th1, th2, th3, th4 = d.theta
    if (th4 - rf_int(1)).is_zero():
        raise ValueError("theta4 is identically 1")
    lam, mu, t = d.lam, d.mu, d.t
    for bad in (lam, lam - rf_int(1), lam - t):
        if bad.is_zero():
            raise ValueError("lambda sits on a singular point")
    alpha = d.alpha
    m = (
        (lam - t) / (t * (t - rf_int(1))),
        lam / t,
        (lam - rf_int(1)) / (rf_int(1) - t),
    )
    x = mu + alpha / lam
    w = (
        lam * (lam - rf_int(1)) * x,
        (lam - t) * (lam - rf_int(1)) * x - t * alpha / lam,
        lam * (lam - t) * x,
    )
    th = (th1, th2, th3)
    wbar = rf_int(0)
    for k in range(3):
        wbar = wbar + w[k] * (m[k] * w[k] - th[k])
    wbar = wbar / (th4 - rf_int(1))
    residues = []
    for k in range(3):
        u = w[k] - wbar
        top = m[k] * u
        residues.append(Matrix([
            [top, -m[k]],
            [-u * (m[k] * (wbar - w[k]) + th[k]), th[k] - top],
        ]))
    system = SchlesingerSystem((t, rf_int(0), rf_int(1)), tuple(residues),
                               apparent=lam)
    m_inf = system.infinity_residue()
    if not m_inf.is_diagonal():
        raise ArithmeticError("residue at infinity failed to diagonalize")
    if not (m_inf[0, 0] - alpha).is_zero():
        raise ArithmeticError("residue at infinity has unexpected entries")
    return system


def swap_coordinates(s):
    """Conjugate by the permutation [[0,1],[1,0]]; the roles of the two
    off-diagonal entries (and their zeros) exchange, and the data read off
    the swapped system carries theta4 -> 2 - theta4."""
    swapped = []
    for q in s.residues:
        swapped.append(Matrix([[q[1, 1], q[1, 0]], [q[0, 1], q[0, 0]]]))
    out = SchlesingerSystem(s.points, tuple(swapped))
    out.apparent = _offdiag_zero(out, 0, 1)
    return out


def scalar_twist(s, shifts):
    """Add (sum_k e_k/(z - p_k)) * Identity to the system.

    Each shift is a (point, exponent) pair; points must match declared
    singular locations exactly.  Local angle parameters move by twice the
    exponent; apparent singularities do not move.  Twists at infinity are
    not representable here - spread them over the finite points instead.
    """
    ident = Matrix.identity(s.size())
    residues = list(s.residues)
    for point, e in shifts:
        if point is None or isinstance(point, str):
            raise ValueError("twists at infinity are not supported; "
                             "express them via the finite points")
        which = None
        for k, p in enumerate(s.points):
            if (point - p).is_zero():
                which = k
                break
        if which is None:
            raise ValueError("twist point is not a declared singular point")
        residues[which] = residues[which] + ident.scale(e)
    return SchlesingerSystem(s.points, tuple(residues), s.apparent)


def twist_pvi_data(d, shifts):
    """The Painlevé-VI data of a scalar-twisted normalized system.

    The self-adjoint potential is blind to scalar twists, so nu is carried
    over unchanged while the angles shift and mu is re-derived through the
    nu bridge.  Shifts are (index, exponent) pairs with index in {0, 1, 2}
    naming the points (t, 0, 1).
    """
    th = list(d.theta)
    for idx, e in shifts:
        if idx not in (0, 1, 2):
            raise ValueError("shift index must name one of the three "
                             "finite points")
        th[idx] = th[idx] + 2 * e
    points = (d.t, rf_int(0), rf_int(1))
    mu = mu_from_nu(d.nu, tuple(th), d.lam, points)
    return PVIData(tuple(th), d.lam, mu, d.t, nu=d.nu, lam_swap=d.lam_swap)


def moebius_invert(s):
    """Apply z -> 1/z at the residue level.

    The finite points (t1, 0, t3) become (1/t1, 0, 1/t3); the residue that
    lived at the origin moves to infinity and the old infinity residue
    -(Q1+Q2+Q3) takes its place at the origin.
    """
    t1, _, t3 = s.points
    if t1.is_zero() or t3.is_zero():
        raise ValueError("outer singular points must be nonzero to invert")
    points = (rf_int(1) / t1, rf_int(0), rf_int(1) / t3)
    residues = (s.residues[0], s.infinity_residue(), s.residues[2])
    apparent = None
    if s.apparent is not None and not s.apparent.is_zero():
        apparent = rf_int(1) / s.apparent
    return SchlesingerSystem(points, residues, apparent)
