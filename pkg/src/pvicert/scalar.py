"""Second-order scalar Fuchsian machinery.

A rank-2 first-order system turns into one scalar equation
w'' + p1 w' + p2 w = 0 per coordinate; the reduction introduces an apparent
singular point at each zero of the off-diagonal entry that gets divided by.
This module performs that reduction, the gauge to the self-adjoint form
y'' = p y, local-exponent bookkeeping (Riemann schemes and the Fuchs
relation), and recovery of the accessory parameters from the
four-singular-points-plus-one-apparent-point template.
"""

from __future__ import annotations

from .poly import REGISTRY
from .ratfunc import (RationalFunction, partial_fractions, rf_frac, rf_int,
                      rf_poly, rf_sqrt, rf_var)
from .roots import linear_split, zero_of_linear


class ScalarODE:
    """w'' + p1 w' + p2 w = 0 with rational coefficients in one variable.

    `singular_points` lists the declared finite singular locations (free of
    the equation variable); `apparent_points` optionally lists (location,
    order) pairs for apparent singularities known at construction time;
    `offdiag` carries the off-diagonal system entry whose zeros are the
    apparent points, when the equation came out of a matrix reduction.
    """

    __slots__ = ("p1", "p2", "var", "singular_points", "apparent_points",
                 "offdiag")

    def __init__(self, p1, p2, var="z", singular_points=(),
                 apparent_points=(), offdiag=None):
        self.p1 = p1
        self.p2 = p2
        self.var = var
        self.singular_points = tuple(singular_points)
        self.apparent_points = tuple(apparent_points)
        self.offdiag = offdiag

    def with_points(self, singular_points, apparent_points=()):
        """Copy with the singular/apparent point lists replaced."""
        return ScalarODE(self.p1, self.p2, self.var, singular_points,
                         apparent_points, self.offdiag)

    def __repr__(self):
        return (f"ScalarODE(var={self.var!r}, "
                f"{len(self.singular_points)} singular points)")


def system_to_scalar(system, coordinate=1):
    """Reduce a 2x2 system DY = A(z)Y to the scalar equation satisfied by
    one coordinate of Y.  Coordinate 1 divides by the (1,2) entry of A,
    coordinate 2 by the (2,1) entry."""
    if system.size() != 2:
        raise ValueError("scalar reduction needs a 2x2 system")
    q11, q12 = system.matrix[0, 0], system.matrix[0, 1]
    q21, q22 = system.matrix[1, 0], system.matrix[1, 1]
    if coordinate == 1:
        off, diag = q12, q11
    elif coordinate == 2:
        off, diag = q21, q22
    else:
        raise ValueError("coordinate must be 1 or 2")
    if off.is_zero():
        raise ValueError("off-diagonal entry is identically zero")
    var = system.var
    dlog = off.derivative(var) / off
    p1 = -dlog - (q11 + q22)
    p2 = q11 * q22 - q12 * q21 - diag.derivative(var) + diag * dlog
    points = system.points if system.points is not None else ()
    return ScalarODE(p1, p2, var, points, offdiag=off)


def _offdiag_zeros(off, var):
    """Zeros (with orders) of the tracked off-diagonal entry.

    Degree-one numerators are solved directly; anything of higher degree is
    split over the rationals in the deformation parameter b, which covers
    every reduction this package produces.
    """
    num = off.num
    deg = num.degree_in(var)
    if deg == 0:
        return []
    if deg == 1:
        return [(zero_of_linear(RationalFunction(num), var), 1)]
    names = [REGISTRY.names()[i] for i in num.variables()]
    if any(n not in (var, "b") for n in names):
        raise ValueError(
            "cannot locate apparent points: off-diagonal zeros involve "
            "parameters beyond the deformation parameter")
    found, leftover = linear_split(rf_poly(num), var, "b")
    if leftover.degree_in(var) > 0:
        raise ValueError("cannot locate all apparent points rationally")
    return found


def apparent_singularities(ode, true_points=None):
    """Locate the apparent singular points of a reduced scalar equation.

    Returns a list of (location, order) pairs; a zero of order r carries the
    exponents (0, r+1).  A zero landing identically on a true singular point
    is an error, never silently merged.
    """
    if ode.offdiag is None:
        raise ValueError("equation does not track an off-diagonal entry")
    if true_points is None:
        true_points = ode.singular_points
    zeros = _offdiag_zeros(ode.offdiag, ode.var)
    for loc, order in zeros:
        for t in true_points:
            if (loc - t).is_zero():
                raise ValueError(
                    "apparent point collides with a singular point")
    return zeros


class RiemannScheme:
    """Finite singular locations with exponent pairs, plus the pair at
    infinity.  The Fuchs relation fixes the sum of all exponents."""

    __slots__ = ("points", "pairs", "infinity_pair")

    def __init__(self, points, pairs, infinity_pair):
        self.points = tuple(points)
        self.pairs = tuple(pairs)
        self.infinity_pair = infinity_pair

    def exponent_sum(self):
        total = rf_int(0)
        for s1, s2 in self.pairs:
            total = total + s1 + s2
        return total + self.infinity_pair[0] + self.infinity_pair[1]

    def fuchs_residual(self):
        """exponent sum minus (number of finite points - 1); zero when the
        Fuchs relation holds."""
        return self.exponent_sum() - rf_int(len(self.points) - 1)


def _split_quadratic(lin, const):
    """Roots of s^2 + lin*s + const over the rational-function field,
    ordered (minus branch, plus branch)."""
    disc = lin * lin - 4 * const
    root = rf_sqrt(disc)
    if root is None:
        raise ValueError("exponent quadratic does not split rationally")
    half = rf_frac(1, 2)
    return (half * (-lin - root), half * (-lin + root))


def riemann_scheme(ode):
    """Local exponents of a Fuchsian scalar equation at its declared finite
    points, its apparent points, and infinity."""
    locs = list(ode.singular_points)
    if ode.apparent_points:
        locs.extend(loc for loc, _ in ode.apparent_points)
    elif ode.offdiag is not None:
        locs.extend(loc for loc, _ in apparent_singularities(ode))
    var = ode.var
    quot1, parts1 = partial_fractions(ode.p1, var, locs)
    quot2, parts2 = partial_fractions(ode.p2, var, locs)
    if quot1 or quot2:
        raise ValueError("coefficients do not vanish at infinity")
    pairs = []
    res1_sum = rf_int(0)
    res2_sum = rf_int(0)
    inf_const = rf_int(0)
    for loc, c1, c2 in zip(locs, parts1, parts2):
        if len(c1) > 1:
            raise ValueError("first-order coefficient has a multiple pole")
        if len(c2) > 2:
            raise ValueError("second-order coefficient pole order exceeds 2")
        a = c1[0] if c1 else rf_int(0)
        bb = c2[1] if len(c2) > 1 else rf_int(0)
        cc = c2[0] if c2 else rf_int(0)
        res1_sum = res1_sum + a
        res2_sum = res2_sum + cc
        inf_const = inf_const + bb + cc * loc
        pairs.append(_split_quadratic(a - 1, bb))
    if not res2_sum.is_zero():
        raise ValueError("infinity is not a regular singular point")
    inf_pair = _split_quadratic(1 - res1_sum, inf_const)
    return RiemannScheme(locs, pairs, inf_pair)


class SLForm:
    """The self-adjoint gauge y'' = p(z) y of a scalar equation."""

    __slots__ = ("p", "var", "accessory")

    def __init__(self, p, var="z", accessory=None):
        self.p = p
        self.var = var
        self.accessory = accessory

    def __repr__(self):
        return f"SLForm(var={self.var!r})"


def sl_form(ode):
    """Gauge away the first-derivative term: p = -p2 + p1^2/4 + p1'/2."""
    p = -ode.p2 + ode.p1 * ode.p1 / 4 + ode.p1.derivative(ode.var) / 2
    return SLForm(p, ode.var)


def _canonical_sign(f):
    """f or -f, whichever has a positive leading numerator coefficient."""
    if f.is_zero():
        return f
    return -f if f.num.lex_lc() < 0 else f


def _signed_sqrt(square, hint):
    root = rf_sqrt(square)
    if root is None:
        raise ValueError("exponent is not rational: no exact square root")
    if hint is not None:
        if (root - hint).is_zero() or (root + hint).is_zero():
            return hint
        raise ValueError("exponent hint does not match either sign")
    return _canonical_sign(root)


def accessory_parameters(sl, points, lam, theta_hints=None):
    """Read (theta_1..theta_4, L, nu) off an SL-form potential that matches
    the template with finite singular points (t1, 0, t3), an apparent point
    of order one at lam, and a regular singular point at infinity.

    theta signs are fixed by `theta_hints` (a 4-tuple, entries may be None)
    when given, otherwise by making the numerator's leading coefficient
    positive.  The template is re-expanded from the returned data and
    compared against p, so a mismatch can never pass silently.
    """
    t1, t2, t3 = points
    if not t2.is_zero():
        raise ValueError("template expects the second singular point at 0")
    var = sl.var
    zv = rf_var(var)
    p = sl.p
    quot, parts = partial_fractions(p, var, [t1, t2, t3, lam])
    if quot:
        raise ValueError("potential does not vanish at infinity")
    hints = theta_hints if theta_hints is not None else (None,) * 4
    theta = []
    doubles = []
    for k in range(3):
        c = parts[k]
        ak = c[1] if len(c) > 1 else rf_int(0)
        doubles.append(ak)
        theta.append(_signed_sqrt(4 * ak + 1, hints[k]))
    lam_part = parts[3]
    if len(lam_part) > 2:
        raise ValueError("apparent point has pole order above 2")
    lam_double = lam_part[1] if len(lam_part) > 1 else rf_int(0)
    if not (lam_double - rf_frac(3, 4)).is_zero():
        raise ValueError(
            "apparent double-pole coefficient differs from 3/4")
    # behaviour at infinity: p ~ B/z^2 with B = (theta4^2-1)/4
    degdiff = p.den.degree_in(var) - p.num.degree_in(var)
    if degdiff < 2 and not p.is_zero():
        raise ValueError("potential does not vanish to order 2 at infinity")
    if degdiff == 2:
        b_inf = (RationalFunction(p.num.coeff_in(var, p.num.degree_in(var)))
                 / RationalFunction(p.den.coeff_in(var, p.den.degree_in(var))))
    else:
        b_inf = rf_int(0)
    theta.append(_signed_sqrt(4 * b_inf + 1, hints[3]))
    big_l = (((p - doubles[0] / (zv - t1) ** 2) * (zv - t1))
             .substitute(var, t1) * t3)
    nu = -(((p - rf_frac(3, 4) / (zv - lam) ** 2) * (zv - lam))
           .substitute(var, lam) * t3)
    # re-expand the template and demand exact agreement
    a4 = (-rf_frac(1, 4)
          * (theta[0] ** 2 + theta[1] ** 2 + theta[2] ** 2
             - theta[3] ** 2 - 1) - rf_frac(1, 2))
    template = (doubles[0] / (zv - t1) ** 2 + doubles[1] / zv ** 2
                + doubles[2] / (zv - t3) ** 2
                + a4 / (zv * (zv - t3))
                + (t1 * (t1 - t3) / t3 * big_l)
                / (zv * (zv - t1) * (zv - t3))
                + rf_frac(3, 4) / (zv - lam) ** 2
                - (lam * (lam - t3) / t3 * nu)
                / (zv * (zv - t3) * (zv - lam)))
    if not (p - template).is_zero():
        raise ValueError("potential does not match the accessory template")
    return tuple(theta), big_l, nu


def mu_from_nu(nu, theta, lam, points):
    """Bridge from the accessory parameter to the momentum coordinate:
    mu = nu - (1/2) * sum (1 - theta_i)/(lam - t_i), in the normalized
    configuration (t, 0, 1)."""
    if not (points[2] - rf_int(1)).is_zero() or not points[1].is_zero():
        raise ValueError("momentum bridge needs the (t, 0, 1) configuration")
    acc = rf_int(0)
    for th, pt in zip(theta[:3], points):
        acc = acc + (1 - th) / (lam - pt)
    return nu - rf_frac(1, 2) * acc


def nu_from_mu(mu, theta, lam, points):
    """Inverse of the momentum bridge."""
    if not (points[2] - rf_int(1)).is_zero() or not points[1].is_zero():
        raise ValueError("momentum bridge needs the (t, 0, 1) configuration")
    acc = rf_int(0)
    for th, pt in zip(theta[:3], points):
        acc = acc + (1 - th) / (lam - pt)
    return mu + rf_frac(1, 2) * acc
