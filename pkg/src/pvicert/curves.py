"""Flat rank-2 parametric connections and deformable elliptic-curve families.

Connections come in three flavours: the generic three-point connection in
(t1, t2, t3) with exponent symbols attached to each point, and two
two-variable connections in (t2, t3) — one for a full cubic 4x^3-t2*x-t3,
one for the factored shape (4x^2-t2*x+t3)(x+t2/4).  Composing a connection
with a curve family (substituting the family's coefficient polynomials for
t2, t3 and applying the chain rule in the fiber coordinate z) produces a
rank-2 linear system whose singularities are the roots of the family's
discriminant.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Matrix
from .parse import parse_expression
from .poly import Polynomial
from .ratfunc import RationalFunction, rf_frac, rf_int, rf_poly, rf_var
from .roots import (RootSearchError, _integer_divisors, linear_split,
                    rational_roots)
from .systems import LinearSystem


class ParametricConnection:
    """Coefficient matrices of a flat connection d - sum A_v dv."""

    __slots__ = ("kind", "variables", "matrices")

    def __init__(self, kind, variables, matrices):
        self.kind = kind
        self.variables = tuple(variables)
        self.matrices = tuple(matrices)

    def flatness_residuals(self):
        """One matrix d_u A_v - d_v A_u - [A_u, A_v] per variable pair.

        All of them vanish exactly when the connection is flat.
        """
        out = []
        n = len(self.variables)
        for i in range(n):
            for j in range(i + 1, n):
                u, v = self.variables[i], self.variables[j]
                au, av = self.matrices[i], self.matrices[j]
                duv = av.map(lambda e: e.derivative(u))
                dvu = au.map(lambda e: e.derivative(v))
                out.append(duv - dvu - (au * av - av * au))
        return out

    def is_flat(self):
        return all(r.is_zero() for r in self.flatness_residuals())


def _three_point_block(ea, eb, ec, u1, u2, u3):
    half = rf_frac(1, 2)
    pre = rf_int(1) / ((u1 - u2) * (u1 - u3))
    m11 = (half * (eb + ec - 2) * u1 + half * (ea + ec - 1) * u2
           + half * (ea + eb - 1) * u3)
    m12 = -ea - eb - ec + 2
    m21 = ea * u2 * u3 + (eb - 1) * u1 * u3 + (ec - 1) * u1 * u2
    return Matrix([[m11, m12], [m21, -m11]]).scale(pre)


def general_three_point_connection(e1="a", e2="b", e3="c"):
    """The flat connection on three moving points with exponents e1..e3.

    The dt2 (resp. dt3) coefficient is the dt1 coefficient with the first
    and second (resp. first and third) point/exponent pairs exchanged.
    """
    ea, eb, ec = rf_var(e1), rf_var(e2), rf_var(e3)
    u1, u2, u3 = rf_var("t1"), rf_var("t2"), rf_var("t3")
    a1 = _three_point_block(ea, eb, ec, u1, u2, u3)
    a2 = _three_point_block(eb, ea, ec, u2, u1, u3)
    a3 = _three_point_block(ec, eb, ea, u3, u2, u1)
    return ParametricConnection("three-point", ("t1", "t2", "t3"),
                                (a1, a2, a3))


def cubic_connection(exponent="a"):
    """Two-variable connection attached to the full cubic 4x^3-t2*x-t3."""
    e = rf_var(exponent)
    u, v = rf_var("t2"), rf_var("t3")
    pre = rf_int(1) / (27 * v ** 2 - u ** 3)
    c2 = Matrix([
        [u ** 2 / 4, (-27 * e + 18) * v],
        [(rf_frac(-9, 4) * e + rf_frac(3, 4)) * u * v, -(u ** 2) / 4],
    ]).scale(pre)
    c3 = Matrix([
        [rf_frac(-9, 2) * v, (18 * e - 12) * u],
        [(rf_frac(3, 2) * e - rf_frac(1, 2)) * u ** 2, rf_frac(9, 2) * v],
    ]).scale(pre)
    return ParametricConnection("cubic", ("t2", "t3"), (c2, c3))


def quartic_connection(e_linear="a", e_quadratic="c"):
    """Two-variable connection for the factored shape
    (4x^2 - t2*x + t3)(x + t2/4), with one exponent on each factor."""
    ea, ec = rf_var(e_linear), rf_var(e_quadratic)
    u, v = rf_var("t2"), rf_var("t3")
    pre = rf_int(1) / ((u ** 2 - 16 * v) * (u ** 2 + 2 * v))
    d2_11 = 6 * ea * u * v - 6 * ec * u * v - u ** 3 / 2 + 5 * u * v
    d2 = Matrix([
        [d2_11, -48 * ea * v - 96 * ec * v + 96 * v],
        [12 * ea * v ** 2 - 3 * ec * u ** 2 * v + u ** 2 * v - 4 * v ** 2,
         -d2_11],
    ]).scale(pre)
    d3_11 = -3 * ea * u ** 2 + 3 * ec * u ** 2 + u ** 2 + 8 * v
    d3 = Matrix([
        [d3_11, 24 * ea * u + 48 * ec * u - 48 * u],
        [-6 * ea * u * v + rf_frac(3, 2) * ec * u ** 3 - u ** 3 / 2
         + 2 * u * v, -d3_11],
    ]).scale(pre)
    return ParametricConnection("quartic", ("t2", "t3"), (d2, d3))


# ---------------------------------------------------------------------------
# curve families
# ---------------------------------------------------------------------------

_FAMILY_DATA = {
    1: ("3*(z-1)*(z-b^2)^3", "(z-1)*(z-b^2)^4*(z+b)",
        None, "1", ()),
    2: ("12*z^2*(z^2+b*z+1)", "4*z^3*(2*z^3+3*b*z^2+3*b*z+2)",
        "3/4*(b+1/b)+1/2", "-1/b", ()),
    3: ("12*z^2*(z^2+2*b*z+1)", "4*z^3*(2*z^3+3*(b^2+1)*z^2+6*b*z+2)",
        "2/3*(b+1/b)-1/3", "(-b^2-2*b)/3", ("2*b+1", "b+2")),
    4: ("3*z^3*(z+b)", "z^5*(z+1)",
        "2/3*(b^2-3)/(b^2+3)+1/3",
        "(-b^3+3*b^2-3*b+1)/(b^3-3*b^2+3*b-9)",
        ("b+1", "b-1", "b+3", "b-3", "b^2+3")),
    5: ("3*z^3*(z+2*b)", "z^4*(z^2+3*b*z+1)",
        "1/4*(b+2/b)", "-2*b^3/(3*b^2-2)", ("b^2-6", "3*b^2-2")),
}


class CurveFamily:
    """One family y^2 = 4x^3 - g2(z)x - g3(z) with deformation parameter b.

    `substitution` is the reparametrization b -> r(b) that makes the
    discriminant roots rational; `scale` is the root that plays the role of
    the third singular location after that substitution (used to fix the
    ordering and the subsequent variable rescaling); `root_hints` feed the
    root search.
    """

    __slots__ = ("family_id", "g2", "g3", "substitution", "scale",
                 "root_hints", "rationalized")

    def __init__(self, family_id, g2, g3, substitution, scale, root_hints,
                 rationalized):
        self.family_id = family_id
        self.g2 = g2
        self.g3 = g3
        self.substitution = substitution
        self.scale = scale
        self.root_hints = tuple(root_hints)
        self.rationalized = rationalized
        if self.discriminant().is_zero():
            raise ValueError("degenerate family: discriminant is zero")

    def discriminant(self):
        return self.g2 ** 3 - 27 * self.g3 ** 2

    def __repr__(self):
        state = "rationalized" if self.rationalized else "raw"
        return f"CurveFamily({self.family_id}, {state})"


def curve_family(family_id):
    """The stored deformable family with the given id (1..5)."""
    if family_id not in _FAMILY_DATA:
        raise ValueError(f"family id must be in 1..5, got {family_id!r}")
    g2s, g3s, subst, scale, hints = _FAMILY_DATA[family_id]
    return CurveFamily(
        family_id,
        parse_expression(g2s),
        parse_expression(g3s),
        parse_expression(subst) if subst is not None else None,
        parse_expression(scale),
        tuple(parse_expression(h).num for h in hints),
        rationalized=False,
    )


def rationalize(family):
    """Apply the family's stored parameter substitution b -> r(b)."""
    if family.rationalized:
        return family
    g2, g3 = family.g2, family.g3
    if family.substitution is not None:
        g2 = g2.substitute("b", family.substitution)
        g3 = g3.substitute("b", family.substitution)
    return CurveFamily(family.family_id, g2, g3, family.substitution,
                       family.scale, family.root_hints, True)


def discriminant_roots(family):
    """The three distinct finite roots of g2^3 - 27*g3^2 in z, ordered so
    that the second is 0 and the third matches the family's stored scale.

    Raises RootSearchError when the roots are not rational in b (e.g. on a
    family whose substitution has not been applied) or do not number three.
    """
    found = rational_roots(family.discriminant(), "z", "b",
                           hints=family.root_hints)
    distinct = [r for r, _ in found]
    if len(distinct) != 3:
        raise RootSearchError(
            f"expected three distinct finite roots, found {len(distinct)}")
    zero = rf_int(0)
    if zero not in distinct:
        raise RootSearchError("no discriminant root at the origin")
    nonzero = [r for r in distinct if r != zero]
    third = next((r for r in nonzero if r == family.scale), None)
    if third is None:
        raise RootSearchError("no root matches the family's stored scale")
    first = next(r for r in nonzero if r != third)
    return (first, zero, third)


def _cubic_root_candidates(g3):
    """Candidate rational roots x0 of 4x^3 - g2*x - g3 = 0, built from the
    z-factors of g3's numerator scaled by divisors of its content over
    divisors of the leading coefficient 4."""
    num = g3.num
    roots, leftover = linear_split(rf_poly(num), "z", "b")
    factors = []
    for r, mult in roots:
        if r.is_zero():
            factors.append((Polynomial.var("z"), mult))
        else:
            factors.append(((rf_var("z") - r).num, mult))
    if leftover.degree_in("z") > 0:
        factors.append((leftover.primitive()[1], 1))
    combos = [Polynomial.const(1)]
    for fac, mult in factors:
        grown = []
        for base in combos:
            power = base
            for k in range(mult + 1):
                grown.append(power)
                if k < mult:
                    power = power * fac
        combos = grown
    content = num.rational_content()
    scalars = set()
    for d in _integer_divisors(content.numerator):
        for e in (1, 2, 4):
            for sign in (1, -1):
                scalars.add(Fraction(sign * d, e))
    out = []
    for cmb in combos:
        base = rf_poly(cmb)
        for s in scalars:
            out.append(base * rf_frac(s.numerator, s.denominator))
    return out


_SCREEN_POINTS = ({"z": Fraction(5, 7), "b": Fraction(3)},
                  {"z": Fraction(7, 3), "b": Fraction(5)})


def factor_cubic(family):
    """Split 4x^3 - g2*x - g3 into (quadratic, linear) factors in x over
    Q(b, z), or return None when no such split exists."""
    g2, g3 = family.g2, family.g3
    xv = rf_var("x")
    for x0 in _cubic_root_candidates(g3):
        screened = False
        for pt in _SCREEN_POINTS:
            try:
                lhs = (4 * x0.evaluate(pt) ** 3
                       - g2.evaluate(pt) * x0.evaluate(pt)
                       - g3.evaluate(pt))
            except (ZeroDivisionError, ValueError):
                continue
            if lhs != 0:
                screened = True
                break
        if screened:
            continue
        if not (4 * x0 ** 3 - g2 * x0 - g3).is_zero():
            continue
        p = -4 * x0
        q = p ** 2 / 4 - g2
        return (4 * xv ** 2 - p * xv + q, xv + p / 4)
    return None


def pullback(connection, family):
    """Compose a two-variable connection with a curve family: substitute the
    family's coefficient pair for (t2, t3) and apply the chain rule in z.

    The quartic connection requires a family whose cubic splits (the factored
    coefficients are used); the cubic connection requires one whose cubic
    does not split.  Returns the resulting rank-2 system in z.
    """
    if connection.kind == "quartic":
        split = factor_cubic(family)
        if split is None:
            raise ValueError(
                "quartic connection needs a family whose cubic splits")
        quadratic, linear = split
        xv = rf_var("x")
        u = 4 * (linear - xv)
        v = quadratic.substitute("x", rf_int(0))
    elif connection.kind == "cubic":
        if factor_cubic(family) is not None:
            raise ValueError(
                "cubic connection needs a family whose cubic does not split")
        u, v = family.g2, family.g3
    else:
        raise ValueError("pullback needs a two-variable connection")
    du = u.derivative("z")
    dv = v.derivative("z")

    def plug(mat):
        return mat.map(lambda e: e.substitute("t2", u).substitute("t3", v))

    m2, m3 = connection.matrices
    a = plug(m2).scale(du) + plug(m3).scale(dv)
    return LinearSystem(a, "z")
