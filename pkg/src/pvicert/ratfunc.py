"""Rational functions: canonical fractions of Polynomials.

Canonical form: numerator and denominator are coprime polynomials with
integer coefficients, jointly content-free (no common integer factor), and
the denominator has positive lexicographic leading coefficient.  Equality
of canonical forms is structural equality, which the whole test suite
relies on.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import (Polynomial, poly_gcd, poly_sqrt, _fraction_sqrt)


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, RationalFunction) and den is None:
            self.num, self.den = num.num, num.den
            return
        num = _as_poly(num)
        den = Polynomial.const(1) if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = Polynomial.zero()
            self.den = Polynomial.const(1)
            return
        g = poly_gcd(num, den)
        if not (g.is_const() and g.as_fraction() == 1):
            num = num.exact_div(g)
            den = den.exact_div(g)
        self.num, self.den = _scale_pair(num, den)

    # -- helpers -------------------------------------------------------------

    @staticmethod
    def _raw(num, den):
        """Trusted constructor: operands already coprime; only rescales."""
        obj = object.__new__(RationalFunction)
        if num.is_zero():
            obj.num = Polynomial.zero()
            obj.den = Polynomial.const(1)
            return obj
        obj.num, obj.den = _scale_pair(num, den)
        return obj

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num == self.den

    def is_polynomial(self):
        return self.den.is_const()

    def is_constant(self):
        return self.num.is_const() and self.den.is_const()

    def as_fraction(self):
        return self.num.as_fraction() / self.den.as_fraction()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    __hash__ = None

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        g = poly_gcd(self.den, other.den)
        if g.is_const():
            num = self.num * other.den + other.num * self.den
            den = self.den * other.den
            return RationalFunction._raw(num, den)
        b1 = self.den.exact_div(g)
        d1 = other.den.exact_div(g)
        num = self.num * d1 + other.num * b1
        den = b1 * other.den
        h = poly_gcd(num, g)
        if not h.is_const():
            num = num.exact_div(h)
            den = den.exact_div(h)
        return RationalFunction._raw(num, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other.__add__(-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return rf_int(0)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_const() else self.num.exact_div(g1)
        d2 = other.den if g1.is_const() else other.den.exact_div(g1)
        n2 = other.num if g2.is_const() else other.num.exact_div(g2)
        d1 = self.den if g2.is_const() else self.den.exact_div(g2)
        return RationalFunction._raw(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self.__mul__(RationalFunction._raw(other.den, other.num))

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other.__truediv__(self)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ValueError("powers must be integers")
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("zero to a negative power")
            base = RationalFunction._raw(self.den, self.num)
            n = -n
        else:
            base = self
        return RationalFunction._raw(base.num ** n, base.den ** n)

    # -- calculus / substitution ---------------------------------------------

    def derivative(self, name):
        dn = self.num.derivative(name)
        dd = self.den.derivative(name)
        if dd.is_zero():
            return RationalFunction(dn, self.den)
        num = dn * self.den - self.num * dd
        return RationalFunction(num, self.den * self.den)

    def substitute(self, name, value):
        """Substitute `value` (RationalFunction / Fraction / int) for the
        symbol `name`.  Raises ZeroDivisionError at a pole."""
        value = _coerce(value)
        n = _poly_subst(self.num, name, value)
        d = _poly_subst(self.den, name, value)
        if d.is_zero():
            raise ZeroDivisionError(f"substitution {name} -> ... hits a pole")
        return n / d

    def evaluate(self, assignment):
        """Evaluate at Fractions for every occurring symbol -> Fraction."""
        n = self.num.evaluate(assignment)
        d = self.den.evaluate(assignment)
        nv = n.as_fraction()
        dv = d.as_fraction()
        if dv == 0:
            raise ZeroDivisionError("evaluation hits a pole")
        return nv / dv

    def evaluate_partial(self, assignment):
        """Substitute Fractions for some symbols, staying symbolic."""
        n = self.num.evaluate(assignment)
        d = self.den.evaluate(assignment)
        return RationalFunction(n, d)

    def degree_in(self, name):
        return max(self.num.degree_in(name), self.den.degree_in(name))

    def depends_on(self, name):
        from .poly import REGISTRY
        idx = REGISTRY.index(name)
        return (idx in self.num.variables()) or (idx in self.den.variables())

    def __repr__(self):
        from .parse import to_string
        return to_string(self)


def _scale_pair(num, den):
    """Rescale a coprime (num, den) pair to canonical integer form."""
    cn, pn = num.primitive()
    cd, pd = den.primitive()
    r = cn / cd
    if r.numerator != 1:
        pn = pn * r.numerator
    if r.denominator != 1:
        pd = pd * r.denominator
    return pn, pd


# ---------------------------------------------------------------------------
# coercion / convenience constructors
# ---------------------------------------------------------------------------

def _as_poly(p):
    if isinstance(p, Polynomial):
        return p
    if isinstance(p, (int, Fraction)):
        return Polynomial.const(p)
    raise TypeError(f"cannot build polynomial from {type(p).__name__}")


def _coerce(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalFunction(Polynomial.const(x))
    if isinstance(x, Polynomial):
        return RationalFunction(x)
    return None


def rf_int(n):
    return RationalFunction(Polynomial.const(n))


def rf_frac(p, q=None):
    if q is None:
        return RationalFunction(Polynomial.const(Fraction(p)))
    return RationalFunction(Polynomial.const(Fraction(p, q)))


def rf_var(name):
    return RationalFunction(Polynomial.var(name))


def rf_poly(p):
    return RationalFunction(p)


def _poly_subst(p, name, value):
    """Polynomial -> RationalFunction under name -> value (Horner)."""
    coeffs = p.coeffs_in(name)
    if not coeffs:
        return rf_int(0)
    degs = sorted(coeffs, reverse=True)
    if degs == [0]:
        return RationalFunction(coeffs[0])
    acc = rf_int(0)
    prev = None
    for k in degs:
        if prev is not None:
            acc = acc * value ** (prev - k)
        acc = acc + RationalFunction(coeffs[k])
        prev = k
    if prev:
        acc = acc * value ** prev
    return acc


# ---------------------------------------------------------------------------
# square roots
# ---------------------------------------------------------------------------

def rf_sqrt(f):
    """Exact square root of a rational function, or None."""
    if f.is_zero():
        return rf_int(0)
    ds = poly_sqrt(f.den)
    if ds is None:
        return None
    c, prim = f.num.primitive()
    cs = _fraction_sqrt(c)
    if cs is None:
        return None
    ns = poly_sqrt(prim)
    if ns is None:
        return None
    return RationalFunction._raw(ns * cs, ds)


# ---------------------------------------------------------------------------
# univariate views and partial fractions
# ---------------------------------------------------------------------------

def rf_coeffs_in(f, name):
    """Coefficient list of f as a polynomial in `name` (f must be polynomial
    in `name`, i.e. the denominator must not involve it).
    Returns dict degree -> RationalFunction."""
    if f.den.degree_in(name) > 0:
        raise ValueError(f"denominator involves {name}")
    den = RationalFunction(f.den)
    return {k: RationalFunction(c) / den for k, c in f.num.coeffs_in(name).items()}


def poly_divmod_in(num_coeffs, den_coeffs, name):
    """Univariate division with RationalFunction coefficients.

    num_coeffs/den_coeffs: dict degree -> RF.  Returns (quot, rem) as dicts.
    """
    dd = max(den_coeffs)
    lead = den_coeffs[dd]
    rem = dict(num_coeffs)
    quot = {}
    while rem:
        dn = max(rem)
        if dn < dd:
            break
        q = rem[dn] / lead
        quot[dn - dd] = q
        for k, c in den_coeffs.items():
            key = k + dn - dd
            s = rem.get(key, rf_int(0)) - q * c
            if s.is_zero():
                rem.pop(key, None)
            else:
                rem[key] = s
    return quot, rem


def partial_fractions(f, name, poles):
    """Decompose f = poly part + sum_i sum_j c_{ij}/(name - p_i)^j.

    poles: list of RationalFunctions free of `name`.  Every pole of f in
    `name` must be listed, or ValueError is raised.  Returns
    (quotient, parts) where quotient is a dict degree -> RF (possibly empty)
    and parts is a list (one per pole, same order) of coefficient lists
    [c_1, ..., c_k] for (name - p)^1 ... (name - p)^k.
    """
    var = rf_var(name)
    for p in poles:
        if p.depends_on(name):
            raise ValueError(f"pole location depends on {name}")
    # multiplicities via exact division of the denominator
    den = f.den
    mult = []
    for p in poles:
        lin = (var - p)
        fac = lin.num  # denominator-cleared linear factor
        k = 0
        while True:
            try:
                den = den.exact_div(fac)
            except ValueError:
                break
            k += 1
        mult.append(k)
    if den.degree_in(name) > 0:
        raise ValueError("rational function has poles outside the given list")
    # polynomial part
    ncoeffs = {k: RationalFunction(c) for k, c in f.num.coeffs_in(name).items()}
    dcoeffs = {k: RationalFunction(c) for k, c in f.den.coeffs_in(name).items()}
    quot, _ = poly_divmod_in(ncoeffs, dcoeffs, name)
    qpart = rf_int(0)
    for k, c in quot.items():
        qpart = qpart + c * var ** k
    parts = []
    for p, k in zip(poles, mult):
        if k == 0:
            parts.append([])
            continue
        g = f * (var - p) ** k
        coeffs = [rf_int(0)] * k
        for j in range(k, 0, -1):
            cval = g.substitute(name, p)
            coeffs[j - 1] = cval
            if j > 1:
                g = (g - cval) / (var - p)
        parts.append(coeffs)
    # consistency: rebuild and compare
    rebuilt = qpart
    for p, coeffs in zip(poles, parts):
        for j, c in enumerate(coeffs, start=1):
            rebuilt = rebuilt + c / (var - p) ** j
    if not (rebuilt - f).is_zero():
        raise ArithmeticError("partial fraction reconstruction failed")
    return quot, parts


def residue_at(f, name, point):
    """Residue of f at a simple pole `point` (cancel first, then evaluate)."""
    g = f * (rf_var(name) - point)
    return g.substitute(name, point)
