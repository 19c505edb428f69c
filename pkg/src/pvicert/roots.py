"""Root finding for polynomials whose roots are rational functions of a
deformation parameter.

Strategy: candidate roots are ratios +-u/v, where u runs over divisors of
the trailing coefficient and v over divisors of the leading coefficient
(divisors assembled from integer divisors, powers of the parameter, and
powers of caller-supplied hint factors).  To avoid enumerating all pairs,
the polynomial is first solved exactly at two small integer parameter
values; only (u, v) pairs whose values match a numeric root at both samples
are verified symbolically, by exact division.  Inputs outside the supported
class (degree > 12, or roots not of candidate shape) raise RootSearchError.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Polynomial, REGISTRY
from .ratfunc import RationalFunction, rf_int, rf_var, rf_poly

MAX_DEGREE = 12


class RootSearchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer and polynomial divisor enumeration
# ---------------------------------------------------------------------------

def _integer_divisors(n):
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _divisor_shapes(p, param, hints):
    """Divisors of the coefficient polynomial p of the shape
    d * param^j * prod(hint^e) that exactly divide p."""
    c, prim = p.primitive()
    int_divs = _integer_divisors(c.numerator)
    pidx = REGISTRY.index(param)
    mins = prim.min_exponents()
    max_mono = mins[pidx] if pidx < len(mins) else 0
    usable = []
    for h in hints:
        if h.is_const():
            continue
        mult = 0
        r = prim
        while True:
            try:
                r = r.exact_div(h)
            except ValueError:
                break
            mult += 1
        if mult:
            usable.append((h, mult))
    combos = [Polynomial.const(1)]
    for h, mult in usable:
        new = []
        for base in combos:
            pw = Polynomial.const(1)
            for e in range(mult + 1):
                new.append(base * pw)
                if e < mult:
                    pw = pw * h
        combos = new
    shapes = []
    for j in range(max_mono + 1):
        mono = Polynomial.var(param, j) if j else Polynomial.const(1)
        for cmb in combos:
            shape = mono * cmb
            if shape.divides(prim):
                for d in int_divs:
                    shapes.append(shape * d)
    return shapes


# ---------------------------------------------------------------------------
# exact univariate rational roots (over plain Q)
# ---------------------------------------------------------------------------

def _numeric_roots(coeff_values):
    """All rational roots of sum_k coeff_values[k] * x^k (dict, Fractions)."""
    coeffs = {k: v for k, v in coeff_values.items() if v != 0}
    if not coeffs:
        raise RootSearchError("polynomial vanishes at the sample point")
    deg = max(coeffs)
    low = min(coeffs)
    roots = set()
    if low > 0:
        roots.add(Fraction(0))
        coeffs = {k - low: v for k, v in coeffs.items()}
        deg -= low
    if deg == 0:
        return roots
    den_lcm = 1
    for v in coeffs.values():
        den_lcm = den_lcm * v.denominator // _gcd_int(den_lcm, v.denominator)
    ints = {k: int(v * den_lcm) for k, v in coeffs.items()}
    g = 0
    for v in ints.values():
        g = _gcd_int(g, v)
    ints = {k: v // g for k, v in ints.items()}
    for p in _integer_divisors(ints[0]):
        for q in _integer_divisors(ints[deg]):
            for s in (1, -1):
                r = Fraction(s * p, q)
                val = Fraction(0)
                for k, v in ints.items():
                    val += v * r ** k
                if val == 0:
                    roots.add(r)
    return roots


def _gcd_int(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# the main search
# ---------------------------------------------------------------------------

SAMPLE_VALUES = (2, 3, 5, 7, 4, 9, 11, 13, 6, 8, 10, 12)


def linear_split(f, name, param, hints=()):
    """Peel off all linear-in-`name` factors of f whose roots are rational
    functions of `param`.

    Returns (roots, remaining): a list of (root, multiplicity) pairs plus
    the unfactored remainder of f's numerator (constant in `name` when the
    split is complete).
    """
    if not isinstance(f, RationalFunction):
        f = rf_poly(f)
    if f.den.degree_in(name) > 0:
        raise RootSearchError(f"input has {name} in the denominator")
    poly = f.num
    coeffs = poly.coeffs_in(name)
    if not coeffs:
        raise RootSearchError("zero polynomial")
    deg = max(coeffs)
    if deg > MAX_DEGREE:
        raise RootSearchError(
            f"degree {deg} in {name} exceeds the supported bound {MAX_DEGREE}")
    roots = []
    low = min(coeffs)
    working = poly
    if low > 0:
        roots.append((rf_int(0), low))
        working = poly.exact_div(Polynomial.var(name, low))
        coeffs = working.coeffs_in(name)
        deg -= low
    if deg == 0:
        return roots, working
    hints = [h if isinstance(h, Polynomial) else h.num for h in hints]
    numerators = _divisor_shapes(coeffs[0], param, hints)
    denominators = _divisor_shapes(coeffs[deg], param, hints)

    samples = []
    for raw in SAMPLE_VALUES:
        if len(samples) == 2:
            break
        v = Fraction(raw)
        # a sample is usable when the degree does not drop and no hint
        # factor vanishes there (vanishing hints would hide candidates)
        try:
            if RationalFunction(coeffs[deg]).evaluate({param: v}) == 0:
                continue
            if any(RationalFunction(h).evaluate({param: v}) == 0
                   for h in hints):
                continue
            cvals = {k: RationalFunction(c).evaluate({param: v})
                     for k, c in coeffs.items()}
            nroots = _numeric_roots(cvals)
        except (ZeroDivisionError, RootSearchError, ValueError):
            continue
        samples.append((v, nroots))
    if len(samples) < 2:
        raise RootSearchError("could not find usable sample points")

    # index denominator shapes by their value at the first sample
    b0, roots0 = samples[0]
    b1, roots1 = samples[1]
    den_by_value = {}
    for vshape in denominators:
        val = RationalFunction(vshape).evaluate({param: b0})
        if val != 0:
            den_by_value.setdefault(val, []).append(vshape)

    candidates = []
    seen = []
    for ushape in numerators:
        uval = RationalFunction(ushape).evaluate({param: b0})
        if uval == 0:
            continue
        for r0 in roots0:
            if r0 == 0:
                continue
            for sign in (1, -1):
                need = sign * uval / r0
                for vshape in den_by_value.get(need, ()):
                    cand = rf_poly(ushape * sign) / rf_poly(vshape)
                    try:
                        second = cand.evaluate({param: b1})
                    except ZeroDivisionError:
                        continue
                    if second not in roots1:
                        continue
                    if any(cand == s for s in seen):
                        continue
                    seen.append(cand)
                    candidates.append(cand)

    var = rf_var(name)
    remaining = working
    for cand in candidates:
        fac = (var - cand).num
        mult = 0
        while True:
            try:
                remaining = remaining.exact_div(fac)
                mult += 1
            except ValueError:
                break
        if mult:
            check = rf_poly(working).substitute(name, cand)
            if not check.is_zero():
                raise ArithmeticError("root verification failed")
            roots.append((cand, mult))
    return roots, remaining


def rational_roots(f, name, param, hints=()):
    """Roots of f (a polynomial in `name` over Q(param)) as (root, mult)
    pairs, where every root is a rational function of `param`.

    The numerator of f must factor completely into such linear factors
    (times a `name`-free part); otherwise RootSearchError is raised.
    """
    roots, remaining = linear_split(f, name, param, hints)
    if remaining.degree_in(name) > 0:
        raise RootSearchError(
            "roots outside the candidate class (hints insufficient)")
    return roots


def zero_of_linear(f, name):
    """The unique zero of a rational function whose numerator is linear in
    `name`; raises ValueError otherwise."""
    coeffs = f.num.coeffs_in(name)
    if max(coeffs, default=-1) != 1:
        raise ValueError(f"numerator is not linear in {name}")
    c1 = RationalFunction(coeffs[1])
    c0 = RationalFunction(coeffs.get(0, Polynomial.zero()))
    return -c0 / c1
