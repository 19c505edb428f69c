"""Exact multivariate polynomial arithmetic over the rationals.

Everything downstream (rational functions, matrices, the geometric pipeline)
is built on the Polynomial class defined here.  Coefficients are plain ints
when integral and fractions.Fraction otherwise (int arithmetic is an order
of magnitude faster and integral coefficients dominate after
canonicalization).  Monomials are exponent vectors over a single global,
ordered symbol registry, packed into one integer key with a fixed-width
field per symbol; the first registry symbol occupies the most significant
field, so integer comparison of keys is exactly lexicographic comparison of
exponent vectors.  Per-symbol exponents must stay below 2^23, far beyond
anything the pipeline produces.  No floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd, isqrt


# ---------------------------------------------------------------------------
# symbol registry
# ---------------------------------------------------------------------------

# Fixed base ordering; auxiliary symbols (e.g. characteristic-polynomial
# variables) are appended after these and rank lower in the term order.
BASE_SYMBOLS = ("x", "z", "t", "t1", "t2", "t3", "lam", "mu", "b", "a", "c")


class SymbolRegistry:
    def __init__(self):
        self._names = list(BASE_SYMBOLS)
        self._index = {n: i for i, n in enumerate(self._names)}

    def names(self):
        return tuple(self._names)

    def __len__(self):
        return len(self._names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown symbol {name!r}")

    def contains(self, name):
        return name in self._index

    def register(self, name):
        """Register an auxiliary symbol; returns its index."""
        if not name or not (name[0].isalpha()) or not all(
                ch.isalnum() or ch == "_" for ch in name):
            raise ValueError(f"bad symbol name {name!r}")
        if name in self._index:
            return self._index[name]
        self._index[name] = len(self._names)
        self._names.append(name)
        return self._index[name]

    def fresh(self, stem="w"):
        """Register and return a name not currently in use."""
        if stem not in self._index:
            self.register(stem)
            return stem
        k = 0
        while f"{stem}{k}" in self._index:
            k += 1
        name = f"{stem}{k}"
        self.register(name)
        return name


REGISTRY = SymbolRegistry()

_ZERO = Fraction(0)

# packed-key layout
_FIELD = 24
_FMASK = (1 << _FIELD) - 1
_EXP_LIMIT = 1 << (_FIELD - 1)

_GUARDS = {}


def _guard(width):
    """One set bit at the top of every field; supports the borrow-free
    exactness test in monomial division."""
    g = _GUARDS.get(width)
    if g is None:
        g = 0
        for i in range(width):
            g |= 1 << (_FIELD * i + _FIELD - 1)
        _GUARDS[width] = g
    return g


def _encode(exps):
    key = 0
    for e in exps:
        key = (key << _FIELD) | e
    return key


def _decode(key, width):
    out = []
    for _ in range(width):
        out.append(key & _FMASK)
        key >>= _FIELD
    out.reverse()
    return tuple(out)


def _pad(exps, n):
    if len(exps) == n:
        return exps
    return exps + (0,) * (n - len(exps))


def _demote(c):
    """Represent an integral coefficient as a plain int."""
    if isinstance(c, int):
        return c
    return c.numerator if c.denominator == 1 else c


def _exact_ratio(a, b):
    """a / b for int-or-Fraction operands, kept exact and demoted."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if not r:
            return q
        return Fraction(a, b)
    return _demote(Fraction(a) / Fraction(b))


# ---------------------------------------------------------------------------
# Polynomial
# ---------------------------------------------------------------------------

class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients.

    Terms map packed exponent keys (registry order, lex-compatible) to
    nonzero int/Fraction coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("_terms", "_width")

    def __init__(self, terms=None, _clean=False):
        n = len(REGISTRY)
        if terms is None:
            self._terms = {}
        elif _clean:
            self._terms = terms
        else:
            cleaned = {}
            for e, cf in terms.items():
                if not isinstance(cf, int):
                    cf = _demote(Fraction(cf))
                if cf:
                    if isinstance(e, tuple):
                        e = _encode(_pad(e, n))
                    cleaned[e] = cf
            self._terms = cleaned
        self._width = n

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero():
        return Polynomial({}, _clean=True)

    @staticmethod
    def const(value):
        if not isinstance(value, int):
            value = _demote(Fraction(value))
        if not value:
            return Polynomial.zero()
        return Polynomial({0: value}, _clean=True)

    @staticmethod
    def var(name, power=1):
        idx = REGISTRY.index(name)
        if power < 0:
            raise ValueError("negative power")
        if power >= _EXP_LIMIT:
            raise ValueError("exponent exceeds the packed-field capacity")
        if power == 0:
            return Polynomial.const(1)
        n = len(REGISTRY)
        return Polynomial({power << (_FIELD * (n - 1 - idx)): 1},
                          _clean=True)

    # -- bookkeeping --------------------------------------------------------

    def _sync(self):
        """Return the terms dict re-packed to the current registry width."""
        n = len(REGISTRY)
        if self._width == n:
            return self._terms
        shift = _FIELD * (n - self._width)
        return {k << shift: c for k, c in self._terms.items()}

    def terms(self):
        """Iterate (exponent-tuple, coefficient) pairs, padded, unsorted."""
        n = len(REGISTRY)
        return [(_decode(k, n), c) for k, c in self._sync().items()]

    def is_zero(self):
        return not self._terms

    def is_const(self):
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def as_fraction(self):
        if not self._terms:
            return _ZERO
        if len(self._terms) == 1 and 0 in self._terms:
            return Fraction(self._terms[0])
        raise ValueError("polynomial is not constant")

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._sync() == other._sync()

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    __hash__ = None

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        return Polynomial({e: -c for e, c in self._sync().items()},
                          _clean=True)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._sync(), other._sync()
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for e, c in b.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial(out, _clean=True)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self._sync())
        for e, c in other._sync().items():
            s = out.get(e)
            if s is None:
                out[e] = -c
            else:
                s = s - c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial(out, _clean=True)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Polynomial.zero()
            return Polynomial({e: c * other
                               for e, c in self._sync().items()},
                              _clean=True)
        if isinstance(other, Fraction):
            if not other:
                return Polynomial.zero()
            return Polynomial(
                {e: _demote(c * other) for e, c in self._sync().items()},
                _clean=True)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._sync(), other._sync()
        if not a or not b:
            return Polynomial.zero()
        if len(a) > len(b):
            a, b = b, a
        out = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                k = ea + eb
                s = get(k)
                out[k] = ca * cb if s is None else s + ca * cb
        dead = [k for k, v in out.items() if not v]
        for k in dead:
            del out[k]
        return Polynomial(out, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structure ----------------------------------------------------------

    def variables(self):
        """Indices of symbols that actually occur."""
        folded = 0
        for k in self._terms:
            folded |= k
        w = self._width
        return [i for i in range(w)
                if (folded >> (_FIELD * (w - 1 - i))) & _FMASK]

    def degree_in(self, name):
        idx = REGISTRY.index(name)
        if not self._terms:
            return 0
        if idx >= self._width:
            return 0
        sh = _FIELD * (self._width - 1 - idx)
        return max((k >> sh) & _FMASK for k in self._terms)

    def total_degree(self):
        best = 0
        for k in self._terms:
            s = 0
            while k:
                s += k & _FMASK
                k >>= _FIELD
            if s > best:
                best = s
        return best

    def leading(self):
        """(exponent tuple, coefficient) of the lex-leading term."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        terms = self._sync()
        e = max(terms)
        return _decode(e, len(REGISTRY)), terms[e]

    def lex_lc(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self._terms[max(self._terms)]

    def coeffs_in(self, name):
        """View as a polynomial in `name`: dict degree -> coefficient poly."""
        idx = REGISTRY.index(name)
        n = len(REGISTRY)
        sh = _FIELD * (n - 1 - idx)
        clear = ~(_FMASK << sh)
        out = {}
        for e, c in self._sync().items():
            k = (e >> sh) & _FMASK
            bucket = out.setdefault(k, {})
            e0 = e & clear
            bucket[e0] = bucket.get(e0, 0) + c
        result = {}
        for k, v in out.items():
            p = Polynomial(v)
            if not p.is_zero():
                result[k] = p
        return result

    def coeff_in(self, name, k):
        return self.coeffs_in(name).get(k, Polynomial.zero())

    def derivative(self, name):
        idx = REGISTRY.index(name)
        n = len(REGISTRY)
        sh = _FIELD * (n - 1 - idx)
        out = {}
        for e, c in self._sync().items():
            k = (e >> sh) & _FMASK
            if k:
                out[e - (1 << sh)] = c * k
        return Polynomial(out, _clean=True)

    def evaluate(self, assignment):
        """Substitute Fractions for some symbols; returns a Polynomial.

        assignment: dict name -> Fraction/int.  Unmentioned symbols remain.
        """
        n = len(REGISTRY)
        pairs = []
        for name, v in assignment.items():
            idx = REGISTRY.index(name)
            sh = _FIELD * (n - 1 - idx)
            pairs.append((sh, Fraction(v)))
        out = {}
        for e, c in self._sync().items():
            scale = c
            for sh, v in pairs:
                k = (e >> sh) & _FMASK
                if k:
                    scale *= v ** k
                    e &= ~(_FMASK << sh)
            if scale:
                s = out.get(e, 0) + scale
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return Polynomial(out)

    # -- content / primitive form -------------------------------------------

    def rational_content(self):
        """Positive Fraction c with self/c integer and coprime; 0 for 0."""
        if not self._terms:
            return _ZERO
        num_gcd = 0
        den_lcm = 1
        for c in self._terms.values():
            num_gcd = _igcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm // _igcd(den_lcm, c.denominator) * c.denominator
        return Fraction(num_gcd, den_lcm)

    def primitive(self):
        """(c, P) with self == c*P, P integer-coprime with positive lex LC."""
        if not self._terms:
            return _ZERO, Polynomial.zero()
        c = self.rational_content()
        if self.lex_lc() < 0:
            c = -c
        P = Polynomial(
            {e: _exact_ratio(cf, c) for e, cf in self._sync().items()},
            _clean=True)
        return c, P

    def primitive_part(self):
        return self.primitive()[1]

    # -- division ------------------------------------------------------------

    def exact_div(self, other):
        """Exact polynomial quotient; raises ValueError if not divisible."""
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero polynomial")
            return Polynomial(
                {e: _exact_ratio(c, other) for e, c in self._sync().items()},
                _clean=True)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return Polynomial.zero()
        if other.is_const():
            q = other.as_fraction()
            return Polynomial(
                {e: _exact_ratio(c, q) for e, c in self._sync().items()},
                _clean=True)
        r = dict(self._sync())
        g = other._sync()
        ge = max(g)
        gc = g[ge]
        guard = _guard(len(REGISTRY))
        out = {}
        while r:
            e = max(r)
            c = r[e]
            q = (e | guard) - ge
            if q & guard != guard:
                raise ValueError("inexact polynomial division")
            q ^= guard
            qc = _exact_ratio(c, gc)
            out[q] = qc
            for eg, cg in g.items():
                key = q + eg
                s = r.get(key, 0) - qc * cg
                if s:
                    r[key] = s
                elif key in r:
                    del r[key]
        return Polynomial(out, _clean=True)

    def divides(self, other):
        try:
            other.exact_div(self)
            return True
        except (ValueError, ZeroDivisionError):
            return False

    # -- misc ----------------------------------------------------------------

    def shift_monomial(self, shifts):
        """Multiply by the monomial with exponent vector `shifts` (may be
        negative where every term allows it)."""
        n = len(REGISTRY)
        shifts = _pad(tuple(shifts), n)
        out = {}
        for e, c in self._sync().items():
            e2 = tuple(x + s for x, s in zip(_decode(e, n), shifts))
            if any(k < 0 for k in e2):
                raise ValueError("monomial shift gives negative exponent")
            out[_encode(e2)] = c
        return Polynomial(out, _clean=True)

    def min_exponents(self):
        """Per-symbol minimum exponent over all terms (the monomial content)."""
        n = len(REGISTRY)
        if not self._terms:
            return (0,) * n
        it = iter(self._sync())
        m = list(_decode(next(it), n))
        for k in it:
            for i, e in enumerate(_decode(k, n)):
                if e < m[i]:
                    m[i] = e
        return tuple(m)

    def __repr__(self):
        from .parse import polynomial_to_string
        return polynomial_to_string(self)


# ---------------------------------------------------------------------------
# gcd (primitive subresultant remainder sequence, recursive over variables)
# ---------------------------------------------------------------------------

def _prem(A, B, name):
    """Pseudo-remainder of A by B with respect to `name` (up to a scalar
    polynomial multiple; callers strip content afterwards)."""
    dB = B.degree_in(name)
    lB = B.coeff_in(name, dB)
    R = A
    while not R.is_zero() and R.degree_in(name) >= dB:
        dR = R.degree_in(name)
        lR = R.coeff_in(name, dR)
        R = lB * R - lR * Polynomial.var(name, dR - dB) * B
    return R


def _coeff_list_gcd(polys):
    g = Polynomial.zero()
    for p in polys:
        g = poly_gcd(g, p)
        if g.is_const() and not g.is_zero():
            return Polynomial.const(1)
    return g


_EVAL_SAMPLES = (3, 5, 7, 11, 13, 17, 19, 23)


def _univar_gcd_degree(u, v):
    """Degree of gcd of two dense integer coefficient lists (low to high),
    via a Euclidean remainder sequence kept integer and content-free."""
    def strip(w):
        while w and not w[-1]:
            w.pop()
        return w

    def content_free(w):
        g = 0
        for c in w:
            g = _igcd(g, c)
        if g > 1:
            return [c // g for c in w]
        return w

    u = content_free(strip(list(u)))
    v = content_free(strip(list(v)))
    if not u:
        return len(v) - 1
    if not v:
        return len(u) - 1
    if len(u) < len(v):
        u, v = v, u
    while True:
        dv = len(v) - 1
        lv = v[-1]
        r = list(u)
        while r and len(r) - 1 >= dv:
            lr = r[-1]
            r = [lv * c for c in r]
            off = len(r) - 1 - dv
            for i in range(dv + 1):
                r[off + i] -= lr * v[i]
            r.pop()
            r = content_free(strip(r))
        if not r:
            return dv
        if len(r) == 1:
            return 0
        u, v = v, r


def _coprime_by_evaluation(fp, gp, name):
    """True when fp and gp (content-free in `name`) are certified coprime by
    one integer evaluation of every other variable.

    For any common divisor D, deg(D at sample) == deg(D) whenever the
    leading coefficients of fp and gp survive the sample, so a degree-zero
    evaluated gcd proves the polynomial gcd is 1.  A False return means
    "unknown", never "not coprime".
    """
    others = set()
    for p in (fp, gp):
        for i in p.variables():
            others.add(REGISTRY.names()[i])
    others.discard(name)
    if not others:
        return False
    names = sorted(others)
    for shift in range(4):
        point = {nm: _EVAL_SAMPLES[(k + shift) % len(_EVAL_SAMPLES)]
                 for k, nm in enumerate(names)}
        fe = fp.evaluate(point)
        ge = gp.evaluate(point)
        if fe.degree_in(name) != fp.degree_in(name):
            continue
        if ge.degree_in(name) != gp.degree_in(name):
            continue
        ue = _dense_int_coeffs(fe, name)
        ve = _dense_int_coeffs(ge, name)
        if ue is None or ve is None:
            continue
        return _univar_gcd_degree(ue, ve) == 0
    return False


def _dense_int_coeffs(p, name):
    """Dense low-to-high integer coefficient list of a univariate-in-`name`
    polynomial with rational coefficients; None if other symbols remain."""
    coeffs = p.coeffs_in(name)
    vals = {}
    lcm = 1
    for k, cp in coeffs.items():
        if not cp.is_const():
            return None
        q = cp.as_fraction()
        vals[k] = q
        lcm = lcm // _igcd(lcm, q.denominator) * q.denominator
    out = [0] * (max(vals) + 1 if vals else 0)
    for k, q in vals.items():
        out[k] = int(q * lcm)
    return out


def _gcd_recursive(f, g):
    # both nonzero, integer-coprime primitive, non-constant overall
    fv = f.variables()
    gv = g.variables()
    if not fv or not gv:
        return Polynomial.const(1)
    name = REGISTRY.names()[min(fv[0], gv[0])]
    df = f.degree_in(name)
    dg = g.degree_in(name)
    if df == 0 or dg == 0:
        # gcd is free of `name`
        parts = list(f.coeffs_in(name).values()) if df else [f]
        parts += list(g.coeffs_in(name).values()) if dg else [g]
        return _coeff_list_gcd(parts)
    fc = _coeff_list_gcd(list(f.coeffs_in(name).values()))
    gc = _coeff_list_gcd(list(g.coeffs_in(name).values()))
    fp = f.exact_div(fc)
    gp = g.exact_div(gc)
    cont = poly_gcd(fc, gc)
    if _coprime_by_evaluation(fp, gp, name):
        return cont
    # primitive remainder sequence: strip the full content at every step,
    # which keeps coefficient growth minimal
    A, B = (fp, gp) if fp.degree_in(name) >= gp.degree_in(name) else (gp, fp)
    while True:
        R = _prem(A, B, name)
        if R.is_zero():
            break
        if R.degree_in(name) == 0:
            B = Polynomial.const(1)
            break
        Rc = _coeff_list_gcd(list(R.coeffs_in(name).values()))
        A, B = B, R.exact_div(Rc)
    if B.is_const():
        return cont
    Bc = _coeff_list_gcd(list(B.coeffs_in(name).values()))
    return cont * B.exact_div(Bc)


def poly_gcd(f, g):
    """Primitive gcd with positive lex leading coefficient."""
    if f.is_zero():
        return g.primitive_part()
    if g.is_zero():
        return f.primitive_part()
    mf = f.min_exponents()
    mg = g.min_exponents()
    mono = tuple(min(x, y) for x, y in zip(mf, mg))
    f0 = f.shift_monomial(tuple(-k for k in mf)).primitive_part()
    g0 = g.shift_monomial(tuple(-k for k in mg)).primitive_part()
    if f0 == g0:
        core = f0
    elif f0.is_const() or g0.is_const():
        core = Polynomial.const(1)
    elif len(f0._terms) == 1 or len(g0._terms) == 1:
        # one side is a monomial; common monomial part was already stripped
        core = Polynomial.const(1)
    else:
        core = _gcd_recursive(f0, g0)
    return core.shift_monomial(mono).primitive_part()


def poly_lcm(f, g):
    if f.is_zero() or g.is_zero():
        return Polynomial.zero()
    return (f * g).exact_div(poly_gcd(f, g)).primitive_part()


# ---------------------------------------------------------------------------
# perfect-square root
# ---------------------------------------------------------------------------

def _fraction_sqrt(q):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return rn if rd == 1 else Fraction(rn, rd)


def poly_sqrt(p):
    """Return s with s*s == p and positive lex LC, or None."""
    if p.is_zero():
        return Polynomial.zero()
    e, c = p.leading()
    if any(k % 2 for k in e):
        return None
    rc = _fraction_sqrt(c)
    if rc is None:
        return None
    root = Polynomial({tuple(k // 2 for k in e): rc})
    rem = p - root * root
    lead2 = root * 2
    guard = None
    while not rem.is_zero():
        er, cr = rem.leading()
        if guard is not None and er >= guard:
            return None
        guard = er
        el, cl = lead2.leading()
        q = tuple(x - y for x, y in zip(er, el))
        if any(k < 0 for k in q):
            return None
        term = Polynomial({q: _exact_ratio(cr, cl)})
        root = root + term
        rem = rem - lead2 * term - term * term
        lead2 = root * 2
    return root
