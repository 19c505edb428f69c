"""First-order linear systems D Y = A(z) Y over the rational-function field."""

from __future__ import annotations

from .linalg import Matrix
from .ratfunc import RationalFunction


class LinearSystem:
    """A square first-order system D Y = A Y in one distinguished variable.

    `points` optionally records the finite singular locations (as rational
    functions of the remaining parameters); producers that know them attach
    them so downstream residue extraction does not have to rediscover poles.
    """

    __slots__ = ("matrix", "var", "points")

    def __init__(self, matrix, var="z", points=None):
        if not isinstance(matrix, Matrix):
            matrix = Matrix(matrix)
        n, m = matrix.shape
        if n != m:
            raise ValueError("system matrix must be square")
        self.matrix = matrix
        self.var = var
        self.points = tuple(points) if points is not None else None

    def size(self):
        return self.matrix.shape[0]

    def with_points(self, points):
        return LinearSystem(self.matrix, self.var, points)

    def __eq__(self, other):
        if not isinstance(other, LinearSystem):
            return NotImplemented
        return (self.matrix == other.matrix and self.var == other.var
                and self.points == other.points)

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    def __repr__(self):
        n = self.size()
        return f"LinearSystem({n}x{n} in {self.var})"


def rescale_variable(system, factor):
    """Substitute var -> factor*var and rescale: A(z) becomes factor*A(factor*z).

    This moves a singular point p to p/factor while keeping residues intact.
    """
    v = system.var
    fac = factor if isinstance(factor, RationalFunction) else None
    if fac is None:
        raise TypeError("factor must be a RationalFunction")
    if fac.is_zero():
        raise ZeroDivisionError("rescaling factor must be nonzero")
    from .ratfunc import rf_var
    target = fac * rf_var(v)
    new = system.matrix.map(lambda e: fac * e.substitute(v, target))
    pts = None
    if system.points is not None:
        pts = [p / fac for p in system.points]
    return LinearSystem(new, v, pts)


def invert_variable(system):
    """Substitute var -> 1/var: A(z) becomes -A(1/z)/z^2.

    A finite nonzero singular point p moves to 1/p; the origin and the point
    at infinity trade places, so any recorded point list is dropped (the
    caller knows the new configuration).
    """
    v = system.var
    from .ratfunc import rf_int, rf_var
    zv = rf_var(v)
    inv = rf_int(1) / zv
    scale = -(zv ** -2)
    new = system.matrix.map(lambda e: scale * e.substitute(v, inv))
    return LinearSystem(new, v, None)
