"""Exact homogeneous-coordinate arithmetic in the projective plane.

Points and lines are triples of rationals.  The all-zero triple is kept as
an explicit degenerate marker (the zero-point and the zero-line), which
makes every operation below total: a degenerate construction flows through
subsequent arithmetic as a zero object instead of raising.

Scalars use an equivalence coarser than equality: all nonzero values form
one class and zero forms the other.  Incidence tests only ever ask which
class a scalar is in, so results stay well defined even though individual
coordinates are only fixed up to a common nonzero factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

Scalar = Fraction

__all__ = [
    "Scalar",
    "Point",
    "Line",
    "GeomObject",
    "ZERO_POINT",
    "ZERO_LINE",
    "KindError",
    "meet",
    "join",
    "incidence",
    "bracket",
    "scale",
    "product",
    "projectively_equal",
    "canonicalize",
    "kind_of",
    "scalar_equiv",
]


class KindError(TypeError):
    """Operands have kinds for which the operation is undefined."""


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class _Triple:
    x0: Fraction
    x1: Fraction
    x2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x0", _frac(self.x0))
        object.__setattr__(self, "x1", _frac(self.x1))
        object.__setattr__(self, "x2", _frac(self.x2))

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x0, self.x1, self.x2)

    @property
    def is_zero(self) -> bool:
        return self.x0 == 0 and self.x1 == 0 and self.x2 == 0

    def __repr__(self):
        name = type(self).__name__
        return f"{name}({self.x0!s}, {self.x1!s}, {self.x2!s})"


class Point(_Triple):
    """A point [x0:x1:x2]; (0,0,0) is the degenerate zero-point."""


class Line(_Triple):
    """A line with equation x0*L0 + x1*L1 + x2*L2 = 0; (0,0,0) is the zero-line."""


GeomObject = Union[Point, Line, Fraction]

ZERO_POINT = Point(0, 0, 0)
ZERO_LINE = Line(0, 0, 0)


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def kind_of(g: GeomObject) -> str:
    if isinstance(g, Point):
        return "point"
    if isinstance(g, Line):
        return "line"
    if isinstance(g, Fraction):
        return "scalar"
    raise KindError(f"not a geometric object: {g!r}")


def meet(L: Line, M: Line) -> Point:
    """Intersection point of two lines (cross product of coefficient triples).

    Total: identical or degenerate inputs yield the zero-point.
    """
    return Point(*_cross(L.coords, M.coords))


def join(p: Point, q: Point) -> Line:
    """Line through two points (cross product of coordinate triples).

    Total: the join of a point with itself is the zero-line.
    """
    return Line(*_cross(p.coords, q.coords))


def incidence(g, h) -> Fraction:
    """Dot product of a line with a point; zero exactly when incident."""
    if isinstance(g, Line) and isinstance(h, Point):
        return _dot(g.coords, h.coords)
    if isinstance(g, Point) and isinstance(h, Line):
        return _dot(g.coords, h.coords)
    raise KindError(f"incidence needs a line and a point, got {kind_of(g)}/{kind_of(h)}")


def bracket(a: GeomObject, b: GeomObject, c: GeomObject) -> Fraction:
    """Triple product of three points or three lines.

    Vanishes when operands repeat, three points are collinear, or three
    lines are concurrent.
    """
    if isinstance(a, Point) and isinstance(b, Point) and isinstance(c, Point):
        pass
    elif isinstance(a, Line) and isinstance(b, Line) and isinstance(c, Line):
        pass
    else:
        raise KindError("bracket needs three points or three lines")
    return _dot(a.coords, _cross(b.coords, c.coords))


def scale(s: Fraction, g) -> GeomObject:
    """Scalar multiple of a point or line; scaling by zero gives the zero object."""
    s = _frac(s)
    if isinstance(g, Point):
        return Point(s * g.x0, s * g.x1, s * g.x2)
    if isinstance(g, Line):
        return Line(s * g.x0, s * g.x1, s * g.x2)
    raise KindError(f"cannot scale a {kind_of(g)}")


def product(g: GeomObject, h: GeomObject) -> GeomObject:
    """The typed juxtaposition product.

    point*point -> join, line*line -> meet, line*point (either order) ->
    incidence scalar, scalar*object -> scaling.  scalar*scalar is a kind
    error; it never arises from a well-formed incidence expression.
    """
    if isinstance(g, Point):
        if isinstance(h, Point):
            return join(g, h)
        if isinstance(h, Line):
            return incidence(g, h)
        return scale(h, g)
    if isinstance(g, Line):
        if isinstance(h, Line):
            return meet(g, h)
        if isinstance(h, Point):
            return incidence(g, h)
        return scale(h, g)
    if isinstance(g, Fraction):
        if isinstance(h, (Point, Line)):
            return scale(g, h)
        raise KindError("scalar*scalar has no geometric meaning")
    raise KindError(f"not a geometric object: {g!r}")


def scalar_equiv(a: Fraction, b: Fraction) -> bool:
    """Scalars are equivalent when both are zero or both are nonzero."""
    return (a == 0) == (b == 0)


def projectively_equal(g: GeomObject, h: GeomObject) -> bool:
    """Equality up to a nonzero scalar factor.

    Zero objects are equivalent only to the zero object of the same kind.
    """
    kg, kh = kind_of(g), kind_of(h)
    if kg != kh:
        raise KindError(f"cannot compare {kg} with {kh}")
    if kg == "scalar":
        return scalar_equiv(g, h)
    if g.is_zero or h.is_zero:
        return g.is_zero and h.is_zero
    return all(c == 0 for c in _cross(g.coords, h.coords))


def canonicalize(g):
    """Reduce a point or line to its primitive integer representative.

    Divides out the gcd of the entries (after clearing denominators) and
    makes the first nonzero entry positive; the result is projectively
    equal to the input.  Scalars and zero objects pass through unchanged.
    """
    if isinstance(g, Fraction):
        return g
    if g.is_zero:
        return g
    denom_lcm = 1
    for c in g.coords:
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in g.coords]
    common = gcd(gcd(abs(ints[0]), abs(ints[1])), abs(ints[2]))
    ints = [v // common for v in ints]
    first = next(v for v in ints if v != 0)
    if first < 0:
        ints = [-v for v in ints]
    return type(g)(*ints)
