"""Independent verification paths for the incidence constructions.

Everything here works directly on expanded polynomial forms and never
calls into :mod:`grassmann.constructions`, so agreement between the two
routes is a genuine cross-check rather than a tautology.
"""

from __future__ import annotations

from .core import Line, Point, projectively_equal
from .poly import HomPoly, evaluate, restrict_to_line

__all__ = [
    "ZeroPolynomialError",
    "LineContainedError",
    "cubic_membership",
    "gradient_tangent",
    "root_multiplicity",
    "hessian_flex_oracle",
]


class ZeroPolynomialError(ValueError):
    pass


class LineContainedError(ValueError):
    """The whole line lies on the curve; restriction is identically zero."""


def cubic_membership(f: HomPoly, p: Point) -> bool:
    """Exact zero test of f at p."""
    if f.is_zero:
        raise ZeroPolynomialError("membership in the zero polynomial is vacuous")
    return evaluate(f, p) == 0


def gradient_tangent(f: HomPoly, a: Point) -> Line:
    """Tangent line at a smooth curve point, as the gradient row at a.

    Requires f(a) = 0.  Returns the zero-line exactly when a is a singular
    point of the curve.
    """
    if evaluate(f, a) != 0:
        raise ValueError("a does not lie on the curve")
    return Line(*(evaluate(f.partial(i), a) for i in range(3)))


def root_multiplicity(f: HomPoly, p: Point, q: Point, at: Point) -> int:
    """Order of vanishing of f along line pq at the endpoint `at` (p or q).

    Counts exact deflations of the restricted binary form; raises
    :class:`LineContainedError` when the restriction vanishes identically.
    """
    form = restrict_to_line(f, p, q)
    if all(c == 0 for c in form):
        raise LineContainedError("line pq lies on the curve")
    if projectively_equal(at, p):
        coeffs = form
    elif projectively_equal(at, q):
        coeffs = form[::-1]
    else:
        raise ValueError("`at` must be p or q")
    mult = 0
    for c in coeffs:
        if c != 0:
            break
        mult += 1
    return mult


def hessian_flex_oracle(f: HomPoly, p: Point) -> bool:
    """Whether a smooth point p of the cubic f = 0 is a flex.

    Evaluates the determinant of the matrix of second partials at p.
    """
    if evaluate(f, p) != 0:
        raise ValueError("p does not lie on the curve")
    grad = [evaluate(f.partial(i), p) for i in range(3)]
    if all(g == 0 for g in grad):
        raise ValueError("p is a singular point")
    h = [[evaluate(f.partial(i).partial(j), p) for j in range(3)] for i in range(3)]
    det = (
        h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
        - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
        + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0])
    )
    return det == 0
