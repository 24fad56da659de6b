"""Straightedge constructions on plane cubic curves.

A cubic is carried by nine parameters: six points a, a1, b, b1, c, k and
three concurrent lines A, B, C.  The curve is the locus of points x for
which the three chain lines

    L = x a A a1,   M = x b B k C b1,   R = x c

are concurrent (their bracket vanishes), including every x at which one of
the chains degenerates.  This module builds those parameters through nine
given points, decides whether a tenth point is on the curve, intersects
chords, tangents and conics with the curve, tests for flexes, and computes
the chord-and-tangent group law.  Every construction is a finite sequence
of joins and meets over exact rationals; each public operation verifies
its own output against exact incidence checks.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction

from . import oracle
from .core import (
    Line,
    Point,
    bracket,
    canonicalize,
    incidence,
    join,
    meet,
    product,
    projectively_equal,
)
from .expr import Environment, eval_numeric, eval_symbolic, parse
from .poly import (
    HomPoly,
    RankDeficientError,
    evaluate as poly_evaluate,
    nullspace_fit,
    restrict_to_line,
)

__all__ = [
    "ConstructionError",
    "GeneralPositionViolation",
    "DegenerateIntermediateError",
    "InsufficientPointsError",
    "HypothesisViolation",
    "FlexVerificationError",
    "CoincidenceWarning",
    "SingularPointWarning",
    "CubicParams",
    "NinePointLabels",
    "NinePointFit",
    "SecondIntersection",
    "TangentThirdResult",
    "SixthPointResult",
    "CUBIC_EXPRESSION",
    "CONIC_EXPRESSION",
    "fit_nine_points",
    "fit_nine_points_trace",
    "expand_cubic",
    "evaluate_cubic",
    "check_ten_points",
    "third_point_on_chord_ab",
    "third_point_general",
    "tangent_at_a",
    "tangent_third_point",
    "tangent_third_point_detailed",
    "is_flex",
    "tangent_third_via_89",
    "conic_cubic_sixth",
    "conic_cubic_sixth_detailed",
    "conic_cubic_sixth_via_89",
    "group_add",
    "flex_at",
    "tangent_third_at",
    "conic_five_points",
    "pascal_points",
    "conic_line_second_intersection",
]


class ConstructionError(Exception):
    """Base class for failures of the straightedge constructions."""


class GeneralPositionViolation(ConstructionError):
    """Three of the given points are collinear (or coincide)."""

    def __init__(self, names, points):
        self.names = tuple(names)
        self.points = tuple(points)
        super().__init__(f"points {', '.join(self.names)} are collinear")


class DegenerateIntermediateError(ConstructionError):
    """A construction step produced a zero object."""

    def __init__(self, step: str):
        self.step = step
        super().__init__(f"degenerate intermediate at step {step!r}")


class InsufficientPointsError(ConstructionError):
    """No admissible auxiliary point selection exists."""


class HypothesisViolation(ConstructionError):
    """The inputs violate an explicit hypothesis of the construction."""


class FlexVerificationError(ConstructionError):
    """The designated identity point failed the flex test."""


class CoincidenceWarning(UserWarning):
    """A constructed point coincides with one of the defining points."""


class SingularPointWarning(UserWarning):
    """The base point is singular; the tangent construction is not unique."""


# canonical expression texts (accepted verbatim by the parser and the CLI)
CUBIC_EXPRESSION = "(xaAa_1.xbBkCb_1.xc)"
CONIC_EXPRESSION = "xaAbBcx"
_TANGENT_CONIC_EXPRESSION = "xbBkCb_1x"
_AUX_CONIC_EXPRESSION = "(qa_1.xc.xbBkCb_1)"
_SIXTH_CONIC_EXPRESSION = "xaAa_1Bcx"
_SIXTH_AUX_CUBIC_EXPRESSION = "(xa_1Aa.xb_1CkBb.xc)"

_CUBIC_AST = parse(CUBIC_EXPRESSION)
_TANGENT_CONIC_AST = parse(_TANGENT_CONIC_EXPRESSION)
_AUX_CONIC_AST = parse(_AUX_CONIC_EXPRESSION)
_SIXTH_CONIC_AST = parse(_SIXTH_CONIC_EXPRESSION)
_SIXTH_AUX_CUBIC_AST = parse(_SIXTH_AUX_CUBIC_EXPRESSION)

_PROBE_POINTS = tuple(
    Point(*t)
    for t in [
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (1, 1, 0),
        (1, 0, 1),
        (0, 1, 1),
        (1, 1, 1),
        (1, 2, 3),
        (2, -1, 5),
        (3, 5, -7),
        (5, -2, 11),
    ]
)


def _fold(*objs):
    value = objs[0]
    for other in objs[1:]:
        value = product(value, other)
    return value


def _step(name: str, value):
    if value.is_zero:
        raise DegenerateIntermediateError(name)
    return canonicalize(value)


# ---------------------------------------------------------------------------
# parameter containers


@dataclass(frozen=True)
class CubicParams:
    """Six points and three concurrent lines defining a cubic."""

    a: Point
    a1: Point
    b: Point
    b1: Point
    c: Point
    k: Point
    A: Line
    B: Line
    C: Line

    def validate(self) -> None:
        for name in ("a", "a1", "b", "b1", "c", "k", "A", "B", "C"):
            if getattr(self, name).is_zero:
                raise HypothesisViolation(f"parameter {name} is a zero object")
        for m, n in itertools.combinations(("A", "B", "C"), 2):
            if projectively_equal(getattr(self, m), getattr(self, n)):
                raise HypothesisViolation(f"lines {m} and {n} coincide")
        if bracket(self.A, self.B, self.C) != 0:
            raise HypothesisViolation("lines A, B, C are not concurrent")

    def environment(self) -> Environment:
        return Environment(
            {
                "a": self.a,
                "a_1": self.a1,
                "b": self.b,
                "b_1": self.b1,
                "c": self.c,
                "k": self.k,
                "A": self.A,
                "B": self.B,
                "C": self.C,
            }
        )


@dataclass(frozen=True)
class NinePointLabels:
    """Nine labelled points in general position (no three collinear)."""

    a: Point
    b: Point
    c: Point
    d: Point
    e: Point
    f: Point
    g: Point
    h: Point
    i: Point

    _NAMES = ("a", "b", "c", "d", "e", "f", "g", "h", "i")

    @classmethod
    def from_points(cls, points) -> "NinePointLabels":
        pts = list(points)
        if len(pts) != 9:
            raise ValueError("exactly nine points required")
        return cls(*pts)

    def as_tuple(self) -> tuple[Point, ...]:
        return tuple(getattr(self, n) for n in self._NAMES)

    def labelled(self) -> dict[str, Point]:
        return {n: getattr(self, n) for n in self._NAMES}

    def validate(self) -> None:
        viol = general_position_violation(self.as_tuple(), self._NAMES)
        if viol is not None:
            raise GeneralPositionViolation(*viol)


def general_position_violation(points, names=None):
    """First collinear (or coincident) triple, as (names, points), else None."""
    pts = list(points)
    if names is None:
        names = [str(i) for i in range(len(pts))]
    for (i, p), (j, q), (k, r) in itertools.combinations(enumerate(pts), 3):
        if bracket(p, q, r) == 0:
            return ((names[i], names[j], names[k]), (p, q, r))
    return None


@dataclass(frozen=True)
class NinePointFit:
    """Cubic parameters through nine points, with the construction's
    intermediate objects kept for verification."""

    params: CubicParams
    g1: Point
    g2: Point
    h1: Point
    h2: Point
    i1: Point
    i2: Point
    y: Point
    z: Point
    K: Line


# ---------------------------------------------------------------------------
# the nine-point fit


def fit_nine_points_trace(pts: NinePointLabels) -> NinePointFit:
    """Parameter construction through nine general-position points.

    Recipe: A = de, B = ef, a1 = af.cd; for each of g, h, i the pair
    p1 = paAa1.pc and p2 = pbB; C = e i1; y = h1g1Cg2.fh1 and
    z = g1h1Ch2.fg1; K = yz; k = K.i1i2; b1 = kg2Cg1.kf.
    """
    pts.validate()
    a, b, c, d, e, f, g, h, i = pts.as_tuple()

    A = _step("A=de", join(d, e))
    B = _step("B=ef", join(e, f))
    a1 = _step("a1=af.cd", meet(join(a, f), join(c, d)))

    def derived_pair(p, label):
        p1 = _step(
            f"{label}1={label}aAa1.{label}c",
            meet(join(meet(join(p, a), A), a1), join(p, c)),
        )
        p2 = _step(f"{label}2={label}bB", meet(join(p, b), B))
        return p1, p2

    g1, g2 = derived_pair(g, "g")
    h1, h2 = derived_pair(h, "h")
    i1, i2 = derived_pair(i, "i")

    C = _step("C=ei1", join(e, i1))
    y = _step("y=h1g1Cg2.fh1", meet(join(meet(join(h1, g1), C), g2), join(f, h1)))
    z = _step("z=g1h1Ch2.fg1", meet(join(meet(join(g1, h1), C), h2), join(f, g1)))
    K = _step("K=yz", join(y, z))
    k = _step("k=K.i1i2", meet(K, join(i1, i2)))
    b1 = _step("b1=kg2Cg1.kf", meet(join(meet(join(k, g2), C), g1), join(k, f)))

    params = CubicParams(a=a, a1=a1, b=b, b1=b1, c=c, k=k, A=A, B=B, C=C)
    params.validate()
    return NinePointFit(params, g1, g2, h1, h2, i1, i2, y, z, K)


def fit_nine_points(pts: NinePointLabels) -> CubicParams:
    """Cubic parameters whose curve passes through the nine given points."""
    return fit_nine_points_trace(pts).params


def evaluate_cubic(params: CubicParams, x: Point) -> Fraction:
    """Exact value of the defining bracket at x; zero means x is on the curve."""
    return eval_numeric(_CUBIC_AST, params.environment().with_x(x))


def expand_cubic(params: CubicParams) -> HomPoly:
    """The degree-3 form of the curve, expanded symbolically in x."""
    return eval_symbolic(_CUBIC_AST, params.environment())


def check_ten_points(pts: NinePointLabels, p10: Point) -> bool:
    """Whether a tenth point lies on the cubic through the nine; exact."""
    params = fit_nine_points(pts)
    return evaluate_cubic(params, p10) == 0


# ---------------------------------------------------------------------------
# chords


def third_point_on_chord_ab(params: CubicParams) -> Point:
    """Third intersection of the line through a and b with the cubic.

    Formula: with p = abAa1.abBkCb1, the point is pc.ab.  The result can
    coincide with a or b exactly when the chord is tangent there.
    """
    a, b, c = params.a, params.b, params.c
    ab = join(a, b)
    if ab.is_zero:
        raise DegenerateIntermediateError("ab")
    l1 = _fold(ab, params.A, params.a1)
    l2 = _fold(ab, params.B, params.k, params.C, params.b1)
    p = _step("p=abAa1.abBkCb1", meet(l1, l2))
    y = _step("y=pc.ab", meet(join(p, c), ab))
    if evaluate_cubic(params, y) != 0:
        raise ConstructionError("chord point failed the exact membership check")
    return y


def _dedupe(points):
    seen = set()
    out = []
    for p in points:
        if p.is_zero:
            continue
        key = canonicalize(p).coords
        if key in seen:
            continue
        seen.add(key)
        out.append(p)
    return out


def _general_position_selections(fixed, candidates, count):
    """Deterministic general-position completions of `fixed` from `candidates`.

    Greedy first-fit in input order; further selections come from rotating
    the starting offset (and scanning in reverse), so callers can retry
    after a degenerate fit.
    """
    seen = set()
    orders = [list(candidates), list(reversed(candidates))]
    for order in orders:
        for start in range(len(order)):
            chosen: list[Point] = []
            for idx in range(len(order)):
                cand = order[(start + idx) % len(order)]
                current = fixed + chosen
                if any(
                    bracket(u, v, cand) == 0
                    for u, v in itertools.combinations(current, 2)
                ):
                    continue
                chosen.append(cand)
                if len(chosen) == count:
                    break
            if len(chosen) == count:
                key = tuple(id(pt) for pt in chosen)
                if key not in seen:
                    seen.add(key)
                    yield chosen


def third_point_general(known, p: Point, q: Point) -> Point:
    """Third intersection of line pq with the cubic through the known points.

    Selects seven auxiliary points from `known` so that (p, q, aux) is in
    general position, refits the cubic with p and q in the anchor slots,
    and applies the chord formula.  The auxiliary selection is the first
    admissible one in input order, so results are reproducible; the
    returned point does not depend on the selection.
    """
    if projectively_equal(p, q):
        raise ValueError("chord endpoints must be distinct")
    candidates = [
        pt
        for pt in _dedupe(known)
        if not projectively_equal(pt, p) and not projectively_equal(pt, q)
    ]
    # points collinear with p and q can never complete a general-position set
    candidates = [pt for pt in candidates if bracket(p, q, pt) != 0]
    if len(candidates) < 7:
        raise InsufficientPointsError("fewer than seven usable auxiliary points")
    for aux in _general_position_selections([p, q], candidates, 7):
        try:
            params = fit_nine_points(NinePointLabels.from_points((p, q, *aux)))
            return third_point_on_chord_ab(params)
        except ConstructionError:
            continue
    raise InsufficientPointsError("no admissible auxiliary selection found")


# ---------------------------------------------------------------------------
# tangents


def tangent_at_a(params: CubicParams) -> Line:
    """Tangent line to the cubic at the parameter point a.

    Formula: (abBkCb1.ac)a1Aa.  At a singular point every branch of the
    formula degenerates; the zero-line bookkeeping object is returned
    together with a :class:`SingularPointWarning` instead of raising.
    """
    a, c = params.a, params.c
    l2 = _fold(join(a, params.b), params.B, params.k, params.C, params.b1)
    p = meet(l2, join(a, c))
    q = meet(join(p, params.a1), params.A)
    tangent = join(q, a)
    if tangent.is_zero:
        f = expand_cubic(params)
        if f.is_zero or oracle.gradient_tangent(f, a).is_zero:
            warnings.warn(
                "cubic is singular at a; the tangent construction degenerates",
                SingularPointWarning,
                stacklevel=2,
            )
            return tangent
        raise DegenerateIntermediateError("tangent construction")
    return canonicalize(tangent)


def _tangent_with_contact(params: CubicParams) -> tuple[Line, Point]:
    """The tangent at a and the point q where it crosses the line A."""
    a, c = params.a, params.c
    l2 = _fold(join(a, params.b), params.B, params.k, params.C, params.b1)
    p = _step("p=abBkCb1.ac", meet(l2, join(a, c)))
    q = _step("q=pa1A", meet(join(p, params.a1), params.A))
    tangent = _step("tangent=aq", join(a, q))
    return tangent, q


# ---------------------------------------------------------------------------
# conics


@dataclass(frozen=True)
class SecondIntersection:
    point: Point
    is_tangent: bool


def conic_line_second_intersection(five, L: Line, known: Point) -> SecondIntersection:
    """Second intersection of a line with the conic through five points.

    `known` must lie on both the line and the conic.  The point is built
    from joins and meets only (the degenerate-hexagon construction on the
    five points), then checked exactly against the conic fitted through
    the five points by elimination.  When the line is tangent at `known`
    the construction reproduces `known`, flagged in the result.
    """
    five = list(five)
    if len(five) != 5:
        raise ValueError("exactly five conic points required")
    try:
        conic = nullspace_fit(five, 2)
    except RankDeficientError as exc:
        raise DegenerateIntermediateError(
            f"five points do not determine a unique conic (rank {exc.rank})"
        ) from exc
    if incidence(L, known) != 0:
        raise HypothesisViolation("known point is not on the line")
    if poly_evaluate(conic, known) != 0:
        raise HypothesisViolation("known point is not on the conic")

    helpers = [pt for pt in _dedupe(five) if not projectively_equal(pt, known)]
    if len(helpers) < 4:
        raise HypothesisViolation("five points are not distinct enough")

    def candidates():
        for quad in itertools.combinations(helpers, 4):
            yield from itertools.permutations(quad)

    tangent_hit = None
    for pa, pb, pc, pd in candidates():
        m1 = meet(L, join(pb, pc))
        m3 = meet(join(pa, pb), join(pd, known))
        if m1.is_zero or m3.is_zero or projectively_equal(m1, m3):
            continue
        axis = join(m1, m3)
        m2 = meet(axis, join(pc, pd))
        if m2.is_zero:
            continue
        lx = join(pa, m2)
        if lx.is_zero or projectively_equal(lx, L):
            continue
        x = meet(lx, L)
        if x.is_zero or poly_evaluate(conic, x) != 0:
            continue
        if projectively_equal(x, known):
            tangent_hit = x
            continue
        return SecondIntersection(canonicalize(x), False)
    if tangent_hit is not None:
        return SecondIntersection(canonicalize(tangent_hit), True)
    raise DegenerateIntermediateError("conic-line second intersection")


def conic_five_points(a: Point, b: Point, c: Point, A: Line, B: Line) -> list[Point]:
    """Five points on the conic xaAbBcx = 0.

    Hypotheses: a, b, c not collinear, none of them on A or B, and A, B
    distinct.  The conic then passes through a, c, the meet AB, the point
    abB (chord ab crossed with B) and the point bcA (chord bc crossed
    with A); all five memberships are exact.
    """
    if bracket(a, b, c) == 0:
        raise HypothesisViolation("a, b, c are collinear")
    for name, pt in (("a", a), ("b", b), ("c", c)):
        if incidence(A, pt) == 0:
            raise HypothesisViolation(f"{name} lies on A")
        if incidence(B, pt) == 0:
            raise HypothesisViolation(f"{name} lies on B")
    if projectively_equal(A, B):
        raise HypothesisViolation("A and B coincide")
    points = [
        a,
        c,
        meet(A, B),
        meet(join(a, b), B),
        meet(join(b, c), A),
    ]
    for pt in points:
        if pt.is_zero:
            raise DegenerateIntermediateError("conic point construction")
    return [canonicalize(pt) for pt in points]


def pascal_points(a, b, c, a1, b1, c1) -> tuple[Point, Point, Point]:
    """The three cross-joint meets of the hexagon a b1 c a1 b c1.

    When the six points lie on a common conic the three meets are
    collinear.  Degenerate hexagons propagate zero objects instead of
    raising.
    """
    m1 = meet(join(a, b1), join(a1, b))
    m2 = meet(join(a, c1), join(a1, c))
    m3 = meet(join(b, c1), join(b1, c))
    return (m1, m2, m3)


# ---------------------------------------------------------------------------
# tangent third point (and flexes)


@dataclass(frozen=True)
class TangentThirdResult:
    w: Point
    tangent: Line
    q: Point
    y: Point
    z: Point
    conic_points: tuple[Point, ...]
    literal_labels_coincide: bool
    extra_conic_point: Point | None
    is_flex_case: bool


def tangent_third_point_detailed(params: CubicParams) -> TangentThirdResult:
    """Third intersection of the tangent at a with the cubic.

    The tangent aq (with q = (abBkCb1.ac)a1A) meets the auxiliary conic
    (qa1.xc.xbBkCb1) = 0 at a and at the wanted point w, which lies on
    the cubic.  Auxiliary points on that conic are constructed first: the
    second intersection y of the line cb1CkBb with the conic xbBkCb1x = 0,
    and the meet z of the lines b1cCkBb and b1c.  Those two recipes name
    the same point (the two six-letter chains are projectively equal
    lines), so a further conic point is produced by exact deflation along
    a probe line before the five-point second-intersection step; the
    collapse is recorded on the result rather than silently patched.
    """
    a, b, c, b1, k = params.a, params.b, params.c, params.b1, params.k
    B, C = params.B, params.C
    tangent, q = _tangent_with_contact(params)

    # five points of the conic xbBkCb1x = 0, each membership checked exactly
    five1 = [
        b,
        b1,
        _step("BC", meet(B, C)),
        _step("b1kB", _fold(b1, k, B)),
        _step("bkC", _fold(b, k, C)),
    ]
    env0 = params.environment()
    for pt in five1:
        if eval_numeric(_TANGENT_CONIC_AST, env0.with_x(pt)) != 0:
            raise ConstructionError("conic xbBkCb1x misses one of its five points")

    lam = _step("cb1CkBb", _fold(c, b1, C, k, B, b))
    if incidence(lam, b) != 0:
        raise ConstructionError("line cb1CkBb does not pass through b")
    y = conic_line_second_intersection(five1, lam, b).point

    z_line = _step("b1cCkBb", _fold(b1, c, C, k, B, b))
    z = _step("z=b1cCkBb.b1c", meet(z_line, join(b1, c)))

    aux_env = Environment({**{n: env0.lookup(n) for n in env0.names()}, "q": q})
    aux_conic = eval_symbolic(_AUX_CONIC_AST, aux_env)
    if aux_conic.is_zero:
        raise DegenerateIntermediateError("auxiliary conic")

    for name, pt in (("a", a), ("b", b), ("c", c), ("y", y), ("z", z)):
        if poly_evaluate(aux_conic, pt) != 0:
            raise ConstructionError(f"auxiliary conic misses {name}")

    collapse = projectively_equal(y, z)
    base = [a, b, c, y]
    extra = None
    if not collapse:
        base.append(z)
    else:
        extra = _extra_conic_point(aux_conic, y, avoid=base)
        base.append(extra)

    second = conic_line_second_intersection(base, tangent, a)
    w = second.point
    if evaluate_cubic(params, w) != 0:
        raise ConstructionError("tangent third point failed the membership check")
    return TangentThirdResult(
        w=w,
        tangent=tangent,
        q=q,
        y=y,
        z=z,
        conic_points=tuple(base),
        literal_labels_coincide=collapse,
        extra_conic_point=extra,
        is_flex_case=second.is_tangent,
    )


def _extra_conic_point(conic: HomPoly, base: Point, avoid) -> Point:
    """Another rational conic point: deflate along probe lines through base."""
    for u in _PROBE_POINTS:
        if projectively_equal(u, base):
            continue
        try:
            form = restrict_to_line(conic, base, u)
        except ValueError:
            continue
        if form[0] != 0:
            raise ConstructionError("base point is not on the conic")
        e1, e2 = form[1], form[2]
        if e1 == 0:
            continue
        cand = Point(*(-e2 * bc + e1 * uc for bc, uc in zip(base.coords, u.coords)))
        if cand.is_zero or any(projectively_equal(cand, s) for s in avoid):
            continue
        return canonicalize(cand)
    raise DegenerateIntermediateError("extra conic point")


def tangent_third_point(params: CubicParams) -> Point:
    return tangent_third_point_detailed(params).w


def is_flex(params: CubicParams) -> bool:
    """Whether the parameter point a is a flex: the tangent's third
    intersection point falls back on a itself."""
    return projectively_equal(tangent_third_point(params), params.a)


def tangent_third_via_89(known, a: Point) -> Point:
    """Tangent third point at a, by the two-secant construction.

    Chords through a and two auxiliary points p1, q1 give p2 and q2; the
    chords p1q1 and p2q2 give r1 and r2, and the chord r1r2 gives the
    result.
    """
    pool = _dedupe(known)
    others = [pt for pt in pool if not projectively_equal(pt, a)]
    if len(others) < 2:
        raise InsufficientPointsError("need two auxiliary points")
    for p1, q1 in itertools.combinations(others, 2):
        try:
            working = list(pool)
            p2 = third_point_general(working, p1, a)
            working.append(p2)
            q2 = third_point_general(working, q1, a)
            working.append(q2)
            r1 = third_point_general(working, p1, q1)
            working.append(r1)
            r2 = third_point_general(working, p2, q2)
            working.append(r2)
            return third_point_general(working, r1, r2)
        except (ConstructionError, ValueError):
            continue
    raise InsufficientPointsError("no admissible secant pair found")


# ---------------------------------------------------------------------------
# conic meets cubic


@dataclass(frozen=True)
class SixthPointResult:
    z: Point
    y: Point
    params: CubicParams
    coincides_with: str | None


def conic_cubic_sixth_detailed(pts: NinePointLabels) -> SixthPointResult:
    """Sixth intersection of the cubic with the conic through a, c, d, e, f.

    The conic is xaAa1Bcx = 0 with the fitted parameters (A = de, B = ef,
    a1 = af.cd).  Both e and f lie on the auxiliary cubic
    (xa1Aa.xb1CkBb.xc) = 0; y is the third intersection of the line ef
    with that auxiliary cubic (exact deflation of its restriction, whose
    two other roots e and f are known), and z = yc.ya1Aa.
    """
    params = fit_nine_points(pts)
    env = params.environment()
    a, c, d, e, f = pts.a, pts.c, pts.d, pts.e, pts.f

    def aux_value(x: Point) -> Fraction:
        return eval_numeric(_SIXTH_AUX_CUBIC_AST, env.with_x(x))

    for name, pt in (("e", e), ("f", f)):
        if aux_value(pt) != 0:
            raise ConstructionError(f"auxiliary cubic misses {name}")

    aux = eval_symbolic(_SIXTH_AUX_CUBIC_AST, env)
    if aux.is_zero:
        raise DegenerateIntermediateError("auxiliary cubic")
    form = restrict_to_line(aux, e, f)
    if form[0] != 0 or form[3] != 0:
        raise ConstructionError("restriction must vanish at e and f")
    c1, c2 = form[1], form[2]
    if c1 == 0 and c2 == 0:
        raise DegenerateIntermediateError("line ef lies on the auxiliary cubic")
    y = Point(*(-c2 * ec + c1 * fc for ec, fc in zip(e.coords, f.coords)))
    y = _step("y=third of ef on auxiliary cubic", y)

    z = _step("z=yc.ya1Aa", meet(join(y, c), _fold(join(y, params.a1), params.A, a)))

    def conic_value(x: Point) -> Fraction:
        return eval_numeric(_SIXTH_CONIC_AST, env.with_x(x))

    for name, pt in (("a", a), ("c", c), ("d", d), ("e", e), ("f", f)):
        if conic_value(pt) != 0:
            raise ConstructionError(f"conic misses {name}")
    if conic_value(z) != 0 or evaluate_cubic(params, z) != 0:
        raise ConstructionError("sixth point failed the exact membership checks")

    coincides = None
    for name, pt in (("a", a), ("c", c), ("d", d), ("e", e), ("f", f)):
        if projectively_equal(z, pt):
            coincides = name
            warnings.warn(
                f"sixth intersection point coincides with {name}",
                CoincidenceWarning,
                stacklevel=2,
            )
            break
    return SixthPointResult(z=z, y=y, params=params, coincides_with=coincides)


def conic_cubic_sixth(pts: NinePointLabels) -> Point:
    return conic_cubic_sixth_detailed(pts).z


def conic_cubic_sixth_via_89(pts: NinePointLabels) -> Point:
    """Sixth conic intersection by chord chaining.

    The chord cd meets the cubic again at r, ef at s, rs at t; the wanted
    point is the third intersection of the chord at with the cubic.
    """
    nine = list(pts.as_tuple())
    a, c, d, e, f = pts.a, pts.c, pts.d, pts.e, pts.f
    r = third_point_general(nine, c, d)
    s = third_point_general(nine + [r], e, f)
    t = third_point_general(nine + [r, s], r, s)
    z = third_point_general(nine + [r, s, t], a, t)
    params = fit_nine_points(pts)
    env = params.environment()
    if eval_numeric(_SIXTH_CONIC_AST, env.with_x(z)) != 0 or evaluate_cubic(params, z) != 0:
        raise ConstructionError("sixth point failed the exact membership checks")
    return z


# ---------------------------------------------------------------------------
# group law


def group_add(known, o: Point, p: Point, q: Point, verify_flex: bool = True) -> Point:
    """Chord-and-tangent sum p + q with identity o: the third point of the
    chord through o and the third chord point of pq.

    Coincident summands fall back on the tangent construction.  With
    `verify_flex` the identity is first checked to be a flex (one refit
    plus a tangent-third construction); pass False to skip when the
    caller has already verified it.
    """
    if verify_flex:
        if not flex_at(known, o):
            raise FlexVerificationError("identity point is not a flex")

    def chord(u, v):
        if projectively_equal(u, v):
            return tangent_third_at(known, u)
        return third_point_general(known, u, v)

    return canonicalize(chord(o, chord(p, q)))


def tangent_third_at(known, p: Point) -> Point:
    """Tangent third point at an arbitrary curve point, by refitting with p
    in the anchor slot.  Particular parameter choices can degenerate the
    tangent formula, so selections are retried."""
    candidates = [pt for pt in _dedupe(known) if not projectively_equal(pt, p)]
    if len(candidates) < 8:
        raise InsufficientPointsError("fewer than eight usable auxiliary points")
    for aux in _general_position_selections([p], candidates, 8):
        try:
            params = fit_nine_points(NinePointLabels.from_points((p, *aux)))
            return tangent_third_point(params)
        except ConstructionError:
            continue
    raise InsufficientPointsError("no admissible anchored selection found")


def flex_at(known, p: Point) -> bool:
    """Flex test at an arbitrary curve point: whether the tangent there
    meets the curve again at p itself."""
    return projectively_equal(tangent_third_at(known, p), p)
