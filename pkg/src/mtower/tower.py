"""Kumpera-Rubin charts, curve prolongation and RVT coding of tower points.

Conventions
-----------
At each tower level the rank-3 distribution carries a chart coframe of three
coordinate differentials, listed in priority order::

    (previous denominator form, du_k, dv_k)

Directions, hyperplane normals and frame computations all use coordinates
with respect to this triple. Climbing one level means choosing the first
coframe form that is nonzero on the direction being centered (the chart
*denominator*, index 0, 1 or 2) and taking the two remaining ratios, in
priority order, as the new fiber coordinates ``u_{k+1}, v_{k+1}``. The new
coframe is then ``(denominator form, du_{k+1}, dv_{k+1})``.

Critical hyperplanes are stored as linear functionals on the coframe, so
membership of a direction is a single exact dot product. The vertical plane
(tangent to the fiber) is always the functional ``(1, 0, 0)``. Prolonging a
hyperplane through a direction contained in it keeps the two coefficients
other than the chart denominator's:

    denominator 0: (a, b, c) -> (0, b, c)
    denominator 1: (a, b, c) -> (0, a, c)
    denominator 2: (a, b, c) -> (0, a, b)

which is the plane spanned by the tautological lift of the direction and the
tangent line to the projectivized kernel inside the new fiber.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .curves import CurveGerm
from .errors import DomainError, InsufficientTruncation
from .series import DEFAULT_TRUNC, Rational, TruncSeries, _as_fraction

Direction = tuple[Fraction, Fraction, Fraction]
RVTWord = tuple[str, ...]

LETTERS = ("R", "V", "T", "L", "T1", "T2", "L1", "L2", "L3")


def _as_direction(direction: Sequence[Rational]) -> Direction:
    if len(direction) != 3:
        raise DomainError("a direction needs exactly 3 chart-frame coordinates")
    d = tuple(_as_fraction(v) for v in direction)
    if all(v == 0 for v in d):
        raise DomainError("the zero direction cannot be classified")
    return d  # type: ignore[return-value]


@dataclass(frozen=True)
class CriticalHyperplane:
    """Critical hyperplane delta^age_birth, as a functional on the coframe."""

    birth_level: int
    age: int
    normal: Direction

    def __post_init__(self):
        if all(v == 0 for v in self.normal):
            raise DomainError("hyperplane normal must be nonzero")

    @property
    def is_vertical(self) -> bool:
        return self.age == 0

    def contains(self, direction: Sequence[Rational]) -> bool:
        d = _as_direction(direction)
        return sum(n * v for n, v in zip(self.normal, d)) == 0

    def kernel_span(self) -> tuple[Direction, Direction]:
        """Two independent frame vectors spanning the kernel."""
        a, b, c = self.normal
        vecs = []
        for probe in ((Fraction(1), Fraction(0), Fraction(0)),
                      (Fraction(0), Fraction(1), Fraction(0)),
                      (Fraction(0), Fraction(0), Fraction(1))):
            coeff = a * probe[0] + b * probe[1] + c * probe[2]
            if coeff == 0:
                vecs.append(probe)
        if len(vecs) == 2:
            return vecs[0], vecs[1]
        # generic normal: complete by cross-product style elimination
        if a != 0:
            return ((-b / a, Fraction(1), Fraction(0)),
                    (-c / a, Fraction(0), Fraction(1)))
        if b != 0:
            return ((Fraction(1), -a / b, Fraction(0)),
                    (Fraction(0), -c / b, Fraction(1)))
        return ((Fraction(1), Fraction(0), Fraction(0)),
                (Fraction(0), Fraction(1), Fraction(0)))


def vertical_plane(level: int) -> CriticalHyperplane:
    return CriticalHyperplane(level, 0, (Fraction(1), Fraction(0), Fraction(0)))


Arrangement = tuple[CriticalHyperplane, ...]


@dataclass(frozen=True)
class TowerPoint:
    """Point of the tower: level, chart path, exact coordinates, arrangement.

    Build through :func:`make_point`, :func:`point_above` or
    :func:`prolong_curve`; the arrangement is derived data.
    """

    level: int
    chart: tuple[int, ...]
    coords: tuple[Fraction, ...]
    arrangement: Arrangement

    def fiber_coords(self, j: int) -> tuple[Fraction, Fraction]:
        """The pair (u_j, v_j), 1-indexed by level."""
        if not 1 <= j <= self.level:
            raise DomainError(f"no fiber coordinates at level {j}")
        base = 3 + 2 * (j - 1)
        return self.coords[base], self.coords[base + 1]

    def same_point(self, other: "TowerPoint") -> bool:
        return (self.level == other.level and self.chart == other.chart
                and self.coords == other.coords)


def _step_direction(d: int, u: Fraction, v: Fraction) -> Direction:
    """Direction centered by a chart step with fiber coordinates (u, v)."""
    if d == 0:
        return (Fraction(1), u, v)
    if d == 1:
        return (u, Fraction(1), v)
    return (u, v, Fraction(1))


def _prolong_normal(normal: Direction, d: int) -> Direction:
    a, b, c = normal
    if d == 0:
        return (Fraction(0), b, c)
    if d == 1:
        return (Fraction(0), a, c)
    return (Fraction(0), a, b)


def prolong_hyperplane(plane: CriticalHyperplane,
                       direction: Sequence[Rational],
                       q: "TowerPoint") -> CriticalHyperplane:
    """Prolong a critical hyperplane through a direction contained in it.

    ``q`` is the point one level up centered on ``direction``; its last chart
    index fixes how the coframe is renamed.
    """
    dirn = _as_direction(direction)
    if not plane.contains(dirn):
        raise DomainError(
            "direction is not inside the hyperplane; its baby monster "
            "does not pass through the new point")
    if q.level < 1:
        raise DomainError("target point must live at level >= 1")
    d = q.chart[-1]
    return CriticalHyperplane(plane.birth_level, plane.age + 1,
                              _prolong_normal(plane.normal, d))


def _next_arrangement(parent: Arrangement, direction: Direction,
                      d: int, new_level: int) -> Arrangement:
    planes = [vertical_plane(new_level)]
    for plane in parent:
        if plane.contains(direction):
            planes.append(CriticalHyperplane(plane.birth_level, plane.age + 1,
                                             _prolong_normal(plane.normal, d)))
    return tuple(planes)


def _classify(arrangement: Arrangement, direction: Direction) -> str:
    containing = [h for h in arrangement if h.contains(direction)]
    if not containing:
        return "R"
    vertical = [h for h in containing if h.is_vertical]
    tangent = [h for h in containing if not h.is_vertical]
    all_tangent = sorted((h for h in arrangement if not h.is_vertical),
                         key=lambda h: -h.birth_level)
    refined = len(all_tangent) >= 2
    if len(containing) == 1:
        if vertical:
            return "V"
        if not refined:
            return "T"
        return "T1" if containing[0] == all_tangent[0] else "T2"
    if len(containing) > 2:
        raise AssertionError("three critical hyperplanes share a direction")
    if vertical and tangent:
        if not refined:
            return "L"
        return "L1" if tangent[0] == all_tangent[0] else "L2"
    return "L3"


def classify_direction(p: TowerPoint, direction: Sequence[Rational]) -> str:
    """Letter of a direction inside the distribution at ``p``.

    R when it avoids every critical hyperplane, V when only the vertical
    contains it, T/T1/T2 for a single tangency plane, L/L1/L2/L3 for an
    intersection line of two planes.
    """
    return _classify(p.arrangement, _as_direction(direction))


def _reconstruct(level: int, chart: Sequence[int],
                 coords: Sequence[Fraction]) -> tuple[Arrangement, tuple[str, ...]]:
    arrangement: Arrangement = ()
    letters: list[str] = []
    for j in range(1, level + 1):
        d = chart[j - 1]
        u, v = coords[3 + 2 * (j - 1)], coords[4 + 2 * (j - 1)]
        direction = _step_direction(d, u, v)
        letters.append(_classify(arrangement, direction))
        arrangement = _next_arrangement(arrangement, direction, d, j)
    return arrangement, tuple(letters)


def make_point(level: int, chart: Sequence[int],
               coords: Sequence[Rational]) -> TowerPoint:
    """Validate and assemble a tower point, recomputing its arrangement."""
    if level < 0:
        raise DomainError("level must be non-negative")
    if len(chart) != level:
        raise DomainError(f"chart path must have {level} steps")
    if len(coords) != 3 + 2 * level:
        raise DomainError(f"a level-{level} point has {3 + 2 * level} coordinates")
    if any(d not in (0, 1, 2) for d in chart):
        raise DomainError("chart steps must be 0, 1 or 2")
    qcoords = tuple(_as_fraction(c) for c in coords)
    for j in range(1, level + 1):
        d = chart[j - 1]
        u, v = qcoords[3 + 2 * (j - 1)], qcoords[4 + 2 * (j - 1)]
        if d == 1 and u != 0:
            raise DomainError(
                f"chart step {j} uses the u-form denominator, so u_{j} must be 0")
        if d == 2 and (u != 0 or v != 0):
            raise DomainError(
                f"chart step {j} uses the v-form denominator, so u_{j} and v_{j} must be 0")
    arrangement, _ = _reconstruct(level, tuple(chart), qcoords)
    return TowerPoint(level, tuple(chart), qcoords, arrangement)


def point_letters(p: TowerPoint) -> RVTWord:
    """RVT word of the point itself (one letter per level)."""
    _, letters = _reconstruct(p.level, p.chart, p.coords)
    return letters


def arrangement_at(p: TowerPoint) -> Arrangement:
    """Critical hyperplanes through ``p`` (1, 2 or 3 planes for levels >= 1)."""
    return p.arrangement


def point_above(p: TowerPoint, direction: Sequence[Rational]) -> TowerPoint:
    """The point one level up centered on a direction at ``p``."""
    a, b, c = _as_direction(direction)
    if a != 0:
        d, u, v = 0, b / a, c / a
    elif b != 0:
        d, u, v = 1, a / b, c / b
    else:
        d, u, v = 2, a / c, b / c
    return make_point(p.level + 1, p.chart + (d,), p.coords + (u, v))


def project_point(p: TowerPoint, i: int) -> TowerPoint:
    """Projection pi_{k,i} down to level ``i``."""
    if not 0 <= i <= p.level:
        raise DomainError(f"cannot project a level-{p.level} point to level {i}")
    if i == p.level:
        return p
    return make_point(i, p.chart[:i], p.coords[:3 + 2 * i])


# -- curve prolongation ----------------------------------------------------


@dataclass(frozen=True)
class ProlongedCurve:
    """A curve germ prolonged ``level`` times, with all coordinate series."""

    curve: CurveGerm
    level: int
    chart: tuple[int, ...]
    series: tuple[TruncSeries, ...]
    letters: RVTWord
    point: TowerPoint

    def fiber_series(self, j: int) -> tuple[TruncSeries, TruncSeries]:
        if not 1 <= j <= self.level:
            raise DomainError(f"no fiber series at level {j}")
        return self.series[3 + 2 * (j - 1)], self.series[4 + 2 * (j - 1)]


def active_indices(chart: Sequence[int]) -> tuple[int, int, int]:
    """Indices (into the coordinate list) of the top-level chart triple."""
    idx = (0, 1, 2)
    for j, d in enumerate(chart, start=1):
        idx = (idx[d], 3 + 2 * (j - 1), 4 + 2 * (j - 1))
    return idx


def _direction_of(derivs: Sequence[TruncSeries], level: int) -> tuple[Direction, int]:
    """Limit direction of a derivative triple after cancelling t^m."""
    finite = [s.order() for s in derivs if s.order() is not None]
    if not finite:
        raise InsufficientTruncation(
            f"direction undetermined at level {level}: all derivative "
            "components vanish up to truncation")
    m = min(finite)
    comps = []
    for s in derivs:
        if not s.known(m):
            raise InsufficientTruncation(
                f"direction undetermined at level {level}: a component's "
                f"t^{m} coefficient is beyond its truncation")
        comps.append(s.coefficient(m))
    return (comps[0], comps[1], comps[2]), m


def prolong_curve(c: CurveGerm, k: int) -> ProlongedCurve:
    """Cartan-prolong a curve germ ``k`` times.

    At each level the chart denominator is picked by the priority rule from
    the limit direction of the derivative triple (common factors of t are
    cancelled before evaluating at 0, so singular parameters are fine). The
    two remaining derivative ratios become the new fiber coordinate series.
    """
    if k < 1:
        raise DomainError("prolongation level must be at least 1")
    if c.is_constant():
        raise DomainError("the constant curve cannot be prolonged")
    series: list[TruncSeries] = list(c.components)
    active: list[TruncSeries] = list(c.components)
    chart: list[int] = []
    letters: list[str] = []
    coords: list[Fraction] = [Fraction(0)] * 3
    arrangement: Arrangement = ()
    for j in range(1, k + 1):
        derivs = [s.derivative() for s in active]
        direction, _ = _direction_of(derivs, j)
        letters.append(_classify(arrangement, direction))
        d = 0 if direction[0] != 0 else (1 if direction[1] != 0 else 2)
        others = [i for i in range(3) if i != d]
        u_series = derivs[others[0]].divide(derivs[d])
        v_series = derivs[others[1]].divide(derivs[d])
        arrangement = _next_arrangement(arrangement, direction, d, j)
        chart.append(d)
        coords.extend((u_series.coefficient(0), v_series.coefficient(0)))
        series.extend((u_series, v_series))
        active = [active[d], u_series, v_series]
    point = TowerPoint(k, tuple(chart), tuple(coords), arrangement)
    return ProlongedCurve(c, k, tuple(chart), tuple(series),
                          tuple(letters), point)


def rvt_code(c: CurveGerm, k: int) -> RVTWord:
    """RVT word of length ``k`` attached to the curve's prolongation.

    The curve must realize its endpoint: the k-fold prolongation is immersed
    at t=0 (no common factor of t in the velocity) and points in a regular
    direction. Anything else is refused rather than guessed.
    """
    pc = prolong_curve(c, k)
    act = [pc.series[i] for i in active_indices(pc.chart)]
    derivs = [s.derivative() for s in act]
    direction, cancelled = _direction_of(derivs, k + 1)
    if cancelled != 0:
        raise DomainError(
            "the curve's level-%d prolongation is not immersed at t=0; "
            "it does not realize its endpoint" % k)
    if _classify(pc.point.arrangement, direction) != "R":
        raise DomainError(
            "the curve's level-%d direction is critical; it does not realize "
            "its endpoint" % k)
    return pc.letters


def word_str(word: Iterable[str]) -> str:
    return "".join(word)


def parse_word(text: str) -> RVTWord:
    letters: list[str] = []
    for ch in text:
        if ch in "RVTL":
            letters.append(ch)
        elif ch in "123":
            if not letters or letters[-1] not in ("T", "L"):
                raise DomainError(f"malformed RVT word {text!r}")
            if letters[-1] == "T" and ch == "3":
                raise DomainError(f"malformed RVT word {text!r}")
            letters[-1] += ch
        else:
            raise DomainError(f"malformed RVT word {text!r}")
    if not letters:
        raise DomainError("empty RVT word")
    word = tuple(letters)
    if word[0] != "R":
        raise DomainError("an RVT word always begins with R")
    if any(letter not in LETTERS for letter in word):
        raise DomainError(f"malformed RVT word {text!r}")
    return word


# -- realization -----------------------------------------------------------

_TANGENT_CANDIDATES: tuple[tuple[int, int], ...] = (
    (0, 0), (1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (1, -1), (-1, 1),
    (2, 3), (3, 2), (1, 3), (3, 1))


def _pick_regular_tangent(arrangement: Arrangement) -> tuple[Fraction, Fraction]:
    for s, r in _TANGENT_CANDIDATES:
        direction = (Fraction(1), Fraction(s), Fraction(r))
        if all(not h.contains(direction) for h in arrangement):
            return Fraction(s), Fraction(r)
    raise AssertionError("no regular tangent among the candidate slopes")


def realize_point(p: TowerPoint, trunc: int = DEFAULT_TRUNC,
                  tangent: tuple[Rational, Rational] | None = None,
                  fiber_tail: tuple[TruncSeries, TruncSeries] | None = None
                  ) -> CurveGerm:
    """A curve germ whose ``level``-fold prolongation hits ``p`` at t=0.

    The curve is the base projection of a formal integral curve through
    ``p`` of a frame field with regular top direction ``(1, s, r)``; solving
    the chart's contact relations downward is a term-by-term integration.
    ``tangent`` picks (s, r) explicitly, ``fiber_tail`` adds order >= 2
    perturbations to the top fiber coordinates; both default to the simplest
    deterministic choice. Only points over the origin are realizable.
    """
    if p.level < 1:
        raise DomainError("realization needs a point at level >= 1")
    if any(c != 0 for c in p.coords[:3]):
        raise DomainError("realization is supported over the origin only")
    if tangent is None:
        s, r = _pick_regular_tangent(p.arrangement)
    else:
        s, r = _as_fraction(tangent[0]), _as_fraction(tangent[1])
        direction = (Fraction(1), s, r)
        if any(h.contains(direction) for h in p.arrangement):
            raise DomainError("requested tangent is a critical direction")
    k = p.level
    index_chain = [(0, 1, 2)]
    for j, d in enumerate(p.chart, start=1):
        prev = index_chain[-1]
        index_chain.append((prev[d], 3 + 2 * (j - 1), 4 + 2 * (j - 1)))
    top = index_chain[k]
    w = TruncSeries({0: p.coords[top[0]], 1: 1}, trunc)
    u = TruncSeries({0: p.coords[top[1]], 1: s}, trunc)
    v = TruncSeries({0: p.coords[top[2]], 1: r}, trunc)
    if fiber_tail is not None:
        tail_u, tail_v = fiber_tail
        if tail_u.effective_order() < 2 or tail_v.effective_order() < 2:
            raise DomainError("fiber tails must have order >= 2")
        u = u + tail_u
        v = v + tail_v
    triple: list[TruncSeries] = [w, u, v]
    for j in range(k, 0, -1):
        d = p.chart[j - 1]
        prev = index_chain[j - 1]
        denom = triple[0]
        dden = denom.derivative()
        missing = [i for i in range(3) if i != d]
        level_below: list[TruncSeries] = [denom, denom, denom]
        level_below[d] = denom
        level_below[missing[0]] = (triple[1] * dden).integral(
            p.coords[prev[missing[0]]])
        level_below[missing[1]] = (triple[2] * dden).integral(
            p.coords[prev[missing[1]]])
        triple = level_below
    return CurveGerm(*(s.restrict(trunc) for s in triple))
