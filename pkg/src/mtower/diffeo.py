"""Prolonged action of diffeomorphism germs on tower points.

The action is computed pointwise through realizing curves: to move a point,
realize it by a curve with regular top direction, push the curve through the
jet, and prolong the image back up. The result does not depend on the chosen
realizing curve, which the test suite exercises directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .curves import CurveGerm
from .errors import DomainError
from .jets import Mono, PolyJet3
from .series import DEFAULT_TRUNC, Rational, _as_fraction
from .tower import TowerPoint, point_above, prolong_curve, realize_point

#: Default total degree for diffeomorphism jets.
DEFAULT_JET_DEGREE = 8


@dataclass(frozen=True)
class DiffeoJet:
    """Jet of a diffeomorphism germ of 3-space fixing the origin."""

    jet: PolyJet3

    def __post_init__(self):
        if any(c != 0 for c in self.jet.constant_term()):
            raise DomainError("diffeomorphism germs must fix the origin")
        if self.jet.linear_det() == 0:
            raise DomainError("diffeomorphism jets need an invertible linear part")

    @classmethod
    def identity(cls, degree: int = DEFAULT_JET_DEGREE) -> "DiffeoJet":
        return cls(PolyJet3.identity(degree))

    @classmethod
    def diagonal(cls, a: Rational, b: Rational, c: Rational,
                 degree: int = DEFAULT_JET_DEGREE) -> "DiffeoJet":
        return cls(PolyJet3.diagonal(a, b, c, degree))

    @classmethod
    def from_components(cls, comps, degree: int = DEFAULT_JET_DEGREE) -> "DiffeoJet":
        return cls(PolyJet3(comps, degree))

    @property
    def degree(self) -> int:
        return self.jet.degree

    def linear_part(self):
        return self.jet.linear_part()

    def coefficient(self, component: int, mono: Mono) -> Fraction:
        """Taylor coefficient of x^i y^j z^k in one component.

        The partial derivative at 0 is this coefficient times i! j! k!.
        """
        return self.jet.coefficient(component, mono)

    def apply_to_curve(self, c: CurveGerm) -> CurveGerm:
        return c.map_jet(self.jet)

    def compose(self, other: "DiffeoJet", degree: int | None = None) -> "DiffeoJet":
        return DiffeoJet(self.jet.compose(other.jet, degree))

    def inverse(self, degree: int | None = None) -> "DiffeoJet":
        return DiffeoJet(self.jet.inverse(degree))


def prolong_apply(phi: DiffeoJet, p: TowerPoint,
                  trunc: int = DEFAULT_TRUNC) -> TowerPoint:
    """Image of ``p`` under the ``level``-fold prolongation of ``phi``."""
    if p.level == 0:
        return p  # germs fix the origin
    gamma = realize_point(p, trunc)
    image = phi.apply_to_curve(gamma)
    return prolong_curve(image, p.level).point


def isotropy_check(phi: DiffeoJet, p: TowerPoint,
                   trunc: int = DEFAULT_TRUNC) -> bool:
    """True when the prolonged jet fixes ``p`` exactly."""
    return prolong_apply(phi, p, trunc).same_point(p)


FiberDirection = tuple[Fraction, Fraction]


def fiber_action(phi: DiffeoJet, p: TowerPoint,
                 directions: Iterable[Sequence[Rational]],
                 trunc: int = DEFAULT_TRUNC) -> list[FiberDirection]:
    """Projectivized tangent action on fiber directions over a fixed point.

    Each direction is a pair (b, c) spanning b*d/du + c*d/dv inside the
    vertical plane over ``p``; the image pairs are read off the prolonged
    image points one level up.
    """
    if not isotropy_check(phi, p, trunc):
        raise DomainError("fiber_action requires a jet fixing the point")
    out: list[FiberDirection] = []
    for pair in directions:
        if len(pair) != 2:
            raise DomainError("fiber directions are (b, c) pairs")
        b, c = _as_fraction(pair[0]), _as_fraction(pair[1])
        if b == 0 and c == 0:
            raise DomainError("the zero direction cannot be acted on")
        q = point_above(p, (Fraction(0), b, c))
        q_image = prolong_apply(phi, q, trunc)
        d = q_image.chart[-1]
        u, v = q_image.fiber_coords(q_image.level)
        if d == 1:
            out.append((Fraction(1), v))
        elif d == 2:
            out.append((Fraction(0), Fraction(1)))
        else:
            raise AssertionError("image of a vertical direction left the fiber")
    return out


# -- isotropy constraint sets -------------------------------------------------


@dataclass(frozen=True)
class TaylorConstraint:
    """One vanishing Taylor coefficient: component phi^c, derivative index."""

    component: int
    index: Mono

    def __str__(self) -> str:
        names = "xyz"
        suffix = "".join(names[i] * n for i, n in enumerate(self.index))
        return f"phi{self.component}_{suffix}(0) = 0"

    def satisfied_by(self, phi: DiffeoJet) -> bool:
        return phi.coefficient(self.component, self.index) == 0


@dataclass(frozen=True)
class IsotropyConstraintSet:
    stage: str
    constraints: tuple[TaylorConstraint, ...]

    def satisfied_by(self, phi: DiffeoJet) -> bool:
        return all(c.satisfied_by(phi) for c in self.constraints)

    def __str__(self) -> str:
        return f"{self.stage}: " + ", ".join(str(c) for c in self.constraints)


_G1 = (TaylorConstraint(2, (1, 0, 0)), TaylorConstraint(3, (1, 0, 0)))
_G2 = _G1 + (TaylorConstraint(3, (0, 1, 0)),)
_G3 = _G2 + (TaylorConstraint(3, (2, 0, 0)),)

_STAGES = {"G1": _G1, "G2": _G2, "G3": _G3}


def taylor_constraints(stage: str) -> IsotropyConstraintSet:
    """Vanishing constraints cutting out the isotropy groups along the chain
    of representative points at levels 1, 2 and 3."""
    if stage not in _STAGES:
        raise DomainError("stage must be one of G1, G2, G3")
    return IsotropyConstraintSet(stage, _STAGES[stage])


# -- sampling -------------------------------------------------------------------


def rand_fraction(rng: random.Random, allow_zero: bool = True) -> Fraction:
    """Small exact rational: |numerator| <= 5, denominator <= 3."""
    while True:
        q = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        if allow_zero or q != 0:
            return q


def sample_diffeo(rng: random.Random, degree: int = 3,
                  constraints: IsotropyConstraintSet | None = None,
                  forced: dict[tuple[int, Mono], Rational] | None = None,
                  jet_degree: int = DEFAULT_JET_DEGREE) -> DiffeoJet:
    """Random diffeomorphism jet with small rational coefficients.

    ``constraints`` zeroes the named Taylor coefficients, ``forced`` pins
    specific ones afterwards; the linear part is resampled until invertible.
    """
    monos = [(i, j, k)
             for i in range(degree + 1)
             for j in range(degree + 1 - i)
             for k in range(degree + 1 - i - j)
             if 1 <= i + j + k <= degree]
    while True:
        comps: list[dict[Mono, Fraction]] = []
        for _ in range(3):
            table: dict[Mono, Fraction] = {}
            for mono in monos:
                if sum(mono) == 1 or rng.random() < 0.4:
                    table[mono] = rand_fraction(rng)
            comps.append(table)
        if constraints is not None:
            for c in constraints.constraints:
                comps[c.component - 1].pop(c.index, None)
        if forced:
            for (component, mono), value in forced.items():
                comps[component - 1][mono] = _as_fraction(value)
        jet = PolyJet3(comps, jet_degree)
        if jet.linear_det() != 0:
            return DiffeoJet(jet)
