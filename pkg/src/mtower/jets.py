"""Polynomial jets of maps (R^3, 0) -> R^3 with exact rational coefficients.

A :class:`PolyJet3` is a triple of polynomials in (x, y, z), each stored as a
sparse table keyed by exponent triples and truncated at a common total
degree. Jets compose, substitute into curves, and invert (when the linear
part is invertible); these are the raw moves behind the prolonged action of
diffeomorphism germs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DomainError
from .series import Rational, TruncSeries, _as_fraction

Mono = tuple[int, int, int]
PolyTable = dict[Mono, Fraction]

_ZERO = (0, 0, 0)
_AXES: tuple[Mono, ...] = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _clean(table: Mapping[Mono, Rational], degree: int) -> PolyTable:
    out: PolyTable = {}
    for mono, value in table.items():
        i, j, k = mono
        if i < 0 or j < 0 or k < 0:
            raise DomainError("monomial exponents must be non-negative")
        if i + j + k > degree:
            continue
        q = _as_fraction(value)
        if q != 0:
            out[(i, j, k)] = q
    return out


def _poly_mul(a: PolyTable, b: PolyTable, degree: int) -> PolyTable:
    out: PolyTable = {}
    for (i1, j1, k1), c1 in a.items():
        for (i2, j2, k2), c2 in b.items():
            i, j, k = i1 + i2, j1 + j2, k1 + k2
            if i + j + k > degree:
                continue
            mono = (i, j, k)
            out[mono] = out.get(mono, Fraction(0)) + c1 * c2
    return {m: c for m, c in out.items() if c != 0}


def _poly_add(a: PolyTable, b: PolyTable, scale: Fraction = Fraction(1)) -> PolyTable:
    out = dict(a)
    for mono, c in b.items():
        out[mono] = out.get(mono, Fraction(0)) + scale * c
    return {m: c for m, c in out.items() if c != 0}


def _poly_subst(poly: PolyTable, comps: Sequence[PolyTable], degree: int) -> PolyTable:
    """Substitute three polynomials for (x, y, z) in ``poly``."""
    cache: dict[tuple[int, int], PolyTable] = {}

    def power(axis: int, n: int) -> PolyTable:
        if n == 0:
            return {_ZERO: Fraction(1)}
        key = (axis, n)
        if key not in cache:
            cache[key] = _poly_mul(power(axis, n - 1), comps[axis], degree)
        return cache[key]

    out: PolyTable = {}
    for (i, j, k), c in poly.items():
        term = power(0, i)
        term = _poly_mul(term, power(1, j), degree)
        term = _poly_mul(term, power(2, k), degree)
        out = _poly_add(out, term, c)
    return out


class PolyJet3:
    """Triple of polynomials in (x, y, z), total degree capped at ``degree``."""

    __slots__ = ("_comps", "_degree")

    def __init__(self, components: Sequence[Mapping[Mono, Rational]], degree: int):
        if degree < 1:
            raise DomainError("jet degree must be at least 1")
        if len(components) != 3:
            raise DomainError("a 3-space jet needs exactly three components")
        self._degree = degree
        self._comps = tuple(_clean(c, degree) for c in components)

    # -- construction ---------------------------------------------------

    @classmethod
    def identity(cls, degree: int = 8) -> "PolyJet3":
        return cls([{_AXES[i]: 1} for i in range(3)], degree)

    @classmethod
    def diagonal(cls, a: Rational, b: Rational, c: Rational,
                 degree: int = 8) -> "PolyJet3":
        return cls([{_AXES[0]: a}, {_AXES[1]: b}, {_AXES[2]: c}], degree)

    @classmethod
    def from_linear(cls, matrix: Sequence[Sequence[Rational]],
                    degree: int = 8) -> "PolyJet3":
        comps = []
        for row in matrix:
            comps.append({_AXES[j]: row[j] for j in range(3)})
        return cls(comps, degree)

    # -- queries ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def components(self) -> tuple[PolyTable, PolyTable, PolyTable]:
        return tuple(dict(c) for c in self._comps)  # type: ignore[return-value]

    def coefficient(self, component: int, mono: Mono) -> Fraction:
        """Coefficient of x^i y^j z^k in component 1, 2 or 3."""
        if component not in (1, 2, 3):
            raise DomainError("component index must be 1, 2 or 3")
        return self._comps[component - 1].get(mono, Fraction(0))

    def constant_term(self) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(c.get(_ZERO, Fraction(0)) for c in self._comps)  # type: ignore[return-value]

    def linear_part(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(
            tuple(comp.get(_AXES[j], Fraction(0)) for j in range(3))
            for comp in self._comps)

    def linear_det(self) -> Fraction:
        m = self.linear_part()
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyJet3):
            return NotImplemented
        return self._degree == other._degree and self._comps == other._comps

    def __hash__(self) -> int:
        return hash((self._degree,
                     tuple(tuple(sorted(c.items())) for c in self._comps)))

    def __repr__(self) -> str:
        return f"PolyJet3(degree={self._degree}, comps={self._comps!r})"

    # -- operations ---------------------------------------------------------

    def compose(self, inner: "PolyJet3", degree: int | None = None) -> "PolyJet3":
        """self after inner, truncated at total degree ``degree``."""
        if any(c != 0 for c in inner.constant_term()) or \
           any(c != 0 for c in self.constant_term()):
            raise DomainError("jet composition requires both jets to fix the origin")
        deg = degree if degree is not None else min(self._degree, inner._degree)
        comps = [_poly_subst(c, inner._comps, deg) for c in self._comps]
        return PolyJet3(comps, deg)

    def substitute(self, sx: TruncSeries, sy: TruncSeries,
                   sz: TruncSeries) -> tuple[TruncSeries, TruncSeries, TruncSeries]:
        """Evaluate the jet on a triple of series vanishing at 0."""
        for s in (sx, sy, sz):
            if s.known(0) and s.coefficient(0) != 0:
                raise DomainError("curve substitution requires series vanishing at 0")
        trunc = min(sx.trunc, sy.trunc, sz.trunc)
        one = TruncSeries({0: 1}, trunc)
        cache: dict[tuple[int, int], TruncSeries] = {}
        inputs = (sx.restrict(trunc), sy.restrict(trunc), sz.restrict(trunc))

        def power(axis: int, n: int) -> TruncSeries:
            if n == 0:
                return one
            key = (axis, n)
            if key not in cache:
                cache[key] = (power(axis, n - 1) * inputs[axis]).restrict(trunc)
            return cache[key]

        out = []
        for comp in self._comps:
            acc = TruncSeries.zero(trunc)
            for (i, j, k), c in sorted(comp.items()):
                term = power(0, i) * power(1, j) * power(2, k)
                acc = acc + term.scale(c)
            out.append(acc)
        return out[0], out[1], out[2]

    def inverse(self, degree: int | None = None) -> "PolyJet3":
        """Compositional inverse up to the jet degree (Newton iteration).

        Requires an invertible linear part and zero constant term.
        """
        det = self.linear_det()
        if det == 0:
            raise DomainError("jet has singular linear part; no inverse")
        if any(c != 0 for c in self.constant_term()):
            raise DomainError("jet inverse requires a jet fixing the origin")
        deg = degree if degree is not None else self._degree
        m = self.linear_part()
        adj = [
            [m[1][1] * m[2][2] - m[1][2] * m[2][1],
             m[0][2] * m[2][1] - m[0][1] * m[2][2],
             m[0][1] * m[1][2] - m[0][2] * m[1][1]],
            [m[1][2] * m[2][0] - m[1][0] * m[2][2],
             m[0][0] * m[2][2] - m[0][2] * m[2][0],
             m[0][2] * m[1][0] - m[0][0] * m[1][2]],
            [m[1][0] * m[2][1] - m[1][1] * m[2][0],
             m[0][1] * m[2][0] - m[0][0] * m[2][1],
             m[0][0] * m[1][1] - m[0][1] * m[1][0]],
        ]
        linv = PolyJet3.from_linear(
            [[v / det for v in row] for row in adj], deg)
        ident = PolyJet3.identity(deg)
        psi = linv
        # Each pass corrects one more total degree.
        for _ in range(2, deg + 1):
            err_comps = self.compose(psi, deg)._comps
            delta = [_poly_add(err_comps[i], ident._comps[i], Fraction(-1))
                     for i in range(3)]
            corr = [_poly_subst(linv._comps[i], delta, deg) for i in range(3)]
            psi = PolyJet3(
                [_poly_add(psi._comps[i], corr[i], Fraction(-1)) for i in range(3)],
                deg)
        return psi


def jet_from_obj(obj: Mapping[str, Mapping[str, str]] | Mapping[str, object]) -> PolyJet3:
    """Build a jet from the literal JSON form.

    Format: {"degree": D, "phi1": {"i,j,k": "p/q", ...}, "phi2": ..., "phi3": ...}
    """
    from .series import parse_rational
    try:
        degree = int(obj["degree"])  # type: ignore[index,arg-type]
    except (KeyError, TypeError, ValueError):
        raise DomainError("jet object needs an integer 'degree' field") from None
    comps = []
    for name in ("phi1", "phi2", "phi3"):
        raw = obj.get(name, {})  # type: ignore[union-attr]
        table: PolyTable = {}
        for key, value in raw.items():  # type: ignore[union-attr]
            parts = key.split(",")
            if len(parts) != 3:
                raise DomainError(f"malformed jet monomial key {key!r}")
            try:
                mono = (int(parts[0]), int(parts[1]), int(parts[2]))
            except ValueError:
                raise DomainError(f"malformed jet monomial key {key!r}") from None
            table[mono] = parse_rational(value)
        comps.append(table)
    return PolyJet3(comps, degree)


def jet_to_obj(jet: PolyJet3) -> dict:
    from .series import format_rational
    out: dict = {"degree": jet.degree}
    for name, comp in zip(("phi1", "phi2", "phi3"), jet.components):
        out[name] = {f"{i},{j},{k}": format_rational(c)
                     for (i, j, k), c in sorted(comp.items())}
    return out
