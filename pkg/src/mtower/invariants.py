"""Diffeomorphism invariants of curve germs.

Multiplicity, the value semigroup with certifying witness polynomials, the
Arnol'd-style symbol of monomial-like germs, and a bounded planarity
decision by exact rational linear algebra. Every verdict is certified only
up to its stated bound; nothing is extrapolated past the truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .curves import CurveGerm
from .errors import DomainError, InsufficientTruncation
from .jets import Mono, PolyTable
from .series import TruncSeries

#: Default certification bound for semigroups.
DEFAULT_SEMIGROUP_BOUND = 24

#: Default bounds for the planarity decision.
DEFAULT_PLANARITY_DEGREE = 7
DEFAULT_PLANARITY_ORDER = 40


def multiplicity(c: CurveGerm) -> int:
    """Minimum of the component orders."""
    orders = [s.order() for s in c.components if s.order() is not None]
    if not orders:
        raise DomainError("all components vanish up to truncation; no multiplicity")
    return min(orders)


def well_parameterized(c: CurveGerm) -> bool:
    """True when the exponents present have gcd 1 (no t -> t^d factoring)."""
    if c.is_constant():
        raise DomainError("the constant curve has no parameterization to test")
    g = 0
    for s in c.components:
        for d, _ in s.terms():
            g = gcd(g, d)
    return g == 1


# -- value semigroup ---------------------------------------------------------


@dataclass(frozen=True)
class Semigroup:
    """Orders of functions along the curve, certified up to ``bound``.

    ``witnesses`` maps each element to a polynomial (exponent triple ->
    coefficient) whose composition with the curve has exactly that order.
    """

    elements: tuple[int, ...]
    gaps: tuple[int, ...]
    bound: int
    conductor: int | None
    witnesses: Mapping[int, PolyTable]
    component_orders: tuple[int | None, int | None, int | None]

    def __contains__(self, n: int) -> bool:
        return n in set(self.elements)

    def witness_for(self, n: int) -> PolyTable:
        """Witness polynomial for ``n``, synthesized past the bound when ``n``
        decomposes as a stored element plus component orders.

        Multiplying a stored witness by a coordinate monomial adds the
        component orders exactly, so the synthesized order is certified too.
        """
        if n in self.witnesses:
            return dict(self.witnesses[n])
        orders = [(i, o) for i, o in enumerate(self.component_orders)
                  if o is not None and o > 0]
        for base in sorted(self.witnesses, reverse=True):
            mono = _order_decomposition(n - base, orders)
            if mono is not None:
                return _poly_mul_mono(self.witnesses[base], mono)
        raise DomainError(f"{n} has no certified witness up to bound {self.bound}")


def _poly_mul_mono(poly: PolyTable, mono: Mono) -> PolyTable:
    return {(m[0] + mono[0], m[1] + mono[1], m[2] + mono[2]): c
            for m, c in poly.items()}


def _order_decomposition(target: int,
                         orders: list[tuple[int, int]]) -> Mono | None:
    """Exponent triple with sum(e_i * order_i) == target, or None."""
    if target < 0:
        return None
    if target == 0:
        return (0, 0, 0)
    reachable: dict[int, Mono] = {0: (0, 0, 0)}
    for value in range(1, target + 1):
        for axis, o in orders:
            prev = reachable.get(value - o)
            if prev is not None:
                e = list(prev)
                e[axis] += 1
                reachable[value] = (e[0], e[1], e[2])
                break
    return reachable.get(target)


def poly_on_curve(poly: Mapping[Mono, Fraction], c: CurveGerm) -> TruncSeries:
    """Compose a polynomial in (x, y, z) with the curve."""
    trunc = c.trunc
    comps = [s.restrict(trunc) for s in c.components]
    cache: dict[tuple[int, int], TruncSeries] = {}

    def power(axis: int, n: int) -> TruncSeries:
        if n == 0:
            return TruncSeries({0: 1}, trunc)
        key = (axis, n)
        if key not in cache:
            cache[key] = (power(axis, n - 1) * comps[axis]).restrict(trunc)
        return cache[key]

    acc = TruncSeries.zero(trunc)
    for (i, j, k), coeff in sorted(poly.items()):
        acc = acc + (power(0, i) * power(1, j) * power(2, k)).scale(coeff)
    return acc


def _monomials_within(orders: Sequence[int | None], bound: int) -> list[Mono]:
    """Exponent triples whose composition order can reach the bound."""
    out: list[Mono] = []
    ox, oy, oz = orders
    max_i = bound // ox if ox else 0
    for i in range(max_i + 1):
        rem_i = bound - i * (ox or 0)
        max_j = rem_i // oy if oy else 0
        for j in range(max_j + 1):
            rem_j = rem_i - j * (oy or 0)
            max_k = rem_j // oz if oz else 0
            for k in range(max_k + 1):
                if i + j + k >= 1:
                    out.append((i, j, k))
    return out


def semigroup(c: CurveGerm, bound: int = DEFAULT_SEMIGROUP_BOUND) -> Semigroup:
    """Certified initial segment of the curve's value semigroup.

    All monomials that can reach the bound are composed with the curve and
    reduced by leading order with exact rational elimination; the surviving
    leading orders are the elements, and the tracked combinations are the
    witnesses. Cancellation between equal leading terms is what lets
    elements appear that no single monomial realizes.
    """
    if not well_parameterized(c):
        raise DomainError("the semigroup is defined for well-parameterized germs")
    if bound < 1:
        raise DomainError("semigroup bound must be positive")
    if bound > c.trunc:
        raise InsufficientTruncation(
            f"semigroup bound {bound} exceeds curve truncation {c.trunc}")
    orders = tuple(s.order() for s in c.components)
    usable = tuple(o if o is not None and o <= bound else None for o in orders)
    rows: list[tuple[dict[int, Fraction], PolyTable]] = []
    for mono in _monomials_within(usable, bound):
        series = poly_on_curve({mono: Fraction(1)}, c)
        vec = {d: coeff for d, coeff in series.terms() if d <= bound}
        rows.append((vec, {mono: Fraction(1)}))
    # eliminate by leading order, keeping one pivot row per order
    pivots: dict[int, tuple[dict[int, Fraction], PolyTable]] = {}
    rows.sort(key=lambda r: min(r[0]) if r[0] else bound + 1)
    for vec, wit in rows:
        while vec:
            lead = min(vec)
            if lead > bound:
                break
            if lead not in pivots:
                pivots[lead] = (vec, wit)
                break
            pvec, pwit = pivots[lead]
            factor = vec[lead] / pvec[lead]
            for d, coeff in pvec.items():
                nv = vec.get(d, Fraction(0)) - factor * coeff
                if nv == 0:
                    vec.pop(d, None)
                else:
                    vec[d] = nv
            for m, coeff in pwit.items():
                nw = wit.get(m, Fraction(0)) - factor * coeff
                if nw == 0:
                    wit.pop(m, None)
                else:
                    wit[m] = nw
    elements = tuple(sorted(pivots))
    gaps = tuple(n for n in range(1, bound + 1) if n not in pivots)
    conductor = None
    n = bound
    while n >= 1 and n in pivots:
        conductor = n
        n -= 1
    witnesses = {e: dict(w) for e, (v, w) in pivots.items()}
    return Semigroup(elements, gaps, bound, conductor, witnesses, orders)


# -- Arnol'd symbol -----------------------------------------------------------


@dataclass(frozen=True)
class ArnoldSymbol:
    """Shape [m,n], [m,n,p] or [m,(n,p)] of a monomial-like germ."""

    kind: str  # "two", "three", "paired"
    m: int
    n: int
    p: int | None = None

    def __str__(self) -> str:
        if self.kind == "two":
            return f"[{self.m},{self.n}]"
        if self.kind == "three":
            return f"[{self.m},{self.n},{self.p}]"
        return f"[{self.m},({self.n},{self.p})]"


def arnold_symbol(c: CurveGerm) -> ArnoldSymbol:
    """Detect the symbol from the exponent support of the components.

    Components are taken in increasing order of their leading exponents;
    coefficients are irrelevant (scalings are equivalences). Shapes outside
    the three recognized ones are refused.
    """
    comps = sorted((s for s in c.components if not s.is_zero()),
                   key=lambda s: s.order())
    if len(comps) < 2:
        raise DomainError("no symbol detected within truncation")
    supports = [sorted(d for d, _ in s.terms()) for s in comps]
    m = supports[0][0]
    n = supports[1][0]
    if not m < n:
        raise DomainError("no symbol detected within truncation")
    if len(comps) == 3:
        p = supports[2][0]
        if n < p and _clean_through(supports[0], p, {m}) \
                and _clean_through(supports[1], p, {n}) \
                and _clean_through(supports[2], p, {p}):
            return ArnoldSymbol("three", m, n, p)
        raise DomainError("no symbol detected within truncation")
    second = supports[1]
    extras = [d for d in second if d != n]
    if not extras:
        if _clean_through(supports[0], n, {m}):
            return ArnoldSymbol("two", m, n)
        raise DomainError("no symbol detected within truncation")
    p = extras[0]
    if _clean_through(supports[0], p, {m}) and _clean_through(second, p, {n, p}):
        return ArnoldSymbol("paired", m, n, p)
    if _clean_through(supports[0], n, {m}) and all(d > n for d in extras):
        return ArnoldSymbol("two", m, n)
    raise DomainError("no symbol detected within truncation")


def _clean_through(support: Iterable[int], limit: int, allowed: set[int]) -> bool:
    return all(d in allowed or d > limit for d in support)


# -- planarity ------------------------------------------------------------------


@dataclass(frozen=True)
class PlanarityVerdict:
    """Outcome of the bounded planarity decision.

    ``kind`` is "planar-witness" (with a defining function whose composition
    with the curve vanishes past the order bound), "obstructed" (no function
    with nonzero linear part can do so within the degree bound; the minimal
    order forcing this is reported), or "undetermined" (bounds exceed what
    the truncation can certify).
    """

    kind: str
    degree_bound: int
    order_bound: int
    witness: PolyTable | None = None
    obstruction_order: int | None = None


def _nullspace_with_linear_part(rows: list[dict[int, Fraction]],
                                monos: list[Mono]) -> PolyTable | None:
    """Solve rows . f = 0; return a solution with nonzero linear part."""
    ncols = len(monos)
    # row-reduce the (equations x unknowns) matrix, then read one null
    # vector per free column and test its linear part
    eqs = [[row.get(i, Fraction(0)) for i in range(ncols)] for row in rows]
    pivot_of_col: dict[int, int] = {}
    r = 0
    for col in range(ncols):
        sel = None
        for i in range(r, len(eqs)):
            if eqs[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        eqs[r], eqs[sel] = eqs[sel], eqs[r]
        lead = eqs[r][col]
        eqs[r] = [v / lead for v in eqs[r]]
        for i in range(len(eqs)):
            if i != r and eqs[i][col] != 0:
                f = eqs[i][col]
                eqs[i] = [a - f * b for a, b in zip(eqs[i], eqs[r])]
        pivot_of_col[col] = r
        r += 1
    linear_cols = [i for i, m in enumerate(monos) if sum(m) == 1]
    for free in range(ncols):
        if free in pivot_of_col:
            continue
        vec = {free: Fraction(1)}
        for col, row in pivot_of_col.items():
            val = -eqs[row][free]
            if val != 0:
                vec[col] = val
        if any(vec.get(i, 0) != 0 for i in linear_cols):
            return {monos[i]: v for i, v in vec.items() if v != 0}
    return None


def planarity(c: CurveGerm,
              degree_bound: int = DEFAULT_PLANARITY_DEGREE,
              order_bound: int = DEFAULT_PLANARITY_ORDER) -> PlanarityVerdict:
    """Look for a local defining function vanishing along the curve.

    Searches f built from monomials of total degree <= ``degree_bound`` with
    df(0) != 0 and ord(f o c) > ``order_bound`` by exact linear algebra.
    A found witness is re-verified by substitution. When no such f exists
    the verdict reports the smallest order bound that already obstructs.
    """
    if not well_parameterized(c):
        raise DomainError("planarity is decided for well-parameterized germs")
    if order_bound > c.trunc:
        return PlanarityVerdict("undetermined", degree_bound, order_bound)
    monos = [(i, j, k)
             for total in range(1, degree_bound + 1)
             for i in range(total + 1)
             for j in range(total + 1 - i)
             for k in (total - i - j,)]
    monos.sort(key=lambda m: (sum(m), m))
    columns: list[TruncSeries] = [poly_on_curve({m: Fraction(1)}, c) for m in monos]
    rows = []
    for order in range(1, order_bound + 1):
        rows.append({i: s.coefficient(order) for i, s in enumerate(columns)
                     if s.coefficient(order) != 0})
    witness = _nullspace_with_linear_part(rows, monos)
    if witness is not None:
        composed = poly_on_curve(witness, c)
        if not (composed.order() is None or composed.order() > order_bound):
            raise AssertionError("planarity witness failed re-verification")
        return PlanarityVerdict("planar-witness", degree_bound, order_bound,
                                witness=witness)
    lo, hi = 1, order_bound
    while lo < hi:
        mid = (lo + hi) // 2
        if _nullspace_with_linear_part(rows[:mid], monos) is None:
            hi = mid
        else:
            lo = mid + 1
    return PlanarityVerdict("obstructed", degree_bound, order_bound,
                            obstruction_order=lo)
