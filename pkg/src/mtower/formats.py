"""Bit-exact JSON forms for every value the command line reads or writes.

Rationals are serialized in lowest terms with positive denominator, so
identical values always produce identical bytes; parsing rejects anything
that is not an integer or p/q literal.
"""

from __future__ import annotations

import json
from typing import Mapping

from .census import CensusReport, RvvvReport
from .curves import curve_from_obj, curve_to_obj
from .diffeo import DiffeoJet
from .errors import DomainError
from .invariants import PlanarityVerdict, Semigroup
from .jets import jet_from_obj, jet_to_obj
from .normalize import (Certificate, EquivalenceResult, JetStep, ReduceResult,
                        ReductionTrace, ReparamStep, ScaleStep, Step,
                        TraceEntry)
from .series import (TruncSeries, format_rational, parse_rational,
                     series_from_obj, series_to_obj)
from .tower import TowerPoint, make_point

__all__ = [
    "dumps", "point_to_obj", "point_from_obj", "standalone_series_to_obj",
    "standalone_series_from_obj", "diffeo_to_obj", "diffeo_from_obj",
    "trace_to_obj", "trace_from_obj", "certificate_to_obj",
    "certificate_from_obj", "semigroup_to_obj", "planarity_to_obj",
    "census_to_obj", "reduce_to_obj", "equivalence_to_obj", "rvvv_to_obj",
    "curve_to_obj", "curve_from_obj",
]


def dumps(obj: object) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- points --------------------------------------------------------------------


def point_to_obj(p: TowerPoint) -> dict:
    return {
        "level": p.level,
        "chart": list(p.chart),
        "coords": [format_rational(c) for c in p.coords],
    }


def point_from_obj(obj: Mapping[str, object]) -> TowerPoint:
    try:
        level = int(obj["level"])  # type: ignore[arg-type]
        chart = [int(d) for d in obj["chart"]]  # type: ignore[union-attr]
        coords = [parse_rational(c) for c in obj["coords"]]  # type: ignore[union-attr]
    except (KeyError, TypeError, ValueError):
        raise DomainError("point object needs level, chart and coords") from None
    return make_point(level, chart, coords)


# -- standalone series / diffeos --------------------------------------------------


def standalone_series_to_obj(s: TruncSeries) -> dict:
    return {"trunc": s.trunc, "coeffs": series_to_obj(s)}


def standalone_series_from_obj(obj: Mapping[str, object]) -> TruncSeries:
    try:
        trunc = int(obj["trunc"])  # type: ignore[arg-type]
    except (KeyError, TypeError, ValueError):
        raise DomainError("series object needs an integer 'trunc'") from None
    coeffs = obj.get("coeffs", {})
    if not isinstance(coeffs, Mapping):
        raise DomainError("series 'coeffs' must be an object")
    return series_from_obj(coeffs, trunc)


def diffeo_to_obj(phi: DiffeoJet) -> dict:
    return jet_to_obj(phi.jet)


def diffeo_from_obj(obj: Mapping[str, object]) -> DiffeoJet:
    return DiffeoJet(jet_from_obj(obj))


# -- traces and certificates --------------------------------------------------------


def _step_to_obj(step: Step) -> dict:
    if isinstance(step, ReparamStep):
        return {"kind": step.kind, "tau": standalone_series_to_obj(step.tau)}
    if isinstance(step, JetStep):
        return {"kind": step.kind, "phi": diffeo_to_obj(step.phi)}
    if isinstance(step, ScaleStep):
        return {"kind": step.kind,
                "factors": [format_rational(f) for f in step.factors]}
    raise DomainError(f"unknown step {step!r}")


def _step_from_obj(obj: Mapping[str, object]) -> Step:
    kind = obj.get("kind")
    if kind == "reparametrize":
        return ReparamStep(standalone_series_from_obj(obj["tau"]))  # type: ignore[arg-type]
    if kind == "coordinate-change":
        return JetStep(diffeo_from_obj(obj["phi"]))  # type: ignore[arg-type]
    if kind == "scale":
        factors = [parse_rational(f) for f in obj["factors"]]  # type: ignore[union-attr]
        if len(factors) != 3:
            raise DomainError("scale step needs three factors")
        return ScaleStep((factors[0], factors[1], factors[2]))
    raise DomainError(f"unknown trace step kind {kind!r}")


def trace_to_obj(trace: ReductionTrace) -> dict:
    return {"steps": [
        {**_step_to_obj(e.step),
         "before": curve_to_obj(e.before),
         "after": curve_to_obj(e.after)}
        for e in trace.entries]}


def trace_from_obj(obj: Mapping[str, object]) -> ReductionTrace:
    steps = obj.get("steps")
    if not isinstance(steps, list):
        raise DomainError("trace object needs a 'steps' list")
    entries = []
    for raw in steps:
        entries.append(TraceEntry(
            _step_from_obj(raw),
            curve_from_obj(raw["before"]),
            curve_from_obj(raw["after"])))
    return ReductionTrace(tuple(entries))


def certificate_to_obj(cert: Certificate) -> dict:
    return {
        "phi": diffeo_to_obj(cert.phi),
        "tau": standalone_series_to_obj(cert.tau),
        "verified_through": cert.verified_through,
    }


def certificate_from_obj(obj: Mapping[str, object]) -> Certificate:
    return Certificate(
        diffeo_from_obj(obj["phi"]),  # type: ignore[arg-type]
        standalone_series_from_obj(obj["tau"]),  # type: ignore[arg-type]
        int(obj["verified_through"]))  # type: ignore[arg-type]


# -- analysis results -----------------------------------------------------------------


def _poly_to_obj(poly: Mapping) -> dict:
    return {f"{i},{j},{k}": format_rational(c)
            for (i, j, k), c in sorted(poly.items())}


def semigroup_to_obj(s: Semigroup) -> dict:
    return {
        "bound": s.bound,
        "elements": list(s.elements),
        "gaps": list(s.gaps),
        "conductor": s.conductor,
        "witnesses": {str(e): _poly_to_obj(w) for e, w in sorted(s.witnesses.items())},
    }


def planarity_to_obj(v: PlanarityVerdict) -> dict:
    return {
        "kind": v.kind,
        "degree_bound": v.degree_bound,
        "order_bound": v.order_bound,
        "witness": _poly_to_obj(v.witness) if v.witness is not None else None,
        "obstruction_order": v.obstruction_order,
    }


def reduce_to_obj(r: ReduceResult) -> dict:
    return {
        "status": r.status,
        "code": r.code,
        "normal_form": list(r.normal_form) if r.normal_form else None,
        "curve": curve_to_obj(r.curve),
        "trace": trace_to_obj(r.trace),
        "notes": list(r.notes),
    }


def equivalence_to_obj(r: EquivalenceResult) -> dict:
    return {
        "kind": r.kind,
        "certificate": certificate_to_obj(r.certificate) if r.certificate else None,
        "separation": (
            {"invariant": r.separation.invariant,
             "left": r.separation.left,
             "right": r.separation.right}
            if r.separation else None),
        "notes": list(r.notes),
    }


def census_to_obj(report: CensusReport) -> dict:
    return {
        "level": report.level,
        "total": report.total,
        "classes": [
            {
                "code": r.code,
                "orbits": r.orbit_count,
                "normal_forms": [curve_to_obj(c) for c in r.representatives],
                "evidence": [
                    {"kind": e.kind, "tier": e.tier, "detail": e.detail}
                    for e in r.evidence],
            }
            for r in report.records],
    }


def rvvv_to_obj(report: RvvvReport) -> dict:
    return {
        "axis_fixed_samples": report.axis_fixed_samples,
        "scaling_images": [[format_rational(a), format_rational(b)]
                           for a, b in report.scaling_images],
        "codes": list(report.codes),
        "statement": report.statement,
        "passed": report.passed,
    }
