"""Shared payload builders for the CLI and the HTTP service.

Both front ends call these functions, so a given logical input produces the
identical JSON payload either way.  Every envelope carries the engine
version and a digest of the canonical input for reproducibility.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .capacities import analyze, connect_sum_analysis
from .catalog import (
    CatalogConstraintError,
    CatalogParseError,
    parse_catalog,
    realize_catalog,
)
from .cobordism import NonGenericEnd, RelationQuery, check_relation, strict_chain_bound
from .contour import DEFAULT_GRID, Grid
from .diagram import EMPTY_DIAGRAM, SliceDiagram, diagram_from_json_dict
from .families import GeneratingFamily, family_from_json_dict
from .morse import morse_table
from .oracle import compare_with_analyzer, oracle_table
from .presets import all_presets, load_preset
from .slicer import NonGenericLevel, extract_slice, sweep, witness_relation
from .version import __version__


class InputError(ValueError):
    """Malformed or constraint-violating input (exit code 2 / HTTP 400-422)."""


def _digest(obj: Any) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:16]


def envelope(input_obj: Any, result: Any) -> dict:
    return {
        "engine_version": __version__,
        "input_digest": _digest(input_obj),
        "result": result,
    }


def diagram_from_request(spec: Any) -> SliceDiagram:
    """A diagram from a catalog expression string or a diagram JSON dict."""
    if isinstance(spec, str):
        if not spec.strip():
            return EMPTY_DIAGRAM
        try:
            return realize_catalog(parse_catalog(spec))
        except CatalogParseError as exc:
            raise InputError(str(exc)) from exc
        # CatalogConstraintError propagates: well-formed but unrealisable
        # (HTTP 422 / CLI exit 2).
    if isinstance(spec, dict):
        try:
            return diagram_from_json_dict(spec)
        except Exception as exc:
            raise InputError(f"bad diagram JSON: {exc}") from exc
    raise InputError("expected a catalog expression or a diagram object")


def family_from_request(spec: Any) -> GeneratingFamily:
    """A family from JSON dict, or a preset name string."""
    if isinstance(spec, str):
        try:
            return load_preset(spec).family
        except KeyError as exc:
            raise InputError(str(exc)) from exc
    if isinstance(spec, dict):
        try:
            return family_from_json_dict(spec)
        except Exception as exc:
            raise InputError(f"bad family JSON: {exc}") from exc
    raise InputError("expected a family object or a preset name")


def render_payload(diagram: SliceDiagram) -> dict:
    """Geometry bundle for clients that draw diagrams but never compute."""
    if diagram.is_empty:
        return {"diagram": diagram.to_json_dict(), "faces": [], "crossings": []}
    faces = []
    for f in diagram.arrangement.faces:
        if not f.bounded:
            continue
        try:
            label_at = list(f.interior_point())
        except Exception:
            label_at = [float(f.polygon[:, 0].mean()), float(f.polygon[:, 1].mean())]
        faces.append({"area": float(f.true_area), "label_at": label_at})
    crossings = [
        {
            "point": list(c.point),
            "sign": c.sign,
            "over_strand": c.over_strand,
            "lifts": list(c.lifts),
            "strands": [
                {"component": s.component, "param": s.param} for s in c.strands
            ],
        }
        for c in diagram.crossings
    ]
    return {
        "diagram": diagram.to_json_dict(),
        "faces": faces,
        "crossings": crossings,
    }


def analyze_payload(
    diagram_spec: Any,
    assume_negative_slice: bool = True,
    connect_sum: Any = None,
) -> dict:
    diagram = diagram_from_request(diagram_spec)
    if connect_sum is not None:
        other = diagram_from_request(connect_sum)
        report, verdict = connect_sum_analysis(diagram, other)
        table = report.table
    else:
        report, verdict = analyze(diagram, assume_negative_slice)
        table = report.table
    result = report.to_json_dict(verdict)
    result["morse_table"] = table.to_json_dict()
    result["render"] = render_payload(diagram)
    if not diagram.is_empty:
        result["validity"] = [
            {
                "area_ok": e.area_ok,
                "winding_ok": e.winding_ok,
                "area_residual": e.area_residual,
                "winding_residual": e.winding_residual,
            }
            for e in diagram.validity_report()
        ]
        result["strict_chain_bound"] = strict_chain_bound(diagram)
        result["catalog_label"] = diagram.catalog_label
    return result


def slice_payload(family_spec: Any, level: float, grid_n: int | None = None) -> dict:
    family = family_from_request(family_spec)
    if level >= 0:
        raise InputError("level must be negative")
    if isinstance(family_spec, str) and grid_n is None:
        grid_n = load_preset(family_spec).grid
    result = extract_slice(family, level, grid_n=grid_n or DEFAULT_GRID)
    return result.to_json_dict()


def sweep_payload(
    family_spec: Any,
    a_lo: float,
    a_hi: float,
    steps: int,
    grid_n: int | None = None,
    on_level=None,
) -> dict:
    family = family_from_request(family_spec)
    if not (a_lo < a_hi < 0):
        raise InputError("need from < to < 0")
    if isinstance(family_spec, str) and grid_n is None:
        grid_n = load_preset(family_spec).grid
    result = sweep(
        family, a_lo, a_hi, steps, grid_n=grid_n or DEFAULT_GRID, on_level=on_level
    )
    return result.to_json_dict()


def relation_payload(bottom_spec: Any, top_spec: Any, strict: bool = False) -> dict:
    bottom = diagram_from_request(bottom_spec)
    top = diagram_from_request(top_spec)
    verdict = check_relation(RelationQuery(bottom, top, strict))
    return verdict.to_json_dict()


def witness_payload(
    family_spec: Any, a: float, b: float, grid_n: int | None = None
) -> dict:
    family = family_from_request(family_spec)
    if isinstance(family_spec, str) and grid_n is None:
        grid_n = load_preset(family_spec).grid
    witness = witness_relation(family, a, b, grid_n=grid_n or DEFAULT_GRID)
    return witness.to_json_dict()


def oracle_payload(family_spec: Any, level: float, grid_n: int | None = None) -> dict:
    family = family_from_request(family_spec)
    if isinstance(family_spec, str) and grid_n is None:
        grid_n = load_preset(family_spec).grid
    result = extract_slice(family, level, grid_n=grid_n or DEFAULT_GRID)
    pairs = oracle_table(family, result)
    return {
        "level": level,
        "classification": result.classification.label,
        "pairs": [p.to_json_dict() for p in pairs],
        "comparison": compare_with_analyzer(result, pairs),
    }


def presets_payload() -> dict:
    return {"presets": [p.to_json_dict() for p in all_presets()]}


NON_GENERIC_ERRORS = (NonGenericLevel, NonGenericEnd)
