"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 non-generic configuration.
Payloads are identical to the HTTP service's for the same logical input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import api
from .catalog import CatalogConstraintError, CatalogParseError
from .diagram import DegeneracyError


def _read_spec(value: str):
    """Catalog expression, or path to a JSON document."""
    if os.path.exists(value):
        with open(value) as fh:
            return json.load(fh)
    return value


def _emit(data, out_path: str | None):
    text = json.dumps(data, sort_keys=True, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _analyze_text_summary(result: dict) -> str:
    lines = []
    verdict = result.get("verdict", {})
    label = result.get("catalog_label")
    head = f"verdict: {verdict.get('result', '?')}"
    if label:
        head = f"{label}  {head}"
    if verdict.get("witness_class"):
        head += f" (witness {verdict['witness_class']})"
    lines.append(head)
    for cls in result.get("classes", []):
        sup = ",".join(str(c) for c in cls["support"])
        name = "diagonal-H0" if cls["diagonal"] else f"H{cls['degree']}[{sup}]"
        caps = []
        for cap in ("c+", "c-", "C+", "C-"):
            st = cls[cap]
            if st["status"] == "forced-zero":
                caps.append(f"{cap}=0")
            elif st["status"] == "forced-value":
                caps.append(f"{cap}={st['value']:g}")
            else:
                cands = ",".join(f"{v:g}" for v in st.get("candidates", []))
                caps.append(f"{cap}?{{{cands}}}")
        lines.append(f"  {name}: " + "  ".join(caps))
    rows = result.get("morse_table", {}).get("rows", [])
    if rows:
        lines.append("  critical data:")
        for r in rows:
            lines.append(
                f"    {r['source']}[{r['branch']}] {r['location'] or '-'} "
                f"offset={r['offset']} value={r['value']}"
            )
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="slicelab",
        description="Slice diagrams of flat-at-infinity planar Lagrangians: "
        "obstruction analysis and numerical slicing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="capacity analysis of a catalog shape or diagram")
    p.add_argument("diagram", help="catalog expression (e.g. '8+(1)') or diagram.json path")
    p.add_argument("--json", action="store_true", help="emit the full JSON payload")
    p.add_argument("--svg", metavar="PATH", help="also render the diagram to an SVG file")
    p.add_argument("--no-slice-assumption", action="store_true",
                   help="report conditional capacities without the negative-slice axioms")
    p.add_argument("--connect-sum", metavar="SPEC",
                   help="analyze realizability of (diagram + SPEC) as a connect-sum slice")
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("slice", help="slice a generating family at one level")
    p.add_argument("--family", required=True, help="family JSON path or preset name")
    p.add_argument("--level", required=True, type=float)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--svg", metavar="PATH")
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("sweep", help="classify slices across a level range")
    p.add_argument("--family", required=True)
    p.add_argument("--from", dest="a_lo", required=True, type=float)
    p.add_argument("--to", dest="a_hi", required=True, type=float)
    p.add_argument("--steps", type=int, default=24)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--quiet", action="store_true", help="suppress progress events")
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("relation", help="obstruction check for bottom <= top")
    p.add_argument("--bottom", required=True)
    p.add_argument("--top", required=True)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("oracle", help="difference-function oracle at one level")
    p.add_argument("--family", required=True)
    p.add_argument("--level", required=True, type=float)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("witness", help="numeric witness pair a < b from one family")
    p.add_argument("--family", required=True)
    p.add_argument("--bottom-level", required=True, type=float)
    p.add_argument("--top-level", required=True, type=float)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("presets", help="list shipped generating-family presets")
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8731)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static", metavar="DIR", help="also serve a static frontend")

    args = parser.parse_args(argv)

    try:
        return _dispatch(args)
    except api.InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CatalogParseError, CatalogConstraintError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except api.NON_GENERIC_ERRORS as exc:
        print(f"non-generic: {exc}", file=sys.stderr)
        return 3
    except DegeneracyError as exc:
        print(f"non-generic: {exc}", file=sys.stderr)
        return 3


def _dispatch(args) -> int:
    if args.command == "analyze":
        spec = _read_spec(args.diagram)
        request = {"analyze": spec, "assume": not args.no_slice_assumption}
        connect = _read_spec(args.connect_sum) if args.connect_sum else None
        result = api.analyze_payload(
            spec,
            assume_negative_slice=not args.no_slice_assumption,
            connect_sum=connect,
        )
        if args.svg:
            from .svg import render_svg

            with open(args.svg, "w") as fh:
                fh.write(render_svg(api.diagram_from_request(spec)))
        if args.json or args.out:
            _emit(api.envelope(request, result), args.out)
        else:
            sys.stdout.write(_analyze_text_summary(result))
        return 3 if result["verdict"]["result"] == "non-generic" else 0

    if args.command == "slice":
        spec = _read_spec(args.family)
        result = api.slice_payload(spec, args.level, args.grid)
        if args.svg:
            from .diagram import diagram_from_json_dict
            from .svg import render_svg

            with open(args.svg, "w") as fh:
                fh.write(render_svg(diagram_from_json_dict(result["diagram"])))
        _emit(api.envelope({"slice": spec, "level": args.level}, result), args.out)
        return 0

    if args.command == "sweep":
        spec = _read_spec(args.family)
        on_level = None
        if not args.quiet:
            def on_level(summary):
                sys.stderr.write(json.dumps(summary, sort_keys=True) + "\n")
                sys.stderr.flush()
        result = api.sweep_payload(
            spec, args.a_lo, args.a_hi, args.steps, args.grid, on_level=on_level
        )
        request = {
            "sweep": spec,
            "from": args.a_lo,
            "to": args.a_hi,
            "steps": args.steps,
        }
        _emit(api.envelope(request, result), args.out)
        return 0

    if args.command == "relation":
        bottom = _read_spec(args.bottom)
        top = _read_spec(args.top)
        result = api.relation_payload(bottom, top, args.strict)
        request = {"relation": [bottom, top], "strict": args.strict}
        _emit(api.envelope(request, result), args.out)
        return 0

    if args.command == "oracle":
        spec = _read_spec(args.family)
        result = api.oracle_payload(spec, args.level, args.grid)
        _emit(api.envelope({"oracle": spec, "level": args.level}, result), args.out)
        return 0

    if args.command == "witness":
        spec = _read_spec(args.family)
        result = api.witness_payload(spec, args.bottom_level, args.top_level, args.grid)
        request = {"witness": spec, "a": args.bottom_level, "b": args.top_level}
        _emit(api.envelope(request, result), args.out)
        return 0

    if args.command == "presets":
        _emit(api.envelope({"presets": True}, api.presets_payload()), args.out)
        return 0

    if args.command == "serve":
        import uvicorn

        from .service import build_app

        app = build_app(static_dir=args.static)
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
        return 0

    raise api.InputError(f"unknown command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
