"""Stateless HTTP service over the analysis and slicing stack.

Routes: POST /api/analyze, /api/slice, /api/sweep, /api/relation,
/api/witness, /api/oracle; GET /api/presets, /healthz.  Sweeps stream
line-delimited JSON progress events when asked to.  Every response carries
the engine version and a digest of the input.
"""

from __future__ import annotations

import json
import queue
import threading

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse, PlainTextResponse, StreamingResponse

from . import api
from .catalog import CatalogConstraintError, CatalogParseError
from .diagram import DegeneracyError


def _run(request_obj, fn, *args, **kwargs):
    try:
        result = fn(*args, **kwargs)
    except api.InputError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    except (CatalogParseError, CatalogConstraintError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except api.NON_GENERIC_ERRORS as exc:
        raise HTTPException(status_code=422, detail=f"non-generic: {exc}") from exc
    except DegeneracyError as exc:
        raise HTTPException(status_code=422, detail=f"non-generic: {exc}") from exc
    return JSONResponse(api.envelope(request_obj, result))


async def _body(request: Request) -> dict:
    try:
        data = await request.json()
    except Exception as exc:
        raise HTTPException(status_code=400, detail="malformed JSON body") from exc
    if not isinstance(data, dict):
        raise HTTPException(status_code=400, detail="expected a JSON object")
    return data


def build_app(static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="slicelab", version=api.__version__)

    @app.exception_handler(HTTPException)
    async def structured_errors(request: Request, exc: HTTPException):
        return JSONResponse(
            {
                "error": {
                    "code": exc.status_code,
                    "message": str(exc.detail),
                    "location": request.url.path,
                }
            },
            status_code=exc.status_code,
        )

    @app.get("/healthz", response_class=PlainTextResponse)
    def healthz() -> str:
        return "ok"

    @app.get("/api/presets")
    def presets():
        return JSONResponse(api.envelope({"presets": True}, api.presets_payload()))

    @app.post("/api/analyze")
    async def analyze(request: Request):
        data = await _body(request)
        spec = data.get("catalog", data.get("diagram"))
        if spec is None:
            raise HTTPException(400, "need 'catalog' or 'diagram'")
        response = _run(
            data,
            api.analyze_payload,
            spec,
            assume_negative_slice=bool(data.get("assume_negative_slice", True)),
            connect_sum=data.get("connect_sum"),
        )
        # A non-generic verdict still carries its report, but signals 422.
        body = json.loads(bytes(response.body))
        if body["result"].get("verdict", {}).get("result") == "non-generic":
            return JSONResponse(body, status_code=422)
        return response

    @app.post("/api/slice")
    async def slice_route(request: Request):
        data = await _body(request)
        spec = data.get("preset", data.get("family"))
        if spec is None or "level" not in data:
            raise HTTPException(400, "need 'family' (or 'preset') and 'level'")
        return _run(
            data, api.slice_payload, spec, float(data["level"]), data.get("grid")
        )

    @app.post("/api/relation")
    async def relation(request: Request):
        data = await _body(request)
        if "bottom" not in data or "top" not in data:
            raise HTTPException(400, "need 'bottom' and 'top'")
        return _run(
            data,
            api.relation_payload,
            data["bottom"],
            data["top"],
            bool(data.get("strict", False)),
        )

    @app.post("/api/witness")
    async def witness(request: Request):
        data = await _body(request)
        spec = data.get("preset", data.get("family"))
        if spec is None or "bottom_level" not in data or "top_level" not in data:
            raise HTTPException(400, "need 'family', 'bottom_level', 'top_level'")
        return _run(
            data,
            api.witness_payload,
            spec,
            float(data["bottom_level"]),
            float(data["top_level"]),
            data.get("grid"),
        )

    @app.post("/api/oracle")
    async def oracle(request: Request):
        data = await _body(request)
        spec = data.get("preset", data.get("family"))
        if spec is None or "level" not in data:
            raise HTTPException(400, "need 'family' and 'level'")
        return _run(
            data, api.oracle_payload, spec, float(data["level"]), data.get("grid")
        )

    @app.post("/api/sweep")
    async def sweep_route(request: Request):
        data = await _body(request)
        spec = data.get("preset", data.get("family"))
        needed = {"from", "to"}
        if spec is None or not needed.issubset(data):
            raise HTTPException(400, "need 'family', 'from', 'to'")
        a_lo = float(data["from"])
        a_hi = float(data["to"])
        steps = int(data.get("steps", 24))
        grid = data.get("grid")
        if not data.get("stream", False):
            return _run(data, api.sweep_payload, spec, a_lo, a_hi, steps, grid)

        events: queue.Queue = queue.Queue()
        DONE = object()

        def worker():
            try:
                result = api.sweep_payload(
                    spec,
                    a_lo,
                    a_hi,
                    steps,
                    grid,
                    on_level=lambda s: events.put({"event": "level", **s}),
                )
                events.put({"event": "done", **api.envelope(data, result)})
            except Exception as exc:  # surfaced in-stream; status already sent
                events.put({"event": "error", "message": str(exc)})
            events.put(DONE)

        threading.Thread(target=worker, daemon=True).start()

        def gen():
            while True:
                item = events.get()
                if item is DONE:
                    break
                yield json.dumps(item, sort_keys=True) + "\n"

        return StreamingResponse(gen(), media_type="application/x-ndjson")

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app


app = build_app()
