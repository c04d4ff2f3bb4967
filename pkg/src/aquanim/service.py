"""HTTP keyframe service.

Computes keyframe documents synchronously per request; every response is a
deterministic function of the request body. Requests above 1 MiB are
rejected.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import AquanimError, SpecError
from .render import emit_keyframes_doc, sample_frames
from .specdoc import TRANSITION_SCHEMAS, parse_spec_text, plan_from_doc

MAX_BODY_BYTES = 1 << 20


def create_app() -> FastAPI:
    app = FastAPI(title="aquanim keyframe service", docs_url=None, redoc_url=None)
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])

    @app.get("/api/v1/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/api/v1/transitions")
    def transitions() -> dict:
        return {"transitions": [
            {"kind": kind, "chart": schema["chart"], "params": schema["params"]}
            for kind, schema in TRANSITION_SCHEMAS.items()]}

    @app.post("/api/v1/keyframes")
    async def keyframes(request: Request) -> Response:
        body = await request.body()
        if len(body) > MAX_BODY_BYTES:
            return JSONResponse(status_code=413, content={
                "error": "RequestTooLarge",
                "detail": f"request body exceeds {MAX_BODY_BYTES} bytes"})
        try:
            doc = parse_spec_text(body.decode("utf-8"))
            script, cfg = plan_from_doc(doc)
            frames = sample_frames(script, cfg)
            payload = emit_keyframes_doc(frames, cfg)
        except UnicodeDecodeError:
            return JSONResponse(status_code=400, content={
                "error": "ParseError", "detail": "request body is not UTF-8"})
        except SpecError as exc:
            return JSONResponse(status_code=400, content={
                "error": type(exc).__name__, "detail": str(exc)})
        except AquanimError as exc:
            return JSONResponse(status_code=422, content={
                "error": exc.code, "detail": str(exc)})
        return Response(content=payload, media_type="application/json")

    return app


def serve(bind_address: str = "127.0.0.1", port: int = 8008) -> None:
    """Run the service until interrupted."""
    import uvicorn

    uvicorn.run(create_app(), host=bind_address, port=port, log_level="info")
