"""Wire contract and app wiring.

POST /v1/qa, /v1/convert, /v1/decontext, /v1/nli take one JSON object and
return one JSON object; /v1/<task>/batch takes {"batch": [...]} and returns
{"batch": [...]} in the same order. GET /v1/manifest lists the serving
configuration per task. Every response carries backend_id and model
strings so clients can record provenance.

Handlers are pure functions of the request payload; there is no session
state, so batch = map and concurrent requests cannot interfere.
"""

import os
from typing import Callable

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import checkpoints, mocks


class QARequest(BaseModel):
    question: str
    context: str
    meta: dict[str, str] = Field(default_factory=dict)


class ConvertRequest(BaseModel):
    question: str
    answer: str


class DecontextRequest(BaseModel):
    title: str
    sentences: list[str]
    target_index: int


class NLIRequest(BaseModel):
    premise: str
    hypothesis: str


class _MockHandler:
    model = "mock"

    def __init__(self, task: str, fn: Callable[..., dict]):
        self.task = task
        self.backend_id = f"mock-{task}"
        self._fn = fn

    def manifest(self) -> dict:
        return {
            "backend_id": self.backend_id,
            "task": self.task,
            "checkpoint": "builtin-rules",
            "decoding": {"strategy": "deterministic"},
            "max_input_length": 1_000_000,
        }

    def __call__(self, payload: dict) -> dict:
        return self._fn(**payload)


def _mock_handlers() -> dict:
    return {
        "qa": _MockHandler("qa", mocks.qa),
        "convert": _MockHandler("convert", mocks.convert),
        "decontext": _MockHandler("decontext", mocks.decontext),
        "nli": _MockHandler("nli", mocks.nli),
    }


def _checkpoint_handlers() -> dict:
    return {
        "qa": checkpoints.QACheckpoint(),
        "convert": checkpoints.ConvertCheckpoint(),
        "decontext": checkpoints.DecontextCheckpoint(),
        "nli": checkpoints.NLICheckpoint(),
    }


def create_app(mode: str | None = None) -> FastAPI:
    """Build the service; mode comes from MODELSERVER_MODE unless given."""
    mode = mode or os.environ.get("MODELSERVER_MODE", "mock")
    if mode == "mock":
        handlers = _mock_handlers()
    elif mode == "checkpoint":
        handlers = _checkpoint_handlers()
    else:
        raise ValueError(
            f"MODELSERVER_MODE must be 'mock' or 'checkpoint', got {mode!r}")

    app = FastAPI(title="modelserver", version="0.1.0")

    def respond(task: str, payload: dict) -> dict:
        handler = handlers[task]
        try:
            reply = handler(payload)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        reply["backend_id"] = handler.backend_id
        reply["model"] = handler.model
        return reply

    @app.post("/v1/qa")
    def serve_qa(request: QARequest) -> dict:
        return respond("qa", request.model_dump())

    @app.post("/v1/convert")
    def serve_convert(request: ConvertRequest) -> dict:
        return respond("convert", request.model_dump())

    @app.post("/v1/decontext")
    def serve_decontext(request: DecontextRequest) -> dict:
        return respond("decontext", request.model_dump())

    @app.post("/v1/nli")
    def serve_nli(request: NLIRequest) -> dict:
        return respond("nli", request.model_dump())

    class QABatch(BaseModel):
        batch: list[QARequest]

    class ConvertBatch(BaseModel):
        batch: list[ConvertRequest]

    class DecontextBatch(BaseModel):
        batch: list[DecontextRequest]

    class NLIBatch(BaseModel):
        batch: list[NLIRequest]

    @app.post("/v1/qa/batch")
    def serve_qa_batch(request: QABatch) -> dict:
        return {"batch": [respond("qa", r.model_dump())
                          for r in request.batch]}

    @app.post("/v1/convert/batch")
    def serve_convert_batch(request: ConvertBatch) -> dict:
        return {"batch": [respond("convert", r.model_dump())
                          for r in request.batch]}

    @app.post("/v1/decontext/batch")
    def serve_decontext_batch(request: DecontextBatch) -> dict:
        return {"batch": [respond("decontext", r.model_dump())
                          for r in request.batch]}

    @app.post("/v1/nli/batch")
    def serve_nli_batch(request: NLIBatch) -> dict:
        return {"batch": [respond("nli", r.model_dump())
                          for r in request.batch]}

    @app.get("/v1/manifest")
    def serve_manifest() -> list[dict]:
        return [handlers[task].manifest()
                for task in ("qa", "convert", "decontext", "nli")]

    return app
