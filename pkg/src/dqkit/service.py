"""HTTP/JSON API backing the browser explorer.

Stateless except for an in-memory scored-dataset registry; evaluation and
model choice are pure functions of the request, so identical bodies produce
identical responses.
"""
from __future__ import annotations

import threading
import uuid

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, field_validator, model_validator

from . import roc, solver
from .ingest import CsvFormatError, parse_scored_csv
from .roc import DEFAULT_GRID_N, RocCurve, ScoredDataset

DEFAULT_SIZE_CAP = 10 * 1024 * 1024


class _Registry:
    def __init__(self):
        self._lock = threading.Lock()
        self._datasets: dict[str, ScoredDataset] = {}

    def add(self, data: ScoredDataset) -> str:
        handle = uuid.uuid4().hex[:12]
        with self._lock:
            self._datasets[handle] = data
        return handle

    def get(self, handle: str) -> ScoredDataset | None:
        with self._lock:
            return self._datasets.get(handle)


class UtilityIn(BaseModel):
    p: float
    v_tp: float
    v_fp: float
    v_tn: float
    v_fn: float

    @field_validator("p")
    @classmethod
    def _p_open_interval(cls, v: float) -> float:
        if not (0.0 < v < 1.0):
            raise ValueError("p must be strictly inside (0, 1)")
        return v

    def to_model(self) -> roc.UtilityModel:
        return roc.UtilityModel(self.p, self.v_tp, self.v_fp, self.v_tn, self.v_fn)


class CurvePointIn(BaseModel):
    threshold: float | None = None
    fpr: float = Field(ge=0.0, le=1.0)
    tpr: float = Field(ge=0.0, le=1.0)


class EvaluateRequest(BaseModel):
    dataset_id: str | None = None
    curve: list[CurvePointIn] | None = None
    utility: UtilityIn
    grid_n: int = Field(default=DEFAULT_GRID_N, ge=2)

    @model_validator(mode="after")
    def _one_source(self):
        if (self.dataset_id is None) == (self.curve is None):
            raise ValueError("provide exactly one of dataset_id or curve")
        return self


class OptionIn(BaseModel):
    name: str
    dataset_id: str | None = None
    curve: list[CurvePointIn] | None = None
    cost: float = Field(default=0.0, ge=0.0)

    @model_validator(mode="after")
    def _one_source(self):
        if (self.dataset_id is None) == (self.curve is None):
            raise ValueError("provide exactly one of dataset_id or curve")
        return self


class ChooseRequest(BaseModel):
    options: list[OptionIn] = Field(default_factory=list)
    utility: UtilityIn
    n_cases: int = Field(ge=0)


def create_app(
    size_cap: int = DEFAULT_SIZE_CAP,
    cors_origins: tuple[str, ...] = ("*",),
    static_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="dqkit", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    registry = _Registry()

    def resolve_curve(dataset_id: str | None, points: list[CurvePointIn] | None) -> RocCurve:
        if dataset_id is not None:
            data = registry.get(dataset_id)
            if data is None:
                raise HTTPException(status_code=404, detail=f"unknown dataset {dataset_id!r}")
            if data.is_single_class:
                raise HTTPException(status_code=422, detail="dataset has a single class")
            return roc.build_roc(data)
        return roc.curve_from_report_points([pt.model_dump() for pt in points])

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/datasets")
    async def upload_dataset(request: Request):
        body = await request.body()
        if len(body) > size_cap:
            raise HTTPException(status_code=413, detail=f"body exceeds {size_cap} bytes")
        try:
            text = body.decode("utf-8")
        except UnicodeDecodeError:
            raise HTTPException(status_code=400, detail="body is not UTF-8 text") from None
        try:
            data = parse_scored_csv(text)
        except CsvFormatError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        handle = registry.add(data)
        scores = [s for s, _ in data.cases]
        return {
            "id": handle,
            "summary": {
                "positive_count": data.positive_count,
                "negative_count": data.negative_count,
                "score_min": min(scores),
                "score_max": max(scores),
            },
        }

    @app.post("/api/evaluate")
    def evaluate(req: EvaluateRequest):
        curve = resolve_curve(req.dataset_id, req.curve)
        report = roc.analysis_report(curve, req.utility.to_model(), req.grid_n)
        return JSONResponse(content=report)

    @app.post("/api/choose")
    def choose(req: ChooseRequest):
        u = req.utility.to_model()
        names = ["status-quo"] + [opt.name for opt in req.options]
        if len(set(names)) != len(names):
            raise HTTPException(status_code=422, detail="option names must be distinct ('status-quo' is reserved)")
        options: list[solver.OptionSpec] = [
            ("status-quo", roc.evaluate_option(None, u, req.n_cases), 0.0)
        ]
        for opt in req.options:
            curve = resolve_curve(opt.dataset_id, opt.curve)
            options.append((opt.name, roc.evaluate_option(curve, u, req.n_cases), opt.cost))
        choice = solver.choose_model(options)
        return JSONResponse(content=solver.investment_choice_to_dict(choice))

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="explorer")
    return app
