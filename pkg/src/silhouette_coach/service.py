"""HTTP surface for the coaching engine.

JSON everywhere except frame uploads, which are raw PNG bodies, and
template masks, which are served as PNG for UI overlay. Sessions live in
memory; each session's mutations are serialized by a per-session lock.
"""

from __future__ import annotations

import threading
import uuid

from fastapi import FastAPI, HTTPException, Request, Response
from pydantic import BaseModel, Field

from . import pngio
from .errors import (
    CoachError,
    DimensionMismatch,
    OutOfBounds,
    UnknownRoutine,
    UnknownTemplate,
    WrongPhase,
)
from .masks import GuideRect
from .session import Phase, Session, SessionConfig, start_session
from .template_store import TemplateStore, builtin_store


class GuideRectModel(BaseModel):
    x: int = Field(ge=0)
    y: int = Field(ge=0)
    w: int = Field(gt=0)
    h: int = Field(gt=0)


class SessionConfigModel(BaseModel):
    pass_threshold: float = Field(default=0.8, ge=0.0, le=1.0)
    max_attempts_per_template: int = Field(default=3, ge=1)


class CreateSessionRequest(BaseModel):
    routine: str
    guide: GuideRectModel
    config: SessionConfigModel = SessionConfigModel()


class CreateSessionResponse(BaseModel):
    session_id: str


class FrameFeedbackModel(BaseModel):
    alpha: float
    display_score: int
    passed: bool
    advanced: bool
    next_sequence: int | None
    session_finished: bool
    subject_detected: bool


class SessionSummaryModel(BaseModel):
    session_id: str
    routine: str
    phase: str
    current_sequence: int
    current_template_id: str | None
    template_count: int
    guide: GuideRectModel
    best_alphas: dict[int, float]


class SessionReportModel(BaseModel):
    routine: str
    best_alphas: list[float]
    passed: list[bool]
    display_scores: list[int]
    game_score: float


class RoutineModel(BaseModel):
    name: str
    template_count: int
    template_ids: list[str]


class _SessionSlot:
    def __init__(self, session: Session):
        self.session = session
        self.lock = threading.Lock()


def create_app(
    store: TemplateStore | None = None,
    default_config: SessionConfig = SessionConfig(),
) -> FastAPI:
    store = store if store is not None else builtin_store()
    app = FastAPI(title="silhouette-coach")
    from fastapi.middleware.cors import CORSMiddleware

    # The browser client is typically served from a different origin.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, _SessionSlot] = {}
    registry_lock = threading.Lock()

    def error_response(status: int, exc: Exception) -> HTTPException:
        return HTTPException(
            status_code=status,
            detail={"error": type(exc).__name__, "detail": str(exc)},
        )

    def get_slot(session_id: str) -> _SessionSlot:
        with registry_lock:
            slot = sessions.get(session_id)
        if slot is None:
            raise HTTPException(
                status_code=404,
                detail={"error": "UnknownSession", "detail": f"no session {session_id!r}"},
            )
        return slot

    @app.exception_handler(CoachError)
    async def coach_error_handler(request: Request, exc: CoachError):
        from fastapi.responses import JSONResponse

        status = 400
        if isinstance(exc, (UnknownRoutine, UnknownTemplate)):
            status = 404
        elif isinstance(exc, WrongPhase):
            status = 409
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/routines", response_model=list[RoutineModel])
    def list_routines():
        return [
            RoutineModel(
                name=r.name,
                template_count=len(r.templates),
                template_ids=[t.id for t in r.templates],
            )
            for r in store.routines
        ]

    @app.get("/templates/{template_id}/mask.png")
    def template_mask(template_id: str):
        tpl = store.template(template_id)
        return Response(content=pngio.encode_mask(tpl.mask), media_type="image/png")

    @app.post("/sessions", response_model=CreateSessionResponse, status_code=201)
    def create_session(req: CreateSessionRequest):
        config = SessionConfig(
            pass_threshold=req.config.pass_threshold,
            max_attempts_per_template=req.config.max_attempts_per_template,
            diff_threshold=default_config.diff_threshold,
            clean_radius=default_config.clean_radius,
        )
        guide = GuideRect(x=req.guide.x, y=req.guide.y, w=req.guide.w, h=req.guide.h)
        try:
            session = start_session(store, req.routine, guide, config)
        except (ValueError, DimensionMismatch, OutOfBounds) as exc:
            raise error_response(400, exc)
        session_id = uuid.uuid4().hex
        with registry_lock:
            sessions[session_id] = _SessionSlot(session)
        return CreateSessionResponse(session_id=session_id)

    @app.post("/sessions/{session_id}/background", status_code=204)
    async def submit_background(session_id: str, request: Request):
        slot = get_slot(session_id)
        frame = pngio.decode_gray(await request.body())
        with slot.lock:
            slot.session.submit_background(frame)
        return Response(status_code=204)

    @app.post("/sessions/{session_id}/frame", response_model=FrameFeedbackModel)
    async def submit_frame(session_id: str, request: Request):
        slot = get_slot(session_id)
        frame = pngio.decode_gray(await request.body())
        with slot.lock:
            fb = slot.session.submit_frame(frame)
        return FrameFeedbackModel(**fb.__dict__)

    @app.get("/sessions/{session_id}", response_model=SessionSummaryModel)
    def session_summary(session_id: str):
        slot = get_slot(session_id)
        with slot.lock:
            s = slot.session
            return SessionSummaryModel(
                session_id=session_id,
                routine=s.routine.name,
                phase=s.phase.value,
                current_sequence=s.current_sequence,
                current_template_id=(
                    s.current_template.id if s.phase != Phase.FINISHED else None
                ),
                template_count=s.template_count,
                guide=GuideRectModel(
                    x=s.guide.x, y=s.guide.y, w=s.guide.w, h=s.guide.h
                ),
                best_alphas=dict(s.best_alphas),
            )

    @app.get("/sessions/{session_id}/report", response_model=SessionReportModel)
    def session_report(session_id: str):
        slot = get_slot(session_id)
        with slot.lock:
            rep = slot.session.report()
        return SessionReportModel(
            routine=rep.routine,
            best_alphas=rep.best_alphas,
            passed=rep.passed,
            display_scores=rep.display_scores,
            game_score=rep.game_score,
        )

    return app
