"""HTTP facade over the session store. JSON in, JSON out, no server state
beyond the store itself."""

from __future__ import annotations

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .evolution import GaParams, SelectionError
from .intent import AgentPolicy
from .session import SessionStore, StateError, WrongTurnError, history_view, state_view


class ParamsModel(BaseModel):
    seed: int = 0
    blx_alpha: float = Field(default=0.5, ge=0)
    mutation_rate: float = Field(default=0.05, ge=0, le=1)
    mutation_sigma: float = Field(default=0.1, ge=0)
    max_iterations: int = Field(default=10, ge=1)


class PolicyModel(BaseModel):
    warmup_generations: int = Field(default=3, ge=1)
    assist_ratio: float = Field(default=0.5, ge=0, le=1)


class CreateSessionRequest(BaseModel):
    params: ParamsModel = ParamsModel()
    policy: PolicyModel = PolicyModel()


class SelectionRequest(BaseModel):
    ids: list[int]


def create_app(store: SessionStore) -> FastAPI:
    app = FastAPI(title="ufg", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(KeyError)
    async def not_found(request: Request, exc: KeyError):
        return JSONResponse(status_code=404, content={"detail": f"not found: {exc}"})

    @app.exception_handler(SelectionError)
    async def bad_selection(request: Request, exc: SelectionError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(StateError)
    async def finished(request: Request, exc: StateError):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.exception_handler(WrongTurnError)
    async def wrong_turn(request: Request, exc: WrongTurnError):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionRequest | None = None):
        body = body or CreateSessionRequest()
        session = store.create(
            GaParams(**body.params.model_dump()), AgentPolicy(**body.policy.model_dump())
        )
        return {"id": session.id, "state": state_view(session)}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return state_view(store.get(session_id))

    @app.post("/sessions/{session_id}/selection")
    def post_selection(session_id: str, body: SelectionRequest):
        if len(body.ids) != 2:
            raise SelectionError(f"selection must name exactly 2 candidates, got {len(body.ids)}")
        session = store.submit(session_id, (body.ids[0], body.ids[1]))
        return state_view(session)

    @app.get("/sessions/{session_id}/export/{candidate_id}")
    def export_candidate(session_id: str, candidate_id: int):
        payload = store.export(session_id, candidate_id)
        return Response(content=payload, media_type="application/json")

    @app.get("/sessions/{session_id}/history")
    def get_history(session_id: str):
        return history_view(store.get(session_id))

    return app
