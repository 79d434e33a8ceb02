"""Session lifecycle: selection rounds, corpus growth, persistence.

A session owns one evolutionary run. Humans submit selections; whenever the
assist schedule says so, the trained intent model takes over immediately
and selects server-side, so a client only ever observes human-turn or
finished states. Every mutation persists the whole session as one JSON
document, atomically replaced on disk.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from .evaluation import playability, report_to_json
from .evolution import Candidate, GaParams, Generation, next_generation
from .features import extract_features
from .intent import (
    AgentPolicy,
    DecisionTree,
    Label,
    TrainingSample,
    agent_select,
    preferred_centroid,
    should_agent_act,
    train,
    tree_to_json,
)
from .model import MapGenome, decode, dump_level, layout_to_json

SESSION_FORMAT = "ufg-session/1"
STATUS_ACTIVE = "active"
STATUS_FINISHED = "finished"
SELECTOR_HUMAN = "human"
SELECTOR_AGENT = "agent"


class StateError(RuntimeError):
    """Operation not allowed in the session's current lifecycle state."""


class WrongTurnError(RuntimeError):
    """A human selection arrived on a round scheduled for the agent."""


@dataclass(frozen=True)
class HistoryEntry:
    generation: int
    selector: str
    ids: tuple[int, int]

    def to_dict(self) -> dict:
        return {"generation": self.generation, "selector": self.selector, "ids": list(self.ids)}


@dataclass
class Session:
    id: str
    params: GaParams
    policy: AgentPolicy
    current: Generation
    history: list[HistoryEntry] = field(default_factory=list)
    corpus: list[TrainingSample] = field(default_factory=list)
    status: str = STATUS_ACTIVE
    tree: DecisionTree | None = None


def new_session(
    params: GaParams | None = None,
    policy: AgentPolicy | None = None,
    session_id: str | None = None,
) -> Session:
    from .evolution import init_population

    params = params or GaParams()
    policy = policy or AgentPolicy()
    return Session(
        id=session_id or uuid.uuid4().hex,
        params=params,
        policy=policy,
        current=init_population(params),
    )


def _apply_selection(session: Session, ids: tuple[int, int], selector: str) -> None:
    nxt = next_generation(session.current, ids, session.params)  # validates ids
    if selector == SELECTOR_HUMAN:
        for cand in session.current.candidates:
            label = Label.PREFERRED if cand.id in ids else Label.REJECTED
            session.corpus.append(TrainingSample(cand.features, label, session.current.index))
    session.history.append(HistoryEntry(session.current.index, selector, (ids[0], ids[1])))
    session.current = nxt
    if nxt.index >= session.params.max_iterations:
        session.status = STATUS_FINISHED


def submit_selection(session: Session, ids: tuple[int, int]) -> Session:
    """Apply a human selection, then run any scheduled agent rounds to the
    next human turn (or the end of the session)."""
    if session.status != STATUS_ACTIVE:
        raise StateError(f"session {session.id} is finished")
    if should_agent_act(session.policy, session.current.index, len(session.corpus)):
        raise WrongTurnError("this round is scheduled for the intent agent")
    _apply_selection(session, tuple(ids), SELECTOR_HUMAN)
    session.tree = train(session.corpus)
    centroid = preferred_centroid(session.corpus)
    while session.status == STATUS_ACTIVE and should_agent_act(
        session.policy, session.current.index, len(session.corpus)
    ):
        agent_ids = agent_select(session.tree, session.current, centroid)
        _apply_selection(session, agent_ids, SELECTOR_AGENT)
    return session


def export_level(session: Session, candidate_id: int) -> bytes:
    """Canonical level JSON bytes for one candidate of the current generation."""
    if not 0 <= candidate_id < len(session.current.candidates):
        raise KeyError(f"no candidate {candidate_id}")
    cand = session.current.candidates[candidate_id]
    digest = hashlib.sha256(
        json.dumps([e.to_dict() for e in session.history], sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()
    meta = {
        "session": session.id,
        "generation": session.current.index,
        "candidate": cand.id,
        "history_digest": digest,
    }
    return dump_level(cand.layout, meta)


def state_view(session: Session) -> dict:
    """Client-facing session snapshot with per-candidate layout and analysis."""
    candidates = []
    for cand in session.current.candidates:
        candidates.append(
            {
                "id": cand.id,
                "layout": layout_to_json(cand.layout),
                "features": cand.features.to_dict(),
                "playability": report_to_json(playability(cand.layout)),
                "gate_warning": cand.gate_warning,
            }
        )
    return {
        "id": session.id,
        "status": session.status,
        "turn": SELECTOR_HUMAN if session.status == STATUS_ACTIVE else STATUS_FINISHED,
        "generation": {
            "index": session.current.index,
            "parent_ids": list(session.current.parent_ids) if session.current.parent_ids else None,
            "candidates": candidates,
        },
        "history": [e.to_dict() for e in session.history],
        "params": session.params.to_dict(),
        "policy": session.policy.to_dict(),
        "corpus_size": len(session.corpus),
        "tree": tree_to_json(session.tree) if session.tree else None,
    }


def history_view(session: Session) -> dict:
    """Replayable transcript: params, policy and the full selection sequence."""
    return {
        "id": session.id,
        "params": session.params.to_dict(),
        "policy": session.policy.to_dict(),
        "status": session.status,
        "selections": [e.to_dict() for e in session.history],
    }


def replay_transcript(transcript: dict) -> Session:
    """Rebuild a session by replaying the human selections of a transcript.

    Agent rounds re-run themselves; determinism guarantees they pick the
    same candidates as the recorded run.
    """
    session = new_session(
        GaParams.from_dict(transcript["params"]),
        AgentPolicy.from_dict(transcript["policy"]),
        session_id=transcript["id"],
    )
    for entry in transcript["selections"]:
        if entry["selector"] == SELECTOR_HUMAN:
            submit_selection(session, tuple(entry["ids"]))
    return session


# ---------------------------------------------------------------------------
# persistence


def session_to_doc(session: Session) -> dict:
    return {
        "version": SESSION_FORMAT,
        "id": session.id,
        "status": session.status,
        "params": session.params.to_dict(),
        "policy": session.policy.to_dict(),
        "current": {
            "index": session.current.index,
            "parent_ids": list(session.current.parent_ids) if session.current.parent_ids else None,
            "candidates": [
                {
                    "id": cand.id,
                    "genes": [float(g) for g in cand.genome.genes],
                    "gate_warning": cand.gate_warning,
                }
                for cand in session.current.candidates
            ],
        },
        "history": [e.to_dict() for e in session.history],
        "corpus": [s.to_dict() for s in session.corpus],
    }


def session_from_doc(doc: dict) -> Session:
    if doc.get("version") != SESSION_FORMAT:
        raise ValueError(f"unknown session format {doc.get('version')!r}")
    candidates = []
    for entry in doc["current"]["candidates"]:
        genome = MapGenome.from_values(entry["genes"])
        layout = decode(genome)
        candidates.append(
            Candidate(entry["id"], genome, layout, extract_features(layout), entry["gate_warning"])
        )
    parent_ids = doc["current"]["parent_ids"]
    current = Generation(
        index=doc["current"]["index"],
        candidates=tuple(candidates),
        parent_ids=tuple(parent_ids) if parent_ids else None,
    )
    corpus = [TrainingSample.from_dict(s) for s in doc["corpus"]]
    session = Session(
        id=doc["id"],
        params=GaParams.from_dict(doc["params"]),
        policy=AgentPolicy.from_dict(doc["policy"]),
        current=current,
        history=[HistoryEntry(e["generation"], e["selector"], tuple(e["ids"])) for e in doc["history"]],
        corpus=corpus,
        status=doc["status"],
    )
    if corpus:
        session.tree = train(corpus)
    return session


class SessionStore:
    """Directory-backed store: one JSON document per session, replaced atomically."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._registry_lock = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}
        self._sessions: dict[str, Session] = {}

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(session_id, threading.Lock())

    def _path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.json"

    def _persist(self, session: Session) -> None:
        path = self._path(session.id)
        payload = json.dumps(session_to_doc(session), sort_keys=True, separators=(",", ":"))
        fd, tmp = tempfile.mkstemp(dir=self.data_dir, prefix=f".{session.id}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as handle:
                handle.write(payload)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def create(self, params: GaParams | None = None, policy: AgentPolicy | None = None) -> Session:
        session = new_session(params, policy)
        with self._lock_for(session.id):
            self._persist(session)
            with self._registry_lock:
                self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is not None:
            return session
        path = self._path(session_id)
        if not path.exists():
            raise KeyError(session_id)
        with self._lock_for(session_id):
            session = session_from_doc(json.loads(path.read_text()))
            with self._registry_lock:
                self._sessions[session_id] = session
        return session

    def submit(self, session_id: str, ids: tuple[int, int]) -> Session:
        session = self.get(session_id)
        with self._lock_for(session_id):
            submit_selection(session, ids)
            self._persist(session)
        return session

    def export(self, session_id: str, candidate_id: int) -> bytes:
        return export_level(self.get(session_id), candidate_id)

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.data_dir.glob("*.json"))
