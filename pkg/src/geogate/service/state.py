"""Service runtime state: config, session store, pilot log, model slot."""

from __future__ import annotations

import os
import secrets
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..difficulty import DifficultyModel, PilotRecord, default_surrogate
from ..difficulty.pilot import CSV_FIELDS, pilot_csv_text
from ..pipeline import Instance, load_index, load_instance, synthesize
from ..resources import FAMILY_TYPES, load_all_shipped

DEFAULT_TTL_SECONDS = 120.0


@dataclass(frozen=True)
class ServiceConfig:
    ttl_seconds: float = DEFAULT_TTL_SECONDS
    dataset_dir: Optional[Path] = None
    admin_token: Optional[str] = None
    pilot_log: Optional[Path] = None

    @staticmethod
    def from_env() -> "ServiceConfig":
        env = os.environ
        dataset = env.get("GEOGATE_DATASET_DIR")
        pilot = env.get("GEOGATE_PILOT_LOG")
        return ServiceConfig(
            ttl_seconds=float(env.get("GEOGATE_TTL_SECONDS",
                                      DEFAULT_TTL_SECONDS)),
            dataset_dir=Path(dataset) if dataset else None,
            admin_token=env.get("GEOGATE_ADMIN_TOKEN"),
            pilot_log=Path(pilot) if pilot else None,
        )


@dataclass
class Session:
    token: str
    instance: Instance
    issued_at: float                  # monotonic clock
    issued_wall: float                # wall clock, for audit rows
    answered: bool = False


class ServiceState:
    def __init__(self, config: ServiceConfig):
        self.config = config
        self.manifests = load_all_shipped()
        self.surrogate = default_surrogate(self.manifests)
        self.model: Optional[DifficultyModel] = None
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._pilot: list[PilotRecord] = []
        self._params_by_instance: dict[str, tuple[str, dict]] = {}
        self._served = 0
        self._answered = 0
        self._correct = 0
        self._dataset_ids: list[str] = []
        if config.dataset_dir is not None:
            index = load_index(config.dataset_dir)
            self._dataset_ids = [row["instance_id"]
                                 for row in index["instances"]]

    # -- challenge lifecycle ------------------------------------------------

    def difficulty_model(self):
        return self.model if self.model is not None else self.surrogate

    def new_session(self, family: Optional[str], bin: Optional[str]) -> Session:
        instance = self._pick_instance(family, bin)
        token = secrets.token_hex(16)              # 128-bit, single use
        session = Session(token=token, instance=instance,
                          issued_at=time.monotonic(), issued_wall=time.time())
        with self._lock:
            self._sessions[token] = session
            self._params_by_instance[instance.instance_id] = (
                instance.family, dict(instance.params))
            self._served += 1
        return session

    def _pick_instance(self, family: Optional[str],
                       bin: Optional[str]) -> Instance:
        if family is not None and family not in FAMILY_TYPES:
            raise KeyError(family)
        if self._dataset_ids and bin is None:
            iid = secrets.choice(self._dataset_ids)
            instance = load_instance(self.config.dataset_dir, iid)
            if family is None or instance.family == family:
                return instance
        fam = family or secrets.choice(FAMILY_TYPES)
        seed = secrets.randbits(62)
        model = None
        if bin is not None:
            fitted = self.model
            model = (fitted if fitted is not None
                     and fitted.supports_family(fam) else self.surrogate)
        return synthesize(fam, seed, bin=bin, model=model)

    def expired(self, session: Session) -> bool:
        return time.monotonic() - session.issued_at > self.config.ttl_seconds

    def get_session(self, token: str) -> Optional[Session]:
        with self._lock:
            return self._sessions.get(token)

    def try_answer(self, token: str) -> tuple[Optional[Session], str]:
        """Atomically claim a session for answering.

        Returns (session, status) with status one of "ok", "missing",
        "answered", "expired"."""
        with self._lock:
            session = self._sessions.get(token)
            if session is None:
                return None, "missing"
            if session.answered:
                return session, "answered"
            if self.expired(session):
                return session, "expired"
            session.answered = True
            return session, "ok"

    def record_answer(self, session: Session, respondent_id: str,
                      correct: bool, response_time_s: float) -> None:
        record = PilotRecord(session.instance.instance_id, respondent_id,
                             max(response_time_s, 1e-3), correct)
        with self._lock:
            self._pilot.append(record)
            self._answered += 1
            self._correct += correct
        if self.config.pilot_log is not None:
            self._append_pilot_row(record)

    def _append_pilot_row(self, record: PilotRecord) -> None:
        path = self.config.pilot_log
        header_needed = not path.exists() or path.stat().st_size == 0
        with self._lock:
            with open(path, "a", newline="") as fh:
                if header_needed:
                    fh.write(",".join(CSV_FIELDS) + "\n")
                fh.write(f"{record.instance_id},{record.respondent_id},"
                         f"{record.response_time_s:.3f},{int(record.correct)}\n")

    # -- admin --------------------------------------------------------------

    def pilot_records(self, since: int = 0) -> list[PilotRecord]:
        """Rows from offset `since` onward (the log is append-only)."""
        with self._lock:
            return list(self._pilot[since:])

    def pilot_csv(self, since: int = 0) -> str:
        return pilot_csv_text(self.pilot_records(since))

    def params_for(self, instance_id: str) -> Optional[tuple[str, dict]]:
        with self._lock:
            return self._params_by_instance.get(instance_id)

    def stats(self) -> dict:
        with self._lock:
            return {
                "served": self._served,
                "answered": self._answered,
                "correct": self._correct,
                "open_sessions": sum(1 for s in self._sessions.values()
                                     if not s.answered),
                "model_fitted": self.model is not None,
            }
