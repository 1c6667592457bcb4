"""HTTP routes: public solve flow plus a token-gated operator surface.

The public surface never exposes the correct answer, knob values, seeds, or
distractor kinds before a session is answered; panels are addressed through
the opaque session token only.
"""

from __future__ import annotations

import hmac
import os
import time
from pathlib import Path
from typing import Optional

from fastapi import Depends, FastAPI, Header, HTTPException, Response
from fastapi.staticfiles import StaticFiles

from ..difficulty import aggregate_pilot, fit_difficulty_model
from ..difficulty.model import CalibrationPoint
from ..manifest import ManifestError
from ..pipeline import SynthesisError, render_instance_png, synthesize
from ..resources import FAMILY_TYPES
from .models import (AnswerRequest, AnswerResponse, ChallengeRequest,
                     ChallengeResponse, CandidateView, FitRequest, FitResponse,
                     PanelView, PreviewRequest, PreviewResponse)
from .state import ServiceConfig, ServiceState


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    config = config or ServiceConfig.from_env()
    state = ServiceState(config)
    app = FastAPI(title="geogate", version="1.0")
    app.state.geogate = state

    def require_admin(x_admin_token: str = Header(default="")) -> None:
        if not config.admin_token:
            raise HTTPException(503, "admin surface is not configured")
        if not hmac.compare_digest(x_admin_token, config.admin_token):
            raise HTTPException(403, "bad admin token")

    @app.get("/v1/health")
    def health() -> dict:
        return {"status": "ok", "families": list(FAMILY_TYPES)}

    @app.post("/v1/challenge", response_model=ChallengeResponse)
    def new_challenge(req: ChallengeRequest) -> ChallengeResponse:
        try:
            session = state.new_session(req.family, req.bin)
        except KeyError:
            raise HTTPException(422, f"unknown family {req.family!r}")
        except (SynthesisError, ValueError) as exc:
            raise HTTPException(503, f"generation failed: {exc}")
        inst = session.instance
        base = f"/v1/panels/{session.token}"
        stimulus = [PanelView(svg_url=f"{base}/stimulus/{i}.svg",
                              png_url=f"{base}/stimulus/{i}.png")
                    for i in range(len(inst.panels["stimulus"]))]
        candidates = []
        for i, label in enumerate(inst.candidate_labels):
            text = inst.candidate_texts[i]
            has_panel = bool(inst.panels["candidates"][i])
            candidates.append(CandidateView(
                label=label, text=text,
                panel_svg_url=f"{base}/candidates/{i}.svg" if has_panel else None,
                panel_png_url=f"{base}/candidates/{i}.png" if has_panel else None))
        return ChallengeResponse(
            token=session.token, family=inst.family, prompt=inst.prompt,
            stimulus=stimulus, candidates=candidates,
            expires_in_s=config.ttl_seconds)

    @app.get("/v1/panels/{token}/{role}/{name}")
    def panel(token: str, role: str, name: str) -> Response:
        session = state.get_session(token)
        if session is None or role not in ("stimulus", "candidates"):
            raise HTTPException(404, "no such panel")
        if state.expired(session):
            raise HTTPException(410, "challenge expired")
        stem, _, fmt = name.rpartition(".")
        if fmt not in ("svg", "png") or not stem.isdigit():
            raise HTTPException(404, "no such panel")
        index = int(stem)
        panels = session.instance.panels[role]
        if index >= len(panels) or not panels[index]:
            raise HTTPException(404, "no such panel")
        if fmt == "svg":
            return Response(panels[index], media_type="image/svg+xml")
        return Response(render_instance_png(session.instance, role, index),
                        media_type="image/png")

    @app.post("/v1/challenge/{token}/answer", response_model=AnswerResponse)
    def answer(token: str, req: AnswerRequest) -> AnswerResponse:
        session, status = state.try_answer(token)
        if status == "missing":
            raise HTTPException(404, "unknown challenge token")
        if status == "answered":
            raise HTTPException(409, "challenge already answered")
        if status == "expired":
            raise HTTPException(410, "challenge expired")
        inst = session.instance
        if req.label not in inst.candidate_labels:
            # the claim stands: a malformed answer still consumes the session
            raise HTTPException(422, "label is not one of the candidates")
        elapsed = time.monotonic() - session.issued_at
        correct = req.label == inst.correct_label
        state.record_answer(session, req.respondent_id, correct, elapsed)
        return AnswerResponse(correct=correct,
                              correct_label=inst.correct_label,
                              response_time_s=round(elapsed, 3))

    # -- operator surface ---------------------------------------------------

    @app.get("/v1/admin/stats", dependencies=[Depends(require_admin)])
    def stats() -> dict:
        return state.stats()

    @app.get("/v1/admin/pilot.csv", dependencies=[Depends(require_admin)])
    def pilot_csv(since: int = 0) -> Response:
        return Response(state.pilot_csv(since), media_type="text/csv")

    @app.get("/v1/admin/manifests", dependencies=[Depends(require_admin)])
    def manifests() -> dict:
        return {family: man.raw for family, man in state.manifests.items()}

    @app.post("/v1/admin/calibration/fit", response_model=FitResponse,
              dependencies=[Depends(require_admin)])
    def fit(req: FitRequest) -> FitResponse:
        stats_by_instance = aggregate_pilot(state.pilot_records())
        points = []
        for iid, agg in stats_by_instance.items():
            known = state.params_for(iid)
            if known is None or agg["mean_log_time"] is None:
                continue
            family, values = known
            points.append(CalibrationPoint(family, values,
                                           agg["mean_log_time"],
                                           agg["success_rate"]))
        try:
            model = fit_difficulty_model(points, state.manifests,
                                         alpha=req.alpha,
                                         min_per_family=req.min_per_family)
        except ValueError as exc:
            raise HTTPException(422, str(exc))
        state.model = model
        return FitResponse(thresholds=model.thresholds,
                           families=sorted(model.fits),
                           points_used=len(points))

    @app.post("/v1/admin/preview", response_model=PreviewResponse,
              dependencies=[Depends(require_admin)])
    def preview(req: PreviewRequest) -> PreviewResponse:
        if req.family not in FAMILY_TYPES:
            raise HTTPException(422, f"unknown family {req.family!r}")
        model = state.difficulty_model() if req.bin else None
        try:
            inst = synthesize(req.family, req.seed, bin=req.bin, model=model)
        except (SynthesisError, ManifestError, ValueError) as exc:
            raise HTTPException(422, f"generation failed: {exc}")
        return PreviewResponse(
            instance_id=inst.instance_id, family=inst.family,
            prompt=inst.prompt, params=inst.params,
            correct_label=inst.correct_label,
            candidate_labels=inst.candidate_labels,
            candidate_texts=inst.candidate_texts,
            stimulus_svg=inst.panels["stimulus"],
            candidate_svg=inst.panels["candidates"],
            difficulty=inst.difficulty)

    ui_dir = os.environ.get("GEOGATE_UI_DIR")
    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
