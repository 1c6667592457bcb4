"""Request/response schemas for the challenge service."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class ChallengeRequest(BaseModel):
    family: Optional[str] = None
    bin: Optional[str] = Field(default=None, pattern="^(easy|medium|hard)$")


class CandidateView(BaseModel):
    label: str
    text: Optional[str] = None
    panel_svg_url: Optional[str] = None
    panel_png_url: Optional[str] = None


class PanelView(BaseModel):
    svg_url: str
    png_url: str


class ChallengeResponse(BaseModel):
    token: str
    family: str
    prompt: str
    stimulus: list[PanelView]
    candidates: list[CandidateView]
    expires_in_s: float


class AnswerRequest(BaseModel):
    label: str
    respondent_id: str = "anonymous"


class AnswerResponse(BaseModel):
    correct: bool
    correct_label: str
    response_time_s: float


class FitRequest(BaseModel):
    alpha: float = Field(default=0.6, ge=0.0, le=1.0)
    min_per_family: int = Field(default=20, ge=2)


class FitResponse(BaseModel):
    thresholds: tuple[float, float]
    families: list[str]
    points_used: int


class PreviewRequest(BaseModel):
    family: str
    seed: int = 0
    bin: Optional[str] = Field(default=None, pattern="^(easy|medium|hard)$")


class PreviewResponse(BaseModel):
    instance_id: str
    family: str
    prompt: str
    params: dict
    correct_label: str
    candidate_labels: list[str]
    candidate_texts: list[Optional[str]]
    stimulus_svg: list[str]
    candidate_svg: list[str]
    difficulty: Optional[dict] = None
