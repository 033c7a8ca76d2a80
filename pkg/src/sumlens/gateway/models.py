"""Model and provider configuration.

A config file declares providers (how to reach them) and models (what to
ask for and how much context they take). Token budgeting is provider
agnostic: words times a configurable ratio, with a safety margin, because
exact tokenizers are proprietary. The ratio and margin are recorded on every
run so results stay reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_TOKEN_RATIO = 1.33
DEFAULT_SAFETY_MARGIN = 0.05


@dataclass(frozen=True, slots=True)
class ModelConfig:
    provider_id: str
    model_name: str
    context_budget_tokens: int
    max_output_tokens: int
    temperature: float = 1.0

    def __post_init__(self) -> None:
        if self.max_output_tokens < 1:
            raise ValueError("max_output_tokens must be at least 1")
        if self.context_budget_tokens <= self.max_output_tokens:
            raise ValueError("context budget must exceed max output tokens")

    def to_dict(self) -> dict:
        return {
            "provider_id": self.provider_id,
            "model_name": self.model_name,
            "context_budget_tokens": self.context_budget_tokens,
            "max_output_tokens": self.max_output_tokens,
            "temperature": self.temperature,
        }


@dataclass(frozen=True)
class GatewayConfig:
    providers: dict = field(default_factory=dict)
    models: dict = field(default_factory=dict)  # name -> ModelConfig
    token_ratio: float = DEFAULT_TOKEN_RATIO
    safety_margin: float = DEFAULT_SAFETY_MARGIN


def load_gateway_config(path: str | Path) -> GatewayConfig:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    models = {
        name: ModelConfig(
            provider_id=m["provider"],
            model_name=m.get("model_name", name),
            context_budget_tokens=int(m["context_budget_tokens"]),
            max_output_tokens=int(m["max_output_tokens"]),
            temperature=float(m.get("temperature", 1.0)),
        )
        for name, m in data.get("models", {}).items()
    }
    return GatewayConfig(
        providers=data.get("providers", {}),
        models=models,
        token_ratio=float(data.get("token_ratio", DEFAULT_TOKEN_RATIO)),
        safety_margin=float(data.get("safety_margin", DEFAULT_SAFETY_MARGIN)),
    )


def estimate_tokens(text: str, ratio: float = DEFAULT_TOKEN_RATIO) -> int:
    return int(len(text.split()) * ratio + 0.999999)
