"""Summary production: provider adapters, truncation, and record/replay.

Adapters are thin callables behind a tiny protocol; nothing provider
specific leaks past this module. Replay mode is fully hermetic: given the
same cassettes it produces byte-identical summary records, which is what
makes the whole analysis pipeline testable offline.
"""

from __future__ import annotations

import enum
import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

from ..corpus.model import Document
from ..corpus.transforms import BudgetTooSmall, truncate_to_budget
from .cassette import CassetteStore, cassette_key
from .models import DEFAULT_SAFETY_MARGIN, DEFAULT_TOKEN_RATIO, ModelConfig, estimate_tokens
from .prompts import PromptKind, render_prompt

REFUSAL_MARKER = "[refused]"
REFUSAL_PREFIX = "I'm sorry, but I am unable"


class Mode(str, enum.Enum):
    LIVE = "live"
    RECORD = "record"
    REPLAY = "replay"


class BudgetExceeded(Exception):
    """The rendered prompt cannot fit the model's context budget."""


class ProviderError(Exception):
    def __init__(self, message: str, retry_after: float | None = None) -> None:
        super().__init__(message)
        self.retry_after = retry_after


@dataclass(frozen=True, slots=True)
class RequestContext:
    """What is being summarized; adapters may key behavior off it. Immutable
    so concurrent in-flight requests cannot interfere."""

    filing_id: str
    prompt_kind: str
    shuffled: bool = False
    seed: int | None = None


class ProviderAdapter(Protocol):
    def complete(
        self, prompt: str, config: ModelConfig, context: RequestContext | None = None
    ) -> str: ...


class ScriptedProvider:
    """Deterministic provider that replays planned outputs from a JSON file.

    The plan maps "<filing_id>/<prompt_kind>" (optionally suffixed with
    "/shuffled-<seed>") to summary text. Used for offline development and
    for recording fixture cassettes.
    """

    def __init__(self, plan: dict[str, str] | str | Path) -> None:
        if isinstance(plan, (str, Path)):
            plan = json.loads(Path(plan).read_text(encoding="utf-8"))
        self.plan = dict(plan)

    @staticmethod
    def plan_key(context: RequestContext) -> str:
        key = f"{context.filing_id}/{context.prompt_kind}"
        if context.shuffled:
            key += f"/shuffled-{context.seed}"
        return key

    def complete(
        self, prompt: str, config: ModelConfig, context: RequestContext | None = None
    ) -> str:
        if context is None:
            raise ProviderError("scripted provider needs a request context")
        key = self.plan_key(context)
        try:
            return self.plan[key]
        except KeyError:
            raise ProviderError(f"scripted plan has no entry for {key}")


class OpenAiChatProvider:
    """Generic chat-completions adapter for OpenAI-compatible endpoints."""

    def __init__(self, base_url: str, api_key: str, timeout: float = 120.0) -> None:
        self.base_url = base_url.rstrip("/")
        self.api_key = api_key
        self.timeout = timeout

    def complete(
        self, prompt: str, config: ModelConfig, context: RequestContext | None = None
    ) -> str:
        import requests

        resp = requests.post(
            f"{self.base_url}/chat/completions",
            headers={"Authorization": f"Bearer {self.api_key}"},
            json={
                "model": config.model_name,
                "temperature": config.temperature,
                "max_tokens": config.max_output_tokens,
                "messages": [{"role": "user", "content": prompt}],
            },
            timeout=self.timeout,
        )
        if resp.status_code == 429:
            retry = float(resp.headers.get("Retry-After", "1"))
            raise ProviderError("rate limited", retry_after=retry)
        if resp.status_code >= 400:
            raise ProviderError(f"provider returned {resp.status_code}: {resp.text[:200]}")
        return resp.json()["choices"][0]["message"]["content"]


def build_provider(provider_id: str, providers: dict, base_dir: str | Path = ".") -> ProviderAdapter:
    import os

    spec = providers.get(provider_id)
    if spec is None:
        raise ProviderError(f"provider {provider_id!r} is not configured")
    kind = spec.get("kind", provider_id)
    if kind == "scripted":
        path = Path(spec["path"])
        if not path.is_absolute():
            path = Path(base_dir) / path
        return ScriptedProvider(path)
    if kind == "openai_chat":
        key = os.environ.get(spec.get("api_key_env", ""), "")
        if not key:
            raise ProviderError(
                f"environment variable {spec.get('api_key_env')!r} is unset"
            )
        return OpenAiChatProvider(spec["base_url"], key)
    raise ProviderError(f"unknown provider kind {kind!r}")


@dataclass(frozen=True, slots=True)
class SummaryRecord:
    summary_id: str
    filing_id: str
    shuffled: bool
    seed: int | None
    model_name: str
    provider_id: str
    prompt_kind: str
    summary_text: str
    truncated_tokens: int
    cassette_key: str
    mode: str
    refused: bool = False

    def to_dict(self) -> dict:
        return {
            "summary_id": self.summary_id,
            "filing_id": self.filing_id,
            "shuffled": self.shuffled,
            "seed": self.seed,
            "model_name": self.model_name,
            "provider_id": self.provider_id,
            "prompt_kind": self.prompt_kind,
            "summary_text": self.summary_text,
            "truncated_tokens": self.truncated_tokens,
            "cassette_key": self.cassette_key,
            "mode": self.mode,
            "refused": self.refused,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SummaryRecord":
        return cls(**{k: data[k] for k in cls.__dataclass_fields__})


def summary_id_for(filing_id: str, model_name: str, prompt_kind: str, shuffled: bool, seed) -> str:
    variant = f"shuffled-{seed}" if shuffled else "original"
    return f"{filing_id}:{model_name}:{prompt_kind}:{variant}"


def summarize(
    doc: Document,
    config: ModelConfig,
    kind: PromptKind,
    mode: Mode,
    cassettes: CassetteStore,
    provider: ProviderAdapter | None = None,
    *,
    shuffled: bool = False,
    seed: int | None = None,
    token_ratio: float = DEFAULT_TOKEN_RATIO,
    safety_margin: float = DEFAULT_SAFETY_MARGIN,
) -> SummaryRecord:
    prompt_budget = config.context_budget_tokens - config.max_output_tokens
    word_budget = int(prompt_budget * (1 - safety_margin) / token_ratio)
    try:
        truncated_doc, truncated_tokens = truncate_to_budget(doc, max(word_budget, 1))
    except BudgetTooSmall as exc:
        raise BudgetExceeded(str(exc)) from exc

    prompt = render_prompt(kind, truncated_doc)
    if estimate_tokens(prompt, token_ratio) > prompt_budget:
        raise BudgetExceeded(
            f"rendered prompt needs ~{estimate_tokens(prompt, token_ratio)} tokens, "
            f"budget is {prompt_budget}"
        )

    key = cassette_key(doc.filing_id, config.model_name, kind.value, shuffled, seed)
    if mode is Mode.REPLAY:
        text = cassettes.load(key)["response"]["summary_text"]
    else:
        if provider is None:
            raise ProviderError("live and record modes need a provider adapter")
        context = RequestContext(
            filing_id=doc.filing_id, prompt_kind=kind.value, shuffled=shuffled, seed=seed
        )
        text = provider.complete(prompt, config, context)
        if mode is Mode.RECORD:
            cassettes.save(
                key,
                request={
                    "filing_id": doc.filing_id,
                    "model": config.to_dict(),
                    "prompt_kind": kind.value,
                    "shuffled": shuffled,
                    "seed": seed,
                    "prompt": prompt,
                    "token_ratio": token_ratio,
                    "safety_margin": safety_margin,
                },
                response={
                    "summary_text": text,
                    "recorded_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
                },
            )

    if not text.strip():
        text = REFUSAL_MARKER
    refused = text == REFUSAL_MARKER or text.strip().startswith(REFUSAL_PREFIX)

    return SummaryRecord(
        summary_id=summary_id_for(doc.filing_id, config.model_name, kind.value, shuffled, seed),
        filing_id=doc.filing_id,
        shuffled=shuffled,
        seed=seed,
        model_name=config.model_name,
        provider_id=config.provider_id,
        prompt_kind=kind.value,
        summary_text=text,
        truncated_tokens=truncated_tokens,
        cassette_key=key,
        mode=mode.value,
        refused=refused,
    )
