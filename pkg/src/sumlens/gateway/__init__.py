from .cassette import CassetteMiss, CassetteStore, cassette_key
from .models import (
    DEFAULT_SAFETY_MARGIN,
    DEFAULT_TOKEN_RATIO,
    GatewayConfig,
    ModelConfig,
    estimate_tokens,
    load_gateway_config,
)
from .prompts import TEMPLATES, PromptKind, document_text, render_prompt
from .summarize import (
    REFUSAL_MARKER,
    RequestContext,
    BudgetExceeded,
    Mode,
    OpenAiChatProvider,
    ProviderAdapter,
    ProviderError,
    ScriptedProvider,
    SummaryRecord,
    build_provider,
    summarize,
    summary_id_for,
)

__all__ = [
    "CassetteMiss",
    "CassetteStore",
    "cassette_key",
    "DEFAULT_SAFETY_MARGIN",
    "DEFAULT_TOKEN_RATIO",
    "GatewayConfig",
    "ModelConfig",
    "estimate_tokens",
    "load_gateway_config",
    "TEMPLATES",
    "PromptKind",
    "document_text",
    "render_prompt",
    "REFUSAL_MARKER",
    "RequestContext",
    "BudgetExceeded",
    "Mode",
    "OpenAiChatProvider",
    "ProviderAdapter",
    "ProviderError",
    "ScriptedProvider",
    "SummaryRecord",
    "build_provider",
    "summarize",
    "summary_id_for",
]
