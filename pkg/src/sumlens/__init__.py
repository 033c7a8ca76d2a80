"""sumlens: measure how LLM summaries of long filings use their source."""

__version__ = "0.1.0"
