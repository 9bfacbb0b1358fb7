"""LLM client port with an HTTP implementation and a fixture stand-in.

The pipeline only needs one operation: complete a prompt into response
text. The HTTP client speaks a chat-completion style JSON API. The
fixture client replays canned responses keyed by prompt hash, which
makes generation fully deterministic in tests and demos.
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path
from typing import Protocol

import httpx

from .errors import LLMUnavailable

DEFAULT_TIMEOUT_S = 120.0


class LLMClient(Protocol):
    def complete(self, prompt: str, *, temperature: float, model_id: str) -> str:
        """Return the model's response text for one prompt."""
        ...


def prompt_key(prompt: str) -> str:
    """Stable short key identifying a prompt; names fixture files."""
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()[:16]


class HttpLLMClient:
    """Chat-completion client: POST {url} with bearer auth."""

    def __init__(
        self,
        url: str | None = None,
        api_key: str | None = None,
        timeout_s: float = DEFAULT_TIMEOUT_S,
    ):
        self.url = url or os.environ.get("BUGSPOTTER_LLM_URL", "")
        self.api_key = api_key if api_key is not None else os.environ.get("BUGSPOTTER_LLM_KEY", "")
        self.timeout_s = timeout_s
        if not self.url:
            raise LLMUnavailable("no LLM endpoint configured (set BUGSPOTTER_LLM_URL)")

    def complete(self, prompt: str, *, temperature: float, model_id: str) -> str:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        payload = {
            "model": model_id,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": temperature,
        }
        try:
            response = httpx.post(self.url, json=payload, headers=headers, timeout=self.timeout_s)
            response.raise_for_status()
            body = response.json()
            return body["choices"][0]["message"]["content"]
        except (httpx.HTTPError, KeyError, IndexError, TypeError, ValueError) as exc:
            raise LLMUnavailable(f"LLM request failed: {exc}") from exc


class FixtureLLMClient:
    """Replays responses from files named by prompt hash.

    `<key>.txt` answers every call for that prompt; a numbered series
    `<key>.0.txt`, `<key>.1.txt`, ... answers successive calls in order,
    which lets tests script retry behavior.
    """

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self._call_counts: dict[str, int] = {}

    def complete(self, prompt: str, *, temperature: float, model_id: str) -> str:
        key = prompt_key(prompt)
        call_index = self._call_counts.get(key, 0)
        self._call_counts[key] = call_index + 1
        numbered = self.directory / f"{key}.{call_index}.txt"
        if numbered.exists():
            return numbered.read_text(encoding="utf-8")
        plain = self.directory / f"{key}.txt"
        if plain.exists():
            return plain.read_text(encoding="utf-8")
        raise LLMUnavailable(
            f"no fixture response for prompt key {key} (call {call_index}) in {self.directory}"
        )
