"""Chat and embedding endpoint client with record/replay fixtures.

Live mode talks to an OpenAI-compatible HTTP API configured through the
environment (ARCSMITH_API_BASE, ARCSMITH_API_KEY). Replay mode serves
responses from a fixture directory keyed by request digest and never touches
the network, which is what every test uses. Record mode is live plus
fixture capture, for refreshing test fixtures.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass
from pathlib import Path

import requests


class EndpointError(RuntimeError):
    """Endpoint unreachable, persistent HTTP failure, or missing fixture."""


@dataclass(frozen=True)
class ClientConfig:
    chat_model: str = "gpt-4o-mini"
    embed_model: str = "text-embedding-ada-002"
    temperature: float = 1.0
    max_tokens: int = 2048
    mode: str = "replay"  # live | replay | record
    fixture_dir: Path | None = None
    base_url: str | None = None
    api_key: str | None = None
    retries: int = 3
    timeout_s: float = 120.0

    @classmethod
    def from_env(cls, **overrides) -> "ClientConfig":
        env = os.environ
        values = dict(
            chat_model=env.get("ARCSMITH_CHAT_MODEL", cls.chat_model),
            embed_model=env.get("ARCSMITH_EMBED_MODEL", cls.embed_model),
            base_url=env.get("ARCSMITH_API_BASE"),
            api_key=env.get("ARCSMITH_API_KEY"),
        )
        values.update(overrides)
        return cls(**values)


class ModelClient:
    """chat() and embed() with deterministic replay for tests and CI."""

    def __init__(self, config: ClientConfig):
        if config.mode not in ("live", "replay", "record"):
            raise EndpointError(f"unknown client mode {config.mode!r}")
        if config.mode in ("replay", "record") and config.fixture_dir is None:
            raise EndpointError(f"{config.mode} mode needs a fixture_dir")
        if config.mode in ("live", "record") and not config.base_url:
            raise EndpointError("live mode needs ARCSMITH_API_BASE")
        self.config = config

    # -- public API ---------------------------------------------------------

    def chat(self, messages: list[dict], temperature: float | None = None) -> str:
        request = {
            "kind": "chat",
            "model": self.config.chat_model,
            "messages": messages,
            "temperature": self.config.temperature if temperature is None else temperature,
            "max_tokens": self.config.max_tokens,
        }
        return self._dispatch(request)

    def chat_many(self, messages: list[dict], n: int,
                  temperature: float | None = None) -> list[str]:
        """n sampled completions for one prompt (one request, n choices)."""
        request = {
            "kind": "chat",
            "model": self.config.chat_model,
            "messages": messages,
            "temperature": self.config.temperature if temperature is None else temperature,
            "max_tokens": self.config.max_tokens,
            "n": n,
        }
        return self._dispatch(request)

    def embed(self, texts: list[str]) -> list[list[float]]:
        request = {"kind": "embed", "model": self.config.embed_model, "input": texts}
        return self._dispatch(request)

    # -- dispatch -----------------------------------------------------------

    def request_key(self, request: dict) -> str:
        canonical = json.dumps(request, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:32]

    def _dispatch(self, request: dict):
        key = self.request_key(request)
        if self.config.mode == "replay":
            return self._load_fixture(key, request)
        response = self._call_live(request)
        if self.config.mode == "record":
            self._save_fixture(key, request, response)
        return response

    def _fixture_path(self, key: str) -> Path:
        return Path(self.config.fixture_dir) / f"{key}.json"

    def _load_fixture(self, key: str, request: dict):
        path = self._fixture_path(key)
        if not path.exists():
            raise EndpointError(
                f"no recorded fixture {path.name} for this {request['kind']} request"
            )
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)["response"]

    def _save_fixture(self, key: str, request: dict, response) -> None:
        path = self._fixture_path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump({"request": request, "response": response}, f, indent=1, sort_keys=True)

    def _call_live(self, request: dict):
        url_path = "/chat/completions" if request["kind"] == "chat" else "/embeddings"
        url = self.config.base_url.rstrip("/") + url_path
        headers = {"Content-Type": "application/json"}
        if self.config.api_key:
            headers["Authorization"] = f"Bearer {self.config.api_key}"
        if request["kind"] == "chat":
            body = {
                "model": request["model"],
                "messages": request["messages"],
                "temperature": request["temperature"],
                "max_tokens": request["max_tokens"],
            }
            if "n" in request:
                body["n"] = request["n"]
        else:
            body = {"model": request["model"], "input": request["input"]}

        last_error = None
        for attempt in range(self.config.retries):
            try:
                resp = requests.post(url, json=body, headers=headers,
                                     timeout=self.config.timeout_s)
                if resp.status_code >= 500:
                    raise EndpointError(f"server error {resp.status_code}")
                resp.raise_for_status()
                data = resp.json()
                if request["kind"] == "chat":
                    contents = [c["message"]["content"] for c in data["choices"]]
                    return contents if "n" in request else contents[0]
                return [item["embedding"] for item in data["data"]]
            except (requests.RequestException, EndpointError, KeyError, ValueError) as e:
                last_error = e
                time.sleep(min(2**attempt, 8))
        raise EndpointError(f"endpoint failed after {self.config.retries} tries: {last_error}")


def replay_client(fixture_dir: Path | str, **overrides) -> ModelClient:
    return ModelClient(ClientConfig(mode="replay", fixture_dir=Path(fixture_dir), **overrides))
