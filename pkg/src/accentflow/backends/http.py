"""JSON-over-HTTP backend clients.

One retry policy everywhere: the initial attempt plus `retries`
re-attempts with exponential backoff, then BackendUnavailable (or
ScorerUnavailable for the accent scorer). Replies that are not JSON or
violate the role's wire schema raise MalformedBackendReply with the
offending payload attached.
"""

from __future__ import annotations

import time
from typing import Any, Mapping, Sequence

import requests

from ..core import AccentLabel, Metadata
from ..errors import BackendUnavailable, MalformedBackendReply, ScorerUnavailable
from .base import SpeechArtifact

DEFAULT_TIMEOUT = 30.0
DEFAULT_RETRIES = 2
DEFAULT_BACKOFF = 0.5


class JsonHttpClient:
    """Small POST-JSON helper shared by every HTTP backend."""

    def __init__(
        self,
        url: str,
        timeout: float = DEFAULT_TIMEOUT,
        retries: int = DEFAULT_RETRIES,
        backoff: float = DEFAULT_BACKOFF,
        session: requests.Session | None = None,
    ):
        self.url = url
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff
        self._session = session or requests.Session()

    def post(self, payload: Mapping[str, Any]) -> Any:
        last_error: Exception | None = None
        for attempt in range(self.retries + 1):
            try:
                response = self._session.post(
                    self.url, json=payload, timeout=self.timeout
                )
            except requests.RequestException as exc:
                last_error = exc
            else:
                if response.status_code >= 500:
                    last_error = RuntimeError(
                        f"server error {response.status_code} from {self.url}"
                    )
                elif response.status_code >= 400:
                    # Client errors will not improve on retry.
                    raise MalformedBackendReply(
                        f"backend rejected request ({response.status_code})",
                        _safe_body(response),
                    )
                else:
                    try:
                        return response.json()
                    except ValueError:
                        raise MalformedBackendReply(
                            "reply is not JSON", response.text[:500]
                        ) from None
            if attempt < self.retries:
                time.sleep(self.backoff * (2**attempt))
        raise BackendUnavailable(
            f"{self.url} unavailable after {self.retries + 1} attempts: {last_error}"
        )


def _safe_body(response: requests.Response) -> Any:
    try:
        return response.json()
    except ValueError:
        return response.text[:500]


def _require_map(reply: Any) -> Mapping[str, Any]:
    if not isinstance(reply, Mapping):
        raise MalformedBackendReply("reply is not a JSON object", reply)
    return reply


class HttpParserBackend:
    """Remote instruction parser. Request: {instruction}."""

    def __init__(self, client: JsonHttpClient):
        self._client = client

    def parse_instruction(self, text: str) -> Mapping[str, Any]:
        return _require_map(self._client.post({"instruction": text}))


class HttpAdapterBackend:
    """Remote text localizer. Request: {text, metadata}; reply {text}."""

    def __init__(self, name: str, client: JsonHttpClient):
        self._name = name
        self._client = client

    @property
    def name(self) -> str:
        return self._name

    def adapt(self, text: str, metadata: Metadata) -> str:
        reply = _require_map(
            self._client.post({"text": text, "metadata": metadata.to_dict()})
        )
        adapted = reply.get("text")
        if not isinstance(adapted, str):
            raise MalformedBackendReply("reply lacks a text field", dict(reply))
        return adapted


class HttpJudgeBackend:
    """Remote judge. Request: {speaker_info, samples}; reply
    {score: [...], reason: [...]} aligned by index."""

    def __init__(self, client: JsonHttpClient):
        self._client = client

    def score(
        self, samples: Sequence[str], metadata: Metadata
    ) -> tuple[list[float], list[str]]:
        reply = _require_map(
            self._client.post(
                {"speaker_info": metadata.to_dict(), "samples": list(samples)}
            )
        )
        scores = reply.get("score")
        reasons = reply.get("reason", [""] * len(samples))
        if not isinstance(scores, list) or len(scores) != len(samples):
            raise MalformedBackendReply(
                f"score list must have {len(samples)} entries", dict(reply)
            )
        try:
            scores = [float(s) for s in scores]
        except (TypeError, ValueError):
            raise MalformedBackendReply("non-numeric score", dict(reply)) from None
        if not isinstance(reasons, list) or len(reasons) != len(samples):
            raise MalformedBackendReply(
                f"reason list must have {len(samples)} entries", dict(reply)
            )
        return scores, [str(r) for r in reasons]


class HttpAccentScorer:
    """Remote accent-confidence scorer. Request: {speech_ref, accent};
    reply {confidence}. Shares its wire contract with the reference
    scoring service."""

    def __init__(self, client: JsonHttpClient):
        self._client = client

    def score(self, speech_ref: str, accent: AccentLabel) -> float:
        try:
            reply = _require_map(
                self._client.post({"speech_ref": speech_ref, "accent": str(accent)})
            )
        except BackendUnavailable as exc:
            raise ScorerUnavailable(str(exc)) from exc
        confidence = reply.get("confidence")
        if not isinstance(confidence, (int, float)) or isinstance(confidence, bool):
            raise MalformedBackendReply("confidence must be numeric", dict(reply))
        if not 0.0 <= float(confidence) <= 1.0:
            raise MalformedBackendReply(
                f"confidence out of [0, 1]: {confidence}", dict(reply)
            )
        return float(confidence)


class HttpTtsBackend:
    """Remote synthesis. Request: {text, prompt_speech_ref,
    prompt_transcript, metadata}; reply {audio_ref, format}."""

    def __init__(self, client: JsonHttpClient):
        self._client = client

    def synthesize(
        self,
        text: str,
        prompt_speech_ref: str,
        prompt_transcript: str,
        metadata: Metadata,
    ) -> SpeechArtifact:
        reply = _require_map(
            self._client.post(
                {
                    "text": text,
                    "prompt_speech_ref": prompt_speech_ref,
                    "prompt_transcript": prompt_transcript,
                    "metadata": metadata.to_dict(),
                }
            )
        )
        audio_ref = reply.get("audio_ref")
        if not isinstance(audio_ref, str) or not audio_ref:
            raise MalformedBackendReply("reply lacks audio_ref", dict(reply))
        return SpeechArtifact(
            audio_ref=audio_ref,
            format=str(reply.get("format", "wav")),
            duration=reply.get("duration"),
        )


class HttpQualityScorer:
    """Remote quality scorer. Request: {audio_ref}; reply {score}."""

    def __init__(self, client: JsonHttpClient):
        self._client = client

    def score(self, audio_ref: str) -> float:
        reply = _require_map(self._client.post({"audio_ref": audio_ref}))
        score = reply.get("score")
        if not isinstance(score, (int, float)) or isinstance(score, bool):
            raise MalformedBackendReply("score must be numeric", dict(reply))
        return float(score)
