"""Model backend clients: deterministic mocks and HTTP clients.

Four tasks share the same shape: QA answering, question conversion,
decontextualization, and NLI scoring. The mocks are fixed rules so the
whole pipeline runs and tests reproducibly without any model; the HTTP
clients speak the modelserver wire contract (POST /v1/<task>, batch
variant at /v1/<task>/batch, ids echoed back in every response).
"""

import hashlib
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TypeVar

import httpx

from .errors import BackendError, ValidationError
from .lexicon import content_words

T = TypeVar("T")
R = TypeVar("R")

_CAPITALIZED_RUN_RE = re.compile(r"[A-Z]\w*(?: [A-Z]\w*)*")
_WORD_RE = re.compile(r"\w+")

MOCK_WRONG_ANSWER = "the wrong answer"

_CONVERT_PHRASES = (
    "is the stated answer.",
    "is what was asked about.",
    "is the described entity.",
    "is the reported result.",
)


@dataclass(frozen=True)
class AnswerCandidate:
    instance_id: str
    text: str
    start: int
    end: int
    p: float
    top5: tuple[float, float, float, float, float]


def ordered_parallel_map(
    fn: Callable[[T], R], items: Iterable[T], jobs: int = 1
) -> list[R]:
    """Apply fn to every item, preserving input order in the output."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# --- mock rules -------------------------------------------------------------
#
# Shared between the in-process mocks below and the modelserver's mock mode;
# any change here breaks the golden cross-test on purpose.

def mock_qa_answer(
    question: str, context: str, gold: str = "", wrong: bool = False
) -> tuple[str, int, int, float, tuple[float, float, float, float, float]]:
    if wrong:
        text = MOCK_WRONG_ANSWER
        p, top5 = 0.6, (0.6, 0.4, 0.0, 0.0, 0.0)
    elif gold:
        text = gold
        p, top5 = 0.9, (0.9, 0.1, 0.0, 0.0, 0.0)
    else:
        match = _CAPITALIZED_RUN_RE.search(context) or _WORD_RE.search(context)
        text = match.group(0) if match else context.strip()
        p, top5 = 0.9, (0.9, 0.1, 0.0, 0.0, 0.0)
    pos = context.lower().find(text.lower())
    if pos < 0:
        start, end = -1, -1
    else:
        start, end = pos, pos + len(text)
    return text, start, end, p, top5


def mock_convert_text(question: str, answer: str) -> str:
    digest = hashlib.sha256(f"{question}\x1f{answer}".encode("utf-8")).digest()
    phrase = _CONVERT_PHRASES[digest[0] % len(_CONVERT_PHRASES)]
    return f"{answer} {phrase}"


def mock_decontext_text(
    title: str, sentences: Sequence[str], target_index: int
) -> tuple[str, str]:
    if not (0 <= target_index < len(sentences)):
        raise ValidationError(f"target_index {target_index} out of range")
    target = sentences[target_index]
    if len(sentences) == 1 or not title:
        return target, "unnecessary"
    return f"{title}: {target}", "done"


def mock_nli_probs(premise: str, hypothesis: str) -> tuple[float, float, float]:
    """Content-word coverage of the hypothesis by the premise.

    Full containment (including an empty hypothesis set) scores 1.0; the
    remaining mass splits 2:1 between neutral and contradiction.
    """
    hyp = content_words(hypothesis)
    prem = content_words(premise)
    if hyp <= prem:
        p_entail = 1.0
    else:
        p_entail = len(hyp & prem) / len(hyp)
    remainder = 1.0 - p_entail
    return p_entail, remainder * 2.0 / 3.0, remainder / 3.0


# --- in-process mock clients ------------------------------------------------

class MockQABackend:
    backend_id = "mock-qa"

    def answer(self, instance) -> AnswerCandidate:
        gold = instance.gold_answers[0].text if instance.gold_answers else ""
        wrong = instance.meta.get("qa_mock") == "wrong"
        text, start, end, p, top5 = mock_qa_answer(
            instance.question, instance.context, gold=gold, wrong=wrong
        )
        return AnswerCandidate(instance.id, text, start, end, p, top5)


class MockConvertBackend:
    backend_id = "mock-convert"

    def convert(self, question: str, answer: str) -> str:
        return mock_convert_text(question, answer)


class MockDecontextBackend:
    backend_id = "mock-decontext"

    def decontext(
        self, title: str, sentences: Sequence[str], target_index: int
    ) -> tuple[str, str]:
        return mock_decontext_text(title, sentences, target_index)


class MockNLIBackend:
    backend_id = "mock-nli"

    def nli(self, premise: str, hypothesis: str) -> tuple[float, float, float]:
        return mock_nli_probs(premise, hypothesis)


# --- HTTP clients -----------------------------------------------------------

class _HttpBackend:
    task = ""

    def __init__(self, base_url: str, timeout: float = 30.0, retries: int = 2):
        self.base_url = base_url.rstrip("/")
        self.backend_id = base_url
        self._retries = retries
        self._client = httpx.Client(base_url=self.base_url, timeout=timeout)

    def _post(self, payload: dict) -> dict:
        last_error: Exception | None = None
        for attempt in range(self._retries + 1):
            try:
                response = self._client.post(f"/v1/{self.task}", json=payload)
            except httpx.HTTPError as exc:
                last_error = exc
                if attempt < self._retries:
                    time.sleep(0.2)
                continue
            if response.status_code >= 500:
                last_error = BackendError(
                    f"{self.task} backend returned {response.status_code}",
                    retriable=True,
                )
                if attempt < self._retries:
                    time.sleep(0.2)
                continue
            if response.status_code != 200:
                raise BackendError(
                    f"{self.task} backend rejected the request "
                    f"({response.status_code}): {response.text[:200]}"
                )
            body = response.json()
            if "backend_id" in body:
                self.backend_id = body["backend_id"]
            return body
        raise BackendError(
            f"{self.task} backend unreachable: {last_error}", retriable=True
        )

    def close(self) -> None:
        self._client.close()


class HttpQABackend(_HttpBackend):
    task = "qa"

    def answer(self, instance) -> AnswerCandidate:
        meta = {}
        if instance.gold_answers:
            meta["gold"] = instance.gold_answers[0].text
        if instance.meta.get("qa_mock") == "wrong":
            meta["qa_mock"] = "wrong"
        body = self._post(
            {"question": instance.question, "context": instance.context,
             "meta": meta}
        )
        top5 = tuple(float(x) for x in body["top5"])
        if len(top5) != 5:
            raise BackendError("qa backend returned a malformed top5 list")
        return AnswerCandidate(
            instance.id, body["text"], int(body["char_start"]),
            int(body["char_end"]), float(body["p"]), top5,
        )


class HttpConvertBackend(_HttpBackend):
    task = "convert"

    def convert(self, question: str, answer: str) -> str:
        body = self._post({"question": question, "answer": answer})
        return body["text"]


class HttpDecontextBackend(_HttpBackend):
    task = "decontext"

    def decontext(
        self, title: str, sentences: Sequence[str], target_index: int
    ) -> tuple[str, str]:
        body = self._post(
            {"title": title, "sentences": list(sentences),
             "target_index": target_index}
        )
        return body["text"], body["category"]


class HttpNLIBackend(_HttpBackend):
    task = "nli"

    def nli(self, premise: str, hypothesis: str) -> tuple[float, float, float]:
        body = self._post({"premise": premise, "hypothesis": hypothesis})
        return (
            float(body["p_entail"]),
            float(body["p_neutral"]),
            float(body["p_contradiction"]),
        )


_MOCKS = {
    "qa": MockQABackend,
    "convert": MockConvertBackend,
    "decontext": MockDecontextBackend,
    "nli": MockNLIBackend,
}
_HTTP = {
    "qa": HttpQABackend,
    "convert": HttpConvertBackend,
    "decontext": HttpDecontextBackend,
    "nli": HttpNLIBackend,
}


def make_backend(task: str, spec: str):
    """Build a backend client from a spec string: "mock" or "http:<url>"."""
    if task not in _MOCKS:
        raise ValidationError(f"unknown backend task {task!r}")
    if spec == "mock":
        return _MOCKS[task]()
    if spec.startswith("http:") or spec.startswith("https:"):
        url = spec
        if spec.startswith("http:") and not spec.startswith("http://"):
            url = spec[len("http:"):]
            if "://" not in url:
                url = f"http://{url}"
        return _HTTP[task](url)
    raise ValidationError(
        f"backend spec {spec!r} for task {task!r} is neither 'mock' nor 'http:<url>'"
    )
