"""Pretrained-checkpoint backends.

Each wrapper loads its model lazily on the first request, so the server
(and its manifest endpoint) starts without touching the network. Imports
of torch/transformers live inside the loaders for the same reason; running
in mock mode never pulls them in.

Checkpoint names come from environment variables with public defaults:

    MODELSERVER_QA_CHECKPOINT         (deepset/roberta-base-squad2)
    MODELSERVER_CONVERT_CHECKPOINT    (t5-base)
    MODELSERVER_DECONTEXT_CHECKPOINT  (t5-base)
    MODELSERVER_NLI_CHECKPOINT        (roberta-large-mnli)

Generation is greedy by default (num_beams=1, no sampling) so identical
requests produce identical responses; set MODELSERVER_NUM_BEAMS to trade
determinism-friendly speed for beam search. The t5-base defaults for the
convert and decontext tasks are placeholders: they produce text in the
right shape but are not fine-tuned for either task, so point the env vars
at tuned checkpoints for real use.
"""

import os

QA_WINDOW = 512
QA_STRIDE = 128
QA_MAX_QUESTION_TOKENS = 64
GEN_MAX_NEW_TOKENS = 64


def _num_beams() -> int:
    return int(os.environ.get("MODELSERVER_NUM_BEAMS", "1"))


class QACheckpoint:
    task = "qa"

    def __init__(self):
        self.checkpoint = os.environ.get(
            "MODELSERVER_QA_CHECKPOINT", "deepset/roberta-base-squad2")
        self.backend_id = f"qa:{self.checkpoint}"
        self.model = self.checkpoint
        self._pipe = None

    def manifest(self) -> dict:
        return {
            "backend_id": self.backend_id,
            "task": self.task,
            "checkpoint": self.checkpoint,
            "decoding": {"window": QA_WINDOW, "stride": QA_STRIDE},
            "max_input_length": QA_WINDOW,
        }

    def _load(self):
        if self._pipe is None:
            from transformers import pipeline
            self._pipe = pipeline(
                "question-answering", model=self.checkpoint,
                max_seq_len=QA_WINDOW, doc_stride=QA_STRIDE)
        return self._pipe

    def __call__(self, payload: dict) -> dict:
        pipe = self._load()
        results = pipe(question=payload["question"],
                       context=payload["context"], top_k=5)
        if isinstance(results, dict):
            results = [results]
        best = results[0]
        top5 = [float(r["score"]) for r in results[:5]]
        top5 += [0.0] * (5 - len(top5))
        reply = {
            "text": best["answer"],
            "char_start": int(best["start"]),
            "char_end": int(best["end"]),
            "p": float(best["score"]),
            "top5": top5,
        }
        # questions can't be windowed, only contexts; flag the one case
        # where the pipeline silently cuts input
        question_tokens = pipe.tokenizer(
            payload["question"], add_special_tokens=False)["input_ids"]
        if len(question_tokens) > QA_MAX_QUESTION_TOKENS:
            reply["truncated"] = True
        return reply


class _Seq2SeqCheckpoint:
    def __init__(self, env_var: str, default: str):
        self.checkpoint = os.environ.get(env_var, default)
        self.backend_id = f"{self.task}:{self.checkpoint}"
        self.model = self.checkpoint
        self._bundle = None

    def manifest(self) -> dict:
        return {
            "backend_id": self.backend_id,
            "task": self.task,
            "checkpoint": self.checkpoint,
            "decoding": {
                "strategy": "greedy" if _num_beams() == 1 else "beam",
                "num_beams": _num_beams(),
                "max_new_tokens": GEN_MAX_NEW_TOKENS,
            },
            "max_input_length": 512,
        }

    def _load(self):
        if self._bundle is None:
            from transformers import AutoModelForSeq2SeqLM, AutoTokenizer
            tokenizer = AutoTokenizer.from_pretrained(self.checkpoint)
            model = AutoModelForSeq2SeqLM.from_pretrained(self.checkpoint)
            model.eval()
            self._bundle = (tokenizer, model)
        return self._bundle

    def _generate(self, prompt: str) -> str:
        import torch
        tokenizer, model = self._load()
        inputs = tokenizer(prompt, return_tensors="pt",
                           truncation=True, max_length=512)
        with torch.no_grad():
            output = model.generate(
                **inputs, num_beams=_num_beams(), do_sample=False,
                max_new_tokens=GEN_MAX_NEW_TOKENS)
        return tokenizer.decode(output[0], skip_special_tokens=True).strip()


class ConvertCheckpoint(_Seq2SeqCheckpoint):
    task = "convert"

    def __init__(self):
        super().__init__("MODELSERVER_CONVERT_CHECKPOINT", "t5-base")

    def __call__(self, payload: dict) -> dict:
        text = self._generate(
            f"question: {payload['question']} answer: {payload['answer']}")
        return {"text": text}


class DecontextCheckpoint(_Seq2SeqCheckpoint):
    task = "decontext"

    def __init__(self):
        super().__init__("MODELSERVER_DECONTEXT_CHECKPOINT", "t5-base")

    def __call__(self, payload: dict) -> dict:
        sentences = payload["sentences"]
        index = payload["target_index"]
        if not (0 <= index < len(sentences)):
            raise ValueError(f"target_index {index} out of range")
        target = sentences[index]
        numbered = " ".join(
            f"[{j}] {sentence}" for j, sentence in enumerate(sentences))
        text = self._generate(
            f"title: {payload['title']} target: {index} context: {numbered}")
        # category from the rewrite itself: no output means the model gave
        # up, an unchanged sentence needed no rewriting
        if not text:
            return {"text": target, "category": "infeasible"}
        if text == target.strip():
            return {"text": target, "category": "unnecessary"}
        return {"text": text, "category": "done"}


class NLICheckpoint:
    task = "nli"

    def __init__(self):
        self.checkpoint = os.environ.get(
            "MODELSERVER_NLI_CHECKPOINT", "roberta-large-mnli")
        self.backend_id = f"nli:{self.checkpoint}"
        self.model = self.checkpoint
        self._bundle = None

    def manifest(self) -> dict:
        return {
            "backend_id": self.backend_id,
            "task": self.task,
            "checkpoint": self.checkpoint,
            "decoding": {"strategy": "softmax"},
            "max_input_length": 512,
        }

    def _load(self):
        if self._bundle is None:
            from transformers import (AutoModelForSequenceClassification,
                                      AutoTokenizer)
            tokenizer = AutoTokenizer.from_pretrained(self.checkpoint)
            model = AutoModelForSequenceClassification.from_pretrained(
                self.checkpoint)
            model.eval()
            label_index = {
                label.lower(): i
                for i, label in model.config.id2label.items()
            }
            self._bundle = (tokenizer, model, label_index)
        return self._bundle

    def __call__(self, payload: dict) -> dict:
        import torch
        tokenizer, model, label_index = self._load()
        inputs = tokenizer(payload["premise"], payload["hypothesis"],
                           return_tensors="pt", truncation=True,
                           max_length=512)
        with torch.no_grad():
            probs = model(**inputs).logits.softmax(dim=-1)[0]
        return {
            "p_entail": float(probs[label_index["entailment"]]),
            "p_neutral": float(probs[label_index["neutral"]]),
            "p_contradiction": float(probs[label_index["contradiction"]]),
        }
