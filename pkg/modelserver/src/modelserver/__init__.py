"""HTTP inference sidecar for the qanli toolkit.

Serves four model tasks (QA answering, question conversion,
decontextualization, NLI scoring) over a fixed JSON contract, either from
deterministic mock rules or from pretrained checkpoints.
"""

from .app import create_app

__all__ = ["create_app"]
