"""qanli: turn extractive-QA instances into NLI pairs, verify answers with
entailment backends, and evaluate selective-QA calibration."""

__version__ = "0.1.0"

from .backends import AnswerCandidate
from .calibrate import CombinerModel, ConfidenceRecord, CoverageCurve
from .corpus import GoldAnswer, QAInstance
from .decontext import Premise
from .nli_client import EntailmentScore
from .nli_dataset import NLIPair
from .qconvert import Hypothesis

__all__ = [
    "AnswerCandidate",
    "CombinerModel",
    "ConfidenceRecord",
    "CoverageCurve",
    "EntailmentScore",
    "GoldAnswer",
    "Hypothesis",
    "NLIPair",
    "Premise",
    "QAInstance",
    "__version__",
]
