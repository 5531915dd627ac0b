"""Word lists and tokenization shared across the pipeline.

The stopword and abbreviation lists are pinned here on purpose: corpus
statistics, the mock entailment rule, and the sentence splitter all have to
stay reproducible across environments, so nothing is pulled from external
NLP packages.
"""

import re

# Pinned English stopword list (~150 entries). Includes contraction
# fragments ("s", "t", ...) because the tokenizer splits on apostrophes.
STOPWORDS = frozenset("""
a about above after again against all am an and any are aren as at be because
been before being below between both but by can cannot could couldn d did
didn do does doesn doing don down during each few for from further had hadn
has hasn have haven having he her here hers herself him himself his how i if
in into is isn it its itself just ll m ma me might more most mustn my myself
no nor not now o of off on once only or other our ours ourselves out over own
re s same she should shouldn so some such t than that the their theirs them
themselves then there these they this those through to too under until up ve
very was wasn we were weren what when where which while who whom why will
with won would wouldn y you your yours yourself yourselves
""".split())

# Abbreviations that end with a period but do not terminate a sentence
# (compared case-insensitively, without the trailing period).
ABBREVIATIONS = frozenset(
    abbr.lower()
    for abbr in [
        "Mr", "Mrs", "Ms", "Dr", "Prof", "Rev", "Hon", "St", "Jr", "Sr",
        "Gen", "Col", "Maj", "Capt", "Lt", "Sgt", "Adm", "Gov", "Sen", "Rep",
        "Pres", "Supt", "Det", "Mt", "Ft", "Ave", "Blvd", "Rd", "Hwy", "Sq",
        "Jan", "Feb", "Mar", "Apr", "Jun", "Jul", "Aug", "Sep", "Sept", "Oct",
        "Nov", "Dec", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun",
        "vs", "etc", "al", "e.g", "i.e", "cf", "ca", "approx", "est", "Inc",
        "Ltd", "Co", "Corp", "Univ", "Dept", "No", "Vol", "Fig", "pp", "ed",
    ]
)

WH_WORDS = frozenset(
    ["who", "what", "when", "where", "which", "why", "how", "whose", "whom"]
)

# Auxiliaries and modals that open yes/no questions.
AUX_WORDS = frozenset(
    ["is", "are", "was", "were", "do", "does", "did", "can", "could", "will",
     "would", "should", "has", "have", "had", "may", "might", "must"]
)

_TOKEN_RE = re.compile(r"\w+")


def tokenize(text: str) -> list[str]:
    """Lowercase word tokens; apostrophes and punctuation split tokens."""
    return _TOKEN_RE.findall(text.lower())


def content_tokens(text: str) -> list[str]:
    """Tokens with stopwords removed, order preserved."""
    return [tok for tok in tokenize(text) if tok not in STOPWORDS]


def content_words(text: str) -> set[str]:
    """Set of non-stopword tokens, lowercased."""
    return set(content_tokens(text))


def jaccard(a: set[str], b: set[str]) -> float:
    """Jaccard similarity of two sets; empty-vs-empty is defined as 1.0."""
    if not a and not b:
        return 1.0
    union = a | b
    if not union:
        return 1.0
    return len(a & b) / len(union)
