#!/usr/bin/env python3
"""Regenerate the checked-in test fixtures under tests/data/.

Everything here is deterministic (fixed seeds, fixed vocab lists), so the
fixtures can be rebuilt byte-identically. Expected values embedded below
(converter reference outputs, the agreement worked example) were derived
by hand, not by running the code under test.
"""

import json
import random
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def write_jsonl(path: Path, records) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(dumps(record) + "\n")


def write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8",
    )


def instance(iid, dataset, question, context, golds, answerable=True, meta=None):
    gold_answers = []
    for text in golds:
        pos = context.lower().find(text.lower())
        if pos < 0:
            gold_answers.append({"text": text, "start": -1, "end": -1})
        else:
            gold_answers.append(
                {"text": context[pos:pos + len(text)], "start": pos,
                 "end": pos + len(text)}
            )
    return {
        "id": iid,
        "dataset": dataset,
        "question": question,
        "context": context,
        "gold_answers": gold_answers,
        "answerable": answerable,
        "meta": meta or {},
    }


# --- raw-format parser fixtures ----------------------------------------------

def make_mrqa_tiny() -> None:
    line1 = dumps({
        "context": "Paris is the capital of France. It sits on the Seine.",
        "qas": [{
            "qid": "mrqa-001",
            "question": "what is the capital of france",
            "detected_answers": [{"text": "Paris", "char_spans": [[0, 4]]}],
            "answers": ["Paris"],
        }],
    })
    line2 = dumps({
        "context": "Mount Everest rises 8,849 metres above sea level.",
        "qas": [{
            "qid": "mrqa-002",
            "question": "how tall is mount everest",
            "detected_answers": [{"text": "8,849 metres", "char_spans": [[20, 31]]}],
            "answers": ["8,849 metres", "8849 m"],
        }],
    })
    line3 = '{"context": "broken record without a closing brace'
    (DATA / "mrqa_tiny.jsonl").write_text(
        "\n".join([line1, line2, line3]) + "\n", encoding="utf-8"
    )


def make_squad_tiny() -> None:
    para1_context = (
        "The Amazon rainforest covers much of the Amazon basin of South America. "
        "It spans nine countries and holds about 390 billion individual trees."
    )
    para2_context = (
        "The Nile is a major river in northeastern Africa. "
        "It flows through eleven countries before reaching the Mediterranean Sea."
    )
    doc = {
        "version": "v2.0",
        "data": [{
            "title": "Rivers and forests",
            "paragraphs": [
                {
                    "context": para1_context,
                    "qas": [
                        {
                            "id": "squad-001",
                            "question": "How many countries does the Amazon rainforest span?",
                            "is_impossible": False,
                            "answers": [
                                {"text": "nine", "answer_start": para1_context.index("nine")},
                            ],
                        },
                        {
                            "id": "squad-002",
                            "question": "What covers much of the Amazon basin?",
                            "is_impossible": False,
                            "answers": [
                                {"text": "The Amazon rainforest", "answer_start": 0},
                                {"text": "Amazon rainforest", "answer_start": 4},
                            ],
                        },
                        {
                            "id": "squad-003",
                            "question": "Who first mapped the Amazon river?",
                            "is_impossible": True,
                            "answers": [],
                            "plausible_answers": [
                                {"text": "South America",
                                 "answer_start": para1_context.index("South America")},
                            ],
                        },
                    ],
                },
                {
                    "context": para2_context,
                    "qas": [
                        {
                            "id": "squad-004",
                            "question": "Where is the Nile located?",
                            "is_impossible": False,
                            "answers": [
                                {"text": "northeastern Africa",
                                 "answer_start": para2_context.index("northeastern Africa")},
                            ],
                        },
                        {
                            "id": "squad-005",
                            "question": "When was the Nile dammed at Aswan?",
                            "is_impossible": True,
                            "answers": [],
                            "plausible_answers": [],
                        },
                    ],
                },
            ],
        }],
    }
    write_json(DATA / "squad_tiny.json", doc)


# --- narrative/table filter fixture --------------------------------------------

def make_nq_filter() -> None:
    keepers = [
        ("who discovered penicillin",
         "Alexander Fleming discovered penicillin in 1928. The find reshaped medicine.",
         "Alexander Fleming"),
        ("what is the smallest planet",
         "Mercury is the smallest planet in the solar system. It orbits closest to the sun.",
         "Mercury"),
        ("when did the berlin wall fall",
         "The Berlin Wall fell in 1989. Crowds crossed freely that night.",
         "1989"),
        ("where is the louvre museum",
         "The Louvre museum stands in Paris. Millions visit it every year.",
         "Paris"),
        ("which ocean is the deepest",
         "The Pacific ocean is the deepest of all oceans. Its trench reaches eleven kilometres.",
         "Pacific"),
        ("who wrote war and peace",
         "Leo Tolstoy wrote War and Peace over six years. The novel appeared in 1869.",
         "Leo Tolstoy"),
        ("how many moons does mars have",
         "Mars has two moons named Phobos and Deimos. Both are small and irregular.",
         "two"),
        ("what metal is liquid at room temperature",
         "Mercury is the only metal liquid at room temperature. It was once used in thermometers.",
         "Mercury"),
        ("when was the eiffel tower built",
         "The Eiffel Tower was built in 1889 for a world fair. It was meant to be temporary.",
         "1889"),
        ("where do emperor penguins breed",
         "Emperor penguins breed on Antarctic sea ice. Males incubate the eggs through winter.",
         "Antarctic sea ice"),
        ("which gas makes up most of the atmosphere",
         "Nitrogen makes up most of the atmosphere at 78 percent. Oxygen comes second.",
         "Nitrogen"),
        ("who painted the starry night",
         "Vincent van Gogh painted The Starry Night in 1889. He was staying in an asylum.",
         "Vincent van Gogh"),
        ("do sharks have bones",
         "Sharks have skeletons made of cartilage rather than bone. Cartilage is lighter.",
         "cartilage"),
        ("is the great barrier reef visible from space",
         "The Great Barrier Reef is visible from space. It stretches 2,300 kilometres.",
         "visible from space"),
        ("the longest river in asia is?",
         "The Yangtze is the longest river in Asia. It runs 6,300 kilometres.",
         "The Yangtze"),
    ]
    narratives = [
        ("largest city of brazil by population",
         "Sao Paulo is the largest city of Brazil. Over twelve million people live there.",
         "Sao Paulo"),
        ("first person to walk on the moon",
         "Neil Armstrong was the first person to walk on the moon. He stepped out in 1969.",
         "Neil Armstrong"),
        ("number of bones in the human body",
         "An adult human body has 206 bones. Infants are born with about 300.",
         "206"),
    ]
    tables = [
        ("who won the world cup in 2014",
         "<Table> <Tr> <Td> Year </Td> <Td> Winner </Td> </Tr> "
         "<Tr> <Td> 2014 </Td> <Td> Germany </Td> </Tr> </Table>",
         "Germany"),
        ("what team has the most championships",
         "Team | Championships | Years\nBoston | 17 | various\nLakers | 17 | various",
         "Boston"),
    ]
    records = []
    counter = 0
    for question, context, gold in keepers + narratives + tables:
        counter += 1
        records.append(
            instance(f"nq-{counter:03d}", "NQ", question, context, [gold])
        )
    write_jsonl(DATA / "nq_filter_20.jsonl", records)


# --- converter reference corpus -------------------------------------------------
# Expected outputs were worked out by hand from the ordered rule table and
# frozen here; the test compares the converter against these strings.

CONVERTER_CORPUS = [
    {"question": "who plays michael on the good place",
     "answer": "Ted Danson",
     "expected": "Ted Danson plays michael on the good place"},
    {"question": "the first vice president of India who became the president later was?",
     "answer": "Venkaiah Naidu",
     "expected": "the first vice president of India who became the president later was Venkaiah Naidu."},
    {"question": "who wrote hamlet",
     "answer": "William Shakespeare",
     "expected": "William Shakespeare wrote hamlet"},
    {"question": "what is the capital of france?",
     "answer": "Paris",
     "expected": "Paris is the capital of france"},
    {"question": "when did the berlin wall fall",
     "answer": "1989",
     "expected": "1989 did the berlin wall fall"},
    {"question": "where was barack obama born",
     "answer": "Hawaii",
     "expected": "Hawaii was barack obama born"},
    {"question": "which river flows through paris",
     "answer": "the Seine",
     "expected": "which river flows through paris, the Seine."},
    {"question": "how many states are in the usa",
     "answer": "50",
     "expected": "50 states are in the usa"},
    {"question": "how many people live in tokyo",
     "answer": "14 million",
     "expected": "14 million people live in tokyo"},
    {"question": "how much does a tesla cost?",
     "answer": "$40,000",
     "expected": "how much does a tesla cost, $40,000."},
    {"question": "how old was queen elizabeth when she died",
     "answer": "96",
     "expected": "how old was queen elizabeth when she died, 96."},
    {"question": "did shakespeare write macbeth",
     "answer": "Shakespeare",
     "expected": "shakespeare did write macbeth — Shakespeare"},
    {"question": "is the sun a star",
     "answer": "a star",
     "expected": "the sun is a star — a star"},
    {"question": "what country has the most people",
     "answer": "China",
     "expected": "what country has the most people, China."},
    {"question": "what does dna stand for",
     "answer": "deoxyribonucleic acid",
     "expected": "deoxyribonucleic acid does dna stand for"},
    {"question": "largest city of brazil by population",
     "answer": "Sao Paulo",
     "expected": "largest city of brazil by population, Sao Paulo."},
    {"question": "who is the ceo of apple?",
     "answer": "Tim Cook",
     "expected": "Tim Cook is the ceo of apple"},
    {"question": "what is the chemical symbol for gold",
     "answer": "Au",
     "expected": "Au is the chemical symbol for gold"},
    {"question": "when was the declaration of independence signed?",
     "answer": "1776",
     "expected": "1776 was the declaration of independence signed"},
    {"question": "the capital of australia is?",
     "answer": "Canberra",
     "expected": "the capital of australia is Canberra."},
    {"question": "what is X",
     "answer": "X",
     "expected": "X is X"},
]


def make_converter_corpus() -> None:
    write_json(DATA / "converter_corpus.json", CONVERTER_CORPUS)


# --- 50-instance pipeline fixture ------------------------------------------------

FIRST = ["Ada", "Alan", "Marie", "Isaac", "Grace", "Nikola", "Rosalind", "Edwin",
         "Lise", "Enrico"]
LAST = ["Lovelace", "Turing", "Curie", "Newton", "Hopper", "Tesla", "Franklin",
        "Hubble", "Meitner", "Fermi"]
THINGS = ["comet", "theorem", "vaccine", "compiler", "reactor", "galaxy",
          "enzyme", "telescope", "cipher", "polymer"]
PLACES = ["Vienna", "Lisbon", "Oslo", "Kyoto", "Quebec", "Geneva", "Dublin",
          "Prague", "Athens", "Cairo"]
FILLERS = [
    "The archive preserved every letter from that period.",
    "Colleagues praised the meticulous laboratory notebooks.",
    "Funding for the project came from a private society.",
    "Journalists described the announcement as remarkable.",
    "The academy recorded the result in its annual volume.",
]


def make_pipeline_50() -> None:
    rng = random.Random(20240601)
    records = []
    for i in range(50):
        name = f"{FIRST[i % 10]} {LAST[(i // 10 + i) % 10]}"
        thing = THINGS[i % 10]
        place = PLACES[(i * 3) % 10]
        year = 1850 + (i * 7) % 140
        fact = f"{name} presented the {thing} in {place} in {year}."
        filler_a = FILLERS[rng.randrange(len(FILLERS))]
        filler_b = FILLERS[rng.randrange(len(FILLERS))]
        position = i % 3
        if position == 0:
            context = f"{fact} {filler_a} {filler_b}"
        elif position == 1:
            context = f"{filler_a} {fact} {filler_b}"
        else:
            context = f"{filler_a} {filler_b} {fact}"
        question = f"who presented the {thing} in {place}"
        meta = {"title": f"The {thing} of {place}"}
        if i % 5 in (1, 3):
            meta["qa_mock"] = "wrong"
        records.append(
            instance(f"pipe-{i:03d}", "NQ", question, context, [name], meta=meta)
        )
    write_jsonl(DATA / "pipeline_50.jsonl", records)


# --- adversarial rejection fixture -------------------------------------------

UNANSWERABLE = [
    ("which explorer charted the frozen archipelago",
     "Quarterly revenue climbed steadily. Accounting staff reviewed spreadsheet totals."),
    ("who composed the unfinished violin concerto",
     "Gravel deliveries slowed during roadwork. Drivers rerouted around usual detours."),
    ("what pigment colours autumn maple leaves",
     "Brokers settled outstanding futures contracts. Margins tightened across commodity desks."),
    ("which dynasty built the coastal fortresses",
     "Software patches shipped overnight. Engineers monitored deployment dashboards closely."),
    ("who translated the epic bronze tablets",
     "Harvest crews baled alfalfa before dusk. Irrigation schedules shifted with rainfall."),
    ("what mineral lines the cavern walls",
     "Referees reviewed disputed penalty footage. Broadcasters replayed angles repeatedly."),
    ("which physicist measured the stellar parallax",
     "Bakers proofed sourdough loaves overnight. Ovens ran continuously through morning."),
    ("who choreographed the winter ballet premiere",
     "Customs officials inspected container manifests. Dockworkers unloaded refrigerated cargo."),
    ("what current warms the northern fjords",
     "Libraries extended weekend lending hours. Students reserved study rooms early."),
    ("which treaty ended the border skirmishes",
     "Vineyards netted ripening grape clusters. Pickers started before sunrise daily."),
]

ANSWERABLE = [
    ("who composed the moonlight sonata", "Ludwig van Beethoven",
     "Ludwig van Beethoven composed the moonlight sonata in 1801. The piece spread quickly."),
    ("who painted the sistine chapel ceiling", "Michelangelo",
     "Michelangelo painted the sistine chapel ceiling over four years. Visitors crane to see it."),
    ("who discovered radium and polonium", "Marie Curie",
     "Marie Curie discovered radium and polonium in 1898. Both finds earned medals."),
    ("who invented the printing press", "Johannes Gutenberg",
     "Johannes Gutenberg invented the printing press around 1440. Books became affordable."),
    ("who wrote the origin of species", "Charles Darwin",
     "Charles Darwin wrote the origin of species in 1859. The text stirred debate."),
    ("who designed the brooklyn bridge", "John Roebling",
     "John Roebling designed the brooklyn bridge before his death. His son finished it."),
    ("who founded the red cross", "Henry Dunant",
     "Henry Dunant founded the red cross after witnessing war. The idea spread across borders."),
    ("who proposed the heliocentric model", "Nicolaus Copernicus",
     "Nicolaus Copernicus proposed the heliocentric model in 1543. Astronomers argued for decades."),
    ("who climbed everest first with norgay", "Edmund Hillary",
     "Edmund Hillary climbed everest first with norgay in 1953. News reached London by wire."),
    ("who decoded the rosetta stone", "Jean-Francois Champollion",
     "Jean-Francois Champollion decoded the rosetta stone in 1822. Egyptology grew from there."),
]


def make_adversarial() -> None:
    records = []
    for i, (question, context) in enumerate(UNANSWERABLE, start=1):
        records.append(
            instance(f"adv-u{i:02d}", "SQuAD2", question, context, [],
                     answerable=False)
        )
    for i, (question, gold, context) in enumerate(ANSWERABLE, start=1):
        records.append(
            instance(f"adv-a{i:02d}", "SQuAD2", question, context, [gold])
        )
    write_jsonl(DATA / "adversarial.jsonl", records)


# --- external NLI fixtures ------------------------------------------------------

def make_external_nli() -> None:
    labels = ["entailment", "neutral", "contradiction"]
    subjects = ["The courier", "A violinist", "The gardener", "An archivist",
                "The surveyor", "A beekeeper"]
    actions = ["delivered the sealed parcel", "rehearsed the evening program",
               "pruned the orchard rows", "catalogued the glass negatives",
               "measured the northern boundary"]
    records = []
    for i in range(60):
        subject = subjects[i % len(subjects)]
        action = actions[i % len(actions)]
        premise = f"{subject} {action} before noon on Tuesday."
        if i % 3 == 0:
            hypothesis = f"{subject} {action}."
        elif i % 3 == 1:
            hypothesis = f"{subject} planned a holiday abroad."
        else:
            hypothesis = f"{subject} never {action}."
        records.append({
            "pairID": f"mnli-{i:03d}",
            "sentence1": premise,
            "sentence2": hypothesis,
            "gold_label": labels[i % 3],
        })
    write_jsonl(DATA / "external_nli.jsonl", records)


def make_mix_small() -> None:
    qa = []
    for i in range(5):
        qa.append({
            "premise": f"Fact number {i} appeared in the ledger.",
            "hypothesis": f"The ledger mentioned fact number {i}.",
            "label": "entailed" if i % 2 == 0 else "not_entailed",
            "origin": "qa_derived",
            "instance_id": f"mix-qa-{i}",
            "meta": {},
        })
    external = []
    for i in range(5):
        external.append({
            "premise": f"Witness {i} signed the statement on Friday.",
            "hypothesis": f"Witness {i} signed a statement.",
            "label": "entailed" if i % 2 == 1 else "not_entailed",
            "origin": "external_nli",
            "instance_id": f"mix-ext-{i}",
            "meta": {"source": "mnli"},
        })
    write_jsonl(DATA / "mix_small_qa.jsonl", qa)
    write_jsonl(DATA / "mix_small_external.jsonl", external)


# --- agreement worked example ---------------------------------------------------
# Classic 10-item, 14-rater, 5-category matrix. Expected kappa derived by
# hand with the pairwise-agreement formula: P_bar = 688/1820, Pe = 417/1960,
# kappa = 4211/20059.

FLEISS_COUNTS = [
    [0, 0, 0, 0, 14],
    [0, 2, 6, 4, 2],
    [0, 0, 3, 5, 6],
    [0, 3, 9, 2, 0],
    [2, 2, 8, 1, 1],
    [7, 7, 0, 0, 0],
    [3, 2, 6, 3, 0],
    [2, 5, 3, 2, 2],
    [6, 5, 2, 1, 0],
    [0, 2, 2, 3, 7],
]


def make_fleiss_worked() -> None:
    write_json(DATA / "fleiss_worked.json", {
        "counts": FLEISS_COUNTS,
        "categories": ["c1", "c2", "c3", "c4", "c5"],
        "n_raters": 14,
        "expected_kappa": 4211 / 20059,
    })


def main() -> None:
    make_mrqa_tiny()
    make_squad_tiny()
    make_nq_filter()
    make_converter_corpus()
    make_pipeline_50()
    make_adversarial()
    make_external_nli()
    make_mix_small()
    make_fleiss_worked()
    print(f"fixtures written to {DATA}")


if __name__ == "__main__":
    main()
