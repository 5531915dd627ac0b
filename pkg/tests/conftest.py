import json
from pathlib import Path

import pytest

from qanli.corpus import instance_from_dict

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


def load_instances(name: str):
    path = DATA_DIR / name
    return [
        instance_from_dict(json.loads(line))
        for line in path.read_text(encoding="utf-8").splitlines()
        if line
    ]


@pytest.fixture(scope="session")
def pipeline_instances():
    return load_instances("pipeline_50.jsonl")


@pytest.fixture(scope="session")
def adversarial_instances():
    return load_instances("adversarial.jsonl")


@pytest.fixture(scope="session")
def nq_instances():
    return load_instances("nq_filter_20.jsonl")


@pytest.fixture(scope="session")
def converter_corpus():
    return json.loads((DATA_DIR / "converter_corpus.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def fleiss_worked():
    return json.loads((DATA_DIR / "fleiss_worked.json").read_text(encoding="utf-8"))
