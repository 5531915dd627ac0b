from qanli.jsonl import (
    dumps_canonical,
    read_json,
    read_jsonl,
    write_json,
    write_jsonl,
)


def test_canonical_is_key_sorted_and_compact():
    assert dumps_canonical({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'


def test_canonical_keeps_unicode():
    assert dumps_canonical({"t": "café"}) == '{"t":"café"}'


def test_jsonl_round_trip(tmp_path):
    records = [{"id": "a", "n": 1}, {"id": "b", "n": 2}]
    path = tmp_path / "sub" / "records.jsonl"
    assert write_jsonl(path, records) == 2
    assert list(read_jsonl(path)) == records


def test_jsonl_bytes_stable(tmp_path):
    records = [{"z": 1, "a": 2}]
    write_jsonl(tmp_path / "one.jsonl", records)
    write_jsonl(tmp_path / "two.jsonl", records)
    one = (tmp_path / "one.jsonl").read_bytes()
    assert one == (tmp_path / "two.jsonl").read_bytes()
    assert one == b'{"a":2,"z":1}\n'


def test_json_round_trip(tmp_path):
    payload = {"nested": {"b": 1, "a": 2}, "list": [3, 1]}
    path = tmp_path / "doc.json"
    write_json(path, payload)
    assert read_json(path) == payload
    text = path.read_text()
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')
