import io
import json
import subprocess
import sys

import pytest

from chordslide.cli import run
from chordslide.domain import domain_from_json, standard_domain
from chordslide.moves import path_from_json
from chordslide.triangulation import flip_path_to_json, triangulation_from_json
from chordslide.corpus import random_flip_path
from chordslide.words import GenusContext

TWIST_MAP = {"genus": 1, "images": {"a1": "a1", "b1": "b1 a1"}}


def call(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_factorize_twist(tmp_path):
    code, out, _ = call(["factorize", "--genus", "1", "--map", write(tmp_path, "twist.json", TWIST_MAP)])
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["command"] == "factorize"
    assert doc["length"] == 1
    assert doc["images"] == {"a1": "a1", "b1": "b1 a1"}


def test_reduce_standard():
    code, out, _ = call(["reduce", "--genus", "1", "--domain", "standard"])
    assert code == 0
    doc = json.loads(out)
    assert doc["moves"] == [] and doc["steps"] == []


def test_random_walk_then_reduce(monkeypatch):
    code, walked, _ = call(["random-walk", "--genus", "2", "--steps", "50", "--seed", "7"])
    assert code == 0
    assert json.loads(walked)["seed"] == 7
    code, out, err = call(["reduce", "--trace"], walked, monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert domain_from_json(doc["final"]) == standard_domain(GenusContext(2))
    lines = [json.loads(line) for line in err.splitlines()]
    assert len(lines) == len(doc["moves"]) > 0


def test_random_walk_zero_steps():
    code, out, _ = call(["random-walk", "--genus", "2", "--steps", "0"])
    doc = json.loads(out)
    assert domain_from_json(doc["domain"]) == standard_domain(GenusContext(2)) and doc["path"]["moves"] == []


def test_random_walk_is_byte_identical():
    argv = ["random-walk", "--genus", "3", "--steps", "30", "--seed", "11"]
    assert call(argv)[1] == call(argv)[1]


def test_walk_roundtrip():
    doc = json.loads(call(["random-walk", "--genus", "2", "--steps", "20", "--seed", "1"])[1])
    P = domain_from_json(doc["domain"])
    path = path_from_json(doc["path"])
    assert path.final() == P and path.base == standard_domain(GenusContext(2))


def test_input_errors():
    code, out, err = call(["reduce", "--domain", "standard"])
    assert code == 1 and out == "" and json.loads(err)["error"] == "UsageError"
    code, _, err = call(["render", "--genus", "1", "--domain", "standard", "--format", ""])
    assert code == 1 and json.loads(err)["error"] == "UsageError"
    code, _, err = call(["render", "--genus", "1", "--domain", "standard", "--format", "gif"])
    assert code == 1
    code, _, err = call(["no-such-command"])
    assert code == 1 and json.loads(err)["error"] == "UsageError"
    code, _, err = call(["random-walk", "--steps", "-3"])
    assert code == 1 and json.loads(err)["error"] == "UsageError"


def test_invalid_domain_record(tmp_path, monkeypatch):
    bad = {"genus": 1, "sides": ["b1", "a1", "b1", "A1"], "pairing": [[1, 3], [2, 4]]}
    code, _, err = call(["verify"], json.dumps(bad), monkeypatch)
    assert code == 1
    assert json.loads(err)["error"] == "InvalidDomain"
    code, _, err = call(["reduce", write(tmp_path, "bad.json", bad)])
    assert code == 1
    code, _, err = call(["reduce"], "{not json", monkeypatch)
    assert code == 1 and json.loads(err)["error"] == "InputError"


def test_verify_accepts_standard():
    code, out, _ = call(["verify", "--genus", "2", "--domain", "standard"])
    assert code == 0 and json.loads(out)["valid"] is True


def test_verify_relations():
    code, out, _ = call(["verify", "--relations", "--genus", "1", "--max-loop", "3"])
    assert code == 0
    census = json.loads(out)["census"]
    assert census["counts"]["I"] == 6 and census["counts"]["T"] == 6
    code, _, err = call(["verify", "--relations", "--genus", "1", "--max-loop", "9"])
    assert code == 1 and json.loads(err)["error"] == "SearchBudgetExceeded"


def test_triangulate_extract_pipeline(monkeypatch):
    walked = call(["random-walk", "--genus", "2", "--steps", "25", "--seed", "4"])[1]
    code, tri, _ = call(["triangulate"], walked, monkeypatch)
    assert code == 0
    triangulation_from_json(json.loads(tri)["triangulation"])
    code, out, _ = call(["extract"], tri, monkeypatch)
    assert code == 0
    assert json.loads(out)["domain"] == json.loads(walked)["domain"]


def test_translate_flips(tmp_path):
    path = random_flip_path(2, 9)
    code, out, _ = call(["translate-flips", write(tmp_path, "flips.json", flip_path_to_json(path))])
    assert code == 0
    doc = json.loads(out)
    assert doc["replacements"].get("connector", 0) == 0
    assert path_from_json(doc["path"]).final() == domain_from_json(doc["final"])


@pytest.mark.parametrize("fmt", ["ascii", "dot", "svg"])
def test_render(fmt):
    argv = ["render", "--genus", "1", "--domain", "standard", "--format", fmt]
    code, out, _ = call(argv)
    assert code == 0 and out == call(argv)[1]


def test_console_script_pipeline():
    walk = subprocess.run([sys.executable, "-m", "chordslide.cli", "random-walk", "--genus", "2",
                           "--steps", "50", "--seed", "7"], capture_output=True, check=True)
    red = subprocess.run([sys.executable, "-m", "chordslide.cli", "reduce"], input=walk.stdout,
                         capture_output=True)
    assert red.returncode == 0
    final = domain_from_json(json.loads(red.stdout)["final"])
    assert final == standard_domain(GenusContext(2))
