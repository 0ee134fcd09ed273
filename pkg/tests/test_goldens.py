from pathlib import Path

import pytest

from objeval.combinators import normalize, render_code
from objeval.derivations import DERIVATIONS, all_traces
from objeval.parsing import parse_code

GOLDEN = Path(__file__).parent / "golden"
NAMES = sorted(DERIVATIONS)


def test_every_derivation_has_a_golden():
    assert sorted(p.stem for p in GOLDEN.glob("*.txt")) == NAMES


@pytest.mark.parametrize("name", NAMES)
def test_trace_matches_golden_byte_for_byte(name):
    golden = (GOLDEN / f"{name}.txt").read_bytes()
    assert all_traces()[name].encode("utf-8") == golden


def _header(text, key):
    for line in text.splitlines():
        if line.startswith(f"# {key}: "):
            return line[len(f"# {key}: "):]
    raise KeyError(key)


# written out by hand from the translation rules, independent of the compiler
HAND = {
    "constant": ("Snd", "Snd", "atom:c0"),
    "variable": ("Snd . <Fst . Fst, Snd>", "Snd", "atom:h1"),
    "identity": ("Eps . <Cur(Snd . <Fst . Fst, Snd>), Snd . Fst>",
                 "Eps . <Cur(Snd), Snd . Fst>", "atom:h1"),
    "compound": ("Eps . <Cur((Eps . <Snd . Fst, Snd>) . <Fst . Fst, Snd>), Snd . Fst . Fst>",
                 "Eps . <Cur(Eps . <Snd . Fst . Fst, Snd>), Snd . Fst . Fst>", "3"),
    "plus": ("Eps . <Cur(Prim(+) . Snd), <Eps . <Cur(Can(nat) . Snd), Const(2)>, "
             "Eps . <Cur(Can(nat) . Snd), Const(3)>>>", None, "5"),
}


@pytest.mark.parametrize("name", NAMES)
def test_hand_derived_code_and_result(name):
    text = (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")
    raw, code, result = HAND[name]
    assert _header(text, "code (raw)") == raw
    if code is not None:
        assert _header(text, "code") == code
    assert render_code(normalize(parse_code(raw))) == _header(text, "code")
    assert text.splitlines()[-1] == f"result: {result}"


@pytest.mark.parametrize("name", NAMES)
def test_raw_and_normal_code_give_the_same_result(name):
    text = (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")
    raw_part = text.split("## evaluation (raw)\n")[1].split("## evaluation\n")[0]
    norm_part = text.split("## evaluation\n")[1]
    last_raw = raw_part.splitlines()[-1]
    last_norm = norm_part.splitlines()[-2]
    # the outermost step is unindented and carries the final value
    assert not last_raw.startswith(" ") and not last_norm.startswith(" ")
    assert last_raw.rsplit(" ⇒ ", 1)[1] == last_norm.rsplit(" ⇒ ", 1)[1]


@pytest.mark.parametrize("name", NAMES)
def test_placeholder_is_never_produced(name):
    text = (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")
    for line in text.splitlines():
        if "⇒" in line:
            assert not line.rstrip().endswith("⇒ ?x")


def test_compound_rewrite_steps():
    text = (GOLDEN / "compound.txt").read_text(encoding="utf-8")
    steps = text.split("## rewrite\n")[1].split("## evaluation")[0].splitlines()
    assert [s.split(":")[0] for s in steps] == ["R5", "R3", "R4"]
