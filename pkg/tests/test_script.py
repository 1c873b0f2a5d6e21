from pathlib import Path

import pytest

from bkernel.script import RULES, check_script, check_text, load_script, ScriptError
from bkernel import derived as D
from bkernel import kernel as K

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

AND_TWICE = """theorem and_twice
env: a : A
s1: ax "a : A"
s2: and_i s1 s1
qed s2 : "a : A & a : A"
"""


def test_simple_script_ok():
    report = check_text(AND_TWICE)
    assert report.ok and report.steps == 2 and report.theorem == "and_twice"


def test_goal_mismatch():
    report = check_text(AND_TWICE.replace('qed s2 : "a : A & a : A"', 'qed s2 : "a : A"'))
    assert report.status == "fail" and report.error_kind == "GoalMismatch"
    assert report.failing_step == "s2"


def test_goal_env_must_match_declaration():
    text = AND_TWICE.replace("env: a : A\n", "")
    report = check_text(text)
    assert report.error_kind == "GoalMismatch"


def test_not_fresh_is_a_step_error():
    text = """theorem bad
env: a : A
s1: ax "a : A"
s2: forall_i a s1
qed s2 : "!x.(x : A)"
"""
    report = check_text(text)
    assert report.error_kind == "StepError" and report.failing_step == "s2"
    assert report.message.startswith("NotFresh")
    assert report.line == 4


@pytest.mark.parametrize(
    "text, kind",
    [
        ("s1: eq_refl a\nqed s1 : \"a = a\"\n", "ScriptSyntaxError"),
        ("theorem t\ns1: eq_refl a\n", "ScriptSyntaxError"),
        ("theorem t\ns1: frobnicate a\nqed s1 : \"a = a\"\n", "ScriptSyntaxError"),
        ("theorem t\ns1: eq_refl a b\nqed s1 : \"a = a\"\n", "ScriptSyntaxError"),
        ("theorem t\ns1: eq_refl a\ns1: eq_refl a\nqed s1 : \"a = a\"\n", "ScriptSyntaxError"),
        ("theorem t\ns1: eq_refl \"a |->\"\nqed s1 : \"a = a\"\n", "SyntaxError"),
        ("theorem t\ns1: eq_refl a\nqed s1 : \"a = a\"\nmore\n", "ScriptSyntaxError"),
        ("theorem t\nl, r: eq_refl a\nqed l : \"a = a\"\n", "ScriptSyntaxError"),
    ],
)
def test_malformed_scripts(text, kind):
    report = check_text(text)
    assert report.status == "fail" and report.error_kind == kind


def test_missing_file_is_io_error(tmp_path):
    report = check_script(tmp_path / "absent.bpf")
    assert report.error_kind == "IOError" and not report.ok


def test_load_script_structure():
    s = load_script(AND_TWICE)
    assert s.name == "and_twice" and s.env_decl == ["a : A"]
    assert [st.labels for st in s.steps] == [("s1",), ("s2",)]
    assert s.goal == ("s2", "a : A & a : A")
    with pytest.raises(ScriptError):
        load_script("theorem a b\n")


def test_registry_covers_kernel_and_derived():
    assert set(K.RULES) <= set(RULES)
    missing = set(D.DERIVED) - set(RULES)
    assert not missing


def test_corpus_checks():
    files = sorted(CORPUS.glob("*.bpf"))
    assert len(files) >= 10
    for f in files:
        report = check_script(f)
        assert report.ok, report.render()


def test_negative_corpus_fails():
    files = sorted((CORPUS / "negative").glob("*.bpf"))
    assert files
    for f in files:
        assert not check_script(f).ok


def test_reports_are_deterministic():
    for f in sorted(CORPUS.rglob("*.bpf")):
        assert check_script(f).render() == check_script(f).render()
