import pytest

from permgrid.perm import perm
from permgrid.classes import structure
from permgrid.classes.structure import CLAIMS, MAX_N, THEOREMS, Claim, verify_structure


@pytest.mark.parametrize("theorem", THEOREMS)
def test_claims_hold(theorem):
    r = verify_structure(theorem, 8)
    assert r.passed, r.reason
    assert sorted(r.checked) == list(range(1, 9))
    d = r.as_dict()
    assert d["passed"] and d["counterexample"] is None and d["summary"]


def test_simples_only_claims_skip_short_lengths():
    r = verify_structure("simples_in_TFSX", 6)
    assert r.checked[1] == r.checked[2] == r.checked[3] == 0
    assert r.checked[4] == 2


def test_bad_arguments():
    with pytest.raises(KeyError, match="unknown structure claim"):
        verify_structure("nope", 5)
    for n in (0, MAX_N + 1):
        with pytest.raises(ValueError):
            verify_structure("union_ABCD", n)


def test_counterexample_reported(monkeypatch):
    # drop D from the union: some member of Av(2143,4321) is then uncovered
    monkeypatch.setitem(CLAIMS, "union_without_D", Claim(("2143", "4321"), ("A", "B", "C"), "equal"))
    r = verify_structure("union_without_D", 7)
    assert not r.passed and r.counterexample is not None
    assert "none of A, B, C" in r.reason
    assert r.as_dict()["counterexample"] == str(r.counterexample)


def test_equal_claim_checks_the_reverse_inclusion(monkeypatch):
    # the wedge class is not inside Av(21): 21 itself is a member of the grid class
    monkeypatch.setitem(CLAIMS, "too_big", Claim(("21",), ("wedge",), "equal"))
    r = verify_structure("too_big", 3)
    assert not r.passed and r.counterexample == perm("21")
    assert "not in Av(21)" in r.reason


def test_inside_claim_allows_a_larger_union(monkeypatch):
    monkeypatch.setitem(CLAIMS, "small", Claim(("21",), ("wedge",), "inside"))
    assert verify_structure("small", 5).passed
