import pytest

from cluster.errors import ExactDivisionFailed, NotDivisible
from cluster.utils import exception_debug_str, load_jsonl, parse_permutation, parse_word, write_jsonl


def test__parse_word():
    assert parse_word("1,2,1") == (1, 2, 1)
    assert parse_word(" e ") == ()
    assert parse_word("") == ()
    with pytest.raises(ValueError):
        parse_word("1;2")


def test__parse_permutation():
    assert parse_permutation("1:2,2:1") == {1: 2, 2: 1}
    with pytest.raises(ValueError):
        parse_permutation("1-2")


def test__exception_debug_str__follows_the_cause_chain():
    try:
        try:
            raise NotDivisible("x1 + 1 by x2")
        except NotDivisible as e:
            raise ExactDivisionFailed("minor at vertex 1") from e
    except ExactDivisionFailed as e:
        text = exception_debug_str(e)
    assert text == "ExactDivisionFailed('minor at vertex 1') <- NotDivisible('x1 + 1 by x2')"
    assert exception_debug_str(KeyError("k")) == "KeyError('k')"


def test__jsonl_round_trip(tmp_path):
    path = tmp_path / "nested" / "cases.jsonl"
    write_jsonl([{"case_id": "a"}, {"case_id": "b"}], path)
    assert load_jsonl(path) == [{"case_id": "a"}, {"case_id": "b"}]
