import json
import warnings

import pytest
from hypothesis import given, strategies as st

from picod.core import (
    CodedSymbol,
    IndexCode,
    InvalidParameters,
    ProblemInstance,
    SupportCancellation,
    make_code,
    normalize_index,
    side_info,
    xor_symbol,
)


@pytest.mark.parametrize(
    "p, k, i, expected",
    [(7, 3, 0, {6, 5, 4}), (7, 3, 3, {2, 1, 0}), (4, 2, 1, {0, 3})],
)
def test_side_info_examples(p, k, i, expected):
    assert side_info(ProblemInstance(p, k), i).members == expected


@pytest.mark.parametrize("p, j, expected", [(7, -1, 6), (9, 9, 0), (7, 3 + 7 - 3, 0)])
def test_normalize_index(p, j, expected):
    assert normalize_index(ProblemInstance(p, 1), j) == expected


def test_side_info_rejects_out_of_range_client():
    with pytest.raises(IndexError):
        side_info(ProblemInstance(5, 2), 5)


@pytest.mark.parametrize("p, k, c", [(1, 1, None), (5, 0, None), (5, 5, None), (5, 2, 0)])
def test_instance_validation(p, k, c):
    with pytest.raises(InvalidParameters):
        ProblemInstance(p, k, c)


instances = st.integers(2, 30).flatmap(lambda p: st.tuples(st.just(p), st.integers(1, p - 1)))


@given(instances)
def test_windows_partition_and_are_distinct(pk):
    p, k = pk
    inst = ProblemInstance(p, k)
    windows = [side_info(inst, i) for i in range(p)]
    for w in windows:
        assert len(w.members) == k
        assert len(w.want) == p - k
        assert w.members | w.want == set(range(p))
        assert not w.members & w.want
        assert (w.owner - 1) % p in w.members
    assert len({w.members for w in windows}) == p


def test_xor_symbol_cancels_pairs_with_warning():
    inst = ProblemInstance(9, 4)
    with pytest.warns(SupportCancellation):
        sym = xor_symbol(inst, [0, 4, 13])
    assert sym.support == {0}
    with pytest.warns(SupportCancellation):
        assert xor_symbol(inst, [2, 11]) is None


def test_xor_symbol_quiet_without_collision():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert xor_symbol(ProblemInstance(7, 3), [3, 7]).support == {3, 0}


def test_symbol_requires_nonempty_support():
    with pytest.raises(InvalidParameters):
        CodedSymbol(frozenset())


def test_code_rejects_indices_outside_range():
    with pytest.raises(InvalidParameters):
        IndexCode(ProblemInstance(4, 2), (CodedSymbol(frozenset({4})),))


def test_json_is_canonical_and_round_trips():
    code = make_code(ProblemInstance(9, 4, 4), [[4, 0], [8, 3]], "constrained")
    data = json.loads(code.to_json())
    assert data == {"p": 9, "k": 4, "c": 4, "origin": "constrained", "symbols": [[0, 4], [3, 8]]}
    assert IndexCode.from_json(code.to_json()) == code


@pytest.mark.parametrize(
    "payload",
    [
        {"p": 5, "k": 2, "symbols": []},
        {"p": 5, "k": 2, "symbols": [[]]},
        {"p": 5, "k": 2, "symbols": [[1, 1]]},
        {"p": 5, "k": 2, "symbols": [[7]]},
        {"k": 2, "symbols": [[1]]},
    ],
)
def test_json_parse_errors(payload):
    with pytest.raises(InvalidParameters):
        IndexCode.from_dict(payload)


def test_shifted_rotates_every_index():
    code = make_code(ProblemInstance(7, 3), [[3, 0], [1, 4, 5, 6]])
    assert code.shifted(2).supports() == [[2, 5], [0, 1, 3, 6]]
