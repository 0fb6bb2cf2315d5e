import json

import pytest
from hypothesis import given, strategies as st

from picod.constructions import construct_case1, construct_case3, construct_max
from picod.core import IndexCode, InvalidParameters, ProblemInstance, make_code
from picod.decoder import decode_report
from picod.verifier import (
    ExpectedAssignment,
    collect_findings,
    expected_assignment_case1,
    expected_max_tally,
    report_discrepancies,
    tally_decodes,
    verify_c_constraint,
    verify_coverage,
    verify_exactly_one,
    verify_max_tally,
)

CODE_7_3 = make_code(ProblemInstance(7, 3), [[3, 0], [1, 4, 5, 6]])
CODE_9_4 = make_code(ProblemInstance(9, 4, 4), [[0, 4], [3, 8]])


def test_exactly_one_examples():
    assert verify_exactly_one(CODE_7_3).holds
    assert verify_exactly_one(make_code(ProblemInstance(7, 6), [range(7)]), "per_symbol").holds
    out = verify_exactly_one(IndexCode(ProblemInstance(5, 2)))
    assert not out.holds
    assert [v[1] for v in out.violations] == list(range(5))


def test_coverage_examples():
    assert verify_coverage(make_code(ProblemInstance(6, 3), [[0, 3]])).holds
    assert not verify_coverage(IndexCode(ProblemInstance(6, 3))).holds
    assert verify_coverage(construct_max(ProblemInstance(10, 6))).holds


def test_c_constraint_examples():
    assert verify_c_constraint(CODE_9_4, 4).holds
    rep = decode_report(CODE_9_4)
    assert {m: len(rep.decoders[m]) for m in (0, 3, 4, 8)} == {0: 4, 3: 4, 4: 4, 8: 4}
    out = verify_c_constraint(CODE_9_4, 3)
    assert not out.holds
    assert sorted(v[1] for v in out.violations if v[0] == "message") == [0, 3, 4, 8]
    assert verify_c_constraint(construct_max(ProblemInstance(9, 4)), 9).holds


@pytest.mark.parametrize(
    "code, expected",
    [
        (construct_max(ProblemInstance(10, 6)), (0, 10, 20)),
        (make_code(ProblemInstance(6, 3), [[0, 3]]), (6, 0, 6)),
        (construct_max(ProblemInstance(11, 6)), (2, 9, 20)),
    ],
)
def test_tallies(code, expected):
    assert tuple(tally_decodes(code)) == expected


def test_expected_max_tally_branches():
    assert expected_max_tally(14, 4) == (8, 6, 20)
    assert expected_max_tally(8, 4) == (8, 0, 8)
    assert expected_max_tally(11, 6) == (2, 9, 20)
    assert verify_max_tally(construct_max(ProblemInstance(11, 6))).holds


def test_case1_assignment_example():
    ea = expected_assignment_case1(7, 3, 3)
    assert ea.is_partition()
    assert {c for c, (m, _) in ea.groups.items() if m == 3} == {1, 2, 3}
    assert {c for c, (m, _) in ea.groups.items() if m == 0} == {4, 5, 6}
    assert ea.groups[0] == (1, 1)
    assert report_discrepancies(CODE_7_3, ea) == []


@pytest.mark.parametrize("p", range(7, 25))
def test_case1_assignment_matches_decoder(p):
    for k in range(3, (p + 1) // 2):
        for i in range(p):
            code = construct_case1(ProblemInstance(p, k), i)
            ea = expected_assignment_case1(p, k, i)
            assert ea.is_partition()
            assert report_discrepancies(code, ea, "per_symbol") == []


def test_example_with_inconsistent_claims_is_reported():
    # The worked k=2 example credits clients 0 and 3 with x0 and client 2 with x3.
    code = construct_case3(ProblemInstance(4, 2), 1)
    claims = ExpectedAssignment(4, {0: (0, 0), 3: (0, 0), 2: (3, 0)})
    disc = report_discrepancies(code, claims)
    assert disc
    assert disc[0] == (0, 0, [1])


def test_discrepancy_empty_on_all_xor():
    code = make_code(ProblemInstance(5, 4), [range(5)])
    ea = ExpectedAssignment(5, {c: (c, 0) for c in range(5)})
    assert report_discrepancies(code, ea) == []


def test_case1_assignment_rejects_other_ranges():
    with pytest.raises(InvalidParameters):
        expected_assignment_case1(8, 4)


@st.composite
def small_codes(draw):
    p = draw(st.integers(3, 9))
    k = draw(st.integers(1, p - 1))
    masks = draw(st.lists(st.integers(1, (1 << p) - 1), min_size=1, max_size=4))
    return make_code(ProblemInstance(p, k), [[j for j in range(p) if m >> j & 1] for m in masks])


@given(small_codes())
def test_outcome_invariants(code):
    for sem in ("per_symbol", "fixed_point", "linear_closure"):
        one = verify_exactly_one(code, sem)
        assert one.holds == (not one.violations)
        t = tally_decodes(code, sem)
        rep = decode_report(code, sem)
        assert t.total == sum(len(v) for v in rep.decoders.values())
    if verify_exactly_one(code, "fixed_point").holds:
        for sem in ("per_symbol", "fixed_point", "linear_closure"):
            assert verify_coverage(code, sem).holds


def test_outcome_json():
    data = json.loads(verify_c_constraint(CODE_9_4, 3).to_json())
    assert data["claim"] == "c_constraint"
    assert data["holds"] is False
    assert data["semantics"] == "fixed_point"


def test_findings_small_sweep():
    found = collect_findings(11, include_printed_max=False)
    kinds = {(f.construction, f.claim) for f in found}
    assert all(claim == "c_constraint" for _, claim in kinds)
    assert {(f.p, f.k, f.c) for f in found} == {(p, 1, 1) for p in (3, 5, 7, 9, 11)}
    printed = [f for f in collect_findings(11) if f.construction == "max_decode_printed"]
    assert printed
