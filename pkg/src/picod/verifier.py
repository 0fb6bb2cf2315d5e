"""Machine-checked decodability claims over decode reports."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .constructions import (
    _in_case1,
    case1_schedule,
    construct_constrained,
    construct_exactly_one,
    construct_max,
    exactly_one_case,
    split_params,
)
from .core import Infeasible, IndexCode, InvalidParameters, ProblemInstance, SupportCancellation, Unsupported
from .decoder import DEFAULT_SEMANTICS, DecodeReport, DecodingSemantics, decode_report

CLAIMS = ("exactly_one", "coverage", "c_constraint", "max_tally", "expected_assignment")


@dataclass(frozen=True)
class VerificationOutcome:
    claim: str
    holds: bool
    violations: tuple[tuple[str, int, str], ...]
    semantics: DecodingSemantics

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "holds": self.holds,
            "semantics": self.semantics.value,
            "violations": [{"kind": kind, "index": idx, "detail": d} for kind, idx, d in self.violations],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _outcome(claim: str, violations: list[tuple[str, int, str]], semantics: DecodingSemantics) -> VerificationOutcome:
    violations.sort(key=lambda v: (v[0], v[1]))
    return VerificationOutcome(claim, not violations, tuple(violations), semantics)


def _report(code: IndexCode, semantics) -> DecodeReport:
    return decode_report(code, DecodingSemantics.parse(semantics))


def verify_exactly_one(code: IndexCode, semantics=DEFAULT_SEMANTICS) -> VerificationOutcome:
    rep = _report(code, semantics)
    bad = [
        ("client", i, f"decodes {sorted(ms)}")
        for i, ms in rep.decoded.items()
        if len(ms) != 1
    ]
    return _outcome("exactly_one", bad, rep.semantics)


def verify_coverage(code: IndexCode, semantics=DEFAULT_SEMANTICS) -> VerificationOutcome:
    rep = _report(code, semantics)
    bad = [("client", i, "decodes nothing") for i, ms in rep.decoded.items() if not ms]
    return _outcome("coverage", bad, rep.semantics)


def verify_c_constraint(code: IndexCode, c: int, semantics=DEFAULT_SEMANTICS) -> VerificationOutcome:
    """Coverage plus: no message is decoded by more than ``c`` clients that want it."""
    if c < 1:
        raise InvalidParameters(f"c must be >= 1, got {c}")
    rep = _report(code, semantics)
    bad = [("client", i, "decodes nothing") for i, ms in rep.decoded.items() if not ms]
    bad += [
        ("message", m, f"decoded by {len(cl)} > {c} clients {sorted(cl)}")
        for m, cl in rep.decoders.items()
        if len(cl) > c
    ]
    return _outcome("c_constraint", bad, rep.semantics)


class Tally(NamedTuple):
    count_one: int
    count_two: int
    total: int


def tally_decodes(code: IndexCode, semantics=DEFAULT_SEMANTICS) -> Tally:
    sizes = _report(code, semantics).sizes()
    return Tally(sizes.count(1), sizes.count(2), sum(sizes))


def expected_max_tally(p: int, k: int) -> Tally:
    """Claimed (count_one, count_two, total) for the max-decode code (anchor-independent)."""
    if p > 3 * k:
        return Tally(2 * k, p - 2 * k, 2 * p - 2 * k)
    sp = split_params(p, k)
    if sp.q1 == 0:
        return Tally(p, 0, p)
    return Tally(sp.b, p - sp.b, 2 * p - sp.b)


def verify_max_tally(code: IndexCode, semantics=DEFAULT_SEMANTICS) -> VerificationOutcome:
    p, k = code.instance.p, code.instance.k
    want = expected_max_tally(p, k)
    got = tally_decodes(code, semantics)
    bad = []
    for name, w, g in zip(Tally._fields, want, got):
        if w != g:
            bad.append(("tally", Tally._fields.index(name), f"{name}: expected {w}, got {g}"))
    return _outcome("max_tally", bad, DecodingSemantics.parse(semantics))


@dataclass(frozen=True)
class ExpectedAssignment:
    """Client -> (message it should decode, index of the symbol it comes from)."""

    p: int
    groups: dict[int, tuple[int, int]] = field(default_factory=dict)

    def is_partition(self) -> bool:
        return sorted(self.groups) == list(range(self.p))


def _case1_groups(p: int, k: int, i: int) -> Iterator[tuple[int, int, int]]:
    sch = case1_schedule(p, k)
    T, r = sch.t_count, sch.r

    def lead(j: int) -> int:
        return i + j - k - 1 if j <= k else i + j - k

    for c in range(i - k + 1, i + 1):
        yield c, i, 0
    for c in range(i + 1, i + k + 1):
        yield c, i + p - k, 0
    for j in range(2, T):
        for c in range((j - 1) * k + 3 - j, j * k - j + 2):
            yield i + c, lead(j), j - 1
    first = i + (T - 1) * k + 3 - T
    for c in range(first, first + r + 1):
        yield c, lead(T), T - 1


def expected_assignment_case1(p: int, k: int, i: int = 0) -> ExpectedAssignment:
    if not _in_case1(p, k):
        raise InvalidParameters(f"case1 needs 3 <= k < ceil(p/2); got p={p}, k={k}")
    groups: dict[int, tuple[int, int]] = {}
    for c, m, sym in _case1_groups(p, k, i):
        c %= p
        if c in groups:
            raise InvalidParameters(f"client {c} assigned twice for p={p}, k={k}, i={i}")
        groups[c] = (m % p, sym)
    return ExpectedAssignment(p, groups)


def report_discrepancies(
    code: IndexCode, expected: ExpectedAssignment, semantics=DEFAULT_SEMANTICS
) -> list[tuple[int, int, list[int]]]:
    """(client, expected message, actual decoded) for every client that deviates.

    A client also deviates when the named source symbol does not carry its
    expected message as the single unknown.
    """
    rep = _report(code, semantics)
    out = []
    for c in sorted(expected.groups):
        m, sym = expected.groups[c]
        actual = rep.decoded[c]
        ok = actual == {m}
        if ok and sym < len(code):
            known = code.instance.side_info_mask(c)
            ok = code.symbols[sym].mask & ~known == 1 << m
        if not ok:
            out.append((c, m, sorted(actual)))
    return out


@dataclass(frozen=True)
class Finding:
    construction: str
    p: int
    k: int
    i: int
    claim: str
    detail: str
    c: int | None = None

    def to_dict(self) -> dict:
        return {
            "construction": self.construction,
            "p": self.p,
            "k": self.k,
            "c": self.c,
            "i": self.i,
            "claim": self.claim,
            "detail": self.detail,
        }


def _summarise(outcome: VerificationOutcome, limit: int = 4) -> str:
    parts = [f"{kind} {idx}: {d}" for kind, idx, d in outcome.violations[:limit]]
    more = len(outcome.violations) - limit
    if more > 0:
        parts.append(f"... {more} more")
    return "; ".join(parts)


def collect_findings(
    p_max: int = 24,
    semantics=DEFAULT_SEMANTICS,
    anchors: str = "all",
    include_printed_max: bool = True,
    claims: tuple[str, ...] = ("exactly_one", "max_tally", "c_constraint"),
) -> list[Finding]:
    """Every way a construction misses its claimed property for p <= ``p_max``.

    Covers exactly-one codes, the max-decode tallies (both the default and the
    published second symbol), the c-constraint codes, and index cancellations.
    ``claims`` restricts which families are built.
    """
    semantics = DecodingSemantics.parse(semantics)
    found: list[Finding] = []

    def anchors_for(p: int) -> range:
        return range(p) if anchors == "all" else range(1)

    def build(name, fn, inst, i, **kw):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", SupportCancellation)
            code = fn(inst, i, **kw)
        for w in caught:
            if issubclass(w.category, SupportCancellation):
                found.append(Finding(name, inst.p, inst.k, i, "cancellation", str(w.message), inst.c))
        return code

    for p in range(2, p_max + 1):
        for k in range(1, p):
            inst = ProblemInstance(p, k)
            try:
                case = exactly_one_case(p, k)
            except (Infeasible, Unsupported):
                case = None
            for i in anchors_for(p):
                if case is not None and "exactly_one" in claims:
                    code = build(case, construct_exactly_one, inst, i)
                    out = verify_exactly_one(code, semantics)
                    if not out.holds:
                        found.append(Finding(case, p, k, i, "exactly_one", _summarise(out)))
                if p >= k + 2 and "max_tally" in claims:
                    variants = [("max_decode", False)]
                    if include_printed_max and p <= 3 * k:
                        variants.append(("max_decode_printed", True))
                    for name, printed in variants:
                        code = build(name, construct_max, inst, i, printed_w2=printed)
                        out = verify_max_tally(code, semantics)
                        if not out.holds:
                            found.append(Finding(name, p, k, i, "max_tally", _summarise(out)))
                for c in (range(k, p - k) if "c_constraint" in claims else ()):
                    cinst = ProblemInstance(p, k, c)
                    code = build("constrained", construct_constrained, cinst, i)
                    out = verify_c_constraint(code, c, semantics)
                    if not out.holds:
                        found.append(Finding("constrained", p, k, i, "c_constraint", _summarise(out), c))
    return found
