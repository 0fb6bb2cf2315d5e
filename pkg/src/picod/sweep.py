"""Grid sweeps over (p, k) producing one CSV row per case and semantics."""

from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass
from typing import Iterable, Sequence

from .constructions import BUILDERS, exactly_one_case
from .core import Infeasible, InvalidParameters, ProblemInstance, Unsupported
from .decoder import DecodingSemantics
from .verifier import (
    expected_assignment_case1,
    report_discrepancies,
    tally_decodes,
    verify_c_constraint,
    verify_coverage,
    verify_exactly_one,
)

HEADER = ("p", "k", "case", "semantics", "len", "exactly_one", "coverage",
          "count_one", "count_two", "total", "c", "c_ok", "discrepancies")


@dataclass(frozen=True)
class SweepRow:
    p: int
    k: int
    case: str
    semantics: str
    len: int
    exactly_one: bool
    coverage: bool
    count_one: int
    count_two: int
    total: int
    c: int | None = None
    c_ok: bool | None = None
    discrepancies: int | None = None

    def cells(self) -> list[str]:
        out = []
        for v in astuple(self):
            if v is None:
                out.append("")
            elif isinstance(v, bool):
                out.append("true" if v else "false")
            else:
                out.append(str(v))
        return out


def _c_values(p: int, k: int, c_policy: str) -> list[int]:
    if c_policy == "k":
        return [k]
    if c_policy == "all":
        return list(range(k, p - k))
    return [int(c) for c in c_policy.split(",") if int(c) >= k]


def sweep_rows(
    p_values: Iterable[int],
    cases: Sequence[str],
    semantics: Sequence[DecodingSemantics | str] = (DecodingSemantics.FIXED_POINT,),
    k_values: Iterable[int] | None = None,
    i: int = 0,
    c_policy: str = "k",
) -> list[SweepRow]:
    """Rows for every buildable (p, k, case, semantics, c); unbuildable combinations are skipped."""
    sems = [DecodingSemantics.parse(s) for s in semantics]
    k_filter = None if k_values is None else set(k_values)
    rows = []
    for p in sorted(set(p_values)):
        for k in range(1, p):
            if k_filter is not None and k not in k_filter:
                continue
            for case in cases:
                c_list = _c_values(p, k, c_policy) if case == "constrained" else [None]
                for c in c_list:
                    try:
                        code = BUILDERS[case](ProblemInstance(p, k, c), i % p)
                    except (InvalidParameters, Infeasible, Unsupported):
                        continue
                    case1 = case == "case1" or (case == "exactly-one" and exactly_one_case(p, k) == "case1")
                    for sem in sems:
                        tally = tally_decodes(code, sem)
                        disc = None
                        if case1:
                            ea = expected_assignment_case1(p, k, i % p)
                            disc = len(report_discrepancies(code, ea, sem))
                        rows.append(SweepRow(
                            p, k, case, sem.value, len(code),
                            verify_exactly_one(code, sem).holds,
                            verify_coverage(code, sem).holds,
                            tally.count_one, tally.count_two, tally.total,
                            c, None if c is None else verify_c_constraint(code, c, sem).holds,
                            disc,
                        ))
    rows.sort(key=lambda r: (r.p, r.k))
    return rows


def rows_to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in rows:
        w.writerow(r.cells())
    return buf.getvalue()
