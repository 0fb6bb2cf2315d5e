"""Pliable index codes for clients with consecutive side information."""

from .constructions import (
    construct_case1,
    construct_case2,
    construct_case3,
    construct_constrained,
    construct_exactly_one,
    construct_max,
    construct_single_q0,
)
from .core import (
    BoundExceeded,
    CodedSymbol,
    IndexCode,
    Infeasible,
    InvalidParameters,
    PicodError,
    ProblemInstance,
    Unsupported,
    normalize_index,
    side_info,
)
from .decoder import DecodeReport, DecodingSemantics, decode_client, decode_report
from .oracle import Certificate, oracle_exactly_one_feasible, oracle_max_total, oracle_min_length
from .verifier import (
    VerificationOutcome,
    tally_decodes,
    verify_c_constraint,
    verify_coverage,
    verify_exactly_one,
)

__version__ = "0.1.0"
