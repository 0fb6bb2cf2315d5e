"""What each client recovers from a broadcast index code."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .core import IndexCode, indices_of
from .gf2 import unit_vectors_in_span


class DecodingSemantics(str, enum.Enum):
    PER_SYMBOL = "per_symbol"
    FIXED_POINT = "fixed_point"
    LINEAR_CLOSURE = "linear_closure"

    @classmethod
    def parse(cls, value: "str | DecodingSemantics") -> "DecodingSemantics":
        if isinstance(value, cls):
            return value
        return cls(str(value).replace("-", "_"))


DEFAULT_SEMANTICS = DecodingSemantics.FIXED_POINT


def _single_unknowns(masks: list[int], known: int) -> int:
    out = 0
    for s in masks:
        u = s & ~known
        if u and u & (u - 1) == 0:
            out |= u
    return out


def decode_mask(masks: list[int], known: int, semantics: DecodingSemantics) -> int:
    """Decoded-message bitmask for a client whose side information is ``known``."""
    if semantics is DecodingSemantics.PER_SYMBOL:
        return _single_unknowns(masks, known)
    if semantics is DecodingSemantics.FIXED_POINT:
        decoded = 0
        while True:
            new = _single_unknowns(masks, known | decoded) & ~decoded
            if not new:
                return decoded
            decoded |= new
    if semantics is DecodingSemantics.LINEAR_CLOSURE:
        # side-information coordinates can be cancelled from every symbol
        return unit_vectors_in_span(s & ~known for s in masks)
    raise ValueError(f"unknown semantics {semantics!r}")


def decode_client(
    code: IndexCode, i: int, semantics: DecodingSemantics | str = DEFAULT_SEMANTICS
) -> set[int]:
    semantics = DecodingSemantics.parse(semantics)
    known = code.instance.side_info_mask(i)
    return set(indices_of(decode_mask(code.masks, known, semantics)))


@dataclass(frozen=True)
class DecodeReport:
    semantics: DecodingSemantics
    decoded: dict[int, frozenset[int]]
    decoders: dict[int, frozenset[int]]

    def sizes(self) -> list[int]:
        return [len(self.decoded[i]) for i in sorted(self.decoded)]

    def to_dict(self) -> dict:
        return {
            "semantics": self.semantics.value,
            "decoded": {str(i): sorted(v) for i, v in sorted(self.decoded.items())},
            "decoders": {str(m): sorted(v) for m, v in sorted(self.decoders.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def decode_report(code: IndexCode, semantics: DecodingSemantics | str = DEFAULT_SEMANTICS) -> DecodeReport:
    semantics = DecodingSemantics.parse(semantics)
    p = code.instance.p
    masks = code.masks
    decoded = {}
    for i in range(p):
        m = decode_mask(masks, code.instance.side_info_mask(i), semantics)
        decoded[i] = frozenset(indices_of(m))
    decoders: dict[int, set[int]] = {m: set() for m in range(p)}
    for i, ms in decoded.items():
        for m in ms:
            decoders[m].add(i)
    return DecodeReport(semantics, decoded, {m: frozenset(v) for m, v in decoders.items()})
