"""GF(2) row reduction on int bitsets (bit j = message j)."""

from __future__ import annotations

from typing import Iterable


def rref(rows: Iterable[int]) -> list[int]:
    """Fully reduced row-echelon basis of the span of ``rows``.

    Pivots are taken on the lowest set bit, so the result depends only on the
    span and not on the order or multiplicity of the input rows. Rows are
    returned sorted by pivot.
    """
    basis: dict[int, int] = {}
    for row in rows:
        for piv, b in basis.items():
            if row >> piv & 1:
                row ^= b
        if not row:
            continue
        piv = (row & -row).bit_length() - 1
        for other in list(basis):
            if basis[other] >> piv & 1:
                basis[other] ^= row
        basis[piv] = row
    return [basis[piv] for piv in sorted(basis)]


def rank(rows: Iterable[int]) -> int:
    return len(rref(rows))


def in_span(vec: int, basis: list[int]) -> bool:
    """Membership test against a basis produced by :func:`rref`."""
    for b in basis:
        piv = b & -b
        if vec & piv:
            vec ^= b
    return vec == 0


def unit_vectors_in_span(rows: Iterable[int]) -> int:
    """Bitmask of the indices m with e_m in the span of ``rows``.

    In a fully reduced basis every non-pivot combination touches a pivot of
    another row, so e_m is in the span iff some basis row equals e_m.
    """
    out = 0
    for b in rref(rows):
        if b & (b - 1) == 0:
            out |= b
    return out
