"""Exhaustive searches over GF(2) codes for small instances.

Three questions are answered with certificates: the shortest code that
satisfies every client, whether a code exists that gives every client exactly
one message, and the largest total number of decoded messages achievable with
a fixed number of transmissions. Symbols are int bitsets throughout.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

import numpy as np

from .core import BoundExceeded, IndexCode, InvalidParameters, ProblemInstance, CodedSymbol, indices_of
from .decoder import DEFAULT_SEMANTICS, DecodingSemantics, decode_mask
from .gf2 import rref
from .verifier import tally_decodes, verify_coverage, verify_exactly_one

MIN_LENGTH_MAX_P = 14
MIN_LENGTH_MAX_L = 3
EXACTLY_ONE_MAX_P = {DecodingSemantics.PER_SYMBOL: 8, DecodingSemantics.FIXED_POINT: 8,
                     DecodingSemantics.LINEAR_CLOSURE: 10}
MAX_TOTAL_MAX_P = 10


@dataclass(frozen=True)
class Certificate:
    kind: str
    instance: ProblemInstance
    semantics: DecodingSemantics
    bound: int | None
    feasible: bool
    witness: IndexCode | None
    value: int | None
    nodes_explored: int

    def to_dict(self) -> dict:
        query = {
            "kind": self.kind,
            "p": self.instance.p,
            "k": self.instance.k,
            "semantics": self.semantics.value,
            "bound": self.bound,
        }
        if not self.feasible:
            result: str | dict = "infeasible"
        else:
            result = {
                "witness": self.witness.supports() if self.witness is not None else [],
                "value": self.value,
            }
        return {"query": query, "result": result, "nodes_explored": self.nodes_explored}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class _Tables:
    """Per-instance lookup tables indexed by symbol bitset (entry 0 unused)."""

    def __init__(self, instance: ProblemInstance):
        p = instance.p
        self.p = p
        self.full = instance.full_mask
        self.sym = np.arange(1 << p, dtype=np.int64)
        self.known = [instance.side_info_mask(c) for c in range(p)]
        # cov[s]: clients that see exactly one unknown in s
        cov = np.zeros(1 << p, dtype=np.int64)
        for c, known in enumerate(self.known):
            u = self.sym & ~known
            cov |= (_is_unit(u).astype(np.int64)) << c
        cov[0] = 0
        self.cov = cov
        canon = self.sym.copy()
        rot = self.sym.copy()
        for _ in range(p - 1):
            rot = ((rot << 1) | (rot >> (p - 1))) & self.full
            np.minimum(canon, rot, out=canon)
        self.reps = np.nonzero(canon[1:] == self.sym[1:])[0] + 1

    def best_superset(self) -> np.ndarray:
        """best[m] = smallest symbol whose coverage contains client set m (or -1)."""
        size = 1 << self.p
        big = np.int64(size)
        best = np.full(size, big, dtype=np.int64)
        # scatter: for each coverage value keep the smallest symbol
        order = np.argsort(self.cov[1:], kind="stable") + 1
        vals = self.cov[order]
        first = np.ones(len(vals), dtype=bool)
        first[1:] = vals[1:] != vals[:-1]
        best[vals[first]] = order[first]
        for bit in range(self.p):
            step = 1 << bit
            view = best.reshape(-1, 2, step)
            np.minimum(view[:, 0, :], view[:, 1, :], out=view[:, 0, :])
        best[best == big] = -1
        return best


def _is_unit(u: np.ndarray) -> np.ndarray:
    return (u != 0) & ((u & (u - 1)) == 0)


def _rotations(masks: list[int], p: int) -> list[list[int]]:
    full = (1 << p) - 1
    out = []
    for r in range(p):
        out.append([((m << r) | (m >> (p - r))) & full for m in masks])
    return out


def _code_key(masks) -> tuple:
    return tuple(sorted(tuple(indices_of(m)) for m in masks))


def _canonical_code(masks: list[int], p: int) -> tuple:
    """Lexicographically smallest sorted support list over all rotations."""
    return min(_code_key(rot) for rot in _rotations(masks, p))


def _code(instance: ProblemInstance, key: tuple) -> IndexCode:
    return IndexCode(instance, tuple(CodedSymbol(frozenset(s)) for s in key), "external")


def oracle_min_length(
    instance: ProblemInstance, semantics=DEFAULT_SEMANTICS, l_max: int = 2
) -> Certificate:
    """Shortest code (at most ``l_max`` symbols) under which every client decodes something.

    The first symbol is restricted to rotation-class representatives; later
    symbols range over everything. The witness is the first hit in
    ascending bitset order.
    """
    semantics = DecodingSemantics.parse(semantics)
    p = instance.p
    if p > MIN_LENGTH_MAX_P or not 0 <= l_max <= MIN_LENGTH_MAX_L:
        raise BoundExceeded(f"min-length search needs p <= {MIN_LENGTH_MAX_P}, L_max <= {MIN_LENGTH_MAX_L}")
    linear = semantics is DecodingSemantics.LINEAR_CLOSURE
    if linear and l_max == 3 and p > 10:
        raise BoundExceeded("three-symbol linear-closure search needs p <= 10")
    tb = _Tables(instance)
    full, cov = tb.full, tb.cov
    nodes = 0
    witness = None
    found_l = None

    if l_max >= 1:
        nodes += len(tb.reps)
        hit = tb.reps[cov[tb.reps] == full]
        if hit.size:
            witness, found_l = [int(hit[0])], 1

    if witness is None and l_max >= 2:
        best = None if linear else tb.best_superset()
        for s1 in tb.reps:
            s1 = int(s1)
            if linear:
                reach = cov[s1] | cov | cov[tb.sym ^ s1]
                nodes += len(reach) - 1
                hit = np.nonzero(reach[1:] == full)[0]
                if hit.size:
                    witness = [s1, int(hit[0]) + 1]
            else:
                nodes += 1
                s2 = int(best[full & ~int(cov[s1])])
                if s2 > 0:
                    witness = [s1, s2]
            if witness is not None:
                found_l = 2
                break

    if witness is None and l_max >= 3:
        best = None if linear else tb.best_superset()
        for s1 in tb.reps:
            s1 = int(s1)
            for s2 in range(1, 1 << p):
                if linear:
                    a, b, ab = int(cov[s1]), int(cov[s2]), int(cov[s1 ^ s2])
                    x = tb.sym
                    reach = a | b | ab | cov[x] | cov[x ^ s1] | cov[x ^ s2] | cov[x ^ s1 ^ s2]
                    nodes += len(reach) - 1
                    hit = np.nonzero(reach[1:] == full)[0]
                    if hit.size:
                        witness = [s1, s2, int(hit[0]) + 1]
                else:
                    nodes += 1
                    s3 = int(best[full & ~int(cov[s1]) & ~int(cov[s2])])
                    if s3 > 0:
                        witness = [s1, s2, s3]
                if witness is not None:
                    break
            if witness is not None:
                found_l = 3
                break

    if witness is None:
        return Certificate("min_length", instance, semantics, l_max, False, None, None, nodes)
    code = IndexCode(instance, tuple(CodedSymbol.from_mask(m) for m in witness), "external")
    if not verify_coverage(code, semantics).holds:
        raise AssertionError(f"min-length witness {code.supports()} fails re-verification")
    return Certificate("min_length", instance, semantics, l_max, True, code, found_l, nodes)


def _branch_candidates(p: int, known: int) -> list[int]:
    """Symbols whose unknown part (w.r.t. ``known``) is a single message."""
    out = []
    km = indices_of(known)
    for m in range(p):
        if known >> m & 1:
            continue
        for sub in range(1 << len(km)):
            extra = 0
            for b, idx in enumerate(km):
                if sub >> b & 1:
                    extra |= 1 << idx
            out.append((1 << m) | extra)
    return out


def _exactly_one_symbols(instance: ProblemInstance, semantics: DecodingSemantics, prune: bool):
    """Breadth-first growth of symbol sets; yields (level, witnesses, nodes)."""
    p = instance.p
    known = [instance.side_info_mask(c) for c in range(p)]
    cands = [_branch_candidates(p, kn) for kn in known]

    def profile(masks: list[int]) -> list[int]:
        return [bin(decode_mask(masks, kn, semantics)).count("1") for kn in known]

    nodes = 0
    frontier = {()}
    seen = {()}
    level = 0
    while frontier:
        witnesses = []
        nxt = set()
        for state in sorted(frontier):
            nodes += 1
            masks = list(state)
            prof = profile(masks)
            if max(prof, default=0) > 1:
                continue
            if all(x == 1 for x in prof):
                witnesses.append(state)
                continue
            c = prof.index(0)
            for s in cands[c]:
                if s in state:
                    continue
                child = tuple(sorted(state + (s,)))
                key = child
                if prune:
                    key = _canonical_code(list(child), p)
                if key in seen:
                    continue
                seen.add(key)
                if prune:
                    cprof = profile(list(child))
                    if max(cprof) > 1:
                        nodes += 1
                        continue
                nxt.add(child)
        yield level, witnesses, nodes
        if witnesses:
            return
        frontier = nxt
        level += 1


def _exactly_one_subspaces(instance: ProblemInstance):
    """Same search over subspaces; the decoded sets only depend on the span."""
    p = instance.p
    known = [instance.side_info_mask(c) for c in range(p)]
    cands = [_branch_candidates(p, kn) for kn in known]

    def profile(basis: list[int]) -> list[int]:
        return [bin(decode_mask(basis, kn, DecodingSemantics.LINEAR_CLOSURE)).count("1") for kn in known]

    def rotate(basis, r):
        full = (1 << p) - 1
        return tuple(rref(((m << r) | (m >> (p - r))) & full for m in basis))

    nodes = 0
    frontier = {()}
    seen = {()}
    level = 0
    while frontier:
        witnesses = []
        nxt = set()
        for basis in sorted(frontier):
            nodes += 1
            prof = profile(list(basis))
            if max(prof, default=0) > 1:
                continue
            if all(x == 1 for x in prof):
                witnesses.append(basis)
                continue
            c = prof.index(0)
            for v in cands[c]:
                child = tuple(rref(list(basis) + [v]))
                if len(child) == len(basis):
                    continue
                key = min(rotate(child, r) for r in range(p))
                if key in seen:
                    continue
                seen.add(key)
                if max(profile(list(child))) > 1:
                    nodes += 1
                    continue
                nxt.add(child)
        yield level, witnesses, nodes
        if witnesses:
            return
        frontier = nxt
        level += 1


def oracle_exactly_one_feasible(
    instance: ProblemInstance, semantics=DEFAULT_SEMANTICS, prune: bool = True
) -> Certificate:
    """Decide whether some code gives every client exactly one message.

    Codes are grown one symbol at a time, always adding a symbol that hands
    the lowest unsatisfied client a single unknown. Decoded sets only grow as
    symbols are added, so any state where a client already holds two messages
    is dead. Every shortest valid code is reachable this way, so the search
    level at which the first witnesses appear is the minimum code length and
    an exhausted frontier proves non-existence. States are deduplicated up to
    rotation of all indices.

    The returned witness is the lexicographically smallest shortest code over
    all rotations. ``prune=False`` drops the overshoot check at generation
    time and deduplicates only exact states (cross-checking aid).
    """
    semantics = DecodingSemantics.parse(semantics)
    p = instance.p
    if p > EXACTLY_ONE_MAX_P[semantics]:
        raise BoundExceeded(
            f"exactly-one search under {semantics.value} needs p <= {EXACTLY_ONE_MAX_P[semantics]}"
        )
    if semantics is DecodingSemantics.LINEAR_CLOSURE:
        runs = list(_exactly_one_subspaces(instance))
    else:
        runs = list(_exactly_one_symbols(instance, semantics, prune))
    level, witnesses, nodes = runs[-1]
    if not witnesses:
        return Certificate("exactly_one_feasible", instance, semantics, None, False, None, None, nodes)
    key = min(_canonical_code(list(w), p) for w in witnesses)
    code = _code(instance, key)
    if not verify_exactly_one(code, semantics).holds:
        raise AssertionError(f"exactly-one witness {code.supports()} fails re-verification")
    return Certificate("exactly_one_feasible", instance, semantics, None, True, code, len(code), nodes)


def _pair_counts(u1: int, u2: np.ndarray, semantics: DecodingSemantics) -> np.ndarray:
    """Messages decoded by one client from symbols whose unknown parts are u1, u2[...]."""
    a1 = bool(u1) and u1 & (u1 - 1) == 0
    a2 = _is_unit(u2)
    same = u2 == u1
    if semantics is DecodingSemantics.PER_SYMBOL:
        return a1 + a2.astype(np.int64) - (a2 & same & a1)
    if semantics is DecodingSemantics.FIXED_POINT:
        if a1:
            second = np.where(a2, ~same, _is_unit(u2 & ~u1))
            return 1 + second.astype(np.int64)
        first = a2.astype(np.int64)
        return first + (a2 & _is_unit(u1 & ~u2)).astype(np.int64)
    x = u2 ^ u1
    return a1 + (a2 & ~same).astype(np.int64) + (_is_unit(x) & (u2 != 0) & (u1 != 0)).astype(np.int64)


def oracle_max_total(instance: ProblemInstance, length: int = 2, semantics=DEFAULT_SEMANTICS) -> Certificate:
    """Largest total number of decoded messages over all codes of ``length`` symbols.

    Repeated symbols are allowed, so shorter codes are included. Ties go to
    the first pair in ascending (representative, bitset) order.
    """
    semantics = DecodingSemantics.parse(semantics)
    p = instance.p
    if p > MAX_TOTAL_MAX_P or length not in (0, 1, 2):
        raise BoundExceeded(f"max-total search needs p <= {MAX_TOTAL_MAX_P} and L in 0..2")
    if length == 0:
        return Certificate("max_total", instance, semantics, 0, True,
                           IndexCode(instance, (), "external"), 0, 1)
    tb = _Tables(instance)
    best_val, best_pair, nodes = -1, None, 0
    if length == 1:
        totals = np.zeros(1 << p, dtype=np.int64)
        for c in range(p):
            totals += (tb.cov >> c) & 1
        idx = tb.reps[np.argmax(totals[tb.reps])]
        best_val, best_pair, nodes = int(totals[idx]), (int(idx),), len(tb.reps)
    else:
        x = tb.sym[1:]
        for s1 in tb.reps:
            s1 = int(s1)
            totals = np.zeros(len(x), dtype=np.int64)
            for known in tb.known:
                totals += _pair_counts(s1 & ~known, x & ~known, semantics)
            nodes += len(x)
            j = int(np.argmax(totals))
            if totals[j] > best_val:
                best_val, best_pair = int(totals[j]), (s1, int(x[j]))
    if best_val > length * p:
        raise AssertionError(f"total {best_val} exceeds {length} messages per client")
    code = IndexCode(instance, tuple(CodedSymbol.from_mask(m) for m in best_pair), "external")
    if tally_decodes(code, semantics).total != best_val:
        raise AssertionError(f"max-total witness {code.supports()} fails re-verification")
    return Certificate("max_total", instance, semantics, length, True, code, best_val, nodes)
