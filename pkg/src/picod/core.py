"""Problem model for pliable index coding with consecutive side information.

Messages are x_0..x_{p-1}. Client i knows the k messages just before it,
x_{i-1}, ..., x_{i-k}, with every index reduced modulo p. A coded symbol is
the XOR of the messages in its support; only index structure is modelled.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

ORIGINS = ("case1", "case2", "case3", "single_q0", "max_decode", "constrained", "external")


class PicodError(Exception):
    """Base class for errors raised by this package."""


class InvalidParameters(PicodError, ValueError):
    """Parameters fall outside a construction's or operation's range."""


class Infeasible(PicodError):
    """No code with the requested property exists for the instance."""


class Unsupported(PicodError):
    """No construction is known for the instance."""


class BoundExceeded(PicodError):
    """An exhaustive search was asked to go beyond its size bound."""


class SupportCancellation(UserWarning):
    """Repeated indices cancelled while building a symbol support."""


@dataclass(frozen=True)
class ProblemInstance:
    p: int
    k: int
    c: int | None = None

    def __post_init__(self) -> None:
        if self.p < 2:
            raise InvalidParameters(f"p must be >= 2, got {self.p}")
        if not 1 <= self.k <= self.p - 1:
            raise InvalidParameters(f"k must lie in [1, p-1], got k={self.k}, p={self.p}")
        if self.c is not None and self.c < 1:
            raise InvalidParameters(f"c must be >= 1, got {self.c}")

    @property
    def n_clients(self) -> int:
        # one effective client per side-information pattern
        return self.p

    @property
    def full_mask(self) -> int:
        return (1 << self.p) - 1

    def side_info_mask(self, i: int) -> int:
        return mask_of(side_info(self, i).members)


@dataclass(frozen=True)
class SideInfoWindow:
    owner: int
    members: frozenset[int]
    p: int

    @property
    def want(self) -> frozenset[int]:
        return frozenset(range(self.p)) - self.members


def normalize_index(instance: ProblemInstance, j: int) -> int:
    return j % instance.p


def side_info(instance: ProblemInstance, i: int) -> SideInfoWindow:
    """Window of the k messages client ``i`` holds: {i-1, ..., i-k} mod p."""
    if not 0 <= i < instance.p:
        raise IndexError(f"client index {i} out of range for p={instance.p}")
    members = frozenset((i - d) % instance.p for d in range(1, instance.k + 1))
    return SideInfoWindow(owner=i, members=members, p=instance.p)


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for j in indices:
        m |= 1 << j
    return m


def indices_of(mask: int) -> list[int]:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


@dataclass(frozen=True)
class CodedSymbol:
    """XOR of the messages whose indices are in ``support``."""

    support: frozenset[int]

    def __post_init__(self) -> None:
        if not self.support:
            raise InvalidParameters("a coded symbol needs a nonempty support")
        if min(self.support) < 0:
            raise InvalidParameters(f"negative index in support {sorted(self.support)}")

    @property
    def mask(self) -> int:
        return mask_of(self.support)

    def sorted(self) -> list[int]:
        return sorted(self.support)

    @classmethod
    def from_mask(cls, mask: int) -> "CodedSymbol":
        return cls(frozenset(indices_of(mask)))


def xor_symbol(instance: ProblemInstance, raw: Iterable[int]) -> CodedSymbol | None:
    """Build a symbol from raw (possibly unreduced) indices.

    Indices are reduced mod p and equal indices cancel in pairs. A warning of
    class :class:`SupportCancellation` is issued when that happens; ``None`` is
    returned if everything cancels.
    """
    raw = list(raw)
    p = instance.p
    reduced: set[int] = set()
    for j in raw:
        j %= p
        if j in reduced:
            reduced.remove(j)
        else:
            reduced.add(j)
    if len(reduced) != len(raw):
        warnings.warn(
            f"p={instance.p}, k={instance.k}: indices {raw} cancel to {sorted(reduced)}",
            SupportCancellation,
            stacklevel=2,
        )
    if not reduced:
        return None
    return CodedSymbol(frozenset(reduced))


@dataclass(frozen=True)
class IndexCode:
    instance: ProblemInstance
    symbols: tuple[CodedSymbol, ...] = ()
    origin: str = "external"
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.origin not in ORIGINS:
            raise InvalidParameters(f"unknown origin {self.origin!r}")
        object.__setattr__(self, "symbols", tuple(self.symbols))
        for s in self.symbols:
            if max(s.support) >= self.instance.p:
                raise InvalidParameters(
                    f"support {s.sorted()} exceeds message range [0, {self.instance.p})"
                )

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def masks(self) -> list[int]:
        return [s.mask for s in self.symbols]

    def supports(self) -> list[list[int]]:
        return [s.sorted() for s in self.symbols]

    def shifted(self, offset: int) -> "IndexCode":
        """Same code with every index rotated by ``offset`` (mod p)."""
        p = self.instance.p
        syms = tuple(CodedSymbol(frozenset((j + offset) % p for j in s.support)) for s in self.symbols)
        return IndexCode(self.instance, syms, self.origin)

    def to_dict(self) -> dict:
        return {
            "p": self.instance.p,
            "k": self.instance.k,
            "c": self.instance.c,
            "origin": self.origin,
            "symbols": self.supports(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "IndexCode":
        try:
            instance = ProblemInstance(int(data["p"]), int(data["k"]), data.get("c"))
            raw = data["symbols"]
        except KeyError as exc:
            raise InvalidParameters(f"missing field {exc.args[0]!r}") from None
        if not isinstance(raw, list) or not raw:
            raise InvalidParameters("symbols must be a nonempty list")
        symbols = []
        for sup in raw:
            if len(set(sup)) != len(sup):
                raise InvalidParameters(f"repeated index in support {sup}")
            symbols.append(CodedSymbol(frozenset(int(j) for j in sup)))
        return cls(instance, tuple(symbols), data.get("origin", "external"))

    @classmethod
    def from_json(cls, text: str) -> "IndexCode":
        return cls.from_dict(json.loads(text))


def make_code(
    instance: ProblemInstance, supports: Sequence[Iterable[int]], origin: str = "external"
) -> IndexCode:
    """Convenience constructor from raw index lists (reduced mod p, XOR-cancelled)."""
    symbols = []
    for raw in supports:
        sym = xor_symbol(instance, raw)
        if sym is not None:
            symbols.append(sym)
    return IndexCode(instance, tuple(symbols), origin)
