"""Index codes for consecutive side information.

Every builder takes an instance and an anchor ``i`` and returns an
:class:`~picod.core.IndexCode`. Formulas are written with raw indices and
reduced modulo p when the symbol is built.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import IndexCode, Infeasible, InvalidParameters, ProblemInstance, Unsupported, xor_symbol


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _build(instance: ProblemInstance, raw_symbols: list[list[int]], origin: str, **meta) -> IndexCode:
    symbols = []
    for raw in raw_symbols:
        sym = xor_symbol(instance, raw)
        if sym is not None:
            symbols.append(sym)
    return IndexCode(instance, tuple(symbols), origin, dict(meta))


@dataclass(frozen=True)
class Construction1Schedule:
    t_count: int
    y: int
    r: int
    vprime: dict[int, int] = field(default_factory=dict)
    vdoubleprime: dict[int, int] = field(default_factory=dict)
    vtail: dict[int, int] = field(default_factory=dict)


def case1_schedule(p: int, k: int) -> Construction1Schedule:
    t_count = _ceil_div(p - k - 1, k - 1)
    y = p - 2 * k - 1
    r = y % (k - 1)
    vp: dict[int, int] = {}
    vpp: dict[int, int] = {}
    if t_count >= 3:
        vp[2], vpp[2] = k - 1, k
        for l in range(3, t_count):
            vp[l] = vpp[l - 1] + k - 2
            vpp[l] = vpp[l - 1] + k - 1
    tail = {1: k if t_count == 2 else vpp[t_count - 1] + k - 1}
    for s in range(2, k - r + 1):
        tail[s] = tail[s - 1] - 1
    return Construction1Schedule(t_count, y, r, vp, vpp, tail)


@dataclass(frozen=True)
class SplitParams:
    t: int
    q: int
    t1: int
    q1: int
    t2: int
    q2: int
    b: int


def split_params(p: int, k: int) -> SplitParams:
    n = p - k
    t, q = divmod(p, n)
    t2, q2 = divmod(k + q, n)
    return SplitParams(t, q, t, q, t2, q2, min(q2, n - q2))


def _in_case1(p: int, k: int) -> bool:
    return 3 <= k < _ceil_div(p, 2)


def _in_case2(p: int, k: int) -> bool:
    return p // 2 < k <= p - 4


def construct_case1(instance: ProblemInstance, i: int = 0) -> IndexCode:
    p, k = instance.p, instance.k
    if not _in_case1(p, k):
        raise InvalidParameters(f"case1 needs 3 <= k < ceil(p/2); got p={p}, k={k}")
    sch = case1_schedule(p, k)
    T = sch.t_count

    def lead(j: int) -> int:
        return i + j - k - 1 if j <= k else i + j - k

    raw = [[i, i + p - k]]
    for j in range(2, T):
        raw.append([i + sch.vprime[j], i + sch.vdoubleprime[j], lead(j)])
    raw.append([lead(T)] + [i + sch.vtail[n] for n in range(1, k - sch.r + 1)])
    return _build(instance, raw, "case1", anchor=i)


def construct_case2(instance: ProblemInstance, i: int = 0) -> IndexCode:
    p, k = instance.p, instance.k
    if not _in_case2(p, k):
        raise InvalidParameters(f"case2 needs floor(p/2) < k <= p-4; got p={p}, k={k}")
    n = p - k
    t, q = divmod(p, n)
    if q == 0:
        return _build(instance, [[i + g * n for g in range(t)]], "case2", anchor=i)
    w1 = [i + g * n for g in range(t + 1)]
    middle = [i + b * n + a for b in range(1, t - 1) for a in range(1, n)]
    if q == 1:
        w2 = [i + 1, i + n - 1] + [i + (t - 1) * n + b for b in (1, 2)]
    else:
        w2 = [i - q + 1] + [i + n - b for b in range(1, q + 1)]
        w2 += [i + (t - 1) * n + b for b in range(1, q + 1)]
    return _build(instance, [w1, w2 + middle], "case2", anchor=i)


def _case3_branch(p: int, k: int) -> str | None:
    if k == p - 1:
        return "all"
    if k == 1:
        return "k1" if p % 2 == 0 else "k1_odd"
    if k == 2:
        return "k2"
    if k == p - 2:
        return "even_half" if p % 2 == 0 else "p2_odd"
    if k == p - 3:
        return "p3"
    return None


def construct_case3(instance: ProblemInstance, i: int = 0) -> IndexCode:
    p, k = instance.p, instance.k
    branch = _case3_branch(p, k)
    if branch is None:
        raise InvalidParameters(f"case3 needs k in {{1, 2, p-1, p-2, p-3}}; got p={p}, k={k}")
    if branch in ("k1_odd", "p2_odd"):
        raise Infeasible(
            f"p={p}, k={k}: no code gives every client exactly one message (k=1 or k=p-2 with p odd)"
        )
    if branch == "all":
        raw = [list(range(p))]
    elif branch == "k1":
        raw = [[i + 2 * j - 2, i + 2 * j - 1] for j in range(1, p // 2 + 1)]
    elif branch == "k2":
        t, q = divmod(p, 4)
        raw = [[i + 4 * g, i + 4 * g + 2] for g in range(t)]
        if q == 1:
            raw.append([i + 1, i + 4 * t - 1, i + 4 * t])
        elif q == 2:
            raw.append([i + 4 * t - 1, i + 4 * t, i + 4 * t + 1])
        elif q == 3:
            raw.append([i + 4 * t - 1, i + 4 * t, i + 4 * t + 1])
            raw.append([i + 1, i + 4 * t + 1, i + 4 * t + 2])
    elif branch == "even_half":
        raw = [[i + 2 * g for g in range(p // 2)]]
    else:
        t, q = divmod(p, p - k)
        if q == 0:
            raw = [[i + g * (p - k) for g in range(t)]]
        elif p % 2:
            raw = [[i + 2 * g for g in range((p + 1) // 2)], [i + 2 * g + 1 for g in range((p - 1) // 2)]]
        else:
            raw = [[i + 2 * g for g in range(p // 2)], [i + 2 * g + 1 for g in range(p // 2)]]
    return _build(instance, raw, "case3", anchor=i, branch=branch)


def exactly_one_case(p: int, k: int) -> str:
    """Name of the construction responsible for (p, k); raises if none applies."""
    if _in_case1(p, k):
        return "case1"
    if _in_case2(p, k):
        return "case2"
    branch = _case3_branch(p, k)
    if branch in ("k1_odd", "p2_odd"):
        raise Infeasible(
            f"p={p}, k={k}: no code gives every client exactly one message (k=1 or k=p-2 with p odd)"
        )
    if branch is not None:
        return "case3"
    raise Unsupported(f"p={p}, k={k}: no exactly-one construction covers k=p/2")


def construct_exactly_one(instance: ProblemInstance, i: int = 0) -> IndexCode:
    case = exactly_one_case(instance.p, instance.k)
    return {"case1": construct_case1, "case2": construct_case2, "case3": construct_case3}[case](instance, i)


def construct_single_q0(instance: ProblemInstance, i: int = 0) -> IndexCode:
    p, k = instance.p, instance.k
    if p % (p - k):
        raise InvalidParameters(f"single-symbol code needs (p-k) | p; got p={p}, k={k}")
    t = p // (p - k)
    return _build(instance, [[i + g * (p - k) for g in range(t)]], "single_q0", anchor=i)


def construct_max(
    instance: ProblemInstance, i: int = 0, j: int | None = None, printed_w2: bool = False
) -> IndexCode:
    """Two-transmission code maximising the total number of decoded messages.

    For p > 3k the second uncoded message ``j`` defaults to ``i + k + 1``; any
    value in ``[i+k+1, i+p-k+1]`` is accepted as an override.

    For p <= 3k with q1 != 0 the second symbol is
    ``x_i [+ x_{i+k}] + sum_{j=1..t2} x_{i-q1+j(p-k)}``. The published offsets
    ``i+q1+j(p-k)`` for ``j=0..t2-1`` (``printed_w2=True``) coincide with these
    only when ``2*q1 == p-k`` and otherwise miss the advertised tallies.
    """
    p, k = instance.p, instance.k
    if p < k + 2:
        raise InvalidParameters(f"max-decode code needs p >= k+2; got p={p}, k={k}")
    if p > 3 * k:
        if j is None:
            j = i + k + 1
        elif not i + k + 1 <= j <= i + p - k + 1:
            raise InvalidParameters(f"j must lie in [i+k+1, i+p-k+1]; got j={j}, i={i}")
        return _build(instance, [[i], [j]], "max_decode", anchor=i, j=j)
    if j is not None:
        raise InvalidParameters("j override only applies when p > 3k")
    n = p - k
    sp = split_params(p, k)
    if sp.q1 == 0:
        return _build(instance, [[i + g * n for g in range(sp.t1)]], "max_decode", anchor=i)
    w1 = [i + g * n for g in range(sp.t1 + 1)]
    if printed_w2:
        tail = [i + sp.q1 + g * n for g in range(sp.t2)]
    else:
        tail = [i - sp.q1 + g * n for g in range(1, sp.t2 + 1)]
    if sp.q2 == 0 or sp.b == sp.q2:
        w2 = [i] + tail
    else:
        w2 = [i, i + k] + tail
    return _build(instance, [w1, w2], "max_decode", anchor=i, printed_w2=printed_w2)


def construct_constrained(instance: ProblemInstance, i: int = 0) -> IndexCode:
    p, k, c = instance.p, instance.k, instance.c
    if c is None:
        raise InvalidParameters("constrained code needs c")
    if c < k:
        raise InvalidParameters(f"constrained code needs c >= k; got c={c}, k={k}")
    if p - k <= c:
        code = construct_max(instance, i)
        return IndexCode(instance, code.symbols, "constrained", {**code.meta, "delegated": "max_decode"})
    t, _q = divmod(p - 2 * k - 1, k)
    half = t // 2
    if t % 2 == 0:
        raw = [[i + 2 * j * k, i + (2 * j + 1) * k] for j in range(half + 1)]
        j = half + 1
        raw.append([i + 2 * j * k, i + (2 * j - 1) * k - 1])
    else:
        raw = [[i + 2 * j * k, i + (2 * j + 1) * k] for j in range(half + 2)]
    return _build(instance, raw, "constrained", anchor=i)


def expected_length(p: int, k: int, case: str) -> int:
    """Transmission count each construction promises for (p, k)."""
    if case == "case1":
        return _ceil_div(p - k - 1, k - 1)
    if case == "case2":
        return 1 if p % (p - k) == 0 else 2
    if case == "case3":
        branch = _case3_branch(p, k)
        if branch in ("all", "even_half"):
            return 1
        if branch == "k1":
            return p // 2
        if branch == "k2":
            t, q = divmod(p, 4)
            return t + (0, 1, 1, 2)[q]
        if branch == "p3":
            return 1 if p % (p - k) == 0 else 2
        raise Infeasible(f"p={p}, k={k}")
    if case == "constrained":
        return (p - 2 * k - 1) // k // 2 + 2
    raise ValueError(f"no length contract for {case!r}")


BUILDERS = {
    "case1": construct_case1,
    "case2": construct_case2,
    "case3": construct_case3,
    "exactly-one": construct_exactly_one,
    "single-q0": construct_single_q0,
    "max": construct_max,
    "constrained": construct_constrained,
}
