"""Explicit winning constructions against online enumerators.

Each builder consumes scripted opponent streams and produces a sequence
omega block by block, together with per-round threshold bounds on the
opponent's values along it, a mass assignment defined from those thresholds,
and enough event data to re-derive every odd-position bit from the prefix
and the following even-position bit.

Threshold bookkeeping is exact: plain rationals for the 3/4 and 2/3
variants, symbolic power products (compared exactly) for the parametric
variants whose multipliers carry non-integer exponents.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .game import GameState, Move, Player
from .powers import PowerProduct
from .semimeasure import (
    EVEN,
    MassAssignment,
    ODD,
    OnlineConstraint,
    OnlineMassAssignment,
    ONE,
    ZERO,
    swap_adjacent_bits,
    validate,
)
from .streams import EnumerationStream, StreamFault

Threshold = Fraction | PowerProduct


class DecodeError(ValueError):
    """The queried prefix never arose from the recorded construction."""


def _exceeds(value: Fraction, bound: Threshold) -> bool:
    if isinstance(bound, PowerProduct):
        return bound.compare(value) < 0
    return value > bound


def _at_least(bound: Threshold, value: Fraction) -> bool:
    """bound >= value, exactly."""
    if isinstance(bound, PowerProduct):
        return bound.compare(value) >= 0
    return bound >= value


def _render(x: Threshold | Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# Live strategies for run_game
# ---------------------------------------------------------------------------

@dataclass
class Alice34:
    """Budget-3/4 strategy on the 2-bit game: open with 1/4 at leaf 00, then
    answer the first 1/2-crossing (odd at node 0 -> play 11; even at node 00
    -> play 01) and pass forever."""

    _opened: bool = False
    _responded: bool = False

    def move(self, state: GameState, player: Player) -> Move | None:
        half = Fraction(1, 2)
        if not self._opened:
            self._opened = True
            return Move(0, "00", Fraction(1, 4))
        if not self._responded:
            if state.bob_value(0, "0") > half:
                self._responded = True
                return Move(0, "11", half)
            if state.bob_value(1, "00") > half:
                self._responded = True
                return Move(0, "01", half)
        return None


@dataclass
class Alice23:
    """Budget-2/3 strategy: open with 1/9 at 00 and at 10; once both opened
    leaves are strictly beaten, drop 4/9 on the leaf under the lighter odd
    branch (11 when odd(0) >= odd(1), else 01) and pass forever.

    If the final move is ever beaten, the two-by-two products certificate
    (square root inner products against the branch sums) convicts the
    opponent of exceeding a constraint sum.
    """

    _openings_done: int = 0
    _responded: bool = False

    def move(self, state: GameState, player: Player) -> Move | None:
        ninth = Fraction(1, 9)
        if self._openings_done == 0:
            self._openings_done = 1
            return Move(0, "00", ninth)
        if self._openings_done == 1:
            self._openings_done = 2
            return Move(0, "10", ninth)
        if not self._responded:
            beaten_00 = state.bob_product("00") > ninth
            beaten_10 = state.bob_product("10") > ninth
            if beaten_00 and beaten_10:
                self._responded = True
                p = state.bob_value(0, "0")
                q = state.bob_value(0, "1")
                leaf = "11" if p >= q else "01"
                return Move(0, leaf, Fraction(4, 9))
        return None


def alice_34() -> Alice34:
    return Alice34()


def alice_23() -> Alice23:
    return Alice23()


# ---------------------------------------------------------------------------
# Merged timelines over opponent streams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TimelineFault:
    track: int
    step: int
    reason: str


class Timeline:
    """Joint replay of several streams with a global update order.

    Updates are ordered by (step, track index, position within the stream);
    "strictly before" in event definitions refers to this order.  A faulting
    stream truncates the whole timeline at the offending update.
    """

    def __init__(self, streams: Sequence[EnumerationStream]):
        self.streams = list(streams)
        items = []
        for ti, stream in enumerate(self.streams):
            for pos, upd in enumerate(stream.updates):
                items.append((upd.step, ti, pos, upd.node, upd.value))
        items.sort(key=lambda it: (it[0], it[1], it[2]))

        self.fault: TimelineFault | None = None
        self.changes: dict[tuple[int, str], list[tuple[int, Fraction]]] = {}
        assignments = [s.fresh_assignment() for s in self.streams]
        self.length = 0
        for t, (step, ti, _pos, node, value) in enumerate(items, start=1):
            try:
                assignments[ti].raise_value(node, value)
            except ValueError as exc:
                self.fault = TimelineFault(ti, step, str(exc))
                break
            bad = validate(assignments[ti])
            if bad:
                self.fault = TimelineFault(ti, step, str(bad[0]))
                break
            self.changes.setdefault((ti, node), []).append((t, value))
            self.length = t
        self.finals = assignments

    def _governing(self, ti: int, node: str) -> str:
        constraint = self.streams[ti].constraint
        if constraint is None:
            return node
        while node and not constraint.bets_at(len(node)):
            node = node[:-1]
        return node

    def value_at(self, ti: int, node: str, t: int) -> Fraction:
        """Effective value of the node after the first t updates."""
        log = self.changes.get((ti, self._governing(ti, node)), [])
        idx = bisect.bisect_right(log, (t, Fraction(10**30))) - 1
        return log[idx][1] if idx >= 0 else ZERO

    def final_value(self, ti: int, node: str) -> Fraction:
        return self.value_at(ti, node, self.length)

    def crossing(self, ti: int, node: str, bound: Threshold) -> int | None:
        """First timeline index at which the node's value strictly exceeds
        the bound, or None if it never does."""
        log = self.changes.get((ti, self._governing(ti, node)), [])
        for t, v in log:
            if _exceeds(v, bound):
                return t
        return None

    def product_crossing(self, tracks: Sequence[int], node: str,
                         bound: Threshold) -> int | None:
        """First index where the product of the tracks' values at the node
        strictly exceeds the bound."""
        logs = [self.changes.get((ti, self._governing(ti, node)), [])
                for ti in tracks]
        times = sorted({t for log in logs for t, _ in log})
        for t in times:
            prod = ONE
            for ti in tracks:
                prod *= self.value_at(ti, node, t)
            if _exceeds(prod, bound):
                return t
        return None


def _clamp(t: int | None, horizon: int) -> int | None:
    return t if t is not None and t <= horizon else None


# ---------------------------------------------------------------------------
# Construction records
# ---------------------------------------------------------------------------

@dataclass
class RoundRecord:
    index: int
    prefix: str
    block: str
    event: str | None
    thresholds: dict[str, str]
    crossings: dict[str, int | None]


@dataclass
class OmegaConstruction:
    variant: str
    rounds_requested: int
    omega: str
    rounds: list[RoundRecord]
    mass: MassAssignment
    candidates: dict[str, dict[str, str]]
    fault: TimelineFault | None = None
    params: "StrategyParams | None" = None
    odd_part: OnlineMassAssignment | None = None
    even_part: OnlineMassAssignment | None = None
    checks: dict[str, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "variant": self.variant,
            "omega": self.omega,
            "rounds": [
                {
                    "index": r.index,
                    "prefix": r.prefix,
                    "block": r.block,
                    "event": r.event,
                    "thresholds": r.thresholds,
                    "crossings": {k: v for k, v in r.crossings.items()},
                }
                for r in self.rounds
            ],
            "mass": {
                node: [str(v.numerator), str(v.denominator)]
                for node, v in sorted(self.mass.entries.items())
            },
            "checks": self.checks,
        }
        if self.fault:
            out["fault"] = {
                "track": self.fault.track,
                "step": self.fault.step,
                "reason": self.fault.reason,
            }
        if self.params:
            out["params"] = self.params.to_json()
        return out


def _complete_intermediate_levels(
    candidates: dict[str, Fraction], block: int
) -> MassAssignment:
    """Fill the depths between block boundaries with children sums."""
    entries = dict(candidates)
    between: dict[str, Fraction] = {}
    for x, v in candidates.items():
        if not x:
            continue
        boundary = len(x) - block
        for d in range(boundary + 1, len(x)):
            node = x[:d]
            between[node] = between.get(node, ZERO) + v
    entries.update(between)
    return MassAssignment(entries)


def _collect_candidates(
    timeline: Timeline,
    rounds: int,
    path_fn: Callable[[int], list[tuple[str, tuple]]],
) -> dict[str, tuple]:
    """Union of every prefix that is on the constructed path at some time.

    path_fn(horizon) lists (prefix, payload) pairs for the path computed
    with crossings clamped to the horizon; payloads for a given prefix must
    agree across horizons (asserted: at most one threshold tuple per node).
    """
    seen: dict[str, tuple] = {}
    interesting = sorted({0, timeline.length} | {
        t for log in timeline.changes.values() for t, _ in log})
    for horizon in interesting:
        for prefix, payload in path_fn(horizon):
            if prefix in seen:
                assert seen[prefix] == payload, \
                    f"candidate {prefix!r} reassigned different thresholds"
            else:
                seen[prefix] = payload
    return seen


# ---------------------------------------------------------------------------
# 3/4 construction
# ---------------------------------------------------------------------------

def build_omega_34(
    bob_odd: EnumerationStream, bob_even: EnumerationStream, rounds: int
) -> OmegaConstruction:
    """Halving-threshold construction: per round, watch the opponent's odd
    value at x0 against o/2 and even value at x00 against e/2; write block
    11 (odd crossed first), 01 (even crossed first), or 00 (neither), and
    shrink the crossed thresholds by half (both, when neither crossed)."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    timeline = Timeline([bob_odd, bob_even])

    def path(horizon: int) -> list[tuple[str, tuple]]:
        o = e = ONE
        x = ""
        out = [(x, (o, e))]
        for _ in range(rounds):
            s_o = _clamp(timeline.crossing(0, x + "0", o / 2), horizon)
            s_e = _clamp(timeline.crossing(1, x + "00", e / 2), horizon)
            if s_o is not None and (s_e is None or s_o <= s_e):
                x, o, e = x + "11", o / 2, e
            elif s_e is not None:
                x, o, e = x + "01", o, e / 2
            else:
                x, o, e = x + "00", o / 2, e / 2
            out.append((x, (o, e)))
        return out

    candidates = _collect_candidates(timeline, rounds, path)

    records: list[RoundRecord] = []
    o = e = ONE
    x = ""
    for j in range(rounds):
        s_o = timeline.crossing(0, x + "0", o / 2)
        s_e = timeline.crossing(1, x + "00", e / 2)
        if s_o is not None and (s_e is None or s_o <= s_e):
            event, block, o = "O", "11", o / 2
        elif s_e is not None:
            event, block, e = "E", "01", e / 2
        else:
            event, block, o, e = None, "00", o / 2, e / 2
        if timeline.fault is not None and event is None:
            # a no-event round is uncertain once the stream broke off
            break
        records.append(RoundRecord(
            j, x, block, event,
            {"odd_bound": _render(o), "even_bound": _render(e)},
            {"odd": s_o, "even": s_e}))
        x += block

    p_values = {
        cand: Fraction(4, 3) ** (len(cand) // 2) * oo * ee
        for cand, (oo, ee) in candidates.items()
    }
    mass = _complete_intermediate_levels(p_values, 2)

    construction = OmegaConstruction(
        variant="3-4", rounds_requested=rounds, omega=x, rounds=records,
        mass=mass, fault=timeline.fault,
        candidates={c: {"odd_bound": _render(v[0]), "even_bound": _render(v[1])}
                    for c, v in candidates.items()})

    built = len(x) // 2
    sound = all(
        candidates[x[:2 * j]][0] >= timeline.final_value(0, x[:2 * j])
        and candidates[x[:2 * j]][1] >= timeline.final_value(1, x[:2 * j])
        for j in range(built + 1))
    semi = not validate(mass)
    qprod = timeline.final_value(0, x) * timeline.final_value(1, x)
    final_ok = qprod <= Fraction(3, 4) ** built * p_values[x]
    construction.checks = {
        "threshold_soundness": sound,
        "mass_is_semimeasure": semi,
        "final_inequality": final_ok,
    }
    assert sound and semi and final_ok
    return construction


def _thresholds_34_from_prefix(prefix: str) -> tuple[Fraction, Fraction]:
    o = e = ONE
    for j in range(0, len(prefix), 2):
        block = prefix[j:j + 2]
        if block == "11":
            o /= 2
        elif block == "01":
            e /= 2
        elif block == "00":
            o, e = o / 2, e / 2
        else:
            raise DecodeError(f"prefix block {block!r} is never constructed")
    return o, e


def decode_odd_bit_34(
    bob_odd: EnumerationStream,
    bob_even: EnumerationStream,
    prefix: str,
    next_even_bit: int,
) -> int:
    """Recover the bit after `prefix` given the bit after that.

    A zero even bit forces a 00 block; a one means some event fired, and
    re-running the detector on the recorded streams tells which."""
    if len(prefix) % 2:
        raise DecodeError("prefix length must be even")
    o, e = _thresholds_34_from_prefix(prefix)
    if next_even_bit == 0:
        return 0
    timeline = Timeline([bob_odd, bob_even])
    s_o = timeline.crossing(0, prefix + "0", o / 2)
    s_e = timeline.crossing(1, prefix + "00", e / 2)
    if s_o is not None and (s_e is None or s_o <= s_e):
        return 1
    if s_e is not None:
        return 0
    raise DecodeError("no event ever fires after this prefix")


# ---------------------------------------------------------------------------
# Parametric thresholds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StrategyParams:
    """Exactness-preserving parameters for the parametric constructions.

    delta_power is delta**(1-epsilon), exact by the choice of epsilon; the
    event multiplier is (1-2*delta)**event_exponent, kept symbolic because
    its exponent need not be integral.
    """

    epsilon: Fraction
    k: int
    delta: Fraction
    delta_power: Fraction
    event_exponent: Fraction

    @staticmethod
    def two_player(epsilon: Fraction | str) -> StrategyParams:
        epsilon = _parse_fraction(epsilon)
        if not 0 < epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        m = 2 / epsilon
        if m.denominator != 1:
            raise ValueError(
                "epsilon must equal 2/m for an integer m, so that "
                "delta**(1-epsilon) is exactly 4*delta")
        m = m.numerator
        delta = Fraction(1, 1 << m)
        return StrategyParams(
            epsilon=epsilon, k=2, delta=delta, delta_power=4 * delta,
            event_exponent=2 - 2 * epsilon)

    @staticmethod
    def k_machines(k: int, epsilon: Fraction | str) -> StrategyParams:
        epsilon = _parse_fraction(epsilon)
        if k < 2:
            raise ValueError("k must be >= 2")
        if not 0 < epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        inv = 1 / epsilon
        if inv.denominator != 1:
            raise ValueError(
                "epsilon must equal 1/j for an integer j, so that "
                "delta = (2k)**(-j) is an exact rational")
        j = inv.numerator
        delta = Fraction(1, (2 * k) ** j)
        return StrategyParams(
            epsilon=epsilon, k=k, delta=delta, delta_power=2 * k * delta,
            event_exponent=k - epsilon * k)

    def event_multiplier(self) -> PowerProduct:
        return PowerProduct(ONE, (((1 - 2 * self.delta), self.event_exponent),))

    def beta_value(self) -> PowerProduct:
        return self.event_multiplier()

    def p_exponent(self) -> Fraction:
        return 1 / (self.k - self.k * self.epsilon)

    def to_json(self) -> dict:
        beta = self.beta_value().as_fraction()
        return {
            "epsilon": str(self.epsilon),
            "k": self.k,
            "delta": str(self.delta),
            "delta_power": str(self.delta_power),
            "event_exponent": str(self.event_exponent),
            "event_multiplier": str(self.event_multiplier())
            if beta is None else str(beta),
        }


def _parse_fraction(x: Fraction | str | int) -> Fraction:
    return Fraction(x)


def _block_for_machine(i: int, k: int) -> str:
    """Leftmost k-bit string with ones exactly at positions i and k."""
    if i == k:
        return "0" * (k - 1) + "1"
    return "0" * (i - 1) + "1" + "0" * (k - i - 1) + "1"


def build_omega_eps(
    bob_odd: EnumerationStream,
    bob_even: EnumerationStream,
    rounds: int,
    params: StrategyParams,
) -> OmegaConstruction:
    """Parametric two-player construction: crossings are tested against
    threshold * delta**(1-epsilon); a crossed threshold shrinks by the
    symbolic event multiplier, uncrossed rounds shrink both by 4*delta."""
    if params.k != 2:
        raise ValueError("two-player construction needs k == 2 parameters")
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    timeline = Timeline([bob_odd, bob_even])
    beta = params.event_multiplier()
    dpow = params.delta_power
    one = PowerProduct.of(1)

    def step_round(x: str, o: PowerProduct, e: PowerProduct, horizon: int):
        s_o = _clamp(timeline.crossing(0, x + "0", o * dpow), horizon)
        s_e = _clamp(timeline.crossing(1, x + "00", e * dpow), horizon)
        if s_o is not None and (s_e is None or s_o <= s_e):
            return "O", "11", o * beta, e, s_o, s_e
        if s_e is not None:
            return "E", "01", o, e * beta, s_o, s_e
        return None, "00", o * dpow, e * dpow, s_o, s_e

    def path(horizon: int) -> list[tuple[str, tuple]]:
        o = e = one
        x = ""
        out = [(x, (o, e))]
        for _ in range(rounds):
            _ev, block, o, e, _so, _se = step_round(x, o, e, horizon)
            x += block
            out.append((x, (o, e)))
        return out

    candidates = _collect_candidates(timeline, rounds, path)

    records = []
    o = e = one
    x = ""
    for j in range(rounds):
        event, block, o, e, s_o, s_e = step_round(x, o, e, timeline.length)
        if timeline.fault is not None and event is None:
            break
        records.append(RoundRecord(
            j, x, block, event,
            {"odd_bound": _render(o), "even_bound": _render(e)},
            {"odd": s_o, "even": s_e}))
        x += block

    delta = params.delta
    p_values: dict[str, Fraction] = {}
    for cand in candidates:
        j = len(cand) // 2
        blocks = [cand[2 * i:2 * i + 2] for i in range(j)]
        n_events = sum(b in ("11", "01") for b in blocks)
        n_quiet = sum(b == "00" for b in blocks)
        p_values[cand] = ((1 - delta) ** -j
                          * (1 - 2 * delta) ** n_events
                          * delta ** n_quiet)
    mass = _complete_intermediate_levels(p_values, 2)

    construction = OmegaConstruction(
        variant="eps", rounds_requested=rounds, omega=x, rounds=records,
        mass=mass, fault=timeline.fault, params=params,
        candidates={c: {"odd_bound": _render(v[0]), "even_bound": _render(v[1])}
                    for c, v in candidates.items()})

    sound = all(
        _at_least(candidates[x[:2 * j]][0], timeline.final_value(0, x[:2 * j]))
        and _at_least(candidates[x[:2 * j]][1], timeline.final_value(1, x[:2 * j]))
        for j in range(len(x) // 2 + 1))
    semi = not validate(mass)
    # (1-delta)^j * P equals (o*e) ** (1/(2-2eps)) exactly, per candidate
    identity = True
    for cand, (oo, ee) in candidates.items():
        j = len(cand) // 2
        lhs = PowerProduct.of((1 - delta) ** j * p_values[cand])
        rhs = (oo * ee) ** params.p_exponent()
        if not lhs.equals(rhs):
            identity = False
    qprod = timeline.final_value(0, x) * timeline.final_value(1, x)
    final_ok = (candidates[x][0] * candidates[x][1]).compare(qprod) >= 0
    construction.checks = {
        "threshold_soundness": sound,
        "mass_is_semimeasure": semi,
        "threshold_mass_identity": identity,
        "final_inequality": final_ok,
    }
    assert sound and semi and identity and final_ok
    return construction


def decode_odd_bit_eps(
    bob_odd: EnumerationStream,
    bob_even: EnumerationStream,
    prefix: str,
    next_even_bit: int,
    params: StrategyParams,
) -> int:
    if len(prefix) % 2:
        raise DecodeError("prefix length must be even")
    beta = params.event_multiplier()
    dpow = params.delta_power
    o = e = PowerProduct.of(1)
    for j in range(0, len(prefix), 2):
        block = prefix[j:j + 2]
        if block == "11":
            o = o * beta
        elif block == "01":
            e = e * beta
        elif block == "00":
            o, e = o * dpow, e * dpow
        else:
            raise DecodeError(f"prefix block {block!r} is never constructed")
    if next_even_bit == 0:
        return 0
    timeline = Timeline([bob_odd, bob_even])
    s_o = timeline.crossing(0, prefix + "0", o * dpow)
    s_e = timeline.crossing(1, prefix + "00", e * dpow)
    if s_o is not None and (s_e is None or s_o <= s_e):
        return 1
    if s_e is not None:
        return 0
    raise DecodeError("no event ever fires after this prefix")


def build_omega_kmod(
    bobs: Sequence[EnumerationStream],
    rounds: int,
    params: StrategyParams,
) -> OmegaConstruction:
    """k-machine generalization: one opponent stream per residue class.

    Per round the construction waits for any machine's value at x 0^k to
    exceed its threshold times delta**(1-epsilon); the first machine i to
    cross gets block 0^(i-1) 1 0^(k-i-1) 1 and its threshold shrinks by the
    event multiplier, while an uncrossed round writes 0^k and shrinks every
    threshold by delta**(1-epsilon)."""
    k = params.k
    if len(bobs) != k:
        raise ValueError(f"expected {k} opponent streams, got {len(bobs)}")
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    for i, stream in enumerate(bobs, start=1):
        want = OnlineConstraint(k, i)
        if stream.constraint != want:
            raise ValueError(
                f"stream {i} must carry the {want.describe()} constraint")
    timeline = Timeline(bobs)
    mult = params.event_multiplier()
    dpow = params.delta_power
    one = PowerProduct.of(1)

    def step_round(x: str, ts: tuple[PowerProduct, ...], horizon: int):
        crossings = [
            _clamp(timeline.crossing(i, x + "0" * k, ts[i] * dpow), horizon)
            for i in range(k)
        ]
        fired = [(s, i) for i, s in enumerate(crossings) if s is not None]
        if fired:
            s, i = min(fired)
            new_ts = tuple(t * mult if idx == i else t
                           for idx, t in enumerate(ts))
            return i + 1, _block_for_machine(i + 1, k), new_ts, crossings
        return None, "0" * k, tuple(t * dpow for t in ts), crossings

    def path(horizon: int) -> list[tuple[str, tuple]]:
        ts = tuple([one] * k)
        x = ""
        out = [(x, ts)]
        for _ in range(rounds):
            _i, block, ts, _cr = step_round(x, ts, horizon)
            x += block
            out.append((x, ts))
        return out

    candidates = _collect_candidates(timeline, rounds, path)

    records = []
    ts = tuple([one] * k)
    x = ""
    for j in range(rounds):
        fired_i, block, ts, crossings = step_round(x, ts, timeline.length)
        if timeline.fault is not None and fired_i is None:
            break
        records.append(RoundRecord(
            j, x, block,
            None if fired_i is None else f"E_{fired_i}",
            {f"bound_{i + 1}": _render(t) for i, t in enumerate(ts)},
            {f"machine_{i + 1}": s for i, s in enumerate(crossings)}))
        x += block

    delta = params.delta
    p_values: dict[str, Fraction] = {}
    for cand in candidates:
        n = len(cand) // k
        blocks = [cand[k * i:k * i + k] for i in range(n)]
        n_quiet = sum(b == "0" * k for b in blocks)
        n_events = n - n_quiet
        p_values[cand] = ((1 - delta) ** -n
                          * (1 - 2 * delta) ** n_events
                          * delta ** n_quiet)
    mass = _complete_intermediate_levels(p_values, k)

    construction = OmegaConstruction(
        variant="kmod", rounds_requested=rounds, omega=x, rounds=records,
        mass=mass, fault=timeline.fault, params=params,
        candidates={
            c: {f"bound_{i + 1}": _render(t) for i, t in enumerate(v)}
            for c, v in candidates.items()})

    sound = True
    for j in range(len(x) // k + 1):
        pref = x[:k * j]
        for i in range(k):
            if not _at_least(candidates[pref][i],
                             timeline.final_value(i, pref)):
                sound = False
    semi = not validate(mass)
    identity = True
    for cand, cand_ts in candidates.items():
        n = len(cand) // k
        prod = PowerProduct.of(1)
        for t in cand_ts:
            prod = prod * t
        lhs = PowerProduct.of((1 - delta) ** n * p_values[cand])
        if not lhs.equals(prod ** params.p_exponent()):
            identity = False
    qprod = ONE
    for i in range(k):
        qprod *= timeline.final_value(i, x)
    tsprod = PowerProduct.of(1)
    for t in candidates[x]:
        tsprod = tsprod * t
    final_ok = tsprod.compare(qprod) >= 0
    construction.checks = {
        "threshold_soundness": sound,
        "mass_is_semimeasure": semi,
        "threshold_mass_identity": identity,
        "final_inequality": final_ok,
    }
    assert sound and semi and identity and final_ok
    return construction


def decode_block_kmod(
    bobs: Sequence[EnumerationStream],
    prefix: str,
    last_block_bit: int,
    params: StrategyParams,
) -> str:
    """Recover the whole next k-bit block from the prefix and the block's
    final bit (1 exactly when some machine crossed)."""
    k = params.k
    if len(prefix) % k:
        raise DecodeError(f"prefix length must be a multiple of {k}")
    if last_block_bit == 0:
        return "0" * k
    mult = params.event_multiplier()
    dpow = params.delta_power
    ts = [PowerProduct.of(1)] * k
    for j in range(0, len(prefix), k):
        block = prefix[j:j + k]
        if block == "0" * k:
            ts = [t * dpow for t in ts]
        else:
            matches = [i for i in range(1, k + 1)
                       if block == _block_for_machine(i, k)]
            if not matches:
                raise DecodeError(f"prefix block {block!r} is never constructed")
            ts[matches[0] - 1] = ts[matches[0] - 1] * mult
    timeline = Timeline(bobs)
    crossings = [
        (timeline.crossing(i, prefix + "0" * k, ts[i] * dpow), i)
        for i in range(k)
    ]
    fired = [(s, i) for s, i in crossings if s is not None]
    if not fired:
        raise DecodeError("no machine ever crosses after this prefix")
    _s, i = min(fired)
    return _block_for_machine(i + 1, k)


# ---------------------------------------------------------------------------
# 2/3 construction with factorized bit-swapped mass
# ---------------------------------------------------------------------------

def build_omega_23(
    bob_odd: EnumerationStream, bob_even: EnumerationStream, rounds: int
) -> OmegaConstruction:
    """Product-threshold construction at budget 2/3.

    Per round, watch the odd*even products at x00 and x10 against t/9.  If
    the x00 product never crosses, write 00; if it crosses but x10 never
    does, write 10 (both keep t/9); once both cross, snapshot the odd branch
    values and write 11 (odd(x0) >= odd(x1)) or 01, with threshold 4t/9.

    The bit-swapped mass is factorized into odd and even online parts by
    iterating a fixed two-level split (1/3 - 2/3 on the first swapped bit,
    an even 2/9 - 2/9 and 4/9 pattern below); the product identity is exact.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    timeline = Timeline([bob_odd, bob_even])
    ninth = Fraction(1, 9)

    def step_round(x: str, t: Fraction, horizon: int):
        s00 = _clamp(timeline.product_crossing((0, 1), x + "00", t * ninth),
                     horizon)
        s10 = _clamp(timeline.product_crossing((0, 1), x + "10", t * ninth),
                     horizon)
        if s00 is None:
            return None, "00", t * ninth, s00, s10
        if s10 is None:
            return "T00", "10", t * ninth, s00, s10
        s_both = max(s00, s10)
        p = timeline.value_at(0, x + "0", s_both)
        q = timeline.value_at(0, x + "1", s_both)
        if q <= p:
            return "T00+T10", "11", 4 * t * ninth, s00, s10
        return "T00+T10", "01", 4 * t * ninth, s00, s10

    def path(horizon: int) -> list[tuple[str, tuple]]:
        t = ONE
        x = ""
        out = [(x, (t,))]
        for _ in range(rounds):
            _ev, block, t, _s0, _s1 = step_round(x, t, horizon)
            x += block
            out.append((x, (t,)))
        return out

    candidates = _collect_candidates(timeline, rounds, path)

    records = []
    t = ONE
    x = ""
    for j in range(rounds):
        event, block, t, s00, s10 = step_round(x, t, timeline.length)
        if timeline.fault is not None and (s00 is None or s10 is None):
            # both "no T00" and "T00 without T10" rest on a crossing never
            # arriving, which a broken-off stream cannot witness
            break
        records.append(RoundRecord(
            j, x, block, event, {"bound": _render(t)},
            {"product_00": s00, "product_10": s10}))
        x += block

    p_values = {
        cand: Fraction(2, 3) ** (len(cand) // 2) * tt
        for cand, (tt,) in candidates.items()
    }
    mass = _complete_intermediate_levels(p_values, 2)

    # Factorize the bit-swapped mass: the odd part always splits the first
    # swapped bit 1/3 - 2/3; the even part carries relweight / split below.
    odd_part = OnlineMassAssignment(ODD, {"": ONE})
    even_part = OnlineMassAssignment(EVEN, {"": ONE})
    split = {"0": Fraction(1, 3), "1": Fraction(2, 3)}
    for cand in sorted(candidates, key=len):
        if len(cand) >= rounds * 2:
            continue
        sx = swap_adjacent_bits(cand)
        odd_here = odd_part.value(sx)
        even_here = even_part.value(sx)
        for b in "01":
            odd_part.entries[sx + b] = odd_here * split[b]
        for block in ("00", "10", "11", "01"):
            child = cand + block
            if child not in candidates:
                continue
            sblock = swap_adjacent_bits(block)
            rel = p_values[child] / p_values[cand]
            even_part.entries[sx + sblock] = (
                even_here * rel / split[sblock[0]])

    construction = OmegaConstruction(
        variant="2-3", rounds_requested=rounds, omega=x, rounds=records,
        mass=mass, fault=timeline.fault,
        candidates={c: {"bound": _render(v[0])} for c, v in candidates.items()},
        odd_part=odd_part, even_part=even_part)

    sound = all(
        candidates[x[:2 * j]][0]
        >= timeline.final_value(0, x[:2 * j]) * timeline.final_value(1, x[:2 * j])
        for j in range(len(x) // 2 + 1))
    semi = not validate(mass)
    parts_ok = not validate(odd_part) and not validate(even_part)
    product_ok = True
    for cand, pv in p_values.items():
        sx = swap_adjacent_bits(cand)
        if odd_part.value(sx) * even_part.value(sx) != pv:
            product_ok = False
    for cand in candidates:
        if len(cand) >= rounds * 2:
            continue
        for block in ("00", "01", "10", "11"):
            child = cand + block
            if child in candidates:
                continue
            schild = swap_adjacent_bits(child)
            if odd_part.value(schild) * even_part.value(schild) != ZERO:
                product_ok = False
    qprod = timeline.final_value(0, x) * timeline.final_value(1, x)
    final_ok = Fraction(3, 2) ** (len(x) // 2) * qprod <= p_values[x]
    construction.checks = {
        "threshold_soundness": sound,
        "mass_is_semimeasure": semi,
        "parts_are_valid": parts_ok,
        "swapped_product_identity": product_ok,
        "final_inequality": final_ok,
    }
    assert sound and semi and parts_ok and product_ok and final_ok
    return construction
