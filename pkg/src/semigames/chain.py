"""Chain-rule combinators for monotone streams of even assignments.

`conditional_from_joint` turns a joint stream into the family of conditional
assignments P(y | x, k) = joint(xy) * 2^k, frozen per x as soon as the
marginal joint(x) climbs above 2^-k — the freeze is what keeps every
conditional root at or below 1.

`joint_from_conditionals` goes the other way: it mixes a marginal with a
family of conditionals indexed by (x, k), weighting the k-th term by
2^-(k-1)/4 exactly when 2^-k has been reached by the marginal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .semimeasure import OnlineConstraint, ZERO
from .streams import EnumerationStream, StreamUpdate


@dataclass
class ConditionalFamily:
    """Per-x conditional streams produced from one joint stream."""

    prefix_length: int
    k: int
    streams: dict[str, EnumerationStream] = field(default_factory=dict)
    frozen: set[str] = field(default_factory=set)

    def stream_for(self, x: str) -> EnumerationStream:
        return self.streams.get(
            x, EnumerationStream([], self._conditional_constraint()))

    def _conditional_constraint(self) -> OnlineConstraint:
        return OnlineConstraint(2, 2).shifted(self.prefix_length)


def conditional_from_joint(
    joint: EnumerationStream, m: int, k: int
) -> ConditionalFamily:
    """Conditional streams P(y | x, k) = joint(xy) * 2^k for every m-bit x.

    While joint(x) <= 2^-k each update below x is passed through scaled by
    2^k; the update that pushes joint(x) beyond 2^-k freezes the whole
    conditional for that x at its pre-jump values.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if m < 0:
        raise ValueError("prefix length must be nonnegative")
    if joint.constraint is None:
        raise ValueError("the joint stream must carry an online constraint")
    bound = Fraction(1, 1 << k)
    scale = Fraction(1 << k)
    out = ConditionalFamily(m, k)
    cond_constraint = joint.constraint.shifted(m)

    def sync_root(x: str, value: Fraction, step: int) -> None:
        if x in out.frozen:
            return
        if value > bound:
            out.frozen.add(x)  # keep the pre-jump values
            return
        stream = out.streams.setdefault(x, EnumerationStream([], cond_constraint))
        stream.updates.append(StreamUpdate(step, "", value * scale))

    for upd, _state in joint.replay():
        if len(upd.node) > m:
            x, y = upd.node[:m], upd.node[m:]
            if x not in out.frozen:
                stream = out.streams.setdefault(
                    x, EnumerationStream([], cond_constraint))
                stream.updates.append(StreamUpdate(upd.step, y, upd.value * scale))
        elif len(upd.node) == m:
            sync_root(upd.node, upd.value, upd.step)
        else:
            # The copy-rule closure can carry this update down to the m-bit
            # prefixes, but only when no betting depth intervenes.
            if any(joint.constraint.bets_at(d)
                   for d in range(len(upd.node) + 1, m + 1)):
                continue
            for i in range(1 << (m - len(upd.node))):
                x = upd.node + format(i, f"0{m - len(upd.node)}b")
                sync_root(x, upd.value, upd.step)
    for stream in out.streams.values():
        stream.check()
    return out


def ceil_neg_log2(q: Fraction) -> int:
    """Smallest integer k with 2^-k <= q, for q in (0, 1]."""
    if q <= 0 or q > 1:
        raise ValueError("argument must lie in (0, 1]")
    k = max(0, (q.denominator - 1).bit_length() - q.numerator.bit_length() + 1)
    while Fraction(1, 1 << k) > q:
        k += 1
    while k > 0 and Fraction(1, 1 << (k - 1)) <= q:
        k -= 1
    return k


@dataclass
class JointResult:
    stream: EnumerationStream
    k_max: int
    truncation_bound: Fraction  # mass ignored by cutting the k-sum at k_max


def joint_from_conditionals(
    marginal: EnumerationStream,
    conditionals: Mapping[tuple[str, int], EnumerationStream],
    m: int,
    k_max: int = 64,
) -> JointResult:
    """Mix marginal and conditionals into one valid even stream.

    Below depth m the output copies the marginal.  At and below depth m the
    output at xy is the sum over provided (x, k) with 2^-k <= marginal(x) of
    2^-(k+1) * conditional(y | x, k), with k truncated to 0..k_max.  At the
    final state output(xy) >= marginal(x) * conditional(y|x,k*) / 4 for
    k* = ceil(-log2 marginal(x)).
    """
    if marginal.constraint is None:
        raise ValueError("the marginal stream must carry an online constraint")
    events: list[tuple[int, int, str, str | None, int | None, StreamUpdate]] = []
    for order, upd in enumerate(marginal.updates):
        events.append((upd.step, order, "marginal", None, None, upd))
    for (x, k), stream in conditionals.items():
        if len(x) != m:
            raise ValueError(f"conditional key {x!r} is not an {m}-bit string")
        if k < 0:
            raise ValueError("conditional index k must be nonnegative")
        for order, upd in enumerate(stream.updates):
            events.append((upd.step, order, "conditional", x, k, upd))
    events.sort(key=lambda e: (e[0], e[1], e[2]))

    marg: dict[str, Fraction] = {}
    cond: dict[tuple[str, int], dict[str, Fraction]] = {}
    emitted: dict[str, Fraction] = {}
    out = EnumerationStream([], marginal.constraint)

    def active_ks(x: str) -> list[int]:
        mx = marg.get(x, ZERO)
        if mx <= 0:
            return []
        lo = ceil_neg_log2(min(mx, Fraction(1)))
        return [k for (xx, k) in cond if xx == x and lo <= k <= k_max]

    def output_value(node: str) -> Fraction:
        if len(node) < m:
            return marg.get(node, ZERO)
        x, y = node[:m], node[m:]
        total = ZERO
        for k in active_ks(x):
            total += Fraction(1, 1 << (k + 1)) * cond[(x, k)].get(y, ZERO)
        return total

    def emit(node: str, step: int) -> None:
        v = output_value(node)
        if v > emitted.get(node, ZERO):
            emitted[node] = v
            out.updates.append(StreamUpdate(step, node, v))

    for step, _order, kind, x, k, upd in events:
        if kind == "marginal":
            marg[upd.node] = upd.value
            if len(upd.node) < m:
                emit(upd.node, step)
            if len(upd.node) == m:
                # newly active k terms can lift every node below upd.node
                touched = [n for n in emitted if n[:m] == upd.node]
                for (xx, kk), values in cond.items():
                    if xx == upd.node:
                        touched.extend(upd.node + y for y in values)
                for node in sorted(set(touched), key=len):
                    emit(node, step)
                emit(upd.node, step)
        else:
            cond.setdefault((x, k), {})[upd.node] = upd.value
            emit(x + upd.node, step)

    out.check()
    return JointResult(out, k_max, Fraction(1, 1 << (k_max + 1)))


def mixture_lower_bound(
    result: JointResult,
    marginal_value: Fraction,
    conditional_value: Fraction,
) -> Fraction:
    """The guaranteed floor marginal * conditional / 4 for the k* term."""
    return marginal_value * conditional_value / 4
