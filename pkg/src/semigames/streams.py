"""Monotone enumeration streams and their line-oriented JSON format.

A stream is the finite, testable surrogate for a lower semicomputable
assignment: an ordered sequence of strictly-increasing node updates such
that every prefix of the sequence induces a valid (online) assignment.

Serialization: one update per line,
    {"step": int, "node": "bitstring", "num": "123", "den": "456"}
with an optional "track" key when several streams share a file.  Numerator
and denominator are decimal strings; no floating point ever appears.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, TextIO

from .semimeasure import (
    MassAssignment,
    OnlineConstraint,
    OnlineMassAssignment,
    Violation,
    check_node,
    validate,
)


@dataclass(frozen=True)
class StreamUpdate:
    step: int
    node: str
    value: Fraction

    def to_json(self, track: str | None = None) -> str:
        rec = {
            "step": self.step,
            "node": self.node,
            "num": str(self.value.numerator),
            "den": str(self.value.denominator),
        }
        if track is not None:
            rec["track"] = track
        return json.dumps(rec, sort_keys=True)


class StreamFault(Exception):
    """An update broke monotonicity or the declared constraints."""

    def __init__(self, update: StreamUpdate, violations: list[Violation] | str):
        self.update = update
        self.violations = violations
        super().__init__(f"stream fault at step {update.step}, node "
                         f"{update.node!r}: {violations}")


@dataclass
class EnumerationStream:
    """Ordered monotone updates inducing an (online) assignment.

    constraint None means a plain (unconstrained) semimeasure.
    """

    updates: list[StreamUpdate] = field(default_factory=list)
    constraint: OnlineConstraint | None = None

    def __len__(self) -> int:
        return len(self.updates)

    def append(self, node: str, value: Fraction | int, step: int | None = None) -> None:
        if step is None:
            step = self.updates[-1].step + 1 if self.updates else 0
        self.updates.append(StreamUpdate(step, check_node(node), Fraction(value)))

    def fresh_assignment(self) -> MassAssignment | OnlineMassAssignment:
        if self.constraint is None:
            return MassAssignment()
        return OnlineMassAssignment(self.constraint)

    def replay(self) -> Iterator[tuple[StreamUpdate, MassAssignment | OnlineMassAssignment]]:
        """Apply updates one by one, yielding the state after each.

        Raises StreamFault as soon as a prefix stops being valid.
        """
        state = self.fresh_assignment()
        last_step = -1
        for upd in self.updates:
            if upd.step < last_step:
                raise StreamFault(upd, "step indices must be non-decreasing")
            last_step = upd.step
            try:
                state.raise_value(upd.node, upd.value)
            except ValueError as exc:
                raise StreamFault(upd, str(exc)) from exc
            bad = validate(state)
            if bad:
                raise StreamFault(upd, bad)
            yield upd, state

    def final_assignment(self) -> MassAssignment | OnlineMassAssignment:
        state = self.fresh_assignment()
        for _, state in self.replay():
            pass
        return state

    def check(self) -> None:
        """Validate every prefix; raises StreamFault on the first bad one."""
        for _ in self.replay():
            pass

    def to_jsonl(self, fp: TextIO, track: str | None = None) -> None:
        for upd in self.updates:
            fp.write(upd.to_json(track) + "\n")


def parse_update(record: dict) -> tuple[str, StreamUpdate]:
    track = record.get("track", "")
    value = Fraction(int(record["num"]), int(record["den"]))
    return track, StreamUpdate(int(record["step"]), check_node(record["node"]), value)


def load_streams(
    fp: TextIO, constraints: dict[str, OnlineConstraint | None] | None = None
) -> dict[str, EnumerationStream]:
    """Read a JSONL stream file, splitting on the optional "track" key.

    `constraints` assigns the declared constraint per track; tracks named
    "odd"/"even" default to the matching constraint.  Deserialized streams
    are revalidated prefix by prefix.
    """
    streams: dict[str, EnumerationStream] = {}
    for line in fp:
        line = line.strip()
        if not line:
            continue
        track, upd = parse_update(json.loads(line))
        if track not in streams:
            constraint: OnlineConstraint | None = None
            if constraints and track in constraints:
                constraint = constraints[track]
            elif track in ("odd", "even"):
                constraint = OnlineConstraint.parse(track)
            streams[track] = EnumerationStream([], constraint)
        streams[track].updates.append(upd)
    for stream in streams.values():
        stream.check()
    return streams


def dump_streams(fp: TextIO, streams: dict[str, EnumerationStream]) -> None:
    rows = []
    for track, stream in streams.items():
        for upd in stream.updates:
            rows.append((upd.step, track, upd))
    rows.sort(key=lambda r: (r[0], r[1]))
    for _, track, upd in rows:
        fp.write(upd.to_json(track if track else None) + "\n")
