"""Referee and scheduler for the alternating enumeration games.

One player (Alice) enumerates a budgeted leaf assignment; the other (Bob)
enumerates one online assignment per declared constraint.  Turns strictly
alternate with explicit passes; a step budget stands in for the limit, and
the per-step verdict sequence makes limit behaviour visible as eventual
stabilization.  Alice is winning whenever some leaf carries at least the
product of Bob's values there; ties go to Alice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Protocol, TextIO

from .semimeasure import (
    OnlineConstraint,
    OnlineMassAssignment,
    ONE,
    ZERO,
    check_node,
    validate,
)


class Player(str, Enum):
    ALICE = "alice"
    BOB = "bob"


class Verdict(str, Enum):
    ALICE_WINNING = "alice"
    BOB_WINNING = "bob"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class GameConfig:
    depth: int
    alice_budget: Fraction
    constraints: tuple[OnlineConstraint, ...]
    max_steps: int
    block_size: int = 2

    def __post_init__(self) -> None:
        if not 0 < self.alice_budget <= 1:
            raise ValueError("alice_budget must lie in (0, 1]")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")

    @property
    def leaf_length(self) -> int:
        return self.block_size * self.depth

    def leaves(self) -> list[str]:
        return [format(i, f"0{self.leaf_length}b")
                for i in range(1 << self.leaf_length)]


@dataclass(frozen=True)
class Move:
    track: int  # index into config.constraints for Bob; ignored for Alice
    node: str
    value: Fraction


@dataclass(frozen=True)
class Fault:
    player: Player
    step: int
    reason: str


@dataclass(frozen=True)
class ThresholdEvent:
    kind: str  # "O" | "E" | "T_00" | "T_10" | "cross"
    node: str
    step: int


class GameState:
    """Both players' current values.  Alice holds leaf masses only."""

    def __init__(self, config: GameConfig):
        self.config = config
        self.alice: dict[str, Fraction] = {}
        self.bob: tuple[OnlineMassAssignment, ...] = tuple(
            OnlineMassAssignment(c) for c in config.constraints)

    def alice_value(self, leaf: str) -> Fraction:
        return self.alice.get(leaf, ZERO)

    def alice_total(self) -> Fraction:
        return sum(self.alice.values(), ZERO)

    def bob_value(self, track: int, node: str) -> Fraction:
        return self.bob[track].value(node)

    def bob_product(self, leaf: str) -> Fraction:
        out = ONE
        for assignment in self.bob:
            out *= assignment.value(leaf)
        return out


class Strategy(Protocol):
    def move(self, state: GameState, player: Player) -> Move | None: ...


@dataclass
class ScriptedStrategy:
    """Plays a fixed list of moves (None entries are passes), then passes."""

    script: list[Move | None]
    _cursor: int = 0

    def move(self, state: GameState, player: Player) -> Move | None:
        if self._cursor >= len(self.script):
            return None
        mv = self.script[self._cursor]
        self._cursor += 1
        return mv


def scripted_bob(track_updates: Iterable[tuple[int, str, Fraction | int]]) -> ScriptedStrategy:
    return ScriptedStrategy(
        [Move(t, check_node(n), Fraction(v)) for t, n, v in track_updates])


def silent() -> ScriptedStrategy:
    return ScriptedStrategy([])


@dataclass
class GameTranscript:
    config: GameConfig
    moves: list[tuple[int, Player, Move | None]] = field(default_factory=list)
    verdicts: list[tuple[int, Verdict, str | None]] = field(default_factory=list)
    fault: Fault | None = None

    def final_verdict(self) -> tuple[Verdict, str | None]:
        if not self.verdicts:
            return Verdict.UNDECIDED, None
        _, verdict, witness = self.verdicts[-1]
        return verdict, witness

    def states(self) -> Iterable[tuple[int, GameState]]:
        """Re-derive the state after every step (skipping the faulting move)."""
        state = GameState(self.config)
        for step, player, mv in self.moves:
            if mv is not None and not (self.fault and self.fault.step == step):
                _apply(state, player, mv)
            yield step, state

    def to_jsonl(self, fp: TextIO) -> None:
        cfg = {
            "type": "config",
            "depth": self.config.depth,
            "block_size": self.config.block_size,
            "budget": [str(self.config.alice_budget.numerator),
                       str(self.config.alice_budget.denominator)],
            "constraints": [c.describe() for c in self.config.constraints],
            "max_steps": self.config.max_steps,
        }
        fp.write(json.dumps(cfg, sort_keys=True) + "\n")
        verdicts = {step: (v, w) for step, v, w in self.verdicts}
        for step, player, mv in self.moves:
            if mv is None:
                rec = {"type": "pass", "step": step, "player": player.value}
            else:
                rec = {
                    "type": "move", "step": step, "player": player.value,
                    "track": mv.track, "node": mv.node,
                    "num": str(mv.value.numerator),
                    "den": str(mv.value.denominator),
                }
            fp.write(json.dumps(rec, sort_keys=True) + "\n")
            if step in verdicts:
                verdict, witness = verdicts[step]
                rec = {"type": "verdict", "step": step,
                       "verdict": verdict.value, "witness": witness}
                fp.write(json.dumps(rec, sort_keys=True) + "\n")
        if self.fault:
            rec = {"type": "fault", "step": self.fault.step,
                   "player": self.fault.player.value,
                   "reason": self.fault.reason}
            fp.write(json.dumps(rec, sort_keys=True) + "\n")


def _parse_constraint_list(texts: list[str]) -> tuple[OnlineConstraint, ...]:
    return tuple(OnlineConstraint.parse(t) for t in texts)


def transcript_from_jsonl(fp: TextIO) -> GameTranscript:
    header = json.loads(fp.readline())
    if header.get("type") != "config":
        raise ValueError("transcript must start with a config record")
    config = GameConfig(
        depth=int(header["depth"]),
        alice_budget=Fraction(int(header["budget"][0]), int(header["budget"][1])),
        constraints=_parse_constraint_list(header["constraints"]),
        max_steps=int(header["max_steps"]),
        block_size=int(header.get("block_size", 2)),
    )
    transcript = GameTranscript(config)
    for line in fp:
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        kind = rec["type"]
        if kind == "pass":
            transcript.moves.append((int(rec["step"]), Player(rec["player"]), None))
        elif kind == "move":
            mv = Move(int(rec["track"]), check_node(rec["node"]),
                      Fraction(int(rec["num"]), int(rec["den"])))
            transcript.moves.append((int(rec["step"]), Player(rec["player"]), mv))
        elif kind == "verdict":
            transcript.verdicts.append(
                (int(rec["step"]), Verdict(rec["verdict"]), rec.get("witness")))
        elif kind == "fault":
            transcript.fault = Fault(Player(rec["player"]), int(rec["step"]),
                                     rec["reason"])
        else:
            raise ValueError(f"unknown transcript record type {kind!r}")
    return transcript


# ---------------------------------------------------------------------------
# Referee
# ---------------------------------------------------------------------------

class IllegalMove(Exception):
    pass


def _apply(state: GameState, player: Player, mv: Move) -> None:
    """Apply a move, raising IllegalMove if the referee rejects it."""
    if player is Player.ALICE:
        leaf = mv.node
        if len(leaf) != state.config.leaf_length:
            raise IllegalMove(
                f"alice may only set {state.config.leaf_length}-bit leaves, "
                f"got {leaf!r}")
        if mv.value <= state.alice_value(leaf):
            raise IllegalMove(f"value at {leaf!r} must increase")
        new_total = state.alice_total() - state.alice_value(leaf) + mv.value
        if new_total > state.config.alice_budget:
            raise IllegalMove(
                f"leaf sum {new_total} would exceed the budget "
                f"{state.config.alice_budget}")
        state.alice[leaf] = mv.value
    else:
        if not 0 <= mv.track < len(state.bob):
            raise IllegalMove(f"no such track {mv.track}")
        assignment = state.bob[mv.track]
        probe = assignment.copy()
        try:
            probe.raise_value(mv.node, mv.value)
        except ValueError as exc:
            raise IllegalMove(str(exc)) from exc
        bad = validate(probe)
        if bad:
            raise IllegalMove("; ".join(str(v) for v in bad))
        assignment.entries[mv.node] = mv.value


def evaluate_win(state: GameState) -> tuple[Verdict, str | None]:
    """Alice is winning iff some leaf's mass matches or beats Bob's product
    there; the witness is the lexicographically first such leaf."""
    for leaf in state.config.leaves():
        if state.alice_value(leaf) >= state.bob_product(leaf):
            return Verdict.ALICE_WINNING, leaf
    return Verdict.BOB_WINNING, None


def run_game(
    alice: Strategy, bob: Strategy, config: GameConfig
) -> GameTranscript:
    """Alternate turns (Alice first) for at most max_steps steps.

    Illegal moves terminate the transcript with a fault attributed to the
    offending player; the faulting move is not applied.
    """
    state = GameState(config)
    transcript = GameTranscript(config)
    for step in range(1, config.max_steps + 1):
        player = Player.ALICE if step % 2 else Player.BOB
        strategy = alice if player is Player.ALICE else bob
        mv = strategy.move(state, player)
        transcript.moves.append((step, player, mv))
        if mv is not None:
            try:
                _apply(state, player, mv)
            except IllegalMove as exc:
                transcript.fault = Fault(player, step, str(exc))
                break
        verdict, witness = evaluate_win(state)
        transcript.verdicts.append((step, verdict, witness))
    return transcript


def replay_verdicts(transcript: GameTranscript) -> list[tuple[int, Verdict, str | None]]:
    """Recompute the verdict sequence from the recorded moves alone."""
    out = []
    for step, state in transcript.states():
        if transcript.fault and step >= transcript.fault.step:
            break
        verdict, witness = evaluate_win(state)
        out.append((step, verdict, witness))
    return out


# ---------------------------------------------------------------------------
# Threshold events
# ---------------------------------------------------------------------------

def detect_events(
    transcript: GameTranscript,
    bounds: dict[str, tuple[Fraction, Fraction]],
    odd_track: int = 0,
    even_track: int = 1,
) -> list[ThresholdEvent]:
    """Paired first-crossing events per watched node.

    For node x with bounds (ob, eb): the odd condition is
    bob[odd](x0) > ob, the even condition bob[even](x00) > eb.  An O event
    fires at the first step where the odd condition holds unless the even
    condition held at some strictly earlier step; an E event fires at the
    first step where the even condition holds with the odd condition still
    false at that same step.  The two never fire together at one node.
    """
    first_odd: dict[str, int] = {}
    first_even: dict[str, int] = {}
    for step, state in transcript.states():
        for node, (ob, eb) in bounds.items():
            if node not in first_odd and state.bob_value(odd_track, node + "0") > ob:
                first_odd[node] = step
            if node not in first_even and state.bob_value(even_track, node + "00") > eb:
                first_even[node] = step
    events: list[ThresholdEvent] = []
    for node in bounds:
        so = first_odd.get(node)
        se = first_even.get(node)
        if so is not None and (se is None or so <= se):
            events.append(ThresholdEvent("O", node, so))
        elif se is not None and (so is None or se < so):
            events.append(ThresholdEvent("E", node, se))
    events.sort(key=lambda ev: (ev.step, ev.node))
    return events
