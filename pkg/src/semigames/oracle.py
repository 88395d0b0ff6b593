"""Brute-force ground truth for the small discretized games.

The two-block game is discretized onto multiples of 1/N: Alice owns four
leaf masses (sum at most her budget), the opponent owns six values p,q
(first tree) and r,s,u,v (second tree) with p+q, r+s, u+v each at most 1.
Turns strictly alternate for round_limit rounds (Alice first, one
coordinate raise or a pass per turn); afterwards the opponent may finish
with a bounded number of extra raises, which models his last-mover freedom
in the limit.  Alice wins iff even the best completion leaves some leaf
with product at most her mass there (ties go to Alice).

Everything is solved exactly over integers; the winner is a statement about
the discretized game only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

AliceState = tuple[int, int, int, int]          # units on leaves 00,01,10,11
BobState = tuple[int, int, int, int, int, int]  # p,q,r,s,u,v in units

LEAF_ORDER = ("00", "01", "10", "11")


class StateSpaceError(Exception):
    def __init__(self, size: int, bound: int):
        self.size = size
        self.bound = bound
        super().__init__(
            f"state space of {size} positions exceeds the configured bound "
            f"of {bound}")


@dataclass(frozen=True)
class DiscreteGameSpec:
    """Grid, budget and schedule for one solved game."""

    grid_denominator: int
    alice_budget: Fraction
    round_limit: int
    completion_raises: int | None = None  # defaults to round_limit
    max_state_space: int = 10 ** 11

    def __post_init__(self) -> None:
        if self.grid_denominator < 1:
            raise ValueError("grid denominator must be >= 1")
        if self.round_limit < 1:
            raise ValueError("round_limit must be >= 1")
        if not 0 <= self.alice_budget <= 1:
            raise ValueError("alice budget must lie in [0, 1]")

    @property
    def extras(self) -> int:
        return self.round_limit if self.completion_raises is None \
            else self.completion_raises

    @property
    def budget_units(self) -> int:
        scaled = self.alice_budget * self.grid_denominator
        # budgets off the grid round down: Alice can only play grid values
        return scaled.numerator // scaled.denominator

    def state_space_size(self) -> int:
        return (self.grid_denominator + 1) ** 10 * self.round_limit

    def check_size(self) -> None:
        size = self.state_space_size()
        if size > self.max_state_space:
            raise StateSpaceError(size, self.max_state_space)


def _leaf_slacks(alice: AliceState, bob: BobState, n: int) -> list[int]:
    """product - mass per leaf, in units of 1/N^2 (positive means beaten)."""
    a, b, c, d = alice
    p, q, r, s, u, v = bob
    return [p * r - a * n, p * s - b * n, q * u - c * n, q * v - d * n]


def bob_completion_beats(
    alice: AliceState, bob: BobState, n: int, extras: int
) -> bool:
    """Can the opponent, raising at most `extras` coordinates once each to a
    final value, make every leaf product strictly exceed Alice's mass?"""
    a, b, c, d = alice
    p0, q0, r0, s0, u0, v0 = bob

    def side_cost(x: int, lo1: int, need1: int, lo2: int, need2: int) -> int | None:
        """Raises needed on one even pair (r,s) or (u,v) for branch value x."""
        if x == 0:
            return None
        f1 = max(lo1, need1 // x + 1)
        f2 = max(lo2, need2 // x + 1)
        if f1 + f2 > n:
            return None
        return (f1 > lo1) + (f2 > lo2)

    for p in range(p0, n + 1):
        for q in range(q0, n + 1 - p):
            cost = (p > p0) + (q > q0)
            if cost > extras:
                continue
            rs = side_cost(p, r0, a * n, s0, b * n)
            if rs is None:
                continue
            uv = side_cost(q, u0, c * n, v0, d * n)
            if uv is None:
                continue
            if cost + rs + uv <= extras:
                return True
    return False


# Symmetries: swap the two branches (with leaf pairs), or swap the leaves
# inside either branch.  The winner is invariant, which shrinks the
# transposition table roughly eightfold.

def _orbit(alice: AliceState, bob: BobState) -> Iterator[tuple[AliceState, BobState]]:
    a, b, c, d = alice
    p, q, r, s, u, v = bob
    for swap_branch in (False, True):
        if swap_branch:
            a2, b2, c2, d2, p2, q2, r2, s2, u2, v2 = c, d, a, b, q, p, u, v, r, s
        else:
            a2, b2, c2, d2, p2, q2, r2, s2, u2, v2 = a, b, c, d, p, q, r, s, u, v
        for swap_left in (False, True):
            aa, bb, rr, ss = (b2, a2, s2, r2) if swap_left else (a2, b2, r2, s2)
            for swap_right in (False, True):
                cc, dd, uu, vv = (d2, c2, v2, u2) if swap_right else (c2, d2, u2, v2)
                yield (aa, bb, cc, dd), (p2, q2, rr, ss, uu, vv)


def _canonical(alice: AliceState, bob: BobState) -> tuple[AliceState, BobState]:
    return min(_orbit(alice, bob))


@dataclass
class SolveResult:
    spec: DiscreteGameSpec
    alice_wins: bool
    first_move: tuple[str, Fraction] | None   # leaf, value (None = pass)
    states_examined: int
    state_space_size: int
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "winner": "alice" if self.alice_wins else "bob",
            "winner_note": "under discretization",
            "grid": f"1/{self.spec.grid_denominator}",
            "budget": str(self.spec.alice_budget),
            "rounds": self.spec.round_limit,
            "completion_raises": self.spec.extras,
            "first_move": None if self.first_move is None else
            {"leaf": self.first_move[0], "value": str(self.first_move[1])},
            "states_examined": self.states_examined,
            "state_space_size": self.state_space_size,
            "witness": self.witness,
        }


class GameSolver:
    """Memoized win/loss search with symmetry-reduced transpositions."""

    def __init__(self, spec: DiscreteGameSpec):
        spec.check_size()
        self.spec = spec
        self.n = spec.grid_denominator
        self.budget = spec.budget_units
        self.plies = 2 * spec.round_limit
        self.memo: dict = {}
        self.best_move: dict = {}

    def alice_moves(self, alice: AliceState) -> Iterator[tuple[int, int]]:
        total = sum(alice)
        room = self.budget - total
        for i in range(4):
            for value in range(alice[i] + 1, alice[i] + room + 1):
                yield i, value

    def bob_moves(self, bob: BobState) -> Iterator[tuple[int, int]]:
        p, q, r, s, u, v = bob
        caps = (self.n - q, self.n - p, self.n - s, self.n - r,
                self.n - v, self.n - u)
        for i in range(6):
            for value in range(bob[i] + 1, caps[i] + 1):
                yield i, value

    def alice_wins(self, alice: AliceState, bob: BobState, ply: int) -> bool:
        if ply >= self.plies:
            return not bob_completion_beats(alice, bob, self.n, self.spec.extras)
        # work in the canonical frame so stored moves have a fixed meaning
        alice, bob = _canonical(alice, bob)
        key = (alice, bob, ply)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        if ply % 2 == 0:  # Alice to move: she needs one good continuation
            result = False
            chosen = None
            for i, value in self.alice_moves(alice):
                child = alice[:i] + (value,) + alice[i + 1:]
                if self.alice_wins(child, bob, ply + 1):
                    result = True
                    chosen = (i, value)  # in the canonical frame
                    break
            if not result and self.alice_wins(alice, bob, ply + 1):
                result = True
                chosen = None
            if result and chosen is not None:
                self.best_move[key] = chosen
        else:  # opponent to move: every continuation must stay winning
            result = self.alice_wins(alice, bob, ply + 1)  # his pass
            if result:
                for i, value in self.bob_moves(bob):
                    child = bob[:i] + (value,) + bob[i + 1:]
                    if not self.alice_wins(alice, child, ply + 1):
                        result = False
                        break
        self.memo[key] = result
        return result

    def winning_move(self, alice: AliceState, bob: BobState, ply: int):
        """Winning move for an Alice position, pulled back from the
        canonical frame into the caller's frame (None when she passes)."""
        if not self.alice_wins(alice, bob, ply):
            return None
        canon = _canonical(alice, bob)
        mv = self.best_move.get((*canon, ply))
        if mv is None:
            return None
        idx = _canonical_map(alice, bob)
        leaf_in_canon, value = mv
        return _LEAF_PERMS[idx][leaf_in_canon], value


def _canonical_map(alice: AliceState, bob: BobState):
    """Transform taking the position to its canonical form, as leaf/coord
    permutations, so stored moves can be pulled back to the original frame."""
    best = None
    for idx, (a2, b2) in enumerate(_orbit(alice, bob)):
        if best is None or (a2, b2) < best[0]:
            best = ((a2, b2), idx)
    return best[1]


_LEAF_PERMS: dict[int, tuple[int, ...]] = {}
_COORD_PERMS: dict[int, tuple[int, ...]] = {}


def _build_perm_tables() -> None:
    idx = 0
    base_leaves = (0, 1, 2, 3)
    base_coords = (0, 1, 2, 3, 4, 5)
    for swap_branch in (False, True):
        leaves = (2, 3, 0, 1) if swap_branch else base_leaves
        coords = (1, 0, 4, 5, 2, 3) if swap_branch else base_coords
        for swap_left in (False, True):
            l2 = (leaves[1], leaves[0], leaves[2], leaves[3]) if swap_left else leaves
            c2 = (coords[0], coords[1], coords[3], coords[2], coords[4],
                  coords[5]) if swap_left else coords
            for swap_right in (False, True):
                l3 = (l2[0], l2[1], l2[3], l2[2]) if swap_right else l2
                c3 = (c2[0], c2[1], c2[2], c2[3], c2[5], c2[4]) \
                    if swap_right else c2
                _LEAF_PERMS[idx] = l3
                _COORD_PERMS[idx] = c3
                idx += 1


_build_perm_tables()


def solve_game(spec: DiscreteGameSpec) -> SolveResult:
    """Backward-induction winner of the discretized game, with the winning
    first move when Alice wins."""
    solver = GameSolver(spec)
    start_alice: AliceState = (0, 0, 0, 0)
    start_bob: BobState = (0, 0, 0, 0, 0, 0)
    wins = solver.alice_wins(start_alice, start_bob, 0)
    first = None
    witness: dict = {}
    if wins:
        mv = solver.winning_move(start_alice, start_bob, 0)
        if mv is not None:
            leaf_idx, value = mv
            first = (LEAF_ORDER[leaf_idx], Fraction(value, spec.grid_denominator))
        witness = {
            "note": "per-position winning moves are held in the solver table",
            "positions_with_moves": len(solver.best_move),
        }
    return SolveResult(
        spec=spec,
        alice_wins=wins,
        first_move=first,
        states_examined=len(solver.memo),
        state_space_size=spec.state_space_size(),
        witness=witness,
    )


class OracleWitnessStrategy:
    """Replays a solved game's winning moves through the live referee.

    At each of Alice's turns the current position is read off the game state
    (values must sit on the grid) and the solver's stored move is pulled
    back through the canonicalizing symmetry.
    """

    def __init__(self, spec: DiscreteGameSpec):
        self.solver = GameSolver(spec)
        self.n = spec.grid_denominator
        self.ply = 0

    def move(self, state, player):
        from .game import Move  # local import to avoid a cycle

        alice = tuple(
            _to_units(state.alice_value(leaf), self.n) for leaf in LEAF_ORDER)
        bob = (
            _to_units(state.bob_value(0, "0"), self.n),
            _to_units(state.bob_value(0, "1"), self.n),
            _to_units(state.bob_value(1, "00"), self.n),
            _to_units(state.bob_value(1, "01"), self.n),
            _to_units(state.bob_value(1, "10"), self.n),
            _to_units(state.bob_value(1, "11"), self.n),
        )
        ply = self.ply
        self.ply += 2  # we only see our own turns
        if ply >= self.solver.plies:
            return None
        mv = self.solver.winning_move(alice, bob, ply)
        if mv is None:
            return None
        leaf_idx, value = mv
        return Move(0, LEAF_ORDER[leaf_idx], Fraction(value, self.n))


def _to_units(value: Fraction, n: int) -> int:
    scaled = value * n
    if scaled.denominator != 1:
        raise ValueError(f"value {value} is not a multiple of 1/{n}")
    return scaled.numerator


# ---------------------------------------------------------------------------
# Best response against a fixed reactive strategy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AliceBranch:
    """One event-order branch of a reactive strategy: her final leaves plus
    the constraints the branch's event history puts on the opponent's final
    values (split per independently-chosen block)."""

    name: str
    leaves: dict[str, Fraction]
    pq_ok: Callable[[int, int, int], bool] = lambda p, q, n: True
    rs_ok: Callable[[int, int, int, int, int], bool] = \
        lambda p, q, r, s, n: True
    uv_ok: Callable[[int, int, int, int, int], bool] = \
        lambda p, q, u, v, n: True


@dataclass
class BranchOutcome:
    name: str
    best_slack: Fraction | None   # None when no opponent final fits the branch
    best_state: BobState | None
    beats: bool


@dataclass
class BestResponseReport:
    branches: list[BranchOutcome]
    beats_strategy: bool
    worst_branch: str

    def to_json(self) -> dict:
        return {
            "beats_strategy": self.beats_strategy,
            "worst_branch_for_alice": self.worst_branch,
            "branches": [
                {
                    "name": b.name,
                    "best_min_slack": None if b.best_slack is None
                    else str(b.best_slack),
                    "best_state": b.best_state,
                    "beats": b.beats,
                }
                for b in self.branches
            ],
        }


def _best_pair(
    x: int, leaf_masses: tuple[Fraction, Fraction],
    n: int, ok: Callable[[int, int], bool]
) -> tuple[Fraction | None, tuple[int, int] | None]:
    """Maximize min(x*y1/n^2 - m1, x*y2/n^2 - m2) over y1+y2 <= n."""
    best: Fraction | None = None
    best_pair = None
    m1, m2 = leaf_masses
    # scale by n^2 so the inner loop compares ints whenever masses align
    m1s = m1 * n * n
    m2s = m2 * n * n
    m1s = m1s.numerator if m1s.denominator == 1 else m1s
    m2s = m2s.numerator if m2s.denominator == 1 else m2s
    for y1 in range(0, n + 1):
        for y2 in range(0, n - y1 + 1):
            if not ok(y1, y2):
                continue
            slack = min(x * y1 - m1s, x * y2 - m2s)
            if best is None or slack > best:
                best, best_pair = slack, (y1, y2)
    if best is None:
        return None, None
    return Fraction(best, n * n) if not isinstance(best, Fraction) \
        else best / (n * n), best_pair


def best_response(
    branches: Sequence[AliceBranch], grid_denominator: int
) -> BestResponseReport:
    """Exhaustively maximize the opponent's min-over-leaves slack per branch.

    Positive best slack in some branch means the fixed strategy is beaten
    there; the worst branch for Alice is the one with the largest best
    slack."""
    n = grid_denominator
    outcomes: list[BranchOutcome] = []
    for branch in branches:
        masses = [branch.leaves.get(leaf, Fraction(0)) for leaf in LEAF_ORDER]
        best: Fraction | None = None
        best_state: BobState | None = None
        for p in range(0, n + 1):
            for q in range(0, n + 1 - p):
                if not branch.pq_ok(p, q, n):
                    continue
                rs_best, rs_pair = _best_pair(
                    p, (masses[0], masses[1]), n,
                    lambda r, s: branch.rs_ok(p, q, r, s, n))
                if rs_best is None:
                    continue
                uv_best, uv_pair = _best_pair(
                    q, (masses[2], masses[3]), n,
                    lambda u, v: branch.uv_ok(p, q, u, v, n))
                if uv_best is None:
                    continue
                slack = min(rs_best, uv_best)
                if best is None or slack > best:
                    best = slack
                    best_state = (p, q, *rs_pair, *uv_pair)
        outcomes.append(BranchOutcome(
            branch.name, best, best_state,
            best is not None and best > 0))
    worst = max(
        (o for o in outcomes if o.best_slack is not None),
        key=lambda o: o.best_slack,
        default=outcomes[0],
    )
    return BestResponseReport(
        branches=outcomes,
        beats_strategy=any(o.beats for o in outcomes),
        worst_branch=worst.name,
    )


def alice_34_branches() -> list[AliceBranch]:
    """Event-order envelopes of the budget-3/4 strategy.

    The crossing conditions are monotone, so a branch constrains the final
    values directly: no event means neither value ever crossed 1/2."""
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)

    def no_event_pq(p: int, q: int, n: int) -> bool:
        return 2 * p <= n

    def no_event_rs(p: int, q: int, r: int, s: int, n: int) -> bool:
        return 2 * r <= n

    def odd_crossed(p: int, q: int, n: int) -> bool:
        return 2 * p > n

    def even_crossed(p: int, q: int, r: int, s: int, n: int) -> bool:
        return 2 * r > n

    return [
        AliceBranch("no-event", {"00": quarter},
                    pq_ok=no_event_pq, rs_ok=no_event_rs),
        AliceBranch("odd-crossed", {"00": quarter, "11": half},
                    pq_ok=odd_crossed),
        AliceBranch("even-crossed", {"00": quarter, "01": half},
                    rs_ok=even_crossed),
    ]


def alice_23_branches() -> list[AliceBranch]:
    """Event-order envelopes of the budget-2/3 strategy.

    The trigger needs both opened leaves strictly beaten; a schedule
    realizing a snapshot below the final values exists exactly when the
    final values themselves allow it, with the snapshot odd values ordered
    as the branch demands."""
    ninth = Fraction(1, 9)
    four9 = Fraction(4, 9)

    # The no-trigger condition couples (r, u); since the products are
    # monotone it is equivalent to "00 never beaten or 10 never beaten" at
    # the final state, encoded as two sub-branches.
    def safe_00(p: int, q: int, r: int, s: int, n: int) -> bool:
        return 9 * p * r <= n * n

    def safe_10(p: int, q: int, u: int, v: int, n: int) -> bool:
        return 9 * q * u <= n * n

    def ps_ge_q_rs(p: int, q: int, r: int, s: int, n: int) -> bool:
        return 9 * p * r > n * n

    def ps_ge_q_uv(p: int, q: int, u: int, v: int, n: int) -> bool:
        return 9 * min(p, q) * u > n * n

    def q_gt_p_rs(p: int, q: int, r: int, s: int, n: int) -> bool:
        return 9 * min(p, max(q - 1, 0)) * r > n * n

    def q_gt_p_uv(p: int, q: int, u: int, v: int, n: int) -> bool:
        return 9 * q * u > n * n

    return [
        AliceBranch("no-trigger-00-safe", {"00": ninth, "10": ninth},
                    rs_ok=safe_00),
        AliceBranch("no-trigger-10-safe", {"00": ninth, "10": ninth},
                    uv_ok=safe_10),
        AliceBranch("trigger-p-ge-q",
                    {"00": ninth, "10": ninth, "11": four9},
                    rs_ok=ps_ge_q_rs, uv_ok=ps_ge_q_uv),
        AliceBranch("trigger-q-gt-p",
                    {"00": ninth, "10": ninth, "01": four9},
                    rs_ok=q_gt_p_rs, uv_ok=q_gt_p_uv),
    ]


def static_alice_branch(leaves: dict[str, Fraction]) -> list[AliceBranch]:
    """A non-reactive probe: one branch, no constraints on the opponent."""
    return [AliceBranch("static", dict(leaves))]
