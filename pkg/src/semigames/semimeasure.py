"""Exact-arithmetic semimeasure trees over binary strings.

Nodes are plain strings of '0'/'1' characters; the empty string is the root.
A mass assignment maps nodes to nonnegative rationals with the semimeasure
property (children sum to at most the parent).  Online assignments
additionally carry a betting-position constraint: at "sum" depths the usual
children-sum rule applies, at all other depths the value is copied to both
children.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

ZERO = Fraction(0)
ONE = Fraction(1)

RatLike = Fraction | int


def _frac(x: RatLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# Nodes
# ---------------------------------------------------------------------------

def check_node(node: str) -> str:
    if any(c not in "01" for c in node):
        raise ValueError(f"node must consist of '0'/'1' characters: {node!r}")
    return node


def parent(node: str) -> str:
    if not node:
        raise ValueError("the root has no parent")
    return node[:-1]


def children(node: str) -> tuple[str, str]:
    return node + "0", node + "1"


def all_nodes_to_depth(depth: int) -> Iterator[str]:
    """Yield every node of depth 0..depth in breadth-first, lexicographic order."""
    for d in range(depth + 1):
        for i in range(1 << d):
            yield format(i, f"0{d}b") if d else ""


def swap_adjacent_bits(node: str) -> str:
    """Exchange the bits of every aligned 2-bit block (x1 x2 x3 x4 -> x2 x1 x4 x3)."""
    if len(node) % 2:
        raise ValueError("bit swapping is defined for even-length strings")
    out = []
    for i in range(0, len(node), 2):
        out.append(node[i + 1])
        out.append(node[i])
    return "".join(out)


# ---------------------------------------------------------------------------
# Online constraints
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OnlineConstraint:
    """Betting-position descriptor: the sum rule applies at depths d >= 1 with
    d == residue (mod modulus); every other depth copies the parent value.

    residue is kept in 1..modulus so that "even" (betting at even depths) is
    expressed as residue=modulus=2.
    """

    modulus: int = 2
    residue: int = 1

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        if not 1 <= self.residue <= self.modulus:
            raise ValueError("residue must lie in 1..modulus")

    def bets_at(self, depth: int) -> bool:
        """True iff the sum rule applies to nodes of this depth."""
        return depth >= 1 and depth % self.modulus == self.residue % self.modulus

    def shifted(self, offset: int) -> OnlineConstraint:
        """Constraint seen by a conditional assignment whose root sits at
        absolute depth `offset` (depth d in the new tree maps to offset+d)."""
        r = (self.residue - offset - 1) % self.modulus + 1
        return OnlineConstraint(self.modulus, r)

    def describe(self) -> str:
        if self.modulus == 2:
            return "odd" if self.residue == 1 else "even"
        return f"{self.residue} mod {self.modulus}"

    @staticmethod
    def parse(text: str) -> OnlineConstraint:
        if text == "odd":
            return ODD
        if text == "even":
            return EVEN
        res, _, mod = text.partition(":")
        return OnlineConstraint(int(mod), int(res))


ODD = OnlineConstraint(2, 1)
EVEN = OnlineConstraint(2, 2)


def mod_k_constraint(residue: int, modulus: int) -> OnlineConstraint:
    return OnlineConstraint(modulus, residue)


# ---------------------------------------------------------------------------
# Assignments
# ---------------------------------------------------------------------------

@dataclass
class MassAssignment:
    """Partial map from nodes to nonnegative rationals; absent nodes read 0."""

    entries: dict[str, Fraction] = field(default_factory=dict)

    def value(self, node: str) -> Fraction:
        return self.entries.get(node, ZERO)

    def raise_value(self, node: str, value: RatLike) -> None:
        value = _frac(value)
        if value <= self.value(node):
            raise ValueError(
                f"update at {node!r} must increase the value "
                f"({self.value(node)} -> {value})"
            )
        self.entries[check_node(node)] = value

    def copy(self) -> MassAssignment:
        return MassAssignment(dict(self.entries))

    def populated(self) -> list[str]:
        return sorted(self.entries, key=lambda n: (len(n), n))


@dataclass
class OnlineMassAssignment:
    """Mass assignment obeying an online constraint.

    Reads use the copy-rule closure: an absent node at a copy depth takes its
    parent's value, so enumerators only ever touch the root and betting
    depths.
    """

    constraint: OnlineConstraint
    entries: dict[str, Fraction] = field(default_factory=dict)

    def value(self, node: str) -> Fraction:
        while True:
            v = self.entries.get(node)
            if v is not None:
                return v
            if not node or self.constraint.bets_at(len(node)):
                return ZERO
            node = node[:-1]

    def raise_value(self, node: str, value: RatLike) -> None:
        value = _frac(value)
        check_node(node)
        if node and not self.constraint.bets_at(len(node)):
            raise ValueError(
                f"node {node!r} sits at a copy depth for the "
                f"{self.constraint.describe()} constraint; its value follows "
                "the parent"
            )
        if value <= self.value(node):
            raise ValueError(
                f"update at {node!r} must increase the value "
                f"({self.value(node)} -> {value})"
            )
        self.entries[node] = value

    def copy(self) -> OnlineMassAssignment:
        return OnlineMassAssignment(self.constraint, dict(self.entries))

    def populated(self) -> list[str]:
        return sorted(self.entries, key=lambda n: (len(n), n))

    def root_value(self) -> Fraction:
        return self.value("")


Assignment = MassAssignment | OnlineMassAssignment


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    node: str
    rule: str  # "negative" | "root" | "sum" | "copy"
    detail: str

    def __str__(self) -> str:
        return f"[{self.rule}] at {self.node!r}: {self.detail}"


def _relevant_parents(assignment: Assignment) -> set[str]:
    parents: set[str] = set()
    for node in assignment.entries:
        for d in range(len(node)):
            parents.add(node[:d])
    return parents


def validate(assignment: Assignment) -> list[Violation]:
    """Check every invariant on populated nodes and their ancestor chains.

    Violations are data, not failures: an empty list means the assignment is
    a valid (online) semimeasure on everything it populates.
    """
    violations: list[Violation] = []
    for node, v in assignment.entries.items():
        if v < 0:
            violations.append(Violation(node, "negative", f"value {v} < 0"))
    root = assignment.value("")
    if root > 1:
        violations.append(Violation("", "root", f"root value {root} > 1"))

    online = isinstance(assignment, OnlineMassAssignment)
    for node in sorted(_relevant_parents(assignment), key=lambda n: (len(n), n)):
        pv = assignment.value(node)
        c0, c1 = children(node)
        v0, v1 = assignment.value(c0), assignment.value(c1)
        child_depth = len(node) + 1
        if online and not assignment.constraint.bets_at(child_depth):
            for c, v in ((c0, v0), (c1, v1)):
                if v != pv:
                    violations.append(Violation(
                        c, "copy",
                        f"value {v} differs from parent value {pv} at a copy depth"))
        else:
            if v0 + v1 > pv:
                violations.append(Violation(
                    node, "sum",
                    f"children sum {v0 + v1} exceeds parent value {pv}"))
    return violations


# ---------------------------------------------------------------------------
# Minimal online assignment dominating given leaves
# ---------------------------------------------------------------------------

def pad_leaves_to_power_of_two(leaves: Iterable[RatLike]) -> list[Fraction]:
    """Right-pad with zeros up to the next power of two."""
    out = [_frac(x) for x in leaves]
    n = max(1, len(out))
    size = 1 << (n - 1).bit_length()
    out.extend([ZERO] * (size - len(out)))
    return out


def min_online_from_leaves(
    leaves: Iterable[RatLike], constraint: OnlineConstraint
) -> OnlineMassAssignment:
    """Pointwise-least online assignment whose depth-n values dominate `leaves`.

    Folds children with sums at betting depths and maxima at copy depths,
    then pushes copy equality back down.  The root value may exceed 1, in
    which case validate() flags the result as not a valid semimeasure.
    """
    vals = [_frac(x) for x in leaves]
    n = len(vals)
    if n == 0 or n & (n - 1):
        raise ValueError(
            f"leaf count must be a power of two, got {n} "
            "(pad_leaves_to_power_of_two pads with zeros)")
    if any(v < 0 for v in vals):
        raise ValueError("leaf values must be nonnegative")
    depth = (len(vals) - 1).bit_length()

    values: dict[str, Fraction] = {
        format(i, f"0{depth}b") if depth else "": v for i, v in enumerate(vals)
    }
    for d in range(depth - 1, -1, -1):
        for i in range(1 << d):
            node = format(i, f"0{d}b") if d else ""
            c0, c1 = values[node + "0"], values[node + "1"]
            values[node] = c0 + c1 if constraint.bets_at(d + 1) else max(c0, c1)
    # Copy depths must equal the parent exactly; raising a child never breaks
    # the sum rule below it.
    for d in range(1, depth + 1):
        if not constraint.bets_at(d):
            for i in range(1 << d):
                node = format(i, f"0{d}b")
                values[node] = values[node[:-1]]
    return OnlineMassAssignment(constraint, values)


# ---------------------------------------------------------------------------
# Factorization of a computable semimeasure into odd and even online parts
# ---------------------------------------------------------------------------

def factorize_computable(
    p: MassAssignment, depth: int
) -> tuple[OnlineMassAssignment, OnlineMassAssignment]:
    """Split a total assignment on nodes up to `depth` (even) into an odd and
    an even online assignment whose product equals it at every even depth.

    The two-bit extension rule: at an even node x with current factors
    (odd(x), ev(x)) and masses e,f on x0,x1 and a..d on x00..x11, the odd part
    takes e,f scaled by 1/ev(x) and copies them one level down, the even part
    copies ev(x) to x0,x1 and bets a/e, b/e, c/f, d/f below.  Zero masses
    short-circuit: both factors' children are 0 and no division happens.
    """
    if depth % 2 or depth < 0:
        raise ValueError("depth must be a nonnegative even integer")
    for node in all_nodes_to_depth(depth):
        if node not in p.entries:
            raise ValueError(f"assignment is not total up to depth {depth}: "
                             f"missing {node!r}")
    bad = validate(p)
    if bad:
        raise ValueError(f"input is not a valid semimeasure: {bad[0]}")

    odd = OnlineMassAssignment(ODD, {"": p.value("")})
    even = OnlineMassAssignment(EVEN, {"": ONE})

    for d in range(0, depth, 2):
        for i in range(1 << d):
            x = format(i, f"0{d}b") if d else ""
            alpha = even.value(x)
            e, f = p.value(x + "0"), p.value(x + "1")
            # odd part: masses of the 1-bit extensions scaled by 1/even(x),
            # copied one level down.  alpha == 0 forces e == f == 0.
            oe = e / alpha if alpha else ZERO
            of = f / alpha if alpha else ZERO
            odd.entries[x + "0"] = oe
            odd.entries[x + "1"] = of
            odd.entries[x + "00"] = odd.entries[x + "01"] = oe
            odd.entries[x + "10"] = odd.entries[x + "11"] = of
            # even part: copy at the odd depth, bet the leaf ratios below.
            even.entries[x + "0"] = even.entries[x + "1"] = alpha
            for branch, mass in (("0", e), ("1", f)):
                for bit in "01":
                    leaf = x + branch + bit
                    even.entries[leaf] = (
                        alpha * p.value(leaf) / mass if mass else ZERO)
    return odd, even
