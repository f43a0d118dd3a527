"""Mass, belief, and plausibility functions with exact rational arithmetic.

All weights are `fractions.Fraction` values: always reduced, positive
denominator, no rounding anywhere.  Exactness is the point — every identity
the engine verifies is an equality of rationals, not a tolerance check.
Decimal rendering happens only at output boundaries.

Semantics of the two set functions, as this engine uses them: Pl(A) is the
probability that a measurement of A succeeds (the object responds somewhere
inside A), while Bel(A) is the probability that measurement excludes
everything outside A.  It is Pl, not Bel, that plays the role of "the
probability of A"; Bel(A) speaks about the complement's failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from .errors import (
    FrameMismatchError,
    MassValidationError,
    NotABeliefFunctionError,
    TableTooLargeError,
    TotalConflictError,
)
from .frames import Frame, FrameSubset

__all__ = [
    "Rational",
    "DENSE_TABLE_LIMIT",
    "MassFunction",
    "BeliefTable",
    "make_mass",
    "categorical_mass",
    "vacuous_mass",
    "belief",
    "plausibility",
    "belief_table",
    "mass_from_belief",
    "dempster_combine",
]

# Exact rational weight type used throughout the engine.
Rational = Fraction

# Dense 2^n tables are gated here; beyond it callers fall back to per-query
# subset sums.
DENSE_TABLE_LIMIT = 20

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class MassFunction:
    """Sparse map from nonempty focal subsets to positive rational weights.

    Invariants (enforced by `make_mass`): every stored weight is > 0, the
    empty set is never a key, and the weights sum to exactly 1.
    """

    frame: Frame
    focal: Mapping[FrameSubset, Fraction]

    def weight(self, a: FrameSubset) -> Fraction:
        """Mass of one subset (zero for non-focal subsets)."""
        if a.frame != self.frame:
            raise FrameMismatchError("subset belongs to a different frame")
        return self.focal.get(a, ZERO)

    def focal_sets(self) -> tuple[FrameSubset, ...]:
        """Focal subsets in ascending bit-pattern order."""
        return tuple(sorted(self.focal, key=lambda s: s.mask))

    def items_canonical(self) -> tuple[tuple[FrameSubset, Fraction], ...]:
        return tuple((s, self.focal[s]) for s in self.focal_sets())

    def __repr__(self) -> str:
        inner = ", ".join(f"{s!r}: {w}" for s, w in self.items_canonical())
        return f"MassFunction({inner})"


def _as_exact(value: object) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise MassValidationError(
        f"weights must be exact rationals (Fraction or int), got {type(value).__name__}"
    )


def make_mass(frame: Frame, entries: Mapping[FrameSubset, object]) -> MassFunction:
    """Validate and build a mass function; rejects rather than renormalizes.

    Raises `MassValidationError` naming the violated condition: a weight on
    the empty set, a weight <= 0, or weights that do not sum to exactly 1.
    """
    focal: dict[FrameSubset, Fraction] = {}
    total = ZERO
    for subset, raw in entries.items():
        if subset.frame != frame:
            raise FrameMismatchError("focal subset belongs to a different frame")
        weight = _as_exact(raw)
        if subset.mask == 0:
            raise MassValidationError("mass on empty set")
        if weight <= 0:
            raise MassValidationError(f"weight {weight} on {subset!r} is not positive")
        focal[subset] = weight
        total += weight
    if total != 1:
        raise MassValidationError(f"weights must sum to 1, got {total}")
    return MassFunction(frame, MappingProxyType(focal))


def categorical_mass(frame: Frame, label: FrameSubset) -> MassFunction:
    """All mass on one nonempty subset."""
    if label.frame != frame:
        raise FrameMismatchError("label belongs to a different frame")
    if label.mask == 0:
        raise MassValidationError("categorical mass on empty set")
    return make_mass(frame, {label: ONE})


def vacuous_mass(frame: Frame) -> MassFunction:
    """All mass on the whole frame; the identity of Dempster combination."""
    return categorical_mass(frame, frame.full())


def belief(m: MassFunction, a: FrameSubset) -> Fraction:
    """Bel(A): exact sum of focal weights over subsets of A."""
    if a.frame != m.frame:
        raise FrameMismatchError("subset belongs to a different frame")
    amask = a.mask
    total = ZERO
    for s, w in m.focal.items():
        if s.mask & amask == s.mask:
            total += w
    return total


def plausibility(m: MassFunction, a: FrameSubset) -> Fraction:
    """Pl(A) = 1 - Bel(complement of A).

    Computed both as the duality and as the direct sum over focal sets
    meeting A; the two must agree exactly.
    """
    if a.frame != m.frame:
        raise FrameMismatchError("subset belongs to a different frame")
    amask = a.mask
    direct = ZERO
    for s, w in m.focal.items():
        if s.mask & amask:
            direct += w
    dual = ONE - belief(m, a.complement())
    assert direct == dual, f"plausibility routes disagree: {direct} != {dual}"
    return dual


@dataclass(frozen=True)
class BeliefTable:
    """Dense table of Bel over every subset of the frame, indexed by mask."""

    frame: Frame
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.values) != 1 << self.frame.size:
            raise NotABeliefFunctionError(
                f"table has {len(self.values)} entries, expected {1 << self.frame.size}"
            )
        if self.values[0] != 0:
            raise NotABeliefFunctionError("not a belief function: Bel(empty set) != 0")
        if self.values[-1] != 1:
            raise NotABeliefFunctionError("not a belief function: Bel(frame) != 1")

    def value(self, a: FrameSubset) -> Fraction:
        if a.frame != self.frame:
            raise FrameMismatchError("subset belongs to a different frame")
        return self.values[a.mask]


def belief_table(m: MassFunction) -> BeliefTable:
    """Bel on all 2^n subsets via the in-place subset-lattice zeta transform.

    O(n * 2^n) rational additions; gated at frames of size
    `DENSE_TABLE_LIMIT` (callers fall back to per-query `belief` beyond it).
    """
    n = m.frame.size
    if n > DENSE_TABLE_LIMIT:
        raise TableTooLargeError(
            f"frame of size {n} exceeds the dense-table gate ({DENSE_TABLE_LIMIT})"
        )
    size = 1 << n
    vec = [ZERO] * size
    for s, w in m.focal.items():
        vec[s.mask] += w
    for b in range(n):
        bit = 1 << b
        for mask in range(size):
            if mask & bit:
                vec[mask] += vec[mask ^ bit]
    return BeliefTable(m.frame, tuple(vec))


def mass_from_belief(t: BeliefTable) -> MassFunction:
    """Invert a belief table back to its mass function (Möbius inversion).

    Exact round trip: mass_from_belief(belief_table(m)) == m.  Raises
    `NotABeliefFunctionError` when inversion yields a negative weight or
    weight on the empty set.
    """
    n = t.frame.size
    size = 1 << n
    vec = list(t.values)
    for b in range(n):
        bit = 1 << b
        for mask in range(size):
            if mask & bit:
                vec[mask] -= vec[mask ^ bit]
    if vec[0] != 0:
        raise NotABeliefFunctionError("not a belief function: inversion puts weight on the empty set")
    entries: dict[FrameSubset, Fraction] = {}
    for mask in range(1, size):
        w = vec[mask]
        if w < 0:
            raise NotABeliefFunctionError(
                f"not a belief function: inversion yields negative weight {w} on mask {mask:#x}"
            )
        if w > 0:
            entries[t.frame.subset_from_mask(mask)] = w
    return make_mass(t.frame, entries)


def dempster_combine(
    m1: MassFunction, m2: MassFunction
) -> tuple[MassFunction, Fraction]:
    """Dempster's rule of combination; returns (combined mass, conflict K).

    result(D) = (1/(1-K)) * sum of m1(C)*m2(G) over C∩G = D != empty;
    K = sum of m1(C)*m2(G) over C∩G = empty.  All arithmetic exact.
    Raises `TotalConflictError` when K = 1.
    """
    if m1.frame != m2.frame:
        raise FrameMismatchError("mass functions are over different frames")
    frame = m1.frame
    acc: dict[int, Fraction] = {}
    conflict = ZERO
    for c, w1 in m1.focal.items():
        cmask = c.mask
        for g, w2 in m2.focal.items():
            d = cmask & g.mask
            w = w1 * w2
            if d == 0:
                conflict += w
            else:
                acc[d] = acc.get(d, ZERO) + w
    if not acc:
        raise TotalConflictError("total conflict: all joint mass falls on the empty set")
    scale = ONE / (ONE - conflict)
    entries = {frame.subset_from_mask(mask): w * scale for mask, w in acc.items()}
    return make_mass(frame, entries), conflict
