"""Random-set population semantics and frequency estimation.

An object's measurement behaviour is captured by its response set R: the
measurement of A succeeds exactly when A meets R.  A labeled object also
carries a label subset; the labeled measurement of A is the plain
measurement of A intersected with the label.  Unlabeled objects are the
special case label = frame (one code path for both).

Estimators turn a population into exact rationals with denominator equal to
the population size, so every downstream identity check is an equality of
rationals.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Mapping

from .errors import (
    EmptyPopulationError,
    FrameMismatchError,
    PopulationError,
    RecordInvariantError,
    TableTooLargeError,
)
from .frames import Frame, FrameSubset, encode_subset
from .masses import MassFunction, make_mass
from .rng import stream_base, uniform_below

__all__ = [
    "PopulationRecord",
    "Population",
    "measure",
    "measure_labeled",
    "effective_response",
    "expr_holds",
    "estimate_mass",
    "estimate_belief_direct",
    "estimate_plausibility_direct",
    "AxiomCheck",
    "AxiomReport",
    "validate_axioms",
    "synthesize_population",
]

AXIOM_TABLE_LIMIT = 12


@dataclass(frozen=True)
class PopulationRecord:
    """One object: identity, singleton-response set R, and label.

    Invariants: the response set is nonempty (measuring the whole frame
    always succeeds), and the response meets the label (a labeled object
    responds to its own label).
    """

    object_id: str
    response: FrameSubset
    label: FrameSubset

    def __post_init__(self) -> None:
        if self.response.frame != self.label.frame:
            raise FrameMismatchError("record response and label are over different frames")
        if self.response.mask == 0:
            raise RecordInvariantError(f"record {self.object_id!r}: response set is empty")
        if self.response.mask & self.label.mask == 0:
            raise RecordInvariantError(
                f"record {self.object_id!r}: response does not meet the label"
            )

    @property
    def frame(self) -> Frame:
        return self.response.frame


@dataclass(frozen=True)
class Population:
    """Ordered, immutable collection of records over one frame.

    May be empty (relabeling can discard everything); estimators reject
    empty populations.
    """

    frame: Frame
    records: tuple[PopulationRecord, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.records, tuple):
            object.__setattr__(self, "records", tuple(self.records))
        seen: set[str] = set()
        for r in self.records:
            if r.frame != self.frame:
                raise PopulationError(
                    f"record {r.object_id!r} is over a different frame than the population"
                )
            if r.object_id in seen:
                raise PopulationError(f"duplicate object id {r.object_id!r}")
            seen.add(r.object_id)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[PopulationRecord]:
        return iter(self.records)


def measure(r: PopulationRecord, a: FrameSubset) -> bool:
    """Measurement of A: true iff A meets the response set."""
    if a.frame != r.frame:
        raise FrameMismatchError("subset belongs to a different frame")
    return r.response.mask & a.mask != 0


def measure_labeled(r: PopulationRecord, a: FrameSubset) -> bool:
    """Labeled measurement of A: the plain measurement of A ∩ label."""
    if a.frame != r.frame:
        raise FrameMismatchError("subset belongs to a different frame")
    return r.response.mask & a.mask & r.label.mask != 0


def effective_response(r: PopulationRecord) -> FrameSubset:
    """The record's random set under labeled measurement: response ∩ label.

    Nonempty by the record invariant.
    """
    return FrameSubset(r.frame, r.response.mask & r.label.mask)


def expr_holds(r: PopulationRecord, a: FrameSubset) -> bool:
    """True iff every singleton of A measures true (labeled) and every
    singleton outside A measures false.

    For each record exactly one subset satisfies this: the effective
    response.  These indicator events partition the population, which is
    what makes the class frequencies a mass function.
    """
    if a.frame != r.frame:
        raise FrameMismatchError("subset belongs to a different frame")
    eff = r.response.mask & r.label.mask
    amask = a.mask
    n = r.frame.size
    for i in range(n):
        bit = 1 << i
        inside = bool(amask & bit)
        responds = bool(eff & bit)
        if inside != responds:
            return False
    return True


def _class_counts(p: Population) -> dict[int, int]:
    counts: dict[int, int] = {}
    for r in p.records:
        eff = r.response.mask & r.label.mask
        counts[eff] = counts.get(eff, 0) + 1
    return counts


def estimate_mass(p: Population) -> MassFunction:
    """Empirical mass: relative frequency of each effective-response class.

    Exact rationals with denominator |p|; validated like any mass function.
    """
    if len(p) == 0:
        raise EmptyPopulationError("cannot estimate from an empty population")
    n = len(p)
    entries = {
        p.frame.subset_from_mask(mask): Fraction(c, n)
        for mask, c in _class_counts(p).items()
    }
    return make_mass(p.frame, entries)


def estimate_belief_direct(p: Population, a: FrameSubset) -> Fraction:
    """Frequency of records whose labeled measurement of the complement fails.

    Counting route for Bel, independent of `estimate_mass`.
    """
    if len(p) == 0:
        raise EmptyPopulationError("cannot estimate from an empty population")
    if a.frame != p.frame:
        raise FrameMismatchError("subset belongs to a different frame")
    comp = a.complement()
    hits = sum(1 for r in p.records if not measure_labeled(r, comp))
    return Fraction(hits, len(p))


def estimate_plausibility_direct(p: Population, a: FrameSubset) -> Fraction:
    """Frequency of records whose labeled measurement of A succeeds."""
    if len(p) == 0:
        raise EmptyPopulationError("cannot estimate from an empty population")
    if a.frame != p.frame:
        raise FrameMismatchError("subset belongs to a different frame")
    hits = sum(1 for r in p.records if measure_labeled(r, a))
    return Fraction(hits, len(p))


# -- external truth-table validation --------------------------------------


@dataclass(frozen=True)
class AxiomCheck:
    """Outcome of one measurement-axiom check over a full truth table."""

    name: str
    ok: bool
    violations: tuple[str, ...]


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def validate_axioms(frame: Frame, table: Mapping[FrameSubset, bool]) -> AxiomReport:
    """Certify a claimed full truth table of one object's measurements.

    Checks: (1) the whole frame measures true; (2) superset consistency
    (true on A implies true on every superset); (3) subset consistency
    (true on A with |A| >= 2 implies true on some proper subset); (4)
    singleton determination (true on A iff true on some singleton of A) —
    the representability condition behind response-set records.

    Violations are report entries, not errors.  The table must cover all
    2^n subsets of a frame with at most 12 elements.
    """
    n = frame.size
    if n > AXIOM_TABLE_LIMIT:
        raise TableTooLargeError(
            f"axiom validation handles frames up to {AXIOM_TABLE_LIMIT} elements, got {n}"
        )
    size = 1 << n
    t = [False] * size
    covered = 0
    for s, v in table.items():
        if s.frame != frame:
            raise FrameMismatchError("table key belongs to a different frame")
        t[s.mask] = bool(v)
        covered += 1
    if covered != size:
        raise PopulationError(
            f"truth table covers {covered} subsets, expected all {size}"
        )

    def enc(mask: int) -> str:
        return encode_subset(frame.subset_from_mask(mask))

    full_ok = t[size - 1]
    full_violations = () if full_ok else (enc(size - 1),)

    superset_viol: list[str] = []
    for mask in range(size):
        if not t[mask]:
            continue
        # adding any one element must preserve truth
        for i in range(n):
            bit = 1 << i
            if not (mask & bit) and not t[mask | bit]:
                superset_viol.append(f"{enc(mask)} true but {enc(mask | bit)} false")
    superset_viol = superset_viol[:16]

    subset_viol: list[str] = []
    for mask in range(size):
        if not t[mask] or mask.bit_count() < 2:
            continue
        found = False
        sub = 0
        while sub != mask:  # every proper submask, ascending, empty set included
            if t[sub]:
                found = True
                break
            sub = (sub - mask) & mask
        if not found:
            subset_viol.append(f"{enc(mask)} true but no proper subset is")
    subset_viol = subset_viol[:16]

    singleton_viol: list[str] = []
    for mask in range(size):
        expect = any(t[1 << i] for i in range(n) if mask & (1 << i))
        if t[mask] != expect:
            singleton_viol.append(
                f"{enc(mask)} is {t[mask]} but its singletons say {expect}"
            )
    singleton_viol = singleton_viol[:16]

    checks = (
        AxiomCheck("full-frame-true", full_ok, full_violations),
        AxiomCheck("superset-consistency", not superset_viol, tuple(superset_viol)),
        AxiomCheck("subset-consistency", not subset_viol, tuple(subset_viol)),
        AxiomCheck("singleton-determination", not singleton_viol, tuple(singleton_viol)),
    )
    return AxiomReport(checks)


# -- synthesis -------------------------------------------------------------


def synthesize_population(
    m: MassFunction,
    size: int,
    mode: str = "exact",
    seed: int = 0,
    id_prefix: str = "obj",
) -> Population:
    """Build an unlabeled population whose classes realize a mass function.

    exact mode: class counts are the largest-remainder apportionment of
    size * m(A), ties broken by ascending bit-pattern order; when every
    size * m(A) is an integer the estimate round-trips to `m` exactly.
    sampled mode: each record's response is drawn independently from `m`
    using the counter-based stream keyed by (seed, record index).

    Labels are set to the whole frame.
    """
    if size <= 0:
        raise PopulationError("population size must be positive")
    if mode not in ("exact", "sampled"):
        raise PopulationError(f"unknown synthesis mode {mode!r}")
    frame = m.frame
    full = frame.full()
    width = max(6, len(str(size - 1)))
    records: list[PopulationRecord] = []

    if mode == "exact":
        items = m.items_canonical()
        shares = [(s, size * w) for s, w in items]
        counts = {s: int(share) for s, share in shares}  # floor; share >= 0
        leftover = size - sum(counts.values())
        # largest remainder first; ties by ascending bit pattern (items order)
        order = sorted(
            range(len(shares)),
            key=lambda i: (-(shares[i][1] - counts[shares[i][0]]), shares[i][0].mask),
        )
        for i in order[:leftover]:
            counts[shares[i][0]] += 1
        idx = 0
        for s, _ in items:
            for _ in range(counts[s]):
                records.append(
                    PopulationRecord(f"{id_prefix}-{idx:0{width}d}", s, full)
                )
                idx += 1
    else:
        focal = m.items_canonical()
        denom = 1
        for _, w in focal:
            denom = denom * w.denominator // gcd(denom, w.denominator)
        cumulative: list[int] = []
        acc = 0
        for _, w in focal:
            acc += int(w * denom)
            cumulative.append(acc)
        sets = [s for s, _ in focal]
        for i in range(size):
            base = stream_base(seed, i)
            u, _ = uniform_below(denom, base)
            j = bisect_right(cumulative, u)
            records.append(
                PopulationRecord(f"{id_prefix}-{i:0{width}d}", sets[j], full)
            )
    return Population(frame, tuple(records))
