"""Deterministic and randomized relabeling of populations.

The simple process takes one nonempty subset L: records whose effective
response misses L are discarded, survivors keep their response and get
label ∩ L.  The general process draws each record's L independently from a
finite menu of labels with rational selection probabilities, then applies
the simple rule.  At the level of estimated masses, relabeling is Dempster
combination with the process's mass function — exactly for the simple
process, in expectation for the general one.

Randomness is a pure function of (seed, record index): label draws use
counter-based streams with exact rejection sampling, so the selection
probabilities are exactly the specified rationals and parallel execution
reproduces sequential output byte for byte.
"""

from __future__ import annotations

from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

from .errors import EmptyPopulationError, FrameMismatchError, LabelingSpecError
from .frames import Frame, FrameSubset
from .masses import MassFunction, make_mass
from .populations import Population, PopulationRecord, estimate_mass
from .rng import stream_base, uniform_below

__all__ = [
    "LabelingProcessSpec",
    "simple_relabel",
    "general_relabel",
    "expected_class_weights",
]


@dataclass(frozen=True)
class LabelingProcessSpec:
    """Ordered menu of candidate labels with selection probabilities.

    The (labels, probs) pairs form a mass function (distinct nonempty
    subsets, positive rational weights summing to 1); this type only adds
    the ordered view needed for deterministic sampling.
    """

    labels: tuple[FrameSubset, ...]
    probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.labels) == 0:
            raise LabelingSpecError("labeling process needs at least one label")
        if len(self.labels) != len(self.probs):
            raise LabelingSpecError("labels and probabilities differ in length")
        frame = self.labels[0].frame
        seen: set[int] = set()
        for lab in self.labels:
            if lab.frame != frame:
                raise FrameMismatchError("labels are over different frames")
            if lab.mask == 0:
                raise LabelingSpecError("labels must be nonempty")
            if lab.mask in seen:
                raise LabelingSpecError(f"duplicate label {lab!r}")
            seen.add(lab.mask)
        total = Fraction(0)
        for p in self.probs:
            if not isinstance(p, Fraction):
                raise LabelingSpecError("selection probabilities must be exact rationals")
            if p <= 0:
                raise LabelingSpecError(f"selection probability {p} is not positive")
            total += p
        if total != 1:
            raise LabelingSpecError(f"selection probabilities must sum to 1, got {total}")

    @property
    def frame(self) -> Frame:
        return self.labels[0].frame

    def as_mass(self) -> MassFunction:
        """The process viewed as a mass function over its label menu."""
        return make_mass(self.frame, dict(zip(self.labels, self.probs)))

    @classmethod
    def from_mass(cls, m: MassFunction) -> LabelingProcessSpec:
        """Ordered view of a mass function, ascending by bit pattern."""
        items = m.items_canonical()
        return cls(tuple(s for s, _ in items), tuple(w for _, w in items))

    @cached_property
    def _selection_table(self) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
        """(common denominator, cumulative integer thresholds, label masks)."""
        denom = lcm(*(p.denominator for p in self.probs))
        cumulative: list[int] = []
        acc = 0
        for p in self.probs:
            acc += int(p * denom)
            cumulative.append(acc)
        return denom, tuple(cumulative), tuple(lab.mask for lab in self.labels)

    def draw_index(self, seed: int, record_index: int) -> int:
        """Index of the label drawn for one record; pure in (seed, index)."""
        denom, cumulative, _ = self._selection_table
        base = stream_base(seed, record_index)
        u, _ = uniform_below(denom, base)
        return bisect_right(cumulative, u)


def simple_relabel(p: Population, label: FrameSubset) -> Population:
    """Apply one fixed label: discard non-responders, intersect labels.

    Survivors keep object id, response, and input order; the result may be
    empty.  Idempotent for a fixed label.
    """
    if label.frame != p.frame:
        raise FrameMismatchError("label belongs to a different frame")
    if label.mask == 0:
        raise LabelingSpecError("relabel requires a nonempty label")
    lmask = label.mask
    survivors = []
    for r in p.records:
        if r.response.mask & r.label.mask & lmask:
            survivors.append(
                PopulationRecord(
                    r.object_id,
                    r.response,
                    FrameSubset(p.frame, r.label.mask & lmask),
                )
            )
    return Population(p.frame, tuple(survivors))


def _relabel_chunk(
    p: Population, spec: LabelingProcessSpec, seed: int, lo: int, hi: int
) -> list[PopulationRecord | None]:
    _, _, label_masks = spec._selection_table
    out: list[PopulationRecord | None] = []
    for i in range(lo, hi):
        r = p.records[i]
        lmask = label_masks[spec.draw_index(seed, i)]
        if r.response.mask & r.label.mask & lmask:
            out.append(
                PopulationRecord(
                    r.object_id, r.response, FrameSubset(p.frame, r.label.mask & lmask)
                )
            )
        else:
            out.append(None)
    return out


def general_relabel(
    p: Population,
    spec: LabelingProcessSpec,
    seed: int,
    workers: int | None = None,
) -> Population:
    """Randomized relabeling: per record, draw a label from the spec's menu
    (independently, via the counter-based stream keyed by seed and record
    index), then apply the simple rule with it.

    Identical (population, spec, seed) triples give identical output, with
    or without workers.
    """
    if spec.frame != p.frame:
        raise FrameMismatchError("labeling spec is over a different frame")
    n = len(p.records)
    if workers is None or workers <= 1 or n == 0:
        picked = _relabel_chunk(p, spec, seed, 0, n)
    else:
        chunk = (n + workers - 1) // workers
        bounds = [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(lambda b: _relabel_chunk(p, spec, seed, b[0], b[1]), bounds)
            )
        picked = [r for part in parts for r in part]
    return Population(p.frame, tuple(r for r in picked if r is not None))


def expected_class_weights(
    p: Population, spec: LabelingProcessSpec
) -> dict[FrameSubset, Fraction]:
    """Expected class frequency of each post-relabel class, in closed form.

    weight(D) = sum over menu labels L and current classes C with C ∩ L = D
    of m̂(C) * prob(L), for every D including the empty set (the expected
    discard share).  Exact rationals; no sampling.
    """
    if spec.frame != p.frame:
        raise FrameMismatchError("labeling spec is over a different frame")
    if len(p) == 0:
        raise EmptyPopulationError("cannot take expectations over an empty population")
    current = estimate_mass(p)
    out: dict[int, Fraction] = {}
    for lab, prob in zip(spec.labels, spec.probs):
        lmask = lab.mask
        for c, w in current.focal.items():
            d = c.mask & lmask
            out[d] = out.get(d, Fraction(0)) + w * prob
    return {p.frame.subset_from_mask(mask): w for mask, w in out.items()}
