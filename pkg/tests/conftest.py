"""Shared test helpers: independent oracles and hypothesis strategies.

The oracles here recompute belief/plausibility by definition-level
enumeration (name sets, no bitmasks) so they stay independent of the
transform paths they check.
"""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from beliefkit import (
    Frame,
    FrameSubset,
    MassFunction,
    Population,
    PopulationRecord,
    make_frame,
    make_mass,
    subset_from_names,
)

# -- independent oracles -----------------------------------------------------


def naive_belief(m: MassFunction, a: FrameSubset) -> Fraction:
    """Subset-sum by name-set comparison; independent of the bitmask path."""
    target = set(a.names())
    total = Fraction(0)
    for s, w in m.focal.items():
        if set(s.names()) <= target:
            total += w
    return total


def naive_plausibility(m: MassFunction, a: FrameSubset) -> Fraction:
    target = set(a.names())
    total = Fraction(0)
    for s, w in m.focal.items():
        if set(s.names()) & target:
            total += w
    return total


def conditioning_oracle(m: MassFunction, label: FrameSubset):
    """Combination with a categorical mass, done directly: drop focal sets
    disjoint from the label, intersect the rest, merge, renormalize.
    Returns (mass or None, conflict)."""
    frame = m.frame
    merged: dict[FrameSubset, Fraction] = {}
    conflict = Fraction(0)
    for s, w in m.focal.items():
        inter = s.intersect(label)
        if inter.is_empty():
            conflict += w
        else:
            merged[inter] = merged.get(inter, Fraction(0)) + w
    if not merged:
        return None, conflict
    scale = 1 / (1 - conflict)
    return make_mass(frame, {s: w * scale for s, w in merged.items()}), conflict


# -- deterministic random generators (plain random.Random) -------------------


def random_mass(rng: random.Random, frame: Frame, max_focal: int = 6) -> MassFunction:
    """Random valid mass: distinct nonempty focal sets, integer-weight shares."""
    n = frame.size
    k = rng.randint(1, min(max_focal, (1 << n) - 1))
    masks = rng.sample(range(1, 1 << n), k)
    weights = [rng.randint(1, 20) for _ in range(k)]
    total = sum(weights)
    return make_mass(
        frame,
        {frame.subset_from_mask(m): Fraction(w, total) for m, w in zip(masks, weights)},
    )


def random_record(rng: random.Random, frame: Frame, ident: str) -> PopulationRecord:
    """Random valid record; unlabeled (full-frame label) about a third of the time."""
    n = frame.size
    response = frame.subset_from_mask(rng.randint(1, (1 << n) - 1))
    if rng.random() < 0.35:
        label = frame.full()
    else:
        anchor = rng.choice([1 << i for i in range(n) if response.mask >> i & 1])
        label = frame.subset_from_mask(anchor | rng.randint(0, (1 << n) - 1))
    return PopulationRecord(ident, response, label)


def random_population(
    rng: random.Random, frame: Frame, max_size: int = 500, min_size: int = 1
) -> Population:
    size = rng.randint(min_size, max_size)
    return Population(
        frame,
        tuple(random_record(rng, frame, f"r{i:04d}") for i in range(size)),
    )


def letters_frame(n: int) -> Frame:
    return make_frame([f"e{i}" for i in range(n)])


# -- hypothesis strategies ----------------------------------------------------


@st.composite
def frames(draw, min_size: int = 1, max_size: int = 6) -> Frame:
    n = draw(st.integers(min_size, max_size))
    return letters_frame(n)


@st.composite
def frame_subsets(draw, frame: Frame) -> FrameSubset:
    mask = draw(st.integers(0, (1 << frame.size) - 1))
    return frame.subset_from_mask(mask)


@st.composite
def masses(draw, min_frame: int = 1, max_frame: int = 5) -> MassFunction:
    frame = draw(frames(min_frame, max_frame))
    n = frame.size
    k = draw(st.integers(1, min(6, (1 << n) - 1)))
    available = list(range(1, 1 << n))
    chosen = draw(
        st.lists(st.sampled_from(available), min_size=k, max_size=k, unique=True)
    )
    weights = draw(st.lists(st.integers(1, 12), min_size=k, max_size=k))
    total = sum(weights)
    return make_mass(
        frame,
        {
            frame.subset_from_mask(m): Fraction(w, total)
            for m, w in zip(chosen, weights)
        },
    )


@st.composite
def populations(draw, min_frame: int = 2, max_frame: int = 5, max_size: int = 40) -> Population:
    frame = draw(frames(min_frame, max_frame))
    n = frame.size
    size = draw(st.integers(1, max_size))
    records = []
    for i in range(size):
        response_mask = draw(st.integers(1, (1 << n) - 1))
        response = frame.subset_from_mask(response_mask)
        anchor_bit = draw(
            st.sampled_from([1 << b for b in range(n) if response_mask >> b & 1])
        )
        extra = draw(st.integers(0, (1 << n) - 1))
        label = frame.subset_from_mask(anchor_bit | extra)
        records.append(PopulationRecord(f"r{i:04d}", response, label))
    return Population(frame, tuple(records))


def coot_mass_entries(frame: Frame):
    """The 16 published focal fractions keyed by subset."""
    from beliefkit import COOT_DENOMINATOR, COOT_TABLE

    return {
        subset_from_names(frame, names): Fraction(count, COOT_DENOMINATOR)
        for names, count, _ in COOT_TABLE
    }
