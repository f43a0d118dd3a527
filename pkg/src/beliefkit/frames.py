"""Frames of discernment and bitmask subset algebra.

A frame is an ordered sequence of distinct attribute-value names.  A subset
of the frame is represented as a bit pattern: bit i set means element i is a
member.  Frames are capped at 30 elements so a subset always fits one machine
word and dense powerset tables stay feasible where they are requested.

Both types are immutable and hashable; frames compare equal by element
sequence, so a frame reconstructed from a file is combinable with the
original.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import FrameDefinitionError, FrameMismatchError, UnknownElementError

__all__ = [
    "MAX_FRAME_SIZE",
    "EMPTY_SET_TOKEN",
    "Frame",
    "FrameSubset",
    "make_frame",
    "subset_from_names",
    "subsets_of",
    "encode_subset",
    "decode_subset",
]

MAX_FRAME_SIZE = 30

# Canonical text form of the empty subset; also banned as an element name.
EMPTY_SET_TOKEN = "{}"

# Characters that would break the canonical "|"-joined encoding or CSV rows.
_FORBIDDEN_IN_NAMES = ("|", "\n", "\r")


@dataclass(frozen=True)
class Frame:
    """Ordered finite universe of distinct attribute values."""

    elements: tuple[str, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.elements, tuple):
            object.__setattr__(self, "elements", tuple(self.elements))
        if len(self.elements) == 0:
            raise FrameDefinitionError("frame must have at least one element")
        if len(self.elements) > MAX_FRAME_SIZE:
            raise FrameDefinitionError(
                f"frame has {len(self.elements)} elements, over the cap of {MAX_FRAME_SIZE}"
            )
        seen = set()
        for name in self.elements:
            if not isinstance(name, str) or name == "":
                raise FrameDefinitionError("element names must be non-empty strings")
            if name == EMPTY_SET_TOKEN:
                raise FrameDefinitionError(f"element name {name!r} is reserved")
            if any(ch in name for ch in _FORBIDDEN_IN_NAMES):
                raise FrameDefinitionError(
                    f"element name {name!r} contains a forbidden character ('|', CR or LF)"
                )
            if name in seen:
                raise FrameDefinitionError(f"duplicate element name {name!r}")
            seen.add(name)

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.elements)}

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownElementError(f"{name!r} is not an element of the frame") from None

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def subset(self, names: Iterable[str] = ()) -> FrameSubset:
        """Subset with exactly the given member names."""
        mask = 0
        for name in names:
            mask |= 1 << self.index_of(name)
        return FrameSubset(self, mask)

    def singleton(self, name: str) -> FrameSubset:
        return FrameSubset(self, 1 << self.index_of(name))

    def empty(self) -> FrameSubset:
        return FrameSubset(self, 0)

    def full(self) -> FrameSubset:
        return FrameSubset(self, (1 << self.size) - 1)

    def subset_from_mask(self, mask: int) -> FrameSubset:
        return FrameSubset(self, mask)

    def __repr__(self) -> str:
        return f"Frame({list(self.elements)!r})"


@dataclass(frozen=True)
class FrameSubset:
    """A subset of one frame, held as a membership bit pattern."""

    frame: Frame
    mask: int

    def __post_init__(self) -> None:
        if not isinstance(self.mask, int) or isinstance(self.mask, bool):
            raise FrameDefinitionError("subset mask must be an integer")
        if self.mask < 0 or self.mask >= (1 << self.frame.size):
            raise FrameDefinitionError(
                f"subset mask {self.mask:#x} out of range for a frame of size {self.frame.size}"
            )

    # -- queries ---------------------------------------------------------

    def names(self) -> tuple[str, ...]:
        """Member names in frame order."""
        return tuple(
            name for i, name in enumerate(self.frame.elements) if self.mask >> i & 1
        )

    def cardinality(self) -> int:
        return self.mask.bit_count()

    def is_empty(self) -> bool:
        return self.mask == 0

    def is_full(self) -> bool:
        return self.mask == (1 << self.frame.size) - 1

    def contains(self, name: str) -> bool:
        return bool(self.mask >> self.frame.index_of(name) & 1)

    def singletons(self) -> Iterator[FrameSubset]:
        """The one-element subsets of this subset, in frame order."""
        mask = self.mask
        while mask:
            low = mask & -mask
            yield FrameSubset(self.frame, low)
            mask ^= low

    # -- algebra ---------------------------------------------------------

    def intersect(self, other: FrameSubset) -> FrameSubset:
        _require_same_frame(self, other)
        return FrameSubset(self.frame, self.mask & other.mask)

    def union(self, other: FrameSubset) -> FrameSubset:
        _require_same_frame(self, other)
        return FrameSubset(self.frame, self.mask | other.mask)

    def difference(self, other: FrameSubset) -> FrameSubset:
        _require_same_frame(self, other)
        return FrameSubset(self.frame, self.mask & ~other.mask)

    def complement(self) -> FrameSubset:
        """Complement with respect to the whole frame."""
        return FrameSubset(self.frame, self.mask ^ ((1 << self.frame.size) - 1))

    def is_subset(self, other: FrameSubset) -> bool:
        _require_same_frame(self, other)
        return self.mask & other.mask == self.mask

    def intersects(self, other: FrameSubset) -> bool:
        _require_same_frame(self, other)
        return self.mask & other.mask != 0

    __and__ = intersect
    __or__ = union
    __sub__ = difference
    __le__ = is_subset

    def __repr__(self) -> str:
        return f"<{encode_subset(self)}>"


def _require_same_frame(a: FrameSubset, b: FrameSubset) -> None:
    if a.frame != b.frame:
        raise FrameMismatchError("subsets belong to different frames")


def make_frame(names: Sequence[str]) -> Frame:
    """Build a frame from an ordered sequence of distinct element names."""
    return Frame(tuple(names))


def subset_from_names(frame: Frame, names: Iterable[str]) -> FrameSubset:
    """Subset of `frame` with exactly the given members; inverse of names()."""
    return frame.subset(names)


def subsets_of(a: FrameSubset) -> Iterator[FrameSubset]:
    """All 2^|a| subsets of `a`, each exactly once, ascending by bit pattern.

    Includes the empty set and `a` itself.
    """
    m = a.mask
    frame = a.frame
    sub = 0
    while True:
        yield FrameSubset(frame, sub)
        if sub == m:
            return
        sub = (sub - m) & m


def encode_subset(s: FrameSubset) -> str:
    """Canonical text form: member names in frame order joined by '|'.

    The empty set encodes as '{}'.
    """
    if s.mask == 0:
        return EMPTY_SET_TOKEN
    return "|".join(s.names())


def decode_subset(frame: Frame, text: str) -> FrameSubset:
    """Parse the canonical subset encoding; rejects unknown or repeated names."""
    if text == EMPTY_SET_TOKEN:
        return frame.empty()
    if text == "":
        raise UnknownElementError("empty subset encoding; the empty set is written '{}'")
    mask = 0
    for name in text.split("|"):
        bit = 1 << frame.index_of(name)
        if mask & bit:
            raise UnknownElementError(f"element {name!r} repeated in subset encoding")
        mask |= bit
    return FrameSubset(frame, mask)
