"""Counter-based deterministic pseudorandom streams.

Every random choice in the engine is a pure function of (seed, counter
coordinates), so parallel and sequential execution produce identical
results and any run can be reproduced byte-for-byte from its seed.

The mixing function is the splitmix64 finalizer.  The constants below are
frozen: stream outputs are part of the reproducibility contract.
"""

from __future__ import annotations

__all__ = ["MASK64", "mix64", "stream_base", "stream_value", "uniform_below", "derive_seed"]

MASK64 = 0xFFFF_FFFF_FFFF_FFFF

_GOLDEN = 0x9E37_79B9_7F4A_7C15
_STEP = 0xC2B2_AE3D_27D4_EB4F
_TRIAL_SALT = 0xD1B5_4A32_D192_ED03


def mix64(x: int) -> int:
    """splitmix64 finalizer: a fixed bijective scramble of 64-bit values."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * 0xBF58_476D_1CE4_E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D0_49BB_1331_11EB) & MASK64
    return x ^ (x >> 31)


def stream_base(seed: int, index: int) -> int:
    """State shared by all draws of one stream, keyed by (seed, index).

    Streams with distinct (seed, index) keys are independent; computing a
    stream never touches any other, so work can be partitioned freely.
    """
    return mix64(mix64(seed) ^ ((index + 1) * _GOLDEN & MASK64))


def stream_value(base: int, step: int) -> int:
    """step-th 64-bit output of the stream with the given base state."""
    return mix64((base + step * _STEP) & MASK64)


def uniform_below(bound: int, base: int, step: int = 0) -> tuple[int, int]:
    """Exact uniform integer in [0, bound) drawn from a stream.

    Uses rejection sampling over as many 64-bit words as the bound needs, so
    the result is exactly uniform for any positive bound (including bounds
    above 2^64).  Returns (value, next step), letting callers keep drawing
    from the same stream.
    """
    if bound <= 0:
        raise ValueError("bound must be positive")
    if bound == 1:
        return 0, step
    words = max(1, (bound.bit_length() + 63) // 64)
    span = 1 << (64 * words)
    limit = span - span % bound
    while True:
        r = 0
        for _ in range(words):
            r = (r << 64) | stream_value(base, step)
            step += 1
        if r < limit:
            return r % bound, step


def derive_seed(seed: int, index: int) -> int:
    """Child seed for sub-run `index` (e.g. per-trial seeds of a verification)."""
    return mix64(mix64(seed ^ _TRIAL_SALT) + ((index + 1) * _GOLDEN & MASK64))
