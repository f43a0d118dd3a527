"""Executable verification of the engine's core identities, plus golden fixtures.

Checks labeled EXACT compare rationals for equality — no tolerances.  The
only tolerance in this module is the Monte Carlo mean-belief check, whose
bound is a caller-supplied decimal.

The bottled-wine fixture ("Citizen Coot"): 717 sold bottles over the
8-element quality x shop frame, labeled with the conviction that only high
and moderate quality products are sold in good shops.  The published table
for this fixture prints four belief values that do not equal the subset-sum
of its own mass column; `verify_coot_printed_table` surfaces both numbers
for those rows informationally while asserting the subset-sum values.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyPopulationError, LabelingSpecError, TotalConflictError
from .frames import Frame, FrameSubset, encode_subset, make_frame, subset_from_names
from .masses import (
    MassFunction,
    belief,
    belief_table,
    categorical_mass,
    dempster_combine,
    make_mass,
)
from .populations import (
    Population,
    PopulationRecord,
    estimate_belief_direct,
    estimate_mass,
    estimate_plausibility_direct,
    synthesize_population,
)
from .relabel import LabelingProcessSpec, expected_class_weights, simple_relabel
from .rng import derive_seed, mix64, stream_base, uniform_below

__all__ = [
    "Check",
    "VerificationReport",
    "coot_frame",
    "coot_label",
    "coot_fixture",
    "coot_unlabeled_standin",
    "COOT_TABLE",
    "COOT_DERIVED_BEL",
    "COOT_DENOMINATOR",
    "verify_mte_axioms",
    "verify_simple_relabel",
    "verify_general_relabel",
    "verify_coot_printed_table",
]

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"

EXHAUSTIVE_LIMIT = 12  # above this, per-subset checks sample instead
_SAMPLED_SUBSETS = 2048


@dataclass(frozen=True)
class Check:
    """One verification outcome; failed checks carry both values verbatim."""

    name: str
    status: str
    lhs: str = ""
    rhs: str = ""
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...]

    @property
    def overall(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def to_doc(self) -> dict:
        return {
            "overall": self.overall,
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "lhs": c.lhs,
                    "rhs": c.rhs,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }

    def format_text(self) -> str:
        lines = []
        width = max((len(c.name) for c in self.checks), default=4)
        for c in self.checks:
            line = f"{c.name:<{width}}  {c.status}"
            if c.lhs or c.rhs:
                line += f"  lhs={c.lhs} rhs={c.rhs}"
            if c.detail:
                line += f"  ({c.detail})"
            lines.append(line)
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(lines)


# -- golden fixture ---------------------------------------------------------

COOT_FRAME_NAMES = ("HB", "HG", "MB", "MG", "SB", "SG", "DB", "DG")
COOT_LABEL_NAMES = ("HB", "HG", "MB", "MG", "SB", "DB")
COOT_DENOMINATOR = 717

# (class member names, record count, published Bel numerator over 717)
COOT_TABLE: tuple[tuple[tuple[str, ...], int, int], ...] = (
    (("HB",), 20, 20),
    (("HG",), 112, 112),
    (("HB", "HG"), 70, 202),
    (("MB",), 80, 80),
    (("MG",), 127, 127),
    (("MB", "MG"), 110, 317),
    (("SB",), 65, 65),
    (("DB",), 13, 13),
    (("HB", "SB"), 15, 100),
    (("HB", "SB", "HG"), 14, 184),
    (("MB", "SB"), 30, 175),
    (("MB", "SB", "MG"), 25, 387),
    (("HB", "DB"), 8, 41),
    (("HB", "DB", "HG"), 3, 114),
    (("MB", "DB"), 15, 108),
    (("MB", "DB", "MG"), 10, 228),
)

# Rows whose published Bel is NOT the subset-sum of the mass column, mapped
# to the subset-sum value (numerator over 717) that the engine asserts.
COOT_DERIVED_BEL: dict[tuple[str, ...], int] = {
    ("HB", "SB", "HG"): 296,
    ("MB", "SB", "MG"): 437,
    ("HB", "DB", "HG"): 226,
    ("MB", "DB", "MG"): 355,
}

# Synthetic unlabeled stand-in: the 16 labeled classes (four counts reduced)
# plus five classes that involve the elements outside the label, so relabel
# checks see nonzero conflict.  Total stays 717.
_STANDIN_CLASSES: tuple[tuple[tuple[str, ...], int], ...] = (
    (("HB",), 20),
    (("HG",), 80),
    (("HB", "HG"), 70),
    (("MB",), 55),
    (("MG",), 92),
    (("MB", "MG"), 85),
    (("SB",), 65),
    (("DB",), 13),
    (("HB", "SB"), 15),
    (("HB", "SB", "HG"), 14),
    (("MB", "SB"), 30),
    (("MB", "SB", "MG"), 25),
    (("HB", "DB"), 8),
    (("HB", "DB", "HG"), 3),
    (("MB", "DB"), 15),
    (("MB", "DB", "MG"), 10),
    (("SG",), 40),
    (("DG",), 20),
    (("SB", "SG"), 30),
    (("DB", "DG"), 15),
    (("HG", "SG"), 12),
)


def coot_frame() -> Frame:
    return make_frame(COOT_FRAME_NAMES)


def coot_label(frame: Frame | None = None) -> FrameSubset:
    return subset_from_names(frame or coot_frame(), COOT_LABEL_NAMES)


def coot_fixture() -> Population:
    """The 717-record labeled fixture, classes and counts as published.

    Each record's response equals its class and every label is the
    high-or-moderate-in-good-shops set, so the effective-response classes
    reproduce the published mass column exactly.  Ids and order are
    deterministic.
    """
    frame = coot_frame()
    label = coot_label(frame)
    records = []
    idx = 0
    for names, count, _ in COOT_TABLE:
        response = subset_from_names(frame, names)
        for _ in range(count):
            idx += 1
            records.append(PopulationRecord(f"bottle-{idx:04d}", response, label))
    return Population(frame, tuple(records))


def coot_unlabeled_standin() -> Population:
    """Synthetic unlabeled 717-record population standing in for the
    pre-labeling fixture (whose published table is not available).

    Some classes meet the fixture label and some do not, so relabeling it
    exercises nonzero conflict.
    """
    frame = coot_frame()
    entries = {
        subset_from_names(frame, names): Fraction(count, COOT_DENOMINATOR)
        for names, count in _STANDIN_CLASSES
    }
    return synthesize_population(
        make_mass(frame, entries), COOT_DENOMINATOR, mode="exact", id_prefix="coot"
    )


# -- verification operations ------------------------------------------------


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _subset_masks_to_check(frame: Frame) -> list[int]:
    n = frame.size
    if n <= EXHAUSTIVE_LIMIT:
        return list(range(1 << n))
    top = (1 << n) - 1
    masks = {0, top}
    k = 0
    while len(masks) < _SAMPLED_SUBSETS:
        masks.add(mix64(k) % (1 << n))
        k += 1
    return sorted(masks)


def verify_mte_axioms(p: Population, *, mass_estimator=estimate_mass) -> VerificationReport:
    """Exact checks that the estimated mass behaves like a mass function and
    that the counting estimators agree with the subset-sum routes.

    Exhaustive over all subsets for frames up to 12 elements, deterministic
    sampling beyond.  `mass_estimator` is an injection seam for self-tests.
    """
    if len(p) == 0:
        raise EmptyPopulationError("cannot verify an empty population")
    frame = p.frame
    m = mass_estimator(p)

    total = sum(m.focal.values(), Fraction(0))
    checks = [
        Check(
            "mass-sums-to-one",
            PASS if total == 1 else FAIL,
            _fmt(total),
            "1",
        ),
        Check(
            "mass-empty-zero",
            PASS if all(s.mask != 0 for s in m.focal) else FAIL,
            detail="no focal weight on the empty set",
        ),
    ]

    masks = _subset_masks_to_check(frame)
    scope = (
        f"exhaustive over {len(masks)} subsets"
        if frame.size <= EXHAUSTIVE_LIMIT
        else f"sampled {len(masks)} subsets"
    )

    bel_bad = pl_bad = 0
    first_bel = first_pl = None
    for mask in masks:
        a = frame.subset_from_mask(mask)
        direct = estimate_belief_direct(p, a)
        via_mass = belief(m, a)
        if direct != via_mass:
            bel_bad += 1
            if first_bel is None:
                first_bel = (a, direct, via_mass)
        direct_pl = estimate_plausibility_direct(p, a)
        dual = 1 - belief(m, a.complement())
        if direct_pl != dual:
            pl_bad += 1
            if first_pl is None:
                first_pl = (a, direct_pl, dual)

    if bel_bad == 0:
        checks.append(Check("belief-direct-vs-mass", PASS, detail=scope))
    else:
        a, lhs, rhs = first_bel
        checks.append(
            Check(
                "belief-direct-vs-mass",
                FAIL,
                _fmt(lhs),
                _fmt(rhs),
                f"first mismatch at {encode_subset(a)}; {bel_bad} subsets disagree ({scope})",
            )
        )
    if pl_bad == 0:
        checks.append(Check("plausibility-duality", PASS, detail=scope))
    else:
        a, lhs, rhs = first_pl
        checks.append(
            Check(
                "plausibility-duality",
                FAIL,
                _fmt(lhs),
                _fmt(rhs),
                f"first mismatch at {encode_subset(a)}; {pl_bad} subsets disagree ({scope})",
            )
        )
    return VerificationReport(tuple(checks))


def _mass_repr(m: MassFunction) -> str:
    return "{" + ", ".join(f"{encode_subset(s)}: {_fmt(w)}" for s, w in m.items_canonical()) + "}"


def verify_simple_relabel(p: Population, label: FrameSubset) -> VerificationReport:
    """Exact check that relabel-then-estimate equals combine-then-estimate.

    The estimated mass after deterministic relabeling must equal the
    Dempster combination of the current estimate with the categorical mass
    on the label; when every record is discarded the combination must
    report total conflict (matched degenerate outcomes pass).
    """
    if len(p) == 0:
        raise EmptyPopulationError("cannot verify an empty population")
    if label.mask == 0:
        raise LabelingSpecError("relabel requires a nonempty label")
    before = estimate_mass(p)
    after_pop = simple_relabel(p, label)
    discarded = len(p) - len(after_pop)

    try:
        combined, conflict = dempster_combine(before, categorical_mass(p.frame, label))
    except TotalConflictError:
        if len(after_pop) == 0:
            return VerificationReport(
                (
                    Check(
                        "relabel-total-conflict-matched",
                        PASS,
                        "empty population",
                        "total conflict",
                        "both sides degenerate",
                    ),
                )
            )
        return VerificationReport(
            (
                Check(
                    "relabel-total-conflict-matched",
                    FAIL,
                    f"{len(after_pop)} survivors",
                    "total conflict",
                    "combination undefined but relabel kept records",
                ),
            )
        )

    if len(after_pop) == 0:
        return VerificationReport(
            (
                Check(
                    "relabel-mass-equality",
                    FAIL,
                    "empty population",
                    _mass_repr(combined),
                    "relabel discarded everything but combination is defined",
                ),
            )
        )

    after = estimate_mass(after_pop)
    equal = after.focal == combined.focal
    checks = [
        Check(
            "relabel-mass-equality",
            PASS if equal else FAIL,
            _mass_repr(after) if not equal else "",
            _mass_repr(combined) if not equal else "",
            f"{len(after_pop)} survivors of {len(p)}",
        ),
        Check(
            "conflict-equals-discard-share",
            PASS if conflict == Fraction(discarded, len(p)) else FAIL,
            _fmt(conflict),
            _fmt(Fraction(discarded, len(p))),
        ),
    ]
    return VerificationReport(tuple(checks))


def verify_general_relabel(
    p: Population,
    spec: LabelingProcessSpec,
    trials: int,
    seed: int,
    tolerance: float = 0.01,
) -> VerificationReport:
    """Two checks on the randomized relabeling process.

    EXACT: the closed-form expected class weights, renormalized over the
    nonempty classes, equal the Dempster combination of the current
    estimate with the process mass.  MONTE CARLO: the mean estimated belief
    over seeded trials stays within `tolerance` of the combined belief on
    every subset (empty-output trials are excluded and counted).
    """
    if trials < 1:
        raise LabelingSpecError("at least one trial is required")
    if len(p) == 0:
        raise EmptyPopulationError("cannot verify an empty population")
    frame = p.frame
    checks: list[Check] = []

    expected = expected_class_weights(p, spec)
    nonempty = {s: w for s, w in expected.items() if s.mask != 0}
    empty_share = expected.get(frame.empty(), Fraction(0))

    degenerate_rhs = False
    combined: MassFunction | None = None
    conflict = Fraction(0)
    try:
        combined, conflict = dempster_combine(estimate_mass(p), spec.as_mass())
    except TotalConflictError:
        degenerate_rhs = True

    if degenerate_rhs:
        checks.append(
            Check(
                "expected-weights-match-combination",
                PASS if not nonempty else FAIL,
                "no nonempty expected class" if not nonempty else _fmt(sum(nonempty.values(), Fraction(0))),
                "total conflict",
                "matched degenerate outcome" if not nonempty else "combination undefined but expectation has survivors",
            )
        )
    else:
        scale = 1 - empty_share
        renormalized = {s: w / scale for s, w in nonempty.items()}
        ok = renormalized == dict(combined.focal) and empty_share == conflict
        checks.append(
            Check(
                "expected-weights-match-combination",
                PASS if ok else FAIL,
                "" if ok else "{" + ", ".join(f"{encode_subset(s)}: {_fmt(w)}" for s, w in sorted(renormalized.items(), key=lambda kv: kv[0].mask)) + "}",
                "" if ok else _mass_repr(combined),
                f"expected discard share {_fmt(empty_share)} = conflict {_fmt(conflict)}",
            )
        )

    # Monte Carlo mean belief.  Mean-of-masses then one zeta transform equals
    # the mean of per-trial direct belief estimates (linearity; the direct-
    # vs-subset-sum equality is checked exactly elsewhere).
    eff_masks = [r.response.mask & r.label.mask for r in p.records]
    n_records = len(eff_masks)
    denom, cumulative, label_masks = spec._selection_table
    size = 1 << frame.size
    sum_mass = [0.0] * size
    used = 0
    empty_trials = 0
    half_deviation = None
    half_point = trials // 2

    combined_bel: list[float] | None = None
    if combined is not None:
        combined_bel = [float(v) for v in belief_table(combined).values]

    def max_deviation(total_mass: list[float], trials_used: int) -> float:
        """Worst |mean Bel - combined Bel| over all subsets (zeta of means)."""
        if trials_used == 0 or combined_bel is None:
            return float("inf")
        vec = [v / trials_used for v in total_mass]
        for b in range(frame.size):
            bit = 1 << b
            for mask in range(size):
                if mask & bit:
                    vec[mask] += vec[mask ^ bit]
        return max(abs(vec[mask] - combined_bel[mask]) for mask in range(size))

    for t in range(trials):
        trial_seed = derive_seed(seed, t)
        counts: dict[int, int] = {}
        survivors = 0
        for i in range(n_records):
            base = stream_base(trial_seed, i)
            u, _ = uniform_below(denom, base)
            lmask = label_masks[bisect_right(cumulative, u)]
            d = eff_masks[i] & lmask
            if d:
                counts[d] = counts.get(d, 0) + 1
                survivors += 1
        if survivors == 0:
            empty_trials += 1
        else:
            used += 1
            for d, c in counts.items():
                sum_mass[d] += c / survivors
        if t + 1 == half_point and combined is not None:
            half_deviation = max_deviation(sum_mass, used)

    if used == 0:
        if degenerate_rhs:
            checks.append(
                Check(
                    "monte-carlo-mean-belief",
                    PASS,
                    "all trials empty",
                    "total conflict",
                    f"matched degenerate outcome over {trials} trials",
                )
            )
            return VerificationReport(tuple(checks))
        raise EmptyPopulationError("all trials produced empty populations")

    if degenerate_rhs:
        checks.append(
            Check(
                "monte-carlo-mean-belief",
                FAIL,
                f"{used} nonempty trials",
                "total conflict",
                "combination undefined but trials produced survivors",
            )
        )
        return VerificationReport(tuple(checks))

    worst = max_deviation(sum_mass, used)
    detail = f"{used} trials used, {empty_trials} empty excluded; max deviation {worst:.6f}"
    if half_deviation is not None:
        detail += f" (at half: {half_deviation:.6f})"
    checks.append(
        Check(
            "monte-carlo-mean-belief",
            PASS if worst <= tolerance else FAIL,
            f"{worst:.6f}",
            f"<= {tolerance}",
            detail,
        )
    )
    return VerificationReport(tuple(checks))


def verify_coot_printed_table() -> VerificationReport:
    """Golden-fixture audit: estimated masses equal the published mass
    column; beliefs equal the published column on the twelve subset-sum-
    consistent rows; the four divergent rows are asserted against their
    subset-sum values and reported informationally with both numbers.
    """
    frame = coot_frame()
    pop = coot_fixture()
    m = estimate_mass(pop)
    table = belief_table(m)

    checks: list[Check] = []
    mass_bad = []
    for names, count, _ in COOT_TABLE:
        s = subset_from_names(frame, names)
        if m.weight(s) != Fraction(count, COOT_DENOMINATOR):
            mass_bad.append(f"{encode_subset(s)}: {_fmt(m.weight(s))} != {count}/717")
    checks.append(
        Check(
            "mass-column",
            PASS if not mass_bad else FAIL,
            detail="; ".join(mass_bad) if mass_bad else "16 focal weights match",
        )
    )

    consistent_bad = []
    info_lines = []
    divergent_bad = []
    for names, _, printed in COOT_TABLE:
        s = subset_from_names(frame, names)
        got = table.value(s)
        if names in COOT_DERIVED_BEL:
            derived = Fraction(COOT_DERIVED_BEL[names], COOT_DENOMINATOR)
            if got != derived:
                divergent_bad.append(f"{encode_subset(s)}: {_fmt(got)} != {_fmt(derived)}")
            info_lines.append(
                f"{encode_subset(s)}: printed {printed}/717, subset-sum {_fmt(got)}"
            )
        else:
            if got != Fraction(printed, COOT_DENOMINATOR):
                consistent_bad.append(f"{encode_subset(s)}: {_fmt(got)} != {printed}/717")
    checks.append(
        Check(
            "bel-printed-rows",
            PASS if not consistent_bad else FAIL,
            detail="; ".join(consistent_bad) if consistent_bad else "12 rows match the published column",
        )
    )
    checks.append(
        Check(
            "bel-divergent-rows",
            PASS if not divergent_bad else FAIL,
            detail="; ".join(divergent_bad) if divergent_bad else "informational: " + "; ".join(info_lines),
        )
    )
    return VerificationReport(tuple(checks))
