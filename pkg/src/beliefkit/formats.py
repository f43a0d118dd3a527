"""Canonical file formats: mass-function JSON and population CSV.

Writers emit one canonical byte sequence per value; loaders re-validate
every invariant and report the offending row or field.  save(load(bytes))
is the identity on canonical files, and load(save(value)) always equals the
value.  Rationals are serialized as integer numerator/denominator pairs,
never floats.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .errors import BeliefkitError, FormatError
from .frames import Frame, FrameSubset, decode_subset, encode_subset, make_frame
from .masses import MassFunction, make_mass
from .populations import Population, PopulationRecord

__all__ = [
    "mass_to_json_bytes",
    "mass_from_json_bytes",
    "save_mass",
    "load_mass",
    "population_to_csv_bytes",
    "population_from_csv_bytes",
    "save_population",
    "load_population",
    "relabel_report_doc",
    "json_bytes",
]

_CSV_HEADER = ["object_id", "response", "label"]


def json_bytes(doc: object) -> bytes:
    """Canonical JSON bytes: 2-space indent, fixed key order, one trailing newline."""
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


# -- mass-function JSON ------------------------------------------------------


def mass_to_json_bytes(m: MassFunction) -> bytes:
    entries = sorted(
        ({"set": encode_subset(s), "num": w.numerator, "den": w.denominator}
         for s, w in m.focal.items()),
        key=lambda e: e["set"],
    )
    doc = {"frame": list(m.frame.elements), "focal": entries}
    return json_bytes(doc)


def mass_from_json_bytes(data: bytes, frame: Frame | None = None) -> MassFunction:
    """Parse and re-validate a mass-function document.

    When `frame` is given, the document's frame must match it exactly.
    """
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError(f"mass document is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("mass document must be a JSON object")
    names = doc.get("frame")
    if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
        raise FormatError("mass document field 'frame' must be a list of strings")
    try:
        parsed_frame = make_frame(names)
    except BeliefkitError as exc:
        raise FormatError(f"mass document frame invalid: {exc}") from None
    if frame is not None and parsed_frame != frame:
        raise FormatError("mass document frame does not match the expected frame")
    focal = doc.get("focal")
    if not isinstance(focal, list):
        raise FormatError("mass document field 'focal' must be a list")
    entries: dict[FrameSubset, Fraction] = {}
    for i, e in enumerate(focal):
        if not isinstance(e, dict) or not {"set", "num", "den"} <= set(e):
            raise FormatError(f"focal entry {i}: expected keys set/num/den")
        enc = e["set"]
        num, den = e["num"], e["den"]
        if not isinstance(enc, str):
            raise FormatError(f"focal entry {i}: 'set' must be a string")
        for field, v in (("num", num), ("den", den)):
            if not isinstance(v, int) or isinstance(v, bool):
                raise FormatError(f"focal entry {i}: '{field}' must be an integer")
        if den <= 0:
            raise FormatError(f"focal entry {i}: denominator must be positive, got {den}")
        try:
            subset = decode_subset(parsed_frame, enc)
        except BeliefkitError as exc:
            raise FormatError(f"focal entry {i}: {exc}") from None
        if subset in entries:
            raise FormatError(f"focal entry {i}: duplicate set {enc!r}")
        entries[subset] = Fraction(num, den)
    try:
        return make_mass(parsed_frame, entries)
    except BeliefkitError as exc:
        raise FormatError(f"mass document invalid: {exc}") from None


def save_mass(m: MassFunction, path: str | Path) -> None:
    Path(path).write_bytes(mass_to_json_bytes(m))


def load_mass(path: str | Path, frame: Frame | None = None) -> MassFunction:
    return mass_from_json_bytes(Path(path).read_bytes(), frame)


# -- population CSV ----------------------------------------------------------


def population_to_csv_bytes(p: Population) -> bytes:
    """Rows in record order; unlabeled records (label = frame) write an
    empty label field."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_HEADER)
    full_mask = (1 << p.frame.size) - 1
    for r in p.records:
        label_field = "" if r.label.mask == full_mask else encode_subset(r.label)
        writer.writerow([r.object_id, encode_subset(r.response), label_field])
    return buf.getvalue().encode("utf-8")


def population_from_csv_bytes(data: bytes, frame: Frame) -> Population:
    """Parse and re-validate a population; errors carry 1-based row numbers."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FormatError(f"population CSV is not valid UTF-8: {exc}") from None
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise FormatError("population CSV is empty (missing header)")
    if rows[0] != _CSV_HEADER:
        raise FormatError(
            f"row 1: header must be {','.join(_CSV_HEADER)!r}, got {','.join(rows[0])!r}"
        )
    records: list[PopulationRecord] = []
    seen: set[str] = set()
    for rownum, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise FormatError(f"row {rownum}: expected 3 fields, got {len(row)}")
        object_id, response_enc, label_enc = row
        if object_id == "":
            raise FormatError(f"row {rownum}: object_id is empty")
        if object_id in seen:
            raise FormatError(f"row {rownum}: duplicate object_id {object_id!r}")
        seen.add(object_id)
        try:
            response = decode_subset(frame, response_enc)
            label = frame.full() if label_enc == "" else decode_subset(frame, label_enc)
            records.append(PopulationRecord(object_id, response, label))
        except BeliefkitError as exc:
            raise FormatError(f"row {rownum}: {exc}") from None
    return Population(frame, tuple(records))


def save_population(p: Population, path: str | Path) -> None:
    Path(path).write_bytes(population_to_csv_bytes(p))


def load_population(path: str | Path, frame: Frame) -> Population:
    return population_from_csv_bytes(Path(path).read_bytes(), frame)


# -- small report documents --------------------------------------------------


def relabel_report_doc(before: int, after: int) -> Mapping[str, int]:
    """Survivor/discard counts with the observed conflict share as a reduced
    rational (discarded over total)."""
    conflict = Fraction(before - after, before) if before else Fraction(0)
    return {
        "survivors": after,
        "discarded": before - after,
        "conflict_num": conflict.numerator,
        "conflict_den": conflict.denominator,
    }
