"""Reading and writing observation tables and campaign specs.

Observation tables come in two interchangeable shapes:

* CSV with a header row, columns ``label,events,trials`` and optionally
  ``prior_alpha,prior_beta`` (both or neither per row; empty cells mean
  the uniform prior);
* JSON as an array of objects with the same field names.

``parse_observations(render_observations(s)) == s`` for any valid set.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Sequence

from .errors import InputFormatError, ValidationError
from .posterior import Observation, ObservationSet, UNIFORM_PRIOR, validate_set
from .special_functions import BetaParams
from .synth import CampaignSpec

__all__ = [
    "detect_format",
    "parse_observations",
    "render_observations",
    "read_observations",
    "write_observations",
    "read_campaign",
]

_BASE_COLUMNS = ("label", "events", "trials")
_PRIOR_COLUMNS = ("prior_alpha", "prior_beta")


def detect_format(path: Path | str, fmt: str | None = None) -> str:
    """Resolve an explicit or extension-implied table format."""
    if fmt is not None:
        if fmt not in ("csv", "json"):
            raise InputFormatError(f"format must be 'csv' or 'json', got {fmt!r}")
        return fmt
    return "json" if str(path).lower().endswith(".json") else "csv"


def read_observations(path: Path | str, fmt: str | None = None, allow_duplicates: bool = False) -> ObservationSet:
    fmt = detect_format(path, fmt)
    text = Path(path).read_text(encoding="utf-8")
    return parse_observations(text, fmt, allow_duplicates=allow_duplicates)


def write_observations(obs: ObservationSet | Sequence[Observation], path: Path | str, fmt: str | None = None) -> None:
    fmt = detect_format(path, fmt)
    Path(path).write_text(render_observations(obs, fmt), encoding="utf-8")


def parse_observations(text: str, fmt: str, allow_duplicates: bool = False) -> ObservationSet:
    """Parse an observation table and validate it into a set."""
    if fmt == "csv":
        observations = _parse_csv(text)
    elif fmt == "json":
        observations = _parse_json(text)
    else:
        raise InputFormatError(f"format must be 'csv' or 'json', got {fmt!r}")
    return validate_set(observations, allow_duplicates=allow_duplicates)


def render_observations(obs: ObservationSet | Sequence[Observation], fmt: str) -> str:
    """Serialize observations to CSV or JSON text (prior columns always explicit)."""
    if isinstance(obs, ObservationSet):
        obs = obs.observations
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(_BASE_COLUMNS + _PRIOR_COLUMNS)
        for o in obs:
            writer.writerow([o.label, o.events, o.trials, repr(o.prior.alpha), repr(o.prior.beta)])
        return buffer.getvalue()
    if fmt == "json":
        rows = [
            {
                "label": o.label,
                "events": o.events,
                "trials": o.trials,
                "prior_alpha": o.prior.alpha,
                "prior_beta": o.prior.beta,
            }
            for o in obs
        ]
        return json.dumps(rows, indent=2) + "\n"
    raise InputFormatError(f"format must be 'csv' or 'json', got {fmt!r}")


def _parse_csv(text: str) -> list[Observation]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise InputFormatError("empty input: expected a CSV header row") from None
    header = [cell.strip() for cell in header]
    if tuple(header) == _BASE_COLUMNS:
        with_priors = False
    elif tuple(header) == _BASE_COLUMNS + _PRIOR_COLUMNS:
        with_priors = True
    else:
        raise InputFormatError(
            "line 1: expected header 'label,events,trials' or "
            f"'label,events,trials,prior_alpha,prior_beta', got {','.join(header)!r}"
        )
    observations = []
    for row in reader:
        line = reader.line_num
        if not row or (len(row) == 1 and not row[0].strip()):
            continue  # blank line
        expected = 5 if with_priors else 3
        if len(row) != expected:
            raise InputFormatError(f"line {line}: expected {expected} fields, got {len(row)}")
        label = row[0].strip()
        events = _parse_int(row[1], "events", line)
        trials = _parse_int(row[2], "trials", line)
        prior = UNIFORM_PRIOR
        if with_priors:
            prior = _parse_prior(row[3], row[4], line)
        try:
            observations.append(Observation(label=label, events=events, trials=trials, prior=prior))
        except ValidationError as exc:
            raise InputFormatError(f"line {line}: {exc}") from exc
    return observations


def _parse_int(cell: str, field: str, line: int) -> int:
    try:
        return int(cell.strip())
    except ValueError:
        raise InputFormatError(f"line {line}: {field} must be an integer, got {cell.strip()!r}") from None


def _parse_prior(alpha_cell: str, beta_cell: str, line: int) -> BetaParams:
    alpha_cell, beta_cell = alpha_cell.strip(), beta_cell.strip()
    if not alpha_cell and not beta_cell:
        return UNIFORM_PRIOR
    if not alpha_cell or not beta_cell:
        raise InputFormatError(
            f"line {line}: prior_alpha and prior_beta must be given together"
        )
    try:
        return BetaParams(float(alpha_cell), float(beta_cell))
    except ValueError as exc:
        raise InputFormatError(f"line {line}: {exc}") from exc


def _parse_json(text: str) -> list[Observation]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise InputFormatError(f"expected a JSON array of observations, got {type(data).__name__}")
    observations = []
    for pos, entry in enumerate(data):
        if not isinstance(entry, dict):
            raise InputFormatError(f"entry {pos}: must be an object")
        unknown = set(entry) - set(_BASE_COLUMNS) - set(_PRIOR_COLUMNS)
        if unknown:
            raise InputFormatError(f"entry {pos}: unknown fields: {', '.join(sorted(unknown))}")
        missing = set(_BASE_COLUMNS) - set(entry)
        if missing:
            raise InputFormatError(f"entry {pos}: missing fields: {', '.join(sorted(missing))}")
        has_alpha = "prior_alpha" in entry
        has_beta = "prior_beta" in entry
        if has_alpha != has_beta:
            raise InputFormatError(f"entry {pos}: prior_alpha and prior_beta must be given together")
        prior = UNIFORM_PRIOR
        if has_alpha:
            try:
                prior = BetaParams(entry["prior_alpha"], entry["prior_beta"])
            except ValueError as exc:
                raise InputFormatError(f"entry {pos}: {exc}") from exc
        try:
            observations.append(
                Observation(
                    label=entry["label"],
                    events=entry["events"],
                    trials=entry["trials"],
                    prior=prior,
                )
            )
        except ValidationError as exc:
            raise InputFormatError(f"entry {pos}: {exc}") from exc
    return observations


def read_campaign(path: Path | str) -> CampaignSpec:
    """Load a campaign spec from a JSON file."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"not valid JSON: {exc}") from exc
    return CampaignSpec.from_dict(data)
