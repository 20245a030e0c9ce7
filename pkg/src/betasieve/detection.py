"""Iterative outlier screening over a set of Beta posteriors.

The procedure is threshold-free.  For a set of k observations it
computes all pairwise posterior overlaps, collects the k-1 least similar
pairs into a checklist, and counts for each observation how many
checklist pairs involve it.  An observation sitting in *every* checklist
pair is maximally estranged from the rest and is removed; the round then
repeats on the survivors (pairwise overlaps never change, so they are
computed once).  Screening stops when no observation dominates the
checklist, or when only three observations remain -- from three onward
removal can no longer distinguish anyone, so such a set is reported as
*fragmented*: there is no coherent majority, and every observation is
flagged.

Ties in the overlap values are resolved deterministically (ascending
value, then ascending index pair) for the reported checklist.  An
observation is only nominated for removal when it dominates under every
ordering consistent with the values, so a verdict never hinges on the
arbitrary part of a tie; when that suppresses a nomination, a warning
says so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .posterior import Observation, ObservationSet, posterior_of
from .similarity import PairSimilarity, overlap_exact, overlap_grid

__all__ = [
    "Checklist",
    "IterationTrace",
    "DetectionOutcome",
    "similarity_list",
    "build_checklist",
    "checklist_count",
    "find_outlier",
    "detect",
]

#: Observation count at which screening stops and declares fragmentation.
FRAGMENT_FLOOR = 3


@dataclass(frozen=True)
class Checklist:
    """The k-1 least similar pairs of the current round, ascending."""

    entries: tuple[PairSimilarity, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))


@dataclass(frozen=True)
class IterationTrace:
    """What one screening round saw and decided."""

    surviving_labels: tuple[str, ...]
    checklist: Checklist
    checklist_counts: dict[str, int]
    removed: str | None


@dataclass(frozen=True)
class DetectionOutcome:
    """Final screening verdict for an observation set.

    ``outliers`` lists removed observations in removal order.  When the
    set is fragmented, ``kept`` is empty and every observation appears in
    ``outliers`` (the three final survivors are appended in the order the
    removal cascade would have taken them).
    """

    kept: tuple[Observation, ...]
    outliers: tuple[Observation, ...]
    fragmented: bool
    trace: tuple[IterationTrace, ...]
    warnings: tuple[str, ...] = field(default=())


def similarity_list(
    obs_set: ObservationSet, method: str = "exact", grid_step: float = 0.001
) -> tuple[PairSimilarity, ...]:
    """All k(k-1)/2 pairwise overlaps, ordered lexicographically by (i, j)."""
    return _pairwise(obs_set.observations, method, grid_step)


def _pairwise(
    observations: Sequence[Observation], method: str, grid_step: float
) -> tuple[PairSimilarity, ...]:
    if method not in ("exact", "grid"):
        raise ValueError(f"method must be 'exact' or 'grid', got {method!r}")
    posteriors = [posterior_of(o) for o in observations]
    pairs = []
    for i in range(len(posteriors)):
        for j in range(i + 1, len(posteriors)):
            if method == "exact":
                value = overlap_exact(posteriors[i], posteriors[j])
            else:
                value = overlap_grid(posteriors[i], posteriors[j], grid_step)
            pairs.append(PairSimilarity(i, j, value))
    return tuple(pairs)


def build_checklist(pairs: Sequence[PairSimilarity], k: int) -> Checklist:
    """The k-1 smallest similarities of a full pair list.

    Ties are broken by ascending (i, j) so the checklist is a pure
    function of the values.
    """
    pairs = list(pairs)
    if k < 2 or len(pairs) != k * (k - 1) // 2:
        raise ValueError(
            f"pair list of length {len(pairs)} does not match a set of {k} observations"
        )
    pairs.sort(key=lambda ps: (ps.value, ps.i, ps.j))
    return Checklist(tuple(pairs[: k - 1]))


def checklist_count(label: str, checklist: Checklist, labels: Sequence[str]) -> int:
    """How many checklist pairs involve the observation carrying `label`.

    `labels` maps original set indices to labels.  A count of k-1 --
    membership in every checklist pair -- is the removal condition.
    """
    labels = list(labels)
    try:
        index = labels.index(label)
    except ValueError:
        raise ValueError(f"unknown label {label!r}") from None
    return sum(1 for ps in checklist.entries if ps.involves(index))


def find_outlier(
    observations: Sequence[Observation] | ObservationSet,
    method: str = "exact",
    grid_step: float = 0.001,
) -> str | None:
    """Label of the observation a single screening round would remove, if any.

    Defined for any collection of two or more labeled observations; for
    sets of four or more the nominee, when one exists, is unique.
    """
    if isinstance(observations, ObservationSet):
        obs = observations.observations
    else:
        obs = tuple(observations)
    if len(obs) < 2:
        raise ValueError(f"need at least 2 observations, got {len(obs)}")
    labels = [o.label for o in obs]
    if len(set(labels)) != len(labels):
        raise ValueError("labels must be unique")
    pairs = _pairwise(obs, method, grid_step)
    nominee, _, _, _ = _screen_round(pairs, list(range(len(obs))), labels)
    return labels[nominee] if nominee is not None else None


def _screen_round(
    pairs: Sequence[PairSimilarity], members: list[int], labels: Sequence[str]
) -> tuple[int | None, Checklist, dict[str, int], list[str]]:
    """One screening round over `members` (original indices into `labels`).

    Returns (nominated index or None, checklist, per-label checklist
    counts, warnings).  The nominee must sit in every pair whose value is
    within the checklist's value range, so the decision is independent of
    how ties were ordered.
    """
    member_set = set(members)
    k = len(members)
    sub = [ps for ps in pairs if ps.i in member_set and ps.j in member_set]
    checklist = build_checklist(sub, k)
    boundary = checklist.entries[-1].value
    sub_sorted = sorted(sub, key=lambda ps: (ps.value, ps.i, ps.j))

    warnings: list[str] = []
    if len(sub_sorted) > k - 1 and sub_sorted[k - 1].value == boundary:
        tied = [(labels[ps.i], labels[ps.j]) for ps in sub_sorted if ps.value == boundary]
        pretty = ", ".join(f"({a}, {b})" for a, b in tied)
        warnings.append(
            f"checklist boundary tie at similarity {boundary!r}: membership among "
            f"{pretty} was settled by index order"
        )

    counts = {
        labels[m]: sum(1 for ps in checklist.entries if ps.involves(m)) for m in members
    }

    # Nominate only if some observation sits in *every* pair at or below the
    # boundary value; such a nominee dominates any tie-consistent checklist.
    eligible = [ps for ps in sub_sorted if ps.value <= boundary]
    candidates = [m for m in members if all(ps.involves(m) for ps in eligible)]
    if k >= 3 and len(candidates) > 1:
        raise AssertionError("two observations cannot both sit in every least-similar pair")
    nominee = candidates[0] if len(candidates) == 1 else None
    if nominee is None:
        stranded = [lab for lab, c in counts.items() if c == k - 1]
        if stranded:
            warnings.append(
                f"nomination withheld: {', '.join(sorted(stranded))} reached the removal "
                f"count only through tie-dependent checklist membership"
            )
    return nominee, checklist, counts, warnings


def detect(
    obs_set: ObservationSet,
    method: str = "exact",
    grid_step: float = 0.001,
    pairs: Sequence[PairSimilarity] | None = None,
) -> DetectionOutcome:
    """Screen a validated set, removing one dominating outlier per round.

    Pairwise overlaps are computed once up front; rounds only reselect the
    pairs among the survivors.  Stops as soon as a round nominates nobody
    (the survivors are the kept set) or when three observations remain
    (the set is fragmented and every observation is flagged).

    `pairs` accepts a precomputed `similarity_list` for the same set and
    method, sparing callers that need the full list anyway a second pass.
    """
    if pairs is None:
        pairs = similarity_list(obs_set, method=method, grid_step=grid_step)
    elif len(pairs) != obs_set.k * (obs_set.k - 1) // 2:
        raise ValueError(
            f"pair list of length {len(pairs)} does not match a set of {obs_set.k} observations"
        )
    labels = list(obs_set.labels)
    members = list(range(obs_set.k))
    removed: list[int] = []
    trace: list[IterationTrace] = []
    warnings = list(obs_set.warnings)
    fragmented = False

    while True:
        if len(members) == FRAGMENT_FLOOR:
            fragmented = True
            break
        nominee, checklist, counts, round_warnings = _screen_round(pairs, members, labels)
        warnings.extend(round_warnings)
        trace.append(
            IterationTrace(
                surviving_labels=tuple(labels[m] for m in members),
                checklist=checklist,
                checklist_counts=counts,
                removed=labels[nominee] if nominee is not None else None,
            )
        )
        if nominee is None:
            break
        members.remove(nominee)
        removed.append(nominee)

    if fragmented:
        # Order the last three by the cascade that would have consumed them:
        # one more nomination among the three, then input order.
        last_nominee, _, _, _ = _screen_round(pairs, members, labels)
        tail = [m for m in members if m != last_nominee]
        outlier_indices = removed + ([last_nominee] if last_nominee is not None else []) + tail
        kept_indices: list[int] = []
    else:
        outlier_indices = removed
        kept_indices = members

    obs = obs_set.observations
    outcome = DetectionOutcome(
        kept=tuple(obs[i] for i in kept_indices),
        outliers=tuple(obs[i] for i in outlier_indices),
        fragmented=fragmented,
        trace=tuple(trace),
        warnings=tuple(warnings),
    )
    assert len(outcome.kept) + len(outcome.outliers) == obs_set.k
    return outcome
