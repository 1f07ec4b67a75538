"""Assembly formation: stabilize one winner set per (variable, value).

Each round re-encodes the value and projects the resulting input pattern
into the variable's area with plasticity on. Repeated winners accumulate
input-synapse strength and crowd out drifters, so the winner set settles
into a reusable attractor. The per-round overlap with the previous round's
winners is the stability statistic; no inter-area gain is involved at any
point (directional binding happens elsewhere, later).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .brain import Brain, input_area_name
from .encoding import ValueCategory

STABILITY_PAD = np.nan  # sentinel for ragged trace export


@dataclass
class Assembly:
    """Stabilized winner set representing one (variable, value)."""

    area: str
    value: ValueCategory
    winners: np.ndarray
    rounds_to_stabilize: int


def winner_overlap(a: np.ndarray, b: np.ndarray) -> float:
    """|a intersect b| / k for two equal-size winner sets."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"winner set size mismatch: {a.shape[0]} vs {b.shape[0]}")
    if a.shape[0] == 0:
        return 0.0
    return np.intersect1d(a, b).shape[0] / a.shape[0]


def form_assembly(brain: Brain, value: ValueCategory, encoder,
                  rounds: int = 30, overlap_thr: float = 0.9,
                  stable_window: int = 3) -> tuple[Assembly, list[float]]:
    """Repeated exposure of one value; returns the assembly and its trace.

    The trace has one overlap entry per round (round 1 recorded as 0, there
    being no previous winners to compare). rounds_to_stabilize is the first
    round at which the trailing stable_window overlaps all reach
    overlap_thr, or `rounds` if that never happens.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    area = value.variable
    if area not in brain.areas:
        raise ValueError(f"encoder/area mismatch: no area {area!r}")
    in_name = brain.add_input_area(area)
    trace: list[float] = []
    prev = None
    stabilized_at = None
    for r in range(1, rounds + 1):
        pattern = encoder.encode(value)
        if pattern.area != in_name:
            raise ValueError(
                f"encoder/area mismatch: pattern for {pattern.area!r}, "
                f"expected {in_name!r}")
        winners = brain.project([pattern], area, plasticity_on=True)
        trace.append(0.0 if prev is None else winner_overlap(winners, prev))
        prev = winners
        if (stabilized_at is None and r >= stable_window
                and all(o >= overlap_thr for o in trace[-stable_window:])):
            stabilized_at = r
    assembly = Assembly(area, value, prev,
                        rounds if stabilized_at is None else stabilized_at)
    return assembly, trace


def stability_matrix(traces: dict[str, list[float]]
                     ) -> tuple[list[str], np.ndarray]:
    """Rectangular (assembly x round) overlap table for the heatmap export.

    Ragged traces are right-padded with NaN. Returns (labels, matrix); empty
    input yields an empty matrix.
    """
    labels = list(traces.keys())
    if not labels:
        return [], np.zeros((0, 0))
    width = max(len(t) for t in traces.values())
    out = np.full((len(labels), width), STABILITY_PAD)
    for i, label in enumerate(labels):
        t = traces[label]
        out[i, :len(t)] = t
    return labels, out


def stability_csv(traces: dict[str, list[float]]) -> str:
    """Long-form CSV (assembly, round, overlap) of the formation traces."""
    lines = ["assembly,round,overlap"]
    for label, t in traces.items():
        for r, o in enumerate(t, start=1):
            lines.append(f"{label},{r},{o:.6f}")
    return "\n".join(lines) + "\n"
