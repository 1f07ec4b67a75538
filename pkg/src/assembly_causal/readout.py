"""Directional readouts over all ordered variable pairs.

Two independent readouts, both read-only on the brain:

* synaptic: mean forward cross-assembly weight minus mean reverse weight.
* propagation: project the source assembly analytically through the forward
  connectome (plasticity off, deterministic top-k), measure what fraction of
  the predicted winners coincide with the stored target assembly, and take
  the forward-minus-reverse difference of those overlaps.

Pairs are ranked by the difference, filtered by a forward/reverse ratio
threshold, and truncated to the top K (K fixed to the ground-truth link
count) for Precision@K / Recall@K scoring.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .brain import Brain, select_topk
from .formation import Assembly, winner_overlap

SYNAPTIC = "synaptic"
PROPAGATION = "propagation"


@dataclass
class PairScore:
    pair: tuple[str, str]
    s_fwd: float
    s_rev: float
    delta: float
    readout: str
    rank: int | None = None
    selected: bool = False
    is_ground_truth: bool = False


@dataclass
class TopKResult:
    k: int
    selected: list[tuple[str, str]]
    tp: int
    fp: int
    precision_at_k: float
    recall_at_k: float
    shortfall: int = 0  # pairs missing when the filter left fewer than K


def synaptic_score(brain: Brain, u: str, v: str, a_u: np.ndarray,
                   a_v: np.ndarray) -> tuple[float, float, float]:
    """(mean forward block weight, mean reverse block weight, difference)."""
    w_fwd = brain.connectome(u, v).weights
    w_rev = brain.connectome(v, u).weights
    s_fwd = float(w_fwd[np.ix_(a_u, a_v)].mean())
    s_rev = float(w_rev[np.ix_(a_v, a_u)].mean())
    return s_fwd, s_rev, s_fwd - s_rev


def propagate_analytic(brain: Brain, u: str, v: str,
                       a_u: np.ndarray) -> np.ndarray:
    """Winners v would produce if only assembly a_u were active.

    Pure function of the current weights: accumulate each target neuron's
    summed weight from a_u and take the deterministic top-k. No plasticity,
    no state mutation.
    """
    drive = brain.connectome(u, v).weights[np.asarray(a_u), :].sum(axis=0)
    return select_topk(drive, brain.areas[v].k)


def propagation_overlap(brain: Brain, u: str, v: str, a_u: np.ndarray,
                        a_v: np.ndarray) -> float:
    """Fraction of analytically propagated winners that land in a_v."""
    return winner_overlap(propagate_analytic(brain, u, v, a_u), np.asarray(a_v))


def propagation_delta(brain: Brain, u: str, v: str,
                      assemblies: dict[str, Assembly]) -> PairScore:
    """Forward minus reverse propagation overlap for the ordered pair."""
    a_u = assemblies[u].winners
    a_v = assemblies[v].winners
    fwd = propagation_overlap(brain, u, v, a_u, a_v)
    rev = propagation_overlap(brain, v, u, a_v, a_u)
    return PairScore((u, v), fwd, rev, fwd - rev, PROPAGATION)


def score_all_pairs(brain: Brain, assemblies: dict[str, Assembly],
                    readout: str) -> list[PairScore]:
    """PairScore for every ordered pair of assembly-bearing variables."""
    names = [n for n in brain.area_names() if n in assemblies]
    scores = []
    for u in names:
        for v in names:
            if u == v:
                continue
            if readout == SYNAPTIC:
                s_fwd, s_rev, delta = synaptic_score(
                    brain, u, v, assemblies[u].winners, assemblies[v].winners)
                scores.append(PairScore((u, v), s_fwd, s_rev, delta, SYNAPTIC))
            elif readout == PROPAGATION:
                scores.append(propagation_delta(brain, u, v, assemblies))
            else:
                raise ValueError(f"unknown readout {readout!r}")
    return scores


def precision_at_k(tp: int, fp: int) -> float:
    if tp < 0 or fp < 0:
        raise ValueError("counts must be nonnegative")
    if tp + fp == 0:
        raise ZeroDivisionError("precision undefined for K = 0")
    return tp / (tp + fp)


def recall_at_k(tp: int, gt_count: int) -> float:
    if tp < 0 or gt_count <= 0:
        raise ValueError("need tp >= 0 and a nonempty ground truth")
    return tp / gt_count


def rank_and_select(scores: list[PairScore], k: int,
                    ratio_threshold: float,
                    ground_truth: list[tuple[str, str]]) -> TopKResult:
    """Sort by delta, filter by forward/reverse ratio, keep top K, score.

    Ties in delta break lexicographically on the pair name. Pairs whose
    s_fwd / s_rev falls below ratio_threshold are dropped before
    truncation; if fewer than K survive, the shortfall is reported via a
    warning and metrics are computed over the surviving set.
    """
    if k < 1:
        raise ValueError("K must be >= 1")
    gt = set(ground_truth)
    ranked = sorted(scores, key=lambda s: (-s.delta, s.pair))
    for rank, s in enumerate(ranked, start=1):
        s.rank = rank
        s.is_ground_truth = s.pair in gt
        s.selected = False

    def passes(s: PairScore) -> bool:
        if s.s_rev == 0.0:
            return s.s_fwd > 0.0
        return s.s_fwd / s.s_rev >= ratio_threshold

    surviving = [s for s in ranked if passes(s)]
    chosen = surviving[:k]
    for s in chosen:
        s.selected = True
    shortfall = k - len(chosen)
    if shortfall > 0:
        warnings.warn(
            f"ratio filter left {len(chosen)} pairs for K={k}; "
            "metrics computed over the surviving set", stacklevel=2)
    tp = sum(1 for s in chosen if s.pair in gt)
    fp = len(chosen) - tp
    return TopKResult(
        k=k, selected=[s.pair for s in chosen], tp=tp, fp=fp,
        precision_at_k=precision_at_k(tp, fp),
        recall_at_k=recall_at_k(tp, len(gt)),
        shortfall=shortfall)


def scores_csv(scores_by_readout: dict[str, list[PairScore]]) -> str:
    """Ranked-pair CSV across readouts."""
    lines = ["pair,readout,s_fwd,s_rev,delta,rank,selected,is_ground_truth"]
    for readout, scores in scores_by_readout.items():
        for s in sorted(scores, key=lambda x: (x.rank if x.rank else 0)):
            lines.append(
                f"{s.pair[0]}->{s.pair[1]},{readout},{s.s_fwd:.10g},"
                f"{s.s_rev:.10g},{s.delta:.10g},{s.rank},"
                f"{int(s.selected)},{int(s.is_ground_truth)}")
    return "\n".join(lines) + "\n"
