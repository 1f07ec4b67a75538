"""Minimal brain simulator: neuron areas, inter-area connectomes, k-winner-take-all
projection, and multiplicative Hebbian plasticity with per-connectome gain control.

Areas are populations of n neurons of which exactly k fire per step (the winner
set). Every ordered pair of areas is joined by a dense weighted connectome drawn
Bernoulli(connect_p) at weight w_init. Projection accumulates synaptic drive from
one or more active sources into a target area, selects the top-k driven neurons,
and (if plasticity is on) multiplies every synapse between co-active neurons by
(1 + beta) on the contributing connectomes.

All randomness flows through a single seeded generator owned by the Brain, so a
(config, seed, operation sequence) triple reproduces bit-identical state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

INPUT_SUFFIX = ":input"


def input_area_name(area: str) -> str:
    """Name of the stimulus area feeding `area`."""
    return area + INPUT_SUFFIX


@dataclass
class BrainConfig:
    """Construction parameters for a Brain.

    n_per_area/k/connect_p/w_init/baseline_beta govern the variable areas and
    the connectomes between them. The input_* fields govern the stimulus
    pathway (one input area per variable area, feeding it alone): formation
    needs a faster-learning, stronger input anchor than the near-silent
    baseline drift between variable areas.
    """

    n_per_area: int = 1000
    k: int = 100
    connect_p: float = 0.1
    w_init: float = 1.0
    baseline_beta: float = 5e-4
    seed: int = 0
    n_input: int | None = None      # defaults to n_per_area
    input_w_init: float = 4.0
    input_beta: float = 0.05

    def validate(self) -> None:
        if self.n_per_area < 1:
            raise ValueError(f"n_per_area must be >= 1, got {self.n_per_area}")
        if not 1 <= self.k <= self.n_per_area:
            raise ValueError(f"k must be in [1, n_per_area], got k={self.k}")
        if not 0.0 <= self.connect_p <= 1.0:
            raise ValueError(f"connect_p must be in [0, 1], got {self.connect_p}")
        if self.w_init < 0 or self.input_w_init < 0:
            raise ValueError("initial weights must be nonnegative")
        if self.baseline_beta < 0 or self.input_beta < 0:
            raise ValueError("plasticity gains must be nonnegative")
        if self.n_input is not None and self.n_input < 1:
            raise ValueError(f"n_input must be >= 1, got {self.n_input}")


@dataclass
class NeuronArea:
    name: str
    n: int
    k: int
    current_winners: np.ndarray | None = None  # sorted indices, len k when set


@dataclass
class Connectome:
    """Dense synapse matrix from one area to another.

    weights[j, i] is the strength of the synapse from source neuron j to
    target neuron i. beta is the gain currently applied by hebbian_update;
    outside binding windows it equals baseline_beta.
    """

    frm: str
    to: str
    weights: np.ndarray
    beta: float
    baseline_beta: float


def select_topk(values: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k largest entries, ties resolved toward lower index.

    Returns a sorted index array. Equivalent to sorting by (-value, index)
    and keeping the first k, which makes winner selection deterministic
    under fixed weights.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    k = min(k, values.shape[0])
    order = np.argsort(-values, kind="stable")
    return np.sort(order[:k])


def hebbian_update(connectome: Connectome, src_winners: np.ndarray,
                   dst_winners: np.ndarray) -> None:
    """Multiply W[j, i] by (1 + beta) for every co-active pair (j, i).

    beta = 0 is a no-op. Only the winner block is touched; multiplicative
    growth keeps weights nonnegative.
    """
    if connectome.beta == 0.0 or len(src_winners) == 0 or len(dst_winners) == 0:
        return
    block = np.ix_(np.asarray(src_winners), np.asarray(dst_winners))
    connectome.weights[block] *= 1.0 + connectome.beta


class Brain:
    """A set of neuron areas plus all ordered-pair connectomes between them.

    Single-threaded mutable state: no two operations on the same Brain may
    run concurrently. Distinct Brains are independent.
    """

    def __init__(self, config: BrainConfig, areas: list[str]):
        config.validate()
        if len(set(areas)) != len(areas):
            raise ValueError("duplicate area name")
        for name in areas:
            if name.endswith(INPUT_SUFFIX):
                raise ValueError(f"area name may not end with {INPUT_SUFFIX!r}: {name}")
        self.config = config
        self.rng = np.random.default_rng(config.seed)
        self.areas: dict[str, NeuronArea] = {}
        self.connectomes: dict[tuple[str, str], Connectome] = {}
        for name in areas:
            self.areas[name] = NeuronArea(name, config.n_per_area, config.k)
        # fixed pair order keeps the RNG draw sequence reproducible
        for u in areas:
            for v in areas:
                if u != v:
                    self.connectomes[(u, v)] = self._random_connectome(
                        u, v, config.n_per_area, config.n_per_area,
                        config.connect_p, config.w_init, config.baseline_beta)

    def _random_connectome(self, u, v, n_from, n_to, p, w, beta) -> Connectome:
        present = self.rng.random((n_from, n_to)) < p
        weights = present.astype(np.float64) * w
        return Connectome(u, v, weights, beta, beta)

    def area_names(self) -> list[str]:
        """Variable areas only, in creation order (input areas excluded)."""
        return [a for a in self.areas if not a.endswith(INPUT_SUFFIX)]

    def add_input_area(self, area: str, n_input: int | None = None) -> str:
        """Attach a stimulus area feeding `area`; returns its name.

        The input connectome uses the input_* config fields and is the only
        connectome out of the new area.
        """
        if area not in self.areas:
            raise KeyError(f"unknown area {area!r}")
        name = input_area_name(area)
        if name in self.areas:
            return name
        n_in = n_input or self.config.n_input or self.config.n_per_area
        self.areas[name] = NeuronArea(name, n_in, n_in)
        self.connectomes[(name, area)] = self._random_connectome(
            name, area, n_in, self.config.n_per_area, self.config.connect_p,
            self.config.input_w_init, self.config.input_beta)
        return name

    def connectome(self, frm: str, to: str) -> Connectome:
        try:
            return self.connectomes[(frm, to)]
        except KeyError:
            raise KeyError(f"no connectome {frm!r} -> {to!r}") from None

    def project(self, sources, target: str, plasticity_on: bool = True) -> np.ndarray:
        """One projection step into `target`; returns the new sorted winner set.

        sources is a list of (area_name, active_indices) pairs; active_indices
        None means "use that area's current winners". Objects with .area and
        .active attributes (encoder outputs) are accepted too. Drive for each
        target neuron is the summed weight from all active source neurons;
        the k most driven neurons win, ties toward lower index. With
        plasticity on, every contributing connectome gets a Hebbian update
        between its active sources and the new winners at its current beta.
        """
        if target not in self.areas:
            raise KeyError(f"unknown target area {target!r}")
        resolved: list[tuple[str, np.ndarray]] = []
        for src in sources:
            if hasattr(src, "area") and hasattr(src, "active"):
                name, active = src.area, np.asarray(src.active)
            else:
                name, active = src
                if active is None:
                    if self.areas[name].current_winners is None:
                        raise ValueError(f"source area {name!r} has no active winners")
                    active = self.areas[name].current_winners
                active = np.asarray(active)
            if name == target:
                raise ValueError("self-projection rejected")
            if active.size == 0:
                continue
            if active.min() < 0 or active.max() >= self.areas[name].n:
                raise IndexError(f"active index out of range for area {name!r}")
            resolved.append((name, active))
        if not resolved:
            raise ValueError("no active source")

        tgt = self.areas[target]
        drive = np.zeros(tgt.n)
        for name, active in resolved:
            drive += self.connectome(name, target).weights[active, :].sum(axis=0)
        winners = select_topk(drive, tgt.k)
        if plasticity_on:
            for name, active in resolved:
                hebbian_update(self.connectome(name, target), active, winners)
        tgt.current_winners = winners
        return winners

    def update_plasticity(self, frm: str, to: str, new_beta: float) -> None:
        """Set one connectome's gain; all others untouched."""
        if new_beta < 0:
            raise ValueError("beta must be nonnegative")
        self.connectome(frm, to).beta = new_beta

    def restore_plasticity(self) -> None:
        """Reset every connectome's gain to its baseline."""
        for conn in self.connectomes.values():
            conn.beta = conn.baseline_beta

    def connectome_submatrix(self, frm: str, to: str, rows, cols) -> np.ndarray:
        """Read-only copy of the (rows x cols) slice of one connectome."""
        conn = self.connectome(frm, to)
        rows = np.asarray(rows, dtype=np.intp)
        cols = np.asarray(cols, dtype=np.intp)
        n_from, n_to = conn.weights.shape
        if rows.size and (rows.min() < 0 or rows.max() >= n_from):
            raise IndexError("row index out of range")
        if cols.size and (cols.min() < 0 or cols.max() >= n_to):
            raise IndexError("column index out of range")
        out = conn.weights[np.ix_(rows, cols)]
        out.flags.writeable = False
        return out
