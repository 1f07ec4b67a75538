"""Directed binding: internalize supervised edges as synaptic asymmetry.

For each supervised link (u, v), source and target assemblies are repeatedly
co-activated while the forward connectome's plasticity gain is temporarily
raised; the reverse connectome keeps its baseline gain, so forward
cross-weights outgrow reverse ones. Co-activation re-presents both input
patterns: the source area is driven by its own stimulus, the target by its
stimulus plus the source's projection, which is what ultimately lets a
trained connectome route activation forward on its own.

The gain follows a warm-ramp schedule. In adaptive_soft mode binding starts
at a conservative warm gain while per-round winner overlap is monitored;
once every bound assembly holds overlap >= overlap_thr for stable_window
consecutive rounds (or the warmup cap is hit), the gain rises linearly from
beta_start = max(warm_beta, 0.06) to max_beta over ramp_steps rounds. The
parallel_baseline mode applies max_beta from round one with no warmup; it
exists as the failure-mode contrast, not as a recommended setting.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .brain import Brain, hebbian_update
from .formation import Assembly, winner_overlap

ADAPTIVE_SOFT = "adaptive_soft"
PARALLEL_BASELINE = "parallel_baseline"


@dataclass
class GainSchedule:
    mode: str = ADAPTIVE_SOFT
    warm_beta: float = 0.09
    max_beta: float = 0.16
    ramp_steps: int = 20
    overlap_thr: float = 0.9
    stable_window: int = 3
    warmup_cap: int = 15

    def __post_init__(self):
        if self.mode not in (ADAPTIVE_SOFT, PARALLEL_BASELINE):
            raise ValueError(f"unknown schedule mode {self.mode!r}")
        if self.warm_beta > self.max_beta:
            raise ValueError("warm_beta must not exceed max_beta")
        if self.ramp_steps < 2:
            raise ValueError("ramp_steps must be >= 2")
        if self.warmup_cap < 1 or self.stable_window < 1:
            raise ValueError("warmup_cap and stable_window must be >= 1")
        if not 0.0 < self.overlap_thr <= 1.0:
            raise ValueError("overlap_thr must be in (0, 1]")

    @property
    def beta_start(self) -> float:
        return max(self.warm_beta, 0.06)


def ramp_beta(schedule: GainSchedule, s: int) -> float:
    """Gain at ramp step s (1-based): linear from beta_start to max_beta."""
    R = schedule.ramp_steps
    if not 1 <= s <= R:
        raise ValueError(f"ramp step {s} outside 1..{R}")
    b0 = schedule.beta_start
    return b0 + (s - 1) / (R - 1) * (schedule.max_beta - b0)


@dataclass
class BindingConfig:
    links: list[tuple[str, str]]
    schedule: GainSchedule = field(default_factory=GainSchedule)
    exposures_per_step: int = 2
    # gain_enabled=False is the null control: the binding loop runs
    # unchanged but the forward gain is never raised above baseline.
    gain_enabled: bool = True
    # R2 robustness: multiplicative jitter amplitude on per-link bind beta.
    beta_jitter: float = 0.0
    jitter_seed: int = 0

    def __post_init__(self):
        if self.exposures_per_step < 0:
            raise ValueError("exposures_per_step must be >= 0")
        if not 0.0 <= self.beta_jitter < 1.0:
            raise ValueError("beta_jitter must be in [0, 1)")


@dataclass
class BindingLogEntry:
    link: tuple[str, str]
    step: int              # global round index, 1-based
    phase: str             # "warm" or "ramp"
    beta: float
    src_overlap: float     # exposure winners vs the episode's starting assembly
    dst_overlap: float
    fwd_mean: float        # mean forward cross-assembly weight after the step
    rev_mean: float


class DriftTracker:
    """Winner drift across repeated presentations of the same pattern.

    Every presentation of a variable's pattern reports its winner set; the
    per-round statistic is each variable's minimum overlap between
    consecutive presentations, so flip-flopping between conflicting
    attractors inside a round is visible even when round-end states repeat.
    """

    def __init__(self):
        self._last: dict[str, np.ndarray] = {}
        self._round_min: dict[str, float] = {}

    def observe(self, var: str, winners: np.ndarray) -> None:
        if var in self._last:
            o = winner_overlap(winners, self._last[var])
            self._round_min[var] = min(self._round_min.get(var, 1.0), o)
        self._last[var] = winners

    def end_round(self, monitored: list[str]) -> dict[str, float]:
        out = {var: self._round_min.get(var, 1.0) for var in monitored}
        self._round_min = {}
        return out


@dataclass
class BindingLog:
    entries: list[BindingLogEntry] = field(default_factory=list)
    # per round: {variable: overlap with previous round's winners}
    round_overlaps: list[dict[str, float]] = field(default_factory=list)
    warm_rounds: int = 0
    total_rounds: int = 0

    def betas_applied(self) -> list[float]:
        """The per-round gain sequence (first link's entries)."""
        if not self.entries:
            return []
        first = self.entries[0].link
        return [e.beta for e in self.entries if e.link == first]

    def mean_overlap_trace(self) -> list[float]:
        return [float(np.mean(list(r.values()))) for r in self.round_overlaps]

    def to_csv(self) -> str:
        lines = ["link,step,beta,fwd_mean,rev_mean,overlap"]
        for e in self.entries:
            lines.append(
                f"{e.link[0]}->{e.link[1]},{e.step},{e.beta:.10g},"
                f"{e.fwd_mean:.10g},{e.rev_mean:.10g},"
                f"{min(e.src_overlap, e.dst_overlap):.6f}")
        return "\n".join(lines) + "\n"


def block_mean(brain: Brain, frm: str, to: str, rows: np.ndarray,
               cols: np.ndarray) -> float:
    return float(brain.connectome(frm, to).weights[np.ix_(rows, cols)].mean())


def bind_link(brain: Brain, link: tuple[str, str],
              assemblies: dict[str, Assembly], beta: float, exposures: int,
              encoder, step: int = 0, phase: str = "warm",
              tracker: DriftTracker | None = None) -> BindingLogEntry:
    """One binding episode for (u, v) at forward gain `beta`.

    Temporarily raises the u->v gain, co-activates the stored assemblies for
    `exposures` presentations (updating them to the fresh winners), applies
    the reverse v->u update at that connectome's own (baseline) gain, then
    restores the forward gain. Returns the log entry for this episode.
    """
    u, v = link
    if u not in assemblies or v not in assemblies:
        raise KeyError(f"link ({u}, {v}) has an unformed assembly")
    a_u, a_v = assemblies[u], assemblies[v]
    fwd = brain.connectome(u, v)
    rev = brain.connectome(v, u)
    start_u, start_v = a_u.winners, a_v.winners
    prev_beta = fwd.beta
    brain.update_plasticity(u, v, beta)
    try:
        for _ in range(exposures):
            new_u = brain.project([encoder.encode(a_u.value)], u,
                                  plasticity_on=True)
            new_v = brain.project([encoder.encode(a_v.value), (u, new_u)], v,
                                  plasticity_on=True)
            hebbian_update(rev, new_v, new_u)
            a_u.winners, a_v.winners = new_u, new_v
            if tracker is not None:
                tracker.observe(u, new_u)
                tracker.observe(v, new_v)
    finally:
        brain.update_plasticity(u, v, prev_beta)
    return BindingLogEntry(
        link=link, step=step, phase=phase, beta=beta,
        src_overlap=winner_overlap(a_u.winners, start_u),
        dst_overlap=winner_overlap(a_v.winners, start_v),
        fwd_mean=block_mean(brain, u, v, a_u.winners, a_v.winners),
        rev_mean=block_mean(brain, v, u, a_v.winners, a_u.winners),
    )


def _link_betas(config: BindingConfig, base_beta: float) -> dict[tuple, float]:
    """Per-link bind beta, optionally jittered (R2 perturbation)."""
    if config.beta_jitter == 0.0:
        return {link: base_beta for link in config.links}
    rng = np.random.default_rng(config.jitter_seed)
    factors = 1.0 + config.beta_jitter * (2.0 * rng.random(len(config.links)) - 1.0)
    return {link: base_beta * f for link, f in zip(config.links, factors)}


def run_binding(brain: Brain, config: BindingConfig,
                assemblies: dict[str, Assembly], encoder) -> BindingLog:
    """Drive the full binding schedule over all supervised links.

    Each round interleaves one formation pass (every bound variable's
    pattern re-presented, input pathway only) with one binding episode per
    link, then records per-variable winner overlap against the previous
    round. adaptive_soft holds warm_beta until the stability criterion (or
    warmup_cap) is met and then walks the ramp; parallel_baseline applies
    max_beta for warmup_cap + ramp_steps rounds. All plasticity gains are
    back at baseline when this returns.
    """
    sched = config.schedule
    monitored: list[str] = []
    for u, v in config.links:
        for name in (u, v):
            if name not in monitored:
                monitored.append(name)
    for name in monitored:
        if name not in assemblies:
            raise KeyError(f"no formed assembly for {name!r}")

    baseline = brain.config.baseline_beta
    log = BindingLog()
    tracker = DriftTracker()
    jitter_cache: dict[float, dict] = {}

    def round_beta(phase: str, ramp_s: int) -> float:
        if not config.gain_enabled:
            return baseline
        if sched.mode == PARALLEL_BASELINE:
            return sched.max_beta
        return sched.warm_beta if phase == "warm" else ramp_beta(sched, ramp_s)

    def one_round(step: int, phase: str, ramp_s: int = 0) -> None:
        for name in monitored:
            a = assemblies[name]
            winners = brain.project([encoder.encode(a.value)], name,
                                    plasticity_on=True)
            a.winners = winners
            tracker.observe(name, winners)
        base = round_beta(phase, ramp_s)
        if base not in jitter_cache:
            jitter_cache[base] = _link_betas(config, base)
        for link in config.links:
            log.entries.append(bind_link(
                brain, link, assemblies, jitter_cache[base][link],
                config.exposures_per_step, encoder, step=step, phase=phase,
                tracker=tracker))
        log.round_overlaps.append(tracker.end_round(monitored))

    step = 0
    if sched.mode == ADAPTIVE_SOFT:
        stable_run = 0
        while step < sched.warmup_cap:
            step += 1
            one_round(step, "warm")
            ok = all(o >= sched.overlap_thr
                     for o in log.round_overlaps[-1].values())
            stable_run = stable_run + 1 if ok else 0
            if stable_run >= sched.stable_window:
                break
        log.warm_rounds = step
        for s in range(1, sched.ramp_steps + 1):
            step += 1
            one_round(step, "ramp", ramp_s=s)
    else:
        log.warm_rounds = 0
        for _ in range(sched.warmup_cap + sched.ramp_steps):
            step += 1
            one_round(step, "parallel")
    log.total_rounds = step
    brain.restore_plasticity()
    return log
