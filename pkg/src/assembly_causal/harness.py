"""End-to-end experiment orchestration.

A RunConfig fully determines a run: fixture, data generation, encoder,
brain, gain schedule, binding, readout, validation, and seed. run_single
executes the stage pipeline (ingestion -> encoding -> formation -> binding
-> readout -> validation) and returns a RunReport whose JSON serialization
is byte-identical across reruns of the same config + seed. Errors are
tagged with the stage that raised them.

run_robustness sweeps perturbation/stress conditions over seed grids (R1 =
re-drawn source encodings, R2 = per-link bind-beta jitter, R3 = encoding
separation sweep); run_folds partitions the training table and repeats the
pipeline per fold on a fresh brain; run_diagnostic contrasts the adaptive
warm-ramp schedule against the parallel baseline on matched seeds.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
import os
import tempfile
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .binding import (ADAPTIVE_SOFT, PARALLEL_BASELINE, BindingConfig,
                      BindingLog, GainSchedule, run_binding)
from .brain import Brain, BrainConfig
from .encoding import (NEGATIVE, POSITIVE, IndexEncoder, IndexEncodingConfig,
                       RateEncoder, RateEncodingConfig, ValueCategory,
                       separation_scale)
from .fixtures import BUILTIN_FIXTURES
from .formation import Assembly, form_assembly, stability_csv
from .readout import (PROPAGATION, SYNAPTIC, PairScore, TopKResult,
                      rank_and_select, score_all_pairs, scores_csv)
from .scm import DirectedGraph, ObservationTable, ScmDefinition, load_spec
from .scm import sample_observational
from .validation import ValidationReport, run_do_checks

STAGES = ("ingestion", "encoding", "formation", "binding", "readout",
          "validation")


class ConfigError(ValueError):
    """Invalid run configuration (CLI exit code 2)."""


class StageError(RuntimeError):
    """Pipeline failure tagged with the stage that raised it (exit code 3)."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class RunConfig:
    """Complete, serializable description of one run."""

    fixture: str = "alzheimer"       # builtin name or path to a spec JSON
    table_path: str | None = None    # observation CSV; None -> generate
    n_rows: int = 2000

    encoder_mode: str = "rate"       # "rate" or "index"
    p_positive: float = 0.30
    p_negative: float = 0.10
    separation: float | None = None  # overrides p_negative = p_positive / sep
    base_k: int = 100
    index_step: int = 25
    encoding_seed_shift: int = 0     # R1: shifts only the encoding RNG stream

    brain: BrainConfig = field(default_factory=BrainConfig)
    formation_rounds: int = 30
    overlap_thr: float = 0.9
    stable_window: int = 3

    schedule: GainSchedule = field(default_factory=GainSchedule)
    exposures_per_step: int = 2
    gain_enabled: bool = True
    beta_jitter: float = 0.0

    k_top: int | None = None         # None -> ground-truth link count
    ratio_threshold: float = 1.05
    readout: str = "both"            # "synaptic", "propagation", "both"

    validation_pairs: list[list[str]] | None = None  # None -> all GT edges
    n_cf_units: int = 400

    seed: int = 0
    condition: str = "base"

    def validate(self) -> None:
        if self.encoder_mode not in ("rate", "index"):
            raise ConfigError(f"unknown encoder_mode {self.encoder_mode!r}")
        if self.readout not in (SYNAPTIC, PROPAGATION, "both"):
            raise ConfigError(f"unknown readout {self.readout!r}")
        if self.k_top is not None and self.k_top < 1:
            raise ConfigError("k_top must be >= 1")
        if self.n_rows < 1:
            raise ConfigError("n_rows must be >= 1")
        if self.formation_rounds < 0:
            raise ConfigError("formation_rounds must be >= 0")
        if self.ratio_threshold <= 0:
            raise ConfigError("ratio_threshold must be positive")
        try:
            self.brain.validate()
        except ValueError as e:
            raise ConfigError(str(e)) from e

    def to_dict(self) -> dict:
        return _jsonable(dataclasses.asdict(self))

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        doc = dict(doc)
        if "brain" in doc and isinstance(doc["brain"], dict):
            doc["brain"] = BrainConfig(**doc["brain"])
        if "schedule" in doc and isinstance(doc["schedule"], dict):
            doc["schedule"] = GainSchedule(**doc["schedule"])
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**doc)

    def config_hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, float) and math.isnan(obj):
        return None
    return obj


@dataclass
class RunReport:
    config: RunConfig
    config_hash: str
    graph_edges: list[tuple[str, str]]
    topk: dict[str, TopKResult]
    scores: dict[str, list[PairScore]]
    binding: BindingLog
    formation_traces: dict[str, list[float]]
    validation: ValidationReport | None
    runtime_seconds: float = 0.0  # in-memory only; never serialized

    def link_deltas(self, readout: str) -> dict[tuple[str, str], float]:
        """delta per ground-truth link under the given readout."""
        gt = set(self.graph_edges)
        return {s.pair: s.delta for s in self.scores[readout] if s.pair in gt}

    def mean_link_dprop(self) -> float:
        return float(np.mean(list(self.link_deltas(PROPAGATION).values())))

    def perfect(self) -> bool:
        return all(t.precision_at_k == 1.0 and t.recall_at_k == 1.0
                   for t in self.topk.values())

    def to_dict(self) -> dict:
        doc = {
            "schema_version": 1,
            "config": self.config.to_dict(),
            "config_hash": self.config_hash,
            "seed": self.config.seed,
            "condition": self.config.condition,
            "ground_truth": [list(e) for e in self.graph_edges],
            "binding": {
                "warm_rounds": self.binding.warm_rounds,
                "total_rounds": self.binding.total_rounds,
                "betas_applied": self.binding.betas_applied(),
                "mean_overlap_trace": self.binding.mean_overlap_trace(),
            },
            "readouts": {},
            "validation": (self.validation.to_dict()
                           if self.validation is not None else None),
        }
        for name, result in self.topk.items():
            doc["readouts"][name] = {
                "k": result.k,
                "tp": result.tp,
                "fp": result.fp,
                "precision_at_k": result.precision_at_k,
                "recall_at_k": result.recall_at_k,
                "shortfall": result.shortfall,
                "selected": [list(p) for p in result.selected],
                "pairs": [
                    {"pair": list(s.pair), "s_fwd": s.s_fwd, "s_rev": s.s_rev,
                     "delta": s.delta, "rank": s.rank,
                     "selected": s.selected,
                     "is_ground_truth": s.is_ground_truth}
                    for s in sorted(self.scores[name], key=lambda x: x.rank or 0)
                ],
            }
        return _jsonable(doc)


def load_fixture(config: RunConfig) -> tuple[ScmDefinition | None, DirectedGraph]:
    """Resolve the fixture to (scm-with-mechanisms-or-None, graph)."""
    if config.fixture in BUILTIN_FIXTURES:
        scm = BUILTIN_FIXTURES[config.fixture]()
        return scm, scm.graph
    if os.path.exists(config.fixture):
        with open(config.fixture) as fh:
            graph, _ = load_spec(fh.read())
        return None, graph
    raise ConfigError(
        f"fixture {config.fixture!r} is neither builtin "
        f"({sorted(BUILTIN_FIXTURES)}) nor a spec file")


def build_encoder(config: RunConfig, n_input: int):
    if config.encoder_mode == "index":
        return IndexEncoder(IndexEncodingConfig(config.base_k,
                                                config.index_step, n_input))
    cfg = RateEncodingConfig(config.p_positive, config.p_negative, n_input)
    if config.separation is not None:
        cfg = separation_scale(cfg, config.separation)
    rng = np.random.default_rng(
        [config.seed, 101 + config.encoding_seed_shift])
    return RateEncoder(cfg, rng)


def observed_values(table: ObservationTable, graph: DirectedGraph
                    ) -> dict[str, list[int]]:
    out = {}
    for name in graph.names:
        out[name] = sorted(int(v) for v in np.unique(table.column(name)))
    return out


def _value_category(graph: DirectedGraph, var: str, value: int) -> ValueCategory:
    polarity = POSITIVE if value == graph.spec(var).positive_value else NEGATIVE
    return ValueCategory(var, value, polarity)


def run_single(config: RunConfig) -> RunReport:
    """Execute the full pipeline for one config; stage-tagged on failure."""
    t0 = time.perf_counter()
    config.validate()

    def stage(name, fn):
        try:
            return fn()
        except (ConfigError, StageError):
            raise
        except Exception as e:
            raise StageError(name, e) from e

    def ingest():
        scm, graph = load_fixture(config)
        if config.table_path is not None:
            with open(config.table_path) as fh:
                table = ObservationTable.from_csv(fh.read())
            if table.columns != graph.names:
                raise ValueError("table columns do not match fixture variables")
        else:
            if scm is None:
                raise ValueError(
                    "spec-file fixtures carry no mechanisms; provide table_path")
            table = sample_observational(scm, config.n_rows,
                                         seed=config.seed + 1_000_003)
        return scm, graph, table

    scm, graph, table = stage("ingestion", ingest)

    def encode():
        brain_cfg = replace(config.brain, seed=config.seed)
        n_input = brain_cfg.n_input or brain_cfg.n_per_area
        encoder = build_encoder(config, n_input)
        values = observed_values(table, graph)
        for name in graph.names:
            pos = graph.spec(name).positive_value
            if pos not in values[name]:
                raise ValueError(
                    f"positive value {pos} of {name!r} never observed")
        return brain_cfg, encoder, values

    brain_cfg, encoder, values = stage("encoding", encode)

    def form():
        brain = Brain(brain_cfg, graph.names)
        for name in graph.names:
            brain.add_input_area(name)
        traces: dict[str, list[float]] = {}
        positive_assemblies: dict[str, Assembly] = {}
        for name in graph.names:
            for value in values[name]:
                cat = _value_category(graph, name, value)
                if config.formation_rounds == 0:
                    # binding-from-scratch mode: a single plasticity-off
                    # presentation seeds the stored winners
                    winners = brain.project([encoder.encode(cat)], name,
                                            plasticity_on=False)
                    assembly = Assembly(name, cat, winners, 0)
                    trace = []
                else:
                    assembly, trace = form_assembly(
                        brain, cat, encoder, rounds=config.formation_rounds,
                        overlap_thr=config.overlap_thr,
                        stable_window=config.stable_window)
                traces[f"{name}={value}"] = trace
                if cat.polarity == POSITIVE:
                    positive_assemblies[name] = assembly
        return brain, traces, positive_assemblies

    brain, traces, assemblies = stage("formation", form)

    def bind():
        bcfg = BindingConfig(
            links=list(graph.edges), schedule=config.schedule,
            exposures_per_step=config.exposures_per_step,
            gain_enabled=config.gain_enabled,
            beta_jitter=config.beta_jitter, jitter_seed=config.seed)
        return run_binding(brain, bcfg, assemblies, encoder)

    binding_log = stage("binding", bind)

    def read():
        k = config.k_top or len(graph.edges)
        if k < 1:
            raise ValueError("K must be >= 1 (empty ground truth?)")
        wanted = ([SYNAPTIC, PROPAGATION] if config.readout == "both"
                  else [config.readout])
        scores, topk = {}, {}
        for readout in wanted:
            s = score_all_pairs(brain, assemblies, readout)
            scores[readout] = s
            topk[readout] = rank_and_select(s, k, config.ratio_threshold,
                                            list(graph.edges))
        return scores, topk

    scores, topk = stage("readout", read)

    def validate():
        if scm is None:
            return None
        pairs = ([tuple(p) for p in config.validation_pairs]
                 if config.validation_pairs is not None else None)
        return run_do_checks(scm, table, pairs=pairs,
                             n_cf_units=config.n_cf_units,
                             seed=config.seed + 2_000_003)

    validation = stage("validation", validate)

    return RunReport(
        config=config, config_hash=config.config_hash(),
        graph_edges=list(graph.edges), topk=topk, scores=scores,
        binding=binding_log, formation_traces=traces, validation=validation,
        runtime_seconds=time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# robustness grid


@dataclass
class ConditionSummary:
    condition: str
    runs: int
    failures: int
    tp_mean: float
    fp_mean: float
    dprop_mean: float
    dprop_sd: float
    pass_rate: float


@dataclass
class RobustnessSummary:
    base_hash: str
    conditions: list[ConditionSummary] = field(default_factory=list)
    run_records: list[dict] = field(default_factory=list)

    def condition_named(self, label: str) -> ConditionSummary:
        for c in self.conditions:
            if c.condition == label:
                return c
        raise KeyError(label)

    def to_csv(self) -> str:
        lines = ["condition,runs,tp_mean,fp_mean,dprop_mean,dprop_sd"]
        for c in self.conditions:
            lines.append(f"{c.condition},{c.runs},{c.tp_mean:.6g},"
                         f"{c.fp_mean:.6g},{c.dprop_mean:.6g},{c.dprop_sd:.6g}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return _jsonable({
            "schema_version": 1,
            "base_hash": self.base_hash,
            "conditions": [dataclasses.asdict(c) for c in self.conditions],
            "runs": self.run_records,
        })


R3_SEPARATIONS = {"base_15x": 15.0, "milder_10x": 10.0, "harder_6.7x": 6.7}


def default_r3_conditions() -> list[dict]:
    return [{"label": label, "separation": sep}
            for label, sep in R3_SEPARATIONS.items()]


def apply_condition(base: RunConfig, condition: dict, seed: int) -> RunConfig:
    """Base config + one condition's overrides + the seed."""
    overrides = {k: v for k, v in condition.items() if k != "label"}
    cfg = replace(base, seed=seed, condition=condition.get("label", "base"))
    for key, value in overrides.items():
        if not hasattr(cfg, key):
            raise ConfigError(f"condition override {key!r} is not a config field")
        cfg = replace(cfg, **{key: value})
    return cfg


def run_robustness(base_config: RunConfig, conditions: list[dict] | None,
                   seeds: list[int]) -> RobustnessSummary:
    """Run the condition x seed grid and aggregate.

    Per-run failures are recorded, not fatal. Aggregates are recomputed from
    the per-run records; a record whose config hash does not match the
    expected derived config is rejected outright.
    """
    conditions = conditions if conditions is not None else default_r3_conditions()
    summary = RobustnessSummary(base_hash=base_config.config_hash())
    for condition in conditions:
        label = condition.get("label", "condition")
        records = []
        for seed in seeds:
            cfg = apply_condition(base_config, condition, seed)
            expected_hash = cfg.config_hash()
            record = {"condition": label, "seed": seed,
                      "config_hash": expected_hash}
            try:
                report = run_single(cfg)
            except StageError as e:
                record.update({"failed": True, "stage": e.stage,
                               "error": str(e.cause)})
                records.append(record)
                continue
            if report.config_hash != expected_hash:
                raise ConfigError("mixed config hashes in aggregation")
            prop = report.topk.get(PROPAGATION) or next(iter(report.topk.values()))
            record.update({
                "failed": False,
                "tp": prop.tp, "fp": prop.fp,
                "precision": {k: t.precision_at_k for k, t in report.topk.items()},
                "recall": {k: t.recall_at_k for k, t in report.topk.items()},
                "dprop_mean": report.mean_link_dprop(),
                "perfect": report.perfect(),
                "link_dprop": {f"{u}->{v}": d for (u, v), d
                               in report.link_deltas(PROPAGATION).items()},
            })
            records.append(record)
        ok = [r for r in records if not r["failed"]]
        dprops = [r["dprop_mean"] for r in ok]
        summary.conditions.append(ConditionSummary(
            condition=label, runs=len(records),
            failures=len(records) - len(ok),
            tp_mean=float(np.mean([r["tp"] for r in ok])) if ok else float("nan"),
            fp_mean=float(np.mean([r["fp"] for r in ok])) if ok else float("nan"),
            dprop_mean=float(np.mean(dprops)) if dprops else float("nan"),
            dprop_sd=float(np.std(dprops, ddof=1)) if len(dprops) > 1 else 0.0,
            pass_rate=float(np.mean([r["perfect"] for r in ok])) if ok else 0.0))
        summary.run_records.extend(records)
    return summary


# ---------------------------------------------------------------------------
# fold partitions


def fold_indices(n_rows: int, n_folds: int, seed: int) -> list[np.ndarray]:
    """Deterministic disjoint row partition; same seed, same folds."""
    if n_folds < 2:
        raise ConfigError("n_folds must be >= 2")
    if n_rows < n_folds:
        raise ValueError(f"too few rows ({n_rows}) for {n_folds} folds")
    perm = np.random.default_rng([seed, 55]).permutation(n_rows)
    return [np.sort(chunk) for chunk in np.array_split(perm, n_folds)]


@dataclass
class FoldReport:
    base_hash: str
    n_folds: int
    fold_records: list[dict] = field(default_factory=list)

    def precision_list(self, readout: str) -> list[float]:
        return [r["precision"][readout] for r in self.fold_records
                if not r["failed"]]

    def to_dict(self) -> dict:
        ok = [r for r in self.fold_records if not r["failed"]]
        doc = {"schema_version": 1, "base_hash": self.base_hash,
               "n_folds": self.n_folds, "folds": self.fold_records}
        if ok:
            per = {}
            for readout in ok[0]["precision"]:
                vals = [r["precision"][readout] for r in ok]
                per[readout] = {"mean": float(np.mean(vals)),
                                "sd": float(np.std(vals, ddof=1))
                                      if len(vals) > 1 else 0.0}
            doc["precision_summary"] = per
        return _jsonable(doc)


def run_folds(config: RunConfig, n_folds: int) -> FoldReport:
    """Partition the training table and run the pipeline per fold.

    Each fold gets a fresh brain (independent seed) trained on its own row
    subset; per-fold failures are recorded, not fatal.
    """
    config.validate()
    scm, graph = load_fixture(config)
    if config.table_path is not None:
        with open(config.table_path) as fh:
            table = ObservationTable.from_csv(fh.read())
    else:
        if scm is None:
            raise ConfigError("spec-file fixture needs table_path for folds")
        table = sample_observational(scm, config.n_rows,
                                     seed=config.seed + 1_000_003)
    folds = fold_indices(table.n_rows, n_folds, config.seed)
    report = FoldReport(base_hash=config.config_hash(), n_folds=n_folds)
    for i, rows in enumerate(folds):
        sub = table.subset(rows)
        fold_cfg = replace(config, seed=config.seed + 7919 * (i + 1),
                           condition=f"fold_{i}")
        record = {"fold": i, "rows": int(rows.shape[0]),
                  "seed": fold_cfg.seed}
        try:
            fold_report = _run_with_table(fold_cfg, sub)
            record.update({
                "failed": False,
                "precision": {k: t.precision_at_k
                              for k, t in fold_report.topk.items()},
                "recall": {k: t.recall_at_k
                           for k, t in fold_report.topk.items()},
            })
        except StageError as e:
            record.update({"failed": True, "stage": e.stage,
                           "error": str(e.cause)})
        report.fold_records.append(record)
    return report


def _run_with_table(config: RunConfig, table: ObservationTable) -> RunReport:
    """run_single against an in-memory table (fold machinery)."""
    with tempfile.NamedTemporaryFile("w", suffix=".csv", delete=False) as fh:
        fh.write(table.to_csv())
        path = fh.name
    try:
        return run_single(replace(config, table_path=path))
    finally:
        os.unlink(path)


# ---------------------------------------------------------------------------
# warm-ramp vs parallel diagnostic


@dataclass
class DiagnosticReport:
    seeds: list[int]
    adaptive_late: list[float]
    parallel_late: list[float]
    tail_rounds: int

    @property
    def adaptive_median(self) -> float:
        return float(np.median(self.adaptive_late))

    @property
    def parallel_median(self) -> float:
        return float(np.median(self.parallel_late))

    @property
    def contrast_holds(self) -> bool:
        return self.parallel_median < self.adaptive_median

    def to_csv(self) -> str:
        lines = ["seed,adaptive_late_overlap,parallel_late_overlap"]
        for s, a, p in zip(self.seeds, self.adaptive_late, self.parallel_late):
            lines.append(f"{s},{a:.6f},{p:.6f}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return _jsonable({
            "schema_version": 1, "seeds": self.seeds,
            "tail_rounds": self.tail_rounds,
            "adaptive_late": self.adaptive_late,
            "parallel_late": self.parallel_late,
            "adaptive_median": self.adaptive_median,
            "parallel_median": self.parallel_median,
            "contrast_holds": self.contrast_holds})


def late_round_overlap(log: BindingLog, tail: int = 5) -> float:
    trace = log.mean_overlap_trace()
    return float(np.mean(trace[-tail:])) if trace else float("nan")


def run_diagnostic(base_config: RunConfig, seeds: list[int],
                   tail: int = 5) -> DiagnosticReport:
    """Adaptive warm-ramp vs parallel baseline on matched seeds.

    Both arms run with binding concurrent to formation from scratch
    (formation_rounds = 0), which is the regime where the schedules
    actually differ; the statistic is the mean winner overlap over each
    run's final rounds.
    """
    adaptive, parallel = [], []
    for seed in seeds:
        common = replace(base_config, formation_rounds=0, seed=seed)
        a_cfg = replace(common, condition="adaptive",
                        schedule=replace(base_config.schedule,
                                         mode=ADAPTIVE_SOFT))
        p_cfg = replace(common, condition="parallel",
                        schedule=replace(base_config.schedule,
                                         mode=PARALLEL_BASELINE))
        adaptive.append(late_round_overlap(run_single(a_cfg).binding, tail))
        parallel.append(late_round_overlap(run_single(p_cfg).binding, tail))
    return DiagnosticReport(list(seeds), adaptive, parallel, tail)


# ---------------------------------------------------------------------------
# output emission


def _write(path: str, text: str) -> str:
    with open(path, "w") as fh:
        fh.write(text)
    return path


def emit_outputs(obj, out_dir: str) -> list[str]:
    """Write the documented output files for a report object.

    RunReport -> report.json, ranked_pairs.csv, binding_trajectory.csv,
    stability_heatmap.csv, validation_report.json. RobustnessSummary ->
    robustness_summary.csv + robustness_report.json. FoldReport and
    DiagnosticReport -> their JSON/CSV pair. JSON output is deterministic
    (sorted keys, no timestamps).
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = []

    def j(doc) -> str:
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    if isinstance(obj, RunReport):
        paths.append(_write(os.path.join(out_dir, "report.json"),
                            j(obj.to_dict())))
        paths.append(_write(os.path.join(out_dir, "ranked_pairs.csv"),
                            scores_csv(obj.scores)))
        paths.append(_write(os.path.join(out_dir, "binding_trajectory.csv"),
                            obj.binding.to_csv()))
        paths.append(_write(os.path.join(out_dir, "stability_heatmap.csv"),
                            stability_csv(obj.formation_traces)))
        vdoc = (obj.validation.to_dict() if obj.validation is not None
                else {"skipped": True})
        vdoc["config_hash"] = obj.config_hash
        paths.append(_write(os.path.join(out_dir, "validation_report.json"),
                            j(vdoc)))
    elif isinstance(obj, RobustnessSummary):
        paths.append(_write(os.path.join(out_dir, "robustness_summary.csv"),
                            obj.to_csv()))
        paths.append(_write(os.path.join(out_dir, "robustness_report.json"),
                            j(obj.to_dict())))
    elif isinstance(obj, FoldReport):
        paths.append(_write(os.path.join(out_dir, "folds_report.json"),
                            j(obj.to_dict())))
    elif isinstance(obj, DiagnosticReport):
        paths.append(_write(os.path.join(out_dir, "diagnostic.csv"),
                            obj.to_csv()))
        paths.append(_write(os.path.join(out_dir, "diagnostic_report.json"),
                            j(obj.to_dict())))
    else:
        raise TypeError(f"cannot emit outputs for {type(obj).__name__}")
    return paths
