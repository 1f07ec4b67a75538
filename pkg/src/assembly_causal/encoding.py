"""Categorical-value encoders producing neural input patterns.

Two interchangeable modes:

* rate: every input neuron fires independently with a polarity-dependent
  probability (default 0.30 positive / 0.10 negative), so the stimulus is
  carried by the total firing count and varies stochastically per
  presentation.
* index: each (variable, value) owns a fixed block of input indices of size
  base_k + value_index * step, fully deterministic across presentations.
  Value-dependent sizes keep distinct values distinguishable.

Either output feeds Brain.project unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .brain import input_area_name

POSITIVE = "positive"
NEGATIVE = "negative"


@dataclass(frozen=True)
class ValueCategory:
    """One categorical state of one variable, tagged with its polarity."""

    variable: str
    value_index: int
    polarity: str  # POSITIVE or NEGATIVE

    def __post_init__(self):
        if self.value_index < 0:
            raise ValueError("value_index must be >= 0")
        if self.polarity not in (POSITIVE, NEGATIVE):
            raise ValueError(f"unknown polarity {self.polarity!r}")


@dataclass(frozen=True)
class RateEncodingConfig:
    p_positive: float = 0.30
    p_negative: float = 0.10
    n: int = 1000

    def __post_init__(self):
        if not 0.0 <= self.p_negative < self.p_positive <= 1.0:
            raise ValueError(
                f"need 0 <= p_negative < p_positive <= 1, got "
                f"({self.p_negative}, {self.p_positive})")
        if self.n < 1:
            raise ValueError("n must be >= 1")


@dataclass(frozen=True)
class IndexEncodingConfig:
    base_k: int = 100
    step: int = 25
    n: int = 1000

    def __post_init__(self):
        if self.base_k < 1 or self.step < 0:
            raise ValueError("need base_k >= 1 and step >= 0")
        if self.n < 1:
            raise ValueError("n must be >= 1")


@dataclass
class ExternalInput:
    """Active indices to inject into one area."""

    area: str
    active: np.ndarray


def encode_rate(value: ValueCategory, cfg: RateEncodingConfig,
                rng: np.random.Generator) -> ExternalInput:
    """Bernoulli firing pattern at the polarity's rate; fresh draw per call."""
    p = cfg.p_positive if value.polarity == POSITIVE else cfg.p_negative
    active = np.flatnonzero(rng.random(cfg.n) < p)
    return ExternalInput(input_area_name(value.variable), active)


def index_block(value_index: int, cfg: IndexEncodingConfig) -> np.ndarray:
    """Fixed contiguous index block for one value: disjoint blocks laid out
    in value order, block i sized base_k + i * step."""
    start = value_index * cfg.base_k + cfg.step * (value_index * (value_index - 1) // 2)
    size = cfg.base_k + value_index * cfg.step
    if start + size > cfg.n:
        raise ValueError(
            f"index blocks through value {value_index} need {start + size} "
            f"input neurons but the area has {cfg.n}")
    return np.arange(start, start + size)


def encode_index(value: ValueCategory, cfg: IndexEncodingConfig) -> ExternalInput:
    """Deterministic index-set pattern; same indices on every call."""
    return ExternalInput(input_area_name(value.variable),
                         index_block(value.value_index, cfg))


def separation_scale(cfg: RateEncodingConfig, factor: float) -> RateEncodingConfig:
    """Config whose positive:negative rate ratio equals `factor`.

    p_positive is held fixed; p_negative = p_positive / factor. Larger
    factors separate the polarities more.
    """
    if factor <= 1.0:
        raise ValueError("separation factor must exceed 1")
    p_neg = cfg.p_positive / factor
    return replace(cfg, p_negative=p_neg)


class RateEncoder:
    """Stateful wrapper binding a rate config to an RNG stream."""

    mode = "rate"

    def __init__(self, cfg: RateEncodingConfig, rng: np.random.Generator):
        self.cfg = cfg
        self.rng = rng

    def encode(self, value: ValueCategory) -> ExternalInput:
        return encode_rate(value, self.cfg, self.rng)

    @property
    def n(self) -> int:
        return self.cfg.n


class IndexEncoder:
    """Deterministic index-set encoder (no RNG)."""

    mode = "index"

    def __init__(self, cfg: IndexEncodingConfig):
        self.cfg = cfg

    def encode(self, value: ValueCategory) -> ExternalInput:
        return encode_index(value, self.cfg)

    @property
    def n(self) -> int:
        return self.cfg.n
