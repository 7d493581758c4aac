"""Eigenvector-existence detection by inequality recording.

An order-preserving homogeneous map f on the open positive cone has a
positive eigenvector (with Hilbert-bounded eigenvector set) exactly when
every nonempty proper index subset J admits a positive witness x with

    max_{j in J} f(x)_j / x_j  <  min_{j not in J} f(x)_j / x_j.

The detector samples test points and, for each, records every subset the
point witnesses.  Reading the sorted ratio vector, the witnessed subsets
are precisely the prefixes ending at a strict gap, so one sample records a
nested chain of at most n - 1 subsets.  The run halts once all 2^n - 2
subsets are recorded, which certifies the eigenvector's existence; a
budget-exhausted run proves nothing and is reported as such.

Because each sample contributes a chain and the size-ceil(n/2) subsets
form an antichain, any halting run needs at least C(n, ceil(n/2)) samples.
`chain_schedule` produces deterministic test points, one per chain of a
symmetric chain decomposition, that typically meet this bound exactly on
well-conditioned maps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .geometry import as_positive_vector
from .illumination import symmetric_chain_decomposition
from .maps import (
    DYNAMIC_RANGE_CAP,
    ConeMap,
    evaluate,
    ratio_vector,
    verify_cone_map,
)

SAMPLER_MODES = ("unit-box", "log-uniform", "scheduled")

# Ratios closer than this (relatively) are treated as tied; recording across
# a gap this small could falsely certify an inequality.
RATIO_TIE_RTOL = 1e-12


def recordable_subsets(ratios, rel_tol: float = RATIO_TIE_RTOL) -> list[frozenset[int]]:
    """Subsets witnessed by one ratio vector, smallest first.

    Sorts the ratios and emits the index prefix at every strict gap; gaps
    below `rel_tol` relative are treated as ties and never recorded
    across.  At most n - 1 subsets result and they are nested by
    construction.
    """
    r = np.asarray(ratios, dtype=float)
    order = np.argsort(r, kind="stable")
    recorded: list[frozenset[int]] = []
    members: list[int] = []
    for pos in range(r.size):
        members.append(int(order[pos]) + 1)
        if pos + 1 == r.size:
            break
        cur, nxt = r[order[pos]], r[order[pos + 1]]
        if nxt - cur > rel_tol * nxt:
            recorded.append(frozenset(members))
    return recorded


@dataclass(frozen=True)
class SampleRecord:
    """One detector step: the test point, its ratios, and what it recorded."""

    index: int
    point: tuple[float, ...]
    ratios: tuple[float, ...]
    recorded: tuple[tuple[int, ...], ...]


class SubsetLedger:
    """Recorded nonempty proper subsets plus a capped per-sample history.

    History beyond `history_cap` is dropped; the counters keep the full
    summary either way.
    """

    def __init__(self, n: int, history_cap: int = 1000):
        if n < 1:
            raise ValueError("dimension must be at least 1")
        self.n = n
        self.history_cap = history_cap
        self.recorded: set[frozenset[int]] = set()
        self.history: list[SampleRecord] = []
        self.samples_seen = 0

    @property
    def total(self) -> int:
        return 2**self.n - 2

    def is_complete(self) -> bool:
        return len(self.recorded) == self.total

    def note_sample(self, point, ratios, subsets: Sequence[frozenset[int]]) -> None:
        self.samples_seen += 1
        self.recorded.update(subsets)
        if len(self.history) < self.history_cap:
            self.history.append(
                SampleRecord(
                    index=self.samples_seen,
                    point=tuple(float(v) for v in point),
                    ratios=tuple(float(v) for v in ratios),
                    recorded=tuple(tuple(sorted(s)) for s in subsets),
                )
            )


def record_step(f: ConeMap, x, ledger: SubsetLedger) -> list[frozenset[int]]:
    """Evaluate one test point, record what it witnesses, return the subsets."""
    xv = as_positive_vector(x)
    ratios = ratio_vector(f, xv)
    subsets = recordable_subsets(ratios)
    ledger.note_sample(xv, ratios, subsets)
    return subsets


def min_remaining_lower_bound(ledger: SubsetLedger) -> int:
    """Samples still needed, at minimum.

    The subsets of one fixed size form an antichain while every sample
    records a chain, so each sample can hit at most one subset per size
    level.  The largest per-level deficit is therefore a valid lower
    bound on the remaining sample count.
    """
    n = ledger.n
    if n < 2:
        return 0
    recorded_by_size = [0] * n
    for s in ledger.recorded:
        recorded_by_size[len(s)] += 1
    return max(
        math.comb(n, k) - recorded_by_size[k] for k in range(1, n)
    )


@dataclass(frozen=True)
class SamplerConfig:
    """How the detector draws test points.

    Modes: "unit-box" fixes x_1 = 1 and draws the other coordinates
    uniformly from (0, 1); "log-uniform" fixes x_1 = 1 and draws
    log-coordinates uniformly from (-radius, radius); "scheduled" consumes
    `points` if given, else the chain schedule for `beta`.
    """

    mode: str = "log-uniform"
    radius: float = 3.0
    beta: float = 1000.0
    seed: int = 0
    max_iterations: int = 10000
    history_cap: int = 1000
    points: Optional[tuple[tuple[float, ...], ...]] = None

    def __post_init__(self):
        if self.mode not in SAMPLER_MODES:
            raise ValueError(f"mode must be one of {SAMPLER_MODES}")
        if self.radius <= 0.0:
            raise ValueError("radius must be positive")
        if self.beta <= 1.0:
            raise ValueError("beta must exceed 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        if self.history_cap < 0:
            raise ValueError("history_cap must be nonnegative")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if self.points is not None:
            object.__setattr__(
                self,
                "points",
                tuple(tuple(float(v) for v in p) for p in self.points),
            )


@dataclass(frozen=True)
class DetectionReport:
    """Result of a detection run.

    `halted` implies every nonempty proper subset was recorded.  The
    eigenvector fields are a best-effort estimate attempted only after a
    halt and may be marked unconverged.
    """

    dimension: int
    map_name: str
    config: SamplerConfig
    halted: bool
    samples_used: int
    recorded_count: int
    total_subsets: int
    remaining_lower_bound: int
    recorded_subsets: tuple[tuple[int, ...], ...]
    history: tuple[SampleRecord, ...]
    history_truncated: bool
    eigenvector: Optional[tuple[float, ...]] = None
    eigenvalue: Optional[float] = None
    residual: Optional[float] = None
    eigen_converged: Optional[bool] = None

    def to_dict(self) -> dict:
        estimate = None
        if self.eigenvector is not None:
            estimate = {
                "vector": list(self.eigenvector),
                "eigenvalue": self.eigenvalue,
                "residual": self.residual,
                "converged": self.eigen_converged,
            }
        return {
            "dimension": self.dimension,
            "map": self.map_name,
            "mode": self.config.mode,
            "seed": self.config.seed,
            "radius": self.config.radius,
            "beta": self.config.beta,
            "max_iterations": self.config.max_iterations,
            "halted": self.halted,
            "samples_used": self.samples_used,
            "recorded_count": self.recorded_count,
            "total_subsets": self.total_subsets,
            "remaining_lower_bound": self.remaining_lower_bound,
            "recorded_subsets": [list(s) for s in self.recorded_subsets],
            "eigenvector_estimate": estimate,
            "history_truncated": self.history_truncated,
            "history": [
                {
                    "index": rec.index,
                    "point": list(rec.point),
                    "ratios": list(rec.ratios),
                    "recorded": [list(s) for s in rec.recorded],
                }
                for rec in self.history
            ],
        }


def chain_schedule(n: int, beta: float) -> list[np.ndarray]:
    """Deterministic test points, one per symmetric chain, C(n, ceil(n/2))
    in total.

    Each chain of nonempty proper subsets J_1 < ... < J_k (endpoints of the
    subset lattice removed) yields the point with coordinates beta**level,
    where indices in J_1 sit at level k, each successive difference one
    level lower, and the complement at level 0; the point is rescaled so
    x_1 = 1, which leaves its ratio vector unchanged.  With beta large the
    sorted ratios gap exactly at the level boundaries, so the sample
    records its whole chain.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if beta <= 1.0:
        raise ValueError("beta must exceed 1")
    if beta ** (n - 1) > DYNAMIC_RANGE_CAP:
        raise ValueError(
            f"beta**{n - 1} exceeds the dynamic range cap {DYNAMIC_RANGE_CAP:g}"
        )
    points: list[np.ndarray] = []
    for chain in symmetric_chain_decomposition(n):
        subsets = [
            frozenset(i + 1 for i, b in enumerate(bits) if b)
            for bits in chain
            if 0 < sum(bits) < n
        ]
        if not subsets:
            continue
        k = len(subsets)
        levels = np.zeros(n)
        seen: frozenset[int] = frozenset()
        for depth, J in enumerate(subsets):
            for idx in J - seen:
                levels[idx - 1] = k - depth
            seen = J
        x = beta**levels
        points.append(x / x[0])
    return points


@dataclass(frozen=True)
class EigenEstimate:
    vector: tuple[float, ...]
    eigenvalue: float
    residual: float
    converged: bool
    iterations: int


def estimate_eigenvector(
    f: ConeMap, x0, tol: float = 1e-10, max_iter: int = 1000
) -> EigenEstimate:
    """Best-effort eigenvector search by iterating the normalized map.

    The iteration is only nonexpansive, so there is no convergence
    guarantee; a non-converged result is a status, not an error.  On
    success the eigenvalue is reported as the common ratio f(v)_j / v_j
    (geometric mean; the max/min log-spread is the residual and is at most
    `tol`).
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    x = as_positive_vector(x0)
    iterations = 0
    while True:
        ratios = ratio_vector(f, x)
        residual = float(np.log(ratios.max()) - np.log(ratios.min()))
        if residual <= tol or iterations >= max_iter:
            break
        y = evaluate(f, x)
        x = y / y[-1]
        iterations += 1
    return EigenEstimate(
        vector=tuple(float(v) for v in x),
        eigenvalue=float(np.exp(np.mean(np.log(ratios)))),
        residual=residual,
        converged=residual <= tol,
        iterations=iterations,
    )


def _draw_point(mode: str, rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    x = np.ones(n)
    if mode == "unit-box":
        x[1:] = rng.uniform(0.0, 1.0, n - 1)
        # uniform(0, 1) can return 0.0 exactly; nudge into the open interval
        x[1:] = np.maximum(x[1:], np.finfo(float).tiny)
    else:
        x[1:] = np.exp(rng.uniform(-radius, radius, n - 1))
    return x


def run(f: ConeMap, cfg: SamplerConfig) -> DetectionReport:
    """Run the detection loop until the ledger fills or the budget ends.

    Exhausting the budget is not an error; the report simply carries
    halted=False.  Maps without static validation are first checked
    statistically and an invalid map aborts with a diagnostic.
    """
    n = f.dim
    if not f.statically_validated:
        verify_cone_map(f, seed=(cfg.seed + 1) & 0x7FFFFFFF)
    ledger = SubsetLedger(n, cfg.history_cap)

    halted = ledger.is_complete()  # n == 1 has nothing to record
    if not halted:
        rng = np.random.default_rng(cfg.seed)
        if cfg.mode == "scheduled":
            raw = cfg.points if cfg.points is not None else chain_schedule(n, cfg.beta)
            budget = min(len(raw), cfg.max_iterations)
            points = (as_positive_vector(p) for p in raw[:budget])
        else:
            budget = cfg.max_iterations
            points = (
                _draw_point(cfg.mode, rng, n, cfg.radius) for _ in range(budget)
            )
        for x in points:
            record_step(f, x, ledger)
            if ledger.is_complete():
                halted = True
                break

    if halted and n >= 2:
        # chain/antichain bound: a halting run cannot beat the middle layer
        assert ledger.samples_seen >= math.comb(n, (n + 1) // 2)

    estimate = None
    if halted:
        estimate = estimate_eigenvector(f, np.ones(n))

    return DetectionReport(
        dimension=n,
        map_name=f.name,
        config=cfg,
        halted=halted,
        samples_used=ledger.samples_seen,
        recorded_count=len(ledger.recorded),
        total_subsets=ledger.total,
        remaining_lower_bound=min_remaining_lower_bound(ledger),
        recorded_subsets=tuple(
            sorted((tuple(sorted(s)) for s in ledger.recorded), key=lambda t: (len(t), t))
        ),
        history=tuple(ledger.history),
        history_truncated=ledger.samples_seen > len(ledger.history),
        eigenvector=None if estimate is None else estimate.vector,
        eigenvalue=None if estimate is None else estimate.eigenvalue,
        residual=None if estimate is None else estimate.residual,
        eigen_converged=None if estimate is None else estimate.converged,
    )
