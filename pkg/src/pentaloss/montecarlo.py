"""
Seeded Monte Carlo estimates of the effective loss of a concatenated pentagon.

Each shot draws an independent loss flag for every one of the 5**N physical
qubits and resolves the tree bottom-up. Shots are grouped in blocks whose
size depends only on the number of levels; block ``b`` draws from a Philox
stream keyed by ``(seed, b)``. The estimate is therefore identical for any
number of worker processes.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .analytics import iterate_levels, pre_failure
from .code import BASES, build_pentagon_code, recoverable
from .strategy import MeasurementPolicy, NonPreannouncedRecursion, evaluate_outcomes, policy_failure_at

MODES = {"pre": "preannounced", "preannounced": "preannounced", "nonpre": "nonpreannounced", "nonpreannounced": "nonpreannounced"}
MAX_LEVELS = 7
LEAVES_PER_BLOCK = 1 << 21
CSV_HEADER = "mode,p,levels,shots,seed,estimate,stderr,analytic,z"
_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(seed: int, index: int) -> int:
    return splitmix64(seed ^ splitmix64(index))


@dataclass(frozen=True)
class SimConfig:
    mode: str
    p: float
    levels: int
    shots: int
    seed: int = 0
    basis: str = "Z"
    located: bool = False

    def validate(self) -> SimConfig:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0 <= self.p <= 1:
            raise ValueError(f"p must be in [0, 1], got {self.p}")
        if not 1 <= self.levels <= MAX_LEVELS:
            raise ValueError(f"levels must be in 1..{MAX_LEVELS}, got {self.levels}")
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}")
        return replace(self, mode=MODES[self.mode])

    @property
    def shots_per_block(self) -> int:
        return max(1, LEAVES_PER_BLOCK // 5**self.levels)


@dataclass(frozen=True)
class SimReport:
    config: SimConfig
    failures: int
    estimate: float
    stderr: float
    analytic: Optional[float]
    z: Optional[float]
    error: Optional[str] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["config"] = asdict(self.config)
        return d

    def csv_row(self) -> str:
        c = self.config
        fields = [c.mode, repr(c.p), c.levels, c.shots, c.seed, repr(self.estimate), repr(self.stderr), repr(self.analytic), repr(self.z)]
        return ",".join(str(f) for f in fields)


@lru_cache(maxsize=1)
def _default_recursion() -> NonPreannouncedRecursion:
    return NonPreannouncedRecursion()


def default_policies() -> dict[str, MeasurementPolicy]:
    rec = _default_recursion()
    return {b: rec.policy(b) for b in BASES}


def _located_tables() -> np.ndarray:
    """table[b, pattern] is True when logical BASES[b] survives loss ``pattern`` (bit q-1 = qubit q lost)."""
    code = build_pentagon_code()
    table = np.zeros((3, 32), dtype=bool)
    for b, basis in enumerate(BASES):
        for pattern in range(32):
            lost = [q for q in range(1, 6) if (pattern >> (q - 1)) & 1]
            table[b, pattern] = recoverable(code, basis, lost)
    return table


def analytic_value(config: SimConfig, policies=None) -> float:
    cfg = config.validate()
    if cfg.mode == "preannounced" or cfg.located:
        return float(iterate_levels(pre_failure, cfg.p, cfg.levels))
    if policies is None:
        return float(_default_recursion().iterate_vector(cfg.p, cfg.levels)[cfg.basis])
    loss = {b: cfg.p for b in BASES}
    for _ in range(cfg.levels):
        loss = {b: policy_failure_at(policies[b], loss) for b in BASES}
    return loss[cfg.basis]


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def _run_block(cfg: SimConfig, block: int, policies, located_table) -> int:
    start = block * cfg.shots_per_block
    m = min(cfg.shots_per_block, cfg.shots - start)
    rng = _block_rng(cfg.seed, block)
    lost = rng.random((m, 5**cfg.levels)) < cfg.p
    if cfg.mode == "preannounced":
        failed = lost
        for _ in range(cfg.levels):
            failed = failed.reshape(m, -1, 5).sum(axis=2) >= 3
        return int(failed[:, 0].sum())

    # ok[s, node, b]: would a basis-b probe of this node click?
    ok = np.repeat(~lost[:, :, None], 3, axis=2)
    weights = 1 << np.arange(5)
    for _ in range(cfg.levels):
        kids = ok.reshape(m, -1, 5, 3)
        if located_table is not None:
            present = kids.all(axis=3)
            pattern = ((~present) * weights).sum(axis=2)
            ok = np.stack([located_table[b][pattern] for b in range(3)], axis=2)
        else:
            view = [[kids[:, :, q, b] for b in range(3)] for q in range(5)]
            ok = np.stack(
                [np.broadcast_to(evaluate_outcomes(policies[basis], view), kids.shape[:2]) for basis in BASES], axis=2
            )
    return int((~ok[:, 0, BASES.index(cfg.basis)]).sum())


def _run_block_star(args):
    return _run_block(*args)


def run(config: SimConfig, jobs: int = 1, policies: Optional[dict] = None) -> SimReport:
    """Estimate the effective loss for ``config``; ``jobs`` worker processes."""
    cfg = config.validate()
    if cfg.mode == "nonpreannounced" and not cfg.located and policies is None:
        policies = default_policies()
    table = _located_tables() if cfg.located and cfg.mode == "nonpreannounced" else None
    n_blocks = math.ceil(cfg.shots / cfg.shots_per_block)
    tasks = [(cfg, b, policies, table) for b in range(n_blocks)]
    if jobs > 1 and n_blocks > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            failures = sum(pool.map(_run_block_star, tasks))
    else:
        failures = sum(_run_block_star(t) for t in tasks)

    estimate = failures / cfg.shots
    stderr = math.sqrt(estimate * (1 - estimate) / cfg.shots)
    analytic = analytic_value(cfg, policies if cfg.mode == "nonpreannounced" and not cfg.located else None)
    sigma = math.sqrt(analytic * (1 - analytic) / cfg.shots)
    if sigma > 0:
        z = (estimate - analytic) / sigma
    else:
        z = 0.0 if estimate == analytic else math.inf
    return SimReport(cfg, failures, estimate, stderr, analytic, z)


def sweep(configs: Sequence[SimConfig], jobs: int = 1) -> list[SimReport]:
    """Run every config with its seed mixed with its position in the list.

    A config that fails validation yields a report carrying the error
    instead of stopping the sweep.
    """
    if not configs:
        raise ValueError("sweep needs at least one config")
    out = []
    for k, cfg in enumerate(configs):
        sub = replace(cfg, seed=derive_seed(cfg.seed, k))
        try:
            out.append(run(sub, jobs=jobs))
        except ValueError as exc:
            nan = float("nan")
            out.append(SimReport(sub, 0, nan, nan, None, None, error=str(exc)))
    return out
