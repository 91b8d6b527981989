"""Simulated annealing of Omega(lambda) with single-cell flips, plus rank-frequency tools."""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from lexinfo import measures
from lexinfo.errors import ConfigError
from lexinfo.lexmatrix import LexicalMatrix, to_edge_list, xlog2x


@dataclass(frozen=True)
class AnnealConfig:
    vs_max: int
    vr_max: int
    lam: float
    steps: int = 5000
    t_initial: float = 1.0
    cooling: float = 0.999
    seed: int = 0
    chains: int = 1

    def __post_init__(self):
        if self.vs_max < 1 or self.vr_max < 1:
            raise ConfigError(f"dimensions must be positive, got {self.vs_max}x{self.vr_max}")
        measures.check_lambda(self.lam)
        if self.steps < 1:
            raise ConfigError("steps must be >= 1")
        if not self.t_initial > 0:
            raise ConfigError("t_initial must be positive")
        if not 0 < self.cooling < 1:
            raise ConfigError("cooling must lie in (0, 1)")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.chains < 1:
            raise ConfigError("chains must be >= 1")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return d


@dataclass(frozen=True)
class TrajectoryPoint:
    step: int
    temperature: float
    cost: float
    m: int
    linked_words: int


@dataclass
class AnnealResult:
    best_matrix: LexicalMatrix
    best_cost: float
    trajectory: list[TrajectoryPoint] = field(repr=False)
    rank_freq: list[float]
    zipf_exponent: float | None
    chain: int = 0
    seed: int = 0

    def to_dict(self) -> dict:
        return {
            "chain": self.chain,
            "chain_seed": self.seed,
            "best_cost": self.best_cost,
            "best_matrix": to_edge_list(self.best_matrix),
            "m": self.best_matrix.m,
            "linked_words": self.best_matrix.n_linked_words,
            "rank_freq": self.rank_freq,
            "zipf_exponent": self.zipf_exponent,
        }


def chain_seed(seed: int, chain: int) -> int:
    """Per-chain seed derived from the run seed; independent of scheduling."""
    return int(np.random.SeedSequence([seed, chain]).generate_state(1, dtype=np.uint64)[0])


def _random_start(cfg: AnnealConfig, rng: random.Random) -> LexicalMatrix:
    n = cfg.vs_max * cfg.vr_max
    while True:
        code = rng.getrandbits(n)
        if code:
            return LexicalMatrix.from_code(cfg.vs_max, cfg.vr_max, code)


def anneal(config: AnnealConfig, chain: int = 0) -> AnnealResult:
    """Metropolis annealing of Omega(lambda) from a uniformly random non-empty matrix.

    Flips that would empty the matrix are rejected but still consume a step.
    Returns the best state visited.
    """
    seed = chain_seed(config.seed, chain)
    rng = random.Random(seed)
    lam = config.lam
    vs, vr = config.vs_max, config.vr_max
    n_cells = vs * vr
    # gain in x log x when a degree goes k -> k + 1
    top = max(vs, vr) + 1
    up = [xlog2x(k + 1) - xlog2x(k) for k in range(top)]

    mat = _random_start(config, rng)
    rows, mu, omega = mat.rows, mat.mu, mat.omega
    cost = measures.omega_from_sums(mat.m, mat.sum_mu_log, mat.sum_omega_log, lam)
    best = mat.copy()
    best_cost = cost
    t = config.t_initial
    trajectory = [TrajectoryPoint(0, t, cost, mat.m, mat.n_linked_words)]

    for step in range(1, config.steps + 1):
        cell = rng.randrange(n_cells)
        i, j = divmod(cell, vr)
        present = rows[i] >> j & 1
        m = mat.m
        if present:
            if m == 1:
                t *= config.cooling
                continue
            new_cost = measures.omega_from_sums(
                m - 1, mat.sum_mu_log - up[mu[i] - 1], mat.sum_omega_log - up[omega[j] - 1], lam
            )
        else:
            new_cost = measures.omega_from_sums(
                m + 1, mat.sum_mu_log + up[mu[i]], mat.sum_omega_log + up[omega[j]], lam
            )
        d = new_cost - cost
        if d <= 0 or rng.random() < math.exp(-d / t):
            if present:
                mat.remove_link(i, j)
            else:
                mat.add_link(i, j)
            cost = measures.omega_from_sums(mat.m, mat.sum_mu_log, mat.sum_omega_log, lam)
            trajectory.append(TrajectoryPoint(step, t, cost, mat.m, mat.n_linked_words))
            if cost < best_cost - 1e-12:
                best_cost = cost
                best = mat.copy()
        t *= config.cooling

    rf = rank_frequency(best)
    return AnnealResult(
        best_matrix=best,
        best_cost=measures.omega_cost(best, lam, recompute=True),
        trajectory=trajectory,
        rank_freq=rf,
        zipf_exponent=zipf_exponent(rf),
        chain=chain,
        seed=seed,
    )


def _anneal_star(args):
    return anneal(*args)


def run_chains(config: AnnealConfig, workers: int = 1) -> list[AnnealResult]:
    """Run ``config.chains`` independent chains; results come back in chain order."""
    jobs = [(config, c) for c in range(config.chains)]
    if workers <= 1 or config.chains == 1:
        return [anneal(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_anneal_star, jobs))


def best_of(results: list[AnnealResult]) -> AnnealResult:
    # ties go to the lowest chain index
    return min(results, key=lambda r: (r.best_cost, r.chain))


def rank_frequency(matrix: LexicalMatrix) -> list[float]:
    m = measures._require_links(matrix)
    return sorted((k / m for k in matrix.mu if k > 0), reverse=True)


def zipf_exponent(rank_freq) -> float | None:
    """Magnitude of the OLS slope of log p against log rank; None with < 3 nonzero ranks."""
    p = np.asarray([x for x in rank_freq if x > 0], dtype=float)
    if p.size < 3:
        return None
    ranks = np.arange(1, p.size + 1, dtype=float)
    slope, _ = np.polyfit(np.log(ranks), np.log(p), 1)
    return abs(float(slope))
