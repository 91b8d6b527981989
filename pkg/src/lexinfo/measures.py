"""Entropies, mutual information, code length and the Omega cost of a matrix.

The joint distribution is ``p_ij = a_ij / M``, so every quantity reduces to
the degree sums kept by :class:`~lexinfo.lexmatrix.LexicalMatrix`.  All values
are in bits; multiply by :data:`NATS_PER_BIT` for nats.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import asdict, dataclass
from typing import Sequence

from lexinfo.errors import ConfigError, UndefinedMeasureError
from lexinfo.lexmatrix import LexicalMatrix

NATS_PER_BIT = math.log(2)
TOL = 1e-9


def check_lambda(lam: float) -> float:
    lam = float(lam)
    if not (0.0 <= lam <= 1.0) or math.isnan(lam):
        raise ConfigError(f"lambda must lie in [0, 1], got {lam}")
    return lam


def _require_links(matrix: LexicalMatrix) -> int:
    if matrix.m < 1:
        raise UndefinedMeasureError("undefined measures for empty mapping")
    return matrix.m


def _sums(matrix: LexicalMatrix, recompute: bool) -> tuple[float, float]:
    if recompute:
        return matrix.recompute_accumulators()
    return matrix.sum_mu_log, matrix.sum_omega_log


def joint_prob(matrix: LexicalMatrix, i: int, j: int) -> float:
    m = _require_links(matrix)
    return 1.0 / m if matrix.has_link(i, j) else 0.0


def word_prob(matrix: LexicalMatrix, i: int) -> float:
    m = _require_links(matrix)
    return matrix.mu[i] / m


def entropy_words(matrix: LexicalMatrix, *, recompute: bool = False) -> float:
    """H(S) = log M - (1/M) sum mu_i log mu_i."""
    m = _require_links(matrix)
    s_mu, _ = _sums(matrix, recompute)
    return math.log2(m) - s_mu / m


def cond_entropy_words(matrix: LexicalMatrix, *, recompute: bool = False) -> float:
    """H(S|R) = (1/M) sum omega_j log omega_j."""
    m = _require_links(matrix)
    _, s_omega = _sums(matrix, recompute)
    return s_omega / m


def mutual_info(matrix: LexicalMatrix, *, recompute: bool = False) -> float:
    m = _require_links(matrix)
    s_mu, s_omega = _sums(matrix, recompute)
    return math.log2(m) - (s_mu + s_omega) / m


def huffman_lengths(weights: Sequence[float], single_symbol_length: int = 0) -> list[int]:
    """Codeword lengths of a binary Huffman code for positive ``weights``.

    A lone symbol is a one-leaf tree and gets ``single_symbol_length``.
    """
    n = len(weights)
    if n == 0:
        return []
    if n == 1:
        return [single_symbol_length]
    lengths = [0] * n
    # (weight, tiebreak, leaf indices under this node)
    heap = [(w, idx, [idx]) for idx, w in enumerate(weights)]
    heapq.heapify(heap)
    counter = n
    while len(heap) > 1:
        w1, _, leaves1 = heapq.heappop(heap)
        w2, _, leaves2 = heapq.heappop(heap)
        for leaf in leaves1:
            lengths[leaf] += 1
        for leaf in leaves2:
            lengths[leaf] += 1
        heapq.heappush(heap, (w1 + w2, counter, leaves1 + leaves2))
        counter += 1
    return lengths


def code_length(matrix: LexicalMatrix, *, single_symbol_length: int = 0) -> float:
    """Mean Huffman code length L(S) over the linked words, in bits."""
    m = _require_links(matrix)
    degrees = [k for k in matrix.mu if k > 0]
    lengths = huffman_lengths(degrees, single_symbol_length)
    return sum(k * l for k, l in zip(degrees, lengths)) / m


def omega_cost(matrix: LexicalMatrix, lam: float, *, recompute: bool = False) -> float:
    """Omega(lambda) = (1 - 2 lambda) H(S) + lambda H(S|R)."""
    lam = check_lambda(lam)
    h = entropy_words(matrix, recompute=recompute)
    hc = cond_entropy_words(matrix, recompute=recompute)
    return (1.0 - 2.0 * lam) * h + lam * hc


def omega_cost_mixture(matrix: LexicalMatrix, lam: float) -> float:
    """Omega(lambda) through its definition ``-lambda I + (1 - lambda) H(S)``."""
    lam = check_lambda(lam)
    return -lam * mutual_info(matrix) + (1.0 - lam) * entropy_words(matrix)


def omega_from_sums(m: int, s_mu: float, s_omega: float, lam: float) -> float:
    """Omega(lambda) from raw degree sums, used by the annealer's inner loop."""
    return (1.0 - 2.0 * lam) * (math.log2(m) - s_mu / m) + lam * s_omega / m


@dataclass(frozen=True)
class MeasureReport:
    h_s: float
    h_s_given_r: float
    i_sr: float
    l_s: float | None = None
    omega_cost: float | None = None
    lam: float | None = None

    def scaled(self, factor: float) -> "MeasureReport":
        def f(x):
            return None if x is None else x * factor

        return MeasureReport(
            f(self.h_s), f(self.h_s_given_r), f(self.i_sr), f(self.l_s), f(self.omega_cost), self.lam
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return d


def measure_report(
    matrix: LexicalMatrix,
    lam: float | None = None,
    *,
    with_code_length: bool = True,
    recompute: bool = False,
) -> MeasureReport:
    h = entropy_words(matrix, recompute=recompute)
    hc = cond_entropy_words(matrix, recompute=recompute)
    cost = None
    if lam is not None:
        lam = check_lambda(lam)
        cost = (1.0 - 2.0 * lam) * h + lam * hc
    return MeasureReport(
        h_s=h,
        h_s_given_r=hc,
        i_sr=mutual_info(matrix, recompute=recompute),
        l_s=code_length(matrix) if with_code_length else None,
        omega_cost=cost,
        lam=lam,
    )
