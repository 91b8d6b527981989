"""Attaching words to meanings: new words (strategies a/b, alpha links) and old words.

Each operation predicts its effect in closed form and then mutates the matrix
and recomputes the measures from scratch; reports carry the recomputed values
next to the predictions.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, NamedTuple

from lexinfo import measures
from lexinfo.errors import (
    InvalidComparisonError,
    InvalidPlanError,
    NotOldWordError,
    RecycleRequiredError,
    StrategyUnavailableError,
)
from lexinfo.lexmatrix import LexicalMatrix, xlog2x


def delta(k: int) -> float:
    """Increase of ``k log k`` when a degree goes from ``k`` to ``k + 1``."""
    if k < 0:
        raise ValueError(f"degree must be non-negative, got {k}")
    return xlog2x(k + 1) - xlog2x(k)


@dataclass(frozen=True)
class AttachmentPlan:
    word: int
    meanings: tuple[int, ...]
    alpha: int
    alpha0: int
    target_degrees: tuple[int, ...]

    @property
    def all_unlinked(self) -> bool:
        return self.alpha0 == self.alpha


def plan_attachment(matrix: LexicalMatrix, meanings: Iterable[int], word: int | None = None) -> AttachmentPlan:
    """Build a plan for linking ``word`` (default: first unlinked word) to ``meanings``.

    Target degrees are read from ``matrix`` now; a plan is only valid for the
    matrix state it was built from.
    """
    meanings = tuple(meanings)
    if not meanings:
        raise InvalidPlanError("a plan needs at least one meaning")
    if len(set(meanings)) != len(meanings):
        raise InvalidPlanError(f"duplicate target meanings in {meanings}")
    for j in meanings:
        if not (0 <= j < matrix.vr_max):
            raise InvalidPlanError(f"meaning {j} out of range 0..{matrix.vr_max - 1}")
    if word is None:
        word = matrix.next_unlinked_word()
    elif not (0 <= word < matrix.vs_max):
        raise InvalidPlanError(f"word {word} out of range 0..{matrix.vs_max - 1}")
    degrees = tuple(matrix.omega[j] for j in meanings)
    return AttachmentPlan(
        word=word,
        meanings=meanings,
        alpha=len(meanings),
        alpha0=sum(1 for k in degrees if k == 0),
        target_degrees=degrees,
    )


def strategy_a_plan(matrix: LexicalMatrix, alpha: int = 1, word: int | None = None) -> AttachmentPlan:
    """Link the new word to the ``alpha`` lowest-indexed unlinked meanings."""
    unlinked = matrix.unlinked_meanings()
    if len(unlinked) < alpha:
        raise StrategyUnavailableError(f"need {alpha} unlinked meanings, only {len(unlinked)} exist")
    return plan_attachment(matrix, unlinked[:alpha], word)


def strategy_b_plan(matrix: LexicalMatrix, meaning: int, word: int | None = None) -> AttachmentPlan:
    if not (0 <= meaning < matrix.vr_max) or matrix.omega[meaning] == 0:
        raise StrategyUnavailableError(f"meaning {meaning} is not a linked meaning")
    return plan_attachment(matrix, [meaning], word)


def _validate_new_word_plan(matrix: LexicalMatrix, plan: AttachmentPlan) -> None:
    if not (0 <= plan.word < matrix.vs_max):
        raise InvalidPlanError(f"word {plan.word} out of range")
    if matrix.mu[plan.word] > 0:
        raise RecycleRequiredError(f"word {plan.word} is already linked; use attach_old_word")
    if len(set(plan.meanings)) != len(plan.meanings) or plan.alpha != len(plan.meanings) or plan.alpha < 1:
        raise InvalidPlanError("plan meanings must be distinct and match alpha")
    for j in plan.meanings:
        if not (0 <= j < matrix.vr_max):
            raise InvalidPlanError(f"meaning {j} out of range")
    current = tuple(matrix.omega[j] for j in plan.meanings)
    if current != plan.target_degrees:
        raise InvalidPlanError("plan is stale: target degrees changed since it was built")


def predict_delta_cond_entropy(matrix: LexicalMatrix, plan: AttachmentPlan) -> float:
    """Strategy-dependent part of H'(S|R): ``sum delta(k_t) / (M + alpha)``."""
    measures._require_links(matrix)
    _validate_new_word_plan(matrix, plan)
    degrees = [matrix.omega[j] for j in plan.meanings]
    return math.fsum(delta(k) for k in degrees) / (matrix.m + plan.alpha)


def predict_entropy_after(matrix: LexicalMatrix, alpha: int) -> float:
    """H'(S) after a new word gains ``alpha`` links; independent of the targets."""
    m2 = matrix.m + alpha
    return math.log2(m2) - (matrix.sum_mu_log + xlog2x(alpha)) / m2


def predict_recycled_entropy(matrix: LexicalMatrix, word: int, alpha: int) -> float:
    """H''(S) after an old word of degree ``k_S`` gains ``alpha`` links."""
    k = matrix.mu[word]
    m2 = matrix.m + alpha
    return math.log2(m2) - (matrix.sum_mu_log - xlog2x(k) + xlog2x(k + alpha)) / m2


def recycling_gap(k_s: int, alpha: int, m: int) -> float:
    """Closed form of H'(S) - H''(S) for an old word of degree ``k_s``.

    Equals ``((k_s + alpha) log(k_s + alpha) - k_s log k_s - alpha log alpha) / (m + alpha)``.
    """
    return (xlog2x(k_s + alpha) - xlog2x(k_s) - xlog2x(alpha)) / (m + alpha)


@dataclass(frozen=True)
class AttachmentReport:
    h_s_after: float
    h_s_given_r_after: float
    i_sr_after: float
    delta_h_s_given_r: float
    predicted_h_s_after: float
    predicted_delta_h_s_given_r: float

    def to_dict(self) -> dict:
        return asdict(self)


def attach_new_word(
    matrix: LexicalMatrix, plan: AttachmentPlan, *, inplace: bool = False
) -> tuple[LexicalMatrix, AttachmentReport]:
    measures._require_links(matrix)
    _validate_new_word_plan(matrix, plan)
    predicted_delta = predict_delta_cond_entropy(matrix, plan)
    predicted_h = predict_entropy_after(matrix, plan.alpha)
    base = matrix.sum_omega_log / (matrix.m + plan.alpha)

    out = matrix if inplace else matrix.copy()
    for j in plan.meanings:
        out.add_link(plan.word, j)
    h = measures.entropy_words(out, recompute=True)
    hc = measures.cond_entropy_words(out, recompute=True)
    report = AttachmentReport(
        h_s_after=h,
        h_s_given_r_after=hc,
        i_sr_after=measures.mutual_info(out, recompute=True),
        delta_h_s_given_r=hc - base,
        predicted_h_s_after=predicted_h,
        predicted_delta_h_s_given_r=predicted_delta,
    )
    return out, report


class StrategyComparison(NamedTuple):
    i_a: float
    i_b: float
    gap: float


def compare_strategies(matrix: LexicalMatrix, meaning_b: int) -> StrategyComparison:
    """I'(S,R) for linking the next new word to an unlinked meaning vs ``meaning_b``.

    ``gap`` is the analytic ``delta(k_R) / (M + 1)``, always > 0.
    """
    measures._require_links(matrix)
    unlinked = matrix.unlinked_meanings()
    if not unlinked:
        raise StrategyUnavailableError("no unlinked meaning: strategy a is unavailable")
    k_r = matrix.omega[meaning_b]
    if k_r == 0:
        raise StrategyUnavailableError(f"meaning {meaning_b} is unlinked: not a strategy-b target")
    word = matrix.next_unlinked_word()
    _, rep_a = attach_new_word(matrix, plan_attachment(matrix, [unlinked[0]], word))
    _, rep_b = attach_new_word(matrix, plan_attachment(matrix, [meaning_b], word))
    return StrategyComparison(rep_a.i_sr_after, rep_b.i_sr_after, delta(k_r) / (matrix.m + 1))


def attach_old_word(
    matrix: LexicalMatrix, word: int, meanings: Iterable[int], *, inplace: bool = False
) -> tuple[LexicalMatrix, float, float]:
    """Add links from an already-linked word.

    Returns ``(matrix', H''(S), H'(S) - H''(S))`` where H'(S) is the entropy a
    brand-new word with the same number of links would have produced.
    """
    meanings = tuple(meanings)
    if not (0 <= word < matrix.vs_max):
        raise InvalidPlanError(f"word {word} out of range")
    if matrix.mu[word] == 0:
        raise NotOldWordError(f"word {word} is unlinked; use attach_new_word")
    if not meanings or len(set(meanings)) != len(meanings):
        raise InvalidPlanError("targets must be a non-empty set of distinct meanings")
    for j in meanings:
        if not (0 <= j < matrix.vr_max):
            raise InvalidPlanError(f"meaning {j} out of range")
        if matrix.rows[word] >> j & 1:
            raise InvalidPlanError(f"word {word} is already linked to meaning {j}")
    alpha = len(meanings)
    h_new_word = predict_entropy_after(matrix, alpha)
    out = matrix if inplace else matrix.copy()
    for j in meanings:
        out.add_link(word, j)
    h_recycled = measures.entropy_words(out, recompute=True)
    return out, h_recycled, h_new_word - h_recycled


def code_length_tie_check(matrix: LexicalMatrix, plan_a: AttachmentPlan, plan_b: AttachmentPlan) -> bool:
    """Whether two same-size attachments leave identical word distributions.

    Identical multisets of word probabilities give identical Huffman lengths
    and identical H'(S).
    """
    if plan_a.alpha != plan_b.alpha:
        raise InvalidComparisonError(f"alpha differs: {plan_a.alpha} vs {plan_b.alpha}")
    if plan_a.word != plan_b.word:
        raise InvalidComparisonError("plans attach different words")
    out_a, rep_a = attach_new_word(matrix, plan_a)
    out_b, rep_b = attach_new_word(matrix, plan_b)
    same_dist = sorted(out_a.mu) == sorted(out_b.mu) and out_a.m == out_b.m
    same_l = measures.code_length(out_a) == measures.code_length(out_b)
    same_h = abs(rep_a.h_s_after - rep_b.h_s_after) <= measures.TOL
    return same_dist and same_l and same_h


def omega_after(matrix: LexicalMatrix, plan: AttachmentPlan, lam: float) -> float:
    """Omega'(lambda) of the matrix the plan would produce."""
    out, rep = attach_new_word(matrix, plan)
    lam = measures.check_lambda(lam)
    return (1.0 - 2.0 * lam) * rep.h_s_after + lam * rep.h_s_given_r_after
