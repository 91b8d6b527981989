"""Exhaustive sweeps over every small lexical matrix.

These sweeps are the ground truth for the optimal-mapping characterizations
and the strategy theorems: each one walks all ``2**(vs*vr) - 1`` non-empty
matrices and either collects the extremal ones or reports violations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from lexinfo import learning, measures
from lexinfo.errors import EnumerationTooLargeError
from lexinfo.lexmatrix import LexicalMatrix, to_edge_list

MAX_CELLS = 20
TOL = measures.TOL

OBJECTIVES = ("maximize_mi", "minimize_hs", "minimize_omega")


def _check_cap(vs_max: int, vr_max: int) -> None:
    if vs_max < 1 or vr_max < 1:
        raise EnumerationTooLargeError(f"invalid dimensions {vs_max}x{vr_max}")
    if vs_max * vr_max > MAX_CELLS:
        raise EnumerationTooLargeError(
            f"{vs_max}x{vr_max} has 2^{vs_max * vr_max} matrices; cap is {MAX_CELLS} cells"
        )


def enumerate_matrices(vs_max: int, vr_max: int) -> Iterator[LexicalMatrix]:
    """Every matrix with at least one link, in increasing code order."""
    _check_cap(vs_max, vr_max)
    for code in range(1, 1 << (vs_max * vr_max)):
        yield LexicalMatrix.from_code(vs_max, vr_max, code)


# -- predicates --------------------------------------------------------------


def satisfies_contrast(matrix: LexicalMatrix) -> bool:
    return all(k <= 1 for k in matrix.omega)


def satisfies_mutual_exclusivity(matrix: LexicalMatrix) -> bool:
    return all(k <= 1 for k in matrix.mu) and all(k <= 1 for k in matrix.omega)


def _equal_positive(degrees: list[int]) -> bool:
    return degrees[0] >= 1 and all(k == degrees[0] for k in degrees)


def satisfies_max_mi_conditions(matrix: LexicalMatrix) -> bool:
    """Characterization of the matrices maximizing I(S,R).

    With no more words than meanings: every word has the same degree
    ``k >= 1`` and no meaning has two words. Otherwise the mirrored test on
    meanings.
    """
    if matrix.vs_max <= matrix.vr_max:
        return _equal_positive(matrix.mu) and all(k <= 1 for k in matrix.omega)
    return _equal_positive(matrix.omega) and all(k <= 1 for k in matrix.mu)


def satisfies_min_hs(matrix: LexicalMatrix) -> bool:
    return matrix.n_linked_words == 1


# -- extrema -----------------------------------------------------------------


@dataclass
class ExtremaReport:
    objective: str
    vs_max: int
    vr_max: int
    extremum_value: float
    extrema: list[LexicalMatrix]
    characterization_match: bool | None = None
    lam: float | None = None
    predicate_count: int | None = None

    def to_dict(self) -> dict:
        out = {
            "objective": self.objective,
            "vs_max": self.vs_max,
            "vr_max": self.vr_max,
            "extremum_value": self.extremum_value,
            "count": len(self.extrema),
            "extrema": [to_edge_list(m) for m in self.extrema],
            "characterization_match": self.characterization_match,
        }
        if self.lam is not None:
            out["lambda"] = self.lam
        return out


def _scan(vs_max, vr_max, value_fn, maximize: bool):
    best = None
    members: list[LexicalMatrix] = []
    sign = -1.0 if maximize else 1.0
    for mat in enumerate_matrices(vs_max, vr_max):
        v = sign * value_fn(mat)
        if best is None or v < best - TOL:
            best = v
            members = [mat]
        elif v <= best + TOL:
            members.append(mat)
    # a later, slightly lower value may have tightened the bound
    members = [mat for mat in members if sign * value_fn(mat) <= best + TOL]
    return sign * best, members


def brute_force_extrema(vs_max: int, vr_max: int, objective: str, lam: float | None = None) -> ExtremaReport:
    _check_cap(vs_max, vr_max)
    if objective == "maximize_mi":
        value, members = _scan(vs_max, vr_max, measures.mutual_info, maximize=True)
        predicate = satisfies_max_mi_conditions
    elif objective == "minimize_hs":
        value, members = _scan(vs_max, vr_max, measures.entropy_words, maximize=False)
        predicate = satisfies_min_hs
    elif objective == "minimize_omega":
        if lam is None:
            raise ValueError("minimize_omega needs lambda")
        lam = measures.check_lambda(lam)
        value, members = _scan(vs_max, vr_max, lambda m: measures.omega_cost(m, lam), maximize=False)
        return ExtremaReport(objective, vs_max, vr_max, value, members, None, lam)
    else:
        raise ValueError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")

    found = {m.code for m in members}
    expected = {m.code for m in enumerate_matrices(vs_max, vr_max) if predicate(m)}
    return ExtremaReport(
        objective, vs_max, vr_max, value, members, found == expected, predicate_count=len(expected)
    )


def brute_force_omega_minima(vs_max: int, vr_max: int, lam: float) -> ExtremaReport:
    return brute_force_extrema(vs_max, vr_max, "minimize_omega", lam)


# -- theorem sweeps ----------------------------------------------------------


@dataclass
class Violation:
    kind: str
    matrix: str
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "matrix": self.matrix, **self.detail}


def verify_strategy_theorem(vs_max: int, vr_max: int) -> list[Violation]:
    """Check ``I'_a > I'_b`` and ``I'_a - I'_b = delta(k_R)/(M+1)`` on every matrix.

    Every unlinked meaning is tried as the strategy-a target against every
    linked meaning as the strategy-b target.
    """
    _check_cap(vs_max, vr_max)
    out = []
    for mat in enumerate_matrices(vs_max, vr_max):
        if mat.n_linked_words == vs_max or mat.n_linked_meanings == vr_max:
            continue
        word = mat.next_unlinked_word()
        i_a = {}
        for j in mat.unlinked_meanings():
            _, rep = learning.attach_new_word(mat, learning.plan_attachment(mat, [j], word))
            i_a[j] = rep.i_sr_after
        for jb in mat.linked_meanings():
            _, rep_b = learning.attach_new_word(mat, learning.plan_attachment(mat, [jb], word))
            gap = learning.delta(mat.omega[jb]) / (mat.m + 1)
            for ja, ia in i_a.items():
                detail = {"meaning_a": ja, "meaning_b": jb, "i_a": ia, "i_b": rep_b.i_sr_after, "gap": gap}
                if not gap > 0 or not ia > rep_b.i_sr_after:
                    out.append(Violation("i_a_not_greater", to_edge_list(mat), detail))
                if abs((ia - rep_b.i_sr_after) - gap) > TOL:
                    out.append(Violation("gap_mismatch", to_edge_list(mat), detail))
    return out


def verify_alpha_general(vs_max: int, vr_max: int, max_alpha: int = 3) -> list[Violation]:
    """Check that the alpha-link plans minimizing Delta H(S|R) are exactly the all-unlinked ones.

    Only ``(matrix, alpha)`` pairs with at least ``alpha`` unlinked meanings
    are tested, since otherwise no all-unlinked plan exists. The recomputed
    delta is also compared against its closed form.
    """
    _check_cap(vs_max, vr_max)
    out = []
    for mat in enumerate_matrices(vs_max, vr_max):
        if mat.n_linked_words == vs_max:
            continue
        word = mat.next_unlinked_word()
        n_unlinked = vr_max - mat.n_linked_meanings
        for alpha in range(1, min(max_alpha, vr_max) + 1):
            if n_unlinked < alpha:
                continue
            deltas = {}
            for targets in itertools.combinations(range(vr_max), alpha):
                plan = learning.plan_attachment(mat, targets, word)
                _, rep = learning.attach_new_word(mat, plan)
                deltas[plan] = rep.delta_h_s_given_r
                if abs(rep.delta_h_s_given_r - rep.predicted_delta_h_s_given_r) > TOL:
                    out.append(
                        Violation(
                            "delta_formula_mismatch",
                            to_edge_list(mat),
                            {"targets": list(targets), "recomputed": rep.delta_h_s_given_r,
                             "predicted": rep.predicted_delta_h_s_given_r},
                        )
                    )
            best = min(deltas.values())
            argmin = {p.meanings for p, d in deltas.items() if d <= best + TOL}
            unlinked_plans = {p.meanings for p in deltas if p.all_unlinked}
            if argmin != unlinked_plans:
                out.append(
                    Violation(
                        "argmin_not_all_unlinked",
                        to_edge_list(mat),
                        {"alpha": alpha, "argmin": sorted(argmin), "all_unlinked": sorted(unlinked_plans)},
                    )
                )
    return out


def verify_inequality_chain(vs_max: int, vr_max: int) -> list[Violation]:
    """``I <= H(S) <= L(S) < H(S) + 1`` on every matrix, with Huffman lengths."""
    _check_cap(vs_max, vr_max)
    out = []
    for mat in enumerate_matrices(vs_max, vr_max):
        v = chain_violation(mat)
        if v is not None:
            out.append(v)
    return out


def chain_violation(mat: LexicalMatrix) -> Violation | None:
    i = measures.mutual_info(mat)
    h = measures.entropy_words(mat)
    l = measures.code_length(mat)
    if i <= h + TOL and h <= l + TOL and l < h + 1 - TOL:
        return None
    return Violation("inequality_chain", to_edge_list(mat), {"i_sr": i, "h_s": h, "l_s": l})


def verify_appendix_a(vs_max: int, vr_max: int) -> tuple[ExtremaReport, list[Violation]]:
    rep = brute_force_extrema(vs_max, vr_max, "maximize_mi")
    out = []
    if not rep.characterization_match:
        out.append(Violation("maximizers_differ_from_characterization", "", {"count": len(rep.extrema),
                                                                            "predicate_count": rep.predicate_count}))
    small, large = sorted((vs_max, vr_max))
    for mat in rep.extrema:
        degrees = mat.mu if vs_max <= vr_max else mat.omega
        k = degrees[0]
        if not 1 <= k <= large // small:
            out.append(Violation("k_out_of_range", to_edge_list(mat), {"k": k}))
        if vs_max <= vr_max and not satisfies_contrast(mat):
            out.append(Violation("maximizer_without_contrast", to_edge_list(mat)))
        if vs_max == vr_max and not satisfies_mutual_exclusivity(mat):
            out.append(Violation("square_maximizer_not_one_to_one", to_edge_list(mat)))
    return rep, out


def verify_appendix_b(vs_max: int, vr_max: int) -> tuple[ExtremaReport, list[Violation]]:
    rep = brute_force_extrema(vs_max, vr_max, "minimize_hs")
    out = []
    if not rep.characterization_match:
        out.append(Violation("minimizers_differ_from_characterization", "", {"count": len(rep.extrema),
                                                                            "predicate_count": rep.predicate_count}))
    for mat in rep.extrema:
        if not satisfies_contrast(mat):
            out.append(Violation("minimizer_without_contrast", to_edge_list(mat)))
    return rep, out
