"""Binary word-meaning matrix with eagerly maintained degrees.

Rows are packed into Python ints (bit ``j`` of ``rows[i]`` is ``a_ij``), so a
whole matrix of ``vs_max * vr_max <= 63`` cells maps to a single integer code
and exhaustive sweeps can iterate codes directly.

The two entropy accumulators ``sum_mu_log`` and ``sum_omega_log`` hold
``sum(x * log2(x))`` over word and meaning degrees and are updated on every
mutation, which makes every measure O(1).
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator

from lexinfo.errors import (
    DimensionError,
    DuplicateLinkError,
    IndexRangeError,
    MissingLinkError,
    ParseError,
    VocabularyFullError,
)


def xlog2x(k: int) -> float:
    """``k * log2(k)`` with the ``0 log 0 = 0`` convention."""
    if k <= 0:
        return 0.0
    return k * math.log2(k)


class LexicalMatrix:
    __slots__ = (
        "vs_max",
        "vr_max",
        "rows",
        "mu",
        "omega",
        "m",
        "sum_mu_log",
        "sum_omega_log",
        "n_linked_words",
        "n_linked_meanings",
    )

    def __init__(self, vs_max: int, vr_max: int):
        if not isinstance(vs_max, int) or not isinstance(vr_max, int) or vs_max < 1 or vr_max < 1:
            raise DimensionError(f"dimensions must be positive integers, got {vs_max}x{vr_max}")
        self.vs_max = vs_max
        self.vr_max = vr_max
        self.rows = [0] * vs_max
        self.mu = [0] * vs_max
        self.omega = [0] * vr_max
        self.m = 0
        self.sum_mu_log = 0.0
        self.sum_omega_log = 0.0
        self.n_linked_words = 0
        self.n_linked_meanings = 0

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, vs_max: int, vr_max: int, edges: Iterable[tuple[int, int]]) -> "LexicalMatrix":
        mat = cls(vs_max, vr_max)
        for i, j in edges:
            mat.add_link(i, j)
        return mat

    @classmethod
    def from_code(cls, vs_max: int, vr_max: int, code: int) -> "LexicalMatrix":
        """Decode the integer produced by :attr:`code`.

        Degrees and accumulators are computed from scratch, not incrementally.
        """
        mat = cls(vs_max, vr_max)
        if code < 0 or code >> (vs_max * vr_max):
            raise IndexRangeError(f"code {code} does not fit a {vs_max}x{vr_max} matrix")
        mask = (1 << vr_max) - 1
        rows = [(code >> (i * vr_max)) & mask for i in range(vs_max)]
        mat.rows = rows
        mat.mu = [r.bit_count() for r in rows]
        mat.omega = [sum((r >> j) & 1 for r in rows) for j in range(vr_max)]
        mat.m = sum(mat.mu)
        mat.sum_mu_log, mat.sum_omega_log = mat.recompute_accumulators()
        mat.n_linked_words = sum(1 for k in mat.mu if k)
        mat.n_linked_meanings = sum(1 for k in mat.omega if k)
        return mat

    @property
    def code(self) -> int:
        out = 0
        for i, r in enumerate(self.rows):
            out |= r << (i * self.vr_max)
        return out

    def copy(self) -> "LexicalMatrix":
        new = LexicalMatrix.__new__(LexicalMatrix)
        new.vs_max = self.vs_max
        new.vr_max = self.vr_max
        new.rows = self.rows.copy()
        new.mu = self.mu.copy()
        new.omega = self.omega.copy()
        new.m = self.m
        new.sum_mu_log = self.sum_mu_log
        new.sum_omega_log = self.sum_omega_log
        new.n_linked_words = self.n_linked_words
        new.n_linked_meanings = self.n_linked_meanings
        return new

    # -- queries ----------------------------------------------------------

    def _check(self, i: int, j: int) -> None:
        if not (0 <= i < self.vs_max):
            raise IndexRangeError(f"word index {i} out of range 0..{self.vs_max - 1}")
        if not (0 <= j < self.vr_max):
            raise IndexRangeError(f"meaning index {j} out of range 0..{self.vr_max - 1}")

    def has_link(self, i: int, j: int) -> bool:
        self._check(i, j)
        return bool((self.rows[i] >> j) & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Links in ascending ``(i, j)`` order."""
        for i, r in enumerate(self.rows):
            j = 0
            while r:
                if r & 1:
                    yield i, j
                r >>= 1
                j += 1

    def meanings_of(self, i: int) -> list[int]:
        r = self.rows[i]
        return [j for j in range(self.vr_max) if (r >> j) & 1]

    def linked_counts(self) -> tuple[int, int]:
        """``(V_S, V_R)``: numbers of words and meanings with at least one link."""
        return self.n_linked_words, self.n_linked_meanings

    def next_unlinked_word(self) -> int:
        for i, k in enumerate(self.mu):
            if k == 0:
                return i
        raise VocabularyFullError(f"all {self.vs_max} words are linked")

    def unlinked_meanings(self) -> list[int]:
        return [j for j, k in enumerate(self.omega) if k == 0]

    def linked_meanings(self) -> list[int]:
        return [j for j, k in enumerate(self.omega) if k > 0]

    def recompute_accumulators(self) -> tuple[float, float]:
        """From-scratch ``(sum mu log2 mu, sum omega log2 omega)``."""
        return (
            math.fsum(xlog2x(k) for k in self.mu),
            math.fsum(xlog2x(k) for k in self.omega),
        )

    # -- mutation ---------------------------------------------------------

    def add_link(self, i: int, j: int) -> "LexicalMatrix":
        self._check(i, j)
        bit = 1 << j
        if self.rows[i] & bit:
            raise DuplicateLinkError(f"link ({i}, {j}) already present")
        self.rows[i] |= bit
        ki = self.mu[i]
        kj = self.omega[j]
        self.sum_mu_log += xlog2x(ki + 1) - xlog2x(ki)
        self.sum_omega_log += xlog2x(kj + 1) - xlog2x(kj)
        self.mu[i] = ki + 1
        self.omega[j] = kj + 1
        self.m += 1
        if ki == 0:
            self.n_linked_words += 1
        if kj == 0:
            self.n_linked_meanings += 1
        return self

    def remove_link(self, i: int, j: int) -> "LexicalMatrix":
        self._check(i, j)
        bit = 1 << j
        if not self.rows[i] & bit:
            raise MissingLinkError(f"link ({i}, {j}) absent")
        self.rows[i] &= ~bit
        ki = self.mu[i]
        kj = self.omega[j]
        self.sum_mu_log += xlog2x(ki - 1) - xlog2x(ki)
        self.sum_omega_log += xlog2x(kj - 1) - xlog2x(kj)
        self.mu[i] = ki - 1
        self.omega[j] = kj - 1
        self.m -= 1
        if ki == 1:
            self.n_linked_words -= 1
        if kj == 1:
            self.n_linked_meanings -= 1
        if self.m == 0:
            # no residue from float drift on the empty matrix
            self.sum_mu_log = 0.0
            self.sum_omega_log = 0.0
        return self

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LexicalMatrix):
            return NotImplemented
        return (self.vs_max, self.vr_max, self.rows) == (other.vs_max, other.vr_max, other.rows)

    def __hash__(self) -> int:
        return hash((self.vs_max, self.vr_max, tuple(self.rows)))

    def __repr__(self) -> str:
        return f"LexicalMatrix({self.vs_max}x{self.vr_max}, edges={list(self.edges())})"

    def to_edge_list(self) -> str:
        return to_edge_list(self)


def new_matrix(vs_max: int, vr_max: int) -> LexicalMatrix:
    return LexicalMatrix(vs_max, vr_max)


def add_link(matrix: LexicalMatrix, i: int, j: int) -> LexicalMatrix:
    return matrix.add_link(i, j)


def remove_link(matrix: LexicalMatrix, i: int, j: int) -> LexicalMatrix:
    return matrix.remove_link(i, j)


def linked_counts(matrix: LexicalMatrix) -> tuple[int, int]:
    return matrix.linked_counts()


def next_unlinked_word(matrix: LexicalMatrix) -> int:
    return matrix.next_unlinked_word()


def recompute_accumulators(matrix: LexicalMatrix) -> tuple[float, float]:
    return matrix.recompute_accumulators()


# -- text format -------------------------------------------------------------
#
#   <vs_max> <vr_max>
#   <i> <j>          one link per line, 0-based
#   # comment


def to_edge_list(matrix: LexicalMatrix) -> str:
    lines = [f"{matrix.vs_max} {matrix.vr_max}"]
    lines.extend(f"{i} {j}" for i, j in matrix.edges())
    return "\n".join(lines) + "\n"


def _parse_ints(line: str, lineno: int) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise ParseError(f"expected two integers, got {line!r}", lineno)
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"expected two integers, got {line!r}", lineno) from None
    return a, b


def from_edge_list(text: str) -> LexicalMatrix:
    matrix = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        a, b = _parse_ints(line, lineno)
        if matrix is None:
            try:
                matrix = LexicalMatrix(a, b)
            except DimensionError as exc:
                raise ParseError(str(exc), lineno) from None
            continue
        if not (0 <= a < matrix.vs_max and 0 <= b < matrix.vr_max):
            raise ParseError(f"edge ({a}, {b}) out of range for {matrix.vs_max}x{matrix.vr_max}", lineno)
        if matrix.rows[a] >> b & 1:
            raise ParseError(f"duplicate edge ({a}, {b})", lineno)
        matrix.add_link(a, b)
    if matrix is None:
        raise ParseError("missing '<vs_max> <vr_max>' header", None)
    return matrix


def load(path) -> LexicalMatrix:
    with open(path, encoding="utf-8") as fh:
        return from_edge_list(fh.read())


def save(matrix: LexicalMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_edge_list(matrix))
