"""Exit criteria for the package, one test per criterion (numbered test_cNN_*)."""

import itertools
import math
import random
import time

import pytest

from lexinfo import learning, measures, optima
from lexinfo.lexmatrix import LexicalMatrix, new_matrix
from lexinfo.search import AnnealConfig, anneal

import oracles
from conftest import fig1a, fig1b, fig1c, random_matrix

TOL = 1e-9


def dims_up_to(max_vs, max_vr):
    return [(a, b) for a in range(1, max_vs + 1) for b in range(1, max_vr + 1)]


def dims_with_product(limit):
    return [(a, b) for a in range(1, limit + 1) for b in range(1, limit + 1) if a * b <= limit]


def test_c01_figure_one():
    start = time.perf_counter()
    values = [measures.mutual_info(m) for m in (fig1a(), fig1b(), fig1c())]
    elapsed = time.perf_counter() - start
    for got, want in zip(values, (1.0, 1.0, 0.0)):
        assert abs(got - want) <= TOL
    assert elapsed < 1.0


def test_c02_strategy_theorem():
    start = time.perf_counter()
    violations = []
    for vs, vr in dims_up_to(4, 4):
        violations += optima.verify_strategy_theorem(vs, vr)
    assert violations == []
    assert time.perf_counter() - start < 120


def test_c03_generalized_scenario():
    start = time.perf_counter()
    violations = []
    for vs, vr in dims_up_to(3, 4):
        violations += optima.verify_alpha_general(vs, vr, max_alpha=3)
    assert violations == []
    assert time.perf_counter() - start < 300


def test_c04_appendix_a():
    start = time.perf_counter()
    for vs, vr in dims_with_product(16):
        rep, violations = optima.verify_appendix_a(vs, vr)
        assert rep.characterization_match, (vs, vr)
        assert violations == [], (vs, vr)
        small, large = sorted((vs, vr))
        ks = {(m.mu if vs <= vr else m.omega)[0] for m in rep.extrema}
        assert ks == set(range(1, large // small + 1)), (vs, vr)
        if vs == vr:
            assert len(rep.extrema) == math.factorial(vs)
            assert all(optima.satisfies_mutual_exclusivity(m) and m.m == vs for m in rep.extrema)
    assert time.perf_counter() - start < 60


def test_c05_appendix_b():
    start = time.perf_counter()
    for vs, vr in dims_with_product(16):
        rep, violations = optima.verify_appendix_b(vs, vr)
        assert rep.characterization_match, (vs, vr)
        assert violations == [], (vs, vr)
        assert len(rep.extrema) == vs * (2**vr - 1)
        assert all(optima.satisfies_contrast(m) for m in rep.extrema)
    assert time.perf_counter() - start < 60


def test_c06_inequality_chain():
    rng = random.Random(6)
    violations = []
    for _ in range(10_000):
        mat = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        v = optima.chain_violation(mat)
        if v is not None:
            violations.append(v)
    assert violations == []


def test_c07_recycling_inequality():
    for k_s, alpha in itertools.product(range(1, 17), repeat=2):
        vr = k_s + alpha
        # word 0 is the old word; word 1 adds background links; word 2 is the new word
        base = new_matrix(3, vr)
        for j in range(k_s):
            base.add_link(0, j)
        for j in range(0, vr, 3):
            base.add_link(1, j)
        m = base.m

        recycled, h2, gap = learning.attach_old_word(base, 0, range(k_s, vr))
        fresh, _ = learning.attach_new_word(base, learning.plan_attachment(base, range(alpha), word=2))
        from_scratch = oracles.entropy_words(fresh) - oracles.entropy_words(recycled)
        closed = learning.recycling_gap(k_s, alpha, m)

        assert closed > 0, (k_s, alpha)
        assert abs(closed - from_scratch) <= TOL, (k_s, alpha)
        assert abs(gap - from_scratch) <= TOL, (k_s, alpha)


@pytest.mark.parametrize("seed", [0])
def test_c08_incremental_caches(seed):
    rng = random.Random(seed)
    for _ in range(3):
        mat = new_matrix(8, 8)
        for _ in range(10_000):
            i, j = rng.randrange(8), rng.randrange(8)
            if mat.has_link(i, j):
                mat.remove_link(i, j)
            else:
                mat.add_link(i, j)
            s_mu, s_omega = mat.recompute_accumulators()
            assert abs(mat.sum_mu_log - s_mu) <= TOL
            assert abs(mat.sum_omega_log - s_omega) <= TOL


def test_c09_annealer_vs_oracle():
    start = time.perf_counter()
    for n, steps in ((2, 5000), (3, 20000)):
        for lam in (0.25, 0.75):
            target = optima.brute_force_omega_minima(n, n, lam).extremum_value
            hits = []
            for seed in range(100):
                res = anneal(AnnealConfig(n, n, lam, steps=steps, seed=seed))
                if abs(res.best_cost - target) <= TOL:
                    hits.append(res.best_matrix)
            assert len(hits) >= 90, (n, lam, len(hits))
            for mat in hits:
                if lam == 0.25:
                    assert optima.satisfies_min_hs(mat)
                else:
                    assert optima.satisfies_mutual_exclusivity(mat) and mat.m == n
    assert time.perf_counter() - start < 120


def test_c10_omega_prime_prefers_strategy_a():
    checked = 0
    for lam in (0.1, 0.5, 0.9):
        for vs, vr in dims_up_to(3, 3):
            for mat in optima.enumerate_matrices(vs, vr):
                if mat.n_linked_words == vs or mat.n_linked_meanings == vr:
                    continue
                costs = {
                    j: learning.omega_after(mat, learning.plan_attachment(mat, [j]), lam) for j in range(vr)
                }
                best = min(costs.values())
                winners = {j for j, c in costs.items() if c <= best + TOL}
                assert winners <= set(mat.unlinked_meanings()), (lam, mat)
                checked += 1
    assert checked > 0
