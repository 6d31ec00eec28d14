import numpy as np
import pytest

import oracles as bf
from conftest import random_continuous_r, random_r
from afriatdual import (
    Certificate,
    InputError,
    epsilon_from_certificate,
    extreme_point_test,
    find_certificate,
    full_report,
    index_a,
    index_a_star,
    index_b,
    index_g,
    increasing_cycle_partition,
    rationalizable,
    support_function,
)
from afriatdual.indices import default_epsilon, min_weight_cycle

POS2 = [[0, 1], [1, 0]]
SWAP = [[0, -1], [-1, 0]]
R3 = [[0, 1, 1], [1, 0, -1], [1, -1, 0]]
CYC3 = [[0, -1, 2], [2, 0, -1], [-1, 2, 0]]


class TestIndexA:
    @pytest.mark.parametrize("R, value", [(POS2, 0.0), (SWAP, -1.0), (R3, 0.0)])
    def test_examples(self, R, value):
        a, lam = index_a(R)
        assert a == pytest.approx(value, abs=1e-9)
        assert lam.sum() == pytest.approx(1.0) and np.all(lam >= 0)

    def test_matches_matrix_game(self, rng):
        for _ in range(60):
            R = random_continuous_r(rng, int(rng.integers(1, 5)))
            assert index_a(R)[0] == pytest.approx(bf.matrix_game_a(R), abs=1e-6)

    def test_witness_attains_value(self, rng):
        for _ in range(30):
            R = random_continuous_r(rng, 4)
            a, lam = index_a(R)
            assert support_function(R, lam) == pytest.approx(a, abs=1e-7)


class TestIndexAStar:
    def test_examples(self):
        assert index_a_star(POS2, 0.1)[0] == pytest.approx(0.0, abs=1e-9)
        assert index_a_star(R3, 0.1)[0] <= -0.2 + 1e-9
        assert index_a_star(SWAP, 0.5)[0] == pytest.approx(-1.0)

    def test_weights_respect_floor(self):
        _, lam = index_a_star(R3, 0.2)
        assert np.all(lam >= 0.2 - 1e-9)

    @pytest.mark.parametrize("eps", [0.0, -0.1, 0.6])
    def test_bad_epsilon(self, eps):
        with pytest.raises(InputError):
            index_a_star(POS2, eps)

    def test_matches_matrix_game(self, rng):
        for _ in range(40):
            n = int(rng.integers(1, 5))
            R = random_continuous_r(rng, n)
            eps = rng.uniform(0.01, 1.0 / n)
            assert index_a_star(R, eps)[0] == pytest.approx(bf.matrix_game_a(R, eps), abs=1e-6)

    def test_zero_iff_rationalizable_with_default_epsilon(self, rng):
        for _ in range(100):
            R = random_r(rng, int(rng.integers(2, 6)))
            eps = default_epsilon(R)
            assert (index_a_star(R, eps)[0] >= -1e-7) == rationalizable(R)


class TestEpsilon:
    @pytest.mark.parametrize("lam, eps", [((1, 1), 0.5), ((1, 3), 0.25), ((1, 1, 2), 0.25)])
    def test_examples(self, lam, eps):
        assert epsilon_from_certificate(Certificate(np.zeros(len(lam)), lam)) == pytest.approx(eps)

    def test_default_is_in_range(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 6))
            eps = default_epsilon(random_r(rng, n))
            assert 0 < eps <= 1.0 / n


class TestIndexB:
    @pytest.mark.parametrize("R, value", [(SWAP, -1.0), (R3, 0.0), (CYC3, -1.0)])
    def test_examples(self, R, value):
        assert index_b(R)[0] == value

    def test_zero_iff_no_increasing_partition(self, rng):
        for _ in range(200):
            R = random_r(rng, int(rng.integers(1, 7)))
            assert (index_b(R)[0] == 0) == (increasing_cycle_partition(R) is None)
            assert index_b(R)[0] <= 0


class TestIndexG:
    @pytest.mark.parametrize("R, value", [(POS2, 0.0), (SWAP, -1.0), ([[0, -1], [2, 0]], 0.0)])
    def test_examples(self, R, value):
        assert index_g(R)[0] == pytest.approx(value, abs=1e-7)

    def test_matches_enumeration(self, rng):
        for _ in range(60):
            R = random_continuous_r(rng, int(rng.integers(1, 6)))
            g, lam, sigma = index_g(R)
            assert g == pytest.approx(bf.matrix_game_g(R), abs=1e-6)

    def test_min_weight_cycle_against_enumeration(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 7))
            W = rng.normal(size=(n, n))
            w, cyc = min_weight_cycle(W)
            best = min(sum(W[a, b] for a, b in bf.steps(c)) for c in bf.simple_cycles(n))
            assert w == pytest.approx(best)
            assert sum(W[a, b] for a, b in bf.steps(cyc)) == pytest.approx(w)
            assert len(set(cyc)) == len(cyc) >= 2


class TestGeometry:
    def test_support_function_examples(self):
        assert support_function([[1, 2], [2, 1]], [0.5, 0.5]) == pytest.approx(1.0)
        assert support_function([[3, 3], [5, 5]], [0.25, 0.75]) == pytest.approx(0.25 * 3 + 0.75 * 5)
        assert support_function([[7.0]], [1.0]) == 7.0

    def test_support_function_concave(self, rng):
        c = rng.normal(size=(4, 4))
        for _ in range(50):
            l1, l2 = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4))
            mid = support_function(c, 0.5 * (l1 + l2))
            assert mid >= 0.5 * (support_function(c, l1) + support_function(c, l2)) - 1e-12

    def test_extreme_point_examples(self):
        assert extreme_point_test([[0, 1], [1, 0]], 0.1)
        assert not extreme_point_test([[0, -1], [-1, 0]], 0.1)
        assert extreme_point_test([[1, 1], [1, 1]], 0.1)

    def test_extreme_point_iff_rationalizable(self, rng):
        for _ in range(60):
            n = int(rng.integers(2, 5))
            c = rng.integers(0, 4, (n, n)).astype(float)
            R = c - np.diag(c)[:, None]
            eps = default_epsilon(R)
            assert extreme_point_test(c, eps) == rationalizable(R)


class TestFullReport:
    def test_examples(self):
        r = full_report(POS2)
        assert (r.a_star, r.a, r.b, r.g) == pytest.approx((0, 0, 0, 0), abs=1e-9)
        r = full_report(SWAP)
        assert (r.a_star, r.a, r.b, r.g) == pytest.approx((-1, -1, -1, -1), abs=1e-9)
        r = full_report(R3, 0.1)
        assert r.a_star < 0 and r.a == pytest.approx(0, abs=1e-9) and r.b == 0

    def test_default_epsilon_from_certificate(self):
        R = [[0, -1], [2, 0]]
        assert full_report(R).epsilon == pytest.approx(epsilon_from_certificate(find_certificate(R)))

    def test_row_scaling_keeps_signs(self, rng):
        for _ in range(30):
            n = int(rng.integers(2, 5))
            R = random_r(rng, n)
            S = R.copy()
            S[int(rng.integers(n))] *= rng.uniform(0.2, 5)
            r1, r2 = full_report(R), full_report(S)
            for a, b in ((r1.a_star, r2.a_star), (r1.a, r2.a), (r1.b, r2.b), (r1.g, r2.g)):
                assert (a < -1e-7) == (b < -1e-7)
