import math

import numpy as np
import pytest

from ctqw_search import (
    DegenerateStateError,
    InvalidInputError,
    InvalidParameterError,
    MarkedState,
    PairSpec,
    antipodal_pair,
    compose_inclusion_exclusion,
    general_pair,
    hypercube_exact,
    krawtchouk,
    pair_sums,
    search_params,
    single_vertex_sums,
    uniform_state,
    weight1_uniform,
)


def exact_pair(n, m):
    return hypercube_exact(n, MarkedState.pair(1 << n, 0, (1 << m) - 1))


class TestPairSpec:
    def test_validation(self):
        PairSpec(6, 3)
        with pytest.raises(InvalidParameterError):
            PairSpec(6, 0)
        with pytest.raises(InvalidParameterError):
            PairSpec(6, 7)


class TestAntipodalPair:
    def test_two_bits_exact_values(self):
        r = antipodal_pair(2)
        assert r.gamma_c == pytest.approx(1 / 8, abs=1e-15)
        assert r.beta**2 == pytest.approx(1 / 32, abs=1e-15)
        assert r.envelope == pytest.approx(1 / math.sqrt(2), abs=1e-14)

    def test_sixteen_bits_envelope(self):
        assert antipodal_pair(16).envelope == pytest.approx(0.9498, abs=2e-3)

    def test_matches_general_pair_exactly(self):
        for n in (2, 4, 8, 16):
            assert antipodal_pair(n) == general_pair(n, n)

    def test_odd_falls_through(self):
        assert antipodal_pair(5) == general_pair(5, 5)

    def test_smallest_is_degenerate(self):
        with pytest.raises(DegenerateStateError):
            antipodal_pair(1)


class TestGeneralPair:
    def test_paper_anchor_values(self):
        assert general_pair(16, 1).envelope == pytest.approx(0.9418, abs=2e-3)
        assert general_pair(16, 8).envelope == pytest.approx(0.9481, abs=2e-3)

    def test_against_transform_oracle(self):
        for n in range(2, 9):
            for m in range(1, n + 1):
                if n == 1 and m == 1:
                    continue
                gamma_c, beta, _ = exact_pair(n, m)
                r = general_pair(n, m)
                assert abs(r.gamma_c - gamma_c) <= 1e-12
                assert abs(r.beta - beta) <= 1e-12

    def test_intermediate_sum_scaling(self):
        r = general_pair(6, 3)
        scale = 2.0 ** (6 - 1)
        assert r.gamma_c == pytest.approx((r.a1 + r.a2) / scale, abs=1e-15)
        assert r.beta**2 == pytest.approx((r.b1 + r.b2) / scale, abs=1e-15)

    def test_coincident_vertices_rejected(self):
        with pytest.raises(InvalidParameterError):
            general_pair(6, 0)

    def test_envelope_monotonicity_sixteen_bits(self):
        envelopes = [general_pair(16, m).envelope for m in range(1, 17)]
        # distance 1 beats distance 2, then the envelope climbs monotonically
        assert envelopes[0] > envelopes[1]
        assert all(a < b for a, b in zip(envelopes[1:], envelopes[2:]))


class TestWeight1Uniform:
    def test_single_marked_vertex_matches_search_params(self, dense_hypercube):
        for n in range(2, 9):
            r = weight1_uniform(n, 1)
            params = search_params(dense_hypercube(n), MarkedState.single(1 << n, 1))
            assert r.gamma_c == pytest.approx(params.gamma_c, abs=1e-12)
            assert r.beta == pytest.approx(params.beta, abs=1e-12)

    def test_against_transform_oracle(self):
        for n in range(2, 9):
            for m in range(1, n + 1):
                state = MarkedState.uniform_over(1 << n, [1 << j for j in range(m)])
                gamma_c, beta, p_n = hypercube_exact(n, state)
                r = weight1_uniform(n, m)
                assert abs(r.gamma_c - gamma_c) <= 1e-12
                assert abs(r.beta - beta) <= 1e-12
                assert p_n == pytest.approx(math.sqrt(m / 2.0**n), abs=1e-12)

    def test_sixteen_bits_four_marked_near_unit_envelope(self):
        # measured deviation from 1 is 0.081; the bound documents that scale
        assert abs(1.0 - weight1_uniform(16, 4).envelope) <= 0.1

    def test_scaling(self):
        r = weight1_uniform(8, 3)
        assert r.gamma_c == pytest.approx((r.a1 + r.a2) / 2.0**8, abs=1e-15)

    def test_invalid(self):
        with pytest.raises(InvalidParameterError):
            weight1_uniform(4, 0)
        with pytest.raises(InvalidParameterError):
            weight1_uniform(4, 5)


class TestComposeInclusionExclusion:
    def test_two_vertices_halves_pair_sum(self):
        gamma_12, beta_sq_12 = pair_sums(6, 3, 12)
        gamma_c, beta = compose_inclusion_exclusion(
            2, {(0, 1): gamma_12}, [0.0, 0.0], {(0, 1): beta_sq_12}, [0.0, 0.0]
        )
        assert gamma_c == pytest.approx(gamma_12 / 2, abs=1e-15)
        assert beta**2 == pytest.approx(beta_sq_12 / 2, abs=1e-15)

    @pytest.mark.parametrize("n,m,seed", [(6, 3, 0), (6, 3, 1), (8, 5, 2), (8, 4, 3)])
    def test_matches_direct_uniform_state(self, n, m, seed):
        rng = np.random.default_rng(seed)
        verts = [int(v) for v in rng.choice(1 << n, size=m, replace=False)]
        gamma_single, beta_sq_single = single_vertex_sums(n)
        pair_gammas, pair_beta_sqs = {}, {}
        for j in range(m):
            for l in range(j + 1, m):
                pair_gammas[(j, l)], pair_beta_sqs[(j, l)] = pair_sums(
                    n, verts[j], verts[l]
                )
        gamma_c, beta = compose_inclusion_exclusion(
            m, pair_gammas, [gamma_single] * m, pair_beta_sqs, [beta_sq_single] * m
        )
        direct_gamma, direct_beta, _ = hypercube_exact(
            n, MarkedState.uniform_over(1 << n, verts)
        )
        assert gamma_c == pytest.approx(direct_gamma, abs=1e-10)
        assert beta**2 == pytest.approx(direct_beta**2, abs=1e-10)

    def test_missing_pair_value(self):
        with pytest.raises(InvalidInputError):
            compose_inclusion_exclusion(3, {(0, 1): 1.0}, [0.1] * 3, {(0, 1): 1.0}, [0.1] * 3)


class TestHypercubeExact:
    def test_uniform_state_is_degenerate(self):
        with pytest.raises(DegenerateStateError):
            hypercube_exact(3, MarkedState(uniform_state(8)))

    def test_single_vertex_matches_dense_pipeline(self, dense_hypercube):
        params = search_params(dense_hypercube(4), MarkedState.single(16, 7))
        gamma_c, beta, p_n = hypercube_exact(4, MarkedState.single(16, 7))
        assert gamma_c == pytest.approx(params.gamma_c, abs=1e-10)
        assert beta == pytest.approx(params.beta, abs=1e-10)
        assert p_n == pytest.approx(params.p_n, abs=1e-10)

    def test_pair_matches_closed_form_all_distances(self):
        for n in range(2, 13):
            for m in range(1, n + 1):
                gamma_c, beta, _ = exact_pair(n, m)
                r = general_pair(n, m)
                assert abs(r.gamma_c - gamma_c) <= 1e-12
                assert abs(r.beta - beta) <= 1e-12

    def test_translation_invariance(self):
        rng = np.random.default_rng(17)
        n = 7
        verts = [int(v) for v in rng.choice(1 << n, size=4, replace=False)]
        weights = rng.standard_normal(4)
        base = MarkedState.from_weights(
            _dense_weights(1 << n, verts, weights)
        )
        g0, b0, p0 = hypercube_exact(n, base)
        for mask in (0b1, 0b1010101, (1 << n) - 1):
            shifted = MarkedState.from_weights(
                _dense_weights(1 << n, [v ^ mask for v in verts], weights)
            )
            g1, b1, p1 = hypercube_exact(n, shifted)
            assert abs(g1 - g0) <= 1e-12
            assert abs(b1 - b0) <= 1e-12
            assert abs(p1 - p0) <= 1e-12

    def test_pair_values_depend_only_on_distance(self):
        rng = np.random.default_rng(18)
        n = 8
        for m in (1, 3, 6):
            reference = None
            for _ in range(4):
                u = int(rng.integers(1 << n))
                mask = 0
                bits = rng.choice(n, size=m, replace=False)
                for b in bits:
                    mask |= 1 << int(b)
                g, b_val, _ = hypercube_exact(
                    n, MarkedState.pair(1 << n, u, u ^ mask)
                )
                if reference is None:
                    reference = (g, b_val)
                assert abs(g - reference[0]) <= 1e-12
                assert abs(b_val - reference[1]) <= 1e-12


class TestKrawtchouk:
    def test_against_brute_force(self):
        for n in range(1, 9):
            for d in range(n + 1):
                mask = (1 << d) - 1
                for j in range(n + 1):
                    brute = sum(
                        (-1) ** ((z & mask).bit_count() % 2)
                        for z in range(1 << n)
                        if z.bit_count() == j
                    )
                    assert krawtchouk(n, j, d) == brute

    def test_weight_zero_row(self):
        assert krawtchouk(10, 0, 4) == 1

    def test_full_weight_alternates(self):
        assert krawtchouk(6, 6, 3) == (-1) ** 3


def _dense_weights(size, verts, weights):
    dense = np.zeros(size)
    dense[verts] = weights
    return dense
