# pylint: disable=R0201, R0903

"""Shannon measures unit tests."""

import math

import numpy as np
import pytest

from wiretap_core.measures import (
    binary_entropy,
    conditional_entropy,
    conditional_mutual_information,
    entropy,
    joint_entropy,
    kl_divergence,
    marginal,
    mutual_information,
    positive_part,
    total_variation,
    validate_distribution,
)
from wiretap_core.service.exceptions import ValidationError


class TestValidateDistribution:

    def test_accepts_stochastic(self):
        arr = validate_distribution([[0.25, 0.25], [0.5, 0.0]])
        assert arr.shape == (2, 2)

    def test_negative(self):
        with pytest.raises(ValidationError, match="negative probability"):
            validate_distribution([1.1, -0.1])

    def test_not_stochastic(self):
        with pytest.raises(ValidationError, match="row not stochastic"):
            validate_distribution([0.5, 0.4])

    def test_empty(self):
        with pytest.raises(ValidationError):
            validate_distribution([])

    def test_is_value_error(self):
        with pytest.raises(ValueError):
            validate_distribution([0.7, 0.7])


class TestEntropy:

    def test_uniform(self):
        assert entropy([0.25] * 4) == pytest.approx(2.0)

    def test_zero_mass(self):
        assert entropy([1.0, 0.0, 0.0]) == 0.0

    def test_binary_entropy(self):
        assert binary_entropy(0.5) == pytest.approx(1.0)
        assert binary_entropy(0.1) == pytest.approx(0.4689955935892812, abs=1e-12)
        assert binary_entropy(0.0) == 0.0

    def test_binary_entropy_range(self):
        with pytest.raises(ValidationError):
            binary_entropy(1.5)

    def test_joint_entropy_empty_axes(self):
        joint = np.full((2, 2), 0.25)
        assert joint_entropy(joint, []) == 0.0
        assert joint_entropy(joint, [0, 1]) == pytest.approx(2.0)

    def test_conditional_entropy(self):
        # A = B: nothing left once B is known
        joint = np.diag([0.5, 0.5])
        assert conditional_entropy(joint) == pytest.approx(0.0, abs=1e-15)
        assert conditional_entropy(np.full((2, 2), 0.25)) == pytest.approx(1.0)


class TestMarginal:

    def test_order_follows_keep(self):
        joint = np.arange(8, dtype=float).reshape(2, 2, 2) / 28.0
        forward = marginal(joint, [0, 2])
        backward = marginal(joint, [2, 0])
        assert np.allclose(forward, backward.T)

    def test_sums_out(self):
        joint = np.full((2, 3, 4), 1.0 / 24)
        assert np.allclose(marginal(joint, [1]), np.full(3, 1.0 / 3))


class TestMutualInformation:

    def test_identical(self):
        assert mutual_information(np.diag([0.5, 0.5])) == pytest.approx(1.0)

    def test_independent(self):
        joint = np.outer([0.3, 0.7], [0.6, 0.4])
        assert mutual_information(joint) == pytest.approx(0.0, abs=1e-12)

    def test_bsc(self):
        flip = 0.1
        joint = 0.5 * np.array([[1 - flip, flip], [flip, 1 - flip]])
        assert mutual_information(joint) == pytest.approx(1.0 - binary_entropy(flip))

    def test_not_normalized(self):
        with pytest.raises(ValidationError):
            mutual_information(np.full((2, 2), 0.5))

    def test_conditional(self):
        # A = B xor C, B and C uniform: I(A;B|C) = 1, I(A;B) = 0
        joint = np.zeros((2, 2, 2))
        for b in range(2):
            for c in range(2):
                joint[b ^ c, b, c] = 0.25
        assert conditional_mutual_information(joint) == pytest.approx(1.0)
        assert mutual_information(joint.sum(axis=2)) == pytest.approx(0.0, abs=1e-12)


class TestDivergences:

    def test_kl_zero(self):
        assert kl_divergence([0.2, 0.8], [0.2, 0.8]) == pytest.approx(0.0, abs=1e-15)

    def test_kl_value(self):
        assert kl_divergence([1.0, 0.0], [0.5, 0.5]) == pytest.approx(1.0)

    def test_kl_support(self):
        assert math.isinf(kl_divergence([0.5, 0.5], [1.0, 0.0]))

    def test_kl_shape(self):
        with pytest.raises(ValidationError, match="length mismatch"):
            kl_divergence([1.0], [0.5, 0.5])

    def test_total_variation(self):
        assert total_variation([1.0, 0.0], [0.5, 0.5]) == pytest.approx(0.5)

    def test_positive_part(self):
        assert positive_part(-0.3) == 0.0
        assert positive_part(0.3) == 0.3


class TestIdentities:

    @pytest.mark.parametrize("seed", range(5))
    def test_chain_rule(self, seed):
        rng = np.random.default_rng(seed)
        joint = rng.dirichlet(np.ones(12)).reshape(2, 3, 2)
        whole = mutual_information(joint.reshape(2, 6))
        split = mutual_information(joint.sum(axis=1)) + conditional_mutual_information(joint)
        assert whole == pytest.approx(split, abs=1e-12)
        pair = joint.sum(axis=2)
        assert joint_entropy(pair, [0, 1]) == pytest.approx(
            entropy(pair.sum(axis=0)) + conditional_entropy(pair), abs=1e-12
        )

    @pytest.mark.parametrize("seed", range(5))
    def test_data_processing(self, seed):
        # A -> B -> C
        rng = np.random.default_rng(seed)
        p_a = rng.dirichlet(np.ones(3))
        p_b_a = rng.dirichlet(np.ones(3), size=3)
        p_c_b = rng.dirichlet(np.ones(2), size=3)
        joint = p_a[:, None, None] * p_b_a[:, :, None] * p_c_b[None, :, :]
        assert mutual_information(joint.sum(axis=1)) <= mutual_information(joint.sum(axis=2)) + 1e-12
        # nothing about C is left once B is known
        assert conditional_mutual_information(joint.transpose(0, 2, 1)) == pytest.approx(
            0.0, abs=1e-12
        )

    @pytest.mark.parametrize("seed", range(5))
    def test_pinsker(self, seed):
        rng = np.random.default_rng(seed)
        p, q = rng.dirichlet(np.ones(4), size=2)
        assert total_variation(p, q) <= math.sqrt(kl_divergence(p, q) * math.log(2.0) / 2.0) + 1e-12
