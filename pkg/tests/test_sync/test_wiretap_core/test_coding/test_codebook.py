# pylint: disable=R0201, R0903

"""Superposition codebook unit tests."""

import numpy as np
import pytest

from wiretap_core.coding.codebook import (
    Rates,
    generate_codebook,
    index_size,
    noncausal_joint,
    state_posterior,
    substitute_state,
)
from wiretap_core.scheme import SchemeMode
from wiretap_core.service.exceptions import GuardExceededError, ValidationError

MESSAGE_ONLY = Rates(0.0, 0.0, 0.0, 0.5)


class TestIndexSize:

    @pytest.mark.parametrize(
        "n, rate, size", [(2, 0.5, 2), (3, 0.0, 1), (1, 1.0, 2), (4, 0.5, 4), (3, 0.4, 3)]
    )
    def test_sizes(self, n, rate, size):
        assert index_size(n, rate) == size

    def test_negative(self):
        with pytest.raises(ValidationError):
            index_size(2, -0.1)


class TestGenerateCodebook:

    def test_shapes(self, xor_case1_joint):
        cb = generate_codebook(xor_case1_joint, 2, MESSAGE_ONLY, seed=1)
        assert cb.sizes == (1, 1, 1, 2)
        assert cb.u.shape == (1, 2)
        assert cb.v.shape == (1, 1, 1, 2, 2)
        assert cb.mode is SchemeMode.CASE1
        assert cb.joint.mode is SchemeMode.NON_CAUSAL
        assert str(cb) == "<Codebook n=2 L=1 N=1 K=1 M=2 seed=1>"

    def test_symbols_in_range(self, fig5_case2_codebook):
        cb = fig5_case2_codebook
        assert cb.u.max() < cb.joint.scheme.u_size
        assert cb.v.max() < cb.joint.scheme.v_size
        assert cb.v_inner == 2

    def test_reproducible(self, xor_case1_joint):
        a = generate_codebook(xor_case1_joint, 3, MESSAGE_ONLY, seed=9)
        b = generate_codebook(xor_case1_joint, 3, MESSAGE_ONLY, seed=9)
        assert np.array_equal(a.v, b.v)
        assert np.array_equal(a.u, b.u)

    def test_bad_blocklength(self, xor_case1_joint):
        with pytest.raises(ValidationError, match="blocklength"):
            generate_codebook(xor_case1_joint, 0, MESSAGE_ONLY, seed=1)

    def test_guard(self, xor_case1_joint):
        with pytest.raises(GuardExceededError):
            generate_codebook(xor_case1_joint, 30, Rates(0.0, 0.0, 0.0, 1.0), seed=1)


class TestStateCopy:

    def test_substitute(self, fig5_case2_codebook):
        s_seq = np.array([1, 0])
        cb = substitute_state(fig5_case2_codebook, s_seq)
        assert np.all(cb.v // 2 == s_seq)
        assert np.array_equal(cb.v % 2, fig5_case2_codebook.v % 2)
        assert np.array_equal(cb.u, fig5_case2_codebook.u)

    def test_substitute_length(self, fig5_case2_codebook):
        with pytest.raises(ValidationError, match="length"):
            substitute_state(fig5_case2_codebook, [0, 1, 1])

    def test_substitute_needs_state_copy(self, xor_case1_joint):
        cb = generate_codebook(xor_case1_joint, 2, MESSAGE_ONLY, seed=1)
        with pytest.raises(ValidationError, match="no state copy"):
            substitute_state(cb, [0, 1])

    def test_noncausal_joint_kept(self, xor_case1_joint):
        view = noncausal_joint(xor_case1_joint)
        assert noncausal_joint(view) is view

    def test_posterior_of_independent_state(self, xor_case1_joint):
        post = state_posterior(noncausal_joint(xor_case1_joint))
        assert np.allclose(post, 0.5)

    def test_posterior_of_state_copy(self, xor_state_copy_joint):
        post = state_posterior(xor_state_copy_joint)
        assert np.allclose(post[:, 0, :], np.eye(2))
