"""Codebook fixtures shared by the coding tests."""

import numpy as np
import pytest

from wiretap_core.coding.codebook import Codebook, Rates, generate_codebook
from wiretap_core.scheme import (
    AuxiliaryScheme,
    SchemeMode,
    build_joint,
    scheme_from_dict,
    to_noncausal,
)
from tests.data import design_xor_case1, design_xor_noncausal

HALF = Rates(0.5, 0.5, 0.5, 0.5)


@pytest.fixture(scope="session")
def xor_case1_joint(xor_channel):
    return build_joint(xor_channel, scheme_from_dict(design_xor_case1))


@pytest.fixture(scope="session")
def fig5_case2_design():
    # X = S whatever (u, v)
    dist = np.array([[0.1, 0.2], [0.3, 0.4]])
    selector = np.zeros((2, 2, 2, 2))
    for s in range(2):
        selector[s, :, :, s] = 1.0
    return AuxiliaryScheme(SchemeMode.CASE2, dist, selector)


@pytest.fixture
def fig5_case2_codebook(fig5, fig5_case2_design):
    return generate_codebook(build_joint(fig5, fig5_case2_design), 2, HALF, seed=4)


@pytest.fixture(scope="session")
def xor_state_copy_joint(xor_channel):
    """Composite joint whose V-layer is an exact copy of S."""
    selector = np.array([[[[1.0, 0.0]]], [[[0.0, 1.0]]]])
    aux = AuxiliaryScheme(SchemeMode.CASE2A, [[1.0]], selector)
    return build_joint(xor_channel, to_noncausal(aux, xor_channel))


@pytest.fixture
def make_decoder_codebook(xor_channel):
    """Builds a one-word-per-message code on Y = V from explicit V-words."""
    joint = build_joint(xor_channel, scheme_from_dict(design_xor_noncausal))

    def factory(words):
        v = np.array(words, dtype=int).reshape(1, 1, 1, len(words), 2)
        return Codebook(
            n=2,
            sizes=(1, 1, 1, len(words)),
            u=np.zeros((1, 2), dtype=int),
            v=v,
            joint=joint,
            source=joint.scheme,
            rates=Rates(0.0, 0.0, 0.0, 0.5),
            seed=0,
        )

    return factory


@pytest.fixture(scope="session")
def fig5_state_copy_joint(fig5):
    """X = U = S with a trivial V-layer, so I(U;S) = I(UV;S) = H(S)."""
    dist = np.zeros((2, 2, 1))
    selector = np.zeros((2, 2, 1, 2))
    for s in range(2):
        dist[s, s, 0] = fig5.state_dist[s]
        selector[:, s, 0, s] = 1.0
    return build_joint(fig5, AuxiliaryScheme(SchemeMode.NON_CAUSAL, dist, selector))


@pytest.fixture(scope="session")
def fig5_random_joint(fig5):
    rng = np.random.default_rng(9)
    dist = fig5.state_dist[:, None, None] * rng.dirichlet(np.ones(4), size=2).reshape(2, 2, 2)
    selector = rng.dirichlet(np.ones(2), size=(2, 2, 2))
    return build_joint(fig5, AuxiliaryScheme(SchemeMode.NON_CAUSAL, dist, selector))
