# pylint: disable=R0201, R0903

"""Typicality decoder unit tests."""

import numpy as np
import pytest

from wiretap_core.coding.decoder import (
    DecodeStatus,
    joint_types,
    typical_mask,
    typicality_decode,
)
from wiretap_core.service.exceptions import ValidationError

WORDS = [[0, 1], [1, 0]]


class TestTypicalMask:

    def test_joint_types_are_laws(self, make_decoder_codebook):
        types = joint_types(make_decoder_codebook(WORDS), np.array([0, 1]))
        assert types.shape[:4] == (1, 1, 1, 2)
        assert np.allclose(types.sum(axis=-1), 1.0)

    def test_support_violation(self, make_decoder_codebook):
        mask = typical_mask(make_decoder_codebook(WORDS), [0, 1], eps=0.9)
        assert mask[0, 0, 0, 0]
        assert not mask[0, 0, 0, 1]

    def test_bad_eps(self, make_decoder_codebook):
        with pytest.raises(ValidationError, match="positive"):
            typical_mask(make_decoder_codebook(WORDS), [0, 1], eps=0.0)

    def test_bad_length(self, make_decoder_codebook):
        with pytest.raises(ValidationError, match="length"):
            typical_mask(make_decoder_codebook(WORDS), [0, 1, 1])


class TestTypicalityDecode:

    @pytest.mark.parametrize("y, m", [([0, 1], 0), ([1, 0], 1)])
    def test_unique(self, make_decoder_codebook, y, m):
        result = typicality_decode(make_decoder_codebook(WORDS), y)
        assert result.ok
        assert result.status is DecodeStatus.UNIQUE
        assert result.m == m

    def test_none(self, make_decoder_codebook):
        result = typicality_decode(make_decoder_codebook(WORDS), [0, 0])
        assert result.status is DecodeStatus.NONE
        assert not result.ok
        assert tuple(result)[:4] == (0, 0, 0, 0)

    def test_multiple(self, make_decoder_codebook):
        result = typicality_decode(make_decoder_codebook([[0, 1], [0, 1]]), [0, 1])
        assert result.status is DecodeStatus.MULTIPLE
        assert result.m == 0
