# pylint: disable=R0201, R0903

"""Provenance and exception hierarchy tests."""

import json

import numpy as np
import pytest

from wiretap_core.bounds import BoundId
from wiretap_core.service.constants import VERSION
from wiretap_core.service.exceptions import (
    AtypicalStateError,
    ChannelFormatError,
    GuardExceededError,
    InfeasibleConfigError,
    ValidationError,
    WiretapError,
)
from wiretap_core.service.provenance import Provenance, canonical_json, config_hash


class TestConfigHash:

    def test_key_order_irrelevant(self):
        assert config_hash({"a": 1, "b": [1, 2]}) == config_hash({"b": [1, 2], "a": 1})

    def test_numpy_and_enums(self):
        payload = {"bound": BoundId.C_CASE1, "dist": np.array([0.5, 0.5]), "n": np.int64(3)}
        assert json.loads(canonical_json(payload)) == {
            "bound": "C_Case1",
            "dist": [0.5, 0.5],
            "n": 3,
        }

    def test_length(self):
        assert len(config_hash({"a": 1})) == 16
        assert len(config_hash({"a": 1}, length=8)) == 8

    def test_unserializable(self):
        with pytest.raises(TypeError):
            canonical_json({"a": object()})


class TestProvenance:

    def test_header(self):
        header = Provenance(seed=3, config="ff00", argv=("a", "b")).header()
        assert header == f"# wiretap-core {VERSION} seed=3 config=ff00 argv=a b"

    def test_as_dict(self):
        data = Provenance(seed=3, config="ff00", argv=("a",)).as_dict()
        assert data == {"version": VERSION, "seed": 3, "config": "ff00", "argv": ["a"]}


class TestExceptions:

    @pytest.mark.parametrize(
        "error, code, base",
        [
            (ChannelFormatError, 2, ValueError),
            (ValidationError, 2, ValueError),
            (InfeasibleConfigError, 3, ValueError),
            (GuardExceededError, 4, RuntimeError),
            (AtypicalStateError, 4, RuntimeError),
        ],
    )
    def test_exit_codes(self, error, code, base):
        assert error.exit_code == code
        assert issubclass(error, WiretapError)
        assert issubclass(error, base)
