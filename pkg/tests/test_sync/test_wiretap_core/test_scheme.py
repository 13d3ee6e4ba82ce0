# pylint: disable=R0201, R0903

"""Auxiliary design and joint system unit tests."""

import json

import numpy as np
import pytest

from wiretap_core.bounds import BoundId, eval_causal_case, eval_nc_inner
from wiretap_core.measures import binary_entropy
from wiretap_core.scheme import (
    AuxiliaryScheme,
    SchemeMode,
    as_correlated,
    build_joint,
    deterministic_selector,
    load_scheme,
    scheme_from_dict,
    scheme_to_dict,
    to_noncausal,
)
from wiretap_core.service.exceptions import ChannelFormatError, ValidationError
from tests.data import (
    design_bad_mode,
    design_bad_selector_3d,
    design_bad_selector_flat,
    design_bad_selector_undeclared,
    design_xor_case1,
    design_xor_noncausal,
)


def random_design(mode, s_size, u_size, v_size, x_size, seed=3):
    rng = np.random.default_rng(seed)
    dist = rng.dirichlet(np.ones(u_size * v_size)).reshape(u_size, v_size)
    selector = rng.dirichlet(np.ones(x_size), size=(s_size, u_size, v_size))
    return AuxiliaryScheme(mode, dist, selector)


class TestSchemeMode:

    def test_case4_alias(self):
        assert SchemeMode.parse("Case4") is SchemeMode.CASE3

    def test_unknown(self):
        with pytest.raises(ValidationError, match="unknown scheme mode"):
            SchemeMode.parse("Case9")

    def test_flags(self):
        assert not SchemeMode.NON_CAUSAL.is_causal
        assert SchemeMode.CASE2B.embeds_state_in_v
        assert not SchemeMode.CASE3.embeds_state_in_v


class TestAuxiliaryScheme:

    def test_from_dict(self):
        aux = scheme_from_dict(design_xor_case1)
        assert aux.mode is SchemeMode.CASE1
        assert (aux.s_size, aux.u_size, aux.v_size, aux.x_size) == (2, 1, 2, 2)
        assert aux.label == "xor_shannon"

    def test_dict_layout(self):
        data = scheme_to_dict(scheme_from_dict(design_xor_noncausal))
        assert data["mode"] == "NonCausal"
        assert data["sizes"] == {"U": 1, "V": 2}
        assert np.allclose(data["selector"], design_xor_noncausal["selector"])

    def test_bad_mode(self):
        with pytest.raises(ValidationError):
            scheme_from_dict(design_bad_mode)

    def test_missing_selector(self):
        with pytest.raises(ChannelFormatError, match="selector"):
            scheme_from_dict({"mode": "Case1", "input_dist": [[1.0]]})

    @pytest.mark.parametrize(
        "design",
        [design_bad_selector_flat, design_bad_selector_3d, design_bad_selector_undeclared],
    )
    def test_selector_axes(self, design):
        with pytest.raises(ChannelFormatError, match=r"indexed \[s\]\[u\]\[v\]\[x\]"):
            scheme_from_dict(design)

    def test_declared_sizes(self):
        data = dict(design_xor_case1, sizes={"U": 2, "V": 2})
        with pytest.raises(ChannelFormatError, match="dimension mismatch"):
            scheme_from_dict(data)

    def test_case2a_needs_trivial_u(self):
        with pytest.raises(ValidationError, match="Case2A"):
            AuxiliaryScheme(SchemeMode.CASE2A, np.full((2, 1), 0.5), np.full((1, 2, 1, 2), 0.5))

    def test_case2b_needs_trivial_v(self):
        with pytest.raises(ValidationError, match="Case2B"):
            AuxiliaryScheme(SchemeMode.CASE2B, np.full((1, 2), 0.5), np.full((1, 1, 2, 2), 0.5))

    def test_non_stochastic_selector(self):
        with pytest.raises(ValidationError, match="selector row"):
            AuxiliaryScheme(SchemeMode.CASE1, [[1.0]], [[[[0.5, 0.6]]]])

    def test_load(self, tmp_path):
        path = tmp_path / "design.json"
        path.write_text(json.dumps(design_xor_case1), encoding="utf-8")
        assert load_scheme(path).mode is SchemeMode.CASE1

    def test_deterministic_selector(self):
        sel = deterministic_selector([[[0, 1]], [[1, 0]]], 2)
        assert np.allclose(sel, design_xor_case1["selector"])
        with pytest.raises(ValidationError):
            deterministic_selector([[[0, 2]]], 2)

    def test_entropy_bits(self):
        assert scheme_from_dict(design_xor_case1).entropy_bits() == pytest.approx(1.0)


class TestJointSystem:

    def test_normalized(self, xor_channel):
        j = build_joint(xor_channel, scheme_from_dict(design_xor_case1))
        assert j.tensor.sum() == pytest.approx(1.0)
        assert j.tensor.shape == (2, 1, 2, 2, 2, 1)

    def test_measures(self, xor_channel):
        j = build_joint(xor_channel, scheme_from_dict(design_xor_case1))
        # Y = V and S is independent of V
        assert j.mi("V", "Y") == pytest.approx(1.0)
        assert j.mi("V", "S") == pytest.approx(0.0, abs=1e-12)
        assert j.h("Y", "V") == pytest.approx(0.0, abs=1e-12)
        assert j.h("S") == pytest.approx(1.0)
        assert j.mi("V", "Z") == pytest.approx(0.0, abs=1e-12)

    def test_alphabet_mismatch(self, fig6):
        with pytest.raises(ValidationError, match="alphabet mismatch"):
            build_joint(fig6, scheme_from_dict(design_xor_case1))

    def test_state_marginal(self, fig5):
        aux = scheme_from_dict(design_xor_noncausal)
        with pytest.raises(ValidationError, match="state marginal"):
            build_joint(fig5, aux)


class TestToNoncausal:

    @pytest.mark.parametrize(
        "mode, bound, u_size, v_size",
        [
            (SchemeMode.CASE1, BoundId.C_CASE1, 2, 2),
            (SchemeMode.CASE2, BoundId.C_TYPE_I_CASE2, 2, 2),
            (SchemeMode.CASE2A, BoundId.C_CASE2A, 1, 3),
            (SchemeMode.CASE2B, BoundId.C_CASE2B, 3, 1),
            (SchemeMode.CASE3, BoundId.C_TYPE_II_CASE3, 2, 2),
        ],
    )
    def test_inner_bound_identity(self, fig5, mode, bound, u_size, v_size):
        aux = random_design(mode, fig5.s_size, u_size, v_size, fig5.x_size)
        causal = eval_causal_case(bound, build_joint(fig5, aux))
        plugged = eval_nc_inner(build_joint(fig5, to_noncausal(aux, fig5)))
        assert plugged.c_m == pytest.approx(causal.c_m, abs=1e-10)
        assert plugged.c_sum == pytest.approx(causal.c_sum, abs=1e-10)

    def test_state_copy_sizes(self, fig5):
        aux = random_design(SchemeMode.CASE2, 2, 2, 3, 2)
        composite = to_noncausal(aux, fig5)
        assert composite.mode is SchemeMode.NON_CAUSAL
        assert composite.v_size == 6
        assert composite.u_size == 2

    def test_state_copy_matches(self, fig5):
        aux = random_design(SchemeMode.CASE2B, 2, 2, 1, 2)
        composite = build_joint(fig5, to_noncausal(aux, fig5))
        # V' = S exactly
        assert composite.h("S", "V") == pytest.approx(0.0, abs=1e-12)
        assert composite.h("S") == pytest.approx(1.0 - binary_entropy(0.1), abs=1e-9)

    def test_noncausal_unchanged(self, xor_channel):
        aux = scheme_from_dict(design_xor_noncausal)
        assert to_noncausal(aux, xor_channel) is aux

    def test_as_correlated(self, fig5):
        aux = random_design(SchemeMode.CASE3, 2, 2, 2, 2)
        correlated = as_correlated(aux, fig5)
        assert correlated.mode is SchemeMode.NON_CAUSAL
        j = build_joint(fig5, correlated)
        assert j.mi("UV", "S") == pytest.approx(0.0, abs=1e-12)
