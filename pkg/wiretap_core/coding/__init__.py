"""
Finite-blocklength simulator of the superposition wiretap code:
codebooks, likelihood and causal encoders, typicality decoder,
soft-covering divergence and the trial harness
"""

# fmt: off

from .codebook import Codebook, Rates, generate_codebook, index_size, substitute_state
from .covering import (
    CoverEstimate,
    CoveringBound,
    covering_bound,
    covering_thresholds,
    exact_cover_divergence,
    gallager_e0,
    soft_cover_divergence,
)
from .decoder import DecodeResult, DecodeStatus, typicality_decode
from .encoder import (
    CausalEncoder,
    causal_encode,
    causal_outcome_law,
    channel_transmit,
    likelihood_encode,
    likelihood_outcome_law,
    outcome_law_distance,
)
from .trials import SimConfig, SimReport, run_trials, semantic_leakage
