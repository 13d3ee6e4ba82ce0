"""
Numeric tolerances, guards and defaults shared across the package
"""

PROB_TOL = 1e-9
"""`float` : tolerance for a probability vector to sum to one"""

ZERO_TOL = 1e-12
"""`float` : masses below this value are treated as exact zeros"""

MI_CLAMP_TOL = 1e-9
"""`float` : mutual informations in (-MI_CLAMP_TOL, 0) are clamped to zero"""

DEGRADED_TOL = 1e-7
"""`float` : residual allowed in the degradedness feasibility search"""

GATE_TOL = 1e-9
"""`float` : slack admitted when a design sits exactly on a feasibility gate"""

EXACT_GUARD = 2**24
"""`int` : largest outcome space enumerated in exact simulation mode"""

CODEBOOK_GUARD = 2**24
"""`int` : largest number of stored codebook symbols"""

DEFAULT_DIRECTIONS = 33
"""`int` : weighted-sum directions swept over [0, 90] degrees"""

HAUSDORFF_GRID = 200
"""`int` : number of R_M samples used by the frontier distance"""

DEFAULT_EPS = 0.1
"""`float` : strong typicality slack of the decoder"""

DEFAULT_SEED = 20240601
"""`int` : seed used when none is given"""

MAX_SELECTORS = 64
"""`int` : deterministic selectors enumerated before switching to sampling"""

MAX_GRID_POINTS = 4096
"""`int` : lattice points evaluated before switching to sampled lattice points"""

VERSION = "0.1.0"
"""`str` : tool version written into every provenance header"""

PAST_VERTEX_STEP = 1e-9
"""`float` : offset past a raw frontier's vertex where its boundary has dropped"""
