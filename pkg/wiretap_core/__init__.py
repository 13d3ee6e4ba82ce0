"""
Secret-message and secret-key rate regions of wiretap channels with
causal or non-causal channel state information
"""

# fmt: off

__author__ = "wiretap-core developers"
__copyright__ = "Copyright 2024, wiretap_core project"

from .addons.base_selector import BaseSelector
from .addons.exporter import Exporter
from .addons.run_selector import RunSelector
from .base import BaseModel as Base
from .bounds import Axis, BoundId, RatePolytope, evaluate, evaluate_design, scalar_projection
from .builtin import builtin_example
from .channel import Degradedness, WiretapChannel, check_degraded, load_channel, transform_general_csi
from .channel_record import BaseChannelRecord as ChannelRecord
from .frontier import RegionFrontier, frontier_dominates, hausdorff_frontier_distance, pareto_union
from .objectives import compare_bounds, example_inequalities, objective_catalog
from .optimizer import ScalarResult, SearchConfig, optimize_region, optimize_scalar
from .run import BaseRun as Run
from .scheme import AuxiliaryScheme, JointSystem, SchemeMode, build_joint, to_noncausal
from .service.constants import VERSION as __version__
from .sim_record import BaseSimRecord as SimRecord
from .vertex import BaseVertex as Vertex
