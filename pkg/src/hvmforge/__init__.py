"""Exact hidden-variable models for systems of random variables.

Distributions are exact rationals throughout. The main entry points:

- :mod:`hvmforge.prob` -- finite distributions, push-forwards, couplings
- :mod:`hvmforge.systems` -- systems indexed by (property, context)
- :mod:`hvmforge.hvm` -- the six model forms and the constructions between them
- :mod:`hvmforge.contextuality` -- exact noncontextuality decision, cyclic sums
"""

from .contextuality import NcDecision, cycle_functional, cycle_max, find_nc_hvm
from .errors import *  # noqa: F401,F403
from .hvm import (
    CiHvm,
    FcHvm,
    GeneralHvm,
    NcHvm,
    RhoHvm,
    XiHvm,
    ci_to_fc,
    embed_nc,
    fc_to_ci,
    fc_to_general,
    general_to_fc,
    models,
    parse_hvm,
    realize,
    realize_all,
    realized_system,
    rho_to_nc,
    serialize_hvm,
    xi_to_general,
)
from .prob import (
    Assignment,
    Dist,
    JointDist,
    comonotone_coupling,
    dist_eq,
    product_coupling,
    project,
    pushforward,
)
from .systems import (
    Context,
    Property,
    System,
    SystemReport,
    cyclic4,
    is_consistently_connected,
    parse_system,
    serialize_system,
)

__version__ = "0.1.0"
