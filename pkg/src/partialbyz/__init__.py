"""Byzantine agreement under partial Byzantine failures.

Core model: an (n, m, d, b) system of n processes with up to b Byzantine
processes and up to m partially faulty ones, each allowed to lie over at
most d links per round. The library provides the full-information
scenario calculus, the local-majority agreement pipelines with their
omniscient oracle, a signed-message variant, constructive impossibility
witnesses for every bound, and an eventually-synchronous reliable
broadcast simulator, plus a CLI harness (``partialbyz --help``).
"""

from .adversary import (
    Partition,
    RoundBoundFamily,
    WitnessPair,
    auto_partition,
    d_bound_pair,
    family_checks,
    final_round_equal,
    m_bound_pair,
    pair_checks,
    random_scenario,
    random_signed_scenario,
    round_lower_bound_family,
    signed_bound_pair,
    signed_views_equal,
    threshold_view,
    two_round_pair,
    views_equal,
)
from .agreement import (
    DecisionReport,
    LMKind,
    ba_pp,
    ba_pp_fast,
    check_ba,
    om_decide,
    scenario_transform,
    view_transform,
)
from .domain import BOT, DEFAULT_DOMAIN, ONE, ZERO, ValueDomain
from .esync import (
    DeliverySchedule,
    RB2Decider,
    RB3Decider,
    RBReport,
    StaticFaultConfig,
    simulate_esync,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .local_majority import lm2, lm3
from .paths import PathSpace, ScenarioSizeError
from .scenario import (
    PreconditionError,
    Scenario,
    SystemConfig,
    ValidationReport,
    View,
    fast_condition_holds,
    resilience_holds,
    resilience_holds_signed,
    validate_scenario,
    view_lookup_nested,
    view_of,
)
from .signed import (
    SignedChain,
    SignedScenario,
    SignedView,
    sba_collect,
    sba_pp,
    signed_view_of,
    validate_signed_scenario,
    verify_chain,
)

__version__ = "0.1.0"
