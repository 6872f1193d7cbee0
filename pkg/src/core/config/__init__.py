from .defaults import TESTBED_USERS, detectors, grid, stability
from .network_config import (
    DEFAULT_CONFIG_PATH,
    GridSection,
    NetworkConfig,
    ProtocolSection,
    ReceiverSection,
    ScoringSection,
    SolverSection,
    SourceSection,
    StabilitySection,
    SweepSection,
    UserConfig,
    get_network_config,
    testbed_network_config,
    reset_global_config,
)

__all__ = [
    "DEFAULT_CONFIG_PATH",
    "TESTBED_USERS",
    "GridSection",
    "NetworkConfig",
    "ProtocolSection",
    "ReceiverSection",
    "ScoringSection",
    "SolverSection",
    "SourceSection",
    "StabilitySection",
    "SweepSection",
    "UserConfig",
    "detectors",
    "get_network_config",
    "grid",
    "testbed_network_config",
    "reset_global_config",
    "stability",
]
