"""
qnetctl Network Configuration

Hierarchy: CLI > ENV > FILE > Defaults

Usage:
    # Global config (QNETCTL_CONFIG, ~/.qnetctl/config.json, or the built-in network)
    config = get_network_config()

    # From file (JSON by suffix, YAML otherwise)
    config = NetworkConfig.from_file("network.json")

    # CLI overrides
    config.merge_from_cli_args(seed=7, bin_width=300)
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional

from src.core.config import defaults
from src.core.grid import ConjugatePair, GridConfig, conjugate_pairs
from src.core.physics import ProtocolParams, ReceiverModel, Receivers, SourceModel, SplitterMode
from src.core.scoring import Interpolation, ScoreFunction
from src.core.scoring.score_function import DEFAULT_BREAKPOINTS
from src.core.stability import Aggregation, DowntimeInterval
from src.core.topology import User, UserStatus

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path("~/.qnetctl/config.json")

_RECEIVER_FIELDS = ("detector_efficiency", "dark_count_rate", "internal_loss_db", "visibility")


@dataclass
class UserConfig:
    """One user as written in a network file."""

    id: str
    bounce_back_loss_db: Optional[float] = None
    """Round-trip deployed fibre loss; None for a local user"""

    status: Literal["active", "failed"] = "active"

    receiver: Dict[str, float] = field(default_factory=dict)
    """Per-user receiver overrides"""

    def __post_init__(self):
        unknown = set(self.receiver) - set(_RECEIVER_FIELDS)
        if unknown:
            raise ValueError(f"users[{self.id}].receiver: unknown field(s) {sorted(unknown)}")
        self.to_user()

    def to_user(self) -> User:
        try:
            return User.from_bounce_back(self.id, self.bounce_back_loss_db, UserStatus(self.status))
        except ValueError as e:
            raise ValueError(f"users[{self.id}]: {e}") from e


@dataclass
class GridSection:
    """Channel grid and the pairs the planner may use."""

    first_itu: int = defaults.grid.first_itu
    last_itu: int = defaults.grid.last_itu
    center_itu: int = defaults.grid.center_itu
    split_threshold: int = defaults.grid.split_threshold

    excluded: List[int] = field(default_factory=lambda: list(defaults.grid.excluded))
    """Logical channels withheld from users"""

    available: Optional[List[int]] = field(
        default_factory=lambda: list(range(1, defaults.grid.max_pair + 1))
    )
    """Pair indices the planner may use; None for the whole grid"""

    def to_grid(self) -> GridConfig:
        try:
            return GridConfig(self.first_itu, self.last_itu, self.center_itu, self.split_threshold)
        except ValueError as e:
            raise ValueError(f"grid: {e}") from e

    def pairs(self) -> List[ConjugatePair]:
        return conjugate_pairs(self.to_grid(), excluded=self.excluded, only=self.available)


@dataclass
class SourceSection:
    """Source brightness, as a pair rate or as a corrected reference count."""

    pair_rate_per_channel: Optional[float] = None
    reference_singles: Optional[float] = defaults.REFERENCE_SINGLES
    reference_transmission: float = 1.0
    channel_spectrum: Dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.reference_transmission <= 0:
            raise ValueError("source.reference_transmission must be > 0")
        self.channel_spectrum = {int(k): float(v) for k, v in self.channel_spectrum.items()}
        if self.pair_rate_per_channel is None and self.reference_singles is None:
            raise ValueError("source needs pair_rate_per_channel or reference_singles")

    @property
    def mu(self) -> float:
        if self.pair_rate_per_channel is not None:
            return float(self.pair_rate_per_channel)
        return float(self.reference_singles) / self.reference_transmission

    def to_source(self) -> SourceModel:
        try:
            return SourceModel(self.mu, self.channel_spectrum)
        except ValueError as e:
            raise ValueError(f"source: {e}") from e


@dataclass
class ReceiverSection:
    """Network default receiver."""

    detector_efficiency: float = defaults.detectors.local_efficiency
    dark_count_rate: float = defaults.detectors.local_dark_count_rate
    internal_loss_db: float = defaults.detectors.internal_loss_db
    visibility: float = 0.99
    splitter_mode: Literal["exact", "nominal"] = "exact"

    def to_receiver(self) -> ReceiverModel:
        try:
            return ReceiverModel(
                self.detector_efficiency, self.dark_count_rate, self.internal_loss_db, self.visibility
            )
        except ValueError as e:
            raise ValueError(f"receiver: {e}") from e

    @property
    def splitter(self) -> SplitterMode:
        return SplitterMode(self.splitter_mode)


@dataclass
class ProtocolSection:
    sifting_factor: float = 0.5
    ec_efficiency: float = 1.1
    coincidence_window: float = 5e-10
    include_accidentals: bool = True

    def to_params(self) -> ProtocolParams:
        try:
            return ProtocolParams(**asdict(self))
        except ValueError as e:
            raise ValueError(f"protocol: {e}") from e


@dataclass
class ScoringSection:
    breakpoints: List[List[float]] = field(
        default_factory=lambda: [list(p) for p in DEFAULT_BREAKPOINTS]
    )
    interpolation: Literal["log", "linear"] = "log"

    failed_exit_code: int = 4
    """Exit code of simulate/score on a FAILED network (0 for reporting only)"""

    def to_score_function(self) -> ScoreFunction:
        try:
            return ScoreFunction(
                tuple((float(r), float(s)) for r, s in self.breakpoints),
                Interpolation(self.interpolation),
            )
        except ValueError as e:
            raise ValueError(f"scoring: {e}") from e


@dataclass
class SweepSection:
    grid_min: float = 1e4
    grid_max: float = 1e9
    points_per_decade: int = 31
    points: Optional[int] = None
    plateau_tolerance: float = 0.1
    n_jobs: int = 1


@dataclass
class StabilitySection:
    bin_width: float = defaults.stability.bin_width
    origin: float = 0.0
    aggregation: Literal["means", "bin-scores"] = "means"
    reference_link: str = defaults.stability.reference_link
    masks: List[Dict[str, Any]] = field(default_factory=list)

    def to_masks(self) -> List[DowntimeInterval]:
        try:
            return [
                DowntimeInterval(float(m["start"]), float(m["end"]), str(m.get("reason", "downtime")))
                for m in self.masks
            ]
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"stability.masks: {e}") from e


@dataclass
class SolverSection:
    seed: int = 0
    exact_limit: int = 5


@dataclass
class NetworkConfig:
    """
    Unified qnetctl configuration.

    Hierarchy: CLI > ENV > FILE > Defaults

    Example:
        config = NetworkConfig.from_file("network.yml")
        config.merge_from_env()
        config.merge_from_cli_args(seed=3)
    """

    users: List[UserConfig] = field(default_factory=list)
    grid: GridSection = field(default_factory=GridSection)
    source: SourceSection = field(default_factory=SourceSection)
    receiver: ReceiverSection = field(default_factory=ReceiverSection)
    protocol: ProtocolSection = field(default_factory=ProtocolSection)
    scoring: ScoringSection = field(default_factory=ScoringSection)
    sweep: SweepSection = field(default_factory=SweepSection)
    stability: StabilitySection = field(default_factory=StabilitySection)
    solver: SolverSection = field(default_factory=SolverSection)

    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    """Global log level"""

    def __post_init__(self):
        """Validate configuration after initialization"""
        self.validate()

    def validate(self) -> None:
        ids = [u.id for u in self.users]
        duplicates = sorted({i for i in ids if ids.count(i) > 1})
        if duplicates:
            raise ValueError(f"users: duplicate id(s) {duplicates}")
        self.grid.to_grid()
        self.grid.pairs()
        self.source.to_source()
        self.receiver.to_receiver()
        SplitterMode(self.receiver.splitter_mode)
        self.protocol.to_params()
        self.scoring.to_score_function()
        if self.sweep.grid_min <= 0 or self.sweep.grid_max < self.sweep.grid_min:
            raise ValueError("sweep: need 0 < grid_min <= grid_max")
        if self.stability.bin_width <= 0:
            raise ValueError("stability.bin_width must be > 0")
        Aggregation(self.stability.aggregation)
        self.stability.to_masks()
        if self.solver.exact_limit < 0:
            raise ValueError("solver.exact_limit must be >= 0")
        if self.log_level not in ("DEBUG", "INFO", "WARNING", "ERROR"):
            raise ValueError(f"log_level: invalid value {self.log_level!r}")

    # ------------------------------------------------------------------
    # Domain objects
    # ------------------------------------------------------------------

    def to_users(self) -> List[User]:
        return [u.to_user() for u in self.users]

    def to_receivers(self) -> Receivers:
        default = self.receiver.to_receiver()
        overrides = {}
        for user in self.users:
            if user.receiver:
                try:
                    overrides[user.id] = default.updated(**user.receiver)
                except ValueError as e:
                    raise ValueError(f"users[{user.id}].receiver: {e}") from e
        return Receivers(default, overrides)

    def to_score_function(self) -> ScoreFunction:
        return self.scoring.to_score_function()

    @property
    def fail_threshold(self) -> float:
        return self.to_score_function().fail_threshold

    # ------------------------------------------------------------------
    # Loading
    # ------------------------------------------------------------------

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "NetworkConfig":
        """Build from a parsed JSON/YAML mapping; unknown sections are rejected."""
        known = {
            "users", "grid", "source", "receiver", "protocol", "scoring",
            "sweep", "stability", "solver", "log_level",
        }
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"Unknown config section(s): {sorted(unknown)}")

        def section(name: str, kind: type):
            try:
                return kind(**(data.get(name) or {}))
            except TypeError as e:
                raise ValueError(f"{name}: {e}") from e

        try:
            users = [UserConfig(**u) for u in data.get("users", [])]
        except TypeError as e:
            raise ValueError(f"users: {e}") from e

        return cls(
            users=users,
            grid=section("grid", GridSection),
            source=section("source", SourceSection),
            receiver=section("receiver", ReceiverSection),
            protocol=section("protocol", ProtocolSection),
            scoring=section("scoring", ScoringSection),
            sweep=section("sweep", SweepSection),
            stability=section("stability", StabilitySection),
            solver=section("solver", SolverSection),
            log_level=data.get("log_level", "WARNING"),
        )

    @classmethod
    def from_file(cls, config_path: str | Path) -> "NetworkConfig":
        """
        Load configuration from a JSON (``.json``) or YAML file.

        Raises:
            FileNotFoundError: If the file does not exist
            ValueError: On malformed content or invalid values
        """
        config_path = Path(config_path).expanduser()

        if not config_path.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")

        text = config_path.read_text(encoding="utf-8")
        try:
            if config_path.suffix.lower() == ".json":
                data = json.loads(text)
            else:
                import yaml

                data = yaml.safe_load(text) or {}
        except Exception as e:
            raise ValueError(f"Cannot parse {config_path}: {e}") from e

        if not isinstance(data, Mapping):
            raise ValueError(f"{config_path}: top level must be a mapping")
        return cls.from_dict(data)

    @classmethod
    def from_cli_args(cls, **kwargs) -> "NetworkConfig":
        """Built-in network with environment and CLI overrides applied."""
        config = testbed_network_config()
        config.merge_from_env()
        config.merge_from_cli_args(**kwargs)
        return config

    def merge_from_env(self):
        """Merge configuration from environment variables (in-place)"""
        if os.getenv("QNETCTL_LOG_LEVEL"):
            self.log_level = os.getenv("QNETCTL_LOG_LEVEL", "WARNING").upper()
        seed = os.getenv("QNETCTL_SEED")
        if seed:
            try:
                self.solver.seed = int(seed)
            except ValueError:
                logger.warning(f"Ignoring non-integer QNETCTL_SEED={seed!r}")
        self.validate()

    def merge_from_cli_args(self, **kwargs):
        """
        Merge CLI arguments into config (in-place, highest priority).

        None values are ignored so unset flags never override the file.

        Args:
            **kwargs: seed, exact_limit, bin_width, origin, aggregation,
                grid_min, grid_max, grid_points, points_per_decade, n_jobs,
                splitter, reference_transmission, report_only, log_level
        """
        given = {k: v for k, v in kwargs.items() if v is not None}

        if "seed" in given:
            self.solver.seed = int(given["seed"])
        if "exact_limit" in given:
            self.solver.exact_limit = int(given["exact_limit"])
        if "bin_width" in given:
            self.stability.bin_width = float(given["bin_width"])
        if "origin" in given:
            self.stability.origin = float(given["origin"])
        if "aggregation" in given:
            self.stability.aggregation = str(given["aggregation"])
        if "grid_min" in given:
            self.sweep.grid_min = float(given["grid_min"])
        if "grid_max" in given:
            self.sweep.grid_max = float(given["grid_max"])
        if "grid_points" in given:
            self.sweep.points = int(given["grid_points"])
        if "points_per_decade" in given:
            self.sweep.points_per_decade = int(given["points_per_decade"])
        if "n_jobs" in given:
            self.sweep.n_jobs = int(given["n_jobs"])
        if "splitter" in given:
            self.receiver.splitter_mode = str(given["splitter"])
        if "reference_transmission" in given:
            self.source.reference_transmission = float(given["reference_transmission"])
        if given.get("report_only"):
            self.scoring.failed_exit_code = 0
        if "log_level" in given:
            self.log_level = str(given["log_level"]).upper()

        # Re-validate after merge
        self.validate()

    def to_dict(self) -> Dict[str, Any]:
        """Export configuration as dictionary"""
        return {
            "users": [asdict(u) for u in self.users],
            "grid": asdict(self.grid),
            "source": asdict(self.source),
            "receiver": asdict(self.receiver),
            "protocol": asdict(self.protocol),
            "scoring": asdict(self.scoring),
            "sweep": asdict(self.sweep),
            "stability": asdict(self.stability),
            "solver": asdict(self.solver),
            "log_level": self.log_level,
        }


def testbed_network_config() -> NetworkConfig:
    """The 12-user deployment with its measured losses and visibilities."""
    users = []
    for entry in defaults.TESTBED_USERS:
        receiver: Dict[str, float] = {"visibility": entry.visibility}
        if entry.bounce_back_loss_db is not None:
            receiver["detector_efficiency"] = defaults.detectors.deployed_efficiency
            receiver["dark_count_rate"] = defaults.detectors.deployed_dark_count_rate
        users.append(UserConfig(entry.id, entry.bounce_back_loss_db, entry.status, receiver))

    start, end = defaults.stability.setup_window
    return NetworkConfig(
        users=users,
        stability=StabilitySection(masks=[{"start": start, "end": end, "reason": "setup"}]),
    )


# Global config instance (lazy-loaded)
_global_config: Optional[NetworkConfig] = None


def get_network_config(reload: bool = False) -> NetworkConfig:
    """
    Get or create the global network configuration.

    Loads from (in order):
    1. The file named by QNETCTL_CONFIG (if set)
    2. ~/.qnetctl/config.json (if it exists)
    3. The built-in 12-user network

    Environment overrides are applied on top.
    """
    global _global_config

    if _global_config is None or reload:
        env_path = os.getenv("QNETCTL_CONFIG")
        default_path = DEFAULT_CONFIG_PATH.expanduser()
        if env_path:
            logger.info(f"Loading config from QNETCTL_CONFIG={env_path}")
            _global_config = NetworkConfig.from_file(env_path)
        elif default_path.exists():
            logger.info(f"Loading config from {default_path}")
            _global_config = NetworkConfig.from_file(default_path)
        else:
            _global_config = testbed_network_config()
        _global_config.merge_from_env()

    return _global_config


def reset_global_config():
    """Reset global config (useful for testing)"""
    global _global_config
    _global_config = None
