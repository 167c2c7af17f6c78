# settings.py
"""
Default values and logging setup used throughout respslice.

The module level constants are the defaults of every analysis run. They can be overwritten per run by creating an
AnalysisConfig object, which is what the console interface does with its command line flags.
"""
from dataclasses import dataclass, field
import logging

TOOL_VERSION = '1.0.0'
"""The version written into suggestion documents."""
LOG_LEVEL = logging.INFO
"""The default log level."""
LOG_FILE = None
"""The default log file. If None, all output is logged to the console."""
LOG_FORMAT = '%(asctime)s - %(levelname)s: %(message)s'
"""The format of the log messages."""

MAX_OVERLAP = 0.75
"""Slice overlap above which only one output instruction keeps its candidates."""
MIN_EXTRACT_SIZE = 3
"""Minimum number of extracted statements of a suggested candidate."""
ALLOW_DUPLICATION = 1.0
"""Maximum ratio of duplicated statements in a suggested candidate."""
DEFAULT_FUEL = 1_000_000
"""Step budget of a single interpreter run."""
DEFAULT_SEED = 0
"""Seed for random input generation."""
RANDOM_INPUTS = 20
"""Number of random inputs used for behavior preservation checks."""
MAX_DIFF = 2
"""Number of differing statements tolerated when matching suggestions against true occurrences."""
WORKERS = 0
"""Number of worker threads. 0 disables the thread pool."""

ALGORITHMS = ('output-based', 'complete-computation', 'object-state')
"""The names of the slicing algorithms."""

LOG_LEVEL_TYPES = {'DEBUG': logging.DEBUG, 'INFO': logging.INFO, 'WARNING': logging.WARNING,
                   'ERROR': logging.ERROR, 'CRITICAL': logging.CRITICAL}


def configure_logging(log_level: int | str = LOG_LEVEL, log_file: str = LOG_FILE):
    """
    Configures the root logger for respslice.

    :param log_level: The log_level used for Logging. Must be string or integer. The strings must be one of
        the following: DEBUG, INFO, WARNING, ERROR, CRITICAL. Default is INFO.
    :param log_file: A possible name and path of the log file. If None provided, all output will be logged to the
        console.
    :raises TypeError: If the log level is an unknown string.
    """
    if isinstance(log_level, str) and log_level.upper() not in LOG_LEVEL_TYPES.keys():
        raise TypeError(f"Invalid log level: {log_level}. Must be one of DEBUG, INFO, WARNING, ERROR, CRITICAL.")
    elif isinstance(log_level, str):
        log_level = LOG_LEVEL_TYPES[log_level.upper()]
    logging.basicConfig(level=log_level, filename=log_file, encoding='utf8', format=LOG_FORMAT)


@dataclass(frozen=True)
class AnalysisConfig:
    """
    The tunable values of one analysis run.
    """
    max_overlap: float = MAX_OVERLAP
    """Rule 6 threshold."""
    min_extract_size: int = MIN_EXTRACT_SIZE
    """Candidates with fewer extracted statements are dropped before rule checking."""
    allow_duplication: float = ALLOW_DUPLICATION
    """Candidates with a higher duplication ratio are dropped."""
    algorithms: tuple[str, ...] | None = None
    """The slicing algorithms to run. None selects them by method type."""
    disabled_rules: frozenset[int] = field(default_factory=frozenset)
    """Rules whose verdicts are computed but ignored."""

    def __post_init__(self):
        """
        Validates the configuration values.

        :raises ValueError: If a ratio is outside [0, 1] or an algorithm is unknown.
        """
        if not 0 <= self.max_overlap <= 1:
            raise ValueError(f'max_overlap must be in [0, 1], but got {self.max_overlap}')
        if not 0 <= self.allow_duplication <= 1:
            raise ValueError(f'allow_duplication must be in [0, 1], but got {self.allow_duplication}')
        if self.min_extract_size < 0:
            raise ValueError(f'min_extract_size must not be negative, but got {self.min_extract_size}')
        for a in self.algorithms or ():
            if a not in ALGORITHMS:
                raise ValueError(f'Unknown slicing algorithm "{a}". Must be one of {", ".join(ALGORITHMS)}.')
