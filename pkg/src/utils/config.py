"""
Configuration for Irrational Base Nets
"""

import os
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .errors import DomainError


class NetConfig:
    """Application configuration settings."""

    # Application metadata
    APP_NAME = "irrnet"
    VERSION = "1.0.0"

    # Base limits (digits are written as single characters)
    MAX_BASE_DIGIT = 9
    MAX_COUNT = 2**63 - 1

    # Numerical tolerances
    SNAP_TOLERANCE = 1e-12
    MAX_FLOAT_DIGITS = 60
    FLOAT_DIGITS = 17

    # Above this many points the star sweep only returns a lower bound
    LARGE_N_THRESHOLD = 30000

    CONSTRUCTIONS = ("vdc", "hammersley", "weak12", "dyadic")
    COMMANDS = ("generate", "verify", "disc", "table", "partition")
    MEASURES = ("star", "l2", "both")
    FORMATS = ("csv", "json")

    # Largest N the table command computes unless --m asks for more
    TABLE_MAX_N = 10000

    THREADS_ENV = "IRRNET_THREADS"

    DEBUG = False

    @classmethod
    def threads(cls):
        """Get the worker cap from the environment (at least 1)."""
        raw = os.environ.get(cls.THREADS_ENV, "1")
        try:
            return max(1, int(raw))
        except ValueError:
            return 1

    @classmethod
    def is_supported_base(cls, p, q):
        """Check if (p, q) is a base the package can work in."""
        return 1 <= q <= p <= cls.MAX_BASE_DIGIT

    @classmethod
    def parse_base(cls, text):
        """
        Parse a base given on the command line.

        Args:
            text (str): "phi" or "p,q"

        Returns:
            tuple: (p, q)
        """
        text = text.strip().lower()
        if text in ("phi", "golden", "1,1"):
            return (1, 1)
        try:
            p, q = (int(part) for part in text.split(","))
        except ValueError:
            raise DomainError(f"Base must be 'phi' or 'p,q', got {text!r}")
        if not cls.is_supported_base(p, q):
            raise DomainError(f"Base ({p},{q}) violates 1 <= q <= p <= {cls.MAX_BASE_DIGIT}")
        return (p, q)


@dataclass
class RunConfig:
    """One command-line invocation, validated."""

    command: str
    base: Tuple[int, int] = (1, 1)
    m: Optional[int] = None
    count: Optional[int] = None
    construction: str = "hammersley"
    t: int = 0
    output: Optional[str] = None
    input: Optional[str] = None
    format: str = "csv"
    seed: Optional[Tuple[float, float]] = None
    strict_rho: bool = False
    normalize: bool = True
    measure: str = "star"
    groups: bool = False
    k_max: int = 10
    window_shift: str = "m+1"
    digits: bool = True
    threads: int = field(default_factory=NetConfig.threads)

    def __post_init__(self):
        p, q = self.base
        if not NetConfig.is_supported_base(p, q):
            raise DomainError(f"Base ({p},{q}) violates 1 <= q <= p <= {NetConfig.MAX_BASE_DIGIT}")
        if self.m is not None and self.m < 0:
            raise DomainError(f"m must be non-negative, got {self.m}")
        if self.count is not None and self.count < 1:
            raise DomainError(f"count must be positive, got {self.count}")
        if self.command not in NetConfig.COMMANDS:
            raise DomainError(f"Unknown command {self.command!r}")
        if self.construction not in NetConfig.CONSTRUCTIONS:
            raise DomainError(f"Unknown construction {self.construction!r}")
        if self.measure not in NetConfig.MEASURES:
            raise DomainError(f"Unknown measure {self.measure!r}")
        if self.format not in NetConfig.FORMATS:
            raise DomainError(f"Unknown format {self.format!r}")
        if self.t < 0 or self.k_max < 0:
            raise DomainError("t and k-max must be non-negative")
        if self.window_shift not in ("m+1", "m"):
            raise DomainError(f"window shift must be 'm+1' or 'm', got {self.window_shift!r}")
        if self.m is not None:
            # deferred: numeration reads NetConfig at import time
            from ..models.numeration import BaseSpec, max_level

            cap = max_level(BaseSpec(p, q))
            if self.m > cap:
                raise DomainError(f"m={self.m} exceeds {cap}, the largest level whose count fits 64 bits")

    @property
    def is_phi(self):
        return self.base == (1, 1)
