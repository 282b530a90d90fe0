"""Eventually positive matrix semigroups and powers: spectral analysis and theorem checkers."""

from __future__ import annotations

from .checkers import CheckConfig, CheckReport, run_all, run_check
from .errors import EvposError
from .generators import InstanceBundle, generate

__all__ = [
    "CheckConfig",
    "CheckReport",
    "EvposError",
    "InstanceBundle",
    "generate",
    "run_all",
    "run_check",
]

__version__ = "0.1.0"
