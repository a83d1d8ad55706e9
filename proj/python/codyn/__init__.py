"""Codynamic fitness landscapes of coevolutionary minimal substrates."""

from ._codyn import *  # noqa: F401,F403

__version__ = "0.1.0"
