"""Fremdervectors (x with <x, Ax> = 0) and fremdervalues of complex matrices."""

from .core import *  # noqa: F401,F403
from .structured import *  # noqa: F401,F403
from .general import *  # noqa: F401,F403
from .oracle import *  # noqa: F401,F403

__version__ = "0.1.0"
