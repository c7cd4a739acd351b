"""Groundness analysis over the Pos and Def Boolean-function domains.

Bottom-up (goal-independent) abstract interpretation of pure clause
programs, worst-case program families whose analyses walk exponentially
long chains, and a brute-force oracle for differential verification.
"""

from ._kernel import BACKEND as kernel_backend

__version__ = "0.1.0"

__all__ = ["__version__", "kernel_backend"]
