"""Exception types raised by blochsim.

Every error raised deliberately by this package derives from
:class:`BlochsimError`, so callers can catch the whole family with one
``except`` clause.  The CLI maps these onto process exit codes.
"""

from __future__ import annotations


class BlochsimError(Exception):
    """Base class for all errors raised by blochsim."""


class ConfigError(BlochsimError, ValueError):
    """A run configuration is malformed, incomplete, or contains unknown keys."""


class ZeroForceError(BlochsimError, ValueError):
    """A quantity that only exists for a driven lattice was requested at F = 0."""


class BesselRangeError(BlochsimError, ValueError):
    """Bessel order or argument outside the range the kernel supports."""


class ProfileError(BlochsimError, ValueError):
    """An initial profile is invalid, singular, or has no closed continuation."""


class StepSizeError(BlochsimError, ValueError):
    """An integrator step violates its stability precondition."""


class DegenerateStateError(BlochsimError, ValueError):
    """An observable was requested for a state with zero total weight."""


class WindowTooSmallError(BlochsimError, RuntimeError):
    """Probability reached the edge of the finite site window during a run."""
