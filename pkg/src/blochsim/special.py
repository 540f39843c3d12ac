"""Bessel kernel and periodic quadrature.

All closed-form results in this package funnel through two ingredients: the
cylindrical Bessel functions J_n(x) and I_n(x) of integer order, and the
trapezoid sum for smooth periodic integrands.  Both are implemented here from
scratch so that every digit a test asserts is produced by code in this
repository.

J_n and I_n are computed by Miller's downward recurrence: run the three-term
recurrence from a starting order well above both ``n`` and ``x`` with an
arbitrary seed, then fix the overall scale with a normalization identity,

    J_0(x) + 2 * (J_2(x) + J_4(x) + ...) = 1
    I_0(x) + 2 * (I_1(x) + I_2(x) + ...) = exp(x)

Downward is the stable direction for both families: the wanted solution grows
as the order drops, so seed contamination dies off geometrically.  For small
arguments (|x| < 2) the ascending power series converges in a handful of terms
and is used instead.

Accuracy targets, verified against extended-precision series oracles in the
test suite: absolute error below 1e-12 for J_n, relative error below 1e-10
for I_n, over orders |n| <= 200 and the argument ranges |x| <= 100 (J) and
|x| <= 700 (I).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BesselRangeError

__all__ = [
    "BesselWorkspace",
    "bessel_j",
    "bessel_i",
    "bessel_j_sequence",
    "bessel_i_sequence",
    "periodic_quadrature",
]

# Rescaling threshold for the raw recurrence values.  Well below overflow so
# the normalization sum, which can exceed any single value, stays finite too.
_RESCALE_AT = 1e250
_RESCALE_BY = 1e-250

_MAX_ORDER = 5000
_MAX_ARG_J = 1.0e4
_MAX_ARG_I = 700.0  # exp(x) must stay representable


def _series_j(n: int, x: float) -> float:
    # Ascending series, adequate for 0 < x < 2: the first term dominates and
    # successive terms shrink by at least x^2/4 per step, so no cancellation.
    t = 1.0
    for k in range(1, n + 1):
        t *= x / (2.0 * k)
        if t == 0.0:
            return 0.0
    s = t
    term = t
    k = 0
    while True:
        k += 1
        term *= -(x * x / 4.0) / (k * (n + k))
        s += term
        if abs(term) <= 1e-18 * max(abs(s), 1e-300) or k > 80:
            return s


def _series_i(n: int, x: float) -> float:
    t = 1.0
    for k in range(1, n + 1):
        t *= x / (2.0 * k)
        if t == 0.0:
            return 0.0
    s = t
    term = t
    k = 0
    while True:
        k += 1
        term *= (x * x / 4.0) / (k * (n + k))
        s += term
        if term <= 1e-18 * max(s, 1e-300) or k > 80:
            return s


class BesselWorkspace:
    """Reusable scratch buffers for Bessel sequence evaluation.

    A workspace owns its buffers and is not safe to share between threads;
    create one per worker.  The module-level functions allocate a transient
    workspace per call and are therefore thread-safe.

    Parameters
    ----------
    max_order:
        Largest order the caller expects to request.  Buffers grow on demand,
        so this is a hint, not a hard limit.
    """

    def __init__(self, max_order: int = 64):
        if max_order < 0:
            raise ValueError("max_order must be nonnegative")
        self._vals = np.zeros(max_order + 1, dtype=np.float64)

    def _out(self, n_max: int) -> np.ndarray:
        if self._vals.size < n_max + 1:
            self._vals = np.zeros(n_max + 1, dtype=np.float64)
        v = self._vals[: n_max + 1]
        v[:] = 0.0
        return v

    def j_sequence(self, x: float, n_max: int) -> np.ndarray:
        """Return ``[J_0(x), J_1(x), ..., J_{n_max}(x)]`` as a fresh array."""
        if n_max < 0 or n_max > _MAX_ORDER:
            raise BesselRangeError(f"order {n_max} outside [0, {_MAX_ORDER}]")
        x = float(x)
        if not math.isfinite(x) or abs(x) > _MAX_ARG_J:
            raise BesselRangeError(f"argument {x!r} outside |x| <= {_MAX_ARG_J:g}")
        ax = abs(x)
        out = self._out(n_max)
        if ax == 0.0:
            out[0] = 1.0
        elif ax < 2.0:
            for n in range(n_max + 1):
                out[n] = _series_j(n, ax)
        else:
            self._miller_j(ax, out)
        if x < 0.0:
            out[1::2] *= -1.0  # J_n(-x) = (-1)^n J_n(x)
        return out.copy()

    def i_sequence(self, x: float, n_max: int) -> np.ndarray:
        """Return ``[I_0(x), I_1(x), ..., I_{n_max}(x)]`` as a fresh array."""
        if n_max < 0 or n_max > _MAX_ORDER:
            raise BesselRangeError(f"order {n_max} outside [0, {_MAX_ORDER}]")
        x = float(x)
        if not math.isfinite(x) or abs(x) > _MAX_ARG_I:
            raise BesselRangeError(f"argument {x!r} outside |x| <= {_MAX_ARG_I:g}")
        ax = abs(x)
        out = self._out(n_max)
        if ax == 0.0:
            out[0] = 1.0
        elif ax < 2.0:
            for n in range(n_max + 1):
                out[n] = _series_i(n, ax)
        else:
            self._miller_i(ax, out)
        if x < 0.0:
            out[1::2] *= -1.0  # I_n(-x) = (-1)^n I_n(x)
        return out.copy()

    def _miller_j(self, ax: float, out: np.ndarray) -> None:
        n_max = out.size - 1
        # Start high enough that (a) the seed error has decayed by the time
        # the recurrence reaches n_max, and (b) the normalization sum has
        # converged.  Both needs scale like sqrt of the larger of order and
        # argument; the constants are generous because the loop is cheap.
        m = max(n_max, int(ax)) + 1
        m += int(round(math.sqrt(80.0 * m))) + 40
        if m % 2:
            m += 1
        jp = 0.0  # J_{k+1}
        jc = 1e-30  # J_k, arbitrary seed at k = m
        norm = 0.0
        for k in range(m, 0, -1):
            jm = (2.0 * k / ax) * jc - jp  # J_{k-1}
            jp = jc
            jc = jm
            if abs(jc) > _RESCALE_AT:
                jc *= _RESCALE_BY
                jp *= _RESCALE_BY
                norm *= _RESCALE_BY
                out *= _RESCALE_BY
            n = k - 1
            if n <= n_max:
                out[n] = jc
            if n > 0 and n % 2 == 0:
                norm += 2.0 * jc
        norm += jc  # jc now holds the raw J_0
        out /= norm

    def _miller_i(self, ax: float, out: np.ndarray) -> None:
        n_max = out.size - 1
        # The normalization sum needs orders up to ~sqrt(80 x) before
        # I_n(x)/I_0(x) drops below double precision.
        m = max(n_max, int(math.sqrt(80.0 * ax)) + 20)
        m += int(round(math.sqrt(80.0 * max(n_max, 1)))) + 40
        ip = 0.0  # I_{k+1}
        ic = 1e-30  # I_k at k = m
        norm = 0.0
        for k in range(m, 0, -1):
            im = ip + (2.0 * k / ax) * ic  # I_{k-1}
            ip = ic
            ic = im
            if ic > _RESCALE_AT:
                ic *= _RESCALE_BY
                ip *= _RESCALE_BY
                norm *= _RESCALE_BY
                out *= _RESCALE_BY
            n = k - 1
            if n <= n_max:
                out[n] = ic
            if n > 0:
                norm += 2.0 * ic
        norm += ic  # raw I_0
        out *= math.exp(ax) / norm


def bessel_j(n: int, x: float) -> float:
    """Bessel function of the first kind, integer order.

    Parameters
    ----------
    n:
        Order; may be negative (``J_{-n}(x) = (-1)^n J_n(x)``).
    x:
        Real argument, ``|x| <= 1e4``.

    Returns
    -------
    float
        ``J_n(x)`` with absolute error below 1e-12 over the supported range.
    """
    n = int(n)
    sign = 1.0
    if n < 0:
        n = -n
        if n % 2:
            sign = -1.0
    ws = BesselWorkspace(n)
    return sign * float(ws.j_sequence(x, n)[n])


def bessel_i(n: int, x: float) -> float:
    """Modified Bessel function of the first kind, integer order.

    ``I_{-n}(x) = I_n(x)``; the argument must satisfy ``|x| <= 700`` so that
    the normalizing factor exp(|x|) stays representable.
    """
    n = abs(int(n))
    ws = BesselWorkspace(n)
    return float(ws.i_sequence(x, n)[n])


def bessel_j_sequence(n_max: int, x: float) -> np.ndarray:
    """Orders ``0..n_max`` of ``J_n(x)`` in one downward-recurrence pass."""
    return BesselWorkspace(n_max).j_sequence(x, n_max)


def bessel_i_sequence(n_max: int, x: float) -> np.ndarray:
    """Orders ``0..n_max`` of ``I_n(x)`` in one downward-recurrence pass."""
    return BesselWorkspace(n_max).i_sequence(x, n_max)


def periodic_quadrature(f, period: float, nodes: int):
    """Integrate a smooth periodic function over one period.

    Uses the left-endpoint rectangle rule on a uniform grid, which for
    periodic integrands coincides with the trapezoid rule and converges
    geometrically in the node count: each doubling of ``nodes`` roughly
    squares the error until rounding is reached.

    Parameters
    ----------
    f:
        Callable evaluated on an ndarray of sample points in ``[0, period)``.
        Should be vectorized; a callable that only accepts scalars is mapped
        point by point as a fallback.
    period:
        Length of the integration interval, > 0.
    nodes:
        Number of sample points, >= 8.

    Returns
    -------
    complex
        ``(period / nodes) * sum(f(x_j))`` with ``x_j = j * period / nodes``.
    """
    period = float(period)
    nodes = int(nodes)
    if not math.isfinite(period) or period <= 0.0:
        raise ValueError("period must be positive and finite")
    if nodes < 8:
        raise ValueError("nodes must be at least 8")
    x = (period / nodes) * np.arange(nodes, dtype=np.float64)
    try:
        vals = np.asarray(f(x))
        if vals.shape != x.shape:
            raise TypeError
    except TypeError:
        vals = np.asarray([f(v) for v in x])
    if vals.shape != x.shape:
        raise ValueError("integrand returned a shape other than the sample grid")
    return complex((period / nodes) * vals.sum())
