"""States on a finite site window and their momentum-space images.

A :class:`ChainState` stores complex amplitudes on consecutive sites
``n_min .. n_min + N - 1``.  Its discrete Fourier image lives on the momentum
grid ``q_j = -pi/a + 2 pi j / (N a)``, and the two pictures are connected by

    S(q_j) = sum_n c_n exp(-i q_j n a)
    c_n    = (1/N) sum_j S(q_j) exp(i q_j n a)

:func:`to_spectrum` / :func:`from_spectrum` implement exactly these sums via
the FFT, with the phase bookkeeping for the window offset ``n_min`` and the
grid origin at ``-pi/a`` folded into pre- and post-factors.  The round trip
is exact to rounding, and Parseval's identity holds in the form
``sum |c_n|^2 = (1/N) sum |S_j|^2``.

Initial profiles are declared by :class:`ProfileSpec` and sampled onto a
window by :func:`build_state`.  The two analytic shapes also exist off the
integer lattice, where :func:`profile_at_complex` continues the same closed
form to complex argument; the first-order snapshot prediction relies on that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DegenerateStateError, ProfileError

__all__ = [
    "ChainState",
    "MomentumSpectrum",
    "ProfileSpec",
    "build_state",
    "profile_at_complex",
    "to_spectrum",
    "from_spectrum",
    "boundary_fraction",
    "site_rows",
]


@dataclass(frozen=True)
class ChainState:
    """Amplitudes on consecutive sites, with the time they belong to.

    ``amplitudes[k]`` is the amplitude on site ``n_min + k``.  Instances are
    frozen; treat the array as read-only.
    """

    n_min: int
    amplitudes: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size == 0:
            raise ValueError("amplitudes must be a nonempty 1-d array")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "n_min", int(self.n_min))
        object.__setattr__(self, "t", float(self.t))

    @property
    def n_max(self) -> int:
        return self.n_min + self.amplitudes.size - 1

    @property
    def sites(self) -> np.ndarray:
        """Integer site indices ``n_min .. n_max`` as an array."""
        return self.n_min + np.arange(self.amplitudes.size)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True)
class MomentumSpectrum:
    """Spectrum samples on the uniform grid ``q_j = -pi/a + 2 pi j / (N a)``."""

    values: np.ndarray
    a: float = 1.0

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("values must be a nonempty 1-d array")
        if not (math.isfinite(self.a) and self.a > 0):
            raise ValueError("site spacing a must be positive and finite")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "a", float(self.a))

    @property
    def size(self) -> int:
        return self.values.size

    @property
    def q_grid(self) -> np.ndarray:
        N = self.values.size
        return (-math.pi + 2.0 * math.pi * np.arange(N) / N) / self.a


_PROFILE_KINDS = ("gaussian", "two_humped", "single_site", "custom_samples")


@dataclass(frozen=True)
class ProfileSpec:
    """Declarative initial profile; sampled onto a window by :func:`build_state`.

    Shapes, as functions of the site index measured from ``center``:

    ``gaussian``       exp(-gamma n^2), gamma > 0
    ``two_humped``     1 / cosh((alpha + i beta) n)^2, alpha > 0
    ``single_site``    1 on site ``center``, 0 elsewhere
    ``custom_samples`` caller-provided amplitude array covering the window

    ``normalize`` requests unit total probability on the sampling window.
    """

    kind: str
    gamma: float | None = None
    alpha: float | None = None
    beta: float | None = None
    center: int = 0
    samples: np.ndarray | None = None
    normalize: bool = True

    def __post_init__(self):
        if self.kind not in _PROFILE_KINDS:
            raise ProfileError(f"unknown profile kind {self.kind!r}")
        object.__setattr__(self, "center", int(self.center))
        if self.kind == "gaussian":
            g = self.gamma
            if g is None or not math.isfinite(g) or g <= 0:
                raise ProfileError("gaussian profile needs gamma > 0")
            object.__setattr__(self, "gamma", float(g))
        elif self.kind == "two_humped":
            al, be = self.alpha, self.beta
            if al is None or not math.isfinite(al) or al <= 0:
                raise ProfileError("two_humped profile needs alpha > 0")
            if be is None or not math.isfinite(be):
                raise ProfileError("two_humped profile needs finite beta")
            object.__setattr__(self, "alpha", float(al))
            object.__setattr__(self, "beta", float(be))
        elif self.kind == "custom_samples":
            if self.samples is None:
                raise ProfileError("custom_samples profile needs samples")
            s = np.asarray(self.samples, dtype=np.complex128)
            if s.ndim != 1 or s.size == 0 or not np.all(np.isfinite(s)):
                raise ProfileError("samples must be a nonempty finite 1-d array")
            object.__setattr__(self, "samples", s)

    @classmethod
    def gaussian_packet(cls, gamma: float, center: int = 0, normalize: bool = True) -> "ProfileSpec":
        return cls("gaussian", gamma=gamma, center=center, normalize=normalize)

    @classmethod
    def two_humped_packet(cls, alpha: float, beta: float, center: int = 0,
                          normalize: bool = True) -> "ProfileSpec":
        return cls("two_humped", alpha=alpha, beta=beta, center=center, normalize=normalize)

    @classmethod
    def single_site_packet(cls, center: int = 0) -> "ProfileSpec":
        return cls("single_site", center=center, normalize=True)

    @classmethod
    def custom(cls, samples, normalize: bool = True) -> "ProfileSpec":
        return cls("custom_samples", samples=samples, normalize=normalize)


def _sech_squared(w: np.ndarray) -> np.ndarray:
    # 1/cosh(w)^2 through exponentials that stay bounded in each half plane,
    # so large |Re w| underflows to 0 instead of overflowing.
    w = np.asarray(w, dtype=np.complex128)
    pos = w.real >= 0
    e = np.exp(-2.0 * np.where(pos, w, -w))
    return 4.0 * e / (1.0 + e) ** 2


def profile_at_complex(profile: ProfileSpec, z):
    """Continue the closed-form profile shape to complex argument ``z``.

    ``z`` is measured in units of the site spacing from the profile center
    (the same variable the on-lattice sampler uses with ``z = n - center``).
    Returns the raw, unnormalized shape; :func:`build_state` and the snapshot
    prediction apply the window normalization separately and identically.

    Only the two analytic kinds continue; ``single_site`` and
    ``custom_samples`` raise :class:`ProfileError`.
    """
    z = np.asarray(z, dtype=np.complex128)
    if profile.kind == "gaussian":
        out = np.exp(-profile.gamma * z * z)
    elif profile.kind == "two_humped":
        w = (profile.alpha + 1j * profile.beta) * z
        # cosh has zeros at w = i pi (k + 1/2); refuse to evaluate on top of one
        near = np.abs(w.real) < 300.0
        if np.any(near):
            if np.any(np.abs(np.cosh(w[near])) < 1e-12):
                raise ProfileError("profile continuation hits a pole of 1/cosh^2")
        out = _sech_squared(w)
    else:
        raise ProfileError(f"profile kind {profile.kind!r} has no closed continuation")
    if not np.all(np.isfinite(out)):
        raise ProfileError("profile continuation overflowed")
    return complex(out) if out.ndim == 0 else out


def build_state(profile: ProfileSpec, window: tuple[int, int]) -> ChainState:
    """Sample ``profile`` on the inclusive site window ``(n_min, n_max)`` at t = 0."""
    n_min, n_max = int(window[0]), int(window[1])
    if n_max < n_min:
        raise ProfileError("window must satisfy n_min <= n_max")
    n = np.arange(n_min, n_max + 1)
    if profile.kind == "single_site":
        if not (n_min <= profile.center <= n_max):
            raise ProfileError("single_site center lies outside the window")
        c = np.zeros(n.size, dtype=np.complex128)
        c[profile.center - n_min] = 1.0
    elif profile.kind == "custom_samples":
        if profile.samples.size != n.size:
            raise ProfileError(
                f"custom samples cover {profile.samples.size} sites, window has {n.size}"
            )
        c = profile.samples.copy()
    else:
        c = np.asarray(profile_at_complex(profile, (n - profile.center).astype(np.float64)),
                       dtype=np.complex128)
    if profile.normalize:
        nrm = math.sqrt(float(np.sum(np.abs(c) ** 2)))
        if nrm == 0.0:
            raise ProfileError("profile vanishes on the window")
        c /= nrm
    return ChainState(n_min, c, 0.0)


def _alternating(N: int) -> np.ndarray:
    # exp(+-i pi k) for integer k, evaluated exactly
    s = np.ones(N)
    s[1::2] = -1.0
    return s


def to_spectrum(state: ChainState, a: float = 1.0) -> MomentumSpectrum:
    """DFT of the amplitudes onto the momentum grid of the same size.

    Computes ``S(q_j) = sum_n c_n exp(-i q_j n a)`` for the grid
    ``q_j = -pi/a + 2 pi j/(N a)``: a plain FFT after factoring the grid
    origin into an alternating sign on the input and a window-offset phase
    on the output.
    """
    c = state.amplitudes
    N = c.size
    S = np.fft.fft(c * _alternating(N))
    qa = -math.pi + 2.0 * math.pi * np.arange(N) / N
    S *= np.exp(-1j * qa * state.n_min)
    return MomentumSpectrum(S, a=float(a))


def from_spectrum(spectrum: MomentumSpectrum, n_min: int, t: float = 0.0) -> ChainState:
    """Inverse of :func:`to_spectrum` onto the window starting at ``n_min``."""
    S = spectrum.values
    N = S.size
    qa = -math.pi + 2.0 * math.pi * np.arange(N) / N
    c = np.fft.ifft(S * np.exp(1j * qa * int(n_min))) * _alternating(N)
    return ChainState(int(n_min), c, t)


def boundary_fraction(state: ChainState, guard_width: int) -> float:
    """Fraction of total probability in the outer ``guard_width`` sites per edge.

    Zero guard width returns 0.  A guard spanning the whole window returns 1.
    Raises :class:`DegenerateStateError` for a zero-norm state.
    """
    g = int(guard_width)
    if g < 0:
        raise ValueError("guard_width must be nonnegative")
    p = state.probabilities()
    total = float(p.sum())
    if total == 0.0:
        raise DegenerateStateError("state has zero norm")
    if g == 0:
        return 0.0
    if 2 * g >= p.size:
        return 1.0
    return float((p[:g].sum() + p[-g:].sum()) / total)


def site_rows(state: ChainState) -> Iterator[tuple[int, float, float, float]]:
    """Yield ``(n, Re c_n, Im c_n, |c_n|^2)`` per site, the CSV row layout."""
    p = state.probabilities()
    for k, n in enumerate(range(state.n_min, state.n_max + 1)):
        c = state.amplitudes[k]
        yield n, float(c.real), float(c.imag), float(p[k])
