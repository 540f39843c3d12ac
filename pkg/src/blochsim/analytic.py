"""Closed-form results for the driven chain.

Everything in this module comes from integrating the band exactly rather
than stepping the equation of motion:

* The tilted chain has a ladder of stationary states, one per site, with
  energies spaced by exactly ``F a``.  :func:`ws_state_generic` builds the
  eigenvector for any hopping table from a band-phase quadrature; for the
  asymmetric nearest-neighbor chain :func:`ws_state_hn` evaluates the same
  state as a Bessel sequence dressed by an exponential envelope, giving a
  completely independent construction to cross-check against.

* The full time-evolution kernel factorizes as a site-diagonal drive phase
  times a function of ``n - l`` only.  :func:`propagator_generic` evaluates
  the kernel by quadrature for any table; :func:`propagator_hn` and
  :func:`propagator_imag` are the closed Bessel forms for the two named
  models.  :func:`propagator_matrix` and :func:`propagator_apply` exploit
  the displacement structure so a window of size N costs one kernel row,
  not N quadratures.

* The drift of a narrow packet follows a closed orbit in the complex plane,
  :func:`complex_orbit`; its real part is the visible center-of-mass motion
  and its imaginary part feeds the overall amplification
  :func:`norm_factor` and the momentum-centroid correction
  :func:`theta_correction`.  :func:`predicted_profile` assembles the
  first-order snapshot law: the initial envelope, continued off the lattice
  to complex displacement, scaled by the norm factor.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStateError, ZeroForceError
from .model import (Dispersion, LatticeModel, bloch_period,
                    hatano_nelson_parameters, imaginary_hopping_parameters)
from .special import BesselWorkspace, periodic_quadrature
from .state import ChainState, MomentumSpectrum, ProfileSpec, profile_at_complex

__all__ = [
    "WannierStarkState",
    "ComplexOrbit",
    "ws_energy",
    "ws_state_generic",
    "ws_state_hn",
    "propagator_generic",
    "propagator_hn",
    "propagator_imag",
    "propagator_matrix",
    "propagator_apply",
    "complex_orbit",
    "norm_factor",
    "theta_correction",
    "predicted_profile",
    "suggested_window",
]


def _require_driven(F: float) -> None:
    if F == 0.0:
        raise ZeroForceError("this quantity exists only on a tilted lattice (F != 0)")


# ---------------------------------------------------------------------------
# Wannier-Stark ladder


def ws_energy(l: int, model: LatticeModel) -> float:
    """Ladder energy ``l * F * a`` of the stationary state centered on site l.

    Exact for any zero-mean band: moving one site along the ladder shifts the
    energy by the tilt per site and nothing else.
    """
    _require_driven(model.F)
    return int(l) * model.F * model.a


@dataclass(frozen=True)
class WannierStarkState:
    """Ladder eigenvector on a finite window, unit norm on that window.

    The phase convention makes the amplitude on the ladder site ``l`` real
    and nonnegative (falling back to the largest-modulus site when the window
    excludes ``l``).
    """

    l: int
    n_min: int
    amplitudes: np.ndarray
    energy: float

    def as_state(self, t: float = 0.0) -> ChainState:
        return ChainState(self.n_min, self.amplitudes, t)


def _finish_ws(l: int, n_min: int, amps: np.ndarray, energy: float) -> WannierStarkState:
    nrm = math.sqrt(float(np.sum(np.abs(amps) ** 2)))
    if nrm == 0.0:
        raise DegenerateStateError("ladder state vanishes on the window")
    amps = amps / nrm
    pivot = l - n_min
    if not (0 <= pivot < amps.size) or abs(amps[pivot]) < 1e-300:
        pivot = int(np.argmax(np.abs(amps)))
    ph = amps[pivot]
    amps = amps * (ph.conjugate() / abs(ph))
    return WannierStarkState(int(l), int(n_min), amps, float(energy))


def ws_state_generic(l: int, model: LatticeModel, window: tuple[int, int],
                     nodes: int | None = None) -> WannierStarkState:
    """Ladder state for an arbitrary hopping table, by band-phase quadrature.

    Each amplitude is a full-zone average of ``exp(i q a (n - l))`` against
    the accumulated band phase ``exp(i/F * int_0^q E)``; the integrand is
    smooth and periodic, so the node count only needs to exceed the span of
    the state's Fourier content.  Default nodes: ``max(256, 2 span + 128)``.
    """
    _require_driven(model.F)
    n_min, n_max = int(window[0]), int(window[1])
    if n_max < n_min:
        raise ValueError("window must satisfy n_min <= n_max")
    disp = Dispersion(model)
    a, F = model.a, model.F
    span = max(abs(n_min - l), abs(n_max - l))
    if nodes is None:
        nodes = max(256, 2 * span + 128)
    L = 2.0 * math.pi / a

    amps = np.empty(n_max - n_min + 1, dtype=np.complex128)
    for i, n in enumerate(range(n_min, n_max + 1)):
        def integrand(u, _m=n - l):
            q = -math.pi / a + u
            return np.exp(1j * q * a * _m + (1j / F) * disp.integral(0.0, q))

        amps[i] = periodic_quadrature(integrand, L, nodes)
    return _finish_ws(l, n_min, amps, ws_energy(l, model))


def ws_state_hn(l: int, model: LatticeModel, window: tuple[int, int]) -> WannierStarkState:
    """Closed form of the ladder state for the asymmetric nearest-neighbor chain.

    The amplitude on site ``n`` is a Bessel function of order ``n - l`` at
    argument ``2 kappa / (F a)``, staggered in sign and dressed by the
    envelope ``exp(-mu n)``.  Requires a model built like
    :func:`blochsim.model.make_hatano_nelson`.
    """
    _require_driven(model.F)
    params = hatano_nelson_parameters(model)
    if params is None:
        raise ValueError("closed ladder form needs an asymmetric nearest-neighbor model")
    kappa, mu = params
    n_min, n_max = int(window[0]), int(window[1])
    if n_max < n_min:
        raise ValueError("window must satisfy n_min <= n_max")
    arg = 2.0 * kappa / (model.F * model.a)
    span = max(abs(n_min - l), abs(n_max - l))
    js = BesselWorkspace(span).j_sequence(arg, span)

    n = np.arange(n_min, n_max + 1)
    m = n - l
    jvals = js[np.abs(m)].copy()
    odd_neg = (m < 0) & (np.abs(m) % 2 == 1)
    jvals[odd_neg] *= -1.0  # J_{-m} = (-1)^m J_m
    stagger = np.where(m % 2 == 0, 1.0, -1.0)  # exp(i pi (n - l)) on integers
    # exp(-mu n) can be enormous on a wide window; do the product in logs
    # where the Bessel factor vanishes to avoid inf * 0.
    with np.errstate(over="ignore", under="ignore"):
        amps = np.exp(-mu * n) * stagger * jvals
    amps = np.where(np.isfinite(amps), amps, 0.0).astype(np.complex128)
    return _finish_ws(l, n_min, amps, ws_energy(l, model))


# ---------------------------------------------------------------------------
# Propagators


def propagator_generic(n: int, l: int, t: float, model: LatticeModel,
                       nodes: int | None = None) -> complex:
    """Kernel element ``U_{n l}(t)`` for any hopping table, by quadrature.

    The kernel is a drive phase ``exp(-i F n a t)`` times a zone average of
    ``exp(i q a (n - l))`` against the transported band phase; the band
    integral inside is evaluated in closed form, so quadrature error comes
    only from the smooth zone average.
    """
    t = float(t)
    n, l = int(n), int(l)
    disp = Dispersion(model)
    a, F = model.a, model.F
    m = n - l
    if nodes is None:
        nodes = max(512, 4 * abs(m) + 256)
    L = 2.0 * math.pi / a

    if F == 0.0:
        def integrand(u):
            q = -math.pi / a + u
            return np.exp(-1j * t * disp(q) + 1j * q * a * m)
        phase = 1.0 + 0.0j
    else:
        def integrand(u):
            q = -math.pi / a + u
            return np.exp(-1j / F * disp.integral(q - F * t, q) + 1j * q * a * m)
        phase = cmath.exp(-1j * F * n * a * t)

    zone = periodic_quadrature(integrand, L, nodes)
    return phase * (a / (2.0 * math.pi)) * zone


def propagator_hn(n: int, l: int, t: float, model: LatticeModel) -> complex:
    """Closed kernel for the asymmetric nearest-neighbor chain.

    ``U_{n l}(t)`` is a Bessel function of order ``n - l`` whose argument
    ``(4 kappa / F a) sin(F a t / 2)`` breathes with the drive, times the
    drive phase and the envelope ``exp(mu (l - n))``.
    """
    _require_driven(model.F)
    params = hatano_nelson_parameters(model)
    if params is None:
        raise ValueError("closed propagator needs an asymmetric nearest-neighbor model")
    kappa, mu = params
    a, F = model.a, model.F
    t = float(t)
    m = int(n) - int(l)
    arg = (4.0 * kappa / (F * a)) * math.sin(F * a * t / 2.0)
    sign = -1.0 if (m < 0 and m % 2) else 1.0
    jm = sign * BesselWorkspace(abs(m)).j_sequence(arg, abs(m))[abs(m)]
    return (jm
            * cmath.exp(-1j * F * int(n) * a * t)
            * cmath.exp(1j * m * (F * a * t - math.pi) / 2.0 - mu * m))


def propagator_imag(n: int, l: int, t: float, model: LatticeModel) -> complex:
    """Closed kernel for the chain whose both hops equal ``i kappa``.

    Identical structure to the asymmetric chain but with the modified Bessel
    function, so the kernel amplifies instead of oscillating.
    """
    _require_driven(model.F)
    kappa = imaginary_hopping_parameters(model)
    if kappa is None:
        raise ValueError("closed propagator needs the imaginary-hopping model")
    a, F = model.a, model.F
    t = float(t)
    m = int(n) - int(l)
    arg = (4.0 * kappa / (F * a)) * math.sin(F * a * t / 2.0)
    # I_{-m} = I_m, so only |m| matters for the order
    im_val = BesselWorkspace(abs(m)).i_sequence(arg, abs(m))[abs(m)]
    return (im_val
            * cmath.exp(-1j * F * int(n) * a * t)
            * cmath.exp(1j * m * F * a * t / 2.0))


def _kernel_row(model: LatticeModel, t: float, m_max: int) -> np.ndarray:
    """Displacement kernel ``g_m`` for ``m = -m_max .. m_max`` (index ``m + m_max``).

    ``U_{n l}(t) = exp(-i F n a t) g_{n-l}``; this evaluates one row of g for
    whichever closed form applies, falling back to an FFT zone average of the
    transported band phase (arithmetic identical to the quadrature used by
    :func:`propagator_generic`, reordered).
    """
    a, F = model.a, model.F
    t = float(t)
    m = np.arange(-m_max, m_max + 1)

    hn = hatano_nelson_parameters(model)
    if hn is not None and F != 0.0:
        kappa, mu = hn
        arg = (4.0 * kappa / (F * a)) * math.sin(F * a * t / 2.0)
        js = BesselWorkspace(m_max).j_sequence(arg, m_max)
        vals = js[np.abs(m)].copy()
        vals[(m < 0) & (np.abs(m) % 2 == 1)] *= -1.0
        with np.errstate(over="ignore", under="ignore"):
            g = vals * np.exp(1j * m * (F * a * t - math.pi) / 2.0 - mu * m)
        return np.where(np.isfinite(g), g, 0.0)

    ik = imaginary_hopping_parameters(model)
    if ik is not None and F != 0.0:
        arg = (4.0 * ik / (F * a)) * math.sin(F * a * t / 2.0)
        ivals = BesselWorkspace(m_max).i_sequence(arg, m_max)
        g = ivals[np.abs(m)] * np.exp(1j * m * F * a * t / 2.0)
        return g.astype(np.complex128)

    # generic table: g_m are Fourier coefficients of the transported phase
    disp = Dispersion(model)
    nodes = 1
    while nodes < max(1024, 4 * (m_max + 64)):
        nodes *= 2
    u = (2.0 * math.pi / a / nodes) * np.arange(nodes)
    q = -math.pi / a + u
    if F == 0.0:
        w = np.exp(-1j * t * disp(q))
    else:
        w = np.exp(-1j / F * disp.integral(q - F * t, q))
    coef = np.fft.ifft(w)  # (1/M) sum_j w_j exp(2 pi i j m / M)
    idx = np.mod(m, nodes)
    g = coef[idx] * np.where(m % 2 == 0, 1.0, -1.0)  # grid origin at -pi/a
    return g


def propagator_matrix(model: LatticeModel, t: float, window: tuple[int, int]) -> np.ndarray:
    """Dense kernel ``U_{n l}(t)`` on the window, built from one kernel row."""
    n_min, n_max = int(window[0]), int(window[1])
    if n_max < n_min:
        raise ValueError("window must satisfy n_min <= n_max")
    N = n_max - n_min + 1
    g = _kernel_row(model, t, N - 1)
    n = np.arange(n_min, n_max + 1)
    U = g[(n[:, None] - n[None, :]) + (N - 1)]
    U = U * np.exp(-1j * model.F * model.a * float(t) * n)[:, None]
    return U


def propagator_apply(model: LatticeModel, state: ChainState, t: float) -> ChainState:
    """Advance a state by ``t`` with the closed kernel, without the dense matrix.

    The displacement structure turns the kernel application into a discrete
    convolution of the row ``g`` with the amplitudes, followed by the
    site-diagonal drive phase.
    """
    t = float(t)
    N = state.amplitudes.size
    g = _kernel_row(model, t, N - 1)
    full = np.convolve(g, state.amplitudes)
    out = full[N - 1:2 * N - 1]
    n = state.sites
    out = out * np.exp(-1j * model.F * model.a * t * n)
    return ChainState(state.n_min, out, state.t + t)


# ---------------------------------------------------------------------------
# Semiclassical orbit, amplification, drift correction


@dataclass(frozen=True)
class ComplexOrbit:
    """Closed drift orbit ``x0(t) = (E(0) - E(-F t)) / F`` of a narrow packet.

    Callable on scalar or array times; ``real`` is the visible displacement,
    ``imag`` drives amplification.  ``period`` is the drive period.
    """

    model: LatticeModel

    def __post_init__(self):
        _require_driven(self.model.F)

    @property
    def period(self) -> float:
        return bloch_period(self.model)

    def __call__(self, t):
        disp = Dispersion(self.model)
        t = np.asarray(t, dtype=np.float64)
        e0 = disp(0.0)
        vals = np.atleast_1d(disp(-self.model.F * t))
        out = (e0 - vals) / self.model.F
        return complex(out[0]) if t.ndim == 0 else out.reshape(t.shape)


def complex_orbit(model: LatticeModel) -> ComplexOrbit:
    """The drift orbit object for ``model``; requires a tilted lattice."""
    return ComplexOrbit(model)


def norm_factor(model: LatticeModel, t):
    """Total amplification ``G(t)`` of a narrow packet launched at band center.

    ``G = exp(2/F * int_{-F t}^0 Im E)``; equals 1 at all times on a
    Hermitian chain and at multiples of the drive period on any chain with a
    zero-mean band.  Accepts scalar or array ``t``.
    """
    _require_driven(model.F)
    disp = Dispersion(model)
    t_arr = np.asarray(t, dtype=np.float64)
    integ = np.imag(np.atleast_1d(disp.integral(-model.F * t_arr, np.zeros_like(t_arr))))
    out = np.exp((2.0 / model.F) * integ)
    return float(out[0]) if t_arr.ndim == 0 else out.reshape(t_arr.shape)


def theta_correction(spectrum0: MomentumSpectrum, model: LatticeModel, t) -> float:
    """Drift of the momentum centroid beyond the rigid ``-F t`` transport.

    On a non-Hermitian chain the spectral weight is reweighted by the
    accumulated amplification ``exp(2/F * int_{q-Ft}^q Im E)``; the centroid
    of the reweighted initial weight, minus the initial centroid, is the
    correction.  Identically zero on a Hermitian chain, and zero again
    whenever the drive has completed a full period (for a zero-mean band).
    """
    _require_driven(model.F)
    disp = Dispersion(model)
    q = spectrum0.q_grid
    w0 = np.abs(spectrum0.values) ** 2
    total0 = float(w0.sum())
    if total0 == 0.0:
        raise DegenerateStateError("spectrum has zero weight")
    t = float(t)
    gain = np.exp((2.0 / model.F) * np.imag(disp.integral(q - model.F * t, q)))
    wt = w0 * gain
    total_t = float(wt.sum())
    if total_t == 0.0 or not math.isfinite(total_t):
        raise DegenerateStateError("reweighted spectrum is degenerate")
    return float((q * wt).sum() / total_t - (q * w0).sum() / total0)


def predicted_profile(profile: ProfileSpec, model: LatticeModel, t,
                      window: tuple[int, int]) -> np.ndarray:
    """First-order snapshot law: probabilities ``G(t) |phi(n - x0(t)/a)|^2``.

    The initial envelope is continued off the lattice to the complex
    displacement given by the drift orbit, then scaled by the overall
    amplification.  The window normalization is applied exactly as
    :func:`blochsim.state.build_state` applies it at t = 0, so ``t = 0``
    reproduces the initial probabilities to rounding.
    """
    _require_driven(model.F)
    n_min, n_max = int(window[0]), int(window[1])
    if n_max < n_min:
        raise ValueError("window must satisfy n_min <= n_max")
    n = np.arange(n_min, n_max + 1, dtype=np.float64)
    x0 = complex_orbit(model)(float(t))
    G = norm_factor(model, float(t))
    shifted = profile_at_complex(profile, (n - profile.center) - x0 / model.a)
    prob = G * np.abs(np.asarray(shifted)) ** 2
    if profile.normalize:
        base = profile_at_complex(profile, n - profile.center)
        total = float(np.sum(np.abs(np.asarray(base)) ** 2))
        if total == 0.0:
            raise DegenerateStateError("profile vanishes on the window")
        prob = prob / total
    return prob


def suggested_window(model: LatticeModel, profile: ProfileSpec, t_max: float,
                     margin: int = 20) -> tuple[int, int]:
    """Symmetric site window wide enough for one run, by a coarse budget.

    Adds up the worst drift excursion over ``[0, t_max]``, the spread of the
    initial envelope down to ~1e-12 in probability, a kernel-width allowance
    for the breathing of the packet, and a flat margin.  Only defined for a
    tilted lattice (the free chain spreads without bound).
    """
    _require_driven(model.F)
    t_max = float(t_max)
    if not math.isfinite(t_max) or t_max < 0.0:
        raise ValueError("t_max must be nonnegative and finite")
    orbit = complex_orbit(model)
    ts = np.linspace(0.0, t_max, 257)
    excursion = float(np.max(np.abs(np.real(np.atleast_1d(orbit(ts)))))) / model.a

    if profile.kind == "gaussian":
        tail = 10.0 / math.sqrt(profile.gamma)
    elif profile.kind == "two_humped":
        tail = math.log(4e12) / (2.0 * profile.alpha)
    elif profile.kind == "single_site":
        tail = 0.0
    else:
        tail = profile.samples.size / 2.0
    kernel = sum(abs(l) * abs(amp) for l, amp in model.hoppings.items())
    breathing = 2.0 * kernel / (abs(model.F) * model.a)

    half = int(math.ceil(excursion + tail + breathing)) + int(margin)
    center = profile.center if profile.kind != "custom_samples" else 0
    return center - half, center + half
