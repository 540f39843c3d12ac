"""Lattice models: hopping tables, band structure, and the constant tilt.

A model is a single tight-binding chain with site spacing ``a``, a table of
complex hopping amplitudes ``{offset: amplitude}``, and a uniform force ``F``
that tilts the chain by ``n * F * a`` per site.  The band that goes with the
hopping table is

    E(q) = sum_l kappa_l * exp(i q a l)

which is a trigonometric polynomial and therefore has a closed antiderivative,
exposed as :meth:`Dispersion.integral`.  Everything downstream (exact spectral
evolution, semiclassical orbits, Wannier-Stark phases) consumes that integral
rather than numerical quadrature.

The chain is Hermitian exactly when ``kappa_{-l} == conj(kappa_l)`` for every
offset; amplification and decay enter through any imbalance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import ZeroForceError

__all__ = [
    "LatticeModel",
    "Dispersion",
    "make_hatano_nelson",
    "make_imaginary_hopping",
    "dispersion",
    "is_hermitian",
    "bloch_period",
    "hatano_nelson_parameters",
    "imaginary_hopping_parameters",
]


@dataclass(frozen=True)
class LatticeModel:
    """Immutable description of a driven tight-binding chain.

    Attributes
    ----------
    hoppings:
        Map from integer site offset ``l != 0`` to the complex amplitude
        multiplying ``c_{n+l}`` in the equation of motion.  An offset-0 entry
        is a uniform energy shift, not a hop; it is dropped with a warning.
    a:
        Site spacing, > 0.
    F:
        Uniform force.  ``F = 0`` is a free lattice.
    label:
        Free-form tag carried into output metadata.
    """

    hoppings: Mapping[int, complex]
    a: float = 1.0
    F: float = 0.0
    label: str = ""

    def __post_init__(self):
        cleaned: dict[int, complex] = {}
        for l, amp in dict(self.hoppings).items():
            l = int(l)
            amp = complex(amp)
            if not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
                raise ValueError(f"hopping amplitude for offset {l} is not finite")
            if l == 0:
                warnings.warn(
                    "offset-0 hopping is a constant energy shift; dropping it",
                    stacklevel=3,
                )
                continue
            cleaned[l] = amp
        if not cleaned:
            raise ValueError("hopping table is empty")
        a = float(self.a)
        F = float(self.F)
        if not math.isfinite(a) or a <= 0.0:
            raise ValueError("site spacing a must be positive and finite")
        if not math.isfinite(F):
            raise ValueError("force F must be finite")
        object.__setattr__(self, "hoppings", cleaned)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "F", F)

    @property
    def symmetric_hopping(self) -> complex:
        """Even part ``(kappa_{+1} + kappa_{-1}) / 2`` of a nearest-neighbor pair.

        Defined only when the offsets are exactly {-1, +1}.  The band then
        reads ``E(q) = 2 s cos(qa) + 2 i t sin(qa)`` with ``s`` this value and
        ``t`` :attr:`antisymmetric_hopping`.
        """
        self._require_nearest_neighbor()
        return (self.hoppings[1] + self.hoppings[-1]) / 2.0

    @property
    def antisymmetric_hopping(self) -> complex:
        """Odd part ``(kappa_{+1} - kappa_{-1}) / 2`` of a nearest-neighbor pair."""
        self._require_nearest_neighbor()
        return (self.hoppings[1] - self.hoppings[-1]) / 2.0

    def _require_nearest_neighbor(self):
        if set(self.hoppings) != {-1, 1}:
            raise ValueError("defined only for a pure nearest-neighbor model")


class Dispersion:
    """Callable band ``E(q)`` for a model, with exact integrals.

    ``Dispersion(model)(q)`` evaluates the complex band at scalar or array
    ``q``; :meth:`real_part` and :meth:`imag_part` split it, and
    :meth:`integral` returns the exact antiderivative difference
    ``int_{q0}^{q1} E(u) du`` term by term, with no quadrature error.
    """

    def __init__(self, model: LatticeModel):
        self._a = model.a
        items = sorted(model.hoppings.items())
        self._offsets = np.array([l for l, _ in items], dtype=np.float64)
        self._amps = np.array([amp for _, amp in items], dtype=np.complex128)

    def __call__(self, q):
        q = np.asarray(q, dtype=np.float64)
        # phase matrix (..., n_offsets); sum over the last axis
        ph = np.exp(1j * q[..., None] * self._a * self._offsets)
        out = ph @ self._amps
        return complex(out) if out.ndim == 0 else out

    def real_part(self, q):
        return np.real(self(q)) if np.ndim(q) else self(q).real

    def imag_part(self, q):
        return np.imag(self(q)) if np.ndim(q) else self(q).imag

    def integral(self, q0, q1):
        """Exact ``int_{q0}^{q1} E(u) du`` along the real axis.

        Each hopping term integrates to ``kappa_l (e^{i q1 a l} - e^{i q0 a l})
        / (i a l)``; the sum over the table is returned.  Broadcasts over
        array endpoints.
        """
        q0 = np.asarray(q0, dtype=np.float64)
        q1 = np.asarray(q1, dtype=np.float64)
        al = self._a * self._offsets
        ph1 = np.exp(1j * q1[..., None] * al)
        ph0 = np.exp(1j * q0[..., None] * al)
        out = ((ph1 - ph0) / (1j * al)) @ self._amps
        return complex(out) if out.ndim == 0 else out


def dispersion(model: LatticeModel, q):
    """Evaluate the band ``E(q)`` of ``model`` at ``q`` (scalar or array)."""
    return Dispersion(model)(q)


def is_hermitian(model: LatticeModel, tol: float = 0.0) -> bool:
    """True when ``kappa_{-l} == conj(kappa_l)`` for every offset.

    With ``tol = 0`` the comparison is exact; a positive tolerance compares
    the mismatch against ``tol`` in absolute value.
    """
    for l, amp in model.hoppings.items():
        other = model.hoppings.get(-l, 0.0 + 0.0j)
        if abs(other - amp.conjugate()) > tol:
            return False
    return True


def bloch_period(model: LatticeModel) -> float:
    """The drive period ``2 pi / (|F| a)``; raises :class:`ZeroForceError` at F = 0."""
    if model.F == 0.0:
        raise ZeroForceError("the free lattice has no drive period")
    return 2.0 * math.pi / (abs(model.F) * model.a)


def make_hatano_nelson(kappa: float, mu: float = 0.0, a: float = 1.0, F: float = 0.0) -> LatticeModel:
    """Nearest-neighbor chain with asymmetric real hoppings ``kappa e^{+-mu}``.

    Right hops carry ``kappa exp(mu)``, left hops ``kappa exp(-mu)``; ``mu = 0``
    recovers the Hermitian chain.  The band is an ellipse in the complex
    plane, ``E(q) = 2 kappa cosh(mu) cos(qa) + 2 i kappa sinh(mu) sin(qa)``.
    """
    kappa = float(kappa)
    mu = float(mu)
    if not math.isfinite(kappa) or kappa <= 0.0:
        raise ValueError("kappa must be positive and finite")
    if not math.isfinite(mu):
        raise ValueError("mu must be finite")
    hops = {1: kappa * math.exp(mu) + 0.0j, -1: kappa * math.exp(-mu) + 0.0j}
    return LatticeModel(hops, a=a, F=F, label="hatano_nelson")


def make_imaginary_hopping(kappa: float, a: float = 1.0, F: float = 0.0) -> LatticeModel:
    """Nearest-neighbor chain whose two hops are both ``i kappa``.

    The band ``E(q) = 2 i kappa cos(qa)`` is purely imaginary: every Bloch
    wave grows or decays without propagating phase.
    """
    kappa = float(kappa)
    if not math.isfinite(kappa) or kappa <= 0.0:
        raise ValueError("kappa must be positive and finite")
    hops = {1: 1j * kappa, -1: 1j * kappa}
    return LatticeModel(hops, a=a, F=F, label="imaginary_hopping")


def hatano_nelson_parameters(model: LatticeModel):
    """Return ``(kappa, mu)`` when the table is an asymmetric real pair, else None.

    Recognizes exactly the structure produced by :func:`make_hatano_nelson`:
    offsets {-1, +1} with real positive amplitudes.
    """
    if set(model.hoppings) != {-1, 1}:
        return None
    r = model.hoppings[1]
    l = model.hoppings[-1]
    if r.imag != 0.0 or l.imag != 0.0 or r.real <= 0.0 or l.real <= 0.0:
        return None
    kappa = math.sqrt(r.real * l.real)
    mu = 0.5 * math.log(r.real / l.real)
    return kappa, mu


def imaginary_hopping_parameters(model: LatticeModel):
    """Return ``kappa`` when both nearest-neighbor hops equal ``i kappa``, else None."""
    if set(model.hoppings) != {-1, 1}:
        return None
    r = model.hoppings[1]
    l = model.hoppings[-1]
    if r != l or r.real != 0.0 or r.imag <= 0.0:
        return None
    return r.imag
