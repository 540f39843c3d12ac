"""Wave packets on driven tight-binding chains, Hermitian or not.

The package simulates a single-band chain with arbitrary complex hoppings
under a constant force, cross-validating three independent routes to the
same dynamics: brute-force RK4 integration, the exact spectral map, and
closed-form Bessel propagators.  Closed expressions for the stationary
ladder, the complex drift orbit, the overall amplification, and the
momentum-drift correction come along for the ride.
"""

from .analytic import (ComplexOrbit, WannierStarkState, complex_orbit,
                       norm_factor, predicted_profile, propagator_apply,
                       propagator_generic, propagator_hn, propagator_imag,
                       propagator_matrix, suggested_window, theta_correction,
                       ws_energy, ws_state_generic, ws_state_hn)
from .errors import (BesselRangeError, BlochsimError, ConfigError,
                     DegenerateStateError, ProfileError, StepSizeError,
                     WindowTooSmallError, ZeroForceError)
from .evolve import (EvolveSettings, evolve_spectral, hamiltonian_apply, run,
                     step_rk4)
from .model import (Dispersion, LatticeModel, bloch_period, dispersion,
                    hatano_nelson_parameters, imaginary_hopping_parameters,
                    is_hermitian, make_hatano_nelson, make_imaginary_hopping)
from .observe import (Observables, centroid_n, momentum_centroid, record,
                      width_n, width_n_centered)
from .special import (BesselWorkspace, bessel_i, bessel_i_sequence, bessel_j,
                      bessel_j_sequence, periodic_quadrature)
from .state import (ChainState, MomentumSpectrum, ProfileSpec, boundary_fraction,
                    build_state, from_spectrum, profile_at_complex, site_rows,
                    to_spectrum)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "BlochsimError", "ConfigError", "ZeroForceError", "BesselRangeError",
    "ProfileError", "StepSizeError", "DegenerateStateError", "WindowTooSmallError",
    # special
    "BesselWorkspace", "bessel_j", "bessel_i", "bessel_j_sequence",
    "bessel_i_sequence", "periodic_quadrature",
    # model
    "LatticeModel", "Dispersion", "make_hatano_nelson", "make_imaginary_hopping",
    "dispersion", "is_hermitian", "bloch_period", "hatano_nelson_parameters",
    "imaginary_hopping_parameters",
    # state
    "ChainState", "MomentumSpectrum", "ProfileSpec", "build_state",
    "profile_at_complex", "to_spectrum", "from_spectrum", "boundary_fraction",
    "site_rows",
    # evolve
    "EvolveSettings", "hamiltonian_apply", "step_rk4", "evolve_spectral", "run",
    # analytic
    "WannierStarkState", "ComplexOrbit", "ws_energy", "ws_state_generic",
    "ws_state_hn", "propagator_generic", "propagator_hn", "propagator_imag",
    "propagator_matrix", "propagator_apply", "complex_orbit", "norm_factor",
    "theta_correction", "predicted_profile", "suggested_window",
    # observe
    "Observables", "centroid_n", "width_n", "width_n_centered",
    "momentum_centroid", "record",
]
