"""Periodic-sequence electromagnetics: w-domain transforms, periodic
excitations, analytic waveguide propagation and port-network responses."""

from .errors import (DomainError, ExtrapolationError, KindError, ParseError,
                     SymmetryError, TPSError)
from .sequence import (FrequencyGrid, OhmicGrid, PeriodicSequence, WSpectrum,
                       apply_avg, apply_dt, apply_dtt, build_grid, forward_e,
                       forward_h, inverse_e, inverse_h, ohmic_grid,
                       quantized_frequency, sgn)
from .excitation import (PeriodicExcitation, PulseShape, check_sampling, g_factor,
                         kmax_explicit, kmax_numeric, synth, tp_from_bt)
from .waveguide import (TE10, ModalFieldSample, ModeIndex, WaveguideSpec, cutoff,
                        dispersion_error_approx, dispersion_error_beta,
                        dispersion_error_exact, kz, lossy_wavenumber, mode_fields,
                        propagate, propagate_sequence)
from .energy import (FieldPair, complex_poynting, delta_weight, power_densities,
                     time_avg_poynting, w_domain_poynting)
from .network import (PortNetwork, WTransfer, circular_convolve, kl_divergence,
                      parse_touchstone, read_touchstone, resample, respond)

__version__ = "0.1.0"
