"""semiwig: semiclassical phase-space solver for the harmonic oscillator.

Special functions evaluated from scratch (Airy/Hermite/Laguerre/log-gamma),
uniform stationary-phase machinery for coalescing saddles, WKB and exact
oscillator eigenfunctions, Wigner transforms with Airy-uniformized
approximations, and an eigenfunction-series evolution solver with
coherent/incoherent intensity reconstruction.
"""

__version__ = "0.1.0"

from .errors import (AccuracyError, BracketingError, CapabilityError,
                     CertificateError, ConfigError, DegeneratePointError,
                     DegenerateRootError, DomainError, FlatPhaseError,
                     GridError, SemiwigError, TurningBandError,
                     UnsupportedError, WrongBranchError)
from .specfun import (AiryPair, airy, airy_ai_aip, airy_scaled, hermite,
                      hermite_function, laguerre, laguerre_airy,
                      laguerre_scaled, log_gamma)
from .stationary_phase import (AiryDecomposition, PhaseModel,
                               StationaryPointSet, UniformSpResult,
                               airy_decompose, find_saddles,
                               oscillatory_quadrature, standard_sp,
                               standard_sp_2d, uniform_sp)
from .oscillator import (SchrodingerSeries, SemiclassicalParams,
                         WellPotential, WkbEigenfunction, bohr_sommerfeld,
                         eigenvalue, exact_eigenfunction, wkb_action,
                         wkb_eigenfunction, wkb_two_phase)
from .wigner import (ComplexField, DecayCertificate, EigencurveGeometry,
                     PhaseSpaceGrid, airy_diagonal, airy_offdiagonal,
                     berry_semiclassical, classical_limit_eigenfunction,
                     eigenfunction_certificate, exact_wigner_eigenfunction,
                     exact_wigner_field, marginals, stationary_geometry_diag,
                     stationary_geometry_offdiag, wigner_transform)
from .solver import (AmplitudeDecomposition, InitialDatum, SpectralSolution,
                     amplitude, bump_amplitude, coefficients_exact,
                     cubic_phase_coefficient, evolve, gaussian_amplitude,
                     liouville_residual, polynomial_phase,
                     quadratic_phase_closed_form, quadratic_phase_coefficient,
                     split, unit_amplitude)
