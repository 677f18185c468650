"""qradon: exact optical-homodyne tomograms and their inversion.

Forward models synthesize the line-integral (Radon) transform of Wigner
functions for squeezed coherent states and truncated Fock-basis density
matrices; the inverse side reconstructs density-matrix elements through
pattern functions, Q-function values through a Dawson kernel, and normally
ordered moments through Hermite-weighted projections with either angle
averaging or discrete circle divisions.  Squeeze/displacement covariance is
available as an exact argument transformation on either side.
"""

from .errors import (AccuracyError, AccuracyWarning, ConsistencyError,
                     ConvergenceError, DomainError, QRadonError, RangeError,
                     RepresentationError, UnreliableRegionWarning,
                     WindowError, WindowWarning)
from .specfun import (EvalGrid, dawson, g_derivative, g_function,
                      hermite_function, hermite_function_derivative,
                      hermite_poly, laguerre_assoc, mehler_kernel, wronskian)
from .symplectic import (ComplexSqueezeMap, Displacement, SqueezeParams,
                         SymplecticMap, complex_from_real, matrix_from_squeeze,
                         real_from_complex, rotation_map, squeeze_from_matrix,
                         transform_radon_args, unitary_squeeze_matrices,
                         zeta_reparam, zeta_reparam_inverse)
from .states import (DensityMatrix, FockSource, GaussianState, MomentSet,
                     Tomogram, TomogramEvaluator, TransformedSource,
                     default_grid, fourier_gaussian, gaussian_statistics,
                     radon_from_density, radon_gaussian, sample_tomogram,
                     scalar_product_rotated, transform_tomogram,
                     wigner_gaussian)
from .radon import (FilteredBackprojection, PlaneField, fourier_from_radon,
                    gauss_panels, pv_functional, radon_from_fourier,
                    radon_numeric, reg_inv_square_functional,
                    wigner_from_tomogram)
from .pattern import (PatternTable, build_table, ode_residual,
                      orthogonality_check, pattern_asymptotic,
                      pattern_canonical, pattern_deriv_product, pattern_eval,
                      pattern_f00_closed, pattern_hermite_series,
                      pattern_nonuniqueness_residual)
from .reconstruct import (AngleDivision, PRESET_HARMONIC_THIRDS,
                          PRESET_QUARTERS, QuadratureSpec,
                          density_from_moments, density_matrix_from_tomogram,
                          fock_element_from_tomogram, moment_angle_average,
                          moment_discrete_angles, moment_set_from_tomogram,
                          moments_low_order_custom, projection_identity_check,
                          qfunction_from_tomogram)

__version__ = "0.1.0"
