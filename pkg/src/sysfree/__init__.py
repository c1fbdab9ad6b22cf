"""sysfree: desk-scale verification toolkit for systolic-freedom constructions."""

__version__ = "0.1.0"

from .baselines import (LOEWNER_BOUND, PU_BOUND, Lattice2D,
                        RoundProjectivePlane, hexagonal_lattice,
                        lattice_systole, loewner_ratio, pu_ratio)
from .covers import (CoveringCheck, CoveringGraph, antipodal_cycle,
                     graph_quotient_systole_check, voltage_double_cover)
from .errors import (CacheInvalidError, ChartDomainError, ComputationError,
                     DegenerateMapError, IntegrationError, NoCertificateError,
                     NoCycleError, NonHyperbolicError)
from .fuchsian import (DEFAULT_CHI0, CongruenceLevel, FuchsianParams,
                       GroupElement, LengthSpectrum, SpectrumEntry,
                       diameter_upper_bound, enumerate_level_elements,
                       genus_estimate, identity, inverse, is_in_level,
                       multiply, residue_group_order, systole_certificate,
                       translation_length)
from .pipeline import (ConstructionParams, FreedomReport, FreedomRow,
                       SurgeryPlan, build_surgery_plan, epsilon_rule,
                       freedom_ratio, order_lower_bound, run_pipeline,
                       semibundle_sys_bound, surgery_levels, sys1_lower,
                       sys2_lower, vol_upper)
from .surgery import (DEFAULT_PROFILE, SMOOTHSTEP_CUBIC, SMOOTHSTEP_QUINTIC,
                      CoordinateMap, SmoothProfile, SolidTorusChart,
                      SurgeryVerification, annulus_twist, beta_twist,
                      blended_metric, chart_volume, curve_length, cutoff_phi,
                      euclidean_torus_metric, gluing_map, make_beta_twist,
                      make_blended_field, make_gluing_map, numerical_jacobian,
                      positive_definite_check, pullback_metric,
                      substitution_length_bound, verify_surgery_charts)
