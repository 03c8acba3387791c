"""Semiclassical angular-momentum toolkit.

Exact Clebsch-Gordan / Wigner-d kernels next to their semiclassical
approximations (closed allowed/forbidden forms and uniform Airy solutions),
Gaussian angular wavepackets with uncertainty products and precession, and
the transverse m-state correlation identities.
"""

from .qnum import (EulerAngles, HalfInt, JM, NormConvention, as_halfint,
                   lambda_perp, m_range, parity_phase, theta_m, triangle_ok)
from .exact import (CGKey, CGRelation, cg_exact, cg_symmetry,
                    coupled_state_product_basis, pairwise_xx_expectation,
                    pairwise_yy_expectation, pairwise_zz_expectation,
                    wigner_D, wigner_d_exact)
from .special import (acos_complex, acosh_real_branch, airy_ai, airy_ai_prime,
                      airy_bi, airy_bi_prime, std_normal_cdf, std_normal_pdf)
from .semicg import (BranchAssertionError, CouplingGeometry, DegenerateGeometryError,
                     RegionError, RegionKind, RegionTag, beta_area, cg_allowed,
                     cg_forbidden, cg_sq_avg, cg_wkb, classify_region,
                     coupling_geometry)
from .semiwigd import (SingularAngleError, TurningRegionError, WigdQuery,
                       r_classifier, wigd_asymptotic, wigd_from_cg_limit,
                       wigd_phase, wigd_symmetry, wigd_wkb)
from .wavepacket import (AngularDensity, EmptyPacketError, FitFailureError,
                         JWavepacket, RectifiedStats, WavepacketSpec, WidthReport,
                         build_j_wavepacket, clamped_gaussian_stats, make_grid,
                         measured_q_polar_angle, particle_density, q_distribution,
                         q_distribution_moments, rectified_stats,
                         uncertainty_report, vmw_operator_check, width_fit,
                         width_phi)
from .precession import (FieldFramePacket, LobeTrackingError, PrecessionConfig,
                         RotationTrace, evolve, particle_ring, q_ring,
                         to_field_frame, track_rotation)
from .correlations import (CorrelationInput, CosPhi12, cos_phi12, g_factor,
                           mstate_correlation_closed, mstate_correlation_exact,
                           mstate_correlation_vm)

__all__ = [name for name in dir() if not name.startswith("_")]
