"""Resolution limits for 2-D electrical impedance tomography on the disk and half plane."""

from .conformal import (
    DiskInclusion,
    HalfPlaneInclusion,
    MobiusDiskAuto,
    MobiusHalfPlane,
    disk_params_from_p,
    halfplane_params,
    image_disk,
    mobius_apply,
    p_from_disk_params,
    pullback_conductivity,
)
from .resolution import (
    NotMeaningfulError,
    Regime,
    ResolutionResult,
    c_lower_bound,
    eps_max,
    indistinguishable,
    k_threshold,
    resolution_center,
    resolution_disk,
    resolution_halfplane,
)
from .spectral_dn import (
    ConcentricProfile,
    Contrast,
    FourierBoundaryData,
    SpectralDnMap,
    apply_dn,
    dn_map,
    dn_multiplier,
    ellipticity_k,
    h_half_norm,
    op_norm_diff_extremes,
    op_norm_diff_numeric,
    quadratic_form,
)

__version__ = "0.1.0"
