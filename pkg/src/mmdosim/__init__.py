"""Millimeter-wave exposure of human skin: fields, heating, compliance.

The package is organized as a pipeline.  ``dielectrics`` carries the
measured tissue properties, ``planewave`` the half-space reflection and
absorption formulas, ``multilayer`` the stratified field solver,
``bioheat`` the perfused-tissue temperature solvers, and ``compliance``
the exposure limit catalog.  ``cli`` front-ends all of it.
"""

from .constants import C_0, EPS_0, ETA_0, MU_0
from .dielectrics import (
    ComplexPermittivity,
    SkinModel,
    Tissue,
    eps_imag_to_sigma,
    lookup_skin_model,
    lookup_tissue_dielectric,
    sigma_to_eps_imag,
    tissue_permittivity,
)
from .planewave import (
    Polarization,
    attenuation_constant,
    brewster_angle,
    ninety_percent_absorption_depth,
    penetration_depth,
    power_coefficients,
    reflection_coefficient,
)
from .multilayer import (
    LayerStack,
    ModelPreset,
    PlaneWaveExcitation,
    TissueLayer,
    build_preset_stack,
    clothing_power_sweep,
    clothing_transmission,
    incident_amplitude,
    sar_rho_profile,
    solve_layer_fields,
)
from .bioheat import (
    ThermalStack,
    build_thermal_stack,
    clothing_thickness_temperature_sweep,
    heat_transfer_coefficient,
    solve_steady_theta,
    solve_steady_theta_fd,
    solve_transient_theta,
)
from .compliance import (
    ComplianceReport,
    DeviceFarFieldDescriptor,
    ExposureContext,
    Population,
    Standard,
    Verdict,
    evaluate,
    far_field_pd,
    fraunhofer_distance,
    limit_for,
)

__version__ = "0.1.0"

__all__ = [
    "C_0",
    "EPS_0",
    "ETA_0",
    "MU_0",
    "ComplexPermittivity",
    "SkinModel",
    "Tissue",
    "eps_imag_to_sigma",
    "lookup_skin_model",
    "lookup_tissue_dielectric",
    "sigma_to_eps_imag",
    "tissue_permittivity",
    "Polarization",
    "attenuation_constant",
    "brewster_angle",
    "ninety_percent_absorption_depth",
    "penetration_depth",
    "power_coefficients",
    "reflection_coefficient",
    "LayerStack",
    "ModelPreset",
    "PlaneWaveExcitation",
    "TissueLayer",
    "build_preset_stack",
    "clothing_power_sweep",
    "clothing_transmission",
    "incident_amplitude",
    "sar_rho_profile",
    "solve_layer_fields",
    "ThermalStack",
    "build_thermal_stack",
    "clothing_thickness_temperature_sweep",
    "heat_transfer_coefficient",
    "solve_steady_theta",
    "solve_steady_theta_fd",
    "solve_transient_theta",
    "ComplianceReport",
    "DeviceFarFieldDescriptor",
    "ExposureContext",
    "Population",
    "Standard",
    "Verdict",
    "evaluate",
    "far_field_pd",
    "fraunhofer_distance",
    "limit_for",
    "__version__",
]
