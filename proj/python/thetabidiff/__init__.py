"""Riemann theta functions, bidifferential correction matrices, and the
genus-1 coincidence locus."""

from thetabidiff._core import (
    Characteristic,
    LocusSample,
    NumericsError,
    PeriodMatrix,
    ThetaJet,
    c_odd,
    c_zeta,
    coincidence_residual,
    eta_correction,
    odd_characteristics,
    omega_g1,
    refine,
    residuals,
    s_zeta_jet,
    scan,
    sigma_correction,
    sot_value,
    theta_char_jet,
    theta_jet,
    trisecant_residual,
    v00_kernel_dimension,
    verify,
)

__all__ = [
    "Characteristic",
    "LocusSample",
    "NumericsError",
    "PeriodMatrix",
    "ThetaJet",
    "c_odd",
    "c_zeta",
    "coincidence_residual",
    "eta_correction",
    "odd_characteristics",
    "omega_g1",
    "refine",
    "residuals",
    "s_zeta_jet",
    "scan",
    "sigma_correction",
    "sot_value",
    "theta_char_jet",
    "theta_jet",
    "trisecant_residual",
    "v00_kernel_dimension",
    "verify",
]
