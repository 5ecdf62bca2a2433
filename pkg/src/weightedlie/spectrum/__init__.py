"""Closed-form spectral objects for commuting systems on R^d.

On an abelian algebra the generator X_j acts in frequency space as
multiplication by i*xi_j, so every operator has a polynomial symbol and the
Plancherel measure is the pushforward of (2 pi)^{-d} Lebesgue measure under
the symbol map.
"""

from .symbols import SymbolPoly, abelian_joint_injectivity, as_symbols, symbol
from .multipliers import Multiplier, multiplier
from .sampling import (
    EmpiricalSpectrum,
    SamplerConfig,
    box_masses,
    pushforward_change_of_generators,
    spectrum_sample,
    support_distance,
)
from .quadrature import (
    convolution_identity_check,
    growth_check,
    kernel_transform,
    plancherel_check,
    polar_decomposition_check,
    sigma_box,
    sigma_ball,
)

__all__ = [
    "SymbolPoly",
    "symbol",
    "as_symbols",
    "abelian_joint_injectivity",
    "Multiplier",
    "multiplier",
    "EmpiricalSpectrum",
    "SamplerConfig",
    "spectrum_sample",
    "pushforward_change_of_generators",
    "support_distance",
    "box_masses",
    "plancherel_check",
    "polar_decomposition_check",
    "kernel_transform",
    "convolution_identity_check",
    "growth_check",
    "sigma_box",
    "sigma_ball",
]
