"""Multivariate nonparametric smoothing with the Fourier (sinc) kernel.

Density, regression, deconvolution, mode-finding, modal-regression, and
Markov-transition estimators built on products of sin(R u)/u kernels, plus
pointwise intervals and bootstrap bands. The heavy lifting lives in the
compiled extension; this package just re-exports it.
"""

from ._core import (
    bootstrap_band,
    conditional_modes,
    deconv,
    deconv_mc,
    density,
    density_gradient,
    density_hessian,
    find_modes,
    gaussian_nw,
    generate_example,
    hausdorff,
    mise,
    pointwise_ci,
    regress,
    regress_ci,
    select_radius,
    select_radius_lscv,
    sigma2_hat,
    simulate_ar1,
    transition,
)

__all__ = [
    "bootstrap_band",
    "conditional_modes",
    "deconv",
    "deconv_mc",
    "density",
    "density_gradient",
    "density_hessian",
    "find_modes",
    "gaussian_nw",
    "generate_example",
    "hausdorff",
    "mise",
    "pointwise_ci",
    "regress",
    "regress_ci",
    "select_radius",
    "select_radius_lscv",
    "sigma2_hat",
    "simulate_ar1",
    "transition",
]

__version__ = "0.1.0"
