"""Alpha-energy of maps between 2-spheres."""

from ._core import (
    DegenerateMatrixError,
    DomainError,
    Mobius,
    QuadratureError,
    ShotFailedError,
    dilation_energy,
    energy_report,
    growth_function,
    minimize_radial,
    mobius_energy_report,
    mobius_svd,
    norm_grad_log_chi,
    norm_grad_log_chi_bound,
    radial_degree,
    radial_energy,
    radial_residual,
    rotation_energy,
    shoot_radial,
    verify,
    xi_bounds,
)

__all__ = [name for name in dir() if not name.startswith("_")]
