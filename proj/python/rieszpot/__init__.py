"""Riesz potentials of ellipsoidal equilibrium measures."""

import json as _json

from ._core import (
    ConfigError,
    DomainError,
    Ellipsoid,
    EquilibriumMeasure,
    Kernel,
    NumericalError,
    ParameterError,
    Profile,
    ResourceError,
    constant_potential,
    counterexample_A_closed,
    counterexample_profile,
    energy_estimate,
    isotropic_radial_potential,
    mc_potential,
    nonneg_criterion,
    potential_inside,
    quadratic_potential,
    regularized_potential,
    sample,
    specfun,
    symbol,
)
from ._core import counterexample_A as _counterexample_A
from ._core import el_check as _el_check


def counterexample_A(d, s, eps=0.0):
    return _json.loads(_counterexample_A(d, s, eps))


def el_check(kernel, candidate, ellipsoid, n_support=200, n_grid=200, mc_samples=1_000_000, seed=1):
    return _json.loads(_el_check(kernel, candidate, ellipsoid, n_support, n_grid, mc_samples, seed))
