"""Closed-form radial solutions and bound-state energies for the three
potentials, their large-dimension asymptotics, and reduced radial densities.

Radial functions solve

    U'' + (c/r) U' + [2m(E - V)/hbar^2 - W^2/r^2] U = 0,
    c = d - 1 + 2 sum mu,  W^2 = varpi_sq(state, params)

and come in two shapes. The Gaussian family (harmonic and pseudoharmonic
wells) is, in the variable u = decay_scale * r^2,

    U(r) = N u^{p} e^{-u/2} M(-n, b, u)

while the attractive 1/r problem decays exponentially,

    U(r) = N r^{2L} e^{-eta r} M(-n, B, 2 eta r).

Normalization constants are fixed numerically by Gauss quadrature against
the radial weight r^c; the energy formulas are exact closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import DeformationParams
from .errors import DomainError, InvalidStateError
from .polar import AngularState, varpi_sq
from .specfun import build_quadrature, kummer_m

__all__ = [
    "Oscillator",
    "Pseudoharmonic",
    "Coulomb",
    "RadialSolution",
    "EnergyLevel",
    "potential_tag",
    "oscillator_energy",
    "oscillator_radial_solution",
    "oscillator_radial_wavefunction",
    "pho_energy",
    "pho_radial_solution",
    "coulomb_energy",
    "coulomb_radial_solution",
    "coulomb_radial_wavefunction",
    "coulomb_large_d_expansion",
    "radial_wavefunction",
    "radial_solution",
    "bound_energy",
    "reduced_density",
]


@dataclass(frozen=True)
class Oscillator:
    """Isotropic harmonic well (1/2) m w^2 r^2."""
    omega: float

    def __post_init__(self):
        if not self.omega > 0.0:
            raise DomainError(f"frequency must be positive, got {self.omega}")


@dataclass(frozen=True)
class Pseudoharmonic:
    """Molecular well D_e (r/r_e - r_e/r)^2 with depth D_e and minimum r_e."""
    D_e: float
    r_e: float

    def __post_init__(self):
        if not self.D_e > 0.0:
            raise DomainError(f"well depth must be positive, got {self.D_e}")
        if not self.r_e > 0.0:
            raise DomainError(f"equilibrium radius must be positive, got {self.r_e}")


@dataclass(frozen=True)
class Coulomb:
    """Attractive -e2/r potential with coupling e2 > 0."""
    e2: float

    def __post_init__(self):
        if not self.e2 > 0.0:
            raise DomainError(f"coupling must be positive, got {self.e2}")


PotentialSpec = Oscillator | Pseudoharmonic | Coulomb

_TAGS = {Oscillator: "oscillator", Pseudoharmonic: "pho", Coulomb: "coulomb"}


def potential_tag(potential: PotentialSpec) -> str:
    return _TAGS[type(potential)]


@dataclass(frozen=True)
class RadialSolution:
    """Closed-form bound radial state.

    For the Gaussian family, leading_exponent is the power of
    u = decay_scale r^2 in front; for the 1/r problem it is the power of r
    itself and decay_scale is the exponential rate eta. kummer_a = -n always;
    kummer_b must be positive for the state to be normalizable.
    """
    potential: PotentialSpec
    params: DeformationParams
    state: AngularState
    n: int
    leading_exponent: float
    decay_scale: float
    kummer_a: float
    kummer_b: float
    energy: float
    norm: float
    hbar: float
    mass: float

    def __post_init__(self):
        if self.kummer_b <= 0.0:
            raise InvalidStateError(
                f"hypergeometric parameter b={self.kummer_b} must be positive")
        if self.kummer_a != -self.n:
            raise InvalidStateError(
                f"bound state needs a=-n, got a={self.kummer_a}, n={self.n}")


@dataclass(frozen=True)
class EnergyLevel:
    """One spectrum entry: quantum labels plus the closed-form energy."""
    n: int
    state: AngularState
    d: int
    energy: float
    potential: PotentialSpec

    def __post_init__(self):
        if isinstance(self.potential, Coulomb) and not self.energy < 0.0:
            raise InvalidStateError(
                f"attractive 1/r bound states must have negative energy, "
                f"got {self.energy}")

    @property
    def tag(self) -> str:
        return potential_tag(self.potential)


def _check_inputs(n: int, state: AngularState, params: DeformationParams) -> None:
    if n < 0 or n != int(n):
        raise DomainError(f"radial quantum number must be a nonnegative integer, got {n}")
    if state.d != params.d:
        raise InvalidStateError(
            f"state has dimension {state.d}, parameters have {params.d}")


def _radial_weight_exponent(params: DeformationParams) -> float:
    return params.d - 1.0 + 2.0 * params.mu_sum


def oscillator_energy(n: int, state: AngularState, params: DeformationParams,
                      omega: float, hbar: float = 1.0) -> float:
    """Harmonic-well level 2 hbar w (n + L + (d + 2 sum mu)/4)."""
    _check_inputs(n, state, params)
    if not omega > 0.0:
        raise DomainError(f"frequency must be positive, got {omega}")
    L = state.ell_total
    return 2.0 * hbar * omega * (n + L + (params.d + 2.0 * params.mu_sum) / 4.0)


@lru_cache(maxsize=512)
def _gaussian_norm(p: float, c: float, n: int, b: float, scale: float) -> float:
    # integral U^2 r^c dr with U = u^p e^{-u/2} M(-n, b, u), u = scale r^2
    gamma = c + 4.0 * p
    rule = build_quadrature(gamma, "exp_r2", max(2 * n + 4, 8))
    vals = kummer_m(-float(n), b, rule.nodes ** 2)
    total = scale ** (-(c + 1.0) / 2.0) * float(np.sum(rule.weights * vals ** 2))
    return 1.0 / np.sqrt(total)


def oscillator_radial_solution(n: int, state: AngularState,
                               params: DeformationParams, omega: float,
                               hbar: float = 1.0, mass: float = 1.0
                               ) -> RadialSolution:
    """Closed-form harmonic-well radial state, normalized numerically."""
    _check_inputs(n, state, params)
    L = state.ell_total
    c = _radial_weight_exponent(params)
    b = (params.d + 2.0 * params.mu_sum) / 2.0 + 2.0 * L
    scale = mass * omega / hbar
    return RadialSolution(
        potential=Oscillator(omega), params=params, state=state, n=int(n),
        leading_exponent=L, decay_scale=scale, kummer_a=-float(n),
        kummer_b=b, energy=oscillator_energy(n, state, params, omega, hbar),
        norm=_gaussian_norm(L, c, int(n), b, scale), hbar=hbar, mass=mass)


def _gaussian_wavefunction(sol: RadialSolution, r):
    r = np.asarray(r, dtype=float)
    u = sol.decay_scale * r * r
    out = (sol.norm * np.power(u, sol.leading_exponent) * np.exp(-0.5 * u)
           * kummer_m(sol.kummer_a, sol.kummer_b, u))
    return out if out.ndim else float(out)


def oscillator_radial_wavefunction(sol: RadialSolution, r):
    """Evaluate a Gaussian-family radial state at r (scalar or array).

    Valid for harmonic and pseudoharmonic solutions; both share the
    u^p e^{-u/2} M(-n, b, u) shape.
    """
    if isinstance(sol.potential, Coulomb):
        raise DomainError("solution is not in the Gaussian family")
    return _gaussian_wavefunction(sol, r)


def pho_energy(n: int, state: AngularState, params: DeformationParams,
               D_e: float, r_e: float, hbar: float = 1.0,
               mass: float = 1.0) -> float:
    """Pseudoharmonic-well level.

    E = -2 D_e + 4 hbar sqrt(D_e/(m r_e^2)) [n + 1/2 + (1/2) sqrt(rad)],
    rad = 1 + (S + d/2)(S + d/2 - 2) + W^2 + 2 D_e m r_e^2 / hbar^2

    with S = sum mu and W^2 the total angular constant. The radicand equals
    ((c-1)/2)^2 + W^2 + 2 D_e m r_e^2/hbar^2 and is never negative.
    """
    Pseudoharmonic(D_e, r_e)
    _check_inputs(n, state, params)
    s0 = params.mu_sum + params.d / 2.0
    radicand = (1.0 + s0 * (s0 - 2.0) + varpi_sq(state, params)
                + 2.0 * D_e * mass * r_e ** 2 / hbar ** 2)
    assert radicand >= 0.0
    return (-2.0 * D_e + 4.0 * hbar * np.sqrt(D_e / (mass * r_e ** 2))
            * (n + 0.5 + 0.5 * np.sqrt(radicand)))


def pho_radial_solution(n: int, state: AngularState, params: DeformationParams,
                        D_e: float, r_e: float, hbar: float = 1.0,
                        mass: float = 1.0) -> RadialSolution:
    """Closed-form pseudoharmonic radial state, normalized numerically.

    The well contributes an extra 1/r^2 barrier, so the leading power is the
    positive root p of the shifted indicial equation rather than 2L.
    """
    _check_inputs(n, state, params)
    Pseudoharmonic(D_e, r_e)
    c = _radial_weight_exponent(params)
    delta_sq = varpi_sq(state, params) + 2.0 * mass * D_e * r_e ** 2 / hbar ** 2
    # delta_sq > 0 makes the positive root the unique normalizable branch
    p = 0.5 * ((1.0 - c) + np.sqrt((c - 1.0) ** 2 + 4.0 * delta_sq))
    b = (c + 1.0) / 2.0 + p
    big_omega = 2.0 * np.sqrt(D_e / mass) / r_e
    scale = mass * big_omega / hbar
    return RadialSolution(
        potential=Pseudoharmonic(D_e, r_e), params=params, state=state,
        n=int(n), leading_exponent=p / 2.0, decay_scale=scale,
        kummer_a=-float(n), kummer_b=b,
        energy=pho_energy(n, state, params, D_e, r_e, hbar, mass),
        norm=_gaussian_norm(p / 2.0, c, int(n), b, scale), hbar=hbar, mass=mass)


def coulomb_energy(n: int, state: AngularState, params: DeformationParams,
                   e2: float, hbar: float = 1.0, mass: float = 1.0) -> float:
    """Attractive 1/r level -(m e2^2 / 2 hbar^2) / (n + 2L + sum mu + (d-1)/2)^2."""
    Coulomb(e2)
    _check_inputs(n, state, params)
    kappa = n + 2.0 * state.ell_total + params.mu_sum + (params.d - 1.0) / 2.0
    if kappa <= 0.0:
        raise DomainError(
            f"no bound state: effective principal number {kappa} is not positive")
    return -mass * e2 ** 2 / (2.0 * hbar ** 2 * kappa ** 2)


@lru_cache(maxsize=512)
def _coulomb_norm(L: float, c: float, n: int, B: float, eta: float) -> float:
    # integral U^2 r^c dr with U = r^{2L} e^{-eta r} M(-n, B, 2 eta r)
    gamma = 4.0 * L + c
    rule = build_quadrature(gamma, "exp_r", max(n + 4, 8))
    vals = kummer_m(-float(n), B, rule.nodes)
    total = (2.0 * eta) ** (-(gamma + 1.0)) * float(np.sum(rule.weights * vals ** 2))
    return 1.0 / np.sqrt(total)


def coulomb_radial_solution(n: int, state: AngularState,
                            params: DeformationParams, e2: float,
                            hbar: float = 1.0, mass: float = 1.0
                            ) -> RadialSolution:
    """Closed-form attractive-1/r radial state, normalized numerically."""
    energy = coulomb_energy(n, state, params, e2, hbar, mass)
    L = state.ell_total
    c = _radial_weight_exponent(params)
    eta = np.sqrt(-2.0 * mass * energy) / hbar
    B = 4.0 * L + 2.0 * params.mu_sum + params.d - 1.0
    return RadialSolution(
        potential=Coulomb(e2), params=params, state=state, n=int(n),
        leading_exponent=2.0 * L, decay_scale=eta, kummer_a=-float(n),
        kummer_b=B, energy=energy,
        norm=_coulomb_norm(L, c, int(n), B, eta), hbar=hbar, mass=mass)


def coulomb_radial_wavefunction(sol: RadialSolution, r):
    """Evaluate an attractive-1/r radial state at r (scalar or array)."""
    if not isinstance(sol.potential, Coulomb):
        raise DomainError("solution is not an attractive-1/r state")
    r = np.asarray(r, dtype=float)
    out = (sol.norm * np.power(r, sol.leading_exponent)
           * np.exp(-sol.decay_scale * r)
           * kummer_m(sol.kummer_a, sol.kummer_b, 2.0 * sol.decay_scale * r))
    return out if out.ndim else float(out)


def radial_wavefunction(sol: RadialSolution, r):
    """Evaluate any RadialSolution at r."""
    if isinstance(sol.potential, Coulomb):
        return coulomb_radial_wavefunction(sol, r)
    return _gaussian_wavefunction(sol, r)


def radial_solution(potential: PotentialSpec, n: int, state: AngularState,
                    params: DeformationParams, hbar: float = 1.0,
                    mass: float = 1.0) -> RadialSolution:
    """Build the radial state for any potential variant."""
    if isinstance(potential, Oscillator):
        return oscillator_radial_solution(n, state, params, potential.omega,
                                          hbar, mass)
    if isinstance(potential, Pseudoharmonic):
        return pho_radial_solution(n, state, params, potential.D_e,
                                   potential.r_e, hbar, mass)
    if isinstance(potential, Coulomb):
        return coulomb_radial_solution(n, state, params, potential.e2,
                                       hbar, mass)
    raise DomainError(f"unknown potential {potential!r}")


def bound_energy(potential: PotentialSpec, n: int, state: AngularState,
                 params: DeformationParams, hbar: float = 1.0,
                 mass: float = 1.0) -> float:
    """Closed-form energy for any potential variant."""
    if isinstance(potential, Oscillator):
        return oscillator_energy(n, state, params, potential.omega, hbar)
    if isinstance(potential, Pseudoharmonic):
        return pho_energy(n, state, params, potential.D_e, potential.r_e,
                          hbar, mass)
    if isinstance(potential, Coulomb):
        return coulomb_energy(n, state, params, potential.e2, hbar, mass)
    raise DomainError(f"unknown potential {potential!r}")


def coulomb_large_d_expansion(n: int, state: AngularState,
                              params: DeformationParams, e2: float,
                              order: int = 2, hbar: float = 1.0,
                              mass: float = 1.0) -> float:
    """Truncated large-d series of the attractive-1/r level.

    E ~ -(2 m e2^2/hbar^2) [1/d^2 - 4 (n + 2L + sum mu - 1/2)/d^3 + ...]

    order counts the retained bracket terms (0, 1, or 2). The remainder of
    the order-2 truncation is O(d^-4) times the prefactor 2 m e2^2/hbar^2.
    """
    Coulomb(e2)
    _check_inputs(n, state, params)
    if order not in (0, 1, 2):
        raise DomainError(f"truncation order must be 0, 1, or 2, got {order}")
    d = params.d
    total = 0.0
    if order >= 1:
        total += 1.0 / d ** 2
    if order >= 2:
        shift = n + 2.0 * state.ell_total + params.mu_sum - 0.5
        total -= 4.0 * shift / d ** 3
    return -2.0 * mass * e2 ** 2 / hbar ** 2 * total


def reduced_density(sol: RadialSolution, r):
    """Radial probability density |U(r)|^2 r^{d - 1 + 2 sum mu}.

    Integrates to one over (0, inf) because the solutions are normalized
    against exactly this weight.
    """
    r = np.asarray(r, dtype=float)
    c = _radial_weight_exponent(sol.params)
    u = radial_wavefunction(sol, r)
    out = np.asarray(u) ** 2 * np.power(r, c)
    return out if out.ndim else float(out)
