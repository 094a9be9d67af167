"""Numerical kernels: classical orthogonal polynomials, the confluent
hypergeometric function M(a, b, x), and Gauss quadrature builders for the
half-line weights r^gamma e^{-r} and r^gamma e^{-r^2}.

Polynomials are evaluated by ascending three-term recurrences, which stay
stable for the index ranges used here (factorial-ratio closed forms overflow
near n ~ 20). All routines accept numpy arrays in the argument position.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np
import mpmath
from scipy.linalg import eigh_tridiagonal
from scipy.special import betaln

from .errors import ConvergenceError, DomainError

__all__ = [
    "QuadratureRule",
    "laguerre",
    "jacobi",
    "kummer_m",
    "gauss_jacobi",
    "build_quadrature",
]

_SERIES_CAP = 10000


def laguerre(n, alpha, x):
    """Generalized Laguerre polynomial L_n^alpha(x).

    Ascending recurrence in the degree. Requires alpha > -1 so the weight
    x^alpha e^{-x} is integrable at the origin.
    """
    if n < 0 or n != int(n):
        raise DomainError(f"degree must be a nonnegative integer, got {n}")
    if alpha <= -1.0:
        raise DomainError(f"laguerre parameter must exceed -1, got alpha={alpha}")
    n = int(n)
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if n == 0:
        return p0 if p0.ndim else float(p0)
    p1 = 1.0 + alpha - x
    for k in range(1, n):
        p0, p1 = p1, ((2.0 * k + 1.0 + alpha - x) * p1 - (k + alpha) * p0) / (k + 1.0)
    return p1 if p1.ndim else float(p1)


def jacobi(n, alpha, beta, x):
    """Jacobi polynomial P_n^{(alpha, beta)}(x) by ascending recurrence.

    alpha, beta > -1. The recurrence coefficients are the standard ones; the
    k = 1 step is written out explicitly because the general formula has a
    removable 0/0 at alpha + beta = -1.
    """
    if n < 0 or n != int(n):
        raise DomainError(f"degree must be a nonnegative integer, got {n}")
    if alpha <= -1.0 or beta <= -1.0:
        raise DomainError(
            f"jacobi parameters must exceed -1, got alpha={alpha}, beta={beta}")
    n = int(n)
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if n == 0:
        return p0 if p0.ndim else float(p0)
    p1 = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * x
    for k in range(2, n + 1):
        c1 = 2.0 * k * (k + alpha + beta) * (2.0 * k + alpha + beta - 2.0)
        c2 = (2.0 * k + alpha + beta - 1.0) * (alpha * alpha - beta * beta)
        c3 = ((2.0 * k + alpha + beta - 1.0) * (2.0 * k + alpha + beta)
              * (2.0 * k + alpha + beta - 2.0))
        c4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + alpha + beta)
        p0, p1 = p1, ((c2 + c3 * x) * p1 - c4 * p0) / c1
    return p1 if p1.ndim else float(p1)


def _is_nonpos_int(v: float) -> bool:
    return v <= 0.0 and abs(v - round(v)) < 1e-13


def _kummer_poly_mp(n: int, b: float, x: float) -> float:
    # terminating sum redone in wide arithmetic; the float64 pass flags the
    # cases where alternating terms dwarf the result
    with mpmath.workdps(45):
        bb = mpmath.mpf(b)
        xx = mpmath.mpf(x)
        total = mpmath.mpf(1)
        term = mpmath.mpf(1)
        for k in range(n):
            term *= (k - n) * xx / ((bb + k) * (k + 1))
            total += term
        return float(total)


def kummer_m(a: float, b: float, x):
    """Confluent hypergeometric function M(a, b, x) = 1F1(a; b; x).

    When a is a non-positive integer the series terminates and is summed
    exactly as a polynomial; that also covers b a non-positive integer with
    |a| <= |b|, where the truncation stops before the zero denominator.
    Otherwise the power series is summed with a term-ratio stopping rule.
    """
    if _is_nonpos_int(b) and not (_is_nonpos_int(a) and abs(a) <= abs(b)):
        raise DomainError(
            f"M(a, b, x) undefined for b={b}: non-positive integer b requires "
            f"a a non-positive integer with |a| <= |b|")
    x = np.asarray(x, dtype=float)
    total = np.ones_like(x)
    term = np.ones_like(x)
    if _is_nonpos_int(a):
        n = int(round(-a))
        absum = np.ones_like(x)
        for k in range(n):
            term = term * ((a + k) / ((b + k) * (k + 1.0))) * x
            total = total + term
            absum = absum + np.abs(term)
        # cancellation guard: termwise float64 rounding scales with the
        # largest partial sums, so redo ill-conditioned entries widened
        bad = absum > 1e4 * np.maximum(np.abs(total), 1e-300)
        if np.any(bad):
            flat = np.atleast_1d(total)
            xs = np.atleast_1d(x)
            for i in np.flatnonzero(np.atleast_1d(bad)):
                flat[i] = _kummer_poly_mp(n, b, float(xs[i]))
            total = flat if total.ndim else flat[0]
        return total if np.ndim(total) else float(total)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(_SERIES_CAP):
            term = term * ((a + k) / ((b + k) * (k + 1.0))) * x
            total = total + term
            if not np.all(np.isfinite(total)):
                break
            if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
                return total if total.ndim else float(total)
    raise ConvergenceError(
        f"M({a}, {b}, x) series did not converge within {_SERIES_CAP} terms")


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule for integrals of f(r) r^gamma w(r) over (0, inf).

    variant selects the exponential factor: "exp_r" means w(r) = e^{-r},
    "exp_r2" means w(r) = e^{-r^2}. Exact for polynomial f up to degree
    2 * npoints - 1.
    """
    nodes: np.ndarray
    weights: np.ndarray
    weight_exponent: float
    variant: str

    @property
    def npoints(self) -> int:
        return len(self.nodes)

    def integrate(self, f) -> float:
        return float(np.sum(self.weights * f(self.nodes)))


def gauss_jacobi(alpha: float, beta: float, npoints: int):
    """Nodes and weights for the weight (1-u)^alpha (1+u)^beta on [-1, 1].

    Golub-Welsch on the known recurrence coefficients; the zeroth moment is
    formed in log space through betaln to avoid overflow.
    """
    if alpha <= -1.0 or beta <= -1.0:
        raise DomainError(
            f"jacobi weight needs alpha, beta > -1, got {alpha}, {beta}")
    if npoints < 1:
        raise DomainError("npoints must be positive")
    n = int(npoints)
    diag = np.empty(n)
    diag[0] = (beta - alpha) / (alpha + beta + 2.0)
    k = np.arange(1, n, dtype=float)
    diag[1:] = (beta * beta - alpha * alpha) / (
        (2.0 * k + alpha + beta) * (2.0 * k + alpha + beta + 2.0))
    with np.errstate(invalid="ignore"):
        off_sq = (4.0 * k * (k + alpha) * (k + beta) * (k + alpha + beta)
                  / ((2.0 * k + alpha + beta) ** 2
                     * (2.0 * k + alpha + beta + 1.0)
                     * (2.0 * k + alpha + beta - 1.0)))
    if n > 1:
        # k = 1 is 0/0 when alpha + beta = -1; the cancelled form is exact
        # for every admissible (alpha, beta)
        off_sq[0] = (4.0 * (alpha + 1.0) * (beta + 1.0)
                     / ((alpha + beta + 2.0) ** 2 * (alpha + beta + 3.0)))
    off = np.sqrt(off_sq)
    nodes, vecs = eigh_tridiagonal(diag, off)
    mu0 = math.exp((alpha + beta + 1.0) * math.log(2.0)
                   + betaln(alpha + 1.0, beta + 1.0))
    return nodes, mu0 * vecs[0] ** 2


def _christoffel_weights(diag, off, mu0: float, nodes: np.ndarray) -> np.ndarray:
    """Gauss weights as inverse sums of squared orthonormal polynomials.

    Eigenvector first components lose all relative accuracy once a weight
    drops below eps * mu0 (they underflow to zero outright for the largest
    nodes of big exponential-weight rules); the Christoffel form keeps each
    weight relatively accurate because the dominant recurrence solution is
    forward-stable.
    """
    q_prev = np.zeros_like(nodes)
    q = np.full_like(nodes, 1.0 / math.sqrt(mu0))
    total = q * q
    for j in range(len(diag) - 1):
        b_prev = off[j - 1] if j > 0 else 0.0
        q_next = ((nodes - diag[j]) * q - b_prev * q_prev) / off[j]
        q_prev, q = q, q_next
        total += q * q
    return 1.0 / total


def _laguerre_rule(gamma: float, n: int):
    # Recurrence coefficients of the weight r^gamma e^{-r} are classical.
    diag = 2.0 * np.arange(n, dtype=float) + gamma + 1.0
    k = np.arange(1.0, n)
    off = np.sqrt(k * (k + gamma))
    nodes = eigh_tridiagonal(diag, off, eigvals_only=True)
    mu0 = math.exp(math.lgamma(gamma + 1.0))
    if n == 1:
        return nodes, np.array([mu0])
    return nodes, _christoffel_weights(diag, off, mu0, nodes)


def _half_hermite_rule(gamma: float, n: int):
    """Rule for r^gamma e^{-r^2} on (0, inf) via moment determinants.

    No classical recurrence exists for this weight. The Chebyshev moment
    algorithm is run in mpmath because the Hankel determinants lose
    positivity in double precision already near n ~ 20. Moments must be
    formed entirely in mpf arithmetic; mixing in double-precision sums bakes
    inconsistent rounding into the modified moment table and the algorithm
    fails regardless of working precision.
    """
    dps = max(60, 40 + 6 * n)
    for attempt in range(3):
        try:
            with mpmath.workdps(dps << attempt):
                g = mpmath.mpf(gamma)
                m = [mpmath.gamma((g + k + 1) / 2) / 2 for k in range(2 * n)]
                sig_prev = [mpmath.mpf(0)] * (2 * n + 1)
                sig = list(m) + [mpmath.mpf(0)]
                alpha = [m[1] / m[0]]
                beta = [m[0]]
                for k in range(1, n):
                    nxt = [mpmath.mpf(0)] * (2 * n + 1)
                    for l in range(k, 2 * n - k):
                        t = sig[l + 1] - alpha[k - 1] * sig[l]
                        if k > 1:
                            t -= beta[k - 1] * sig_prev[l]
                        nxt[l] = t
                    alpha.append(nxt[k + 1] / nxt[k] - sig[k] / sig[k - 1])
                    beta.append(nxt[k] / sig[k - 1])
                    sig_prev, sig = sig, nxt
                diag = np.array([float(v) for v in alpha])
                off2 = np.array([float(v) for v in beta[1:]])
                mu0 = float(beta[0])
        except (ZeroDivisionError, ValueError):
            continue
        if np.all(off2 > 0.0):
            off = np.sqrt(off2)
            nodes = eigh_tridiagonal(diag, off, eigvals_only=True)
            if n == 1:
                return nodes, np.array([mu0])
            return nodes, _christoffel_weights(diag, off, mu0, nodes)
    raise ConvergenceError(
        f"half-range rule construction failed for gamma={gamma}, n={n}")


def build_quadrature(gamma: float, variant: str, npoints: int) -> QuadratureRule:
    """Build a Gauss rule for integral f(r) r^gamma w(r) dr on (0, inf).

    variant "exp_r" uses w = e^{-r} (classical recurrence), "exp_r2" uses
    w = e^{-r^2} (moment algorithm in extended precision). gamma > -1 is
    required for integrability at the origin.
    """
    if gamma <= -1.0:
        raise DomainError(f"weight exponent must exceed -1, got {gamma}")
    if npoints < 1:
        raise DomainError("npoints must be positive")
    n = int(npoints)
    if variant == "exp_r":
        nodes, weights = _laguerre_rule(gamma, n)
    elif variant == "exp_r2":
        nodes, weights = _half_hermite_rule(gamma, n)
    else:
        raise DomainError(f"unknown quadrature variant {variant!r}")
    if not (np.all(weights > 0.0) and np.all(nodes > 0.0)
            and np.all(np.diff(nodes) > 0.0)):
        raise ConvergenceError(
            f"quadrature construction produced an invalid rule "
            f"(gamma={gamma}, variant={variant}, n={n})")
    return QuadratureRule(nodes=nodes, weights=weights,
                          weight_exponent=float(gamma), variant=variant)
