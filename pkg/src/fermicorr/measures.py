"""Correlation measures: geometric discord, negativity, connected correlation,
Bell parameters, and their closed forms for the perturbative X-state.

Generic measures take a 4x4 density matrix; the closed forms consume raw
(unnormalized) amplitudes, and the Bell parameters consume coefficients that
they normalize by c internally.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .amplitudes import PerturbativeAmplitudes, XStateCoefficients
from .states import decompose, partial_transpose, validate_state

BELL_CLASSICAL = 2.0
BELL_TSIRELSON = 2.0 * math.sqrt(2.0)

HIERARCHY_TOL = 1e-9


@dataclass(frozen=True)
class CorrelationReport:
    """All correlation quantifiers of one sweep point (X-state closed forms)."""

    sqrt_discord: float
    negativity: float
    connected_corr: float
    bell_chsh: float
    bell_opt: float
    hierarchy_ok: bool


def geometric_discord(rho: np.ndarray, party: str = "A") -> float:
    """Normalized geometric discord under projective measurement of one qubit.

    In Bloch form D = 2 Tr S - 2 lambda_max(S) with S = (x x^T + T T^T)/4
    for measurements on the first qubit (the default); the measured party is
    switchable because the quantity is asymmetric.
    """
    b = decompose(validate_state(rho))
    if party == "A":
        s = 0.25 * (np.outer(b.x, b.x) + b.t @ b.t.T)
    elif party == "B":
        s = 0.25 * (np.outer(b.y, b.y) + b.t.T @ b.t)
    else:
        raise ValueError(f"party must be 'A' or 'B', got {party!r}")
    ev = np.linalg.eigvalsh(s)
    return max(0.0, float(2.0 * np.sum(ev) - 2.0 * ev[-1]))


def negativity(rho: np.ndarray) -> float:
    """Trace-norm negativity ||rho^T_A||_1 - 1; 0 for separable states, 1 for
    maximally entangled ones. Computed from singular values."""
    pt = partial_transpose(validate_state(rho), "A")
    sv = np.linalg.svd(pt, compute_uv=False)
    return max(0.0, float(np.sum(sv) - 1.0))


def connected_correlation(rho: np.ndarray) -> float:
    """Maximum covariance of local spin projections: the largest singular
    value of W = T - x y^T."""
    b = decompose(validate_state(rho))
    w = b.t - np.outer(b.x, b.y)
    return float(np.linalg.svd(w, compute_uv=False)[0])


def sqrt_discord_xstate(amps: PerturbativeAmplitudes) -> float:
    """Second-order closed form of the square-root geometric discord:
    sqrt([Re pair]^2 + |exchange|^2)."""
    return math.hypot(amps.pair_coherence.real, abs(amps.exchange))


def negativity_xstate(amps: PerturbativeAmplitudes) -> float:
    """Second-order closed form of the negativity:
    max{0, sqrt((u2 - v2)^2 + 4|exchange|^2) - u2 - v2}."""
    root = math.hypot(amps.u2 - amps.v2, 2.0 * abs(amps.exchange))
    return max(0.0, root - amps.u2 - amps.v2)


def entanglement_onset(amps: PerturbativeAmplitudes) -> bool:
    """True iff the exchange term dominates the emission weights,
    |exchange|^2 > u2*v2, which is exactly where the negativity closed form
    leaves zero."""
    x2 = abs(amps.exchange) ** 2
    prod = amps.u2 * amps.v2
    if prod == 0.0:
        return x2 > 0.0
    return x2 / prod > 1.0


def connected_correlation_xstate(amps: PerturbativeAmplitudes) -> float:
    """Second-order closed form of the maximum connected correlation:
    max{u2 + v2 + 2 re_a, 2(|exchange| + |pair|)}. The first branch is an
    O(K^2) unitarity residue; the second carries the signal."""
    return max(
        amps.u2 + amps.v2 + 2.0 * amps.re_a,
        2.0 * (abs(amps.exchange) + abs(amps.pair_coherence)),
    )


def _normalized(coeffs: XStateCoefficients):
    c = coeffs.c
    return (
        coeffs.rho11 / c, coeffs.rho22 / c, coeffs.rho33 / c, coeffs.rho44 / c,
        coeffs.rho14 / c, coeffs.rho23 / c,
    )


def bell_chsh(coeffs: XStateCoefficients) -> float:
    """CHSH parameter at fixed measurement settings:
    -sqrt(2) (rho11 + rho44 - rho22 - rho33 + 2 Re rho23 + 2 Re rho14),
    on c-normalized coefficients."""
    r11, r22, r33, r44, r14, r23 = _normalized(coeffs)
    return float(-math.sqrt(2.0) * (r11 + r44 - r22 - r33 + 2.0 * r23.real + 2.0 * r14.real))


def bell_opt(coeffs: XStateCoefficients) -> float:
    """Setting-optimized Bell parameter for X-patterned states:
    2 sqrt(u1 + max(u2, u3)) with u1 = 4(|rho14| + |rho23|)^2,
    u2 = (rho11 + rho44 - rho22 - rho33)^2, u3 = 4(|rho14| - |rho23|)^2."""
    r11, r22, r33, r44, r14, r23 = _normalized(coeffs)
    u1 = 4.0 * (abs(r14) + abs(r23)) ** 2
    u2 = (r11 + r44 - r22 - r33) ** 2
    u3 = 4.0 * (abs(r14) - abs(r23)) ** 2
    return float(2.0 * math.sqrt(u1 + max(u2, u3)))


def report(
    rho: np.ndarray, coeffs: XStateCoefficients, amps: PerturbativeAmplitudes
) -> CorrelationReport:
    """Aggregate all quantifiers of one sweep point.

    The density matrix is validated against the state invariants; the
    correlation values come from the X-state closed forms.
    """
    validate_state(rho)
    sd = sqrt_discord_xstate(amps)
    n = negativity_xstate(amps)
    c = connected_correlation_xstate(amps)
    ok = (c >= sd - HIERARCHY_TOL) and (sd >= n - HIERARCHY_TOL)
    return CorrelationReport(
        sqrt_discord=sd,
        negativity=n,
        connected_corr=c,
        bell_chsh=bell_chsh(coeffs),
        bell_opt=bell_opt(coeffs),
        hierarchy_ok=ok,
    )
