"""Brute-force validators for the closed-form measures.

Each oracle evaluates its objective directly from operator expectation
values and optimizes by deterministic grid search with local refinement, so
the closed forms in :mod:`fermicorr.measures` can be checked against an
independent code path. Refinement steps move in the tangent plane of the
current best direction, which keeps the search well-behaved at the
coordinate poles.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import IDENTITY_2, PAULI, partial_transpose, validate_state

_SIGMA = np.stack(PAULI)  # (3, 2, 2)

# 9-point meshes over a +-w window quarter the window each round
_REFINE_MESH = 9
_REFINE_SHRINK = 0.25


@dataclass(frozen=True)
class DirectionGrid:
    """Spherical search grid: polar x azimuth nodes plus refinement rounds."""

    polar_steps: int = 24
    azimuth_steps: int = 48
    refine_rounds: int = 6

    def __post_init__(self):
        if self.polar_steps < 24:
            raise ValueError(f"polar_steps must be >= 24, got {self.polar_steps}")
        if self.azimuth_steps < 48:
            raise ValueError(f"azimuth_steps must be >= 48, got {self.azimuth_steps}")
        if self.refine_rounds < 2:
            raise ValueError(f"refine_rounds must be >= 2, got {self.refine_rounds}")

    def directions(self) -> np.ndarray:
        """Coarse unit-vector grid; the exact poles are included."""
        theta = np.linspace(0.0, np.pi, self.polar_steps)
        phi = np.linspace(0.0, 2.0 * np.pi, self.azimuth_steps, endpoint=False)
        tt, pp = np.meshgrid(theta, phi, indexing="ij")
        st = np.sin(tt.ravel())
        return np.stack(
            [st * np.cos(pp.ravel()), st * np.sin(pp.ravel()), np.cos(tt.ravel())], axis=-1
        )

    def initial_window(self) -> float:
        """Tangent-plane half-width covering one coarse grid cell."""
        return np.pi / (self.polar_steps - 1) + 2.0 * np.pi / self.azimuth_steps


def _tangent_mesh(center: np.ndarray, half_width: float) -> np.ndarray:
    """Unit vectors fanned around ``center`` in its tangent plane."""
    seed = np.array([1.0, 0.0, 0.0]) if abs(center[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = seed - np.dot(seed, center) * center
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(center, e1)
    steps = np.linspace(-half_width, half_width, _REFINE_MESH)
    aa, bb = np.meshgrid(steps, steps, indexing="ij")
    dirs = center[None, :] + aa.ravel()[:, None] * e1[None, :] + bb.ravel()[:, None] * e2[None, :]
    return dirs / np.linalg.norm(dirs, axis=1, keepdims=True)


def _measurement_residual(rho, dirs):
    """2 ||rho - Pi_n(rho)||_2^2 for a batch of measurement axes on qubit A."""
    axis = np.einsum("mi,ijk->mjk", dirs, _SIGMA)
    measured = np.zeros((dirs.shape[0], 4, 4), dtype=complex)
    for sign in (1.0, -1.0):
        proj = 0.5 * (IDENTITY_2 + sign * axis)
        k4 = np.einsum("mab,cd->macbd", proj, IDENTITY_2).reshape(-1, 4, 4)
        measured += np.einsum("mij,jk,mkl->mil", k4, rho, k4)
    diff = rho[None, :, :] - measured
    return 2.0 * np.einsum("mij,mij->m", diff, diff.conj()).real


def discord_bruteforce(rho: np.ndarray, grid: DirectionGrid) -> float:
    """Geometric discord by direct minimization over projective measurements.

    Minimizes 2 ||rho - Pi_n(rho)||_2^2 over the Bloch axis n of a projective
    measurement on the first qubit, by coarse grid search plus tangent-plane
    refinement. Grid search can only overshoot a minimum, so the result
    brackets the closed form from above.
    """
    rho = validate_state(rho)
    dirs = grid.directions()
    vals = _measurement_residual(rho, dirs)
    i = int(np.argmin(vals))
    best, center = vals[i], dirs[i]
    w = grid.initial_window()
    for _ in range(grid.refine_rounds):
        dirs = _tangent_mesh(center, w)
        vals = _measurement_residual(rho, dirs)
        i = int(np.argmin(vals))
        if vals[i] < best:
            best, center = vals[i], dirs[i]
        w *= _REFINE_SHRINK
    return float(best)


def _pair_covariance(rho4, dirs_a, dirs_b):
    """cov(n, n') = <(s.n)(s.n')> - <s.n><s.n'> for direction batches."""
    sig_a = np.einsum("mi,ijk->mjk", dirs_a, _SIGMA)
    sig_b = np.einsum("mi,ijk->mjk", dirs_b, _SIGMA)
    r1 = np.einsum("ikjl,aji->akl", rho4, sig_a)
    joint = np.einsum("akl,blk->ab", r1, sig_b).real
    single_a = np.einsum("ikjk,aji->a", rho4, sig_a).real
    single_b = np.einsum("ikil,blk->b", rho4, sig_b).real
    return joint - np.outer(single_a, single_b)


def maxcorr_bruteforce(
    rho: np.ndarray, grid: DirectionGrid
) -> tuple[float, np.ndarray, np.ndarray]:
    """Maximum connected correlation by direct search over direction pairs.

    Returns (value, n, n') with n, n' the maximizing measurement axes of the
    first and second qubit.
    """
    rho = validate_state(rho)
    rho4 = rho.reshape(2, 2, 2, 2)
    dirs = grid.directions()
    cov = _pair_covariance(rho4, dirs, dirs)
    i, j = np.unravel_index(int(np.argmax(cov)), cov.shape)
    best, ca, cb = cov[i, j], dirs[i], dirs[j]
    w = grid.initial_window()
    for _ in range(grid.refine_rounds):
        mesh_a = _tangent_mesh(ca, w)
        mesh_b = _tangent_mesh(cb, w)
        cov = _pair_covariance(rho4, mesh_a, mesh_b)
        i, j = np.unravel_index(int(np.argmax(cov)), cov.shape)
        if cov[i, j] > best:
            best, ca, cb = cov[i, j], mesh_a[i], mesh_b[j]
        w *= _REFINE_SHRINK
    return float(best), ca, cb


def negativity_eig(rho: np.ndarray) -> float:
    """Negativity as twice the absolute sum of the negative eigenvalues of
    the partial transpose (eigendecomposition route)."""
    pt = partial_transpose(validate_state(rho), "A")
    ev = np.linalg.eigvalsh(pt)
    return float(2.0 * np.sum(np.abs(ev[ev < 0.0])))


def _chsh_value(corr, dirs_b, dirs_bp):
    """Best CHSH value over the first party's axes for batches of (b, b').

    For fixed b, b' the optimum over unit a, a' is |T b + T b'| + |T b - T b'|.
    """
    tb = dirs_b @ corr.T
    tbp = dirs_bp @ corr.T
    plus = np.linalg.norm(tb[:, None, :] + tbp[None, :, :], axis=-1)
    minus = np.linalg.norm(tb[:, None, :] - tbp[None, :, :], axis=-1)
    return plus + minus


def chsh_gridopt(rho: np.ndarray, grid: DirectionGrid) -> float:
    """CHSH parameter maximized over all four measurement directions.

    The second party's two axes are grid-searched and refined; for each such
    pair the first party's axes are optimized exactly. The correlation
    matrix is measured entry-wise from the state.
    """
    rho = validate_state(rho)
    rho4 = rho.reshape(2, 2, 2, 2)
    corr = np.array(
        [[np.einsum("ikjl,ji,lk->", rho4, sa, sb).real for sb in PAULI] for sa in PAULI]
    )
    dirs = grid.directions()
    vals = _chsh_value(corr, dirs, dirs)
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    best, cb, cbp = vals[i, j], dirs[i], dirs[j]
    w = grid.initial_window()
    for _ in range(grid.refine_rounds):
        mesh_b = _tangent_mesh(cb, w)
        mesh_bp = _tangent_mesh(cbp, w)
        vals = _chsh_value(corr, mesh_b, mesh_bp)
        i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
        if vals[i, j] > best:
            best, cb, cbp = vals[i, j], mesh_b[i], mesh_bp[j]
        w *= _REFINE_SHRINK
    return float(best)
