"""The continuous MaxCut objective, its calculus, and discrete rounding.

The objective is the trigonometric relaxation
``mu(phi) = (1/4) sum_ij A_ij [cos(phi_i) cos(phi_j) - 1]``
whose minimum over angles equals minus the maximum cut.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .graphs import Graph, cut_value

DISCRETE_TOL = 1e-9


def _check_phases(g: Graph, phi) -> np.ndarray:
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (g.d,):
        raise ValueError(f"phase vector length {phi.shape} does not match d={g.d}")
    if not np.all(np.isfinite(phi)):
        raise ValueError("phase vector entries must be finite")
    return phi


def reduce_phases(phi) -> np.ndarray:
    """Canonical reduction of angles into [0, 2*pi)."""
    phi = np.asarray(phi, dtype=float)
    if not np.all(np.isfinite(phi)):
        raise ValueError("phase vector entries must be finite")
    return np.mod(phi, 2 * np.pi)


def mu(g: Graph, phi) -> float:
    phi = _check_phases(g, phi)
    c = np.cos(phi)
    a = g.adjacency
    return float((c @ a @ c - a.sum()) / 4)


def _sin_exact(phi: np.ndarray) -> np.ndarray:
    # np.sin(np.pi) is ~1.2e-16; snap exact multiples of pi so the gradient
    # vanishes identically on {0, pi}^d points
    s = np.sin(phi)
    s[np.mod(phi, np.pi) == 0.0] = 0.0
    return s


def mu_gradient(g: Graph, phi) -> np.ndarray:
    phi = _check_phases(g, phi)
    return -0.5 * _sin_exact(phi) * (g.adjacency @ np.cos(phi))


def mu_hessian(g: Graph, phi) -> np.ndarray:
    phi = _check_phases(g, phi)
    c, s = np.cos(phi), _sin_exact(phi)
    h = 0.5 * g.adjacency * np.outer(s, s)
    np.fill_diagonal(h, -0.5 * c * (g.adjacency @ c))
    return h


def round_to_discrete(g: Graph, phi) -> np.ndarray:
    """Coordinate-wise rounding onto {0, pi}^d that never increases mu.

    Coordinates are processed in index order; each is replaced by whichever
    of {0, pi} minimizes mu with the other current coordinates fixed.  Exact
    ties go to 0.
    """
    phi = _check_phases(g, phi).copy()
    c = np.cos(phi)
    for i in range(g.d):
        # mu depends on phi_i as cos(phi_i) * s_i / 2 + const
        s_i = g.adjacency[i] @ c
        phi[i] = np.pi if s_i > 0 else 0.0
        c[i] = -1.0 if s_i > 0 else 1.0
    return phi


def discrete_signs(phi, tol: float = DISCRETE_TOL) -> np.ndarray:
    """Map angles within tol of {0, pi} (mod 2*pi) to cosine signs +/-1."""
    red = reduce_phases(phi)
    signs = np.empty(red.shape, dtype=int)
    near_zero = (red <= tol) | (red >= 2 * np.pi - tol)
    near_pi = np.abs(red - np.pi) <= tol
    if not np.all(near_zero | near_pi):
        raise ValueError("phase vector is not discrete (entries must be 0 or pi)")
    signs[near_zero] = 1
    signs[near_pi] = -1
    return signs


def is_discrete_local_min(g: Graph, phi, tol: float = DISCRETE_TOL) -> bool:
    """True iff no single 0 <-> pi swap strictly decreases mu.

    Flipping coordinate i changes mu by -c_i * (A c)_i, so the point is a
    local minimum iff c_i * (A c)_i <= 0 for all i.
    """
    c = discrete_signs(phi, tol)
    return bool(np.all(c * (g.adjacency @ c) <= 0))


def phases_from_assignment(assignment) -> np.ndarray:
    """Bipartition signs +/-1 -> angles in {0, pi} (cos(phi_i) = v_i)."""
    v = np.asarray(assignment, dtype=int)
    return np.where(v == 1, 0.0, np.pi)


def assignment_from_phases(phi, tol: float = DISCRETE_TOL) -> np.ndarray:
    return discrete_signs(phi, tol)


def discrete_local_minima(g: Graph, limit: int = 16) -> list[np.ndarray]:
    """All phi in {0, pi}^d that are discrete local minima of mu (exhaustive)."""
    if g.d > limit:
        raise ValueError(f"d={g.d} exceeds the exhaustive limit {limit}")
    out = []
    for signs in product([1, -1], repeat=g.d):
        phi = phases_from_assignment(np.array(signs))
        if is_discrete_local_min(g, phi):
            out.append(phi)
    return out


def mu_discrete_minimum(g: Graph, limit: int = 16) -> float:
    """Exact min of mu over {0, pi}^d; equals -MaxCut by the rounding argument."""
    if g.d > limit:
        raise ValueError(f"d={g.d} exceeds the exhaustive limit {limit}")
    best = 0.0
    for signs in product([1, -1], repeat=g.d - 1):
        v = np.array(signs + (1,))
        best = min(best, -float(cut_value(g, v)))
    return best
