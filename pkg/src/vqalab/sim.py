"""Dense Hermitian linear algebra and exact state-vector simulation."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .graphs import Graph

HERMITIAN_TOL = 1e-12
UNITARITY_TOL = 1e-10
NORM_TOL = 1e-10
IMAG_TOL = 1e-10


def hermitize(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Symmetrize (H + H^dag)/2, warning if the correction is significant."""
    a = np.asarray(a, dtype=complex)
    sym = (a + a.conj().T) / 2
    drift = np.abs(a - sym).max() if a.size else 0.0
    if drift > tol:
        warnings.warn(f"hermitize corrected entries by up to {drift:.3e}", stacklevel=2)
    return sym


def assert_hermitian(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("operator must be a square matrix")
    if np.abs(a - a.conj().T).max() > tol:
        raise ValueError("operator is not Hermitian")
    return a


def assert_state(psi, tol: float = NORM_TOL) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise ValueError("state must be a vector")
    if abs(np.linalg.norm(psi) - 1.0) > tol:
        raise ValueError("state is not normalized")
    return psi


def is_diagonal(a: np.ndarray) -> bool:
    return bool(np.abs(a - np.diag(np.diag(a))).max() == 0.0) if a.size else True


def herm_exp(h, theta: float) -> np.ndarray:
    """Unitary exp(-i h theta) of a Hermitian matrix via spectral decomposition."""
    h = assert_hermitian(h)
    if is_diagonal(h):
        return np.diag(np.exp(-1j * np.diag(h).real * theta))
    vals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(-1j * vals * theta)) @ vecs.conj().T


def apply_exponential(psi: np.ndarray, h: np.ndarray, theta: float) -> np.ndarray:
    """Apply exp(-i h theta) to a state, with a fast path for diagonal h."""
    if is_diagonal(h):
        return np.exp(-1j * np.diag(h).real * theta) * psi
    vals, vecs = np.linalg.eigh(h)
    return vecs @ (np.exp(-1j * vals * theta) * (vecs.conj().T @ psi))


@dataclass(frozen=True, eq=False)
class VqaInstance:
    """Initial state, ordered generator list, and observable on one space.

    ``closed_form`` maps a phase vector to the analytically known expectation
    value, where the construction provides one.
    """

    initial: np.ndarray
    generators: tuple
    observable: np.ndarray
    closed_form: Optional[Callable] = None
    family: str = ""
    graph: Optional[Graph] = None

    def __post_init__(self):
        psi = assert_state(self.initial)
        obs = assert_hermitian(self.observable)
        gens = tuple(assert_hermitian(h) for h in self.generators)
        if not gens:
            raise ValueError("generator list must be nonempty")
        dims = {psi.shape[0], obs.shape[0], *(h.shape[0] for h in gens)}
        if len(dims) != 1:
            raise ValueError("all dimensions must be equal")
        object.__setattr__(self, "initial", psi)
        object.__setattr__(self, "observable", obs)
        object.__setattr__(self, "generators", gens)

    @property
    def dim(self) -> int:
        return self.initial.shape[0]

    @property
    def layers(self) -> int:
        return len(self.generators)


def apply_circuit(inst: VqaInstance, phi) -> np.ndarray:
    """State U_L(phi_L) ... U_1(phi_1) |initial> with U_i = exp(-i H_i phi_i)."""
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (inst.layers,):
        raise ValueError(f"expected {inst.layers} angles, got {phi.shape}")
    psi = inst.initial
    for h, angle in zip(inst.generators, phi):
        psi = apply_exponential(psi, h, angle)
    assert abs(np.linalg.norm(psi) - 1.0) <= NORM_TOL
    return psi


def expectation(psi: np.ndarray, obs: np.ndarray) -> float:
    """Real expectation <psi|obs|psi>; asserts a negligible imaginary part."""
    psi = np.asarray(psi, dtype=complex)
    obs = np.asarray(obs, dtype=complex)
    if psi.shape[0] != obs.shape[0]:
        raise ValueError("state and observable dimensions do not match")
    val = np.vdot(psi, obs @ psi)
    if abs(val.imag) > IMAG_TOL:
        raise ValueError(f"imaginary residue {val.imag:.3e} signals a non-Hermitian observable")
    return float(val.real)


def simulate_expectation(inst: VqaInstance, phi) -> float:
    return expectation(apply_circuit(inst, phi), inst.observable)


def spectral_extremes(obs) -> tuple[float, float, float]:
    """(lambda_min, lambda_max, spectral width) of a Hermitian observable."""
    obs = assert_hermitian(obs)
    if is_diagonal(obs):
        diag = np.diag(obs).real
        lo, hi = float(diag.min()), float(diag.max())
    else:
        vals = np.linalg.eigvalsh(obs)
        lo, hi = float(vals[0]), float(vals[-1])
    return lo, hi, hi - lo
