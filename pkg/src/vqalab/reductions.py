"""Instance constructors for every hardness-reduction family.

Each constructor pairs the built operators with the closed-form expectation
they are supposed to reproduce, so dense simulation can be cross-checked
against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .graphs import Graph
from .landscape import mu, reduce_phases
from .sim import VqaInstance, assert_hermitian, assert_state, expectation

ISING_MAX_D = 12

_SY = np.array([[0, -1j], [1j, 0]])
_I2 = np.eye(2)

# Two-level generators of the multilayer QAOA transfer blocks, with
# eigenvalues {0,1}, {-1,1}, {-2,0} and {0,2} respectively.
_H0 = 0.5 * np.array([[1, -1j], [1j, 1]])
_H1 = np.array([[0, -1j], [1j, 0]])
_H2 = np.array([[-1, -1], [-1, -1]], dtype=complex)
_H3 = np.array([[1, 1], [1, 1]], dtype=complex)


# ---------------------------------------------------------------------------
# Oracular family (full qubit space, sigma_y rotations)

def _site_operator(op: np.ndarray, site: int, d: int) -> np.ndarray:
    """Dense 2^d matrix acting with ``op`` on one qubit (big-endian site order)."""
    out = np.array([[1.0 + 0j]])
    for k in range(d):
        out = np.kron(out, op if k == site else _I2)
    return out


def ising_observable(g: Graph) -> np.ndarray:
    """Diagonal Ising encoding of the cut: O = (1/4) sum A_ij (Z_i Z_j - 1).

    Diagonal entry for a basis state equals minus the number of edges it cuts.
    """
    d = g.d
    if d > ISING_MAX_D:
        raise ValueError(f"d={d} too large for a dense 2^d representation")
    codes = np.arange(1 << d)
    bits = (codes[:, None] >> np.arange(d - 1, -1, -1)) & 1
    s = 1 - 2 * bits
    diag = ((s @ g.adjacency) * s).sum(axis=1) - g.adjacency.sum()
    return np.diag(diag / 4).astype(complex)


def oracular_vqa_instance(g: Graph) -> VqaInstance:
    """Full-space instance with generators sigma_y^(i)/2 and the Ising observable."""
    d = g.d
    psi0 = np.zeros(1 << d, dtype=complex)
    psi0[0] = 1.0
    gens = tuple(_site_operator(_SY / 2, i, d) for i in range(d))
    return VqaInstance(
        initial=psi0,
        generators=gens,
        observable=ising_observable(g),
        closed_form=lambda phi: mu(g, phi),
        family="oracular",
        graph=g,
    )


def oracular_vqa_expectation(g: Graph, phi) -> float:
    """Closed form of the sigma_y rotation circuit: exactly mu(g, phi)."""
    return mu(g, phi)


def boosted_expectation(g: Graph, k: int, phi) -> float:
    """Closed form -|mu|^k of the k-fold tensor-power observable."""
    if k < 1:
        raise ValueError("boosting power k must be >= 1")
    return -abs(mu(g, phi)) ** k


def boosted_vqa_instance(g: Graph, k: int) -> VqaInstance:
    """Tensor-power instance on k*d qubits with observable (-1)^(k-1) O^(x k).

    The k copies share the angle vector: generator i sums sigma_y^(i)/2 over
    all copies, so U(phi)^(x k) = exp(-i phi_i H_i).
    """
    if k < 1:
        raise ValueError("boosting power k must be >= 1")
    d = g.d
    n = k * d
    if n > ISING_MAX_D:
        raise ValueError(f"k*d={n} too large for a dense representation")
    o_single = ising_observable(g)
    obs = np.array([[1.0 + 0j]])
    for _ in range(k):
        obs = np.kron(obs, o_single)
    obs = (-1) ** (k - 1) * obs
    psi0 = np.zeros(1 << n, dtype=complex)
    psi0[0] = 1.0
    gens = tuple(
        sum(_site_operator(_SY / 2, c * d + i, n) for c in range(k))
        for i in range(d)
    )
    return VqaInstance(
        initial=psi0,
        generators=gens,
        observable=obs,
        closed_form=lambda phi: boosted_expectation(g, k, phi),
        family="boosted",
        graph=g,
    )


# ---------------------------------------------------------------------------
# Log-dimension family (2d-dimensional space)

def logdim_observable(g: Graph) -> np.ndarray:
    """Observable on C^(2d): off-diagonal (d/8) A x [[1,1],[1,1]], diagonal
    fixed to minus the column sums so all row sums vanish."""
    d = g.d
    o_prime = (d / 8) * np.kron(g.adjacency, np.ones((2, 2)))
    obs = o_prime.copy()
    np.fill_diagonal(obs, -o_prime.sum(axis=0))
    return obs.astype(complex)


def logdim_generators(d: int) -> tuple:
    """Diagonal generators |2i-1><2i-1| - |2i><2i| (1-indexed pairs)."""
    gens = []
    for i in range(d):
        h = np.zeros((2 * d, 2 * d), dtype=complex)
        h[2 * i, 2 * i] = 1.0
        h[2 * i + 1, 2 * i + 1] = -1.0
        gens.append(h)
    return tuple(gens)


def logdim_vqa_instance(g: Graph) -> VqaInstance:
    d = g.d
    psi0 = np.full(2 * d, 1 / math.sqrt(2 * d), dtype=complex)
    return VqaInstance(
        initial=psi0,
        generators=logdim_generators(d),
        observable=logdim_observable(g),
        closed_form=lambda phi: mu(g, phi),
        family="logdim",
        graph=g,
    )


def verify_certificate(inst: VqaInstance, phi, a: float, tol: float = 1e-9) -> bool:
    """Polynomial-time check of the decision version: <O>(phi) <= a."""
    from .sim import apply_circuit

    return expectation(apply_circuit(inst, phi), inst.observable) <= a + tol


# ---------------------------------------------------------------------------
# Ergodic spectra and the single-layer family

@dataclass(frozen=True, eq=False)
class ErgodicSpectrum:
    """Energies E_i = 2*pi/m^i forming a (4*pi/m)-approximate ergodic spectrum."""

    m: int
    energies: np.ndarray
    epsilon: float

    @property
    def n(self) -> int:
        return self.energies.shape[0]


def ergodic_energies(n: int, m: int) -> ErgodicSpectrum:
    if m < 2:
        raise ValueError("base m must be >= 2")
    if n < 1:
        raise ValueError("need at least one energy")
    energies = 2 * np.pi / (float(m) ** np.arange(1, n + 1))
    energies.setflags(write=False)
    return ErgodicSpectrum(m=m, energies=energies, epsilon=4 * np.pi / m)


def modnorm(x: float) -> float:
    """Distance to the nearest multiple of 2*pi, in [0, pi]."""
    y = math.fmod(x, 2 * math.pi)
    if y < 0:
        y += 2 * math.pi
    return min(y, 2 * math.pi - y)


def ergodic_time(phi, spec: ErgodicSpectrum) -> int:
    """Constructive time t with ||phi_i - E_i t||_mod <= 4*pi/m for all i.

    Uses the digit construction s_i = floor(phi_i m / 2 pi),
    t = sum_j s_j m^(j-1); returned exactly as an integer.
    """
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (spec.n,):
        raise ValueError("phase vector length does not match spectrum size")
    if np.any(phi < 0) or np.any(phi >= 2 * np.pi):
        raise ValueError("phases must lie in [0, 2*pi)")
    m = spec.m
    digits = np.floor(phi * m / (2 * np.pi)).astype(int)
    digits = np.clip(digits, 0, m - 1)
    return int(sum(int(s) * m**j for j, s in enumerate(digits)))


def ergodic_phase_errors(phi, spec: ErgodicSpectrum, t: int) -> np.ndarray:
    """||phi_i - E_i t||_mod per coordinate, computed with exact modular reduction."""
    phi = np.asarray(phi, dtype=float)
    m = spec.m
    errs = np.empty(spec.n)
    for i in range(spec.n):
        period = m ** (i + 1)
        # E_i t mod 2*pi = 2*pi * (t mod m^(i+1)) / m^(i+1), exactly
        angle = 2 * math.pi * (t % period) / period
        errs[i] = modnorm(float(phi[i]) - angle)
    return errs


def single_layer_instance(g: Graph, m: int) -> VqaInstance:
    """L=1 instance: the log-dimension observable with one generator carrying
    the ergodic spectrum, so a single time parameter scans all phases."""
    d = g.d
    spec = ergodic_energies(d, m)
    h = np.zeros((2 * d, 2 * d), dtype=complex)
    for i in range(d):
        h[2 * i, 2 * i] = spec.energies[i]
        h[2 * i + 1, 2 * i + 1] = -spec.energies[i]
    psi0 = np.full(2 * d, 1 / math.sqrt(2 * d), dtype=complex)
    energies = spec.energies

    def closed_form(phi):
        t = float(np.atleast_1d(np.asarray(phi, dtype=float))[0])
        return mu(g, energies * t)

    return VqaInstance(
        initial=psi0,
        generators=(h,),
        observable=logdim_observable(g),
        closed_form=closed_form,
        family="single-layer",
        graph=g,
    )


# ---------------------------------------------------------------------------
# QAOA instances

@dataclass(frozen=True, eq=False)
class QaoaInstance:
    """Mixer/cost pair with the initial state fixed to the mixer ground state."""

    hb: np.ndarray
    hc: np.ndarray
    layers: int
    initial: np.ndarray
    closed_form: Optional[Callable] = None
    family: str = ""
    graph: Optional[Graph] = None

    def __post_init__(self):
        hb = assert_hermitian(self.hb)
        hc = assert_hermitian(self.hc)
        psi = assert_state(self.initial)
        if not (hb.shape[0] == hc.shape[0] == psi.shape[0]):
            raise ValueError("all dimensions must be equal")
        if self.layers < 1:
            raise ValueError("need at least one layer")
        lam_min = float(np.linalg.eigvalsh(hb)[0])
        residual = np.linalg.norm(hb @ psi - lam_min * psi)
        if residual > 1e-9:
            raise ValueError(
                f"initial state is not the mixer ground state (residual {residual:.3e})"
            )
        object.__setattr__(self, "hb", hb)
        object.__setattr__(self, "hc", hc)
        object.__setattr__(self, "initial", psi)

    @property
    def dim(self) -> int:
        return self.initial.shape[0]


def qaoa_apply(inst: QaoaInstance, beta, gamma) -> tuple[np.ndarray, float]:
    """Alternating evolution U_b(beta_L) U_c(gamma_L) ... U_b(beta_1) U_c(gamma_1)
    applied to the initial state; expectation taken with the cost Hamiltonian."""
    beta = np.asarray(beta, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    if beta.shape != (inst.layers,) or gamma.shape != (inst.layers,):
        raise ValueError(f"expected {inst.layers} betas and gammas")
    vals_b, vecs_b = np.linalg.eigh(inst.hb)
    vals_c, vecs_c = np.linalg.eigh(inst.hc)
    psi = inst.initial
    for b, c in zip(beta, gamma):
        psi = vecs_c @ (np.exp(-1j * vals_c * c) * (vecs_c.conj().T @ psi))
        psi = vecs_b @ (np.exp(-1j * vals_b * b) * (vecs_b.conj().T @ psi))
    return psi, expectation(psi, inst.hc)


def qaoa_single_layer_instance(g: Graph, tau: float, m: int) -> QaoaInstance:
    """Single-layer QAOA on C^(2d+1) hiding the ergodic-spectrum landscape.

    The mixer is diagonal with pairs (E_i, -E_i) and a -1 ground level; the
    cost couples that ground level to the uniform state with strength tau.
    """
    if tau <= 0:
        raise ValueError("coupling tau must be positive")
    d = g.d
    spec = ergodic_energies(d, m)
    if np.any(np.abs(spec.energies) >= 1):
        raise ValueError(f"m={m} too small: need |E_i| < 1 (any m >= 7 works)")
    dim = 2 * d + 1
    hb = np.zeros(dim)
    hb[0 : 2 * d : 2] = spec.energies
    hb[1 : 2 * d : 2] = -spec.energies
    hb[2 * d] = -1.0
    hb = np.diag(hb).astype(complex)
    hc = np.zeros((dim, dim), dtype=complex)
    hc[: 2 * d, : 2 * d] = logdim_observable(g)
    plus = np.full(2 * d, 1 / math.sqrt(2 * d))
    hc[: 2 * d, 2 * d] = tau * plus
    hc[2 * d, : 2 * d] = tau * plus
    psi0 = np.zeros(dim, dtype=complex)
    psi0[2 * d] = 1.0
    energies = spec.energies

    def closed_form(beta: float, gamma: float) -> float:
        f = mu(g, energies * beta)
        gfun = -math.sin(beta) / d * float(np.cos(energies * beta).sum())
        return (
            math.sin(tau * gamma) ** 2 * f
            + 2 * tau * math.cos(tau * gamma) * math.sin(tau * gamma) * gfun
        )

    return QaoaInstance(
        hb=hb,
        hc=hc,
        layers=1,
        initial=psi0,
        closed_form=closed_form,
        family="qaoa1",
        graph=g,
    )


# ---------------------------------------------------------------------------
# Multilayer QAOA (ladder construction on (2d+1) * 4d^2 dimensions)

def _transfer_block(d: int, kappa: Optional[int]) -> np.ndarray:
    """Transfer Hamiltonian on two copies of K = C^d x C^d x C^2 x C^2.

    ``kappa`` is the 1-based layer index selecting the phase-imprinting cases;
    ``None`` builds the uniform H0-type block used by the cost Hamiltonian.
    Overlapping case clauses are resolved first-match, top to bottom.
    """
    dim_k = 4 * d * d
    block = np.zeros((2 * dim_k, 2 * dim_k), dtype=complex)
    for i in range(d):
        for j in range(d):
            for a in range(2):
                for b in range(2):
                    idx = ((i * d + j) * 2 + a) * 2 + b
                    if kappa is None:
                        two = _H0
                    elif i == j or a == 0:
                        two = _H1
                    elif i == kappa - 1 or (j == kappa - 1 and b == 0):
                        two = _H2
                    elif j == kappa - 1 and b == 1:
                        two = _H3
                    else:
                        two = _H1
                    for x in range(2):
                        for y in range(2):
                            block[x * dim_k + idx, y * dim_k + idx] = two[x, y]
    return block


def _gs_vector(g: Graph) -> np.ndarray:
    """Edge-superposition ground state of the mixer, in K."""
    d = g.d
    dim_k = 4 * d * d
    psi = np.zeros(dim_k)
    for i in range(d):
        for j in range(d):
            if g.adjacency[i, j]:
                for a in range(2):
                    for b in range(2):
                        psi[((i * d + j) * 2 + a) * 2 + b] = 1.0
    return psi / (2 * math.sqrt(g.adjacency.sum()))


def _penalty_block(d: int) -> np.ndarray:
    """H_p on K: (1/2) sum over a != a~ and all b, b~ per vertex pair."""
    dim_k = 4 * d * d
    hp = np.zeros((dim_k, dim_k))
    for i in range(d):
        for j in range(d):
            base = (i * d + j) * 4
            for a in range(2):
                for b in range(2):
                    for a2 in range(2):
                        for b2 in range(2):
                            if a != a2:
                                hp[base + a * 2 + b, base + a2 * 2 + b2] = 0.5
    return hp.astype(complex)


def qaoa_multilayer_instance(g: Graph) -> QaoaInstance:
    """Bounded-norm multilayer QAOA whose optimum encodes the maximum cut.

    The Hilbert space is a ladder of 2d+1 copies of K; the cost Hamiltonian
    moves amplitude up on odd rungs, the mixer on even rungs while imprinting
    cut-dependent phases, and a penalty block on the last rung reads out
    1 - 2*MaxCut/|E| at the optimal parameters.
    """
    d = g.d
    dim_k = 4 * d * d
    dim = (2 * d + 1) * dim_k
    gs = _gs_vector(g)

    hb = np.zeros((dim, dim), dtype=complex)
    hb[:dim_k, :dim_k] = -3 * np.outer(gs, gs)
    for kappa in range(1, d + 1):
        off = (2 * kappa - 1) * dim_k
        hb[off : off + 2 * dim_k, off : off + 2 * dim_k] = _transfer_block(d, kappa)

    hc = np.zeros((dim, dim), dtype=complex)
    transfer = _transfer_block(d, None)
    for pair in range(d):
        off = 2 * pair * dim_k
        hc[off : off + 2 * dim_k, off : off + 2 * dim_k] = transfer
    hc[2 * d * dim_k :, 2 * d * dim_k :] = _penalty_block(d)

    psi0 = np.zeros(dim, dtype=complex)
    psi0[:dim_k] = gs
    return QaoaInstance(
        hb=hb,
        hc=hc,
        layers=d,
        initial=psi0,
        closed_form=None,
        family="qaoa-multi",
        graph=g,
    )


def multilayer_optimal_value(g: Graph, maxcut: int) -> float:
    """Closed-form optimum 1 - 2*MaxCut/|E| of the multilayer cost expectation."""
    return 1.0 - 2.0 * maxcut / g.edge_count


def multilayer_encoding(g: Graph, assignment) -> tuple[np.ndarray, np.ndarray]:
    """Parameters (beta, gamma) encoding a bipartition: gamma = pi, and
    beta_i in {pi/2, 3pi/2} with sin(beta_i) matching the vertex sign."""
    v = np.asarray(assignment, dtype=int)
    if v.shape != (g.d,):
        raise ValueError("assignment length does not match d")
    beta = np.where(v == 1, np.pi / 2, 3 * np.pi / 2)
    gamma = np.full(g.d, np.pi)
    return beta, gamma


def multilayer_lower_bound(g: Graph, beta, gamma) -> float:
    """Analytic lower bound g(beta,gamma) * f(beta) / sum(A) on the expectation."""
    beta = np.asarray(beta, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    f = 4 * mu(g, reduce_phases(beta - np.pi / 2)) + 2 * g.edge_count
    gf = float(np.prod(np.sin(beta) ** 2 * np.sin(gamma / 2) ** 2))
    return gf * f / g.adjacency.sum()
