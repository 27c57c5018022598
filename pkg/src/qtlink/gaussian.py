"""Gaussian-state engine: means and covariances under symplectic maps and homodyne readout.

Works in the hbar = 2 convention (x = a + a^dag, p = -i(a - a^dag)), so the
vacuum covariance matrix is the identity.  Quadratures are ordered
(x1, p1, x2, p2, ...).  Every operation returns a new state; nothing is
mutated in place.

This module is the brute-force cross-check for the closed-form photocurrent
variances in :mod:`qtlink.sensing`: build the state by explicit matrix
algebra, read the homodyne variance off the covariance matrix, and compare.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GaussianState",
    "HomodynePattern",
    "LossPolicy",
    "independent_vacuum",
    "shared_vacuum",
    "vacuum",
    "squeeze_single",
    "beam_splitter",
    "pure_loss",
    "homodyne_variance",
    "symplectic_form",
    "min_physicality_eigenvalue",
]


@dataclass(frozen=True)
class GaussianState:
    """Mean vector and covariance matrix of n optical modes.

    Attributes:
        n_modes: number of modes.
        mean: length-2n vector of quadrature expectations (x1, p1, x2, p2, ...).
        cov: 2n x 2n real symmetric covariance matrix; identity for vacuum.
        shared_ancillas: map from loss-channel tag to the mode index of the
            vacuum ancilla that all losses with that tag read (see pure_loss).
    """

    n_modes: int
    mean: np.ndarray
    cov: np.ndarray
    shared_ancillas: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n_modes < 1:
            raise ValueError(f"n_modes must be >= 1, got {self.n_modes}")
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        d = 2 * self.n_modes
        if mean.shape != (d,):
            raise ValueError(f"mean must have shape ({d},), got {mean.shape}")
        if cov.shape != (d, d):
            raise ValueError(f"cov must have shape ({d}, {d}), got {cov.shape}")
        if not np.allclose(cov, cov.T, rtol=1e-12, atol=1e-12):
            raise ValueError("covariance matrix must be symmetric")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    def mode_block(self, mode: int) -> np.ndarray:
        """2x2 covariance block of a single mode."""
        i = 2 * self._check_mode(mode)
        return self.cov[i : i + 2, i : i + 2]

    def _check_mode(self, mode: int) -> int:
        if not 0 <= mode < self.n_modes:
            raise ValueError(f"mode {mode} out of range for {self.n_modes}-mode state")
        return mode


@dataclass(frozen=True)
class HomodynePattern:
    """Weighted multi-mode quadrature readout.

    ``coefficients[i]`` weights mode i's measured quadrature
    x_i cos(phase) + p_i sin(phase); phase = 0 measures X, pi/2 measures P.
    """

    coefficients: np.ndarray
    phase: float = 0.0

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coefficients, dtype=float))
        if coeffs.ndim != 1:
            raise ValueError("coefficients must be a 1-d vector")
        if not np.any(coeffs != 0.0):
            raise ValueError("homodyne pattern needs at least one nonzero coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    def quadrature_vector(self, n_modes: int) -> np.ndarray:
        """Embed the pattern as a length-2n vector in (x1, p1, ...) ordering."""
        if len(self.coefficients) > n_modes:
            raise ValueError(
                f"pattern addresses {len(self.coefficients)} modes, state has {n_modes}"
            )
        v = np.zeros(2 * n_modes)
        c, s = np.cos(self.phase), np.sin(self.phase)
        for i, w in enumerate(self.coefficients):
            v[2 * i] = w * c
            v[2 * i + 1] = w * s
        return v


@dataclass(frozen=True)
class LossPolicy:
    """Vacuum-port policy for pure_loss.

    ``independent``: every loss event couples to its own fresh vacuum mode
    (a genuine beam-splitter unitary).

    ``shared``: every loss event carrying the same tag reads one common
    vacuum mode, and reads it in its *original* vacuum state (the ancilla is
    never written back).  This reproduces closed forms in which distinct
    channels' vacuum contributions add coherently; it is not a unitary map
    and the resulting global state may violate the uncertainty relation.
    """

    kind: str
    tag: str = "common"

    def __post_init__(self):
        if self.kind not in ("independent", "shared"):
            raise ValueError(f"unknown loss policy kind {self.kind!r}")


def independent_vacuum() -> LossPolicy:
    return LossPolicy("independent")


def shared_vacuum(tag: str = "common") -> LossPolicy:
    return LossPolicy("shared", tag)


def symplectic_form(n_modes: int) -> np.ndarray:
    """Standard symplectic form Omega for (x1, p1, x2, p2, ...) ordering."""
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for i in range(n_modes):
        omega[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = j
    return omega


def min_physicality_eigenvalue(state: GaussianState) -> float:
    """Smallest eigenvalue of cov + i*Omega; >= 0 (to tolerance) for physical states."""
    omega = symplectic_form(state.n_modes)
    h = state.cov + 1j * omega
    return float(np.linalg.eigvalsh(h).min())


def vacuum(n_modes: int) -> GaussianState:
    """n-mode vacuum: zero mean, identity covariance."""
    if n_modes < 1:
        raise ValueError(f"n_modes must be >= 1, got {n_modes}")
    return GaussianState(n_modes, np.zeros(2 * n_modes), np.eye(2 * n_modes))


def _apply_linear(state: GaussianState, m: np.ndarray) -> GaussianState:
    return GaussianState(
        state.n_modes,
        m @ state.mean,
        m @ state.cov @ m.T,
        dict(state.shared_ancillas),
    )


def _rotation(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def squeeze_single(
    state: GaussianState, mode: int, r: float, angle: float = 0.0
) -> GaussianState:
    """Squeeze one mode by r >= 0 along the quadrature at ``angle``.

    angle = 0 squeezes x (block becomes diag(e^-2r, e^+2r)); angle = pi/2
    squeezes p.  Direction is carried entirely by the angle, so negative r
    is rejected.
    """
    state._check_mode(mode)
    if r < 0:
        raise ValueError(f"squeezing magnitude must be >= 0, got {r}")
    rot = _rotation(angle)
    local = rot @ np.diag([np.exp(-r), np.exp(r)]) @ rot.T
    m = np.eye(2 * state.n_modes)
    i = 2 * mode
    m[i : i + 2, i : i + 2] = local
    return _apply_linear(state, m)


def _bs_rows(n_modes: int, m1: int, m2: int, eta: float) -> np.ndarray:
    # Transmitted output: sqrt(eta)*m1 - sqrt(1-eta)*m2, identically on x and p.
    t, rfl = np.sqrt(eta), np.sqrt(1.0 - eta)
    m = np.eye(2 * n_modes)
    for off in (0, 1):
        a, b = 2 * m1 + off, 2 * m2 + off
        m[a, a] = t
        m[a, b] = -rfl
        m[b, a] = rfl
        m[b, b] = t
    return m


def beam_splitter(
    state: GaussianState, m1: int, m2: int, eta: float
) -> GaussianState:
    """Mix two modes on a beam splitter of transmissivity eta in [0, 1].

    Output mode m1 = sqrt(eta)*m1 - sqrt(1-eta)*m2, output mode m2 the
    orthogonal combination; eta = 1 is the identity, eta = 0 swaps the
    modes up to sign.
    """
    state._check_mode(m1)
    state._check_mode(m2)
    if m1 == m2:
        raise ValueError("beam splitter needs two distinct modes")
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmissivity must be in [0, 1], got {eta}")
    return _apply_linear(state, _bs_rows(state.n_modes, m1, m2, eta))


def _append_vacuum(state: GaussianState) -> GaussianState:
    n = state.n_modes + 1
    mean = np.concatenate([state.mean, np.zeros(2)])
    cov = np.eye(2 * n)
    cov[: 2 * state.n_modes, : 2 * state.n_modes] = state.cov
    return GaussianState(n, mean, cov, dict(state.shared_ancillas))


def pure_loss(
    state: GaussianState,
    mode: int,
    eta: float,
    policy: LossPolicy = LossPolicy("shared"),
) -> GaussianState:
    """Attenuate one mode to transmissivity eta against a vacuum port.

    The ancilla is appended to the state (never traced out) so that
    correlations introduced by shared ports stay visible downstream.  For an
    input uncorrelated with the port, the mode variance maps to
    eta*Var + (1 - eta).

    With the independent policy this is a plain two-mode beam splitter
    against a fresh vacuum.  With the shared policy, every loss carrying the
    same tag reads one tagged ancilla without writing it back, so all tagged
    channels see the identical, still-vacuum port.  A chain of true beam
    splitters through one ancilla would feed the second channel the
    *already-mixed* port and produce different cross terms; the read-only
    coupling is what the shared closed forms assume.

    Args:
        state: input state.
        mode: index of the lossy mode.
        eta: transmissivity in [0, 1].
        policy: vacuum-port policy; defaults to shared (tag "common").

    Returns:
        New state with one more mode the first time a given port is used.
    """
    state._check_mode(mode)
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmissivity must be in [0, 1], got {eta}")
    if eta == 1.0:
        return state

    if policy.kind == "independent":
        grown = _append_vacuum(state)
        return beam_splitter(grown, mode, grown.n_modes - 1, eta)

    ancilla = state.shared_ancillas.get(policy.tag)
    if ancilla is None:
        grown = _append_vacuum(state)
        ancilla = grown.n_modes - 1
        grown.shared_ancillas[policy.tag] = ancilla
    else:
        if not 0 <= ancilla < state.n_modes:
            raise ValueError(
                f"shared tag {policy.tag!r} points at mode {ancilla}, "
                f"outside this {state.n_modes}-mode state"
            )
        grown = state
    # Read-only coupling: the lossy mode picks up the port with beam-splitter
    # weights, the port row stays the identity.
    m = np.eye(2 * grown.n_modes)
    for off in (0, 1):
        a, b = 2 * mode + off, 2 * ancilla + off
        m[a, a] = np.sqrt(eta)
        m[a, b] = -np.sqrt(1.0 - eta)
    return _apply_linear(grown, m)


def homodyne_variance(state: GaussianState, pattern: HomodynePattern) -> float:
    """Variance of the weighted quadrature sum defined by ``pattern``."""
    v = pattern.quadrature_vector(state.n_modes)
    return float(v @ state.cov @ v)
