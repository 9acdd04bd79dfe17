"""Joint system-environment evolution, initial correlations, and the
controlled-NOT scenario with its analytic closed forms."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .kraus import KrausSet, kraus_set, _sqrt_clamped
from .linalg import (
    EPS,
    dag,
    expm_hermitian_generator,
    identity,
    kron,
    norm_max,
    partial_trace,
    pauli_x,
    pauli_z,
    unitarity_residual,
)
from .states import DensityMatrix


@dataclass(frozen=True, eq=False)
class CompositeState:
    """Joint system (x) environment state with dimension bookkeeping.

    Basis ordering is system-major: row index is i_sys * d_e + i_env.
    """

    mat: DensityMatrix
    d_i: int
    d_e: int

    def __post_init__(self):
        if self.mat.dim != self.d_i * self.d_e:
            raise ValueError(
                f"joint dim {self.mat.dim} does not equal d_i * d_e = {self.d_i * self.d_e}"
            )

    def reduced_system(self) -> DensityMatrix:
        return DensityMatrix(partial_trace(self.mat.mat, (self.d_i, self.d_e), keep=0))

    def reduced_environment(self) -> DensityMatrix:
        return DensityMatrix(partial_trace(self.mat.mat, (self.d_i, self.d_e), keep=1))


def evolve_joint(h: np.ndarray, s: CompositeState, t: float) -> CompositeState:
    """Unitary evolution of the joint state: U(t) rho U(t)^dagger, U = exp(-iht)."""
    h = np.asarray(h, dtype=complex)
    if h.shape != (s.mat.dim, s.mat.dim):
        raise ValueError(f"Hamiltonian shape {h.shape} does not match joint dim {s.mat.dim}")
    u = expm_hermitian_generator(h, t)
    evolved = u @ s.mat.mat @ dag(u)
    return CompositeState(mat=DensityMatrix(evolved, tol=100 * EPS), d_i=s.d_i, d_e=s.d_e)


def reduced_state(s: CompositeState) -> DensityMatrix:
    """Reduced system state, tr_e of the joint state."""
    return s.reduced_system()


def correlation_operator(s: CompositeState) -> np.ndarray:
    """rho_ie - rho_i (x) rho_e: the deviation of the joint state from product form.

    Traceless and Hermitian; both partial traces vanish.
    """
    rho_i = s.reduced_system().mat
    rho_e = s.reduced_environment().mat
    return s.mat.mat - kron(rho_i, rho_e)


def delta_rho(h: np.ndarray, s: CompositeState, t: float) -> np.ndarray:
    """Inhomogeneous term: tr_e{U(t) rho_cor U(t)^dagger}.

    The obstruction to the textbook factorable-case Kraus form; traceless
    and Hermitian for every input.
    """
    u = expm_hermitian_generator(np.asarray(h, dtype=complex), t)
    cor = correlation_operator(s)
    return partial_trace(u @ cor @ dag(u), (s.d_i, s.d_e), keep=0)


def cnot_hamiltonian() -> np.ndarray:
    """Two-qubit generator whose exponential is the CNOT-type evolution.

    H = sigma_x (x) (I - sigma_z)/2 + I (x) (I + sigma_z)/2, system-major
    basis |00>, |01>, |10>, |11>.
    """
    return kron(pauli_x, (identity(2) - pauli_z) / 2) + kron(identity(2), (identity(2) + pauli_z) / 2)


def cnot_unitary(t: float) -> np.ndarray:
    """Closed form of exp(-i H t) for the CNOT Hamiltonian."""
    c, s, p = np.cos(t), np.sin(t), np.exp(-1j * t)
    return np.array(
        [
            [p, 0, 0, 0],
            [0, c, 0, -1j * s],
            [0, 0, p, 0],
            [0, -1j * s, 0, c],
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class CnotScenario:
    """Correlated two-qubit scenario: joint state diag((1-r0)/2, 0, 0, (1+r0)/2).

    r0 should be strictly inside (0, 1); at the endpoints the joint state is
    factorable and the scenario degenerates, so we warn rather than reject.
    """

    r0: float

    def __post_init__(self):
        if self.r0 < -EPS or self.r0 > 1 + EPS:
            raise ValueError(f"r0 = {self.r0} outside [0, 1]")
        if self.r0 <= EPS or self.r0 >= 1 - EPS:
            warnings.warn(
                f"r0 = {self.r0} is at an endpoint: the joint state is factorable "
                "and the correlated-dynamics features are trivial",
                stacklevel=2,
            )

    def initial_joint(self) -> CompositeState:
        mat = np.diag([(1 - self.r0) / 2, 0.0, 0.0, (1 + self.r0) / 2]).astype(complex)
        return CompositeState(mat=DensityMatrix(mat), d_i=2, d_e=2)

    def initial_reduced(self) -> DensityMatrix:
        return DensityMatrix(0.5 * (identity(2) - self.r0 * pauli_z))

    def r_t(self, t: float) -> float:
        return float(np.sqrt(np.sin(t) ** 2 + self.r0**2 * np.cos(t) ** 2))


def cnot_analytic_rho(sc: CnotScenario, t: float) -> DensityMatrix:
    """Closed form of the reduced system state at time t."""
    st2, ct2 = np.sin(t) ** 2, np.cos(t) ** 2
    off = -1j * (1 + sc.r0) * np.sin(t) * np.cos(t)
    mat = 0.5 * np.array(
        [
            [1 + st2 - sc.r0 * ct2, off],
            [-off, (1 + sc.r0) * ct2],
        ],
        dtype=complex,
    )
    return DensityMatrix(mat, tol=100 * EPS)


def cnot_analytic_delta_rho(sc: CnotScenario, t: float) -> np.ndarray:
    """Closed form of the inhomogeneous term for the CNOT scenario."""
    pre = 0.25 * (1 - sc.r0**2)
    return pre * np.array(
        [
            [2 * np.sin(t) ** 2, -1j * np.sin(2 * t)],
            [1j * np.sin(2 * t), -2 * np.sin(t) ** 2],
        ],
        dtype=complex,
    )


def cnot_analytic_kraus(sc: CnotScenario, t: float) -> KrausSet:
    """Closed-form two-operator Kraus set for the CNOT scenario.

    Reconstructs the analytic reduced state from the initial reduced state
    even though the inhomogeneous term is nonzero.
    """
    r0 = sc.r0
    rt = sc.r_t(t)
    if rt <= EPS:
        raise ValueError(f"r_t = {rt} too small at t = {t}: Kraus pair undefined")
    st2 = np.sin(t) ** 2
    ct2 = np.cos(t) ** 2
    plus = rt + st2 - r0 * ct2
    minus = rt - st2 + r0 * ct2
    norm = 1.0 / np.sqrt(2 * rt * (1 + r0))
    # The off-diagonal Bloch phase of the reduced state is pi/2 while
    # sin(t)cos(t) >= 0 and 3*pi/2 otherwise; the imaginary entries carry
    # that branch sign, without which reconstruction fails for cos(t) < 0.
    i_br = 1j if np.sin(t) * np.cos(t) >= 0 else -1j
    m0 = norm * np.array(
        [
            [-_sqrt_clamped((1 + r0) * plus), i_br * _sqrt_clamped((1 - rt) * minus)],
            [-i_br * _sqrt_clamped((1 + r0) * minus), _sqrt_clamped((1 - rt) * plus)],
        ],
        dtype=complex,
    )
    m1 = norm * _sqrt_clamped(rt + r0) * np.array(
        [
            [0, _sqrt_clamped(plus)],
            [0, i_br * _sqrt_clamped(minus)],
        ],
        dtype=complex,
    )
    return kraus_set([m0, m1])


def factor_local_unitary(
    u: np.ndarray, dims: tuple[int, int], tol: float = EPS
) -> tuple[np.ndarray, np.ndarray] | None:
    """Factor a joint unitary as U_i (x) U_e if possible, else None.

    Uses the nearest-Kronecker-product rearrangement: the reshuffled matrix
    is rank one exactly when the unitary is a tensor product.  The second
    singular value is tested against a fixed 1e-8 gap threshold, then the
    reassembled product is checked against ``tol``.
    """
    d_i, d_e = dims
    u = np.asarray(u, dtype=complex)
    if u.shape != (d_i * d_e, d_i * d_e):
        raise ValueError(f"unitary shape {u.shape} does not match dims {dims}")
    res = unitarity_residual(u)
    if res > 10 * max(tol, EPS):
        raise ValueError(f"input is not unitary: residual {res:.3e}")
    # Van Loan rearrangement: row block index pairs with column block index.
    r = u.reshape(d_i, d_e, d_i, d_e).transpose(0, 2, 1, 3).reshape(d_i * d_i, d_e * d_e)
    left, sing, right = np.linalg.svd(r)
    if len(sing) > 1 and sing[1] > 1e-8:
        return None
    # The rank-one factors are the unitaries up to scale; take polar parts.
    u_i = _polar_unitary(left[:, 0].reshape(d_i, d_i))
    u_e = _polar_unitary(right[0, :].reshape(d_e, d_e))
    # Absorb the remaining global phase into the system factor.
    phase = np.trace(dag(kron(u_i, u_e)) @ u) / (d_i * d_e)
    if abs(phase) < 0.5:
        return None
    u_i = u_i * (phase / abs(phase))
    if norm_max(kron(u_i, u_e) - u) > max(tol, 1e-9):
        return None
    return u_i, u_e


def _polar_unitary(m: np.ndarray) -> np.ndarray:
    w, _, vh = np.linalg.svd(m)
    return w @ vh
