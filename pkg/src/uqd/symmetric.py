"""Dicke combinatorics, the reduced register basis, its states and projectors.

A register holds 2n+1 qubits: n copies of a first program qubit on the odd
positions, n copies of a second program qubit on the even positions, and one
data qubit at the tail.  Whatever the two program qubits are, such a register
only ever occupies the span of

    |e_l>_O |e_m>_E |t>_T,    l, m = 0..n,  t = 0, 1,

where |e_k> is the k-excitation Dicke state of the n odd (O) or n even (E)
program positions and |t> is the tail qubit.  This module fixes the flat
ordering of that 2(n+1)^2-dimensional basis and builds the state vectors and
symmetric-subspace projectors everything downstream relies on.

Flat index convention: (l, m, t) -> l*2*(n+1) + m*2 + t, so each even label
keeps its two tail settings adjacent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

TWO_PI = 2.0 * math.pi

# Direct binomial/power products stay comfortably inside float range up to
# here; larger n switches the amplitude formulas to log space.
_DIRECT_N_MAX = 60


def _check_copies(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"copy count must be an integer >= 1, got {n!r}")


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), exact."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if k < 0 or k > n:
        raise ValueError(f"k must satisfy 0 <= k <= {n}, got {k}")
    return math.comb(n, k)


def log_binomial(n: int, k: int) -> float:
    """log C(n, k) via lgamma, for amplitude formulas beyond exact-float range."""
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


@dataclass(frozen=True)
class BlochQubit:
    """Pure qubit cos(theta/2)|0> + sin(theta/2) e^{i phi} |1>.

    theta must lie in [0, pi]; phi is stored reduced modulo 2 pi.
    """

    theta: float
    phi: float

    def __post_init__(self) -> None:
        theta = float(self.theta)
        if not 0.0 <= theta <= math.pi or math.isnan(theta):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)

    def amplitudes(self) -> np.ndarray:
        """Two-component state vector (coefficients of |0> and |1>)."""
        return np.array(
            [
                math.cos(self.theta / 2),
                math.sin(self.theta / 2) * np.exp(1j * self.phi),
            ],
            dtype=complex,
        )


def reduced_dim(n: int) -> int:
    """Dimension 2(n+1)^2 of the reduced register basis."""
    _check_copies(n)
    return 2 * (n + 1) ** 2


@dataclass(frozen=True)
class ReducedIndex:
    """Label (l, m, t) of one reduced basis vector |e_l>_O |e_m>_E |t>_T."""

    l: int
    m: int
    t: int

    def to_flat(self, n: int) -> int:
        _check_copies(n)
        if not (0 <= self.l <= n and 0 <= self.m <= n and self.t in (0, 1)):
            raise ValueError(f"{self} out of range for n={n}")
        return self.l * 2 * (n + 1) + self.m * 2 + self.t

    @classmethod
    def from_flat(cls, flat: int, n: int) -> "ReducedIndex":
        if not 0 <= flat < reduced_dim(n):
            raise ValueError(f"flat index {flat} out of range for n={n}")
        l, rest = divmod(flat, 2 * (n + 1))
        m, t = divmod(rest, 2)
        return cls(l, m, t)


def dicke_magnitudes_batch(n: int, thetas: np.ndarray) -> np.ndarray:
    """Moduli of n-fold tensor-power Dicke coefficients, one row per angle.

    Row entries are sqrt(C(n,k)) cos^{n-k}(theta/2) sin^k(theta/2) for
    k = 0..n.  Uses log-space products once direct binomials would cost
    float accuracy.
    """
    _check_copies(n)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    k = np.arange(n + 1)
    c = np.cos(thetas / 2)[:, None]
    s = np.sin(thetas / 2)[:, None]
    if n <= _DIRECT_N_MAX:
        root = np.sqrt([float(binomial(n, int(j))) for j in k])
        return root * c ** (n - k) * s**k
    half_log = 0.5 * np.array([log_binomial(n, int(j)) for j in k])
    with np.errstate(divide="ignore", invalid="ignore"):
        log_mag = (
            half_log
            + np.where(n - k == 0, 0.0, (n - k) * np.log(c))
            + np.where(k == 0, 0.0, k * np.log(s))
        )
    return np.exp(log_mag)


def dicke_amplitudes_batch(
    n: int, thetas: np.ndarray, phis: np.ndarray
) -> np.ndarray:
    """Complex Dicke coefficients for batches of (theta, phi)."""
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    k = np.arange(n + 1)
    return dicke_magnitudes_batch(n, thetas) * np.exp(1j * k * phis[:, None])


def dicke_amplitudes(q: BlochQubit, n: int) -> np.ndarray:
    """Coefficients of the n-fold tensor power of `q` in the Dicke basis.

    Component k is cos^{n-k}(theta/2) sin^k(theta/2) e^{ik phi} sqrt(C(n,k)).
    The binomial theorem guarantees unit norm.
    """
    return dicke_amplitudes_batch(n, [q.theta], [q.phi])[0]


@dataclass(frozen=True)
class ReducedState:
    """Complex amplitude vector over the flat-ordered reduced basis."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        _check_copies(self.n)
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (reduced_dim(self.n),):
            raise ValueError(
                f"amplitudes must have shape ({reduced_dim(self.n)},) for "
                f"n={self.n}, got {amps.shape}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class ReducedOperator:
    """Hermitian operator on the reduced basis, stored dense."""

    n: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        _check_copies(self.n)
        dim = reduced_dim(self.n)
        mat = np.array(self.entries, dtype=complex)
        if mat.shape != (dim, dim):
            raise ValueError(
                f"entries must have shape ({dim}, {dim}) for n={self.n}, "
                f"got {mat.shape}"
            )
        defect = float(np.max(np.abs(mat - mat.conj().T)))
        if defect > 1e-12:
            raise ValueError(f"operator is not Hermitian (defect {defect:.3e})")
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)


class Block(Enum):
    """Which program block joins the tail under a symmetric projector."""

    EVEN_TAIL = "even_tail"
    ODD_TAIL = "odd_tail"


def tail_split_vectors(n: int) -> np.ndarray:
    """Symmetric block-plus-tail states written in the reduced pair basis.

    Row k (k = 0..n+1) holds the (n+1)-qubit Dicke state |e_k> of one program
    block together with the tail, expanded over |e_m>|t> (flat pair index
    m*2 + t).  Splitting the tail off an (n+1)-qubit Dicke state gives

        |e_k> = sqrt((n+1-k)/(n+1)) |e_k>|0> + sqrt(k/(n+1)) |e_{k-1}>|1>.
    """
    _check_copies(n)
    vs = np.zeros((n + 2, 2 * (n + 1)))
    for k in range(n + 2):
        if k <= n:
            vs[k, 2 * k] = math.sqrt((n + 1 - k) / (n + 1))
        if k >= 1:
            vs[k, 2 * (k - 1) + 1] = math.sqrt(k / (n + 1))
    return vs


def pair_projector(n: int) -> np.ndarray:
    """Projector onto the symmetric block-plus-tail subspace, pair basis only.

    A 2(n+1) x 2(n+1) real matrix of rank n+2; the same matrix serves both
    program blocks.
    """
    vs = tail_split_vectors(n)
    mat = vs.T @ vs
    return 0.5 * (mat + mat.T)


def build_symmetric_projector(n: int, block: Block) -> ReducedOperator:
    """Symmetric projector of one program block plus the tail, tensored with
    the identity on the spectator block, in the reduced basis.

    Rank is (n+1)(n+2): n+2 symmetric pair states times n+1 spectator labels.
    """
    _check_copies(n)
    pair = pair_projector(n)
    eye = np.eye(n + 1)
    dim = reduced_dim(n)
    if block is Block.EVEN_TAIL:
        mat = np.kron(eye, pair)
    elif block is Block.ODD_TAIL:
        # Couples the odd label with the tail while the even label spectates.
        pair4 = pair.reshape(n + 1, 2, n + 1, 2)
        mat = np.einsum("lsku,mn->lmsknu", pair4, eye).reshape(dim, dim)
    else:
        raise ValueError(f"unknown block {block!r}")
    return ReducedOperator(n, mat)


def build_input_state(
    psi1: BlochQubit, psi2: BlochQubit, n: int, which: int
) -> ReducedState:
    """Register state: psi1 fills the odd block, psi2 the even block, and the
    tail carries whichever of the two `which` selects."""
    _check_copies(n)
    if which not in (1, 2):
        raise ValueError(f"which must be 1 or 2, got {which!r}")
    odd = dicke_amplitudes(psi1, n)
    even = dicke_amplitudes(psi2, n)
    tail = (psi1 if which == 1 else psi2).amplitudes()
    return ReducedState(n, np.kron(odd, np.kron(even, tail)))
