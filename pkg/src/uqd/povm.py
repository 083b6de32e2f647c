"""The discrimination measurement and its success probabilities.

Each conclusive element scales the complement of one block-plus-tail
symmetric projector.  When the tail repeats the even-block qubit the whole
even-plus-tail group is n+1 copies of one state, hence symmetric, so the
complement annihilates it: a click can only come from the other preparation
and the measurement never misidentifies.  The inconclusive element is fixed
by completeness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .symmetric import (
    Block,
    BlochQubit,
    ReducedOperator,
    ReducedState,
    _check_copies,
    binomial,
    build_input_state,
    build_symmetric_projector,
    dicke_amplitudes_batch,
    dicke_magnitudes_batch,
    log_binomial,
    pair_projector,
    reduced_dim,
    _DIRECT_N_MAX,
)


@dataclass(frozen=True)
class PovmParams:
    """Scale factors of the two conclusive elements."""

    c1: float
    c2: float

    def __post_init__(self) -> None:
        for name in ("c1", "c2"):
            value = float(getattr(self, name))
            if not 0.0 <= value <= 1.0 or math.isnan(value):
                raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class PovmTriple:
    """The two conclusive elements and the inconclusive remainder."""

    n: int
    params: PovmParams
    pi1: ReducedOperator
    pi2: ReducedOperator
    pi0: ReducedOperator


def build_povm(n: int, params: PovmParams) -> PovmTriple:
    """Assemble the three measurement operators in the reduced basis.

    pi1 + pi2 + pi0 equals the identity by construction; positivity of pi0
    depends on (c1, c2) and is the subject of the spectral module.
    """
    _check_copies(n)
    p_even = build_symmetric_projector(n, Block.EVEN_TAIL).entries
    p_odd = build_symmetric_projector(n, Block.ODD_TAIL).entries
    eye = np.eye(reduced_dim(n), dtype=complex)
    pi1 = params.c1 * (eye - p_even)
    pi2 = params.c2 * (eye - p_odd)
    pi0 = eye - pi1 - pi2
    return PovmTriple(
        n=n,
        params=params,
        pi1=ReducedOperator(n, pi1),
        pi2=ReducedOperator(n, pi2),
        pi0=ReducedOperator(n, pi0),
    )


def _expectation(state: ReducedState, op: ReducedOperator) -> float:
    return float(np.real(np.vdot(state.amplitudes, op.entries @ state.amplitudes)))


def success_probability(state: ReducedState, triple: PovmTriple, which: int) -> float:
    """Probability that the conclusive element `which` fires on `state`."""
    if which not in (1, 2):
        raise ValueError(f"which must be 1 or 2, got {which!r}")
    if state.n != triple.n:
        raise ValueError(
            f"state has n={state.n} but the measurement has n={triple.n}"
        )
    return _expectation(state, triple.pi1 if which == 1 else triple.pi2)


def symmetric_overlap_batch(
    n: int,
    theta_tail: np.ndarray,
    phi_tail: np.ndarray,
    theta_block: np.ndarray,
    phi_block: np.ndarray,
) -> np.ndarray:
    """Overlap of a register with the projected block-plus-tail subspace.

    The projected block is filled with copies of (theta_block, phi_block)
    and the tail carries (theta_tail, phi_tail); the spectator block drops
    out because it is normalized.  Summing the Dicke expansion in closed
    form gives, with w_k the binomial weight of the block qubit,

        sum_k [ (n-k+1) cos^2(tail/2) + (k+1) sin^2(tail/2) ] w_k / (n+1)
      + sum_k 2k v_k cos(tail/2) sin(tail/2) cos(phi_tail - phi_block) / (n+1)

    where v_k shifts one block excitation onto the tail.
    """
    _check_copies(n)
    th_i = np.atleast_1d(np.asarray(theta_tail, dtype=float))
    ph_i = np.atleast_1d(np.asarray(phi_tail, dtype=float))
    th_j = np.atleast_1d(np.asarray(theta_block, dtype=float))
    ph_j = np.atleast_1d(np.asarray(phi_block, dtype=float))

    k = np.arange(n + 1)
    w = dicke_magnitudes_batch(n, th_j) ** 2
    ci2 = np.cos(th_i / 2) ** 2
    si2 = np.sin(th_i / 2) ** 2
    diagonal = (
        ((n - k + 1) * ci2[:, None] + (k + 1) * si2[:, None]) / (n + 1) * w
    ).sum(axis=1)

    kk = np.arange(1, n + 1)
    cross = (2 * kk / (n + 1) * _shifted_weights(n, th_j)).sum(axis=1)
    cross = cross * np.cos(th_i / 2) * np.sin(th_i / 2) * np.cos(ph_i - ph_j)
    return diagonal + cross


def _shifted_weights(n: int, thetas: np.ndarray) -> np.ndarray:
    """C(n,k) cos^{2(n-k)+1}(theta/2) sin^{2k-1}(theta/2) for k = 1..n."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    kk = np.arange(1, n + 1)
    c = np.cos(thetas / 2)[:, None]
    s = np.sin(thetas / 2)[:, None]
    ce = 2 * (n - kk) + 1
    se = 2 * kk - 1
    if n <= _DIRECT_N_MAX:
        coeff = np.array([float(binomial(n, int(j))) for j in kk])
        return coeff * c**ce * s**se
    log_coeff = np.array([log_binomial(n, int(j)) for j in kk])
    with np.errstate(divide="ignore", invalid="ignore"):
        # Exponents are all >= 1, so a zero base simply sends the term to 0.
        log_w = log_coeff + ce * np.log(c) + se * np.log(s)
    return np.exp(log_w)


def closed_form_expectation(
    psi1: BlochQubit, psi2: BlochQubit, n: int, which: int
) -> float:
    """Summed-out overlap limiting the success probability of input `which`.

    Equals <Psi|P x I|Psi> computed by the matrix route, but needs no
    reduced-basis operator: p_which = c_which * (1 - this value).
    """
    if which not in (1, 2):
        raise ValueError(f"which must be 1 or 2, got {which!r}")
    tail, block = (psi1, psi2) if which == 1 else (psi2, psi1)
    return float(
        symmetric_overlap_batch(
            n, [tail.theta], [tail.phi], [block.theta], [block.phi]
        )[0]
    )


def batch_success_probabilities(
    n: int,
    params: PovmParams,
    theta1: np.ndarray,
    phi1: np.ndarray,
    theta2: np.ndarray,
    phi2: np.ndarray,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Success probabilities and cross-element leakage for qubit-pair batches.

    Returns (p1, p2, leak1, leak2) where leak_i is the probability that the
    wrong conclusive element fires on input i; both should vanish to float
    precision.  The quadratic forms collapse onto the 2(n+1)-dimensional
    pair space because the spectator block is normalized.
    """
    _check_copies(n)
    pair = pair_projector(n)
    a1 = dicke_amplitudes_batch(n, theta1, phi1)
    a2 = dicke_amplitudes_batch(n, theta2, phi2)
    t1 = np.stack(
        [
            np.cos(np.atleast_1d(theta1) / 2),
            np.sin(np.atleast_1d(theta1) / 2) * np.exp(1j * np.atleast_1d(phi1)),
        ],
        axis=-1,
    )
    t2 = np.stack(
        [
            np.cos(np.atleast_1d(theta2) / 2),
            np.sin(np.atleast_1d(theta2) / 2) * np.exp(1j * np.atleast_1d(phi2)),
        ],
        axis=-1,
    )

    def overlap(block_amps: np.ndarray, tail_amps: np.ndarray) -> np.ndarray:
        v = (block_amps[:, :, None] * tail_amps[:, None, :]).reshape(
            block_amps.shape[0], -1
        )
        return np.einsum("sd,de,se->s", v.conj(), pair, v).real

    p1 = params.c1 * (1.0 - overlap(a2, t1))
    p2 = params.c2 * (1.0 - overlap(a1, t2))
    leak1 = params.c2 * (1.0 - overlap(a1, t1))
    leak2 = params.c1 * (1.0 - overlap(a2, t2))
    return p1, p2, leak1, leak2


def no_error_check(triple: PovmTriple, psi1: BlochQubit, psi2: BlochQubit) -> float:
    """Largest probability of a misidentifying click over the two inputs."""
    state1 = build_input_state(psi1, psi2, triple.n, 1)
    state2 = build_input_state(psi1, psi2, triple.n, 2)
    return max(
        abs(_expectation(state1, triple.pi2)),
        abs(_expectation(state2, triple.pi1)),
    )


def total_success(p1: float, p2: float, eta1: float) -> float:
    """Prior-weighted success probability eta1*p1 + (1 - eta1)*p2."""
    if not 0.0 <= eta1 <= 1.0 or math.isnan(eta1):
        raise ValueError(f"eta1 must lie in [0, 1], got {eta1!r}")
    return eta1 * p1 + (1.0 - eta1) * p2
