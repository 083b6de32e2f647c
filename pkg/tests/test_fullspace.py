"""Brute-force tensor-product oracle versus the reduced-basis engine."""

import math

import numpy as np
import pytest

from uqd.fullspace import (
    FULL_N_MAX,
    compare_reduced,
    embed_reduced,
    even_positions,
    full_dim,
    odd_positions,
    reduced_basis_matrix,
    run_verification,
    swap_positions,
    symmetric_projector_full,
    tail_position,
    tensor_input,
)
from uqd.symmetric import BlochQubit, build_input_state, reduced_dim


def test_dimensions_and_positions():
    assert full_dim(2) == 32
    assert odd_positions(3) == (1, 3, 5)
    assert even_positions(3) == (2, 4, 6)
    assert tail_position(3) == 7


def test_tensor_input_basis_state():
    # |0>|1>|1> sits at big-endian index 3
    state = tensor_input(BlochQubit(0.0, 0.0), BlochQubit(math.pi, 0.0), 1, 2)
    expected = np.zeros(8)
    expected[3] = 1.0
    np.testing.assert_allclose(state.amplitudes, expected, atol=1e-15)


def test_tensor_input_norm_and_overlap():
    psi1 = BlochQubit(0.7, 1.2)
    psi2 = BlochQubit(2.1, 5.3)
    s1 = tensor_input(psi1, psi2, 3, 1)
    s2 = tensor_input(psi1, psi2, 3, 2)
    assert abs(np.linalg.norm(s1.amplitudes) - 1.0) < 1e-12
    # program parts coincide, so the overlap is the single-qubit tail overlap
    qubit_overlap = np.vdot(psi1.amplitudes(), psi2.amplitudes())
    assert abs(np.vdot(s1.amplitudes, s2.amplitudes) - qubit_overlap) < 1e-12


def test_tensor_input_respects_cap():
    q = BlochQubit(0.3, 0.3)
    with pytest.raises(ValueError):
        tensor_input(q, q, FULL_N_MAX + 1, 1)


def test_full_projector_rank_and_fixed_points():
    n = 1
    group = even_positions(n) + (tail_position(n),)
    p = symmetric_projector_full(n, group)
    assert abs(np.trace(p).real - 6) < 1e-12  # (n+2) 2^n at n = 1

    q = BlochQubit(1.0, 0.7)
    state = tensor_input(q, q, n, 2).amplitudes
    np.testing.assert_allclose(p @ state, state, atol=1e-12)

    singlet = np.zeros(8, dtype=complex)
    # positions 2 and 3 are the projected group; antisymmetrize them
    singlet[0b010] = 1 / math.sqrt(2)
    singlet[0b001] = -1 / math.sqrt(2)
    assert np.max(np.abs(p @ singlet)) < 1e-12


def test_full_projector_position_validation():
    with pytest.raises(ValueError):
        symmetric_projector_full(2, (1, 2))
    with pytest.raises(ValueError):
        symmetric_projector_full(2, (1, 1, 2))
    with pytest.raises(ValueError):
        symmetric_projector_full(2, (4, 5, 6))


def test_reduced_embedding_is_isometric():
    for n in (1, 2):
        v = reduced_basis_matrix(n)
        gram = v.conj().T @ v
        assert np.max(np.abs(gram - np.eye(reduced_dim(n)))) < 1e-12


def test_embedding_matches_tensor_route():
    psi1 = BlochQubit(0.9, 0.2)
    psi2 = BlochQubit(1.7, 3.9)
    for which in (1, 2):
        reduced = build_input_state(psi1, psi2, 2, which)
        lifted = embed_reduced(reduced)
        direct = tensor_input(psi1, psi2, 2, which)
        assert np.max(np.abs(lifted.amplitudes - direct.amplitudes)) < 1e-12


def test_swap_positions_involution():
    state = tensor_input(BlochQubit(0.4, 0.0), BlochQubit(2.8, 1.0), 2, 1)
    back = swap_positions(swap_positions(state, 1, 4), 1, 4)
    np.testing.assert_allclose(back.amplitudes, state.amplitudes, atol=1e-15)
    with pytest.raises(ValueError):
        swap_positions(state, 0, 3)


def test_program_copies_are_exchangeable():
    # transpositions among odd positions fix the first register state
    state = tensor_input(BlochQubit(0.8, 0.1), BlochQubit(2.0, 4.4), 2, 1)
    for first, second in ((1, 3), (3, 5), (1, 5)):
        swapped = swap_positions(state, first, second)
        assert np.max(np.abs(swapped.amplitudes - state.amplitudes)) < 1e-12


def test_compare_reduced():
    assert compare_reduced(1.0, 1.0) == 0.0
    assert compare_reduced(0.25, 0.5) == 0.25


def test_verification_suite_passes_through_n3():
    results = run_verification(3)
    assert len(results) == 33
    failures = [r for r in results if not r.passed]
    assert failures == [], [f"{r.name}: {r.detail}" for r in failures]


def test_verification_rejects_large_n():
    with pytest.raises(ValueError):
        run_verification(FULL_N_MAX + 1)
