"""Kernel <-> phase-function transform: exactness, structure, serialization."""

import io
import json
import math

import numpy as np
import pytest

from weylkit import (
    GridSpec,
    hermite_basis,
    inner_k,
    parity,
    weyl_wigner,
    weyl_wigner_inv,
    wigner_of_state,
    z_inv,
    z_map,
)
from weylkit.wigner import (
    kernel_from_json,
    kernel_to_json,
    phase_from_json,
    phase_to_json,
    read_kernel_csv,
    read_phase_csv,
    write_kernel_csv,
    write_phase_csv,
)

GRID = GridSpec(64, 0.25)


def random_kernel(rng, grid=GRID):
    shape = grid.kernel_shape
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_round_trips_at_machine_precision():
    rng = np.random.default_rng(11)
    for _ in range(5):
        K = random_kernel(rng)
        A = weyl_wigner(K, GRID)
        assert np.max(np.abs(weyl_wigner_inv(A, GRID) - K)) < 1e-12
        B = weyl_wigner(weyl_wigner_inv(A, GRID), GRID)
        assert np.max(np.abs(B - A)) < 1e-12


def test_transform_shapes_and_validation():
    K = np.zeros(GRID.kernel_shape)
    assert weyl_wigner(K, GRID).shape == GRID.phase_shape
    with pytest.raises(ValueError):
        weyl_wigner(np.zeros((4, 8)), GRID)
    with pytest.raises(ValueError):
        weyl_wigner_inv(np.zeros((64, 64)), GRID)


def test_last_row_is_structurally_zero():
    rng = np.random.default_rng(3)
    A = weyl_wigner(random_kernel(rng), GRID)
    assert np.all(A[-1] == 0)


def test_transform_is_an_isometry():
    rng = np.random.default_rng(5)
    K1, K2 = random_kernel(rng), random_kernel(rng)
    lhs = inner_k(weyl_wigner(K1, GRID), weyl_wigner(K2, GRID), GRID)
    rhs = GRID.dx**2 * np.sum(np.conj(K1) * K2)
    assert abs(lhs - rhs) < 1e-12 * abs(rhs)


def test_hermitian_kernels_have_real_phase_functions():
    rng = np.random.default_rng(7)
    K = random_kernel(rng)
    K = K + K.conj().T
    A = weyl_wigner(K, GRID)
    assert np.max(np.abs(A.imag)) < 1e-13 * np.max(np.abs(A))


def test_parity_is_kernel_transposition():
    rng = np.random.default_rng(9)
    K = random_kernel(rng)
    assert np.max(
        np.abs(parity(weyl_wigner(K, GRID), GRID) - weyl_wigner(K.T, GRID))
    ) < 1e-12


def test_parity_is_a_bitwise_involution():
    rng = np.random.default_rng(13)
    A = weyl_wigner(random_kernel(rng), GRID)
    assert np.array_equal(parity(parity(A, GRID), GRID), A)
    with pytest.raises(ValueError):
        parity(np.zeros((4, 4)), GRID)


def test_identity_kernel_maps_to_flat_even_rows():
    # the identity operator has kernel delta(x−y)/dx -> I/dx on the grid;
    # its phase function is 2 on even rows and 0 on odd rows
    A = weyl_wigner(np.eye(GRID.n) / GRID.dx, GRID)
    assert np.allclose(A[0::2], 2.0, atol=1e-12)
    assert np.allclose(A[1::2], 0.0, atol=1e-12)


def test_intertwiner_aliases():
    rng = np.random.default_rng(15)
    K = random_kernel(rng)
    assert np.array_equal(z_map(K, GRID), weyl_wigner(K, GRID))
    A = weyl_wigner(K, GRID)
    assert np.array_equal(z_inv(A, GRID), weyl_wigner_inv(A, GRID))


# ----------------------------------------------------------------------
# state Wigner functions against continuum formulas
# ----------------------------------------------------------------------


def test_ground_state_wigner_is_a_gaussian():
    grid = GridSpec(128, 0.125)
    e0 = hermite_basis(grid, 1)[0]
    W = wigner_of_state(e0, grid)
    reference = np.exp(-grid.q_matrix() ** 2 - grid.p_matrix() ** 2) / math.pi
    reference[-1] = 0.0
    assert np.max(np.abs(W - reference)) < 1e-8


def test_first_excited_wigner_attains_minus_one_over_pi():
    grid = GridSpec(128, 0.125)
    e1 = hermite_basis(grid, 2)[1]
    W = wigner_of_state(e1, grid)
    origin = W[grid.n, grid.n // 2]
    assert abs(origin.real + 1 / math.pi) < 1e-8
    assert abs(origin.imag) < 1e-12


def test_transition_symbol_closed_form():
    # the 0-1 transition symbol is 2√2 (q ± i p) e^{−q²−p²}; the transform
    # fixes one of the two sign conventions, and it must match to 1e−8
    grid = GridSpec(128, 0.125)
    basis = hermite_basis(grid, 2)
    K = np.outer(basis[0], np.conj(basis[1]))
    phi = weyl_wigner(K, grid)
    q, p = grid.q_matrix(), grid.p_matrix()
    envelope = 2 * math.sqrt(2) * np.exp(-(q**2) - p**2)
    errors = {
        sign: np.max(np.abs(phi - envelope * (q + sign * 1j * p)))
        for sign in (1, -1)
    }
    assert min(errors.values()) < 1e-8
    assert max(errors.values()) > 0.1  # only one convention can match


def test_transition_symbols_are_orthonormal():
    grid = GridSpec(128, 0.125)
    basis = hermite_basis(grid, 4)
    phis = {}
    for r in range(4):
        for s in range(4):
            K = np.outer(basis[r], np.conj(basis[s]))
            phis[r, s] = weyl_wigner(K, grid)
    worst = 0.0
    for (r, s), F in phis.items():
        for (u, v), G in phis.items():
            expected = 1.0 if (r, s) == (u, v) else 0.0
            worst = max(worst, abs(inner_k(F, G, grid) - expected))
    assert worst < 1e-8


def test_state_wigner_normalization_and_purity_integrals():
    grid = GridSpec(128, 0.125)
    psi = hermite_basis(grid, 3)[2]
    W = wigner_of_state(psi, grid)
    total = np.sum(W).real * grid.cell
    square = np.sum(W.real**2) * grid.cell
    assert abs(total - 1.0) < 1e-10
    assert abs(2 * math.pi * square - 1.0) < 1e-10
    with pytest.raises(ValueError):
        wigner_of_state(psi[:10], grid)


# ----------------------------------------------------------------------
# serialization
# ----------------------------------------------------------------------


def test_phase_csv_round_trip_is_exact():
    rng = np.random.default_rng(21)
    grid = GridSpec(8, 0.5)
    A = weyl_wigner(random_kernel(rng, grid), grid)
    buf = io.StringIO()
    write_phase_csv(buf, A, grid)
    buf.seek(0)
    back, grid_back = read_phase_csv(buf)
    assert grid_back == grid
    assert np.array_equal(back, A)


def test_kernel_csv_round_trip_is_exact():
    rng = np.random.default_rng(23)
    grid = GridSpec(8, 0.5)
    K = random_kernel(rng, grid)
    buf = io.StringIO()
    write_kernel_csv(buf, K, grid)
    buf.seek(0)
    back, grid_back = read_kernel_csv(buf)
    assert grid_back == grid
    assert np.array_equal(back, K)


def test_csv_header_is_machine_readable():
    grid = GridSpec(8, 0.5)
    buf = io.StringIO()
    write_phase_csv(buf, np.zeros(grid.phase_shape), grid)
    header = buf.getvalue().splitlines()[0]
    assert header == f"# axes q:16:{0.25!r} p:8:{grid.dp!r}"


def test_csv_malformed_inputs_raise():
    with pytest.raises(ValueError):
        read_phase_csv(io.StringIO("# axes q:16:0.25\n"))
    with pytest.raises(ValueError):
        read_phase_csv(io.StringIO("# axes x:16:0.25 p:8:0.1\n"))
    grid = GridSpec(8, 0.5)
    buf = io.StringIO()
    write_phase_csv(buf, np.zeros(grid.phase_shape), grid)
    truncated = "\n".join(buf.getvalue().splitlines()[:-3])
    with pytest.raises(ValueError):
        read_phase_csv(io.StringIO(truncated))
    # inconsistent dp
    with pytest.raises(ValueError):
        read_phase_csv(io.StringIO("# axes q:16:0.25 p:8:0.5\n" + "0.0,0.0\n" * 128))


def test_json_round_trips_are_exact():
    rng = np.random.default_rng(25)
    grid = GridSpec(8, 0.5)
    K = random_kernel(rng, grid)
    A = weyl_wigner(K, grid)
    K2, gk = kernel_from_json(json.dumps(kernel_to_json(K, grid)))
    A2, ga = phase_from_json(json.dumps(phase_to_json(A, grid)))
    assert gk == grid and ga == grid
    assert np.array_equal(K2, K)
    assert np.array_equal(A2, A)


def test_json_shape_and_axes_validation():
    grid = GridSpec(8, 0.5)
    payload = phase_to_json(np.zeros(grid.phase_shape), grid)
    payload["re"] = payload["re"][:-1]
    with pytest.raises(ValueError):
        phase_from_json(payload)
    payload = kernel_to_json(np.zeros(grid.kernel_shape), grid)
    del payload["axes"]["x"]
    with pytest.raises(ValueError):
        kernel_from_json(payload)
