"""Discrete kernel <-> phase-function transform, exactly invertible.

The transform maps an n×n sampled integral kernel K(x_i, x_j) to a
(2n, n) phase function

    A[s, k] = 2 dx Σ_i K[i, s−i] exp(i p_k (s − 2i) dx),

one row per kernel anti-diagonal i + j = s (midpoint q_s = (s−n) dx/2),
with the parity-matched momentum grid p_k = (k − n/2 + σ/2) dp, σ = s mod 2
and dp = π/(n dx).  Each row is a single length-n FFT after a fixed phase
twist, so the transform and its inverse are exact mutual inverses in exact
arithmetic and round-trip at machine precision in floats.

Structural facts used throughout (and enforced by tests):

* row 2n−1 has no kernel anti-diagonal and is identically zero;
* the transform is an isometry:
  <transform(K1), transform(K2)>_phase = dx² Σ conj(K1) K2;
* Hermitian kernels have real phase functions, and kernel transposition
  is momentum reflection (the parity map).

``z_map``/``z_inv`` name the same bijection in its role as the unitary
intertwiner between the two-point and phase-space pictures.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .grids import GridSpec

__all__ = [
    "weyl_wigner",
    "weyl_wigner_inv",
    "z_map",
    "z_inv",
    "parity",
    "wigner_of_state",
    "write_phase_csv",
    "read_phase_csv",
    "write_kernel_csv",
    "read_kernel_csv",
    "phase_to_json",
    "phase_from_json",
    "kernel_to_json",
    "kernel_from_json",
]


# ----------------------------------------------------------------------
# the transform
# ----------------------------------------------------------------------


def _antidiagonal_mask(grid: GridSpec):
    """Index arrays mapping kernel entries onto phase rows.

    Returns (valid, i_idx, j_idx): ``valid`` is the (2n, n) boolean mask of
    (row s, column i) pairs for which j = s − i is a kernel column, and
    i_idx/j_idx are the kernel indices of the True positions (row-major).
    """
    n = grid.n
    s = np.arange(2 * n)[:, None]
    i = np.arange(n)[None, :]
    j = s - i
    valid = (j >= 0) & (j < n)
    i_idx = np.broadcast_to(i, valid.shape)[valid]
    j_idx = j[valid]
    return valid, i_idx, j_idx


def _row_twist(grid: GridSpec) -> np.ndarray:
    """(2n, n) twist (−1)^i exp(−iπσi/n) applied before the row FFTs."""
    n = grid.n
    i = np.arange(n)
    base = np.where(i % 2 == 0, 1.0, -1.0).astype(complex)
    odd = base * np.exp(-1j * math.pi * i / n)
    out = np.empty((2 * n, n), dtype=complex)
    out[0::2] = base
    out[1::2] = odd
    return out


def _row_prefactor(grid: GridSpec) -> np.ndarray:
    """(2n, n) outer prefactor 2 dx exp(i p_k s dx)."""
    s = np.arange(2 * grid.n)[:, None]
    return 2 * grid.dx * np.exp(1j * grid.p_matrix() * s * grid.dx)


def weyl_wigner(K: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Phase function of a sampled integral kernel (shape (2n, n)).

    ``K[i, j]`` samples the kernel at (x_i, x_j); a matrix acting on
    coefficient vectors corresponds to the kernel ``matrix / dx``.
    """
    K = np.asarray(K)
    if K.shape != grid.kernel_shape:
        raise ValueError(f"kernel must have shape {grid.kernel_shape}")
    valid, i_idx, j_idx = _antidiagonal_mask(grid)
    g = np.zeros(grid.phase_shape, dtype=complex)
    g[valid] = K[i_idx, j_idx]
    g *= _row_twist(grid)
    return _row_prefactor(grid) * np.fft.fft(g, axis=1)


def weyl_wigner_inv(A: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Kernel of a phase function; exact inverse of :func:`weyl_wigner`.

    Row 2n−1 carries no kernel data and is ignored.
    """
    A = np.asarray(A, dtype=complex)
    if A.shape != grid.phase_shape:
        raise ValueError(f"phase function must have shape {grid.phase_shape}")
    g = np.fft.ifft(A / _row_prefactor(grid), axis=1)
    g *= np.conj(_row_twist(grid))
    valid, i_idx, j_idx = _antidiagonal_mask(grid)
    K = np.zeros(grid.kernel_shape, dtype=complex)
    K[i_idx, j_idx] = g[valid]
    return K


def z_map(K: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Two-point to phase-space intertwiner (same map as weyl_wigner)."""
    return weyl_wigner(K, grid)


def z_inv(A: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Phase-space to two-point intertwiner (same map as weyl_wigner_inv)."""
    return weyl_wigner_inv(A, grid)


def parity(A: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Momentum reflection (PA)(q, p) = A(q, −p); exact on both parities.

    Even rows reflect by k → (n − k) mod n (the wrapped entry is exact by
    the n·dp periodicity of even rows); odd rows reverse, since their
    half-offset momenta come in exact ± pairs.  On the kernel side this is
    transposition: parity(weyl_wigner(K)) == weyl_wigner(K.T).
    """
    A = np.asarray(A)
    if A.shape != grid.phase_shape:
        raise ValueError(f"phase function must have shape {grid.phase_shape}")
    n = grid.n
    out = np.empty_like(A)
    out[0::2] = A[0::2][:, (n - np.arange(n)) % n]
    out[1::2] = A[1::2][:, ::-1]
    return out


def wigner_of_state(psi: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Wigner function of a pure state: transform of ψ ⊗ ψ̄ over 2π.

    For a unit-norm state the result is real with Σ W · (dx/2) dp = 1 up
    to the Riemann error of the state's tails.
    """
    psi = np.asarray(psi)
    if psi.shape != (grid.n,):
        raise ValueError("state must be a 1-d array of length n")
    K = np.outer(psi, np.conj(psi))
    return weyl_wigner(K, grid) / (2 * math.pi)


# ----------------------------------------------------------------------
# serialization: CSV and JSON
# ----------------------------------------------------------------------
#
# CSV phase layout:   "# axes q:<2n>:<dq> p:<n>:<dp>"  (dq = dx/2)
# then one "re,im" line per entry in row-major order.
# CSV kernel layout:  "# axes x:<n>:<dx> y:<n>:<dx>"   then n*n lines.
# JSON carries {"grid", "axes", "re", "im"}; floats serialize via repr and
# so round-trip bit-exactly.


def _write_complex_rows(fh, data: np.ndarray):
    for value in np.asarray(data, dtype=complex).ravel():
        value = complex(value)  # plain-float repr, exact round trip
        fh.write(f"{value.real!r},{value.imag!r}\n")


def _read_complex_rows(lines, count: int, shape) -> np.ndarray:
    values = np.empty(count, dtype=complex)
    if len(lines) != count:
        raise ValueError(f"expected {count} data rows, found {len(lines)}")
    for idx, line in enumerate(lines):
        re_s, im_s = line.split(",")
        values[idx] = complex(float(re_s), float(im_s))
    return values.reshape(shape)


def write_phase_csv(fh, A: np.ndarray, grid: GridSpec):
    fh.write(f"# axes q:{2 * grid.n}:{grid.dx / 2!r} p:{grid.n}:{grid.dp!r}\n")
    _write_complex_rows(fh, A)


def write_kernel_csv(fh, K: np.ndarray, grid: GridSpec):
    fh.write(f"# axes x:{grid.n}:{grid.dx!r} y:{grid.n}:{grid.dx!r}\n")
    _write_complex_rows(fh, K)


_AXIS_KINDS = {"phase": ("q", "p"), "kernel": ("x", "y")}


def _parse_axes_header(line: str, kind: str):
    names = _AXIS_KINDS[kind]
    parts = line.strip().split()
    if parts[:2] != ["#", "axes"] or len(parts) != 4:
        raise ValueError(f"malformed axes header: {line!r}")
    axes = []
    for text, name in zip(parts[2:], names):
        label, count, step = text.split(":")
        if label != name:
            raise ValueError(f"expected axis {name!r}, found {label!r}")
        axes.append((int(count), float(step)))
    return axes


def read_phase_csv(fh):
    """Read a phase-function CSV; returns (array, GridSpec)."""
    lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    (rows, dq), (cols, dp) = _parse_axes_header(lines[0], "phase")
    if rows != 2 * cols:
        raise ValueError("phase axes must satisfy rows = 2 * cols")
    grid = GridSpec(cols, 2 * dq)
    if not math.isclose(grid.dp, dp, rel_tol=1e-12):
        raise ValueError("momentum spacing inconsistent with dp = pi/(n dx)")
    A = _read_complex_rows(lines[1:], rows * cols, (rows, cols))
    return A, grid


def read_kernel_csv(fh):
    """Read a kernel CSV; returns (array, GridSpec)."""
    lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    (rows, dx), (cols, dy) = _parse_axes_header(lines[0], "kernel")
    if rows != cols or dx != dy:
        raise ValueError("kernel axes must be square with equal spacing")
    grid = GridSpec(rows, dx)
    K = _read_complex_rows(lines[1:], rows * cols, (rows, cols))
    return K, grid


def _json_envelope(data: np.ndarray, grid: GridSpec, axes: dict) -> dict:
    data = np.asarray(data, dtype=complex)
    return {
        "grid": {"n": grid.n, "dx": grid.dx},
        "axes": axes,
        "re": data.real.tolist(),
        "im": data.imag.tolist(),
    }


def phase_to_json(A: np.ndarray, grid: GridSpec) -> dict:
    axes = {
        "q": {"count": 2 * grid.n, "step": grid.dx / 2},
        "p": {"count": grid.n, "step": grid.dp},
    }
    return _json_envelope(A, grid, axes)


def kernel_to_json(K: np.ndarray, grid: GridSpec) -> dict:
    axes = {
        "x": {"count": grid.n, "step": grid.dx},
        "y": {"count": grid.n, "step": grid.dx},
    }
    return _json_envelope(K, grid, axes)


def _from_json(payload, expected_axes) -> tuple:
    if isinstance(payload, str):
        payload = json.loads(payload)
    grid = GridSpec(int(payload["grid"]["n"]), float(payload["grid"]["dx"]))
    if set(payload["axes"]) != set(expected_axes):
        raise ValueError(f"expected axes {expected_axes}")
    data = np.asarray(payload["re"], dtype=float) + 1j * np.asarray(
        payload["im"], dtype=float
    )
    return data, grid


def phase_from_json(payload) -> tuple:
    A, grid = _from_json(payload, ("q", "p"))
    if A.shape != grid.phase_shape:
        raise ValueError("phase data shape does not match grid")
    return A, grid


def kernel_from_json(payload) -> tuple:
    K, grid = _from_json(payload, ("x", "y"))
    if K.shape != grid.kernel_shape:
        raise ValueError("kernel data shape does not match grid")
    return K, grid
