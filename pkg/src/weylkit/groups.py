"""Worked group representations on phase space and their factorisations.

Five families of real unitary phase-space representations, each paired
with the recovery of its Hilbert-space counterpart:

* ``hw_action`` / ``hw_factorize`` — the Heisenberg-Weyl group acting by
  phase-space translations, factorising to the canonical pair q̂, p̂ with
  the central extension parameter ħ appearing only after factorisation.
* ``gen_heisenberg_tower`` — the polynomial generalisation: generators
  β_n of arbitrarily high degree whose factorised partners are x^n/n!.
* ``galilei_action`` / ``galilei_factorize`` — the 1-d Galilei group
  (time translation, boost, space translation), factorising to the free
  Hamiltonian, boost and momentum operators with central charge ħm.
* ``sp2_generators`` — two inequivalent sp(2,R) representations (Case A
  quadratic, Case B cubic with a real parameter), factorised through the
  symbolic quantization pipeline and separated by their Casimir values.
* ``time_reversal_check`` — the two-element group realised linearly on
  phase functions by momentum reversal, whose factorisation is the
  antiunitary conjugation operator.

Grid conventions: lattice-aligned translations act as exact index
permutations of the phase array (the torus reading of the lattice);
everything else acts through the band-limited kernel sandwich
K -> U K U† with U assembled from spectral multipliers.  The two routes
agree on states with negligible boundary tails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .diffops import DiffOp
from .grids import GridSpec
from .lift import (
    LINE_VARS,
    PHASE_VARS,
    read_off_generator,
    split_test,
    xi_lift,
    z_conjugate,
)
from .rational import CRat, I
from .symbols import NCPoly, PolySymbol, moyal_symbolic, nc_normalize, weyl_quantize
from .wigner import parity, weyl_wigner, weyl_wigner_inv, z_inv, z_map

__all__ = [
    "HWElement",
    "GalileiElement",
    "Sp2Params",
    "FactorizationResult",
    "position_representation",
    "hw_generators",
    "hw_action",
    "hw_cocycle",
    "hw_factorize",
    "gen_heisenberg_tower",
    "tower_factorization",
    "galilei_generators",
    "galilei_action",
    "galilei_factorize",
    "sp2_symbols",
    "sp2_generators",
    "time_reversal_check",
]


# ----------------------------------------------------------------------
# shared helpers
# ----------------------------------------------------------------------


def _exact_positive(value, name: str) -> Fraction:
    """Coerce an exact positive parameter for the symbolic layer."""
    if isinstance(value, int):
        value = Fraction(value)
    if not isinstance(value, Fraction):
        raise ValueError(f"{name} must be an exact integer or Fraction")
    if value <= 0:
        raise ValueError(f"{name} must be positive")
    return value


def _lattice_steps(value: float, step: float):
    """Integer number of lattice steps in ``value``, or None if off-lattice."""
    t = value / step
    r = round(t)
    if abs(t - r) <= 1e-9 * max(1.0, abs(t)):
        return int(r)
    return None


def position_representation(op: NCPoly, hbar=1) -> DiffOp:
    """Coordinate realisation of an operator polynomial: q̂ -> x, p̂ -> −iħ∂x."""
    h = _exact_positive(hbar, "hbar")
    x_op = DiffOp.mult(LINE_VARS, "x")
    p_op = DiffOp.deriv(LINE_VARS, "x", coeff=-I * CRat(h))
    out = DiffOp.zero(LINE_VARS)
    for coeff, word in op.terms:
        term = DiffOp.constant(LINE_VARS, coeff)
        for letter in word:
            term = term * (x_op if letter == "q" else p_op)
        out = out + term
    return out


def _scaled_factor(alpha: DiffOp, hbar) -> DiffOp:
    """One-sided Hilbert generator ħ·Â from a phase-space generator."""
    return split_test(z_conjugate(alpha, hbar)).require() * CRat(Fraction(hbar))


def _require_zero(op: DiffOp, relation: str):
    if not op.is_zero():
        raise ArithmeticError(f"exact relation failed: {relation}; residual {op.pretty()}")


@dataclass(frozen=True)
class FactorizationResult:
    """Hilbert-space factorisation of a phase-space representation.

    ``hilbert_generators`` are exact one-variable operators (coordinate
    picture unless noted), ``generators`` the phase-space generators they
    came from.  ``cocycle_phase`` and ``additive_constants`` record the
    gauge choices (all fixed to zero).  ``casimir_value`` holds the central
    invariant of the factorised algebra: the quadratic Casimir for
    sp(2,R), the central charge for the centrally extended families.
    """

    example: str
    generator_names: tuple
    hilbert_generators: tuple
    generators: tuple = ()
    hilbert_action: str = ""
    cocycle_phase: float = 0.0
    additive_constants: tuple = ()
    relations_checked: tuple = ()
    max_residual: float = 0.0
    casimir_value: object = None
    details: dict = field(default_factory=dict)

    def report(self) -> dict:
        """The JSON verification report consumed by the CLI."""
        value = self.casimir_value
        if isinstance(value, CRat):
            value = float(Fraction(value.re))
        return {
            "example": self.example,
            "relations_checked": list(self.relations_checked),
            "max_residual": float(self.max_residual),
            "casimir_value": value,
            "factorized_generators_pretty": [
                f"{name} = {op.pretty()}"
                for name, op in zip(self.generator_names, self.hilbert_generators)
            ],
        }


# ----------------------------------------------------------------------
# Heisenberg-Weyl group
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class HWElement:
    """Element g(a1, a2) of the abelian two-parameter translation group."""

    a1: float
    a2: float
    hbar: float = 1.0

    def __post_init__(self):
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")

    def compose(self, other: "HWElement") -> "HWElement":
        if self.hbar != other.hbar:
            raise ValueError("cannot compose elements with different hbar")
        return HWElement(self.a1 + other.a1, self.a2 + other.a2, self.hbar)

    def inverse(self) -> "HWElement":
        return HWElement(-self.a1, -self.a2, self.hbar)


def hw_generators() -> tuple:
    """Phase-space generators (α₁, α₂) = (−i∂q, i∂p); they commute."""
    return (
        DiffOp.deriv(PHASE_VARS, "q", coeff=-I),
        DiffOp.deriv(PHASE_VARS, "p", coeff=I),
    )


def hw_action(g: HWElement, F: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Translation action (Π(g)F)(q, p) = F(q + a1, p − a2).

    Both shifts must be lattice-aligned (a1 a multiple of dx, a2 of dp);
    the action is then an exact index permutation of the phase array.
    """
    F = np.asarray(F)
    if F.shape != grid.phase_shape:
        raise ValueError(f"phase array must have shape {grid.phase_shape}")
    t = _lattice_steps(g.a1, grid.dx)
    if t is None:
        raise ValueError(
            f"q-shift a1={g.a1} is not an integer multiple of dx={grid.dx}"
        )
    m2 = _lattice_steps(g.a2, grid.dp)
    if m2 is None:
        raise ValueError(
            f"p-shift a2={g.a2} is not an integer multiple of dp={grid.dp}"
        )
    out = np.roll(F, -2 * t, axis=0)
    return np.roll(out, m2, axis=1)


def hw_cocycle(g1: HWElement, g2: HWElement) -> float:
    """Phase χ with Π(g1)Π(g2) = e^{iχ} Π(g1·g2) in the factorised action.

    With the gauge ω ≡ 0 of :func:`hw_factorize`, χ(g1, g2) = g2.a2·g1.a1/ħ.
    χ is ordering-sensitive exactly when the shifts are crossed, which is
    how the commuting phase-space translations acquire non-commuting
    Hilbert lifts.
    """
    if g1.hbar != g2.hbar:
        raise ValueError("cocycle requires a common hbar")
    return g2.a2 * g1.a1 / g1.hbar


def hw_factorize(hbar=1) -> FactorizationResult:
    """Factorise the translation representation into the canonical pair.

    Returns Â₁ = p̂ = −iħ∂x and Â₂ = q̂ = x (gauge constants p₀ = q₀ = 0)
    and verifies [q̂, p̂] = iħ exactly.  ħ enters only through the
    two-point conjugation; the phase-space generators are ħ-free.
    """
    h = _exact_positive(hbar, "hbar")
    alpha1, alpha2 = hw_generators()
    _require_zero(alpha1.commutator(alpha2), "[alpha1, alpha2] = 0")
    p_hat = _scaled_factor(alpha1, h)
    q_hat = _scaled_factor(alpha2, h)
    _require_zero(
        q_hat.commutator(p_hat) - DiffOp.constant(LINE_VARS, I * CRat(h)),
        "[q_hat, p_hat] = i*hbar",
    )
    chi_12 = hw_cocycle(HWElement(1.0, 0.0, float(h)), HWElement(0.0, 1.0, float(h)))
    chi_21 = hw_cocycle(HWElement(0.0, 1.0, float(h)), HWElement(1.0, 0.0, float(h)))
    if chi_12 == chi_21:
        raise ArithmeticError("cocycle failed to distinguish crossed shifts")
    return FactorizationResult(
        example="heisenberg_weyl",
        generator_names=("p_hat", "q_hat"),
        hilbert_generators=(p_hat, q_hat),
        generators=(alpha1, alpha2),
        hilbert_action="u(x) -> exp(i*a2*x/hbar) * u(x + a1)  (phase omega fixed to 0)",
        cocycle_phase=0.0,
        additive_constants=(0.0, 0.0),
        relations_checked=(
            "[alpha1, alpha2] = 0",
            "[q_hat, p_hat] = i*hbar",
            "cocycle chi(g1, g2) = g2.a2*g1.a1/hbar distinguishes crossed shifts",
        ),
        max_residual=0.0,
        casimir_value=float(h),
        details={"hbar": float(h)},
    )


# ----------------------------------------------------------------------
# generalised Heisenberg tower
# ----------------------------------------------------------------------


def gen_heisenberg_tower(N: int) -> list:
    """Tower generators (β_n, B̂_n) for n = 1..N, with 1 ≤ N ≤ 8.

    β_n = (2/n!) Σ_m (i/2)^{n−m} C(n, m) q^m ∂p^{n−m}, the sum running
    over 0 ≤ m ≤ n with n − m odd; its factorised partner, recovered
    through the split/read-off pipeline, is B̂_n = x^n/n!.
    """
    if not isinstance(N, int) or not 1 <= N <= 8:
        raise ValueError("tower depth N must be an integer in [1, 8]")
    half_i = I * CRat(Fraction(1, 2))
    out = []
    for n in range(1, N + 1):
        terms = {}
        for m in range(n - 1, -1, -2):
            k = n - m
            coeff = CRat(Fraction(2, factorial(n))) * half_i**k * comb(n, m)
            terms[((m, 0), (0, k))] = coeff
        beta = DiffOp(PHASE_VARS, terms)
        a_hat = split_test(z_conjugate(beta)).require()
        symbol = read_off_generator(a_hat)
        b_hat = position_representation(nc_normalize(weyl_quantize(symbol)))
        out.append((beta, b_hat))
    return out


def tower_factorization(N: int = 4) -> FactorizationResult:
    """Exact closure report for the tower algebra {α₁, β_1..β_N}.

    The phase-space algebra closes as [−i∂q, β_n] = −i β_{n−1} with all
    β's mutually commuting; the factorised partners satisfy the same
    relations plus the central term [B̂₁, Â₁] = i that extends it.
    """
    pairs = gen_heisenberg_tower(N)
    alpha1 = DiffOp.deriv(PHASE_VARS, "q", coeff=-I)
    a1_hat = DiffOp.deriv(LINE_VARS, "x", coeff=-I)
    betas = [b for b, _ in pairs]
    b_hats = [bh for _, bh in pairs]
    for n in range(2, N + 1):
        _require_zero(
            alpha1.commutator(betas[n - 1]) + I * betas[n - 2],
            f"[alpha1, beta_{n}] = -i*beta_{n - 1}",
        )
        _require_zero(
            a1_hat.commutator(b_hats[n - 1]) + I * b_hats[n - 2],
            f"[A_1, B_{n}] = -i*B_{n - 1}",
        )
    _require_zero(alpha1.commutator(betas[0]), "[alpha1, beta_1] = 0")
    _require_zero(
        b_hats[0].commutator(a1_hat) - DiffOp.constant(LINE_VARS, I),
        "[B_1, A_1] = i",
    )
    for j in range(N):
        for k in range(j + 1, N):
            _require_zero(betas[j].commutator(betas[k]), "[beta_j, beta_k] = 0")
            _require_zero(b_hats[j].commutator(b_hats[k]), "[B_j, B_k] = 0")
    return FactorizationResult(
        example="heisenberg_tower",
        generator_names=("A_1",) + tuple(f"B_{n}" for n in range(1, N + 1)),
        hilbert_generators=(a1_hat,) + tuple(b_hats),
        generators=(alpha1,) + tuple(betas),
        hilbert_action="",
        cocycle_phase=0.0,
        additive_constants=tuple(0.0 for _ in range(N + 1)),
        relations_checked=(
            "[alpha1, beta_1] = 0",
            "[alpha1, beta_n] = -i*beta_(n-1) for 2 <= n <= N",
            "[beta_j, beta_k] = 0",
            "[A_1, B_n] = -i*B_(n-1) for 2 <= n <= N",
            "[B_j, B_k] = 0",
            "[B_1, A_1] = i  (central extension, hbar = 1)",
        ),
        max_residual=0.0,
        casimir_value=1.0,
        details={"depth": N},
    )


# ----------------------------------------------------------------------
# Galilei group
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class GalileiElement:
    """Element g(a1, a2, a3): time translation, boost velocity, position shift.

    The representation parameters m (mass) and ħ ride along with the
    element.  The third slot composes as a3 + b3 − b2·a1 — the sign that
    makes the phase-space pullback action a true representation.
    """

    a1: float
    a2: float
    a3: float
    m: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError("mass must be positive")
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")

    def compose(self, other: "GalileiElement") -> "GalileiElement":
        if self.m != other.m or self.hbar != other.hbar:
            raise ValueError("cannot compose elements with different m or hbar")
        return GalileiElement(
            self.a1 + other.a1,
            self.a2 + other.a2,
            self.a3 + other.a3 - other.a2 * self.a1,
            self.m,
            self.hbar,
        )

    def inverse(self) -> "GalileiElement":
        return GalileiElement(
            -self.a1, -self.a2, -self.a3 - self.a2 * self.a1, self.m, self.hbar
        )


def galilei_generators(m=1) -> tuple:
    """Generators α₁ = −i(p/m)∂q, α₂ = im∂p, α₃ = −i∂q (exact, m-free CRs)."""
    m = _exact_positive(m, "m")
    alpha1 = DiffOp(PHASE_VARS, {((0, 1), (1, 0)): -I * CRat(Fraction(1, 1) / m)})
    alpha2 = DiffOp.deriv(PHASE_VARS, "p", coeff=I * CRat(m))
    alpha3 = DiffOp.deriv(PHASE_VARS, "q", coeff=-I)
    return alpha1, alpha2, alpha3


def _galilei_unitary(g: GalileiElement, grid: GridSpec) -> np.ndarray:
    """Hilbert-space unitary implementing the point map on kernels.

    U = U_shear · U_translate · U_boost with U_boost = diag(e^{−ibx}) and
    the other factors spectral multipliers e^{−iωc}, e^{−iλω²/2} in the
    conjugate variable ω; λ = a1/m, c = a2·a1 + a3, b = m·a2.
    """
    lam = g.a1 / g.m
    c = g.a2 * g.a1 + g.a3
    b = g.m * g.a2
    omega = 2.0 * np.pi * np.fft.fftfreq(grid.n, grid.dx)
    U = np.diag(np.exp(-1j * b * grid.x)).astype(complex)
    mult = np.exp(-1j * c * omega) * np.exp(-1j * lam * omega**2 / 2.0)
    return np.fft.ifft(mult[:, None] * np.fft.fft(U, axis=0), axis=0)


def galilei_action(g: GalileiElement, F: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Point-map action (Π(g)F)(q, p) = F(q − (a1/m)p − a2·a1 − a3, p + m·a2).

    Shear-free, lattice-aligned elements act as exact index permutations;
    all other elements act through the band-limited kernel sandwich
    K -> U K U† (spectral resampling, exact for tail-free states).
    """
    F = np.asarray(F)
    if F.shape != grid.phase_shape:
        raise ValueError(f"phase array must have shape {grid.phase_shape}")
    c = g.a2 * g.a1 + g.a3
    b = g.m * g.a2
    if g.a1 == 0.0:
        tc = _lattice_steps(c, grid.dx)
        mb = _lattice_steps(b, grid.dp)
        if tc is not None and mb is not None:
            out = np.roll(F, 2 * tc, axis=0)
            return np.roll(out, -mb, axis=1)
    U = _galilei_unitary(g, grid)
    K = weyl_wigner_inv(F, grid)
    return weyl_wigner(U @ K @ U.conj().T, grid)


def _galilei_momentum_residual(m: float, grid: GridSpec) -> float:
    """Deviation of the grid action from the closed-form momentum ray action.

    A Gaussian packet is pushed through (i) the kernel sandwich behind
    :func:`galilei_action` and (ii) the momentum-space law
    u(r) -> e^{−i a1 r²/(2m)} e^{−i(a2·a1+a3) r} u(r + m·a2), evaluated by
    direct quadrature; the two rank-one kernels are compared entrywise
    (kernel level, so the arbitrary ray phase drops out).
    """
    g = GalileiElement(0.4, 0.35, -0.3, m=m)
    x = grid.x
    w, q0, r0 = 1.0, 0.25, 0.5
    psi = (w / np.pi) ** 0.25 * np.exp(-w * (x - q0) ** 2 / 2) * np.exp(1j * r0 * x)
    K0 = np.outer(psi, np.conj(psi))
    K_impl = z_inv(galilei_action(g, z_map(K0, grid), grid), grid)

    omega = 2.0 * np.pi * np.fft.fftfreq(grid.n, grid.dx)
    b = g.m * g.a2
    c = g.a2 * g.a1 + g.a3
    u_shift = (grid.dx / np.sqrt(2 * np.pi)) * np.exp(
        -1j * np.outer(omega + b, x)
    ) @ psi
    u_prime = np.exp(-1j * g.a1 * omega**2 / (2 * g.m)) * np.exp(-1j * c * omega) * u_shift
    d_omega = 2.0 * np.pi / (grid.n * grid.dx)
    psi_ray = (d_omega / np.sqrt(2 * np.pi)) * np.exp(1j * np.outer(x, omega)) @ u_prime
    K_ray = np.outer(psi_ray, np.conj(psi_ray))
    return float(np.max(np.abs(K_impl - K_ray)))


def galilei_factorize(m=1, hbar=1, grid: GridSpec | None = None) -> FactorizationResult:
    """Factorise the Galilei representation into Ĥ, K̂, p̂.

    Returns Ĥ = −(ħ²/2m)∂x², K̂ = m·x, p̂ = −iħ∂x (gauge constants
    e₀ = q₀ = p₀ = 0) and verifies the centrally extended relations
    [Ĥ, K̂] = −iħp̂, [Ĥ, p̂] = 0, [K̂, p̂] = iħm exactly.  When ħ = 1 the
    closed-form momentum-space ray action is also checked numerically
    against the grid action (the lattice engine is dimensionless, ħ = 1).
    """
    m_exact = _exact_positive(m, "m")
    h = _exact_positive(hbar, "hbar")
    alpha1, alpha2, alpha3 = galilei_generators(m_exact)
    _require_zero(
        alpha1.commutator(alpha2) + I * alpha3, "[alpha1, alpha2] = -i*alpha3"
    )
    _require_zero(alpha2.commutator(alpha3), "[alpha2, alpha3] = 0")
    _require_zero(alpha1.commutator(alpha3), "[alpha1, alpha3] = 0")

    h_hat = _scaled_factor(alpha1, h)
    k_hat = _scaled_factor(alpha2, h)
    p_hat = _scaled_factor(alpha3, h)
    _require_zero(
        h_hat.commutator(k_hat) + I * CRat(h) * p_hat,
        "[H_hat, K_hat] = -i*hbar*p_hat",
    )
    _require_zero(h_hat.commutator(p_hat), "[H_hat, p_hat] = 0")
    central = I * CRat(h * m_exact)
    _require_zero(
        k_hat.commutator(p_hat) - DiffOp.constant(LINE_VARS, central),
        "[K_hat, p_hat] = i*hbar*m",
    )

    residual = 0.0
    if h == 1:
        residual = _galilei_momentum_residual(float(m_exact), grid or GridSpec(128, 0.125))
        if residual > 1e-6:
            raise ArithmeticError(
                f"momentum-space ray action residual {residual:.3e} exceeds 1e-6"
            )
    return FactorizationResult(
        example="galilei",
        generator_names=("H_hat", "K_hat", "p_hat"),
        hilbert_generators=(h_hat, k_hat, p_hat),
        generators=(alpha1, alpha2, alpha3),
        hilbert_action=(
            "u(r) -> exp(-i*a1*r^2/(2m)) * exp(-i*(a2*a1 + a3)*r) * u(r + m*a2)"
            "  (momentum picture, phase omega fixed to 0)"
        ),
        cocycle_phase=0.0,
        additive_constants=(0.0, 0.0, 0.0),
        relations_checked=(
            "[alpha1, alpha2] = -i*alpha3",
            "[alpha2, alpha3] = 0",
            "[alpha1, alpha3] = 0",
            "[H_hat, K_hat] = -i*hbar*p_hat",
            "[H_hat, p_hat] = 0",
            "[K_hat, p_hat] = i*hbar*m  (central charge hbar*m)",
            "momentum-space ray action matches the grid action on a Gaussian",
        ),
        max_residual=residual,
        casimir_value=float(h * m_exact),
        details={"m": float(m_exact), "hbar": float(h)},
    )


# ----------------------------------------------------------------------
# sp(2, R), Cases A and B
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Sp2Params:
    """Which sp(2,R) representation to build: "A", or "B" with parameter a."""

    case: str
    a: object = None

    def __post_init__(self):
        if self.case not in ("A", "B"):
            raise ValueError('case must be "A" or "B"')
        if self.case == "B":
            if not isinstance(self.a, (int, Fraction)):
                raise ValueError("Case B requires an exact parameter a (int or Fraction)")
        elif self.a is not None:
            raise ValueError("Case A takes no parameter")


def sp2_symbols(params: Sp2Params) -> tuple:
    """Phase-space symbols A_i whose lifts are the sp(2,R) generators."""
    q, p = PolySymbol.q(), PolySymbol.p()
    if params.case == "A":
        half = Fraction(1, 2)
        quarter = Fraction(1, 4)
        return (
            PolySymbol.monomial(1, 1, half),
            q * q * quarter - p * p * quarter,
            q * q * quarter + p * p * quarter,
        )
    a_half = CRat(Fraction(params.a) / 2)
    half = Fraction(1, 2)
    qpp = PolySymbol.monomial(1, 2, half)
    a1 = q * half + p * a_half - qpp
    a2 = PolySymbol.monomial(1, 1)
    a3 = q * (-half) + p * a_half - qpp
    return a1, a2, a3


def _closure_shift(bracket: PolySymbol, target: PolySymbol, relation: str) -> CRat:
    """Constant k with bracket = target + k; the non-constant parts must match."""
    diff = bracket - target
    if not diff.without_constant().is_zero():
        raise ArithmeticError(
            f"sp(2,R) closure failed for {relation}: residual {diff}"
        )
    return diff.constant_term()


def sp2_generators(params: Sp2Params):
    """Generators and factorisation for an sp(2,R) case.

    Returns ``(alphas, result)``: the three phase-space generators
    α_i = ξ(A_i) (exactly the tabulated forms, including the third-order
    derivative terms in Case B), and a :class:`FactorizationResult` whose
    Hilbert operators Â_i are the Weyl quantizations of A_i shifted by
    the unique constants that close the algebra without central terms.
    The quadratic Casimir −Â₁² − Â₂² + Â₃² is evaluated exactly and must
    be a scalar: −3/16 for Case A, −(a² + 1)/4 for Case B.
    """
    syms = sp2_symbols(params)
    alphas = tuple(xi_lift(s) for s in syms)
    _require_zero(
        alphas[0].commutator(alphas[1]) + I * alphas[2], "[alpha1, alpha2] = -i*alpha3"
    )
    _require_zero(
        alphas[1].commutator(alphas[2]) - I * alphas[0], "[alpha2, alpha3] = i*alpha1"
    )
    _require_zero(
        alphas[2].commutator(alphas[0]) - I * alphas[1], "[alpha3, alpha1] = i*alpha2"
    )

    # The Weyl correspondence sends the bracket {A, B} to −i[Â, B̂], so the
    # target relations pin each Â_i's additive constant:
    #   {A2, A3} = A1 + k1,  {A3, A1} = A2 + k2,  {A1, A2} = −A3 − k3.
    a1, a2, a3 = syms
    k1 = _closure_shift(moyal_symbolic(a2, a3), a1, "{A2, A3} = A1 + k1")
    k2 = _closure_shift(moyal_symbolic(a3, a1), a2, "{A3, A1} = A2 + k2")
    k3 = -_closure_shift(moyal_symbolic(a1, a2), -a3, "{A1, A2} = -A3 - k3")
    shifts = (k1, k2, k3)
    shifted = tuple(s + PolySymbol.constant(k) for s, k in zip(syms, shifts))
    a_hats = tuple(
        position_representation(nc_normalize(weyl_quantize(s))) for s in shifted
    )
    _require_zero(
        a_hats[0].commutator(a_hats[1]) + I * a_hats[2], "[A_1, A_2] = -i*A_3"
    )
    _require_zero(
        a_hats[1].commutator(a_hats[2]) - I * a_hats[0], "[A_2, A_3] = i*A_1"
    )
    _require_zero(
        a_hats[2].commutator(a_hats[0]) - I * a_hats[1], "[A_3, A_1] = i*A_2"
    )

    casimir = (
        -(a_hats[0] * a_hats[0]) - a_hats[1] * a_hats[1] + a_hats[2] * a_hats[2]
    )
    value = casimir.constant_part()
    if casimir != DiffOp.constant(LINE_VARS, value):
        raise ArithmeticError("quadratic Casimir is not a scalar")
    if not value.is_real():
        raise ArithmeticError(f"quadratic Casimir {value} is not real")

    label = f"sp2_case_{params.case}"
    result = FactorizationResult(
        example=label,
        generator_names=("A_1", "A_2", "A_3"),
        hilbert_generators=a_hats,
        generators=alphas,
        hilbert_action="",
        cocycle_phase=0.0,
        additive_constants=(0.0, 0.0, 0.0),
        relations_checked=(
            "[alpha1, alpha2] = -i*alpha3",
            "[alpha2, alpha3] = i*alpha1",
            "[alpha3, alpha1] = i*alpha2",
            "[A_1, A_2] = -i*A_3",
            "[A_2, A_3] = i*A_1",
            "[A_3, A_1] = i*A_2",
            "-A_1^2 - A_2^2 + A_3^2 is a scalar",
        ),
        max_residual=0.0,
        casimir_value=value,
        details={
            "closure_shifts": tuple(str(k) for k in shifts),
            "symbols": tuple(str(s) for s in syms),
            **({"a": str(Fraction(params.a))} if params.case == "B" else {}),
        },
    )
    return alphas, result


# ----------------------------------------------------------------------
# time reversal
# ----------------------------------------------------------------------


def time_reversal_check(grid: GridSpec | None = None, count: int = 20, rng=None) -> dict:
    """Verify the two-element momentum-reversal group and its factorisation.

    Checks, on random kernels:

    * Π(g)² = identity, exactly (the action is an index permutation);
    * for Hermitian kernels f (real phase functions), the factorised
      action is plain conjugation: z_inv(parity(z_map(f))) = conj(f);
    * for arbitrary complex kernels, the antiunitary composite
      z_inv(parity(conj(z_map(f)))) = conj(f);
    * real symmetric kernels are fixed points.

    Returns the JSON verification report.
    """
    grid = grid or GridSpec(64, 0.25)
    rng = np.random.default_rng(rng)
    n = grid.n

    def random_complex():
        return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))

    involution = 0.0
    hermitian_law = 0.0
    composite_law = 0.0
    fixed_point = 0.0
    for _ in range(count):
        raw = random_complex()
        herm = (raw + raw.conj().T) / 2
        F = z_map(herm, grid)
        involution = max(involution, float(np.max(np.abs(parity(parity(F, grid), grid) - F))))
        back = z_inv(parity(F, grid), grid)
        hermitian_law = max(hermitian_law, float(np.max(np.abs(back - herm.conj()))))

        arbitrary = random_complex()
        composite = z_inv(parity(np.conj(z_map(arbitrary, grid)), grid), grid)
        composite_law = max(
            composite_law, float(np.max(np.abs(composite - arbitrary.conj())))
        )

        sym = rng.standard_normal((n, n))
        sym = (sym + sym.T) / 2
        fixed = z_inv(parity(z_map(sym, grid), grid), grid)
        fixed_point = max(fixed_point, float(np.max(np.abs(fixed - sym))))

    return {
        "example": "time_reversal",
        "relations_checked": [
            "Pi(g)^2 = identity (exact index permutation)",
            "hermitian kernels: z_inv(parity(z_map(f))) = conj(f)",
            "complex kernels: z_inv(parity(conj(z_map(f)))) = conj(f)",
            "real symmetric kernels are fixed points",
        ],
        "max_residual": max(involution, hermitian_law, composite_law, fixed_point),
        "casimir_value": None,
        "factorized_generators_pretty": [
            "Pi(g) = exp(i*omega) * C  (C = complex conjugation, omega fixed to 0)"
        ],
    }
