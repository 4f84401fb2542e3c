"""Group representations on phase space and their Hilbert factorizations."""

import math
from fractions import Fraction

import numpy as np
import pytest

from weylkit import (
    CRat,
    DiffOp,
    GalileiElement,
    GridSpec,
    HWElement,
    I,
    NCPoly,
    PolySymbol,
    Sp2Params,
    galilei_action,
    galilei_factorize,
    galilei_generators,
    gen_heisenberg_tower,
    hermite_basis,
    hw_action,
    hw_cocycle,
    hw_factorize,
    hw_generators,
    position_representation,
    sp2_generators,
    sp2_symbols,
    time_reversal_check,
    tower_factorization,
    wigner_of_state,
    xi_lift,
)
from weylkit.lift import LINE_VARS


# ----------------------------------------------------------------------
# coordinate realisation
# ----------------------------------------------------------------------


def test_position_representation_word_order_and_hbar():
    x_op = DiffOp.mult(LINE_VARS, "x")
    dx = DiffOp.deriv(LINE_VARS, "x")
    qp = NCPoly.from_word("qp")
    pq = NCPoly.from_word("pq")
    assert position_representation(qp) == x_op * dx * (-I)
    assert position_representation(pq) == x_op * dx * (-I) + DiffOp.constant(
        LINE_VARS, -I
    )
    assert position_representation(NCPoly.p(), hbar=2) == dx * CRat(0, -2)
    with pytest.raises(ValueError):
        position_representation(NCPoly.q(), hbar=0.5)


# ----------------------------------------------------------------------
# translation group
# ----------------------------------------------------------------------


def test_hw_element_group_laws():
    g = HWElement(1.0, -2.0)
    h = HWElement(0.5, 3.0)
    assert g.compose(h) == HWElement(1.5, 1.0)
    assert g.compose(g.inverse()) == HWElement(0.0, 0.0)
    with pytest.raises(ValueError):
        g.compose(HWElement(0.0, 0.0, hbar=2.0))
    with pytest.raises(ValueError):
        HWElement(0.0, 0.0, hbar=-1.0)


def test_hw_generators_commute():
    a1, a2 = hw_generators()
    assert a1.commutator(a2).is_zero()


def test_hw_action_is_an_exact_lattice_translation():
    grid = GridSpec(64, 0.25)
    e0 = hermite_basis(grid, 1)[0]
    W = wigner_of_state(e0, grid)
    g = HWElement(4 * grid.dx, 2 * grid.dp)
    moved = hw_action(g, W, grid)
    # (Π(g)W)(q, p) = W(q + a1, p − a2): a Gaussian recentred at (−a1, a2)
    q, p = grid.q_matrix(), grid.p_matrix()
    expected = np.exp(-((q + g.a1) ** 2) - (p - g.a2) ** 2) / math.pi
    expected[-1] = 0.0
    assert np.max(np.abs(moved - expected)) < 1e-8
    # pure translations compose exactly
    h = HWElement(-2 * grid.dx, 3 * grid.dp)
    assert np.array_equal(
        hw_action(h, hw_action(g, W, grid), grid),
        hw_action(g.compose(h), W, grid),
    )


def test_hw_action_rejects_off_lattice_shifts():
    grid = GridSpec(16, 0.5)
    F = np.zeros(grid.phase_shape)
    with pytest.raises(ValueError, match="a1"):
        hw_action(HWElement(0.3, 0.0), F, grid)
    with pytest.raises(ValueError, match="a2"):
        hw_action(HWElement(0.5, 0.1), F, grid)
    with pytest.raises(ValueError):
        hw_action(HWElement(0.0, 0.0), F[:4], grid)


def test_hw_cocycle_detects_crossed_shifts():
    g = HWElement(1.0, 0.0)
    h = HWElement(0.0, 1.0)
    assert hw_cocycle(g, h) != hw_cocycle(h, g)
    assert hw_cocycle(g, h) - hw_cocycle(h, g) == pytest.approx(1.0)
    # χ(g1, g2) = g2.a2 · g1.a1 / ħ
    scaled = hw_cocycle(HWElement(1.0, 0.0, 2.0), HWElement(0.0, 1.0, 2.0))
    assert scaled == pytest.approx(0.5)
    assert hw_cocycle(HWElement(0.0, 1.0, 2.0), HWElement(1.0, 0.0, 2.0)) == (
        pytest.approx(0.0)
    )
    with pytest.raises(ValueError):
        hw_cocycle(g, HWElement(0.0, 0.0, hbar=2.0))


def test_hw_factorization_is_exact():
    for hbar in (1, 2, Fraction(1, 2)):
        result = hw_factorize(hbar)
        assert result.max_residual == 0.0
        p_hat, q_hat = result.hilbert_generators
        assert q_hat == DiffOp.mult(LINE_VARS, "x")
        assert p_hat == DiffOp.deriv(LINE_VARS, "x", coeff=-I * CRat(Fraction(hbar)))
        assert q_hat.commutator(p_hat) == DiffOp.constant(
            LINE_VARS, I * CRat(Fraction(hbar))
        )
        assert result.casimir_value == float(hbar)
    report = hw_factorize().report()
    assert report["example"] == "heisenberg_weyl"
    assert report["casimir_value"] == 1.0
    assert len(report["factorized_generators_pretty"]) == 2
    with pytest.raises(ValueError):
        hw_factorize(hbar=0)


# ----------------------------------------------------------------------
# generalised tower
# ----------------------------------------------------------------------


def test_tower_generators_are_lifted_monomials():
    pairs = gen_heisenberg_tower(6)
    for n, (beta, b_hat) in enumerate(pairs, start=1):
        weight = Fraction(1, math.factorial(n))
        assert beta == xi_lift(PolySymbol.monomial(n, 0, weight))
        assert b_hat == DiffOp.mult(LINE_VARS, "x", power=n, coeff=weight)


def test_tower_depth_validation():
    for bad in (0, 9, 2.5):
        with pytest.raises(ValueError):
            gen_heisenberg_tower(bad)


def test_tower_factorization_report():
    result = tower_factorization(4)
    assert result.max_residual == 0.0
    assert result.casimir_value == 1.0
    assert result.generator_names == ("A_1", "B_1", "B_2", "B_3", "B_4")
    assert any("central extension" in r for r in result.relations_checked)


# ----------------------------------------------------------------------
# Galilei group
# ----------------------------------------------------------------------


def test_galilei_element_group_laws():
    g = GalileiElement(1.0, 0.5, -2.0)
    h = GalileiElement(-0.5, 1.5, 0.25)
    k = GalileiElement(2.0, -1.0, 1.0)
    assert g.compose(g.inverse()) == GalileiElement(0.0, 0.0, 0.0)
    left = g.compose(h).compose(k)
    right = g.compose(h.compose(k))
    assert left == pytest.approx(right, abs=0) or left == right
    # the third slot twists: a3 + b3 − b2·a1
    assert g.compose(h).a3 == pytest.approx(-2.0 + 0.25 - 1.5 * 1.0)
    with pytest.raises(ValueError):
        GalileiElement(0.0, 0.0, 0.0, m=-1.0)
    with pytest.raises(ValueError):
        g.compose(GalileiElement(0.0, 0.0, 0.0, m=2.0))


def test_galilei_generator_relations():
    for m in (1, 3):
        a1, a2, a3 = galilei_generators(m)
        assert a1.commutator(a2) == a3 * (-I)
        assert a2.commutator(a3).is_zero()
        assert a1.commutator(a3).is_zero()


def test_galilei_pure_translations_match_hw_action():
    # with no time step the point map is F(q − a3, p + m·a2): exactly the
    # translation action with (a1, a2) -> (−a3, −m·a2); both are rolls
    grid = GridSpec(32, 0.25)
    rng = np.random.default_rng(51)
    from weylkit import weyl_wigner

    K = rng.standard_normal((32, 32)) + 1j * rng.standard_normal((32, 32))
    F = weyl_wigner(K, grid)
    g = GalileiElement(0.0, 2 * grid.dp, 3 * grid.dx, m=1.0)
    expected = hw_action(HWElement(-g.a3, -g.m * g.a2), F, grid)
    assert np.array_equal(galilei_action(g, F, grid), expected)


def test_galilei_shear_matches_free_packet_evolution():
    # closed-form free evolution of a Gaussian packet (m = ħ = 1):
    # ψ_t(x) = (w/π)^{1/4} s^{−1/2} exp(−w(x−q0−r0 t)²/(2s)) e^{i(r0 x − r0² t/2)},
    # s = 1 + i w t; the sheared Wigner function must match W(ψ_t)
    grid = GridSpec(128, 0.125)
    w, q0, r0, t = 1.0, 0.25, 0.5, 0.4
    x = grid.x
    psi0 = (w / math.pi) ** 0.25 * np.exp(-w * (x - q0) ** 2 / 2) * np.exp(
        1j * r0 * x
    )
    s = 1 + 1j * w * t
    psi_t = (
        (w / math.pi) ** 0.25
        / np.sqrt(s)
        * np.exp(-w * (x - q0 - r0 * t) ** 2 / (2 * s))
        * np.exp(1j * (r0 * x - r0**2 * t / 2))
    )
    sheared = galilei_action(
        GalileiElement(t, 0.0, 0.0), wigner_of_state(psi0, grid), grid
    )
    assert np.max(np.abs(sheared - wigner_of_state(psi_t, grid))) < 1e-9


def test_galilei_action_validation():
    grid = GridSpec(16, 0.5)
    with pytest.raises(ValueError):
        galilei_action(GalileiElement(0.0, 0.0, 0.0), np.zeros((4, 4)), grid)


def test_galilei_factorization_exact_relations():
    for m in (1, 3):
        result = galilei_factorize(m=m)
        h_hat, k_hat, p_hat = result.hilbert_generators
        assert k_hat == DiffOp.mult(LINE_VARS, "x", coeff=m)
        assert p_hat == DiffOp.deriv(LINE_VARS, "x", coeff=-I)
        assert h_hat == DiffOp.deriv(
            LINE_VARS, "x", power=2, coeff=CRat(Fraction(-1, 2 * m))
        )
        assert k_hat.commutator(p_hat) == DiffOp.constant(LINE_VARS, I * CRat(m))
        assert result.casimir_value == float(m)
        assert result.max_residual < 1e-6


def test_galilei_factorization_hbar_scaling():
    result = galilei_factorize(m=1, hbar=2)
    h_hat, k_hat, p_hat = result.hilbert_generators
    assert p_hat == DiffOp.deriv(LINE_VARS, "x", coeff=CRat(0, -2))
    assert h_hat == DiffOp.deriv(LINE_VARS, "x", power=2, coeff=CRat(-2))
    assert result.casimir_value == 2.0
    # the grid ray check only runs in the dimensionless setting
    assert result.max_residual == 0.0
    with pytest.raises(ValueError):
        galilei_factorize(m=0.5)


# ----------------------------------------------------------------------
# sp(2, R)
# ----------------------------------------------------------------------


def test_sp2_params_validation():
    with pytest.raises(ValueError):
        Sp2Params("C")
    with pytest.raises(ValueError):
        Sp2Params("B", 0.5)
    with pytest.raises(ValueError):
        Sp2Params("B")
    with pytest.raises(ValueError):
        Sp2Params("A", 1)
    assert Sp2Params("B", Fraction(3, 2)).a == Fraction(3, 2)


def test_sp2_case_a_symbols_and_casimir():
    q, p = PolySymbol.q(), PolySymbol.p()
    syms = sp2_symbols(Sp2Params("A"))
    assert syms[0] == PolySymbol.monomial(1, 1, Fraction(1, 2))
    assert syms[1] == (q * q - p * p) * Fraction(1, 4)
    assert syms[2] == (q * q + p * p) * Fraction(1, 4)
    alphas, result = sp2_generators(Sp2Params("A"))
    assert result.casimir_value == CRat(Fraction(-3, 16))
    assert result.details["closure_shifts"] == ("0", "0", "0")
    # Â₁ = −(i/2)(x ∂x + 1/2)
    expected = DiffOp(
        LINE_VARS,
        {((1,), (1,)): CRat(0, Fraction(-1, 2)), ((0,), (0,)): CRat(0, Fraction(-1, 4))},
    )
    assert result.hilbert_generators[0] == expected


def test_sp2_case_a_lifted_generators():
    alphas, _ = sp2_generators(Sp2Params("A"))
    # α₁ = ξ(qp/2) = (i/2)(p∂p − q∂q)
    expected = DiffOp(
        ("q", "p"),
        {
            ((0, 1), (0, 1)): CRat(0, Fraction(1, 2)),
            ((1, 0), (1, 0)): CRat(0, Fraction(-1, 2)),
        },
    )
    assert alphas[0] == expected
    # closure of the lifted algebra
    assert alphas[0].commutator(alphas[1]) == alphas[2] * (-I)
    assert alphas[1].commutator(alphas[2]) == alphas[0] * I
    assert alphas[2].commutator(alphas[0]) == alphas[1] * I


@pytest.mark.parametrize("a", [0, 1, 2, Fraction(3, 2)])
def test_sp2_case_b_casimir_tracks_the_parameter(a):
    _, result = sp2_generators(Sp2Params("B", a))
    expected = CRat(-(Fraction(a) ** 2 + 1) / 4)
    assert result.casimir_value == expected
    assert result.max_residual == 0.0
    shift = result.details["closure_shifts"]
    assert shift == ("0", str(CRat(-Fraction(a) / 2)), "0")


def test_sp2_case_b_lifts_have_third_order_terms():
    alphas, _ = sp2_generators(Sp2Params("B", 1))
    assert max(a.derivative_order() for a in alphas) == 3


def test_sp2_report_shape():
    _, result = sp2_generators(Sp2Params("B", 2))
    report = result.report()
    assert report["example"] == "sp2_case_B"
    assert report["casimir_value"] == -1.25
    assert len(report["factorized_generators_pretty"]) == 3


# ----------------------------------------------------------------------
# time reversal
# ----------------------------------------------------------------------


def test_time_reversal_laws_hold_to_machine_precision():
    report = time_reversal_check(count=5, rng=7)
    assert report["max_residual"] < 1e-12
    assert report["casimir_value"] is None
    assert len(report["relations_checked"]) == 4


def test_time_reversal_is_deterministic_given_a_seed():
    r1 = time_reversal_check(count=3, rng=11)
    r2 = time_reversal_check(count=3, rng=11)
    assert r1 == r2
