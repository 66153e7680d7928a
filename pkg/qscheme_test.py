import math

import numpy as np
import pytest

from errors import DimensionError, DomainError, ResidueError
from gamedef import hawk_dove_game, prisoners_dilemma_game
from qmat import X, ComplexMatrix, StateVector, is_unitary, outer, trace
from qscheme import (BELL_PLUS, DOVE, DOVE_ANGLES, ENTANGLER, HAWK, LABEL_ANGLES, MW_I_PHASE, QUANTUM,
                     RANDOM, InitialState, Mixture, Parametrized, PayoffOperators, QuantumGameSpec,
                     RawUnitary, Scheme, StateTag, closed_form_angle_payoff, eisert_final_density,
                     eisert_final_state, evaluate_cell, expected_payoffs, extended_payoff_table,
                     identity_x_mixture, mw_final_density, mw_mixed_payoff, parse_strategies,
                     parse_strategy, payoff_operators, u_theta_phi)

HD_OPS = payoff_operators(hawk_dove_game())
PD_OPS = payoff_operators(prisoners_dilemma_game())


def test_u_theta_phi_corners():
    np.testing.assert_allclose(u_theta_phi(0, 0).entries, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(u_theta_phi(math.pi, 0).entries, [[0, 1], [-1, 0]], atol=1e-15)
    np.testing.assert_allclose(u_theta_phi(0, math.pi / 2).entries, [[1j, 0], [0, -1j]], atol=1e-15)


@pytest.mark.parametrize("theta,phi", [(-0.1, 0), (math.pi + 0.01, 0), (0, -0.2), (0, math.pi)])
def test_u_theta_phi_domain(theta, phi):
    with pytest.raises(DomainError):
        u_theta_phi(theta, phi)


def test_u_theta_phi_is_unitary_on_its_domain():
    rng = np.random.default_rng(11)
    for theta, phi in zip(rng.uniform(0, math.pi, 100), rng.uniform(0, math.pi / 2, 100)):
        assert is_unitary(u_theta_phi(theta, phi), 1e-12)


def test_entangler_prepares_i_phase_state():
    state = StateVector.basis("00").apply(ENTANGLER)
    np.testing.assert_allclose(state.amplitudes, MW_I_PHASE.vector().amplitudes, atol=1e-15)


def test_strategy_validation():
    with pytest.raises(DomainError):
        RawUnitary(ComplexMatrix.from_rows([[1, 1], [0, 1]]))
    with pytest.raises(DimensionError):
        RawUnitary(ComplexMatrix.identity(4))
    with pytest.raises(DomainError):
        Mixture(((0.7, HAWK), (0.7, DOVE)))
    with pytest.raises(DomainError):
        Mixture(((1.5, HAWK), (-0.5, DOVE)))
    with pytest.raises(DomainError):
        Mixture(((1.0, RANDOM),))
    with pytest.raises(DomainError):
        identity_x_mixture(1.2)


def test_mixture_drops_zero_weights():
    assert len(identity_x_mixture(1.0).components()) == 1
    assert len(RANDOM.components()) == 2


def test_parse_strategy_labels_and_literals():
    assert parse_strategy("H") is HAWK
    assert parse_strategy("C") is HAWK
    assert parse_strategy("D") is DOVE
    assert parse_strategy("Q") is QUANTUM
    assert parse_strategy("R") is RANDOM
    literal = parse_strategy("u(pi/2, pi/4)")
    assert isinstance(literal, Parametrized)
    assert literal.theta == pytest.approx(math.pi / 2)
    assert literal.phi == pytest.approx(math.pi / 4)
    with pytest.raises(DomainError):
        parse_strategy("Z")
    with pytest.raises(DomainError):
        parse_strategy("u(__import__('os'),0)")


def test_parse_strategies_keeps_literal_commas():
    labels = [label for label, _ in parse_strategies("H, u(pi,0), Q")]
    assert labels == ["H", "u(pi,0)", "Q"]
    with pytest.raises(DomainError):
        parse_strategies(" , ")


def test_custom_initial_state():
    with pytest.raises(DomainError):
        InitialState(StateTag.CUSTOM)
    with pytest.raises(DomainError):
        InitialState(StateTag.BELL_PLUS, StateVector.basis("00"))
    custom = InitialState(StateTag.CUSTOM, StateVector.basis("01"))
    assert custom.density()[1, 1] == 1


def test_payoff_operators_must_be_diagonal():
    with pytest.raises(DomainError):
        PayoffOperators(ComplexMatrix.identity(4), ComplexMatrix.from_rows(np.ones((4, 4))))
    with pytest.raises(DimensionError):
        PayoffOperators(ComplexMatrix.identity(2), ComplexMatrix.identity(4))
    np.testing.assert_allclose(HD_OPS.p_a.diagonal(), [-25, 50, 0, 15])
    np.testing.assert_allclose(HD_OPS.p_b.diagonal(), [-25, 0, 50, 15])


def test_expected_payoffs_rejects_imaginary_residue():
    rho = ComplexMatrix.diag([0.5j, 0.5, 0.5, 0])
    with pytest.raises(ResidueError):
        expected_payoffs(rho, HD_OPS)


def test_mw_final_density_has_unit_trace():
    rho = mw_final_density(MW_I_PHASE, RANDOM, QUANTUM)
    assert trace(rho).real == pytest.approx(1.0)
    assert rho.is_hermitian()


@pytest.mark.parametrize("a,b,expected", [
    ("I", "I", "00"),
    ("I", "Q", "11"),
    ("Q", "I", "11"),
    ("X", "X", "11"),
    ("I", "X", "01"),
    ("X", "I", "10"),
    ("X", "Q", "01"),
    ("Q", "X", "10"),
    ("Q", "Q", "00"),
])
def test_eisert_outcomes(a, b, expected):
    ops = {"I": HAWK.unitary(), "X": X, "Q": QUANTUM.unitary()}
    state = eisert_final_state(ops[a], ops[b])
    probs = state.probabilities()
    assert probs[int(expected, 2)] == pytest.approx(1.0)


def test_eisert_rejects_non_unitary():
    with pytest.raises(DomainError):
        eisert_final_state(ComplexMatrix.from_rows([[1, 1], [0, 1]]), X)


def test_quantum_prisoners_dilemma_table():
    spec = QuantumGameSpec(Scheme.EISERT, PD_OPS)
    table = extended_payoff_table(spec, parse_strategies("C,D,Q"))
    np.testing.assert_allclose(table.payoffs, [
        [[3, 3], [0, 5], [1, 1]],
        [[5, 0], [1, 1], [0, 5]],
        [[1, 1], [5, 0], [3, 3]],
    ], atol=1e-12)


def test_quantum_hawk_dove_table():
    spec = QuantumGameSpec(Scheme.EISERT, HD_OPS)
    table = extended_payoff_table(spec, parse_strategies("H,D,Q"), max_workers=1)
    np.testing.assert_allclose(table.payoffs, [
        [[-25, -25], [50, 0], [15, 15]],
        [[0, 50], [15, 15], [50, 0]],
        [[15, 15], [0, 50], [-25, -25]],
    ], atol=1e-12)


def test_dove_sign_matters_only_for_eisert():
    eisert = QuantumGameSpec(Scheme.EISERT, PD_OPS)
    # u(pi,0) = ZX flips the odd-parity cells
    assert evaluate_cell(eisert, HAWK, DOVE_ANGLES) == pytest.approx((5.0, 0.0))
    assert evaluate_cell(eisert, HAWK, DOVE) == pytest.approx((0.0, 5.0))
    mw = QuantumGameSpec(Scheme.MARINATTO_WEBER, PD_OPS, BELL_PLUS)
    assert evaluate_cell(mw, HAWK, DOVE_ANGLES) == pytest.approx(evaluate_cell(mw, HAWK, DOVE))


def test_marinatto_weber_random_row():
    spec = QuantumGameSpec(Scheme.MARINATTO_WEBER, HD_OPS, BELL_PLUS)
    table = extended_payoff_table(spec, parse_strategies("H,D,Q,R"))
    np.testing.assert_allclose(table.a[3], [10, 10, 10, 10], atol=1e-12)
    assert table.cell(0, 1) == pytest.approx((25.0, 25.0))
    assert table.cell(0, 0) == pytest.approx((-5.0, -5.0))
    assert table.is_symmetric()


def test_mw_mixed_payoff_matches_polynomial():
    rng = np.random.default_rng(3)
    for p, q in rng.uniform(0, 1, (25, 2)):
        a, b = mw_mixed_payoff(HD_OPS, BELL_PLUS, p, q)
        assert a == pytest.approx(-60 * p * q + 30 * (p + q) - 5)
        assert b == pytest.approx(a)
        a, _ = mw_mixed_payoff(PD_OPS, BELL_PLUS, p, q)
        assert a == pytest.approx(0.5 * (4 - 2 * p * q + p + q))


def test_eisert_accepts_mixtures():
    rho = eisert_final_density(RANDOM, HAWK)
    expected = 0.5 * outer(StateVector.basis("00")).entries + 0.5 * outer(StateVector.basis("10")).entries
    np.testing.assert_allclose(rho.entries, expected, atol=1e-12)


def test_closed_form_matches_bob_on_labelled_strategies():
    spec = QuantumGameSpec(Scheme.EISERT, HD_OPS)
    strategies = dict(parse_strategies("H,D,Q"))
    for la, sa in strategies.items():
        for lb, sb in strategies.items():
            bob = evaluate_cell(spec, sa, sb)[1]
            assert closed_form_angle_payoff(*LABEL_ANGLES[la], *LABEL_ANGLES[lb]) == pytest.approx(bob, abs=1e-9)


def test_closed_form_is_not_alice_payoff():
    spec = QuantumGameSpec(Scheme.EISERT, HD_OPS)
    alice = evaluate_cell(spec, HAWK, DOVE)[0]
    assert alice == pytest.approx(50.0)
    assert closed_form_angle_payoff(*LABEL_ANGLES["H"], *LABEL_ANGLES["D"]) == pytest.approx(0.0)


def test_empty_strategy_list():
    with pytest.raises(DomainError):
        extended_payoff_table(QuantumGameSpec(Scheme.EISERT, HD_OPS), [])


def test_closed_form_corner_values():
    assert closed_form_angle_payoff(0, 0, 0, 0) == pytest.approx(-25)
    assert closed_form_angle_payoff(math.pi, 0, math.pi, 0) == pytest.approx(15)


def test_prisoners_dilemma_operators():
    np.testing.assert_allclose(PD_OPS.p_a.diagonal(), [3, 0, 5, 1])
    np.testing.assert_allclose(PD_OPS.p_b.diagonal(), [3, 5, 0, 1])


def random_unitary(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return ComplexMatrix(q * (np.diag(r) / np.abs(np.diag(r))))


def random_mixture(rng):
    w = rng.uniform(0, 1)
    first = Parametrized(rng.uniform(0, math.pi), rng.uniform(0, math.pi / 2))
    second = RawUnitary(random_unitary(rng))
    return Mixture(((w, first), (1 - w, second)))


def test_parse_strategies_nested_parentheses():
    parsed = parse_strategies("H, u((pi)/2, (pi/4)), D")
    assert [label for label, _ in parsed] == ["H", "u((pi)/2,(pi/4))", "D"]
    literal = parsed[1][1]
    assert (literal.theta, literal.phi) == pytest.approx((math.pi / 2, math.pi / 4))


@pytest.mark.parametrize("text", ["H,H", "H, D, H", "u(pi,0),u(pi, 0)"])
def test_parse_strategies_rejects_repeated_labels(text):
    with pytest.raises(DomainError) as info:
        parse_strategies(text)
    assert info.value.field == "strategies"


def test_mw_from_basis_state_reproduces_classical_game():
    for game in (hawk_dove_game(), prisoners_dilemma_game()):
        start = InitialState(StateTag.CUSTOM, StateVector.basis("00"))
        spec = QuantumGameSpec(Scheme.MARINATTO_WEBER, payoff_operators(game), start)
        table = extended_payoff_table(spec, parse_strategies("H,D"), max_workers=1)
        np.testing.assert_allclose(table.payoffs, game.payoffs, atol=1e-12)


def test_random_mixtures_give_unit_trace_hermitian_densities():
    rng = np.random.default_rng(29)
    for _ in range(30):
        s_a, s_b = random_mixture(rng), random_mixture(rng)
        for rho in (mw_final_density(MW_I_PHASE, s_a, s_b), mw_final_density(BELL_PLUS, s_a, s_b),
                    eisert_final_density(s_a, s_b)):
            assert abs(trace(rho) - 1) <= 1e-12
            assert rho.is_hermitian(1e-12)
            assert np.linalg.eigvalsh(rho.entries).min() >= -1e-12


def test_eisert_final_state_stays_normalized():
    rng = np.random.default_rng(31)
    for _ in range(50):
        state = eisert_final_state(random_unitary(rng), random_unitary(rng))
        assert abs(np.sum(state.probabilities()) - 1) <= 1e-12
