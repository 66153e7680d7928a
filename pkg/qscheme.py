# qscheme.py
"""Quantum game engine for two-qubit games.

Two quantization schemes are supported:

- Marinatto-Weber (MW): players apply (possibly mixed) local unitaries to a
  shared entangled density matrix rho_in; the final density is the
  probability-weighted sum of (u_a x u_b) rho_in (u_a x u_b)^dagger.
- Eisert: |00> is entangled by J = (I x I + i X x X)/sqrt(2), the players act
  locally, and J^dagger disentangles before measurement. J|00> equals the
  (|00> + i|11>)/sqrt(2) state used by the MW scheme.

Payoffs are expectations of diagonal payoff operators, Tr(P rho_f).
"""
import ast
import logging
import math
import operator
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum, auto
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

import config
from errors import DimensionError, DomainError, ResidueError
from gamedef import StrategicGame
from qmat import (I4, X, ComplexMatrix, StateVector, adjoint, conjugate, is_unitary,
                  kron, matmul, outer, trace)

logger = logging.getLogger(__name__)

ANGLE_TOL = 1e-12
MIXTURE_TOL = 1e-9
RAW_UNITARY_TOL = 1e-9


class Scheme(Enum):
    MARINATTO_WEBER = auto()
    EISERT = auto()


class StateTag(Enum):
    MW_I_PHASE = auto()  # (|00> + i|11>)/sqrt(2)
    BELL_PLUS = auto()  # (|00> + |11>)/sqrt(2)
    CUSTOM = auto()


# ---------- strategies ----------

def u_theta_phi(theta: float, phi: float) -> ComplexMatrix:
    if not (-ANGLE_TOL <= theta <= math.pi + ANGLE_TOL):
        raise DomainError(f"theta must lie in [0, pi], got {theta!r}", field="theta")
    if not (-ANGLE_TOL <= phi <= math.pi / 2 + ANGLE_TOL):
        raise DomainError(f"phi must lie in [0, pi/2], got {phi!r}", field="phi")
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return ComplexMatrix.from_rows([
        [np.exp(1j * phi) * c, s],
        [-s, np.exp(-1j * phi) * c],
    ])


@dataclass(frozen=True)
class Parametrized:
    theta: float
    phi: float

    def __post_init__(self):
        u_theta_phi(self.theta, self.phi)

    def unitary(self) -> ComplexMatrix:
        return u_theta_phi(self.theta, self.phi)

    def components(self) -> List[Tuple[float, ComplexMatrix]]:
        return [(1.0, self.unitary())]


@dataclass(frozen=True)
class RawUnitary:
    m: ComplexMatrix

    def __post_init__(self):
        if self.m.shape != (2, 2):
            raise DimensionError(f"strategy must be 2x2, got {self.m.rows}x{self.m.cols}")
        if not is_unitary(self.m, RAW_UNITARY_TOL):
            raise DomainError("strategy matrix is not unitary")

    def unitary(self) -> ComplexMatrix:
        return self.m

    def components(self) -> List[Tuple[float, ComplexMatrix]]:
        return [(1.0, self.m)]


PureStrategy = Union[Parametrized, RawUnitary]


@dataclass(frozen=True)
class Mixture:
    weighted: Tuple[Tuple[float, PureStrategy], ...]

    def __post_init__(self):
        comps = tuple((float(w), s) for w, s in self.weighted)
        if not comps:
            raise DomainError("mixture needs at least one component")
        for k, (w, s) in enumerate(comps):
            if not isinstance(s, (Parametrized, RawUnitary)):
                raise DomainError("mixture components must be pure strategies", field=f"components[{k}]")
            if w < 0:
                raise DomainError(f"negative probability {w!r}", field=f"components[{k}]")
        total = sum(w for w, _ in comps)
        if abs(total - 1.0) > MIXTURE_TOL:
            raise DomainError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "weighted", comps)

    def components(self) -> List[Tuple[float, ComplexMatrix]]:
        return [(w, s.unitary()) for w, s in self.weighted if w > 0]


StrategyOperator = Union[Parametrized, RawUnitary, Mixture]

HAWK = Parametrized(0.0, 0.0)
DOVE = RawUnitary(X)
DOVE_ANGLES = Parametrized(math.pi, 0.0)
QUANTUM = Parametrized(0.0, math.pi / 2)


def identity_x_mixture(p: float) -> Mixture:
    """Identity with probability p, X with probability 1 - p."""
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"probability must lie in [0, 1], got {p!r}", field="p")
    return Mixture(((p, HAWK), (1.0 - p, DOVE)))


RANDOM = identity_x_mixture(0.5)

# angle coordinates of the labelled pure strategies, for the closed-form angle payoff
LABEL_ANGLES = {
    "H": (0.0, 0.0),
    "C": (0.0, 0.0),
    "D": (math.pi, 0.0),
    "Q": (0.0, math.pi / 2),
}

_REGISTRY = {
    "H": HAWK,
    "C": HAWK,
    "D": DOVE,
    "Q": QUANTUM,
    "R": RANDOM,
}

_LITERAL = re.compile(r"^u\((?P<theta>[^,]+),(?P<phi>[^,]+)\)$")
_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def _eval_angle(text: str) -> float:
    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            value = walk(node.operand)
            return -value if isinstance(node.op, ast.USub) else value
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](walk(node.left), walk(node.right))
        raise DomainError(f"unsupported angle expression {text!r}", field="strategies")

    try:
        return walk(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ZeroDivisionError):
        raise DomainError(f"bad angle expression {text!r}", field="strategies")


def parse_strategy(label: str) -> StrategyOperator:
    """Registry labels H, C, D, Q, R or a `u(theta,phi)` literal in radians (`pi` allowed)."""
    text = label.replace(" ", "")
    if text in _REGISTRY:
        return _REGISTRY[text]
    match = _LITERAL.match(text)
    if match is None:
        raise DomainError(f"unknown strategy {label!r}", field="strategies")
    return Parametrized(_eval_angle(match.group("theta")), _eval_angle(match.group("phi")))


def _split_top_level(text: str) -> List[str]:
    # commas inside u(...) literals do not split
    parts, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:k])
            start = k + 1
    parts.append(text[start:])
    return [p.strip() for p in parts if p.strip()]


def parse_strategies(spec: str) -> List[Tuple[str, StrategyOperator]]:
    labels = _split_top_level(spec)
    if not labels:
        raise DomainError("strategy list is empty", field="strategies")
    parsed = [(label.replace(" ", ""), parse_strategy(label)) for label in labels]
    seen = set()
    for label, _ in parsed:
        if label in seen:
            raise DomainError(f"strategy {label!r} listed twice", field="strategies")
        seen.add(label)
    return parsed


# ---------- states and operators ----------

_S2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class InitialState:
    tag: StateTag
    custom: Optional[StateVector] = None

    def __post_init__(self):
        if (self.tag is StateTag.CUSTOM) != (self.custom is not None):
            raise DomainError("a custom vector is required exactly for the CUSTOM tag", field="initial")

    def vector(self) -> StateVector:
        if self.tag is StateTag.MW_I_PHASE:
            return StateVector(np.array([_S2, 0, 0, 1j * _S2]))
        if self.tag is StateTag.BELL_PLUS:
            return StateVector(np.array([_S2, 0, 0, _S2]))
        return self.custom

    def density(self) -> ComplexMatrix:
        return outer(self.vector())


MW_I_PHASE = InitialState(StateTag.MW_I_PHASE)
BELL_PLUS = InitialState(StateTag.BELL_PLUS)


@dataclass(frozen=True)
class PayoffOperators:
    p_a: ComplexMatrix
    p_b: ComplexMatrix

    def __post_init__(self):
        for name in ("p_a", "p_b"):
            op = getattr(self, name)
            if op.shape != (4, 4):
                raise DimensionError(f"payoff operator must be 4x4, got {op.rows}x{op.cols}", field=name)
            if not op.is_diagonal() or not op.is_hermitian():
                raise DomainError("payoff operator must be diagonal and Hermitian", field=name)


@dataclass(frozen=True)
class QuantumGameSpec:
    scheme: Scheme
    payoffs: PayoffOperators
    initial: InitialState = field(default=MW_I_PHASE)


def payoff_operators(game: StrategicGame) -> PayoffOperators:
    if game.shape != (2, 2):
        raise DimensionError(f"payoff operators need a 2x2 game, got {game.shape[0]}x{game.shape[1]}")
    return PayoffOperators(ComplexMatrix.diag(game.a.ravel()), ComplexMatrix.diag(game.b.ravel()))


# ---------- final states ----------

ENTANGLER = (I4 + kron(X, X).scale(1j)).scale(_S2)


def mw_final_density(initial: InitialState, s_a: StrategyOperator, s_b: StrategyOperator) -> ComplexMatrix:
    rho_in = initial.density()
    rho = ComplexMatrix.zeros(4, 4)
    for w_a, u_a in s_a.components():
        for w_b, u_b in s_b.components():
            rho = rho + conjugate(kron(u_a, u_b), rho_in).scale(w_a * w_b)
    return rho


def eisert_final_state(u_a: ComplexMatrix, u_b: ComplexMatrix) -> StateVector:
    for name, u in (("u_a", u_a), ("u_b", u_b)):
        if u.shape != (2, 2) or not is_unitary(u, RAW_UNITARY_TOL):
            raise DomainError("player operator must be a 2x2 unitary", field=name)
    evolution = matmul(adjoint(ENTANGLER), matmul(kron(u_a, u_b), ENTANGLER))
    return StateVector.basis("00").apply(evolution)


def eisert_final_density(s_a: StrategyOperator, s_b: StrategyOperator) -> ComplexMatrix:
    """Eisert scheme with mixed strategies: weighted sum of pure final projectors."""
    rho = ComplexMatrix.zeros(4, 4)
    for w_a, u_a in s_a.components():
        for w_b, u_b in s_b.components():
            rho = rho + outer(eisert_final_state(u_a, u_b)).scale(w_a * w_b)
    return rho


def expected_payoffs(rho_f: ComplexMatrix, ops: PayoffOperators) -> Tuple[float, float]:
    t_a = trace(matmul(ops.p_a, rho_f))
    t_b = trace(matmul(ops.p_b, rho_f))
    residue = max(abs(t_a.imag), abs(t_b.imag))
    if residue >= config.PAYOFF_TOL:
        raise ResidueError(f"payoff trace has imaginary residue {residue!r}; density is not Hermitian",
                           details={"residue": residue})
    return t_a.real, t_b.real


def closed_form_angle_payoff(theta_a: float, phi_a: float, theta_b: float, phi_b: float) -> float:
    """Closed-form Hawk-Dove payoff in the angle parametrisation, coefficients -25, 50, 15."""
    ca, sa = math.cos(theta_a / 2), math.sin(theta_a / 2)
    cb, sb = math.cos(theta_b / 2), math.sin(theta_b / 2)
    first = abs(math.cos(phi_a + phi_b) * ca * cb) ** 2
    second = abs(math.sin(phi_a) * ca * sb - math.cos(phi_b) * cb * sa) ** 2
    third = abs(math.sin(phi_a + phi_b) * ca * cb + sa * sb) ** 2
    return -25 * first + 50 * second + 15 * third


# ---------- tables ----------

def final_density(spec: QuantumGameSpec, s_a: StrategyOperator, s_b: StrategyOperator) -> ComplexMatrix:
    if spec.scheme is Scheme.EISERT:
        return eisert_final_density(s_a, s_b)
    return mw_final_density(spec.initial, s_a, s_b)


def evaluate_cell(spec: QuantumGameSpec, s_a: StrategyOperator, s_b: StrategyOperator) -> Tuple[float, float]:
    return expected_payoffs(final_density(spec, s_a, s_b), spec.payoffs)


def mw_mixed_payoff(ops: PayoffOperators, initial: InitialState, p: float, q: float) -> Tuple[float, float]:
    """MW payoff when Alice plays I with probability p and X otherwise, Bob likewise with q."""
    return expected_payoffs(mw_final_density(initial, identity_x_mixture(p), identity_x_mixture(q)), ops)


def extended_payoff_table(spec: QuantumGameSpec,
                          strategies: Sequence[Tuple[str, StrategyOperator]],
                          max_workers: int = config.MAX_WORKERS) -> StrategicGame:
    if not strategies:
        raise DomainError("strategy list is empty", field="strategies")
    n = len(strategies)
    index = [(i, j) for i in range(n) for j in range(n)]
    cells = np.zeros((n, n, 2))

    def work(ij):
        i, j = ij
        return ij, evaluate_cell(spec, strategies[i][1], strategies[j][1])

    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        for (i, j), pair in executor.map(work, index):
            cells[i, j] = pair
            logger.debug(f"cell ({strategies[i][0]},{strategies[j][0]}) = {pair}")

    labels = tuple(label for label, _ in strategies)
    logger.info(f"{spec.scheme.name} table over {n} strategies computed")
    return StrategicGame(labels, labels, cells)
