# solvers.py
import logging
import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import nashpy as nash
import numpy as np

import config
from errors import AsymmetricGameError, DimensionError, DomainError
from gamedef import NOISE_DIGITS, Player, StrategicGame

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]
DEVIATION_GRID = 101


def pure_nash(game: StrategicGame, tol: float = config.PAYOFF_TOL) -> List[Cell]:
    a, b = game.a, game.b
    col_best = a.max(axis=0)  # Alice's best reply to each of Bob's columns
    row_best = b.max(axis=1)
    n, m = game.shape
    return [(i, j) for i in range(n) for j in range(m)
            if a[i, j] >= col_best[j] - tol and b[i, j] >= row_best[i] - tol]


def _dominates(x: np.ndarray, y: np.ndarray, tol: float) -> bool:
    return bool(np.all(x >= y - tol) and np.any(x > y + tol))


def pareto_optimal(game: StrategicGame, tol: float = config.PAYOFF_TOL) -> List[Cell]:
    n, m = game.shape
    outcomes = game.payoffs.reshape(n * m, 2)
    keep = []
    for k, outcome in enumerate(outcomes):
        if not any(_dominates(other, outcome, tol) for other in outcomes):
            keep.append((k // m, k % m))
    return keep


def best_response(game: StrategicGame, player: Player, opponent_index: int,
                  tol: float = config.PAYOFF_TOL) -> List[int]:
    n, m = game.shape
    if player is Player.A:
        if not 0 <= opponent_index < m:
            raise DomainError(f"Bob has no strategy {opponent_index}", field="opponent_index")
        column = game.a[:, opponent_index]
    else:
        if not 0 <= opponent_index < n:
            raise DomainError(f"Alice has no strategy {opponent_index}", field="opponent_index")
        column = game.b[opponent_index, :]
    best = column.max()
    return [k for k, value in enumerate(column) if value >= best - tol]


def _no_profitable_deviation(game: StrategicGame, p: float, q: float, tol: float) -> bool:
    deviations = np.linspace(0.0, 1.0, DEVIATION_GRID)
    y = np.array([q, 1 - q])
    x = np.array([p, 1 - p])
    alice_rows = game.a @ y  # payoff of each pure row against Bob's mix
    bob_cols = x @ game.b
    alice_now = x @ alice_rows
    bob_now = bob_cols @ y
    alice_alt = deviations * alice_rows[0] + (1 - deviations) * alice_rows[1]
    bob_alt = deviations * bob_cols[0] + (1 - deviations) * bob_cols[1]
    return bool(np.all(alice_alt <= alice_now + tol) and np.all(bob_alt <= bob_now + tol))


def _support_candidates(game: StrategicGame) -> List[Tuple[float, float]]:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RuntimeWarning)
        found = [(float(sigma_r[0]), float(sigma_c[0]))
                 for sigma_r, sigma_c in nash.Game(game.a, game.b).support_enumeration()]
    if caught:
        logger.debug(f"support enumeration flagged a degenerate game: {len(found)} equilibria")
    return found


def mixed_nash_2x2(game: StrategicGame, tol: float = config.PAYOFF_TOL) -> List[Tuple[float, float]]:
    """Equilibrium profiles (p, q), p and q being the first-strategy probabilities.

    Candidates are the corners plus whatever support enumeration finds; each
    candidate is kept only if no deviation on a 101-point grid (which includes
    both pure strategies) gains more than `tol`.
    """
    if game.shape != (2, 2):
        raise DimensionError(f"mixed Nash needs a 2x2 game, got {game.shape[0]}x{game.shape[1]}")
    candidates = {}
    for p, q in [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] + _support_candidates(game):
        p, q = min(1.0, max(0.0, p)), min(1.0, max(0.0, q))
        candidates.setdefault((round(p, NOISE_DIGITS), round(q, NOISE_DIGITS)), (p, q))
    found = [pq for _, pq in sorted(candidates.items()) if _no_profitable_deviation(game, *pq, tol)]
    logger.debug(f"mixed Nash candidates {sorted(candidates)}, kept {found}")
    return found


def ess_check(game: StrategicGame, index: int, tol: float = config.PAYOFF_TOL) -> bool:
    """Maynard-Smith conditions for pure strategy `index` of a symmetric game."""
    if not game.is_symmetric(tol):
        raise AsymmetricGameError("ESS needs a symmetric game (b_ij == a_ji)")
    n = game.shape[0]
    if not 0 <= index < n:
        raise DomainError(f"no strategy {index}", field="index")
    a = game.a
    s = index
    for t in range(n):
        if t == s:
            continue
        if a[s, s] > a[t, s] + tol:
            continue
        if abs(a[s, s] - a[t, s]) <= tol and a[s, t] > a[t, t] + tol:
            continue
        return False
    return True


def classical_replicas(table: StrategicGame, classical: StrategicGame,
                       tol: float = config.PAYOFF_TOL) -> Dict[Cell, List[Cell]]:
    """For each cell of `table`, the cells of `classical` paying exactly the same pair."""
    out = {}
    n, m = table.shape
    cn, cm = classical.shape
    for i in range(n):
        for j in range(m):
            pair = table.payoffs[i, j]
            out[(i, j)] = [(k, l) for k in range(cn) for l in range(cm)
                           if np.all(np.abs(classical.payoffs[k, l] - pair) <= tol)]
    return out


def payoffs_equal(table: StrategicGame, cell_a: Cell, cell_b: Cell, tol: float = config.PAYOFF_TOL) -> bool:
    return bool(np.all(np.abs(table.payoffs[cell_a] - table.payoffs[cell_b]) <= tol))


@dataclass
class EquilibriumReport:
    labels_a: List[str]
    labels_b: List[str]
    pure_nash: List[Cell]
    pareto_optimal: List[Cell]
    mixed_nash_2x2: Optional[List[Tuple[float, float]]] = None
    ess: Dict[int, bool] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "labels_a": list(self.labels_a),
            "labels_b": list(self.labels_b),
            "pure_nash": [list(c) for c in self.pure_nash],
            "pareto_optimal": [list(c) for c in self.pareto_optimal],
            "mixed_nash_2x2": None if self.mixed_nash_2x2 is None else [list(pq) for pq in self.mixed_nash_2x2],
            "ess": {str(k): v for k, v in sorted(self.ess.items())},
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "EquilibriumReport":
        mixed = obj.get("mixed_nash_2x2")
        return cls(
            labels_a=list(obj["labels_a"]),
            labels_b=list(obj["labels_b"]),
            pure_nash=[tuple(c) for c in obj["pure_nash"]],
            pareto_optimal=[tuple(c) for c in obj["pareto_optimal"]],
            mixed_nash_2x2=None if mixed is None else [tuple(pq) for pq in mixed],
            ess={int(k): bool(v) for k, v in obj.get("ess", {}).items()},
        )


def analyze(game: StrategicGame, ess: bool = False) -> EquilibriumReport:
    report = EquilibriumReport(
        labels_a=list(game.labels_a),
        labels_b=list(game.labels_b),
        pure_nash=pure_nash(game),
        pareto_optimal=pareto_optimal(game),
    )
    if game.shape == (2, 2):
        report.mixed_nash_2x2 = mixed_nash_2x2(game)
    if ess:
        report.ess = {k: ess_check(game, k) for k in range(game.shape[0])}
    logger.info(f"analysis: {len(report.pure_nash)} pure Nash, {len(report.pareto_optimal)} Pareto cells")
    return report
