# mixedscan.py
"""Mixed-strategy payoff surfaces on a uniform (p, q) lattice.

p is the probability Alice plays the identity (H or C), q likewise for Bob;
the complement plays X. Surfaces are evaluated on BELL_PLUS under the
Marinatto-Weber scheme.
"""
import csv
import io
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Tuple

import numpy as np

import config
from errors import DomainError
from gamedef import HawkDoveParams, hawk_dove_game, plain_number, prisoners_dilemma_game
from qscheme import BELL_PLUS, mw_mixed_payoff, payoff_operators

logger = logging.getLogger(__name__)

CSV_HEADER = ("p", "q", "payoff_a", "payoff_b")


class SurfaceKind(Enum):
    HAWK_DOVE = "hd"
    PRISONERS_DILEMMA = "pd"


@dataclass(frozen=True)
class Surface:
    kind: SurfaceKind
    params: Optional[HawkDoveParams] = None

    @classmethod
    def hawk_dove(cls, params: HawkDoveParams = HawkDoveParams()) -> "Surface":
        return cls(SurfaceKind.HAWK_DOVE, params)

    @classmethod
    def prisoners_dilemma(cls) -> "Surface":
        return cls(SurfaceKind.PRISONERS_DILEMMA)

    def payoff(self, p: float, q: float) -> Tuple[float, float]:
        if self.kind is SurfaceKind.PRISONERS_DILEMMA:
            value = pd_mixed_payoff(p, q)
            return value, value
        if self.params.is_canonical:
            value = hd_mixed_payoff(p, q, self.params)
            return value, value
        _check_probabilities(p, q)
        return mw_mixed_payoff(payoff_operators(hawk_dove_game(self.params)), BELL_PLUS, p, q)

    def vectorized(self) -> Callable[[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]:
        if self.kind is SurfaceKind.PRISONERS_DILEMMA:
            def pd(p, q):
                value = 0.5 * (4 - 2 * p * q + p + q)
                return value, value
            return pd
        if self.params.is_canonical:
            def hd(p, q):
                value = -60 * p * q + 30 * (p + q) - 5
                return value, value
            return hd
        return _bilinear_from_oracle(self)


def _check_probabilities(p: float, q: float) -> None:
    for name, value in (("p", p), ("q", q)):
        if not (0.0 <= value <= 1.0):
            raise DomainError(f"probability must lie in [0, 1], got {value!r}", field=name)


def hd_mixed_payoff(p: float, q: float, params: HawkDoveParams = HawkDoveParams()) -> float:
    """Hawk-Dove payoff for the I/X mixture on BELL_PLUS (equal for both players).

    Canonical parameters use the reduced polynomial -60pq + 30(p+q) - 5;
    anything else goes through the density-matrix computation.
    """
    _check_probabilities(p, q)
    if params.is_canonical:
        return -60 * p * q + 30 * (p + q) - 5
    return mw_mixed_payoff(payoff_operators(hawk_dove_game(params)), BELL_PLUS, p, q)[0]


def pd_mixed_payoff(p: float, q: float) -> float:
    _check_probabilities(p, q)
    return 0.5 * (4 - 2 * p * q + p + q)


def _bilinear_from_oracle(surface: Surface):
    # the mixed density is bilinear in (p, q), so the four pure corners fix the surface
    ops = payoff_operators(hawk_dove_game(surface.params))
    corner = {(p, q): mw_mixed_payoff(ops, BELL_PLUS, p, q) for p in (0.0, 1.0) for q in (0.0, 1.0)}

    def evaluate(p, q):
        out = []
        for k in range(2):
            out.append(p * q * corner[1.0, 1.0][k] + p * (1 - q) * corner[1.0, 0.0][k]
                       + (1 - p) * q * corner[0.0, 1.0][k] + (1 - p) * (1 - q) * corner[0.0, 0.0][k])
        return out[0], out[1]
    return evaluate


def lattice(resolution: int) -> np.ndarray:
    if resolution < 2:
        raise DomainError(f"resolution must be at least 2, got {resolution}", field="resolution")
    return np.arange(resolution) / (resolution - 1)


@dataclass(frozen=True, eq=False)
class PayoffGrid:
    resolution: int
    cells: np.ndarray  # rows of (p, q, payoff_a, payoff_b), p-major

    def rows(self) -> List[Tuple[float, float, float, float]]:
        return [tuple(float(x) for x in row) for row in self.cells]

    def at(self, i: int, j: int) -> Tuple[float, float, float, float]:
        return tuple(float(x) for x in self.cells[i * self.resolution + j])


def _evaluate_lattice(surface: Surface, resolution: int) -> np.ndarray:
    axis = lattice(resolution)
    p, q = np.meshgrid(axis, axis, indexing="ij")
    a, b = surface.vectorized()(p, q)
    return np.column_stack([p.ravel(), q.ravel(), np.ravel(a), np.ravel(b)])


def grid_scan(surface: Surface, resolution: int) -> PayoffGrid:
    cells = _evaluate_lattice(surface, resolution)
    logger.info(f"{surface.kind.value} grid scan at resolution {resolution}: {len(cells)} cells")
    return PayoffGrid(resolution, cells)


def grid_argmax(grid: PayoffGrid, tol: float = config.PAYOFF_TOL) -> List[Tuple[float, float]]:
    payoff_a = grid.cells[:, 2]
    best = payoff_a.max()
    hits = grid.cells[payoff_a >= best - tol]
    return [(float(p), float(q)) for p, q in hits[:, :2]]


def grid_max(grid: PayoffGrid) -> float:
    return float(grid.cells[:, 2].max())


@dataclass(frozen=True, eq=False)
class Region:
    threshold: float
    cells: np.ndarray  # member rows of (p, q, payoff_a, payoff_b)

    @property
    def members(self) -> List[Tuple[float, float]]:
        return [(float(p), float(q)) for p, q in self.cells[:, :2]]

    def __len__(self) -> int:
        return len(self.cells)

    def contains(self, p: float, q: float, tol: float = 1e-12) -> bool:
        if not len(self.cells):
            return False
        hit = (np.abs(self.cells[:, 0] - p) <= tol) & (np.abs(self.cells[:, 1] - q) <= tol)
        return bool(hit.any())

    def lobe(self, which: str) -> "Region":
        """'all', 'p>q' or 'q>p'; symmetric surfaces put one lobe on each side of the diagonal."""
        if which == "all":
            return self
        if which == "p>q":
            mask = self.cells[:, 0] > self.cells[:, 1]
        elif which == "q>p":
            mask = self.cells[:, 1] > self.cells[:, 0]
        else:
            raise DomainError(f"unknown lobe {which!r}", field="lobe")
        return Region(self.threshold, self.cells[mask])

    def bounding_box(self) -> Optional[Tuple[float, float, float, float]]:
        """(p_min, p_max, q_min, q_max), or None when empty."""
        if not len(self.cells):
            return None
        p, q = self.cells[:, 0], self.cells[:, 1]
        return float(p.min()), float(p.max()), float(q.min()), float(q.max())


def region_above(surface: Surface, threshold: float, resolution: int) -> Region:
    cells = _evaluate_lattice(surface, resolution)
    members = cells[cells[:, 2] > threshold]
    logger.info(f"{len(members)} of {len(cells)} lattice points above {threshold}")
    return Region(threshold, members)


def exact_region_boundary(p: float) -> float:
    """Upper bound on q for the canonical Hawk-Dove lobe above 15 (defined for p > 2/3)."""
    return (30 * p - 20) / (60 * p - 30)


def rows_to_csv(cells: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in cells:
        writer.writerow([repr(plain_number(x)) for x in row])
    return buf.getvalue()


def grid_to_csv(grid: PayoffGrid) -> str:
    return rows_to_csv(grid.cells)


def region_to_csv(region: Region) -> str:
    return rows_to_csv(region.cells)
