# gamedef.py
import json
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, List, Sequence, Tuple

import numpy as np

import config
from errors import DimensionError, DomainError, GameFormatError

logger = logging.getLogger(__name__)

NOISE_DIGITS = 12  # decimals kept in printed output


class Player(Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class HawkDoveParams:
    v: float = 50.0  # resource value
    i: float = 100.0  # injury cost
    d: float = 10.0  # display cost

    def __post_init__(self):
        for name in ("v", "i", "d"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError("must be finite", field=name)

    @property
    def is_canonical(self) -> bool:
        return (self.v, self.i, self.d) == (50.0, 100.0, 10.0)


@dataclass(frozen=True)
class MixedProfile:
    p: float  # probability Alice plays her first strategy
    q: float  # probability Bob plays his first strategy

    def __post_init__(self):
        for name in ("p", "q"):
            value = getattr(self, name)
            if not (0.0 <= value <= 1.0):
                raise DomainError(f"probability must lie in [0, 1], got {value!r}", field=name)


@dataclass(frozen=True, eq=False)
class StrategicGame:
    """Two-player bimatrix game. payoffs[i, j] = (a_ij, b_ij), Alice on rows."""
    labels_a: Tuple[str, ...]
    labels_b: Tuple[str, ...]
    payoffs: np.ndarray

    def __post_init__(self):
        labels_a = tuple(self.labels_a)
        labels_b = tuple(self.labels_b)
        if not labels_a:
            raise DimensionError("Alice needs at least one strategy", field="labels_a")
        if not labels_b:
            raise DimensionError("Bob needs at least one strategy", field="labels_b")
        payoffs = np.array(self.payoffs, dtype=float)
        expected = (len(labels_a), len(labels_b), 2)
        if payoffs.shape != expected:
            raise DimensionError(f"payoff shape {payoffs.shape} does not match labels {expected}",
                                 field="payoffs", details={"expected": expected, "actual": payoffs.shape})
        if not np.all(np.isfinite(payoffs)):
            raise DomainError("payoffs must be finite", field="payoffs")
        payoffs.setflags(write=False)
        object.__setattr__(self, "labels_a", labels_a)
        object.__setattr__(self, "labels_b", labels_b)
        object.__setattr__(self, "payoffs", payoffs)

    @classmethod
    def from_cells(cls, labels_a: Sequence[str], labels_b: Sequence[str],
                   cells: Sequence[Sequence[Sequence[float]]]) -> "StrategicGame":
        return cls(tuple(labels_a), tuple(labels_b), np.array(cells, dtype=float))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.payoffs.shape[0], self.payoffs.shape[1]

    @property
    def a(self) -> np.ndarray:
        return self.payoffs[:, :, 0]

    @property
    def b(self) -> np.ndarray:
        return self.payoffs[:, :, 1]

    def cell(self, i: int, j: int) -> Tuple[float, float]:
        return float(self.payoffs[i, j, 0]), float(self.payoffs[i, j, 1])

    def label_index(self, player: Player, label: str) -> int:
        labels = self.labels_a if player is Player.A else self.labels_b
        try:
            return labels.index(label)
        except ValueError:
            raise DomainError(f"unknown strategy label {label!r}", field=f"labels_{player.value.lower()}")

    def is_symmetric(self, tol: float = config.PAYOFF_TOL) -> bool:
        n, m = self.shape
        if n != m:
            return False
        return bool(np.max(np.abs(self.b - self.a.T)) <= tol)

    def same_payoffs(self, other: "StrategicGame", tol: float = config.PAYOFF_TOL) -> bool:
        return self.payoffs.shape == other.payoffs.shape and bool(
            np.max(np.abs(self.payoffs - other.payoffs)) <= tol)

    def shifted(self, constant: float) -> "StrategicGame":
        return StrategicGame(self.labels_a, self.labels_b, self.payoffs + constant)


def hawk_dove_game(params: HawkDoveParams = HawkDoveParams()) -> StrategicGame:
    v, i, d = params.v, params.i, params.d
    hh = v / 2 - i / 2
    dd = v / 2 - d
    return StrategicGame.from_cells(("H", "D"), ("H", "D"), [
        [[hh, hh], [v, 0.0]],
        [[0.0, v], [dd, dd]],
    ])


def prisoners_dilemma_game() -> StrategicGame:
    return StrategicGame.from_cells(("C", "D"), ("C", "D"), [
        [[3, 3], [0, 5]],
        [[5, 0], [1, 1]],
    ])


def classical_mixed_payoff(game: StrategicGame, profile: MixedProfile) -> Tuple[float, float]:
    if game.shape != (2, 2):
        raise DimensionError(f"mixed payoff needs a 2x2 game, got {game.shape[0]}x{game.shape[1]}")
    x = np.array([profile.p, 1.0 - profile.p])
    y = np.array([profile.q, 1.0 - profile.q])
    return float(x @ game.a @ y), float(x @ game.b @ y)


# ---------- JSON game format ----------

def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _labels(obj: dict, key: str) -> List[str]:
    if key not in obj:
        raise GameFormatError("missing field", field=key)
    labels = obj[key]
    if not isinstance(labels, list):
        raise GameFormatError("must be a list of strings", field=key)
    if not labels:
        raise GameFormatError("strategy list is empty", field=key)
    for k, label in enumerate(labels):
        if not isinstance(label, str) or not label:
            raise GameFormatError("label must be a non-empty string", field=f"{key}[{k}]")
    if len(set(labels)) != len(labels):
        raise GameFormatError("labels must be unique", field=key)
    return labels


def game_from_dict(obj: Any) -> StrategicGame:
    if not isinstance(obj, dict):
        raise GameFormatError("top level must be a JSON object")
    labels_a = _labels(obj, "labels_a")
    labels_b = _labels(obj, "labels_b")
    if "payoffs" not in obj:
        raise GameFormatError("missing field", field="payoffs")
    rows = obj["payoffs"]
    if not isinstance(rows, list) or len(rows) != len(labels_a):
        raise GameFormatError(f"expected {len(labels_a)} rows to match labels_a", field="payoffs")
    cells = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(labels_b):
            raise GameFormatError(f"expected {len(labels_b)} cells to match labels_b", field=f"payoffs[{i}]")
        out_row = []
        for j, pair in enumerate(row):
            path = f"payoffs[{i}][{j}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise GameFormatError("cell must be a pair [a, b]", field=path)
            for k, value in enumerate(pair):
                if not _is_number(value) or not math.isfinite(value):
                    raise GameFormatError("payoff must be a finite number", field=f"{path}[{k}]")
            out_row.append([float(pair[0]), float(pair[1])])
        cells.append(out_row)
    return StrategicGame.from_cells(labels_a, labels_b, cells)


def parse_game_file(text: str) -> StrategicGame:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise GameFormatError(f"malformed JSON: {e.msg} (line {e.lineno}, column {e.colno})")
    game = game_from_dict(obj)
    logger.debug(f"parsed {game.shape[0]}x{game.shape[1]} game")
    return game


def plain_number(x: float):
    """Shortest round-trip form; integral values become ints so -25.0 prints as -25."""
    x = float(x)
    if x == 0:
        return 0
    if x.is_integer() and abs(x) < 2 ** 53:
        return int(x)
    return x


def output_number(x: float):
    """`plain_number` with float noise below 1e-12 dropped, so 2.9999999999999987 prints as 3."""
    return plain_number(round(float(x), NOISE_DIGITS))


def game_to_dict(game: StrategicGame, denoise: bool = False) -> dict:
    n, m = game.shape
    num = output_number if denoise else plain_number
    return {
        "labels_a": list(game.labels_a),
        "labels_b": list(game.labels_b),
        "payoffs": [[[num(game.payoffs[i, j, 0]), num(game.payoffs[i, j, 1])]
                     for j in range(m)] for i in range(n)],
    }


def serialize_game(game: StrategicGame) -> str:
    return json.dumps(game_to_dict(game))


# ---------- text rendering ----------

def format_number(x: float) -> str:
    """Up to 9 significant digits, trailing zeros trimmed; float noise below 1e-12 is dropped."""
    x = round(float(x), NOISE_DIGITS)
    if x == 0:
        x = 0.0
    text = f"{x:.9g}"
    return "0" if text == "-0" else text


def format_ascii(game: StrategicGame) -> str:
    n, m = game.shape
    cells = [[f"({format_number(game.payoffs[i, j, 0])},{format_number(game.payoffs[i, j, 1])})"
              for j in range(m)] for i in range(n)]
    row_w = max(len(label) for label in game.labels_a)
    col_w = [max([len(game.labels_b[j])] + [len(cells[i][j]) for i in range(n)]) for j in range(m)]
    lines = [" " * row_w + " | " + " | ".join(game.labels_b[j].rjust(col_w[j]) for j in range(m))]
    lines.append("-" * len(lines[0]))
    for i in range(n):
        lines.append(game.labels_a[i].ljust(row_w) + " | " +
                     " | ".join(cells[i][j].rjust(col_w[j]) for j in range(m)))
    return "\n".join(lines) + "\n"
