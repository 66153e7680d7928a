# golden.py
"""Published payoff tables and results, as printed. Read only by `verify`;
never fed into any computation."""
from gamedef import StrategicGame

CLASSICAL_PD = StrategicGame.from_cells(("C", "D"), ("C", "D"), [
    [[3, 3], [0, 5]],
    [[5, 0], [1, 1]],
])

CLASSICAL_HD = StrategicGame.from_cells(("H", "D"), ("H", "D"), [
    [[-25, -25], [50, 0]],
    [[0, 50], [15, 15]],
])

QUANTUM_PD = StrategicGame.from_cells(("C", "D", "Q"), ("C", "D", "Q"), [
    [[3, 3], [0, 5], [1, 1]],
    [[5, 0], [1, 1], [0, 5]],
    [[1, 1], [5, 0], [3, 3]],
])

QUANTUM_HD = StrategicGame.from_cells(("H", "D", "Q"), ("H", "D", "Q"), [
    [[-25, -25], [50, 0], [15, 15]],
    [[0, 50], [15, 15], [50, 0]],
    [[15, 15], [0, 50], [15, 15]],
])

EXTENDED_HD = StrategicGame.from_cells(("H", "D", "Q", "R"), ("H", "D", "Q", "R"), [
    [[-25, -25], [50, 0], [15, 15], [25, 25]],
    [[0, 50], [15, 15], [50, 0], [25, 25]],
    [[15, 15], [0, 50], [15, 15], [5, 5]],
    [[25, 25], [25, 25], [5, 5], [25, 25]],
])

EXTENDED_PD = StrategicGame.from_cells(("C", "D", "Q", "R"), ("C", "D", "Q", "R"), [
    [[3, 3], [0, 5], [1, 1], [2.5, 2.5]],
    [[5, 0], [1, 1], [0, 5], [2.5, 2.5]],
    [[1, 1], [5, 0], [3, 3], [2.5, 2.5]],
    [[2.5, 2.5], [2.5, 2.5], [2.5, 2.5], [2.5, 2.5]],
])

HD_SURFACE_MAX = 25.0
HD_SURFACE_ARGMAX = [(0.0, 1.0), (1.0, 0.0)]
PD_SURFACE_MAX = 2.5
PD_SURFACE_ARGMAX = [(0.0, 1.0), (1.0, 0.0)]

# region above the classical equilibrium payoff: 0.66 < p < 1 and 0 < q < 0.34
REGION_THRESHOLD = 15.0
REGION_BOX = (0.66, 1.0, 0.0, 0.34)

PD_PURE_NASH = [(1, 1)]  # (D, D)
PD_MIXED_NASH = [(0.0, 0.0)]
HD_PURE_NASH = [(1, 1)]  # the printed claim: (D, D)

# pairs of cells said to yield identical payoffs
PD_IDENTICAL_PAIRS = [("C", "Q", "D", "D"), ("D", "Q", "C", "D"), ("Q", "D", "D", "C")]
HD_IDENTICAL_PAIRS = [("Q", "Q", "D", "D"), ("H", "D", "D", "Q"), ("D", "H", "Q", "D")]
