# verify.py
"""Claim ledger: recompute every printed number and compare.

Discrepancies are findings, not failures. Each discrepancy carries a family
tag so the known inconsistencies stay grouped:

  D1  quantum Hawk-Dove (Q,Q) printed as (15,15)
  D2  orientation of the closed-form angle payoff (it is Bob's payoff)
  D3  entries involving the random strategy R
  D4  the classical Hawk-Dove equilibrium printed as (D,D)
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

import config
import golden
from gamedef import (HawkDoveParams, Player, StrategicGame, hawk_dove_game, output_number,
                     prisoners_dilemma_game)
from mixedscan import Surface, grid_argmax, grid_max, grid_scan, lattice, region_above
from qmat import outer
from qscheme import (BELL_PLUS, LABEL_ANGLES, MW_I_PHASE, QuantumGameSpec, Scheme, closed_form_angle_payoff,
                     eisert_final_state, evaluate_cell, expected_payoffs, extended_payoff_table,
                     mw_final_density, mw_mixed_payoff, parse_strategies, payoff_operators, u_theta_phi)
from solvers import classical_replicas, ess_check, mixed_nash_2x2, pareto_optimal, payoffs_equal, pure_nash

logger = logging.getLogger(__name__)


class Verdict(Enum):
    MATCH = "MATCH"
    DISCREPANCY = "DISCREPANCY"


@dataclass
class ClaimReport:
    claim_id: str
    location: str
    reported: Any
    computed: Any
    verdict: Verdict
    note: str = ""
    family: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "location": self.location,
            "reported": self.reported,
            "computed": self.computed,
            "verdict": self.verdict.value,
            "family": self.family,
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "ClaimReport":
        return cls(
            claim_id=obj["claim_id"],
            location=obj["location"],
            reported=obj["reported"],
            computed=obj["computed"],
            verdict=Verdict(obj["verdict"]),
            note=obj.get("note", ""),
            family=obj.get("family"),
        )


def values_match(reported: Any, computed: Any, tol: float = config.CLAIM_TOL) -> bool:
    if isinstance(reported, bool) or isinstance(computed, bool):
        return reported is computed or reported == computed
    if isinstance(reported, (int, float)) and isinstance(computed, (int, float)):
        return abs(reported - computed) <= tol
    if isinstance(reported, (list, tuple)) and isinstance(computed, (list, tuple)):
        return len(reported) == len(computed) and all(
            values_match(r, c, tol) for r, c in zip(reported, computed))
    return reported == computed


def clean(value: Any) -> Any:
    """JSON-ready copy with floats rounded past the noise floor."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, float, np.integer, np.floating)):
        return output_number(value)
    if isinstance(value, np.ndarray):
        return clean(value.tolist())
    if isinstance(value, (list, tuple)):
        return [clean(v) for v in value]
    return value


class ClaimLedger:
    def __init__(self, tol: float = config.CLAIM_TOL):
        self.tol = tol
        self.claims: List[ClaimReport] = []

    def add(self, claim_id: str, location: str, reported: Any, computed: Any,
            family: Optional[str] = None, note: str = "") -> ClaimReport:
        reported, computed = clean(reported), clean(computed)
        matched = values_match(reported, computed, self.tol)
        claim = ClaimReport(
            claim_id=claim_id,
            location=location,
            reported=reported,
            computed=computed,
            verdict=Verdict.MATCH if matched else Verdict.DISCREPANCY,
            note=note,
            family=None if matched else family,
        )
        self.claims.append(claim)
        logger.debug(f"{claim_id}: {claim.verdict.value}")
        return claim


def _cells(game: StrategicGame) -> list:
    return game.payoffs.tolist()


def _cell_claims(ledger: ClaimLedger, prefix: str, location: str, printed: StrategicGame,
                 computed: StrategicGame, family_of, note_of=lambda la, lb: "") -> None:
    for i, la in enumerate(printed.labels_a):
        for j, lb in enumerate(printed.labels_b):
            ledger.add(f"{prefix}-{la}{lb}", f"{location}, cell ({la},{lb})",
                       list(printed.cell(i, j)), list(computed.cell(i, j)),
                       family=family_of(la, lb), note=note_of(la, lb))


def _hybrid(pure: StrategicGame, mixed: StrategicGame) -> StrategicGame:
    """Pure-strategy cells from `pure`, cells involving R from `mixed` (same label order)."""
    cells = mixed.payoffs.copy()
    n = pure.shape[0]
    cells[:n, :n] = pure.payoffs
    return StrategicGame(mixed.labels_a, mixed.labels_b, cells)


def _classical_claims(ledger: ClaimLedger) -> None:
    pd = prisoners_dilemma_game()
    hd = hawk_dove_game(HawkDoveParams())
    ledger.add("PD-CLASSICAL", "classical prisoner's dilemma table", _cells(golden.CLASSICAL_PD), _cells(pd))
    ledger.add("HD-CLASSICAL", "classical hawk-dove table, v=50 i=100 d=10", _cells(golden.CLASSICAL_HD), _cells(hd))

    ledger.add("PD-NE", "prisoner's dilemma: defecting is dominant",
               [list(c) for c in golden.PD_PURE_NASH], [list(c) for c in pure_nash(pd)])
    ledger.add("PD-MIXED-NE", "prisoner's dilemma mixed equilibrium (p*, q*)",
               [list(c) for c in golden.PD_MIXED_NASH], [list(c) for c in mixed_nash_2x2(pd)])
    ledger.add("PD-PARETO-CC", "prisoner's dilemma: (C,C) is Pareto optimal",
               True, (0, 0) in pareto_optimal(pd))
    ledger.add("HD-NE", "classical hawk-dove equilibrium",
               [list(c) for c in golden.HD_PURE_NASH], [list(c) for c in pure_nash(hd)], family="D4",
               note="best-response enumeration gives (H,D) and (D,H); (D,D) is beaten by deviating to H (50 > 15)")
    ledger.add("HD-DD-PARETO", "classical hawk-dove: (D,D) is Pareto optimal",
               True, (1, 1) in pareto_optimal(hd))


def _quantum_table_claims(ledger: ClaimLedger) -> Tuple[StrategicGame, StrategicGame]:
    pd_ops = payoff_operators(prisoners_dilemma_game())
    hd_ops = payoff_operators(hawk_dove_game(HawkDoveParams()))
    eisert_pd = extended_payoff_table(QuantumGameSpec(Scheme.EISERT, pd_ops), parse_strategies("C,D,Q"))
    eisert_hd = extended_payoff_table(QuantumGameSpec(Scheme.EISERT, hd_ops), parse_strategies("H,D,Q"))
    signed_pd = extended_payoff_table(QuantumGameSpec(Scheme.EISERT, pd_ops), parse_strategies("C,u(pi,0),Q"))
    flipped = sum(1 for i in range(3) for j in range(3)
                  if not np.allclose(signed_pd.payoffs[i, j], eisert_pd.payoffs[i, j]))

    ledger.add("T7-ALL", "quantum prisoner's dilemma table (C=I, D=X, Q=iZ)",
               _cells(golden.QUANTUM_PD), _cells(eisert_pd),
               note=f"reading D as u(pi,0) instead of X changes {flipped} of 9 cells under this entangler")
    _cell_claims(ledger, "T7", "quantum prisoner's dilemma table", golden.QUANTUM_PD, eisert_pd,
                 family_of=lambda la, lb: None)
    _cell_claims(ledger, "T16", "quantum hawk-dove table", golden.QUANTUM_HD, eisert_hd,
                 family_of=lambda la, lb: "D1",
                 note_of=lambda la, lb: "Eisert scheme; no assumption is made about the intended value"
                 if (la, lb) == ("Q", "Q") else "")

    q = parse_strategies("Q")[0][1]
    mw_qq = expected_payoffs(mw_final_density(MW_I_PHASE, q, q), hd_ops)
    ledger.add("T16-QQ-MW", "quantum hawk-dove table, cell (Q,Q) under the Marinatto-Weber scheme",
               list(golden.QUANTUM_HD.cell(2, 2)), list(mw_qq), family="D1",
               note="initial state (|00>+i|11>)/sqrt(2)")

    # the sign of the Dove operator is invisible to diagonal payoff operators under MW
    mw_spec = QuantumGameSpec(Scheme.MARINATTO_WEBER, hd_ops, BELL_PLUS)
    with_x = extended_payoff_table(mw_spec, parse_strategies("H,D,Q"))
    with_u = extended_payoff_table(mw_spec, parse_strategies("H,u(pi,0),Q"))
    ledger.add("MW-DSIGN", "Dove as X versus u(pi,0) under the Marinatto-Weber scheme",
               _cells(with_x), _cells(with_u))

    for prefix, pairs, table, family in (("PD", golden.PD_IDENTICAL_PAIRS, eisert_pd, None),
                                         ("HD", golden.HD_IDENTICAL_PAIRS, eisert_hd, "D1")):
        for la, lb, lc, ld in pairs:
            first = (table.label_index(Player.A, la), table.label_index(Player.B, lb))
            second = (table.label_index(Player.A, lc), table.label_index(Player.B, ld))
            fam = family if "Q" == la == lb else None
            ledger.add(f"REPLICA-{prefix}-{la}{lb}-{lc}{ld}",
                       f"quantum {'prisoner' if prefix == 'PD' else 'hawk-dove'} table: ({la},{lb}) and ({lc},{ld}) pay the same",
                       True, payoffs_equal(table, first, second), family=fam,
                       note=f"computed {clean(list(table.cell(*first)))} and {clean(list(table.cell(*second)))}")
    return eisert_pd, eisert_hd


def _random_strategy_claims(ledger: ClaimLedger, eisert_pd: StrategicGame, eisert_hd: StrategicGame) -> None:
    pd = prisoners_dilemma_game()
    hd = hawk_dove_game(HawkDoveParams())
    mw_hd = extended_payoff_table(QuantumGameSpec(Scheme.MARINATTO_WEBER, payoff_operators(hd), BELL_PLUS),
                                  parse_strategies("H,D,Q,R"))
    mw_pd = extended_payoff_table(QuantumGameSpec(Scheme.MARINATTO_WEBER, payoff_operators(pd), BELL_PLUS),
                                  parse_strategies("C,D,Q,R"))
    recomputed_hd = _hybrid(eisert_hd, mw_hd)
    recomputed_pd = _hybrid(eisert_pd, mw_pd)

    def hd_family(la, lb):
        return "D3" if "R" in (la, lb) else "D1"

    def r_note(la, lb):
        return "R = equal mixture of I and X on (|00>+|11>)/sqrt(2)" if "R" in (la, lb) else ""

    _cell_claims(ledger, "HD-EXTENDED", "extended hawk-dove table", golden.EXTENDED_HD, recomputed_hd,
                 family_of=hd_family, note_of=r_note)
    _cell_claims(ledger, "PD-EXTENDED", "extended prisoner's dilemma table", golden.EXTENDED_PD, recomputed_pd,
                 family_of=lambda la, lb: "D3", note_of=r_note)

    best = grid_max(grid_scan(Surface.hawk_dove(), 101))
    ledger.add("HD-EXTENDED-RR-SURFACE-MAX", "extended hawk-dove table, cell (R,R) read as the surface maximum",
               golden.EXTENDED_HD.cell(3, 3)[0], best,
               note="alternative reading of R as the argmax profile (p,q)=(0,1)/(1,0)")

    r = 3
    printed = golden.EXTENDED_HD
    ledger.add("ESS-PRINTED-R", "random strategy is evolutionarily stable (printed table)", True, ess_check(printed, r))
    ledger.add("ESS-MW-R", "random strategy is evolutionarily stable (recomputed table)", True, ess_check(mw_hd, r))
    ledger.add("ESS-PRINTED-NASH-PARETO", "ESS cell (R,R) is Nash and Pareto optimal (printed table)", True,
               (r, r) in pure_nash(printed) and (r, r) in pareto_optimal(printed))
    ledger.add("ESS-MW-NASH-PARETO", "ESS cell (R,R) is Nash and Pareto optimal (recomputed table)", True,
               (r, r) in pure_nash(mw_hd) and (r, r) in pareto_optimal(mw_hd), family="D3",
               note="recomputed (R,R) pays 10 and is dominated by (H,D) paying 25 to each player")

    for prefix, table, classical in (("HD", mw_hd, hd), ("PD", mw_pd, pd)):
        replicas = classical_replicas(table, classical)
        r_cells = [cell for cell, found in replicas.items() if r in cell]
        ledger.add(f"REPLICA-{prefix}-R", f"{'hawk-dove' if prefix == 'HD' else 'prisoner'} payoffs with R "
                                          f"are not reproduced by any classical cell",
                   True, all(not replicas[c] for c in r_cells))
    q_cells = [(i, j) for i in range(3) for j in range(3) if 2 in (i, j)]
    q_replicas = classical_replicas(eisert_hd, hd)
    ledger.add("REPLICA-HD-Q", "hawk-dove payoffs with Q are reproduced by classical cells",
               True, all(q_replicas[c] for c in q_cells))


def _surface_claims(ledger: ClaimLedger) -> None:
    hd_surface = Surface.hawk_dove()
    pd_surface = Surface.prisoners_dilemma()
    hd_ops = payoff_operators(hawk_dove_game(HawkDoveParams()))
    pd_ops = payoff_operators(prisoners_dilemma_game())

    corners = [(1.0, 1.0), (1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]
    ledger.add("EQ19-CORNERS", "reduced hawk-dove surface -60pq+30(p+q)-5 at the corners",
               [-5, 25, 25, -5], [mw_mixed_payoff(hd_ops, BELL_PLUS, p, q)[0] for p, q in corners])

    axis = lattice(21)
    hd_dev = max(abs(hd_surface.payoff(p, q)[0] - mw_mixed_payoff(hd_ops, BELL_PLUS, p, q)[0])
                 for p in axis for q in axis)
    pd_dev = max(abs(pd_surface.payoff(p, q)[0] - mw_mixed_payoff(pd_ops, BELL_PLUS, p, q)[0])
                 for p in axis for q in axis)
    ledger.add("EQ19-ORACLE", "reduced hawk-dove surface against the density-matrix computation", 0.0, hd_dev,
               note="max deviation over the 21x21 lattice")
    ledger.add("PD-SURFACE-ORACLE", "prisoner's dilemma surface 1/2(4-2pq+p+q) against the density-matrix computation",
               0.0, pd_dev, note="max deviation over the 21x21 lattice")

    for prefix, surface, best, argmax in (("EQ19", hd_surface, golden.HD_SURFACE_MAX, golden.HD_SURFACE_ARGMAX),
                                          ("PD-SURFACE", pd_surface, golden.PD_SURFACE_MAX, golden.PD_SURFACE_ARGMAX)):
        grid = grid_scan(surface, 101)
        ledger.add(f"{prefix}-MAX", f"{surface.kind.value} surface maximum", best, grid_max(grid))
        ledger.add(f"{prefix}-ARGMAX", f"{surface.kind.value} surface maximisers",
                   [list(pq) for pq in argmax], [list(pq) for pq in sorted(grid_argmax(grid))])

    region = region_above(hd_surface, golden.REGION_THRESHOLD, 1001)
    lobe = region.lobe("p>q")
    box = lobe.bounding_box()
    p_lo, p_hi, q_lo, q_hi = golden.REGION_BOX
    inside = box is not None and p_lo < box[0] and box[1] <= p_hi and q_lo <= box[2] and box[3] < q_hi
    ledger.add("FIG1B-BOX", "hawk-dove region above 15 lies in 0.66<p<1, 0<q<0.34", True, inside,
               note=f"lobe p>q at resolution 1001 spans {clean(list(box)) if box else None}; "
                    f"the surface is symmetric, so the mirror lobe q>p holds the transposed points")
    ledger.add("FIG1B-POINTS", "hawk-dove region above 15: (0.8,0.1) inside, (0.5,0.5) outside",
               [True, False], [region.contains(0.8, 0.1), region.contains(0.5, 0.5)])


def _angle_payoff_claims(ledger: ClaimLedger, seed: int, samples: int) -> None:
    hd_ops = payoff_operators(hawk_dove_game(HawkDoveParams()))
    spec = QuantumGameSpec(Scheme.EISERT, hd_ops)
    strategies = dict(parse_strategies("H,D,Q"))

    deviations = []
    for la, sa in strategies.items():
        for lb, sb in strategies.items():
            bob = evaluate_cell(spec, sa, sb)[1]
            deviations.append(abs(closed_form_angle_payoff(*LABEL_ANGLES[la], *LABEL_ANGLES[lb]) - bob))
    ledger.add("ANGLE-PAYOFF-BOB", "closed-form angle payoff against Bob's payoff on the nine H/D/Q profiles",
               0.0, max(deviations))

    alice_hd = evaluate_cell(spec, strategies["H"], strategies["D"])[0]
    ledger.add("ANGLE-PAYOFF-ALICE", "closed-form angle payoff stated for either player, profile (H,D)",
               closed_form_angle_payoff(*LABEL_ANGLES["H"], *LABEL_ANGLES["D"]), alice_hd, family="D2",
               note="the expression matches Bob's payoff, not Alice's")

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        ta, tb = rng.uniform(0, math.pi, 2)
        pa, pb = rng.uniform(0, math.pi / 2, 2)
        state = eisert_final_state(u_theta_phi(ta, pa), u_theta_phi(tb, pb))
        bob = expected_payoffs(outer(state), hd_ops)[1]
        worst = max(worst, abs(closed_form_angle_payoff(ta, pa, tb, pb) - bob))
    ledger.add("ANGLE-PAYOFF-SAMPLED", "closed-form angle payoff against Bob's payoff at random angles",
               0.0, worst, family="D2",
               note=f"max deviation over {samples} samples, seed {seed}; u(theta,phi) used as given, "
                    f"so theta=pi is u(pi,0)=ZX rather than X")


def run_verification(seed: int = config.SEED, samples: int = config.SAMPLES) -> List[ClaimReport]:
    ledger = ClaimLedger()
    _classical_claims(ledger)
    eisert_pd, eisert_hd = _quantum_table_claims(ledger)
    _random_strategy_claims(ledger, eisert_pd, eisert_hd)
    _surface_claims(ledger)
    _angle_payoff_claims(ledger, seed, samples)
    bad = sum(1 for c in ledger.claims if c.verdict is Verdict.DISCREPANCY)
    logger.info(f"verified {len(ledger.claims)} claims, {bad} discrepancies")
    return ledger.claims


def summarize(claims: Sequence[ClaimReport]) -> dict:
    families = sorted({c.family for c in claims if c.verdict is Verdict.DISCREPANCY and c.family})
    return {
        "total": len(claims),
        "match": sum(1 for c in claims if c.verdict is Verdict.MATCH),
        "discrepancy": sum(1 for c in claims if c.verdict is Verdict.DISCREPANCY),
        "families": families,
    }
