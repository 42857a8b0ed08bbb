"""
Acceptance Battery
Exact reproduction checks and structural property suites behind `selftest`
"""

from dataclasses import dataclass
from math import gcd
from typing import Callable, List, Optional, Tuple
import logging

import numpy as np
import pandas as pd

from cobordism import (
    batson_sequence,
    family_report,
    min_local_minima,
    normalize,
    random_move_sequence,
    stats,
    torsion_order_upper_bound,
)
from config import get_config
from exceptions import InvalidInputError, InvariantViolation, KnotTorsionError
from fumod import (
    ChainComplex,
    FUMatrix,
    HomologyDecomposition,
    UPoly,
    determinant,
    fraction_free_rank,
    homology,
    smith_normal_form,
    torsion_order,
)
from knots import (
    Mirror,
    complex_of,
    format_knot,
    gamma4_lower_bound,
    knot_family,
    order_u,
    seifert_signature,
    signature,
    torus_knot,
    torus_signature,
    upsilon,
)
from laurent import GapSequence, torus_alexander, torus_gap_formula, torus_gaps
from staircase import mirror_complex, staircase_complex, tensor_complex

logger = logging.getLogger(__name__)

# the Seifert oracle's characteristic polynomial grows quickly with p*q
SEIFERT_MAX_Q = 7


def _require(condition: bool, message: str = "") -> None:
    """Fail the current check with an InvariantViolation"""
    if not condition:
        raise InvariantViolation(message or "check failed")


@dataclass(frozen=True)
class CheckResult:
    name: str
    description: str
    passed: bool
    detail: str = ""


def corrupted_gap_formula(n: int) -> GapSequence:
    """Negative control: the closed form with its first two gaps swapped"""
    gaps = list(torus_gap_formula(n).gaps)
    gaps[0], gaps[1] = gaps[1], gaps[0]
    return GapSequence(tuple(gaps))


class AcceptanceSuite:
    """Runs every acceptance check and collects pass/fail results"""

    def __init__(self, max_n: Optional[int] = None, seed: Optional[int] = None,
                 gap_formula: Callable[[int], GapSequence] = torus_gap_formula):
        """
        Initialize the suite

        Args:
            max_n: Largest n for the T(n, n+1) checks
            seed: Seed for the random matrices, move sequences and pairs
            gap_formula: Closed-form gaps to compare against (replaceable for negative controls)
        """
        cfg = get_config()
        self.cfg = cfg
        self.max_n = max_n if max_n is not None else cfg.SELFTEST_MAX_N
        self.seed = seed if seed is not None else cfg.RANDOM_SEED
        self.gap_formula = gap_formula
        self.complexes: List[Tuple[str, ChainComplex, HomologyDecomposition]] = []

    def _measure(self, label: str, c: ChainComplex) -> HomologyDecomposition:
        """Homology of c, recorded for the structural checks"""
        h = homology(c)
        self.complexes.append((label, c, h))
        return h

    # ============= REPRODUCTIONS =============

    def check_torus_torsion(self) -> str:
        for n in range(2, self.max_n + 1):
            c = staircase_complex(torus_gaps(n, n + 1))
            found = torsion_order(self._measure(f"T({n},{n + 1})", c))
            _require(found == n // 2, f"T({n},{n + 1}): torsion order {found}, expected {n // 2}")
        return f"2 <= n <= {self.max_n}"

    def check_gap_formula(self) -> str:
        for n in range(2, self.max_n + 1):
            computed = torus_gaps(n, n + 1)
            expected = self.gap_formula(n)
            _require(computed == expected, f"T({n},{n + 1}): gaps {computed.gaps} != {expected.gaps}")
        return f"2 <= n <= {self.max_n}"

    def check_kunneth(self) -> str:
        rng = np.random.default_rng(self.seed)
        top = min(8, self.max_n)
        pool = []
        for n in range(2, top + 1):
            knot = torus_knot(n, n + 1)
            pool.extend([knot, Mirror(knot)])

        for _ in range(self.cfg.KUNNETH_PAIRS):
            i, j = (int(x) for x in rng.integers(len(pool), size=2))
            left, right = pool[i], pool[j]
            product = tensor_complex(complex_of(left), complex_of(right))
            found = torsion_order(self._measure(f"{format_knot(left)} # {format_knot(right)}", product))
            expected = max(torsion_order(homology(complex_of(left))), torsion_order(homology(complex_of(right))))
            _require(found == expected, f"{format_knot(left)} # {format_knot(right)}: {found} != max = {expected}")
        return f"{self.cfg.KUNNETH_PAIRS} pairs, seed {self.seed}"

    def check_mirror_invariance(self) -> str:
        top = min(10, self.max_n)
        for n in range(2, top + 1):
            c = staircase_complex(torus_gaps(n, n + 1))
            dual = mirror_complex(c)
            _require(torsion_order(self._measure(f"mirror(T({n},{n + 1}))", dual)) == torsion_order(homology(c)), f"n={n}")
        return f"2 <= n <= {top}"

    def check_closed_forms(self) -> str:
        for r in range(2, 7):
            knot = torus_knot(2 * r - 1, 2 * r)
            s = signature(knot)
            _require(s == -2 * r * r + 2, f"sigma(T({2 * r - 1},{2 * r})) = {s}")
            _require(upsilon(knot) - s // 2 == r - 1, f"r={r}: upsilon - sigma/2 = {upsilon(knot) - s // 2}")
            _require(gamma4_lower_bound(knot) == r - 1)
        pairs = 0
        for q in range(2, SEIFERT_MAX_Q + 1):
            for p in range(2, q):
                if gcd(p, q) != 1:
                    continue
                lattice, oracle = torus_signature(p, q), seifert_signature(p, q)
                _require(lattice == oracle, f"T({p},{q}): lattice {lattice} != Seifert {oracle}")
                pairs += 1
        return f"2 <= r <= 6; {pairs} Seifert comparisons"

    def check_family(self) -> str:
        for gamma in range(1, 5):
            for m in range(1, 5):
                knot = knot_family(gamma, m)
                direct = torsion_order(self._measure(format_knot(knot), complex_of(knot)))
                _require(direct == gamma + m - 1, f"K_{gamma},{m}: Order_U {direct}")
                _require(gamma4_lower_bound(knot) == gamma)
                _require(min_local_minima(knot, gamma) == m)
                report = family_report(gamma, m)
                _require(report.dur_lower == gamma + m, f"K_{gamma},{m}: refined lower bound {report.dur_lower}")
        return "1 <= gamma, m <= 4"

    def check_batson(self) -> str:
        for r in range(2, 7):
            for s in range(1, r):
                st = stats(batson_sequence(r, s))
                _require(st.gamma == r - s)
                bound = torsion_order_upper_bound(order_u(torus_knot(2 * s - 1, 2 * s)), st)
                source = order_u(torus_knot(2 * r - 1, 2 * r))
                _require(bound == source == r - 1, f"r={r}, s={s}: bound {bound}, Order_U {source}")
        return "1 <= s < r <= 6"

    # ============= STRUCTURAL PROPERTIES =============

    def check_square_zero(self) -> str:
        for label, c, _ in self.complexes:
            _require(c.square_is_zero(), f"d^2 != 0 on {label}")
        return f"{len(self.complexes)} complexes"

    def check_free_rank(self) -> str:
        for label, _, h in self.complexes:
            _require(h.free_rank == 1, f"{label}: free rank != 1")
        return f"{len(self.complexes)} complexes"

    def check_smith_forms(self) -> str:
        rng = np.random.default_rng(self.seed)
        for trial in range(self.cfg.SNF_RANDOM_TRIALS):
            rows, cols = (int(x) for x in rng.integers(1, 7, size=2))
            table = rng.integers(0, 32, size=(rows, cols)).tolist()
            m = FUMatrix.from_rows(table, cols)
            form = smith_normal_form(m)
            _require(form.rank == fraction_free_rank(m), f"trial {trial}: rank mismatch")
            _require(determinant(form.left_transform) == UPoly(1), f"trial {trial}: left transform not invertible")
            _require(determinant(form.right_transform) == UPoly(1), f"trial {trial}: right transform not invertible")
        return f"{self.cfg.SNF_RANDOM_TRIALS} random matrices"

    def check_alexander(self) -> str:
        count = 0
        for q in range(2, 10):
            for p in range(1, q):
                if gcd(p, q) != 1:
                    continue
                delta = torus_alexander(p, q)
                _require(delta.is_symmetric() and delta.evaluate(1) == 1, f"T({p},{q})")
                count += 1
        return f"{count} torus knots"

    def check_move_sequences(self) -> str:
        rng = np.random.default_rng(self.seed)
        normalized = 0
        for _ in range(self.cfg.MOVE_RANDOM_TRIALS):
            seq = random_move_sequence(rng, int(rng.integers(0, 12)))
            st = stats(seq)
            _require(st.chi == st.m - st.b + st.M)
            _require(st.gamma == -st.chi)
            _require(st.norm == max(st.m, st.M) - st.chi)
            try:
                normal = normalize(seq)
            except InvalidInputError:
                continue
            after = stats(normal)
            _require((after.m, after.b, after.M) == (st.m, st.b, st.M))
            normalized += 1
        return f"{self.cfg.MOVE_RANDOM_TRIALS} sequences, {normalized} normalized"

    def checks(self):
        # structural checks run last so they see every complex built above
        return [
            ("torus-torsion", "Order_U(T(n,n+1)) = floor(n/2) via homology", self.check_torus_torsion),
            ("gap-formula", "gaps of T(n,n+1) match the closed form", self.check_gap_formula),
            ("kunneth", "torsion order of a tensor product is the max", self.check_kunneth),
            ("mirror", "dual complex keeps the torsion order", self.check_mirror_invariance),
            ("closed-forms", "signature and upsilon closed forms", self.check_closed_forms),
            ("family", "K_{gamma,m} order, gamma_4, minima, refined bound", self.check_family),
            ("band-sequences", "torsion order bound is tight on band sequences", self.check_batson),
            ("square-zero", "d^2 = 0 on every constructed complex", self.check_square_zero),
            ("free-rank", "knot complexes have one free summand", self.check_free_rank),
            ("smith-forms", "Smith forms verified on random matrices", self.check_smith_forms),
            ("alexander", "Delta symmetric with Delta(1) = 1 for q <= 9", self.check_alexander),
            ("move-stats", "move sequence identities and normal forms", self.check_move_sequences),
        ]

    def run(self) -> List[CheckResult]:
        results = []
        for name, description, check in self.checks():
            try:
                detail = check()
                passed = True
            except KnotTorsionError as e:
                detail = str(e) or type(e).__name__
                passed = False
                logger.error(f"check {name} failed: {detail}")
            else:
                logger.info(f"check {name} passed ({detail})")
            results.append(CheckResult(name, description, passed, detail))
        return results


def results_table(results: List[CheckResult]) -> str:
    frame = pd.DataFrame(
        [
            {
                'check': r.name,
                'description': r.description,
                'result': 'PASS' if r.passed else 'FAIL',
                'detail': r.detail,
            }
            for r in results
        ],
        columns=['check', 'description', 'result', 'detail'],
    )
    return frame.to_string(index=False)


def all_passed(results: List[CheckResult]) -> bool:
    return all(r.passed for r in results)
