"""
Cobordism Move Model
Counting-level model of knot cobordisms (births, bands, deaths): trace
validation, Euler characteristic bookkeeping, normal form, and the torsion
order bounds evaluated on move sequences and on the K_{gamma,m} family
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from exceptions import (
    InfeasibleTraceError,
    InvalidInputError,
    InvariantViolation,
    MoveFileError,
    NoNonorientableBandError,
)
from knots import (
    KnotExpr,
    format_knot,
    gamma4_lower_bound,
    knot_family,
    order_u,
    parse_knot,
    torus_knot,
)

logger = logging.getLogger(__name__)


# ============= MOVES =============

class MoveKind(Enum):
    BIRTH = "birth"
    DEATH = "death"
    BAND = "band"


class BandKind(Enum):
    MERGE = "merge"
    SPLIT = "split"
    NONORIENTABLE_SELF = "nonorientable"


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    band: Optional[BandKind] = None

    def __post_init__(self):
        if (self.kind is MoveKind.BAND) != (self.band is not None):
            raise InvalidInputError(f"band kind must be given exactly for band moves: {self.kind}, {self.band}")

    @property
    def delta(self) -> int:
        """Change in the number of link components"""
        if self.kind is MoveKind.BIRTH:
            return 1
        if self.kind is MoveKind.DEATH:
            return -1
        return {BandKind.MERGE: -1, BandKind.SPLIT: 1, BandKind.NONORIENTABLE_SELF: 0}[self.band]

    def __str__(self) -> str:
        if self.kind is MoveKind.BAND:
            return f"band {self.band.value}"
        return self.kind.value


BIRTH = Move(MoveKind.BIRTH)
DEATH = Move(MoveKind.DEATH)
MERGE = Move(MoveKind.BAND, BandKind.MERGE)
SPLIT = Move(MoveKind.BAND, BandKind.SPLIT)
NONORIENTABLE_SELF = Move(MoveKind.BAND, BandKind.NONORIENTABLE_SELF)

_MOVES_BY_TEXT = {str(move): move for move in (BIRTH, DEATH, MERGE, SPLIT, NONORIENTABLE_SELF)}


@dataclass(frozen=True)
class MoveSequence:
    """Ordered moves with optional declared endpoints (metadata only)"""
    moves: Tuple[Move, ...] = ()
    source: Optional[KnotExpr] = None
    target: Optional[KnotExpr] = None

    def __len__(self) -> int:
        return len(self.moves)

    def with_moves(self, moves: Sequence[Move]) -> 'MoveSequence':
        return MoveSequence(tuple(moves), self.source, self.target)


@dataclass(frozen=True)
class CobordismStats:
    m: int
    b: int
    M: int
    chi: int
    gamma: int
    norm: int
    nonorientable: bool

    @property
    def ribbon(self) -> bool:
        return self.M == 0


# ============= VALIDATION AND COUNTS =============

def validate(s: MoveSequence, start_components: int = 1) -> Tuple[int, ...]:
    """
    Fold the moves over a component count

    Args:
        s: Move sequence
        start_components: Components of the starting link (>= 1)

    Returns:
        Trace of component counts, one longer than the sequence

    Raises:
        InfeasibleTraceError: naming the first move that drives the count below one
    """
    if start_components < 1:
        raise InvalidInputError(f"start_components must be >= 1, got {start_components}")
    trace = [start_components]
    for index, move in enumerate(s.moves):
        count = trace[-1]
        if move == MERGE and count == 1:
            raise InfeasibleTraceError("merge band applied to a single component", index)
        if count + move.delta < 1:
            raise InfeasibleTraceError(f"{move} drives the component count below 1", index)
        trace.append(count + move.delta)
    return tuple(trace)


def nonorientable_genus(chi: int, boundary_components: int) -> int:
    """2 - chi - n for a non-orientable surface with n boundary circles"""
    return 2 - chi - boundary_components


def stats(s: MoveSequence) -> CobordismStats:
    """
    Counts and derived quantities of a knot-to-knot sequence

    Raises:
        InvalidInputError: when the trace does not end on a knot
    """
    trace = validate(s)
    if trace[-1] != 1:
        raise InvalidInputError(f"endpoints not knots: trace ends at {trace[-1]} components")

    m = sum(1 for move in s.moves if move.kind is MoveKind.BIRTH)
    M = sum(1 for move in s.moves if move.kind is MoveKind.DEATH)
    b = len(s.moves) - m - M
    chi = m - b + M
    return CobordismStats(
        m=m,
        b=b,
        M=M,
        chi=chi,
        gamma=nonorientable_genus(chi, 2),
        norm=max(m, M) - chi,
        nonorientable=any(move == NONORIENTABLE_SELF for move in s.moves),
    )


def normalize(s: MoveSequence) -> MoveSequence:
    """
    Normal form with a single non-orientable band

    Births, then as many merges, then the remaining orientable bands as
    (split, merge) pairs, one non-orientable band, then splits and deaths.
    The counts (m, b, M) are preserved, which forces an odd number of
    non-orientable bands in the input and b >= m + M + 1.

    Raises:
        NoNonorientableBandError: orientable input
        InvalidInputError: no normal form with these counts
    """
    st = stats(s)
    if not st.nonorientable:
        raise NoNonorientableBandError("no non-orientable band: the sequence is orientable")

    middle = st.b - (st.m + st.M + 1)
    if middle < 0 or middle % 2:
        raise InvalidInputError(
            f"infeasible counts for a normal form: m={st.m}, b={st.b}, M={st.M} "
            f"leave {middle} orientable bands between the births and deaths"
        )

    moves = (
        [BIRTH] * st.m
        + [MERGE] * st.m
        + [SPLIT, MERGE] * (middle // 2)
        + [NONORIENTABLE_SELF]
        + [SPLIT] * st.M
        + [DEATH] * st.M
    )
    normal = s.with_moves(moves)
    normal_stats = stats(normal)
    if (normal_stats.m, normal_stats.b, normal_stats.M) != (st.m, st.b, st.M):
        raise InvariantViolation(f"normal form changed the counts: {st} -> {normal_stats}")
    return normal


# ============= BOUNDS =============

def torsion_order_upper_bound(order_target: int, st: CobordismStats) -> int:
    """Order_U of the source is at most max(Order_U(target), M) + gamma"""
    return max(order_target, st.M) + st.gamma


def ribbon_bound(order_target: int, st: CobordismStats) -> int:
    """Order_U(target) + gamma, valid only without local maxima"""
    if not st.ribbon:
        raise InvalidInputError(f"ribbon bound needs M = 0, got M = {st.M}")
    return order_target + st.gamma


def min_local_minima(k: KnotExpr, gamma: int) -> int:
    """Least number of local minima of a genus-gamma surface bounding k"""
    return max(0, order_u(k) - gamma + 1)


def dur_lower_bound(k1: KnotExpr, k2: KnotExpr) -> int:
    return abs(order_u(k1) - order_u(k2))


def ulb_lower_bound(k: KnotExpr) -> int:
    return order_u(k)


def wong_bound_check(k1: KnotExpr, k2: KnotExpr, st: CobordismStats) -> bool:
    """|Order_U(k1) - Order_U(k2)| <= m + b + M"""
    return dur_lower_bound(k1, k2) <= st.m + st.b + st.M


def batson_sequence(r: int, s: int) -> MoveSequence:
    """r - s non-orientable bands from T(2r-1, 2r) down to T(2s-1, 2s)"""
    if not r > s >= 1:
        raise InvalidInputError(f"band sequence needs r > s >= 1, got r={r}, s={s}")
    return MoveSequence(
        moves=(NONORIENTABLE_SELF,) * (r - s),
        source=torus_knot(2 * r - 1, 2 * r),
        target=torus_knot(2 * s - 1, 2 * s),
    )


# ============= REPORTS =============

M1_BOUNDARY_FLAG = "m=1 boundary case"


@dataclass(frozen=True)
class BoundReport:
    """Bound values for K_{gamma,m} with a provenance label per value"""
    knot: str
    gamma: int
    m: int
    r: int
    s: int
    order_u: int
    gamma4: int
    d_u: int
    min_minima: int
    dur_lower: int
    dur_lower_order_difference: int
    dur_upper: Optional[int]
    flags: Tuple[str, ...] = ()
    provenance: Dict[str, str] = field(default_factory=dict)


def family_report(gamma: int, m: int) -> BoundReport:
    """
    Evaluate every bound on K_{gamma,m} = T(2r-1,2r) # mirror(T(2s-1,2s))

    Args:
        gamma: Target non-orientable 4-genus, >= 1
        m: Target minimum number of local minima, >= 1

    Returns:
        BoundReport; the refined-distance upper bound is suppressed at m = 1
    """
    knot = knot_family(gamma, m)
    r, s = gamma + m, m

    order = order_u(knot)
    if order != gamma + m - 1:
        raise InvariantViolation(f"Order_U(K_{gamma},{m}) = {order}, expected {gamma + m - 1}")

    g4 = gamma4_lower_bound(knot)
    band_genus = stats(batson_sequence(r, s)).gamma
    if g4 != gamma or band_genus != gamma:
        raise InvariantViolation(f"K_{gamma},{m}: gamma_4 lower bound {g4}, band genus {band_genus}")

    minima = min_local_minima(knot, gamma)
    if minima != m:
        raise InvariantViolation(f"K_{gamma},{m}: minima bound {minima}, expected {m}")

    flags = []
    dur_upper: Optional[int] = gamma + 2 * m - 2
    if dur_upper < gamma + m:
        flags.append(M1_BOUNDARY_FLAG)
        dur_upper = None

    logger.info(f"family report for K_{gamma},{m} = {format_knot(knot)}")
    return BoundReport(
        knot=format_knot(knot),
        gamma=gamma,
        m=m,
        r=r,
        s=s,
        order_u=order,
        gamma4=g4,
        d_u=band_genus,
        min_minima=minima,
        dur_lower=minima + g4,
        dur_lower_order_difference=order,
        dur_upper=dur_upper,
        flags=tuple(flags),
        provenance={
            'order_u': "homology of the tensor complex",
            'gamma4': "upsilon - signature/2",
            'd_u': "band sequence to a slice knot, matched by the gamma4 bound",
            'min_minima': "torsion order bound with M = n - 1",
            'dur_lower': "min_minima + gamma4",
            'dur_lower_order_difference': "|Order_U(K) - Order_U(U)|",
            'dur_upper': "claimed, not constructed",
        },
    )


@dataclass(frozen=True)
class CobordismReport:
    trace: Tuple[int, ...]
    stats: CobordismStats
    normalized: Optional[MoveSequence]
    normalize_note: Optional[str]
    source: Optional[str] = None
    target: Optional[str] = None
    torsion_order_upper_bound: Optional[int] = None
    source_order_u: Optional[int] = None
    bound_holds: Optional[bool] = None
    wong_bound_check: Optional[bool] = None
    dur_lower_bound: Optional[int] = None
    ribbon_bound: Optional[int] = None


def cobordism_report(seq: MoveSequence) -> CobordismReport:
    """Validate, count, normalize, and evaluate bounds when both endpoints are declared"""
    trace = validate(seq)
    st = stats(seq)

    normalized, note = None, None
    try:
        normalized = normalize(seq)
    except NoNonorientableBandError as e:
        note = str(e)
    except InvalidInputError as e:
        note = str(e)
        logger.warning(f"sequence has no normal form: {e}")

    if seq.source is None or seq.target is None:
        return CobordismReport(
            trace=trace,
            stats=st,
            normalized=normalized,
            normalize_note=note,
            source=None if seq.source is None else format_knot(seq.source),
            target=None if seq.target is None else format_knot(seq.target),
        )

    source_order = order_u(seq.source)
    target_order = order_u(seq.target)
    bound = torsion_order_upper_bound(target_order, st)
    holds = source_order <= bound
    wong = wong_bound_check(seq.source, seq.target, st)
    if not holds or not wong:
        logger.warning("declared sequence is inconsistent with the torsion order bounds")

    return CobordismReport(
        trace=trace,
        stats=st,
        normalized=normalized,
        normalize_note=note,
        source=format_knot(seq.source),
        target=format_knot(seq.target),
        torsion_order_upper_bound=bound,
        source_order_u=source_order,
        bound_holds=holds,
        wong_bound_check=wong,
        dur_lower_bound=abs(source_order - target_order),
        ribbon_bound=ribbon_bound(target_order, st) if st.ribbon else None,
    )


# ============= MOVE FILES =============

def _parse_header(value: str, line_number: int) -> KnotExpr:
    try:
        return parse_knot(value)
    except InvalidInputError as e:
        raise MoveFileError(str(e), line_number) from e


def parse_moves(text: str) -> MoveSequence:
    """
    Read the move-file format

    Optional `from:` / `to:` headers, then one move per line (`birth`,
    `death`, `band merge`, `band split`, `band nonorientable`). Lines whose
    first non-blank character is `#` are comments; headers are taken whole
    since `#` also joins knots.
    """
    source: Optional[KnotExpr] = None
    target: Optional[KnotExpr] = None
    moves: List[Move] = []

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue

        key, sep, value = line.partition(':')
        if sep and key.strip().lower() in ('from', 'to'):
            key = key.strip().lower()
            if moves:
                raise MoveFileError(f"'{key}:' header after the first move", line_number)
            if (source if key == 'from' else target) is not None:
                raise MoveFileError(f"duplicate '{key}:' header", line_number)
            knot = _parse_header(value, line_number)
            if key == 'from':
                source = knot
            else:
                target = knot
            continue

        body = ' '.join(line.split('#', 1)[0].lower().split())
        move = _MOVES_BY_TEXT.get(body)
        if move is None:
            raise MoveFileError(f"unknown move {body!r}", line_number)
        moves.append(move)

    return MoveSequence(tuple(moves), source, target)


def format_moves(seq: MoveSequence) -> str:
    lines = []
    if seq.source is not None:
        lines.append(f"from: {format_knot(seq.source)}")
    if seq.target is not None:
        lines.append(f"to: {format_knot(seq.target)}")
    lines.extend(str(move) for move in seq.moves)
    return '\n'.join(lines) + '\n'


def random_move_sequence(rng: np.random.Generator, length: int) -> MoveSequence:
    """
    Random valid knot-to-knot sequence

    Draws `length` feasible moves, then closes off extra components with
    deaths and merges until one component remains.
    """
    moves: List[Move] = []
    count = 1
    for _ in range(length):
        options = [BIRTH, SPLIT, NONORIENTABLE_SELF]
        if count > 1:
            options += [DEATH, MERGE]
        move = options[int(rng.integers(len(options)))]
        moves.append(move)
        count += move.delta
    while count > 1:
        move = (DEATH, MERGE)[int(rng.integers(2))]
        moves.append(move)
        count -= 1
    return MoveSequence(tuple(moves))
