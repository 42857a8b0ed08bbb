"""
F2[U] Module Algebra
Polynomials over the two-element field, matrices of them, Smith normal form,
chain complexes of free F2[U]-modules and their homology
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union
import logging

from exceptions import InvalidInputError, InvariantViolation, NonMonomialTorsionError

logger = logging.getLogger(__name__)


# ============= RAW BIT-MASK ARITHMETIC =============
# A polynomial over F2 is an int whose bit k is the coefficient of U^k.

def _degree(a: int) -> int:
    return a.bit_length() - 1


def _mul(a: int, b: int) -> int:
    """Carry-less product"""
    if a.bit_length() > b.bit_length():
        a, b = b, a
    product = 0
    while a:
        low = a & -a
        product ^= b << (low.bit_length() - 1)
        a ^= low
    return product


def _divmod(a: int, b: int) -> Tuple[int, int]:
    if b == 0:
        raise InvalidInputError("division by the zero polynomial")
    db = _degree(b)
    quotient = 0
    while a and _degree(a) >= db:
        shift = _degree(a) - db
        quotient |= 1 << shift
        a ^= b << shift
    return quotient, a


def _is_monomial(a: int) -> bool:
    return a != 0 and a & (a - 1) == 0


@dataclass(frozen=True, order=True)
class UPoly:
    """Polynomial over F2 in U; bit k of `bits` is the coefficient of U^k"""
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise InvalidInputError("UPoly bit mask must be non-negative")

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> 'UPoly':
        bits = 0
        for e in exponents:
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def monomial(cls, exponent: int) -> 'UPoly':
        return cls(1 << exponent)

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial"""
        return _degree(self.bits)

    def is_zero(self) -> bool:
        return self.bits == 0

    def is_monomial(self) -> bool:
        return _is_monomial(self.bits)

    def exponents(self) -> List[int]:
        return [k for k in range(self.bits.bit_length()) if self.bits >> k & 1]

    def __add__(self, other: 'UPoly') -> 'UPoly':
        return UPoly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: 'UPoly') -> 'UPoly':
        return UPoly(_mul(self.bits, other.bits))

    def __divmod__(self, other: 'UPoly') -> Tuple['UPoly', 'UPoly']:
        return upoly_divmod(self, other)

    def __mod__(self, other: 'UPoly') -> 'UPoly':
        return upoly_divmod(self, other)[1]

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        if self.bits == 0:
            return "0"
        parts = []
        for e in reversed(self.exponents()):
            parts.append("1" if e == 0 else ("U" if e == 1 else f"U^{e}"))
        return " + ".join(parts)


def upoly_divmod(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly]:
    """
    Euclidean division over F2[U]

    Args:
        a: Dividend
        b: Nonzero divisor

    Returns:
        (quotient, remainder) with a = b*quotient + remainder, deg remainder < deg b
    """
    q, r = _divmod(a.bits, b.bits)
    return UPoly(q), UPoly(r)


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    x, y = a.bits, b.bits
    while y:
        x, y = y, _divmod(x, y)[1]
    return UPoly(x)


# ============= MATRICES =============

Entry = Union[UPoly, int]


@dataclass(frozen=True)
class FUMatrix:
    """Dense matrix over F2[U]; entries stored as bit masks"""
    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise InvalidInputError(f"entry table does not match shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Entry]], cols: Optional[int] = None) -> 'FUMatrix':
        table = tuple(tuple(e.bits if isinstance(e, UPoly) else int(e) for e in row) for row in rows)
        if cols is None:
            cols = len(table[0]) if table else 0
        return cls(len(table), cols, table)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'FUMatrix':
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> 'FUMatrix':
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.entries]

    def transpose(self) -> 'FUMatrix':
        table = tuple(tuple(row[j] for row in self.entries) for j in range(self.cols))
        return FUMatrix(self.cols, self.rows, table)

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.entries for e in row)

    def __matmul__(self, other: 'FUMatrix') -> 'FUMatrix':
        if self.cols != other.rows:
            raise InvalidInputError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for row in self.entries:
            acc = [0] * other.cols
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in enumerate(other.entries[k]):
                    if b:
                        acc[j] ^= _mul(a, b)
            out.append(tuple(acc))
        return FUMatrix(self.rows, other.cols, tuple(out))


# ============= SMITH NORMAL FORM =============

@dataclass(frozen=True)
class SmithForm:
    """Invariant factors with the transforms realizing left * M * right = diagonal"""
    invariant_factors: Tuple[UPoly, ...]
    rank: int
    left_transform: FUMatrix
    right_transform: FUMatrix
    shape: Tuple[int, int]

    def diagonal(self) -> FUMatrix:
        rows, cols = self.shape
        table = [[0] * cols for _ in range(rows)]
        for i, f in enumerate(self.invariant_factors):
            table[i][i] = f.bits
        return FUMatrix.from_rows(table, cols)


def _identity_lists(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _smith_diagonalize(m: FUMatrix, track: bool):
    """
    Euclidean Smith reduction

    Pivot on the nonzero entry of minimal degree (row-major tie-break), clear
    its row and column by division, restart on a smaller remainder, and fold a
    row into the pivot row whenever the pivot fails to divide the rest.
    """
    rows, cols = m.rows, m.cols
    a = m.to_lists()
    left = _identity_lists(rows) if track else None
    right = _identity_lists(cols) if track else None

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if track:
            left[i], left[k] = left[k], left[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in right:
                row[j], row[k] = row[k], row[j]

    def add_row_multiple(target, source, factor):
        # row_target += factor * row_source
        src = a[source]
        dst = a[target]
        for j in range(cols):
            if src[j]:
                dst[j] ^= _mul(factor, src[j])
        if track:
            src_l, dst_l = left[source], left[target]
            for j in range(rows):
                if src_l[j]:
                    dst_l[j] ^= _mul(factor, src_l[j])

    def add_col_multiple(target, source, factor):
        # col_target += factor * col_source
        for row in a:
            if row[source]:
                row[target] ^= _mul(factor, row[source])
        if track:
            for row in right:
                if row[source]:
                    row[target] ^= _mul(factor, row[source])

    factors: List[int] = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            row = a[i]
            for j in range(t, cols):
                e = row[j]
                if e and (best is None or e.bit_length() < best[0]):
                    best = (e.bit_length(), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)

        while True:
            pivot = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q, r = _divmod(a[i][t], pivot)
                    add_row_multiple(i, t, q)
                    clean = clean and r == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    q, r = _divmod(a[t][j], pivot)
                    add_col_multiple(j, t, q)
                    clean = clean and r == 0
            if not clean:
                candidates = [(a[i][t].bit_length(), i, t) for i in range(t + 1, rows) if a[i][t]]
                candidates += [(a[t][j].bit_length(), t, j) for j in range(t + 1, cols) if a[t][j]]
                _, ci, cj = min(candidates)
                if ci != t:
                    swap_rows(t, ci)
                if cj != t:
                    swap_cols(t, cj)
                continue

            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] and _divmod(a[i][j], pivot)[1]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row_multiple(t, offender, 1)

        factors.append(a[t][t])
        t += 1

    return factors, a, left, right


def smith_normal_form(m: FUMatrix) -> SmithForm:
    """
    Smith normal form over F2[U] with verified transforms

    Args:
        m: Any matrix over F2[U]

    Returns:
        SmithForm whose invariant factors form a divisibility chain
    """
    factors, _, left, right = _smith_diagonalize(m, track=True)
    form = SmithForm(
        invariant_factors=tuple(UPoly(f) for f in factors),
        rank=len(factors),
        left_transform=FUMatrix.from_rows(left, m.rows),
        right_transform=FUMatrix.from_rows(right, m.cols),
        shape=m.shape,
    )
    if form.left_transform @ m @ form.right_transform != form.diagonal():
        raise InvariantViolation(f"Smith transforms do not reproduce the diagonal form of a {m.shape} matrix")
    for f, g in zip(factors, factors[1:]):
        if _divmod(g, f)[1]:
            raise InvariantViolation("invariant factors violate the divisibility chain")
    return form


def invariant_factors(m: FUMatrix) -> Tuple[UPoly, ...]:
    """Invariant factors only (no transforms recorded)"""
    factors, _, _, _ = _smith_diagonalize(m, track=False)
    return tuple(UPoly(f) for f in factors)


def fraction_free_rank(m: FUMatrix) -> int:
    """
    Rank over the fraction field F2(U) by fraction-free row reduction

    Independent of the Smith reduction; used to cross-check its rank.
    """
    a = m.to_lists()
    rank = 0
    for col in range(m.cols):
        pivot_row = next((i for i in range(rank, m.rows) if a[i][col]), None)
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, m.rows):
            c = a[i][col]
            if c:
                a[i] = [_mul(p, x) ^ _mul(c, y) for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def determinant(m: FUMatrix) -> UPoly:
    """Determinant of a square matrix by Bareiss elimination (exact divisions)"""
    if m.rows != m.cols:
        raise InvalidInputError(f"determinant of non-square {m.shape} matrix")
    n = m.rows
    if n == 0:
        return UPoly(1)
    a = m.to_lists()
    previous = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return UPoly(0)
            a[k], a[swap] = a[swap], a[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                value = _mul(a[i][j], a[k][k]) ^ _mul(a[i][k], a[k][j])
                q, r = _divmod(value, previous)
                if r:
                    raise InvariantViolation("Bareiss division was not exact")
                a[i][j] = q
        previous = a[k][k]
    return UPoly(a[n - 1][n - 1])


# ============= CHAIN COMPLEXES =============

@dataclass(frozen=True)
class ChainComplex:
    """
    Finitely generated free F2[U] chain complex

    groups maps a homological degree to its generator labels; differentials
    maps degree k to the matrix of d_k : C_k -> C_{k-1} (rows indexed by
    C_{k-1}). gradings optionally carries a relative Maslov grading per
    generator and is ignored by homology.
    """
    groups: Dict[int, Tuple[str, ...]]
    differentials: Dict[int, FUMatrix]
    gradings: Optional[Dict[int, Tuple[int, ...]]] = None

    def __post_init__(self):
        for k, d in self.differentials.items():
            if d.shape != (self.rank(k - 1), self.rank(k)):
                raise InvalidInputError(
                    f"d_{k} has shape {d.shape}, expected {(self.rank(k - 1), self.rank(k))}"
                )
        if self.gradings is not None:
            for k, labels in self.groups.items():
                if len(self.gradings.get(k, ())) != len(labels):
                    raise InvalidInputError(f"gradings in degree {k} do not match generators")

    def degrees(self) -> List[int]:
        return sorted(k for k, labels in self.groups.items() if labels)

    def rank(self, k: int) -> int:
        return len(self.groups.get(k, ()))

    def total_rank(self) -> int:
        return sum(len(labels) for labels in self.groups.values())

    def differential(self, k: int) -> FUMatrix:
        d = self.differentials.get(k)
        return d if d is not None else FUMatrix.zeros(self.rank(k - 1), self.rank(k))

    def square_is_zero(self) -> bool:
        for k in self.degrees():
            if self.rank(k + 1) and self.rank(k - 1):
                if not (self.differential(k) @ self.differential(k + 1)).is_zero():
                    return False
        return True

    def check_square_zero(self) -> None:
        if not self.square_is_zero():
            raise InvalidInputError("differential does not square to zero")


def unknot_complex() -> ChainComplex:
    """Rank-one complex with zero differential"""
    return ChainComplex(groups={0: ("y0",)}, differentials={}, gradings={0: (0,)})


@dataclass(frozen=True)
class DegreeHomology:
    degree: int
    free_rank: int
    torsion_exponents: Tuple[int, ...]


@dataclass(frozen=True)
class HomologyDecomposition:
    """H_* as F2[U]^free_rank plus the summands F2[U]/U^k, one k per torsion exponent"""
    free_rank: int
    torsion_exponents: Tuple[int, ...]
    per_degree: Tuple[DegreeHomology, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0 or any(k < 1 for k in self.torsion_exponents):
            raise InvariantViolation(f"invalid decomposition {self.free_rank}, {self.torsion_exponents}")


def homology(c: ChainComplex) -> HomologyDecomposition:
    """
    Homology of a free F2[U] complex through Smith forms

    For each degree k, H_k = ker d_k / im d_{k+1} is free of rank
    r_k - rank d_k - rank d_{k+1} plus F2[U]/f for every non-unit invariant
    factor f of d_{k+1}.

    Args:
        c: Chain complex with d^2 = 0

    Returns:
        HomologyDecomposition aggregated over all degrees
    """
    c.check_square_zero()

    degrees = c.degrees()
    factor_cache: Dict[int, Tuple[UPoly, ...]] = {}

    def factors_of(k: int) -> Tuple[UPoly, ...]:
        if k not in factor_cache:
            if c.rank(k) and c.rank(k - 1) and k in c.differentials:
                factor_cache[k] = invariant_factors(c.differentials[k])
            else:
                factor_cache[k] = ()
        return factor_cache[k]

    per_degree = []
    for k in degrees:
        outgoing = factors_of(k)
        incoming = factors_of(k + 1)
        torsion = []
        for f in incoming:
            if f.bits == 1:
                continue
            if not f.is_monomial():
                raise NonMonomialTorsionError(f"non-monomial torsion factor {f} in degree {k}")
            torsion.append(f.degree)
        free = c.rank(k) - len(outgoing) - len(incoming)
        if free < 0:
            raise InvariantViolation(f"negative free rank in degree {k}")
        per_degree.append(DegreeHomology(k, free, tuple(sorted(torsion))))

    logger.debug(f"homology of complex with ranks {[c.rank(k) for k in degrees]}: {per_degree}")
    return HomologyDecomposition(
        free_rank=sum(h.free_rank for h in per_degree),
        torsion_exponents=tuple(sorted(e for h in per_degree for e in h.torsion_exponents)),
        per_degree=tuple(per_degree),
    )


def torsion_order(h: HomologyDecomposition) -> int:
    """Least n with U^n killing the torsion: the largest torsion exponent, or 0"""
    return max(h.torsion_exponents, default=0)
