"""
Staircase Complexes
Unoriented knot Floer complexes of L-space knots, their duals and tensor
products, and graded-root summaries of their homology
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple, Union
import logging

from exceptions import InvalidInputError, InvariantViolation, NotKnotComplexError
from fumod import ChainComplex, FUMatrix, HomologyDecomposition, unknot_complex
from laurent import GapSequence, coerce_gaps

logger = logging.getLogger(__name__)


def staircase_gradings(gaps: Union[GapSequence, Iterable[int]]) -> Tuple[int, ...]:
    """
    Relative Maslov gradings of y_0 ... y_2l, anchored at chi(y_0) = 0

    chi(y_2k) - chi(y_2k+1) = d_2k+1 and chi(y_2k+2) - chi(y_2k+1) = d_2k+2
    """
    gaps = coerce_gaps(gaps)
    grades = [0]
    for index, d in enumerate(gaps.gaps):
        grades.append(grades[-1] - d if index % 2 == 0 else grades[-1] + d)
    return tuple(grades)


def staircase_complex(gaps: Union[GapSequence, Iterable[int]]) -> ChainComplex:
    """
    Two-term staircase complex of a gap sequence

    Even generators sit in degree 0, odd ones in degree 1, with
    d y_2k+1 = U^d_2k+1 y_2k + U^d_2k+2 y_2k+2.

    Args:
        gaps: Even-length sequence of positive gaps (empty for the unknot)

    Returns:
        ChainComplex carrying relative gradings
    """
    gaps = coerce_gaps(gaps)
    if not gaps.gaps:
        return unknot_complex()

    l = len(gaps) // 2
    grades = staircase_gradings(gaps)
    table = [[0] * l for _ in range(l + 1)]
    for k in range(l):
        table[k][k] = 1 << gaps.gaps[2 * k]
        table[k + 1][k] = 1 << gaps.gaps[2 * k + 1]

    return ChainComplex(
        groups={
            0: tuple(f"y{2 * k}" for k in range(l + 1)),
            1: tuple(f"y{2 * k + 1}" for k in range(l)),
        },
        differentials={1: FUMatrix.from_rows(table, l)},
        gradings={0: grades[0::2], 1: grades[1::2]},
    )


def mirror_complex(c: ChainComplex) -> ChainComplex:
    """
    Dual complex Hom(C, F2[U])

    Degree k becomes degree -k; d_k transposed becomes the differential out of
    degree 1 - k; gradings are negated.
    """
    groups = {-k: labels for k, labels in c.groups.items()}
    differentials = {1 - k: d.transpose() for k, d in c.differentials.items()}
    gradings = None
    if c.gradings is not None:
        gradings = {-k: tuple(-g for g in grades) for k, grades in c.gradings.items()}
    return ChainComplex(groups=groups, differentials=differentials, gradings=gradings)


def tensor_complex(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """
    Tensor product over F2[U]

    Generators are pairs with additive degree, d(x*y) = dx*y + x*dy
    (characteristic two, no signs).
    """
    # generators of each total degree as (deg_a, index_a, deg_b, index_b)
    layout: Dict[int, List[Tuple[int, int, int, int]]] = {}
    for i in a.degrees():
        for j in b.degrees():
            cell = layout.setdefault(i + j, [])
            for x in range(a.rank(i)):
                for y in range(b.rank(j)):
                    cell.append((i, x, j, y))

    position = {n: {gen: idx for idx, gen in enumerate(gens)} for n, gens in layout.items()}

    groups = {
        n: tuple(f"{a.groups[i][x]}*{b.groups[j][y]}" for i, x, j, y in gens)
        for n, gens in layout.items()
    }

    gradings = None
    if a.gradings is not None and b.gradings is not None:
        gradings = {
            n: tuple(a.gradings[i][x] + b.gradings[j][y] for i, x, j, y in gens)
            for n, gens in layout.items()
        }

    differentials = {}
    for n, gens in layout.items():
        if n - 1 not in layout:
            continue
        targets = position[n - 1]
        table = [[0] * len(gens) for _ in range(len(targets))]
        for col, (i, x, j, y) in enumerate(gens):
            if i in a.differentials:
                column = a.differentials[i].entries
                for xp in range(a.rank(i - 1)):
                    e = column[xp][x]
                    if e:
                        table[targets[(i - 1, xp, j, y)]][col] ^= e
            if j in b.differentials:
                column = b.differentials[j].entries
                for yp in range(b.rank(j - 1)):
                    e = column[yp][y]
                    if e:
                        table[targets[(i, x, j - 1, yp)]][col] ^= e
        differentials[n] = FUMatrix.from_rows(table, len(gens))

    product = ChainComplex(groups=groups, differentials=differentials, gradings=gradings)
    if not product.square_is_zero():
        raise InvariantViolation("tensor product differential does not square to zero")
    logger.debug(f"tensor complex of total rank {product.total_rank()}")
    return product


@dataclass(frozen=True)
class GradedRootSummary:
    """One infinite tower plus finite branches whose lengths are the torsion exponents"""
    tower_count: int
    branch_exponents: Tuple[int, ...]


def graded_root_summary(h: HomologyDecomposition) -> GradedRootSummary:
    """Summarize a knot complex's homology as a graded root"""
    if h.free_rank != 1:
        raise NotKnotComplexError(f"not a knot complex: free rank {h.free_rank}")
    return GradedRootSummary(tower_count=h.free_rank, branch_exponents=tuple(sorted(h.torsion_exponents)))


@dataclass(frozen=True)
class Branch:
    """A leaf of a staircase graded root and where it joins an elder leaf"""
    leaf: str
    height: int
    merge_height: Optional[int]
    parent: Optional[str] = None

    @property
    def length(self) -> Optional[int]:
        if self.merge_height is None:
            return None
        return self.height - self.merge_height


def graded_root_branches(gaps: Union[GapSequence, Iterable[int]]) -> Tuple[Branch, ...]:
    """
    Merge data of the graded root of a pure staircase

    Leaves are the even generators at their relative gradings; a leaf joins the
    nearest elder leaf (strictly higher, or equally high and further left) at
    the highest level where the path between them stays connected. The
    eldest leaf carries the tower and has no merge height.
    """
    grades = staircase_gradings(gaps)
    leaves = grades[0::2]
    valleys = grades[1::2]

    branches = []
    for i, h in enumerate(leaves):
        def elder(j):
            return leaves[j] > h or (leaves[j] == h and j < i)

        merges = []
        for direction in (-1, 1):
            j, low = i, None
            while 0 <= j + direction < len(leaves):
                valley = valleys[min(j, j + direction)]
                low = valley if low is None else min(low, valley)
                j += direction
                if elder(j):
                    merges.append((low, -j))
                    break
        if not merges:
            branches.append(Branch(leaf=f"y{2 * i}", height=h, merge_height=None))
            continue
        # highest merge wins, ties go to the left elder
        low, neg_j = max(merges)
        branches.append(Branch(leaf=f"y{2 * i}", height=h, merge_height=low, parent=f"y{-2 * neg_j}"))
    return tuple(branches)


def torus_torsion_multiset(n: int) -> Tuple[int, ...]:
    """Branch lengths of T(n, n+1) below its tower: min(k, n - k) for 1 <= k < n"""
    if n < 2:
        raise InvalidInputError(f"need n >= 2, got {n}")
    return tuple(sorted(min(k, n - k) for k in range(1, n)))
