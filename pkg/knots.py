"""
Knot Expressions
Unknot, torus knots, mirrors and connected sums; their complexes and the
concordance invariants Order_U, signature, upsilon and the gamma_4 bound
"""

from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Tuple, Union
import re
import logging

from sympy import ZZ
from sympy.polys.matrices import DM

from cache_manager import CacheManager
from exceptions import (
    BoundUnavailableError,
    InvalidInputError,
    InvariantViolation,
    KnotSyntaxError,
)
from fumod import ChainComplex, HomologyDecomposition, homology, torsion_order, unknot_complex
from laurent import torus_gaps
from staircase import mirror_complex, staircase_complex, tensor_complex

logger = logging.getLogger(__name__)


# ============= EXPRESSION TREE =============

@dataclass(frozen=True)
class Unknot:
    pass


@dataclass(frozen=True)
class TorusKnot:
    p: int
    q: int

    def __post_init__(self):
        if not (1 <= self.p < self.q) or gcd(self.p, self.q) != 1:
            raise InvalidInputError(
                f"T({self.p},{self.q}) is not a torus knot: need 1 <= p < q with gcd(p,q) = 1"
            )


@dataclass(frozen=True)
class Mirror:
    child: 'KnotExpr'


@dataclass(frozen=True)
class ConnectedSum:
    left: 'KnotExpr'
    right: 'KnotExpr'


KnotExpr = Union[Unknot, TorusKnot, Mirror, ConnectedSum]


def torus_knot(p: int, q: int) -> KnotExpr:
    """T(p,q) with T(1,q) normalized to the unknot"""
    knot = TorusKnot(p, q)
    return Unknot() if knot.p == 1 else knot


def summands(k: KnotExpr) -> List[KnotExpr]:
    if isinstance(k, ConnectedSum):
        return summands(k.left) + summands(k.right)
    return [k]


def format_knot(k: KnotExpr) -> str:
    """Canonical text in the expression grammar (sums flattened)"""
    if isinstance(k, Unknot):
        return "U"
    if isinstance(k, TorusKnot):
        return f"T({k.p},{k.q})"
    if isinstance(k, Mirror):
        return f"mirror({format_knot(k.child)})"
    return " # ".join(format_knot(s) for s in summands(k))


# ============= PARSER =============

_TOKEN = re.compile(r"\s*(?:(?P<int>[+-]?\d+)|(?P<word>mirror|T|U)|(?P<sym>[(),#]))")


class _Parser:
    """Recursive descent over expr := term ('#' term)*"""

    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            match = _TOKEN.match(text, pos)
            if not match:
                raise KnotSyntaxError(f"unexpected character {text[pos]!r}", pos)
            kind = match.lastgroup
            start = match.start(kind)
            self.tokens.append((kind, match.group(kind), start))
            pos = match.end()
        self.index = 0

    def _peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _position(self) -> int:
        token = self._peek()
        return token[2] if token else len(self.text)

    def _expect(self, value: str) -> None:
        token = self._peek()
        if token is None or token[1] != value:
            found = "end of input" if token is None else repr(token[1])
            raise KnotSyntaxError(f"expected {value!r}, found {found}", self._position())
        self.index += 1

    def _integer(self) -> int:
        token = self._peek()
        if token is None or token[0] != 'int':
            raise KnotSyntaxError("expected an integer", self._position())
        self.index += 1
        return int(token[1])

    def parse(self) -> KnotExpr:
        expr = self._expr()
        if self._peek() is not None:
            raise KnotSyntaxError(f"unexpected {self._peek()[1]!r}", self._position())
        return expr

    def _expr(self) -> KnotExpr:
        expr = self._term()
        while self._peek() is not None and self._peek()[1] == '#':
            self.index += 1
            expr = ConnectedSum(expr, self._term())
        return expr

    def _term(self) -> KnotExpr:
        token = self._peek()
        if token is None:
            raise KnotSyntaxError("expected a knot, found end of input", len(self.text))
        word = token[1]
        if word == 'U':
            self.index += 1
            return Unknot()
        if word == 'T':
            self.index += 1
            self._expect('(')
            p = self._integer()
            self._expect(',')
            q = self._integer()
            self._expect(')')
            return torus_knot(p, q)
        if word == 'mirror':
            self.index += 1
            self._expect('(')
            child = self._expr()
            self._expect(')')
            return Mirror(child)
        raise KnotSyntaxError(f"expected a knot, found {word!r}", token[2])


def parse_knot(text: str) -> KnotExpr:
    """
    Parse a knot expression

    Args:
        text: e.g. "T(5,6) # mirror(T(3,4))"

    Returns:
        KnotExpr tree ('#' left-associative)
    """
    return _Parser(text).parse()


# ============= COMPLEXES AND ORDER_U =============

_homology_cache = CacheManager()


def complex_of(k: KnotExpr) -> ChainComplex:
    """Unoriented knot Floer complex of an expression"""
    if isinstance(k, Unknot):
        return unknot_complex()
    if isinstance(k, TorusKnot):
        return staircase_complex(torus_gaps(k.p, k.q))
    if isinstance(k, Mirror):
        return mirror_complex(complex_of(k.child))
    return tensor_complex(complex_of(k.left), complex_of(k.right))


def knot_homology(k: KnotExpr) -> HomologyDecomposition:
    """
    Homology of complex_of(k), memoized by canonical text

    Asserts exactly one free summand, as for every knot.
    """
    key = f"homology:{format_knot(k)}"
    cached = _homology_cache.get(key)
    if cached is not None:
        return cached
    h = homology(complex_of(k))
    if h.free_rank != 1:
        raise InvariantViolation(f"{format_knot(k)}: knot complex homology has free rank {h.free_rank}")
    _homology_cache.set(key, h)
    return h


def _order_by_recursion(k: KnotExpr) -> int:
    if isinstance(k, Unknot):
        return 0
    if isinstance(k, TorusKnot):
        if k.q == k.p + 1:
            return k.p // 2
        return torsion_order(knot_homology(k))
    if isinstance(k, Mirror):
        return _order_by_recursion(k.child)
    return max(_order_by_recursion(k.left), _order_by_recursion(k.right))


def order_u(k: KnotExpr) -> int:
    """
    Torsion order Order_U

    Computed twice: from the homology of the full complex and by the
    recursion (unknot 0, T(n,n+1) -> floor(n/2), mirror invariance, max over
    connected sums). The two must agree.
    """
    direct = torsion_order(knot_homology(k))
    recursive = _order_by_recursion(k)
    if direct != recursive:
        raise InvariantViolation(
            f"Order_U({format_knot(k)}): homology gives {direct}, recursion gives {recursive}"
        )
    return direct


# ============= SIGNATURE, UPSILON, GAMMA_4 =============

def torus_signature(p: int, q: int) -> int:
    """
    Signature of T(p,q) by lattice count

    Pairs 1 <= i < p, 1 <= j < q with i/p + j/q in (1/2, 3/2) count -1, all
    others +1.
    """
    pq = p * q
    total = 0
    for i in range(1, p):
        for j in range(1, q):
            twice = 2 * (i * q + j * p)
            if twice in (pq, 3 * pq):
                raise InvariantViolation(f"lattice point on a signature jump for T({p},{q})")
            total += -1 if pq < twice < 3 * pq else 1
    return total


def _variation_matrix(n: int) -> List[List[int]]:
    # Seifert form of the A_{n-1} singularity x^n
    size = n - 1
    return [[1 if i == j else (-1 if j == i + 1 else 0) for j in range(size)] for i in range(size)]


def _kronecker(a: List[List[int]], b: List[List[int]]) -> List[List[int]]:
    return [
        [x * y for x in row_a for y in row_b]
        for row_a in a
        for row_b in b
    ]


def _sign_changes(coefficients: List[int]) -> int:
    signs = [c > 0 for c in coefficients if c != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def seifert_signature(p: int, q: int) -> int:
    """
    Signature of T(p,q) from a Seifert matrix

    Uses V = V_p (x) V_q (Seifert form of x^p + y^q as a Kronecker product)
    and counts positive/negative eigenvalues of V + V^T exactly with
    Descartes' rule on its integer characteristic polynomial (all roots are
    real). Sign fixed so that sigma(T(2,3)) = -2.
    """
    if p == 1:
        return 0
    v = _kronecker(_variation_matrix(p), _variation_matrix(q))
    size = len(v)
    symmetric = [[v[i][j] + v[j][i] for j in range(size)] for i in range(size)]
    coefficients = [int(c) for c in DM(symmetric, ZZ).charpoly()]
    if coefficients[-1] == 0:
        raise InvariantViolation(f"Seifert form of T({p},{q}) is degenerate")
    positive = _sign_changes(coefficients)
    # roots of chi(-x): flip the sign of odd-degree coefficients
    degree = len(coefficients) - 1
    negative = _sign_changes([c if (degree - k) % 2 == 0 else -c for k, c in enumerate(coefficients)])
    if positive + negative != size:
        raise InvariantViolation(f"eigenvalue count mismatch for T({p},{q})")
    return negative - positive


def signature(k: KnotExpr) -> int:
    """Knot signature: additive, negated by mirroring"""
    if isinstance(k, Unknot):
        return 0
    if isinstance(k, TorusKnot):
        return torus_signature(k.p, k.q)
    if isinstance(k, Mirror):
        return -signature(k.child)
    return signature(k.left) + signature(k.right)


def upsilon(k: KnotExpr) -> Optional[int]:
    """
    upsilon on the closed-form family

    Defined for sums and mirrors of unknots and T(2r-1, 2r) (value -r^2 + r);
    None anywhere else.
    """
    if isinstance(k, Unknot):
        return 0
    if isinstance(k, TorusKnot):
        if k.q == k.p + 1 and k.p % 2 == 1:
            r = k.q // 2
            return -r * r + r
        return None
    if isinstance(k, Mirror):
        child = upsilon(k.child)
        return None if child is None else -child
    left, right = upsilon(k.left), upsilon(k.right)
    if left is None or right is None:
        return None
    return left + right


def gamma4_lower_bound(k: KnotExpr) -> int:
    """
    upsilon - sigma/2, clamped at zero

    Raises:
        BoundUnavailableError: when upsilon is undefined for k
    """
    u = upsilon(k)
    if u is None:
        raise BoundUnavailableError(f"bound unavailable: upsilon undefined for {format_knot(k)}")
    s = signature(k)
    if s % 2:
        raise InvariantViolation(f"odd signature {s} for {format_knot(k)}")
    return max(0, u - s // 2)


@dataclass(frozen=True)
class InvariantReport:
    knot: str
    order_u: int
    signature: int
    upsilon: Optional[int]
    gamma4_lower: Optional[int]
    homology: HomologyDecomposition


def invariant_report(k: KnotExpr) -> InvariantReport:
    """All closed-form and computed invariants of an expression"""
    u = upsilon(k)
    return InvariantReport(
        knot=format_knot(k),
        order_u=order_u(k),
        signature=signature(k),
        upsilon=u,
        gamma4_lower=None if u is None else gamma4_lower_bound(k),
        homology=knot_homology(k),
    )


def knot_family(gamma: int, m: int) -> KnotExpr:
    """K_{gamma,m} = T(2r-1,2r) # mirror(T(2s-1,2s)) with r = gamma + m, s = m"""
    if gamma < 1 or m < 1:
        raise InvalidInputError(f"family needs gamma >= 1 and m >= 1, got ({gamma},{m})")
    r, s = gamma + m, m
    return ConnectedSum(torus_knot(2 * r - 1, 2 * r), Mirror(torus_knot(2 * s - 1, 2 * s)))


def is_pure_staircase(k: KnotExpr) -> bool:
    return isinstance(k, (Unknot, TorusKnot))
