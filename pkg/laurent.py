"""
Laurent Polynomial Module
Exact integer Laurent polynomials, torus-knot Alexander polynomials and
L-space exponent / gap sequences
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Mapping, Tuple, Union
import logging

from exceptions import InvalidInputError, InvariantViolation, NotLSpaceError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LaurentPoly:
    """
    Integer Laurent polynomial in t

    terms holds (exponent, coefficient) pairs sorted by decreasing exponent,
    with no zero coefficients.
    """
    terms: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, coefficients: Mapping[int, int]) -> 'LaurentPoly':
        trimmed = {e: c for e, c in coefficients.items() if c != 0}
        return cls(tuple(sorted(trimmed.items(), reverse=True)))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> 'LaurentPoly':
        return cls.from_dict({exponent: coefficient})

    @classmethod
    def one(cls) -> 'LaurentPoly':
        return cls.monomial(0)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Top exponent (raises on the zero polynomial)"""
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return self.terms[0][0]

    @property
    def valuation(self) -> int:
        """Bottom exponent (raises on the zero polynomial)"""
        if not self.terms:
            raise ValueError("zero polynomial has no valuation")
        return self.terms[-1][0]

    @property
    def leading_coefficient(self) -> int:
        return self.terms[0][1] if self.terms else 0

    def __add__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return LaurentPoly.from_dict(out)

    def __neg__(self) -> 'LaurentPoly':
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        return self + (-other)

    def __mul__(self, other: Union['LaurentPoly', int]) -> 'LaurentPoly':
        if isinstance(other, int):
            return LaurentPoly.from_dict({e: c * other for e, c in self.terms})
        out: Dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> 'LaurentPoly':
        """Multiply by t^k"""
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def inverted(self) -> 'LaurentPoly':
        """Substitute t -> t^-1"""
        return LaurentPoly.from_dict({-e: c for e, c in self.terms})

    def is_symmetric(self) -> bool:
        return self == self.inverted()

    def evaluate(self, t: int):
        """Exact value at an integer point (a Fraction when t^-k appears)"""
        total = Fraction(0)
        for e, c in self.terms:
            total += c * Fraction(t) ** e
        return int(total) if total.denominator == 1 else total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            sign = '-' if c < 0 else '+'
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = "t" if e == 1 else f"t^{e}"
                body = power if mag == 1 else f"{mag}{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def polynomial_divmod(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    """
    Long division over the integers

    Args:
        num: Dividend with non-negative exponents
        den: Divisor with non-negative exponents and leading coefficient +-1

    Returns:
        (quotient, remainder) with num = den*quotient + remainder and
        deg(remainder) < deg(den)
    """
    if den.is_zero():
        raise InvalidInputError("division by the zero polynomial")
    if (num.terms and num.valuation < 0) or den.valuation < 0:
        raise InvalidInputError("long division needs non-negative exponents")
    lead = den.leading_coefficient
    if abs(lead) != 1:
        raise InvalidInputError("divisor must have leading coefficient +-1")

    top = den.degree
    remainder = num.as_dict()
    quotient: Dict[int, int] = {}
    while remainder:
        deg = max(remainder)
        if deg < top:
            break
        coeff = remainder[deg] * lead
        quotient[deg - top] = coeff
        for e, c in den.terms:
            key = e + deg - top
            remainder[key] = remainder.get(key, 0) - coeff * c
            if remainder[key] == 0:
                del remainder[key]
    return LaurentPoly.from_dict(quotient), LaurentPoly.from_dict(remainder)


def _binomial_minus_one(k: int) -> LaurentPoly:
    return LaurentPoly.from_dict({k: 1, 0: -1})


def symmetrize(poly: LaurentPoly) -> LaurentPoly:
    """
    Shift so that the polynomial is centered about t^0 and fix the sign so that
    the value at t = 1 is positive
    """
    span = poly.degree + poly.valuation
    if span % 2:
        raise InvalidInputError(f"cannot center {poly}: odd exponent span")
    centered = poly.shift(-span // 2)
    if centered.evaluate(1) < 0:
        centered = -centered
    return centered


def torus_alexander(p: int, q: int) -> LaurentPoly:
    """
    Symmetric Alexander polynomial of the torus knot T(p,q)

    Computes (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)) by exact long division

    Args:
        p: Smaller parameter, p >= 1
        q: Larger parameter, coprime to p

    Returns:
        Symmetrically normalized LaurentPoly with value 1 at t = 1
    """
    if not (1 <= p < q) or gcd(p, q) != 1:
        raise InvalidInputError(f"torus knot parameters must satisfy 1 <= p < q, gcd = 1; got ({p},{q})")

    numerator = _binomial_minus_one(p * q) * _binomial_minus_one(1)
    denominator = _binomial_minus_one(p) * _binomial_minus_one(q)
    quotient, remainder = polynomial_divmod(numerator, denominator)
    if not remainder.is_zero():
        raise InvariantViolation(f"Alexander division for T({p},{q}) left remainder {remainder}")

    delta = symmetrize(quotient)
    if delta.evaluate(1) != 1 or not delta.is_symmetric():
        raise InvariantViolation(f"Alexander polynomial of T({p},{q}) is not normalized: {delta}")
    logger.debug(f"Delta_T({p},{q}) = {delta}")
    return delta


def genus_from_alexander(poly: LaurentPoly) -> int:
    """Top degree of a symmetric Alexander polynomial (the genus for L-space knots)"""
    return poly.degree


@dataclass(frozen=True)
class ExponentSequence:
    """Decreasing exponents alpha_0 > ... > alpha_2l of an L-space Alexander polynomial"""
    alphas: Tuple[int, ...]

    def __post_init__(self):
        if len(self.alphas) % 2 != 1:
            raise NotLSpaceError(f"not in L-space form: {len(self.alphas)} terms (need an odd count)")
        if any(a <= b for a, b in zip(self.alphas, self.alphas[1:])):
            raise NotLSpaceError(f"not in L-space form: exponents {self.alphas} are not strictly decreasing")

    def __len__(self) -> int:
        return len(self.alphas)


@dataclass(frozen=True)
class GapSequence:
    """Positive gaps d_1 ... d_2l between consecutive L-space exponents"""
    gaps: Tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.gaps) % 2:
            raise InvalidInputError(f"gap sequence {self.gaps} has odd length")
        if any(d <= 0 for d in self.gaps):
            raise InvalidInputError(f"gap sequence {self.gaps} has non-positive entries")

    @property
    def is_palindromic(self) -> bool:
        return self.gaps == tuple(reversed(self.gaps))

    def reversed(self) -> 'GapSequence':
        return GapSequence(tuple(reversed(self.gaps)))

    def __len__(self) -> int:
        return len(self.gaps)

    def __iter__(self):
        return iter(self.gaps)


def lspace_exponents(poly: LaurentPoly) -> ExponentSequence:
    """
    Read the exponent sequence off an L-space Alexander polynomial

    Args:
        poly: Symmetrically normalized polynomial

    Returns:
        ExponentSequence with alternating signs starting at +1
    """
    if not poly.is_symmetric():
        raise NotLSpaceError(f"not in L-space form: {poly} is not symmetric")
    for k, (exponent, coeff) in enumerate(poly.terms):
        expected = 1 if k % 2 == 0 else -1
        if coeff != expected:
            raise NotLSpaceError(
                f"not in L-space form: coefficient {coeff} of t^{exponent} (expected {expected})"
            )
    return ExponentSequence(tuple(e for e, _ in poly.terms))


def gap_sequence(alphas: ExponentSequence) -> GapSequence:
    """
    Positive gaps d_k = alpha_{k-1} - alpha_k

    Args:
        alphas: Valid exponent sequence

    Returns:
        GapSequence of length 2l
    """
    values = alphas.alphas
    gaps = GapSequence(tuple(a - b for a, b in zip(values, values[1:])))
    if sum(gaps.gaps) != values[0] - values[-1]:
        raise InvariantViolation(f"gaps {gaps.gaps} do not telescope over {values}")
    if values[0] + values[-1] == 0 and not gaps.is_palindromic:
        raise InvariantViolation(f"symmetric exponents {values} produced non-palindromic gaps")
    return gaps


def torus_gap_formula(n: int) -> GapSequence:
    """Closed-form gaps (1, n-1, 2, n-2, ..., n-1, 1) of T(n, n+1)"""
    if n < 2:
        raise InvalidInputError(f"torus gap formula needs n >= 2, got {n}")
    gaps = []
    for k in range(1, n):
        gaps.extend((k, n - k))
    return GapSequence(tuple(gaps))


def torus_gaps(p: int, q: int) -> GapSequence:
    """Gap sequence of T(p,q) through the Alexander polynomial"""
    return gap_sequence(lspace_exponents(torus_alexander(p, q)))


def coerce_gaps(gaps: Union[GapSequence, Iterable[int]]) -> GapSequence:
    if isinstance(gaps, GapSequence):
        return gaps
    return GapSequence(tuple(int(d) for d in gaps))
