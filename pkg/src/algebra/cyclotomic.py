"""
Recognise integer polynomials that are, up to sign, products of cyclotomic
polynomials.
"""

from typing import Dict, List, Sequence, Union

from loguru import logger
from pydantic import BaseModel
from sympy import Poly, cyclotomic_poly, totient
from sympy.polys.polyerrors import ExactQuotientFailed

from algebra.errors import PreconditionError
from algebra.hilbert import T, ascending, format_univariate, int_poly
from algebra.polynomial import Polynomial


class CyclotomicWitness(BaseModel):
    holds: bool
    polynomial: str
    degree: int
    sign: int
    factors: Dict[int, int]
    residual: str
    palindromic: bool
    searched_up_to: int

    def factorization(self) -> str:
        parts = [f"Phi_{n}" if k == 1 else f"Phi_{n}^{k}" for n, k in sorted(self.factors.items())]
        body = "*".join(parts) if parts else "1"
        return f"-{body}" if self.sign < 0 else body


def curve_numerator(genus: int) -> List[int]:
    """1 - 2t + (g+1)t^2 - 2t^3 + t^4."""
    return [1, -2, genus + 1, -2, 1]


def _coefficients(numerator) -> List[int]:
    if isinstance(numerator, Poly):
        return ascending(numerator)
    if isinstance(numerator, Polynomial):
        if numerator.ring.ngens != 1:
            raise PreconditionError("numerator must be univariate")
        coeffs = [0] * (numerator.degree() + 1)
        for m, c in numerator.terms.items():
            if getattr(c, "denominator", 1) != 1:
                raise PreconditionError(f"coefficient {c} is not an integer")
            coeffs[m[0]] = int(c)
        return coeffs
    return [int(c) for c in numerator]


def cyclotomic_product_test(numerator: Union[Sequence[int], Poly, Polynomial]) -> CyclotomicWitness:
    """Trial division by every Phi_n with phi(n) <= deg; phi(n) >= sqrt(n/2) bounds n by 2*deg^2."""
    coeffs = _coefficients(numerator)
    p = int_poly(coeffs)
    if p.is_zero:
        raise PreconditionError("the zero polynomial is not a cyclotomic product")
    degree = p.degree()
    bound = 2 * degree * degree
    factors: Dict[int, int] = {}
    remaining = p
    for n in range(1, bound + 1):
        if totient(n) > remaining.degree():
            continue
        phi = Poly(cyclotomic_poly(n, T), T)
        while remaining.degree() >= phi.degree():
            try:
                remaining = remaining.exquo(phi)
            except ExactQuotientFailed:
                break
            factors[n] = factors.get(n, 0) + 1
        if remaining.degree() == 0:
            break
    rest = ascending(remaining)
    holds = remaining.degree() == 0 and abs(rest[0]) == 1
    trimmed = list(coeffs)
    while len(trimmed) > 1 and trimmed[-1] == 0:
        trimmed.pop()
    witness = CyclotomicWitness(
        holds=holds,
        polynomial=format_univariate(trimmed),
        degree=degree,
        sign=rest[0] if holds else 0,
        factors=factors,
        residual=format_univariate(rest),
        palindromic=trimmed == trimmed[::-1],
        searched_up_to=bound,
    )
    logger.info(f"Cyclotomic test on {witness.polynomial}: {'product' if holds else 'not a product'}")
    return witness
