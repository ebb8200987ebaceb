"""
Monomials are exponent tuples, one entry per variable of the ambient table.
"""

from typing import Iterator, Sequence, Tuple

Monomial = Tuple[int, ...]


def weighted_degree(m: Monomial, weights: Sequence[int]) -> int:
    return sum(w * e for w, e in zip(weights, m))


def total_degree(m: Monomial) -> int:
    return sum(m)


def mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    """True if a | b."""
    return all(x <= y for x, y in zip(a, b))


def quotient(b: Monomial, a: Monomial) -> Monomial:
    """b / a, assuming a | b."""
    return tuple(y - x for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def support(m: Monomial) -> Tuple[int, ...]:
    return tuple(i for i, e in enumerate(m) if e)


def unit(n: int) -> Monomial:
    return (0,) * n


def variable(n: int, i: int, power: int = 1) -> Monomial:
    return tuple(power if k == i else 0 for k in range(n))


def of_degree(weights: Sequence[int], d: int) -> Iterator[Monomial]:
    """All monomials of weighted degree d, in lexicographic exponent order."""
    n = len(weights)

    def rec(i: int, remaining: int, prefix: list):
        if i == n - 1:
            if remaining % weights[i] == 0:
                yield tuple(prefix + [remaining // weights[i]])
            return
        for e in range(remaining // weights[i], -1, -1):
            yield from rec(i + 1, remaining - e * weights[i], prefix + [e])

    if d < 0:
        return
    if n == 0:
        if d == 0:
            yield ()
        return
    yield from rec(0, d, [])


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"
