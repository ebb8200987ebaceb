"""
Variable tables, monomial orders and the polynomial ring that ties them to a
coefficient field.
"""

import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from algebra.errors import AmbientMismatchError, PreconditionError
from algebra.fields import QQ, Coefficient, CoefficientField
from algebra.monomials import Monomial, weighted_degree

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class VariableTable:
    """Ordered (name, weight) entries."""

    entries: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.entries]
        if len(set(names)) != len(names):
            raise PreconditionError(f"duplicate variable names in {names}")
        for name, weight in self.entries:
            if not IDENTIFIER.match(name):
                raise PreconditionError(f"invalid variable name '{name}'")
            if not isinstance(weight, int) or weight < 1:
                raise PreconditionError(f"variable '{name}' needs a positive integer weight, got {weight}")

    @classmethod
    def of(cls, spec: Union[str, Iterable]) -> "VariableTable":
        """Build from ``"s:3, t:3, x:2"`` (weight defaults to 1) or from pairs / names."""
        if isinstance(spec, str):
            items = [chunk.strip() for chunk in spec.split(",") if chunk.strip()]
            entries = []
            for item in items:
                name, _, weight = item.partition(":")
                entries.append((name.strip(), int(weight) if weight.strip() else 1))
            return cls(tuple(entries))
        entries = []
        for item in spec:
            if isinstance(item, str):
                entries.append((item, 1))
            else:
                entries.append((item[0], int(item[1])))
        return cls(tuple(entries))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.entries)

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(weight for _, weight in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PreconditionError(f"unknown variable '{name}'") from None

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def extend(self, extra: Sequence[Tuple[str, int]]) -> "VariableTable":
        return VariableTable(self.entries + tuple(extra))

    def without(self, names: Iterable[str]) -> "VariableTable":
        drop = set(names)
        return VariableTable(tuple(e for e in self.entries if e[0] not in drop))

    def fresh_name(self, stem: str) -> str:
        name, k = stem, 0
        while name in self.names:
            k += 1
            name = f"{stem}{k}"
        return name

    def describe(self) -> str:
        return ", ".join(f"{n}:{w}" for n, w in self.entries)


@lru_cache(maxsize=1 << 18)
def _grevlex_key(weights: Tuple[int, ...], m: Monomial) -> Tuple[int, ...]:
    return (weighted_degree(m, weights),) + tuple(-e for e in reversed(m))


@lru_cache(maxsize=1 << 18)
def _block_key(weights: Tuple[int, ...], eliminated: Tuple[int, ...], m: Monomial) -> Tuple[int, ...]:
    head = tuple(e if i in eliminated else 0 for i, e in enumerate(m))
    tail = tuple(0 if i in eliminated else e for i, e in enumerate(m))
    return _grevlex_key(weights, head) + _grevlex_key(weights, tail)


@dataclass(frozen=True)
class WeightedGrevlex:
    """Weighted degree first, then reverse lexicographic on the last variables."""

    weights: Tuple[int, ...]

    def key(self, m: Monomial) -> Tuple[int, ...]:
        return _grevlex_key(self.weights, m)

    def describe(self) -> str:
        return f"wgrevlex{list(self.weights)}"


@dataclass(frozen=True)
class BlockOrder:
    """Elimination order: any monomial touching ``eliminated`` beats all that do not."""

    eliminated: Tuple[int, ...]
    inner: WeightedGrevlex

    def key(self, m: Monomial) -> Tuple[int, ...]:
        return _block_key(self.inner.weights, self.eliminated, m)

    def describe(self) -> str:
        return f"block{list(self.eliminated)}>{self.inner.describe()}"


MonomialOrder = Union[WeightedGrevlex, BlockOrder]


@dataclass(frozen=True)
class PolynomialRing:
    """Ambient ring k[x_1..x_n] with weights and an active monomial order."""

    table: VariableTable
    field: CoefficientField = QQ
    order: Optional[MonomialOrder] = None
    _hash: int = dc_field(default=0, compare=False, repr=False)

    def __post_init__(self):
        if self.order is None:
            object.__setattr__(self, "order", WeightedGrevlex(self.table.weights))
        weights = self.order.weights if isinstance(self.order, WeightedGrevlex) else self.order.inner.weights
        if len(weights) != len(self.table):
            raise PreconditionError("monomial order does not match the variable count")
        object.__setattr__(self, "_hash", hash((self.table, self.field, self.order)))

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def of(cls, variables: Union[str, Iterable], field: CoefficientField = QQ) -> "PolynomialRing":
        return cls(VariableTable.of(variables), field)

    @property
    def names(self) -> Tuple[str, ...]:
        return self.table.names

    @property
    def weights(self) -> Tuple[int, ...]:
        return self.table.weights

    @property
    def ngens(self) -> int:
        return len(self.table)

    def same_ambient(self, other: "PolynomialRing") -> bool:
        return self is other or (self.table == other.table and self.field == other.field)

    def require_same_ambient(self, other: "PolynomialRing"):
        if not self.same_ambient(other):
            raise AmbientMismatchError(
                f"ambient mismatch: [{self.table.describe()}] over {self.field} "
                f"vs [{other.table.describe()}] over {other.field}")

    def with_order(self, order: MonomialOrder) -> "PolynomialRing":
        if order == self.order:
            return self
        return PolynomialRing(self.table, self.field, order)

    def default_order(self) -> "PolynomialRing":
        return self.with_order(WeightedGrevlex(self.table.weights))

    def elimination_order(self, names: Iterable[str]) -> "PolynomialRing":
        idx = tuple(sorted(self.table.index(n) for n in names))
        return self.with_order(BlockOrder(idx, WeightedGrevlex(self.table.weights)))

    # element constructors

    def from_terms(self, terms: Mapping[Monomial, Coefficient]):
        from algebra.polynomial import Polynomial
        return Polynomial.from_terms(self, terms)

    def zero(self):
        return self.from_terms({})

    def constant(self, c: Coefficient):
        return self.from_terms({(0,) * self.ngens: c})

    def one(self):
        return self.constant(1)

    def monomial(self, m: Monomial, c: Coefficient = 1):
        return self.from_terms({tuple(m): c})

    def gen(self, name: str):
        i = self.table.index(name)
        return self.monomial(tuple(1 if k == i else 0 for k in range(self.ngens)))

    def gens(self) -> Dict[str, "object"]:
        return {name: self.gen(name) for name in self.names}

    def parse(self, text: str):
        from algebra.parser import parse_polynomial
        return parse_polynomial(text, self)

    def describe(self) -> str:
        return f"{self.field}[{self.table.describe()}] ({self.order.describe()})"
