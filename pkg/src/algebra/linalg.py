"""
Exact row echelon over a coefficient field, for span and rank questions on
graded components.
"""

from typing import Dict, Iterable, List

from algebra.fields import Coefficient, CoefficientField

Vector = Dict[int, Coefficient]


class Echelon:
    """Incrementally built echelon form; pivot of a row is its smallest column."""

    def __init__(self, field: CoefficientField):
        self.field = field
        self.rows: Dict[int, Vector] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduce(self, vector: Vector) -> Vector:
        field = self.field
        v = {c: x for c, x in vector.items() if x}
        last = -1
        while True:
            candidates = [c for c in v if c > last and c in self.rows]
            if not candidates:
                return v
            col = min(candidates)
            factor = v[col]
            for c, x in self.rows[col].items():
                value = field.sub(v.get(c, field.zero), field.mul(factor, x))
                if value:
                    v[c] = value
                else:
                    v.pop(c, None)
            last = col

    def add(self, vector: Vector) -> bool:
        """Insert ``vector``; False when it already lies in the span."""
        r = self.reduce(vector)
        if not r:
            return False
        pivot = min(r)
        inv = self.field.inv(r[pivot])
        self.rows[pivot] = {c: self.field.mul(x, inv) for c, x in r.items()}
        return True

    def extend(self, vectors: Iterable[Vector]) -> int:
        return sum(1 for v in vectors if self.add(v))

    def contains(self, vector: Vector) -> bool:
        return not self.reduce(vector)

    def free_columns(self, size: int) -> List[int]:
        """Columns without a pivot: their unit vectors complement the span."""
        return [c for c in range(size) if c not in self.rows]


def rank(vectors: Iterable[Vector], field: CoefficientField) -> int:
    echelon = Echelon(field)
    echelon.extend(vectors)
    return echelon.rank


def row_reduce(vectors: Iterable[Vector], field: CoefficientField) -> Echelon:
    echelon = Echelon(field)
    echelon.extend(vectors)
    return echelon
