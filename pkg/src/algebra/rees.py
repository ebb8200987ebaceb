"""
Rees algebras and associated graded rings as ring presentations.

The Rees algebra R[It] of I = (g_1..g_r) in R = k[x]/J is computed as the
kernel of k[x, T_1..T_r] -> R[tau], T_i -> g_i * tau, by eliminating tau
from J + (T_i - g_i * tau). The associated graded ring is R[It] / I R[It].
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

from loguru import logger

from algebra.errors import PreconditionError
from algebra.graded import RingPresentation, hilbert_series
from algebra.groebner import IdealPresentation, buchberger, eliminate, ideal_membership
from algebra.polynomial import Polynomial, substitute
from algebra.rings import PolynomialRing, VariableTable, WeightedGrevlex

GR_METHODS = ("rees", "truncation")


def t_names(count: int) -> List[str]:
    return [f"T{i + 1}" for i in range(count)]


def _generators(base: RingPresentation, ideal_gens: Sequence[Union[str, Polynomial]]) -> List[Polynomial]:
    gens = [base.parse(g) if isinstance(g, str) else g.embed(base.ring) for g in ideal_gens]
    if not gens:
        raise PreconditionError("at least one ideal generator is required")
    for g in gens:
        if not g:
            raise PreconditionError("ideal generators must be nonzero")
        if not g.is_homogeneous():
            raise PreconditionError(f"ideal generator '{g}' is not homogeneous")
    clash = set(t_names(len(gens))) & set(base.ring.names)
    if clash:
        raise PreconditionError(f"variable names {sorted(clash)} are reserved for Rees variables")
    return gens


@dataclass(frozen=True)
class ReesPresentation:
    base: RingPresentation
    ideal_gens: Tuple[Polynomial, ...]
    result: RingPresentation
    tau: str

    @property
    def t_names(self) -> List[str]:
        return t_names(len(self.ideal_gens))

    def relations_vanish(self) -> bool:
        """Every relation maps into the base relations under T_i -> g_i * tau."""
        base = self.base.ring
        target = PolynomialRing(base.table.extend([(self.tau, 1)]), base.field)
        tau = target.gen(self.tau)
        images = {name: g.embed(target) * tau for name, g in zip(self.t_names, self.ideal_gens)}
        relations = IdealPresentation(target, tuple(r.embed(target) for r in self.base.relations))
        return all(ideal_membership(substitute(r, images, target), relations) for r in self.result.relations)


def rees_presentation(base: RingPresentation, ideal_gens: Sequence[Union[str, Polynomial]]) -> ReesPresentation:
    gens = _generators(base, ideal_gens)
    names = t_names(len(gens))
    tau = base.ring.table.fresh_name("_tau")
    rees_table = base.ring.table.extend([(n, g.degree() + 1) for n, g in zip(names, gens)])
    graph = PolynomialRing(rees_table.extend([(tau, 1)]), base.ring.field)
    tau_var = graph.gen(tau)
    relations = [r.embed(graph) for r in base.relations]
    relations += [graph.gen(n) - g.embed(graph) * tau_var for n, g in zip(names, gens)]
    kernel = eliminate(IdealPresentation(graph, tuple(relations)), [tau])
    result = RingPresentation(PolynomialRing(rees_table, base.ring.field), kernel.generators,
                              name=f"Rees({base.name or 'R'})")
    logger.info(f"Rees algebra of {len(gens)} generators: {len(result.relations)} relations")
    return ReesPresentation(base, tuple(gens), result, tau)


def _variable_positions(base: RingPresentation, gens: Sequence[Polynomial]) -> Dict[str, int]:
    """Base variable -> generator index, when the generators are exactly the variables."""
    positions: Dict[str, int] = {}
    for i, g in enumerate(gens):
        variables = g.variables()
        if len(g) != 1 or len(variables) != 1 or g.degree() != base.ring.weights[base.ring.table.index(variables[0])]:
            return {}
        positions[variables[0]] = i
    if sorted(positions) != sorted(base.ring.names):
        return {}
    return positions


def is_maximal_ideal(base: RingPresentation, ideal_gens: Sequence[Union[str, Polynomial]]) -> bool:
    return bool(_variable_positions(base, _generators(base, ideal_gens)))


def internal_weights(base: RingPresentation, ideal_gens: Sequence[Union[str, Polynomial]]) -> List[int]:
    return [g.degree() for g in _generators(base, ideal_gens)]


def associated_graded(base: RingPresentation, ideal_gens: Sequence[Union[str, Polynomial]],
                      method: str = "rees") -> RingPresentation:
    """gr_I(R). At the ideal of all variables it lives on T1..Tn graded by I-adic order."""
    if method not in GR_METHODS:
        raise PreconditionError(f"unknown method '{method}' (expected one of {', '.join(GR_METHODS)})")
    gens = _generators(base, ideal_gens)
    positions = _variable_positions(base, gens)
    names = t_names(len(gens))
    if method == "truncation":
        if not positions:
            raise PreconditionError("the truncation route needs the ideal generated by all variables")
        return _tangent_cone(base, gens, positions)

    rees = rees_presentation(base, gens)
    if positions:
        gr_ring = PolynomialRing(VariableTable(tuple((n, 1) for n in names)), base.ring.field)
        zeros = {name: gr_ring.zero() for name in base.ring.names}
        zeros.update({n: gr_ring.gen(n) for n in names})
        relations = [substitute(r, zeros, gr_ring) for r in rees.result.relations]
        return RingPresentation(gr_ring, tuple(relations), name=f"gr({base.name or 'R'})")
    table = base.ring.table.extend([(n, g.degree()) for n, g in zip(names, gens)])
    gr_ring = PolynomialRing(table, base.ring.field)
    relations = [r.embed(gr_ring) for r in rees.result.relations] + [g.embed(gr_ring) for g in gens]
    return RingPresentation(gr_ring, tuple(relations), name=f"gr({base.name or 'R'})")


def _tangent_cone(base: RingPresentation, gens: Sequence[Polynomial], positions: Dict[str, int]) -> RingPresentation:
    # Weights 2w - 1 rank lowest total degree first among w-homogeneous terms.
    order = WeightedGrevlex(tuple(2 * w - 1 for w in base.ring.weights))
    gb = buchberger(base.ideal, order)
    names = t_names(len(gens))
    gr_ring = PolynomialRing(VariableTable(tuple((n, 1) for n in names)), base.ring.field)
    rename = {v: gr_ring.gen(names[i]) for v, i in positions.items()}
    forms = []
    for g in gb.elements:
        low = g.lowest_total_degree()
        form = g.ring.from_terms({m: c for m, c in g.terms.items() if sum(m) == low})
        forms.append(substitute(form, rename, gr_ring))
    logger.info(f"Tangent cone from {len(gb.elements)} basis elements")
    return RingPresentation(gr_ring, tuple(forms), name=f"gr({base.name or 'R'})")


def regraded(gr: RingPresentation, weights: Sequence[int]) -> RingPresentation:
    ring = PolynomialRing(VariableTable(tuple(zip(gr.ring.names, weights))), gr.ring.field)
    return RingPresentation(ring, tuple(Polynomial(ring, dict(r.terms)) for r in gr.relations), name=gr.name)


def regrading_check(base: RingPresentation, ideal_gens: Sequence[Union[str, Polynomial]],
                    gr: RingPresentation) -> bool:
    """gr at the maximal ideal, graded by internal degrees, has the Hilbert series of the base."""
    weights = internal_weights(base, ideal_gens)
    return hilbert_series(regraded(gr, weights)).equals(hilbert_series(base))


def transfer(p: Union[str, Polynomial], base: RingPresentation, ideal_gens: Sequence[Union[str, Polynomial]],
             gr: RingPresentation) -> Polynomial:
    """Image of a base polynomial in gr at the maximal ideal, x_k -> T_i when g_i = x_k."""
    gens = _generators(base, ideal_gens)
    positions = _variable_positions(base, gens)
    if not positions:
        raise PreconditionError("transfer needs the ideal generated by all variables")
    p = base.parse(p) if isinstance(p, str) else p
    names = t_names(len(gens))
    return substitute(p, {v: gr.ring.gen(names[i]) for v, i in positions.items()}, gr.ring)


def verify_surjection(base: RingPresentation, ideal_gens: Sequence[Union[str, Polynomial]],
                      gr: RingPresentation, relations: Sequence[Union[str, Polynomial]]) -> Dict[str, bool]:
    """Which of ``relations`` (written in base variables) vanish in gr."""
    out = {}
    for r in relations:
        image = transfer(r, base, ideal_gens, gr)
        out[str(base.parse(r) if isinstance(r, str) else r)] = not gr.normal_form(image)
    return out
