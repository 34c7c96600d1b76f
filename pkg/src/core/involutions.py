"""
Involutions

Conjugation descent to the normal form v w0 v^-1 of an involution, where w0
is the longest element of a finite parabolic, and the reflection / rotation
classification built on it.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

import networkx as nx

from config.constants import DEFAULT_DESCENT_CAP
from src.core import word_problem
from src.core.errors import DescentStuck, NotInvolution
from src.models.coxeter_data import (
    CoxeterMatrix,
    GroupElement,
    ParabolicSubset,
    identity_element,
    is_finite,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InvolutionNormalForm:
    """a = conjugator * core * conjugator^-1 with core longest in W_{core_support}"""

    conjugator: GroupElement
    core: GroupElement
    core_support: ParabolicSubset

    def to_dict(self) -> dict:
        return {
            'conjugator': self.conjugator.names(),
            'core': self.core.names(),
            'core_support': self.core_support.names(self.core.matrix),
        }


@dataclass(frozen=True)
class Reflection:
    conjugator: GroupElement
    generator: int

    kind = "reflection"

    def to_dict(self) -> dict:
        return {
            'kind': self.kind,
            'conjugator': self.conjugator.names(),
            'generator': self.conjugator.matrix.labels[self.generator],
        }


@dataclass(frozen=True)
class Rotation:
    """Conjugate of the half-turn (st)^half_order of an even dihedral parabolic"""

    conjugator: GroupElement
    pair: Tuple[int, int]
    half_order: int

    kind = "rotation"

    def to_dict(self) -> dict:
        labels = self.conjugator.matrix.labels
        return {
            'kind': self.kind,
            'conjugator': self.conjugator.names(),
            'pair': [labels[i] for i in self.pair],
            'half_order': self.half_order,
        }


@dataclass(frozen=True)
class OtherInvolution:
    normal_form: InvolutionNormalForm

    kind = "other"

    def to_dict(self) -> dict:
        return {'kind': self.kind, **self.normal_form.to_dict()}


InvolutionClass = Union[Reflection, Rotation, OtherInvolution]


def is_involution(a: GroupElement) -> bool:
    return not a.is_identity and word_problem.multiply(a, a).is_identity


def _conjugate_by_generator(y: GroupElement, g: int) -> GroupElement:
    solver = word_problem.solver_for(y.matrix)
    return GroupElement(canonical=solver.canonicalize(y.canonical + (g,), start=(g,)), matrix=y.matrix)


def _descent(y: GroupElement) -> Optional[Tuple[int, GroupElement]]:
    """Shortest conjugate g y g over single generators, if shorter than y"""
    best = None
    for g in y.matrix.generators:
        moved = _conjugate_by_generator(y, g)
        if moved.length < y.length and (best is None or moved.sort_key() < best[1].sort_key()):
            best = (g, moved)
    return best


def _certified(y: GroupElement) -> bool:
    return word_problem.is_longest_in(y, y.support)


def involution_normal_form(a: GroupElement, descent_cap: int = DEFAULT_DESCENT_CAP) -> InvolutionNormalForm:
    """
    Conjugation descent: take length-decreasing conjugations by single
    generators; when none applies, search the equal-length plateau (up to
    descent_cap states) for an element that still descends. At the bottom the
    core is the least plateau element that is longest in its support parabolic.
    """
    if not is_involution(a):
        raise NotInvolution(f"{a} is not an involution")

    matrix = a.matrix
    y = a
    v = identity_element(matrix)
    while True:
        step = _descent(y)
        if step is not None:
            g, y = step
            v = word_problem.multiply(v, GroupElement(canonical=(g,), matrix=matrix))
            continue

        # plateau: y -> conjugator from the current v
        plateau: Dict[GroupElement, GroupElement] = {y: v}
        queue = deque([y])
        escape = None
        while queue and escape is None:
            current = queue.popleft()
            for g in matrix.generators:
                moved = _conjugate_by_generator(current, g)
                if moved.length != current.length or moved in plateau:
                    continue
                plateau[moved] = word_problem.multiply(plateau[current], GroupElement(canonical=(g,), matrix=matrix))
                if _descent(moved) is not None:
                    escape = moved
                    break
                if len(plateau) >= descent_cap:
                    raise DescentStuck(
                        f"conjugation plateau of {a} exceeded {descent_cap} states at length {y.length}; "
                        f"raise the descent cap"
                    )
                queue.append(moved)

        if escape is not None:
            logger.debug("left a plateau of %d conjugates at length %d", len(plateau), y.length)
            y, v = escape, plateau[escape]
            continue

        certified = sorted((x for x in plateau if _certified(x)), key=GroupElement.sort_key)
        if not certified:
            raise DescentStuck(
                f"no conjugate of {a} of length {y.length} is longest in its support parabolic"
            )
        core = certified[0]
        return InvolutionNormalForm(conjugator=plateau[core], core=core, core_support=core.support)


def is_reflection(a: GroupElement, descent_cap: int = DEFAULT_DESCENT_CAP) -> bool:
    """Conjugate of a generator: odd-length involution whose normal-form core is a single generator"""
    if a.length % 2 == 0 or not is_involution(a):
        return False
    return len(involution_normal_form(a, descent_cap).core_support) == 1


def classify_involution(a: GroupElement, descent_cap: int = DEFAULT_DESCENT_CAP) -> InvolutionClass:
    nf = involution_normal_form(a, descent_cap)
    support = list(nf.core_support)
    if len(support) == 1:
        return Reflection(conjugator=nf.conjugator, generator=support[0])
    if len(support) == 2:
        s, t = support
        order = a.matrix.m(s, t)
        if is_finite(order) and order % 2 == 0:
            half_turn = word_problem.reduce(a.matrix, (s, t) * (order // 2), word_cap=None)
            if nf.core == half_turn:
                return Rotation(conjugator=nf.conjugator, pair=(s, t), half_order=order // 2)
    return OtherInvolution(normal_form=nf)


def odd_label_graph(matrix: CoxeterMatrix) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(matrix.generators)
    graph.add_edges_from((i, j) for i, j, label in matrix.finite_pairs() if label % 2 == 1)
    return graph


def conjugate_generators(matrix: CoxeterMatrix, s: int, t: int) -> bool:
    """s and t are conjugate iff a path of odd labels joins them"""
    return nx.has_path(odd_label_graph(matrix), s, t)
