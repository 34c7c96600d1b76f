"""
Enumeration Oracle

Breadth-first enumeration of Cayley balls (or whole finite groups). Each
layer is processed in shortlex order and generators in index order, so the
first word that reaches an element is its shortlex normal form.

Two methods identify elements:
  * "representation" - the faithful linear representation of W on R^n given
    by the bilinear form B(e_s, e_t) = -cos(pi / m(s,t)) (-1 for infinity);
    it keys elements by their matrices and serves as the oracle.
  * "rewriting" - canonical forms by Tits' braid-move closure.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import pandas as pd

from config.constants import DEFAULT_ENUM_RADIUS, DEFAULT_ENUM_SIZE_CAP, REPRESENTATION_DECIMALS
from src.core.errors import BallEscape
from src.core.word_problem import reflection_matrices, solver_for
from src.models.coxeter_data import CoxeterMatrix, GroupElement, Word

logger = logging.getLogger(__name__)

OUTSIDE = -1
METHODS = ("representation", "rewriting")


@dataclass
class EnumerationTable:
    """A Cayley ball in BFS order with right-multiplication edges"""

    matrix: CoxeterMatrix
    elements: List[GroupElement]
    edges: np.ndarray  # (len(elements), rank) ordinals, OUTSIDE when the product leaves the ball
    radius: int
    complete: bool
    method: str = "representation"
    index: Dict[Word, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.index:
            self.index = {element.canonical: i for i, element in enumerate(self.elements)}
        self.lengths: List[int] = [element.length for element in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, element: GroupElement) -> bool:
        return element.canonical in self.index

    def ordinal(self, element: GroupElement) -> int:
        try:
            return self.index[element.canonical]
        except KeyError:
            raise BallEscape(f"{element} lies outside the radius-{self.radius} ball") from None

    def locate(self, word: Iterable[int], start: int = 0) -> int:
        """Ordinal of start * word, walking right-multiplication edges"""
        current = start
        for letter in word:
            nxt = int(self.edges[current, letter])
            if nxt == OUTSIDE:
                raise BallEscape(
                    f"walk left the radius-{self.radius} ball at {self.elements[current]} * "
                    f"{self.matrix.labels[letter]}; enlarge the radius"
                )
            current = nxt
        return current

    def element_of(self, word: Iterable[int]) -> GroupElement:
        """Oracle canonical form of an arbitrary word"""
        return self.elements[self.locate(word)]

    def product(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return self.elements[self.locate(b.canonical, start=self.ordinal(a))]

    def inverse(self, a: GroupElement) -> GroupElement:
        return self.element_of(reversed(a.canonical))

    def conjugate(self, a: GroupElement, g: GroupElement) -> GroupElement:
        """g a g^-1"""
        return self.product(self.product(g, a), self.inverse(g))

    def cayley_graph(self) -> nx.Graph:
        """Undirected Cayley graph of the ball, edges colored by generator"""
        graph = nx.Graph()
        for i, element in enumerate(self.elements):
            graph.add_node(i, word=",".join(element.names()), length=element.length)
        for i in range(len(self.elements)):
            for g in self.matrix.generators:
                j = int(self.edges[i, g])
                if j != OUTSIDE and i < j:
                    graph.add_edge(i, j, generator=self.matrix.labels[g])
        return graph

    def multiplication_table(self) -> np.ndarray:
        """Full table of ordinals of products; complete tables only"""
        if not self.complete:
            raise BallEscape("multiplication table needs a complete enumeration")
        size = len(self.elements)
        table = np.empty((size, size), dtype=int)
        for i in range(size):
            for j, element in enumerate(self.elements):
                table[i, j] = self.locate(element.canonical, start=i)
        return table

    def to_frame(self) -> pd.DataFrame:
        """One row per element: ordinal, word, length and the right neighbours"""
        data = {
            'ordinal': np.arange(len(self.elements)),
            'word': [",".join(element.names()) or "1" for element in self.elements],
            'length': self.lengths,
        }
        for g, label in enumerate(self.matrix.labels):
            data[label] = self.edges[:, g]
        return pd.DataFrame(data)


def _representation_step(matrix: CoxeterMatrix) -> Tuple[object, Callable, Callable]:
    reflections = reflection_matrices(matrix)

    def key_of(state: np.ndarray) -> Hashable:
        # + 0.0 folds -0.0 into 0.0
        return (np.round(state, REPRESENTATION_DECIMALS) + 0.0).tobytes()

    def step(state: np.ndarray, word: Word, g: int) -> Tuple[np.ndarray, Word]:
        return state @ reflections[g], word + (g,)

    return np.eye(matrix.rank), key_of, step


def _rewriting_step(matrix: CoxeterMatrix) -> Tuple[object, Callable, Callable]:
    solver = solver_for(matrix)

    def key_of(state: Word) -> Hashable:
        return state

    def step(state: Word, word: Word, g: int) -> Tuple[Word, Word]:
        canonical = solver.closure_reduce(state + (g,))
        return canonical, canonical

    return (), key_of, step


def enumerate_group(
    matrix: CoxeterMatrix,
    radius_cap: int = DEFAULT_ENUM_RADIUS,
    size_cap: int = DEFAULT_ENUM_SIZE_CAP,
    method: str = "representation",
) -> EnumerationTable:
    """
    BFS from the identity by right multiplication with every generator.

    Stops when the group closes (complete) or when the next layer would pass
    radius_cap or size_cap (incomplete; edges into the missing layer are OUTSIDE).
    """
    if radius_cap < 0 or size_cap < 1:
        raise ValueError("enumeration caps must be positive")
    if method == "representation":
        start, key_of, step = _representation_step(matrix)
    elif method == "rewriting":
        start, key_of, step = _rewriting_step(matrix)
    else:
        raise ValueError(f"unknown enumeration method {method!r}; expected one of {METHODS}")

    rank = matrix.rank
    words: List[Word] = [()]
    states = [start]
    ordinals: Dict[Hashable, int] = {key_of(start): 0}
    edges: List[List[int]] = [[OUTSIDE] * rank]
    frontier = [0]
    radius = 0
    complete = False

    while True:
        discovered: Dict[Hashable, Tuple[object, Word]] = {}
        pending: List[Tuple[int, int, Hashable]] = []
        for current in frontier:
            for g in range(rank):
                state, word = step(states[current], words[current], g)
                key = key_of(state)
                known = ordinals.get(key)
                if known is not None:
                    edges[current][g] = known
                    continue
                if key not in discovered:
                    discovered[key] = (state, word)
                pending.append((current, g, key))

        if not discovered:
            complete = True
            break
        if radius >= radius_cap or len(words) + len(discovered) > size_cap:
            logger.info(
                "enumeration of %s stopped at radius %d with %d elements (caps: radius %d, size %d)",
                matrix, radius, len(words), radius_cap, size_cap,
            )
            break

        layer = sorted(discovered.items(), key=lambda item: item[1][1])
        frontier = []
        for key, (state, word) in layer:
            ordinals[key] = len(words)
            frontier.append(len(words))
            words.append(word)
            states.append(state)
            edges.append([OUTSIDE] * rank)
        for current, g, key in pending:
            edges[current][g] = ordinals[key]
        radius += 1

    elements = [GroupElement(canonical=word, matrix=matrix) for word in words]
    logger.debug("enumerated %d elements of %s (complete=%s)", len(elements), matrix, complete)
    return EnumerationTable(
        matrix=matrix,
        elements=elements,
        edges=np.array(edges, dtype=int).reshape(len(elements), rank),
        radius=radius,
        complete=complete,
        method=method,
    )


def group_order(matrix: CoxeterMatrix, size_cap: int = DEFAULT_ENUM_SIZE_CAP) -> Optional[int]:
    """Exact order when the group closes within size_cap elements, else None ("exceeds cap")"""
    table = enumerate_group(matrix, radius_cap=size_cap, size_cap=size_cap)
    return len(table) if table.complete else None


def subgroup_elements(table: EnumerationTable, generators: Sequence[GroupElement]) -> frozenset:
    """Closure of the given elements under multiplication inside the table's ball"""
    identity = table.elements[0]
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for g in generators:
            product = table.product(current, g)
            if product not in seen:
                seen.add(product)
                queue.append(product)
    return frozenset(seen)
