"""
Davis Complex

Truncation of the poset of spherical cosets wW_T to a Cayley ball. A cell
belongs to the truncation iff the whole coset lies in the ball, i.e.
l(rep) + l(w0_T) <= R, so every face of a cell is again a cell.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import networkx as nx

from config.constants import DEFAULT_ENUM_SIZE_CAP
from src.core import word_problem
from src.core.enumeration import OUTSIDE, EnumerationTable, enumerate_group, group_order
from src.core.errors import BallEscape, NotSpherical
from src.core.spherical import is_spherical, parabolic_order, spherical_subsets
from src.models.coxeter_data import CoxeterMatrix, GroupElement, ParabolicSubset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SphericalCoset:
    """The cell wW_T, stored by its minimal-length representative"""

    rep: GroupElement
    subset: ParabolicSubset

    @property
    def dimension(self) -> int:
        return len(self.subset)

    def sort_key(self):
        return (len(self.subset), self.rep.sort_key(), self.subset.sort_key())

    def to_dict(self) -> dict:
        return {
            'rep_word': self.rep.names(),
            'T': self.subset.names(self.rep.matrix),
            'dim': self.dimension,
        }

    def __str__(self) -> str:
        return f"{self.rep}W_{{{','.join(self.subset.names(self.rep.matrix))}}}"


def _descend_in_table(table: EnumerationTable, ordinal: int, subset: ParabolicSubset) -> int:
    """Greedy right descent inside T; products leaving the ball are longer, never descents"""
    lengths = table.lengths
    current = ordinal
    while True:
        for t in subset:
            nxt = int(table.edges[current, t])
            if nxt != OUTSIDE and lengths[nxt] < lengths[current]:
                current = nxt
                break
        else:
            return current


def canonical_coset(
    w: GroupElement,
    subset: ParabolicSubset,
    table: Optional[EnumerationTable] = None,
) -> SphericalCoset:
    """Minimal representative of wW_T by greedy descent: while l(wt) < l(w), w <- wt"""
    verdict = is_spherical(w.matrix, subset)
    if not verdict.finite:
        raise NotSpherical(f"T={subset.names(w.matrix)} is not spherical: {verdict.witness}")

    if table is not None and w in table:
        rep = table.elements[_descend_in_table(table, table.ordinal(w), subset)]
        return SphericalCoset(rep=rep, subset=subset)

    solver = word_problem.solver_for(w.matrix)
    current = w.canonical
    while True:
        descents = solver.right_descents(current) & subset.indices
        if not descents:
            break
        current = solver.append(current, min(descents))
    return SphericalCoset(rep=GroupElement(canonical=current, matrix=w.matrix), subset=subset)


@dataclass
class DavisComplexTruncation:
    """Cells wW_T contained in a radius-R ball, and their covering relations"""

    matrix: CoxeterMatrix
    cells: List[SphericalCoset]
    covers: List[Tuple[int, int]]  # (face, coface) with |T_coface| = |T_face| + 1
    radius: int
    complete: bool
    table: EnumerationTable = field(repr=False)
    index: Dict[SphericalCoset, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.index:
            self.index = {cell: i for i, cell in enumerate(self.cells)}

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell: SphericalCoset) -> bool:
        return cell in self.index

    @property
    def dimension(self) -> int:
        return max((cell.dimension for cell in self.cells), default=0)

    def cells_of_dimension(self, k: int) -> List[SphericalCoset]:
        return [cell for cell in self.cells if cell.dimension == k]

    def counts_by_dimension(self) -> Dict[int, int]:
        return dict(sorted(Counter(cell.dimension for cell in self.cells).items()))

    def faces(self, cell: SphericalCoset) -> List[SphericalCoset]:
        i = self.index[cell]
        return [self.cells[a] for a, b in self.covers if b == i]

    def cofaces(self, cell: SphericalCoset) -> List[SphericalCoset]:
        i = self.index[cell]
        return [self.cells[b] for a, b in self.covers if a == i]

    def hasse_diagram(self) -> nx.DiGraph:
        """Covering relation, edges pointing from face to coface"""
        graph = nx.DiGraph()
        for i, cell in enumerate(self.cells):
            graph.add_node(i, label=str(cell), dim=cell.dimension)
        graph.add_edges_from(self.covers)
        return graph

    def leq(self, a: SphericalCoset, b: SphericalCoset) -> bool:
        """Containment derived from the covering relation"""
        i, j = self.index[a], self.index[b]
        return i == j or nx.has_path(self.hasse_diagram(), i, j)

    def is_partial_order(self) -> bool:
        """Covers raise dimension by one and the derived order has no cycles"""
        if any(self.cells[b].dimension != self.cells[a].dimension + 1 for a, b in self.covers):
            return False
        return nx.is_directed_acyclic_graph(self.hasse_diagram())

    def one_skeleton(self) -> nx.Graph:
        """Vertices wW_{} and the edges wW_{s} with both endpoints in the ball"""
        graph = nx.Graph()
        for cell in self.cells_of_dimension(0):
            graph.add_node(self.table.ordinal(cell.rep))
        for i, cell in enumerate(self.cells):
            if cell.dimension != 1:
                continue
            ends = [self.table.ordinal(self.cells[a].rep) for a, b in self.covers if b == i]
            if len(ends) == 2:
                (generator,) = cell.subset.names(self.matrix)
                graph.add_edge(*ends, generator=generator)
        return graph

    def matches_cayley_graph(self) -> bool:
        """The 1-skeleton is the Cayley graph of the ball"""
        skeleton = self.one_skeleton()
        cayley = self.table.cayley_graph()
        same_edges = {frozenset(e) for e in skeleton.edges()} == {frozenset(e) for e in cayley.edges()}
        return same_edges and nx.is_isomorphic(skeleton, cayley)

    def act(self, g: GroupElement, cell: SphericalCoset) -> SphericalCoset:
        """Left translation g.wW_T = (gw)W_T; BallEscape when gw leaves the ball"""
        moved = self.table.ordinal(self.table.product(g, cell.rep))
        rep = self.table.elements[_descend_in_table(self.table, moved, cell.subset)]
        return SphericalCoset(rep=rep, subset=cell.subset)

    def fixed_cells(self, g: GroupElement) -> List[SphericalCoset]:
        """Cells c with g.c = c, among those whose translate stays in the ball"""
        fixed = []
        for cell in self.cells:
            try:
                if self.act(g, cell) == cell:
                    fixed.append(cell)
            except BallEscape:
                continue
        return fixed


def build_complex(
    matrix: CoxeterMatrix,
    radius: int,
    size_cap: int = DEFAULT_ENUM_SIZE_CAP,
) -> DavisComplexTruncation:
    """Enumerate the spherical cosets contained in the radius ball and their covers"""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    table = enumerate_group(matrix, radius_cap=radius, size_cap=size_cap)
    subsets = spherical_subsets(matrix)
    spherical = {subset.indices for subset in subsets}

    found = set()
    for subset in subsets:
        longest = word_problem.longest_element(matrix, subset).length
        for ordinal in range(len(table)):
            rep = _descend_in_table(table, ordinal, subset)
            if table.complete or table.lengths[rep] + longest <= table.radius:
                found.add(SphericalCoset(rep=table.elements[rep], subset=subset))
    cells = sorted(found, key=SphericalCoset.sort_key)
    index = {cell: i for i, cell in enumerate(cells)}

    covers: List[Tuple[int, int]] = []
    for i, cell in enumerate(cells):
        ordinal = table.ordinal(cell.rep)
        for extra in matrix.generators:
            larger = cell.subset.indices | {extra}
            if extra in cell.subset or larger not in spherical:
                continue
            upper = ParabolicSubset(larger)
            coface = SphericalCoset(rep=table.elements[_descend_in_table(table, ordinal, upper)], subset=upper)
            if coface in index:
                covers.append((i, index[coface]))
    covers.sort()

    logger.info("built Davis truncation of %s: %d cells, radius %d, complete=%s",
                matrix, len(cells), table.radius, table.complete)
    return DavisComplexTruncation(
        matrix=matrix,
        cells=cells,
        covers=covers,
        radius=radius,
        complete=table.complete,
        table=table,
        index=index,
    )


def act(g: GroupElement, cell: SphericalCoset, table: Optional[EnumerationTable] = None) -> SphericalCoset:
    """Left translation of a cell; through the table when given, else by the word engine"""
    if table is not None:
        moved = table.product(g, cell.rep)
    else:
        moved = word_problem.multiply(g, cell.rep)
    return canonical_coset(moved, cell.subset, table)


def expected_cell_counts(matrix: CoxeterMatrix, size_cap: int = DEFAULT_ENUM_SIZE_CAP) -> Optional[Dict[int, int]]:
    """Sum over spherical T of |W|/|W_T|, by |T|; None for infinite W"""
    order = group_order(matrix, size_cap=size_cap)
    if order is None:
        return None
    counts: Counter = Counter()
    for subset in spherical_subsets(matrix):
        counts[len(subset)] += order // parabolic_order(matrix, subset)
    return dict(sorted(counts.items()))


def half_turn_fixed_cells(cx: DavisComplexTruncation) -> List[Tuple[SphericalCoset, GroupElement, List[SphericalCoset]]]:
    """
    For every 2-cell wW_{s,t} with m(s,t) even: the half-turn v = w(st)^(m/2)w^-1
    and the cells of dimension 0 or 2 it fixes. Cells too close to the
    boundary for v to be computed in the ball are skipped.
    """
    results = []
    for cell in cx.cells_of_dimension(2):
        s, t = list(cell.subset)
        order = cx.matrix.m(s, t)
        if order % 2:
            continue
        try:
            half_turn = cx.table.element_of((s, t) * (order // 2))
            v = cx.table.conjugate(half_turn, cell.rep)
        except BallEscape:
            continue
        fixed = [c for c in cx.fixed_cells(v) if c.dimension in (0, 2)]
        results.append((cell, v, fixed))
    return results
