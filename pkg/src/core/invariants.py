"""
Diagram Invariants

Vertex count, edge count and edge-label multiset of a Coxeter diagram (an
edge for every finite label), and side-by-side comparison of two
presentations.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import pandas as pd

from config.constants import DEFAULT_ENUM_SIZE_CAP
from src.core.enumeration import group_order
from src.core.spherical import davis_dimension
from src.models.coxeter_data import CoxeterMatrix

logger = logging.getLogger(__name__)

INVARIANT_FIELDS = ('vertex_count', 'edge_count', 'edge_label_multiset')


@dataclass(frozen=True)
class DiagramInvariants:
    vertex_count: int
    edge_count: int
    edge_label_multiset: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            'vertex_count': self.vertex_count,
            'edge_count': self.edge_count,
            'edge_label_multiset': list(self.edge_label_multiset),
        }

    def __str__(self) -> str:
        labels = ",".join(str(label) for label in self.edge_label_multiset)
        return f"({self.vertex_count},{self.edge_count},{{{labels}}})"


def diagram_invariants(matrix: CoxeterMatrix) -> DiagramInvariants:
    labels = sorted(label for _, _, label in matrix.finite_pairs())
    return DiagramInvariants(
        vertex_count=matrix.rank,
        edge_count=len(labels),
        edge_label_multiset=tuple(labels),
    )


@dataclass
class InvariantComparison:
    """Per-field equality of two invariant triples"""

    left: DiagramInvariants
    right: DiagramInvariants
    fields: Dict[str, bool] = field(default_factory=dict)

    def __post_init__(self):
        if not self.fields:
            self.fields = {
                name: getattr(self.left, name) == getattr(self.right, name) for name in INVARIANT_FIELDS
            }

    @property
    def same(self) -> bool:
        return all(self.fields.values())

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                'invariant': list(INVARIANT_FIELDS),
                'left': [str(getattr(self.left, name)) for name in INVARIANT_FIELDS],
                'right': [str(getattr(self.right, name)) for name in INVARIANT_FIELDS],
                'equal': [self.fields[name] for name in INVARIANT_FIELDS],
            }
        )

    def to_dict(self) -> dict:
        return {
            'left': self.left.to_dict(),
            'right': self.right.to_dict(),
            'fields': dict(self.fields),
            'same': self.same,
        }


def compare_invariants(a: DiagramInvariants, b: DiagramInvariants) -> InvariantComparison:
    return InvariantComparison(left=a, right=b)


@dataclass
class PresentationComparison:
    """Invariants of two presentations next to their group orders and dimensions"""

    invariants: InvariantComparison
    orders: Tuple[Optional[int], Optional[int]]
    dimensions: Tuple[int, int]
    warnings: List[str] = field(default_factory=list)

    @property
    def same(self) -> bool:
        return self.invariants.same

    def to_dict(self) -> dict:
        return {
            **self.invariants.to_dict(),
            'orders': ["exceeds cap" if order is None else order for order in self.orders],
            'davis_dimensions': list(self.dimensions),
        }


def compare_presentations(
    left: CoxeterMatrix,
    right: CoxeterMatrix,
    size_cap: int = DEFAULT_ENUM_SIZE_CAP,
) -> PresentationComparison:
    """
    Compare diagram invariants and report the oracle group orders alongside.

    Equal invariants with different finite orders mean the presentations
    define non-isomorphic groups; different invariants with equal orders
    happen for isomorphic groups outside the two-dimensional setting.
    """
    comparison = compare_invariants(diagram_invariants(left), diagram_invariants(right))
    orders = (group_order(left, size_cap), group_order(right, size_cap))
    dimensions = (davis_dimension(left), davis_dimension(right))
    warnings = []
    both_finite = None not in orders
    if comparison.same and both_finite and orders[0] != orders[1]:
        warnings.append(
            f"diagram invariants agree but the group orders differ ({orders[0]} vs {orders[1]}); "
            f"these presentations do not define isomorphic groups"
        )
    if not comparison.same and both_finite and orders[0] == orders[1]:
        warnings.append(
            f"diagram invariants differ although both groups have order {orders[0]} "
            f"(Davis dimensions {dimensions[0]} and {dimensions[1]}); invariants are only "
            f"forced to agree for two-dimensional systems"
        )
    for warning in warnings:
        logger.warning(warning)
    return PresentationComparison(
        invariants=comparison,
        orders=orders,
        dimensions=dimensions,
        warnings=warnings,
    )
