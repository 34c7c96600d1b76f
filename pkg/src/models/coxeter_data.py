"""
Coxeter Presentation Data Model
"""

import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from config.constants import INFINITY_FILE_CODE
from src.core.errors import (
    BadShape,
    NotSymmetric,
    BadDiagonal,
    BadOffDiagonal,
    UnknownGenerator,
)

# m(s,t) = infinity; sorts after every integer label
INFINITY = math.inf

Order = Union[int, float]
Word = Tuple[int, ...]


def is_finite(order: Order) -> bool:
    """True for integer labels, False for the infinity sentinel"""
    return order != INFINITY


def format_order(order: Order) -> str:
    return "inf" if order == INFINITY else str(order)


@dataclass(frozen=True)
class CoxeterMatrix:
    """The symbol m(s,t) of a Coxeter system, indexed by generator position"""

    orders: Tuple[Tuple[Order, ...], ...]
    labels: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, '_hash', hash((self.orders, self.labels)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def rank(self) -> int:
        """Number of generators"""
        return len(self.orders)

    @property
    def generators(self) -> range:
        return range(self.rank)

    def m(self, i: int, j: int) -> Order:
        """Order of the product of generators i and j"""
        return self.orders[i][j]

    def is_finite_pair(self, i: int, j: int) -> bool:
        return i != j and is_finite(self.orders[i][j])

    def finite_pairs(self) -> List[Tuple[int, int, int]]:
        """Pairs i < j with finite label, with that label (the Coxeter diagram edges)"""
        return [
            (i, j, int(self.orders[i][j]))
            for i in range(self.rank)
            for j in range(i + 1, self.rank)
            if is_finite(self.orders[i][j])
        ]

    def generator_index(self, name: str) -> int:
        """Look up a generator index by display name"""
        try:
            return self.labels.index(name)
        except ValueError:
            raise UnknownGenerator(
                f"unknown generator {name!r}; expected one of {', '.join(self.labels)}"
            ) from None

    def word_from_names(self, names: Iterable[str]) -> Word:
        return tuple(self.generator_index(name) for name in names)

    def names_of(self, word: Iterable[int]) -> List[str]:
        return [self.labels[letter] for letter in word]

    def as_array(self) -> np.ndarray:
        """Integer array in file encoding (infinity written as 0)"""
        array = np.zeros((self.rank, self.rank), dtype=int)
        for i in range(self.rank):
            for j in range(self.rank):
                order = self.orders[i][j]
                array[i, j] = int(order) if is_finite(order) else INFINITY_FILE_CODE
        return array

    def restrict(self, indices: Iterable[int]) -> 'CoxeterMatrix':
        """Induced presentation on a subset of generators, in index order"""
        keep = sorted(indices)
        return CoxeterMatrix(
            orders=tuple(tuple(self.orders[i][j] for j in keep) for i in keep),
            labels=tuple(self.labels[i] for i in keep),
        )

    def relabel(self, labels: Sequence[str]) -> 'CoxeterMatrix':
        """Same presentation with new display names"""
        if len(labels) != self.rank:
            raise BadShape(f"expected {self.rank} labels, got {len(labels)}")
        return CoxeterMatrix(orders=self.orders, labels=tuple(labels))

    def to_dict(self) -> dict:
        """Convert to the JSON presentation format"""
        return {
            'generators': list(self.labels),
            'orders': self.as_array().tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'CoxeterMatrix':
        """Create from the JSON presentation format (0 encodes infinity)"""
        try:
            generators = list(data['generators'])
            raw = [
                [INFINITY if entry == INFINITY_FILE_CODE else entry for entry in row]
                for row in data['orders']
            ]
        except (KeyError, TypeError) as e:
            raise BadShape(f"malformed presentation: {e}") from e
        return validate_matrix(raw, generators)

    def __str__(self) -> str:
        pairs = ", ".join(
            f"m({self.labels[i]},{self.labels[j]})={label}" for i, j, label in self.finite_pairs()
        )
        return f"CoxeterMatrix[{' '.join(self.labels)}]({pairs or 'all infinite'})"


def validate_matrix(raw: Sequence[Sequence[Order]], labels: Optional[Sequence[str]] = None) -> CoxeterMatrix:
    """
    Validate a raw square array of orders (INFINITY for infinite labels).

    Raises BadShape, BadDiagonal, NotSymmetric or BadOffDiagonal; never repairs.
    """
    try:
        array = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as e:
        raise BadShape(f"orders are not a rectangular numeric array: {e}") from e

    if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] < 1:
        raise BadShape(f"orders must be a non-empty square array, got shape {array.shape}")
    rank = array.shape[0]

    if labels is None:
        labels = [f"s{i}" for i in range(rank)]
    labels = [str(label) for label in labels]
    if len(labels) != rank:
        raise BadShape(f"{len(labels)} generator names for a rank-{rank} matrix")
    if len(set(labels)) != rank:
        raise BadShape("generator names must be distinct")

    diagonal = np.diagonal(array)
    if not np.all(diagonal == 1):
        bad = int(np.flatnonzero(diagonal != 1)[0])
        raise BadDiagonal(f"m({labels[bad]},{labels[bad]}) must be 1, got {diagonal[bad]:g}")

    if not np.array_equal(array, array.T):
        i, j = (int(k) for k in np.argwhere(array != array.T)[0])
        raise NotSymmetric(
            f"m({labels[i]},{labels[j]})={array[i, j]:g} but m({labels[j]},{labels[i]})={array[j, i]:g}"
        )

    off_diagonal = ~np.eye(rank, dtype=bool)
    finite = np.isfinite(array)
    bad_entries = off_diagonal & ((array < 2) | (finite & (array != np.floor(array))))
    if np.any(bad_entries):
        i, j = (int(k) for k in np.argwhere(bad_entries)[0])
        raise BadOffDiagonal(
            f"m({labels[i]},{labels[j]}) must be an integer >= 2 or infinity, got {array[i, j]:g}"
        )

    orders = tuple(
        tuple(int(entry) if np.isfinite(entry) else INFINITY for entry in row)
        for row in array
    )
    return CoxeterMatrix(orders=orders, labels=tuple(labels))


def matrix_from_pairs(labels: Sequence[str], pairs: Dict[Tuple[str, str], int]) -> CoxeterMatrix:
    """Build a matrix from named finite labels; every unlisted pair is infinite"""
    rank = len(labels)
    index = {name: i for i, name in enumerate(labels)}
    raw: List[List[Order]] = [
        [1 if i == j else INFINITY for j in range(rank)] for i in range(rank)
    ]
    for (a, b), order in pairs.items():
        if a not in index or b not in index:
            missing = a if a not in index else b
            raise UnknownGenerator(f"unknown generator {missing!r}")
        raw[index[a]][index[b]] = order
        raw[index[b]][index[a]] = order
    return validate_matrix(raw, labels)


@dataclass(frozen=True)
class ParabolicSubset:
    """A subset T of the generators; W_T is the subgroup it generates"""

    indices: FrozenSet[int] = field(default_factory=frozenset)

    @classmethod
    def of(cls, *indices: int) -> 'ParabolicSubset':
        return cls(frozenset(indices))

    def __contains__(self, index: int) -> bool:
        return index in self.indices

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.indices))

    def __len__(self) -> int:
        return len(self.indices)

    def issubset(self, other: 'ParabolicSubset') -> bool:
        return self.indices <= other.indices

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (len(self.indices), tuple(sorted(self.indices)))

    def names(self, matrix: CoxeterMatrix) -> List[str]:
        return [matrix.labels[i] for i in self]

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self) + "}"


@dataclass(frozen=True)
class GroupElement:
    """An element of W stored as its shortlex-least reduced word"""

    canonical: Word
    matrix: CoxeterMatrix

    @property
    def length(self) -> int:
        """l(w): the length of any reduced word"""
        return len(self.canonical)

    @property
    def parity(self) -> str:
        return "even" if len(self.canonical) % 2 == 0 else "odd"

    @property
    def support(self) -> ParabolicSubset:
        """S(w): the letters of any reduced word"""
        return ParabolicSubset(frozenset(self.canonical))

    @property
    def is_identity(self) -> bool:
        return not self.canonical

    def names(self) -> List[str]:
        return self.matrix.names_of(self.canonical)

    def sort_key(self) -> Tuple[int, Word]:
        """Shortlex order: length first, then lexicographic"""
        return (len(self.canonical), self.canonical)

    def __str__(self) -> str:
        return ",".join(self.names()) if self.canonical else "1"


def identity_element(matrix: CoxeterMatrix) -> GroupElement:
    return GroupElement(canonical=(), matrix=matrix)


def generator_element(matrix: CoxeterMatrix, index: int) -> GroupElement:
    return GroupElement(canonical=(index,), matrix=matrix)
