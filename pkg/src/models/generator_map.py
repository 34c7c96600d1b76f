"""
Generator Map Data Model
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.core import word_problem
from src.core.errors import BadShape, MatrixMismatch, UnknownGenerator
from src.models.coxeter_data import CoxeterMatrix, GroupElement, Word, format_order, generator_element


class Bijectivity(Enum):
    """Best-effort bijectivity verdict of a generator map"""

    VERIFIED = "verified"
    REFUTED = "refuted"
    UNVERIFIED = "unverified-at-radius"


@dataclass(frozen=True)
class GeneratorMap:
    """Images phi(s) of the source generators, as words over the target generators"""

    source: CoxeterMatrix
    target: CoxeterMatrix
    images: Tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.source.rank:
            raise BadShape(f"{len(self.images)} images for {self.source.rank} source generators")
        for word in self.images:
            for letter in word:
                if not 0 <= letter < self.target.rank:
                    raise UnknownGenerator(f"image letter {letter!r} is not a target generator")

    @classmethod
    def identity(cls, matrix: CoxeterMatrix) -> 'GeneratorMap':
        return cls(source=matrix, target=matrix, images=tuple((i,) for i in matrix.generators))

    def image(self, s: int) -> GroupElement:
        """phi(s) as a canonical target element"""
        return word_problem.reduce(self.target, self.images[s], word_cap=None)

    def image_elements(self) -> List[GroupElement]:
        return [self.image(s) for s in self.source.generators]

    def apply(self, word: Iterable[int]) -> GroupElement:
        """phi of a source word: concatenate the images and reduce in the target"""
        letters: List[int] = []
        for s in word:
            letters.extend(self.images[s])
        return word_problem.reduce(self.target, letters, word_cap=None)

    def apply_element(self, a: GroupElement) -> GroupElement:
        if a.matrix != self.source:
            raise MatrixMismatch(f"{a} is not an element of the map's source {self.source}")
        return self.apply(a.canonical)

    def is_identity(self) -> bool:
        return self.source == self.target and all(
            self.image(s) == generator_element(self.target, s) for s in self.source.generators
        )

    def relator_failures(self) -> List[str]:
        """Source relators whose images are not trivial in the target"""
        failures = []
        images = self.image_elements()
        labels = self.source.labels
        for s in self.source.generators:
            if not word_problem.multiply(images[s], images[s]).is_identity:
                failures.append(f"phi({labels[s]})^2 != 1")
        for s, t, order in self.source.finite_pairs():
            product = word_problem.multiply(images[s], images[t])
            if not word_problem.power(product, order).is_identity:
                failures.append(f"(phi({labels[s]}) phi({labels[t]}))^{order} != 1")
        return failures

    def image_names(self) -> Dict[str, List[str]]:
        return {
            self.source.labels[s]: self.target.names_of(word)
            for s, word in enumerate(self.images)
        }

    def to_dict(self) -> dict:
        """Convert to the generator map JSON format"""
        return {
            'source': self.source.to_dict(),
            'target': self.target.to_dict(),
            'images': self.image_names(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'GeneratorMap':
        """Create from the generator map JSON format; image names refer to target generators"""
        try:
            source = CoxeterMatrix.from_dict(data['source'])
            target = CoxeterMatrix.from_dict(data['target'])
            images = data['images']
        except (KeyError, TypeError) as e:
            raise BadShape(f"malformed generator map: {e}") from e
        return cls.from_names(source, target, images)

    @classmethod
    def from_names(cls, source: CoxeterMatrix, target: CoxeterMatrix, images: Dict[str, Sequence[str]]) -> 'GeneratorMap':
        missing = [name for name in source.labels if name not in images]
        if missing:
            raise BadShape(f"no image given for source generator(s) {', '.join(missing)}")
        extra = [name for name in images if name not in source.labels]
        if extra:
            raise UnknownGenerator(f"images given for unknown source generator(s) {', '.join(extra)}")
        return cls(
            source=source,
            target=target,
            images=tuple(target.word_from_names(images[name]) for name in source.labels),
        )

    def __str__(self) -> str:
        parts = [
            f"{name} -> {','.join(word) or '1'}" for name, word in self.image_names().items()
        ]
        return "{" + "; ".join(parts) + "}"


def compose(outer: GeneratorMap, inner: GeneratorMap) -> GeneratorMap:
    """outer after inner: s -> outer(inner(s))"""
    if inner.target != outer.source:
        raise MatrixMismatch("inner map's target is not the outer map's source")
    return GeneratorMap(
        source=inner.source,
        target=outer.target,
        images=tuple(outer.apply(word).canonical for word in inner.images),
    )


def preserves_labels(
    source: CoxeterMatrix,
    elements: Sequence[GroupElement],
    probe: Optional[int] = None,
) -> List[str]:
    """
    Pairs whose products do not have the order the source label prescribes.

    An infinite label is accepted when the product has infinite order.
    """
    mismatches = []
    for i in source.generators:
        for j in range(i + 1, source.rank):
            expected = source.m(i, j)
            found = word_problem.element_order(word_problem.multiply(elements[i], elements[j]), probe)
            if found != expected:
                mismatches.append(
                    f"m({source.labels[i]},{source.labels[j]})={format_order(expected)} "
                    f"but the product has order {format_order(found)}"
                )
    return mismatches
