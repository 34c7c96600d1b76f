"""
Word Problem Engine

Canonical forms are the shortlex-least reduced words. Descents are read off
the Tits representation of W on R^n: t is a right descent of w iff the root
w(alpha_t) is negative. Appending a letter moves the length by exactly one
(exchange condition), and the normal form of the product is recovered by
peeling off least left descents. Tits' braid-move rewriting is kept as an
exact second engine and for listing every reduced word of an element.
"""

import logging
import math
from collections import deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from config.constants import DEFAULT_WORD_CAP, UNIT_SPECTRUM_TOLERANCE
from src.core.errors import BallEscape, MatrixMismatch, NotSpherical, UnknownGenerator, WordTooLong
from src.models.coxeter_data import (
    INFINITY,
    CoxeterMatrix,
    GroupElement,
    Order,
    ParabolicSubset,
    Word,
    identity_element,
    is_finite,
    validate_matrix,
)

logger = logging.getLogger(__name__)

__all__ = [
    'WordProblemSolver', 'solver_for', 'clear_solvers', 'validate_matrix', 'reduce', 'multiply', 'invert',
    'equal', 'length', 'parity', 'support', 'in_parabolic', 'longest_element',
    'is_longest_in', 'is_reduced', 'reduced_words', 'right_descents', 'conjugate',
    'power', 'element_order', 'generated_set', 'reflection_matrices',
]


def reflection_matrices(matrix: CoxeterMatrix) -> List[np.ndarray]:
    """
    Generators acting on the root basis, for B(e_s, e_t) = -cos(pi / m(s,t))
    (-1 for infinity). Column t of a product is the image of alpha_t.
    """
    rank = matrix.rank
    form = np.eye(rank)
    for i in range(rank):
        for j in range(rank):
            if i != j:
                order = matrix.m(i, j)
                form[i, j] = -math.cos(math.pi / order) if is_finite(order) else -1.0
    reflections = []
    for i in range(rank):
        sigma = np.eye(rank)
        sigma[i, :] -= 2.0 * form[i, :]
        reflections.append(sigma)
    return reflections


def is_negative_root(root: np.ndarray) -> bool:
    """Roots are sign-coherent; the largest coefficient carries the sign"""
    return bool(root[np.argmax(np.abs(root))] < 0)


def cancel_adjacent(word: Sequence[int]) -> Word:
    """Delete adjacent equal letters until none remain (s^2 = 1)"""
    stack: List[int] = []
    for letter in word:
        if stack and stack[-1] == letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def adjacent_repeat(word: Word) -> Optional[int]:
    """Position of the first pair of equal adjacent letters, if any"""
    for i in range(len(word) - 1):
        if word[i] == word[i + 1]:
            return i
    return None


class WordProblemSolver:
    """Word problem engine for one Coxeter matrix"""

    def __init__(self, matrix: CoxeterMatrix):
        self.matrix = matrix
        self.reflections = reflection_matrices(matrix)
        # (s, t) -> s t s t ... of length m(s, t), finite labels only
        self._alternating: Dict[Tuple[int, int], Word] = {}
        for s in matrix.generators:
            for t in matrix.generators:
                order = matrix.m(s, t)
                if s != t and is_finite(order):
                    self._alternating[(s, t)] = tuple(s if k % 2 == 0 else t for k in range(int(order)))
        self._closures: Dict[Word, FrozenSet[Word]] = {}
        self._products: Dict[Tuple[Word, int], Word] = {}
        self._actions: Dict[Word, Tuple[np.ndarray, np.ndarray]] = {}
        self._order_bound: Optional[int] = None

    def action(self, canonical: Word) -> Tuple[np.ndarray, np.ndarray]:
        """rho(w) and rho(w^-1) for a reduced word"""
        found = self._actions.get(canonical)
        if found is None:
            forward = np.eye(self.matrix.rank)
            backward = np.eye(self.matrix.rank)
            for letter in canonical:
                forward = forward @ self.reflections[letter]
                backward = self.reflections[letter] @ backward
            found = self._actions.setdefault(canonical, (forward, backward))
        return found

    def shortlex(self, backward: np.ndarray, bound: int) -> Word:
        """
        Shortlex normal form of the element x with rho(x^-1) = backward.

        s is a left descent of x iff x^-1(alpha_s) is negative; the least
        left descent is the first letter of the shortlex word, so it is
        peeled off (x <- s x) until no descent is left.
        """
        word: List[int] = []
        while True:
            descent = next(
                (s for s in self.matrix.generators if is_negative_root(backward[:, s])), None
            )
            if descent is None:
                return tuple(word)
            if len(word) == bound:
                raise AssertionError(f"more than {bound} left descents peeled; the representation lost precision")
            word.append(descent)
            backward = backward @ self.reflections[descent]

    def right_descents(self, canonical: Word) -> FrozenSet[int]:
        """Generators t with l(wt) < l(w)"""
        forward, _ = self.action(canonical)
        return frozenset(t for t in self.matrix.generators if is_negative_root(forward[:, t]))

    def append(self, canonical: Word, letter: int) -> Word:
        """Canonical form of w * letter"""
        key = (canonical, letter)
        product = self._products.get(key)
        if product is None:
            forward, backward = self.action(canonical)
            expected = len(canonical) - 1 if is_negative_root(forward[:, letter]) else len(canonical) + 1
            product = self.shortlex(self.reflections[letter] @ backward, len(canonical) + 1)
            if len(product) != expected:
                raise AssertionError(f"{canonical} * {letter} has length {len(product)}, expected {expected}")
            self._products[key] = product
        return product

    def canonicalize(self, word: Iterable[int], start: Word = ()) -> Word:
        """Canonical form of start * word, one letter at a time"""
        current = start
        for letter in word:
            current = self.append(current, letter)
        return current

    def inverse(self, canonical: Word) -> Word:
        forward, _ = self.action(canonical)
        return self.shortlex(forward, len(canonical))

    def spectral_radius(self, canonical: Word) -> float:
        if not canonical:
            return 1.0
        forward, _ = self.action(canonical)
        return float(np.max(np.abs(np.linalg.eigvals(forward))))

    @property
    def order_bound(self) -> int:
        """Largest order a finite-order element can have"""
        if self._order_bound is None:
            from src.core.spherical import order_bound

            self._order_bound = order_bound(self.matrix)
        return self._order_bound

    def braid_moves(self, word: Word) -> Iterator[Word]:
        """Every word obtained from `word` by one braid move"""
        n = len(word)
        for i in range(n - 1):
            s, t = word[i], word[i + 1]
            pattern = self._alternating.get((s, t))
            if pattern is None:
                continue
            end = i + len(pattern)
            if end <= n and word[i:end] == pattern:
                yield word[:i] + self._alternating[(t, s)] + word[end:]

    def closure_reduce(self, word: Sequence[int]) -> Word:
        """
        Canonical form by exhaustive braid closure of the whole word.

        Braid-closes the current word; whenever a word with two equal adjacent
        letters appears, deletes them and starts over from the shorter word.
        When the closure contains no such word it is the set of all reduced
        words of the element, and its least member is returned. Exponential in
        the number of reduced words.
        """
        current = cancel_adjacent(word)
        while True:
            seen = {current}
            queue = deque([current])
            shorter: Optional[Word] = None
            while queue and shorter is None:
                candidate = queue.popleft()
                for moved in self.braid_moves(candidate):
                    if moved in seen:
                        continue
                    position = adjacent_repeat(moved)
                    if position is not None:
                        shorter = moved[:position] + moved[position + 2:]
                        break
                    seen.add(moved)
                    queue.append(moved)
            if shorter is None:
                canonical = min(seen)
                self._closures.setdefault(canonical, frozenset(seen))
                return canonical
            current = cancel_adjacent(shorter)

    def reduced_words(self, canonical: Word) -> FrozenSet[Word]:
        """All reduced words of the element whose canonical form is given"""
        closure = self._closures.get(canonical)
        if closure is None:
            seen = {canonical}
            queue = deque([canonical])
            while queue:
                for moved in self.braid_moves(queue.popleft()):
                    if moved not in seen:
                        seen.add(moved)
                        queue.append(moved)
            closure = frozenset(seen)
            self._closures[canonical] = closure
        return closure


_SOLVERS: Dict[CoxeterMatrix, WordProblemSolver] = {}


def solver_for(matrix: CoxeterMatrix) -> WordProblemSolver:
    """Shared solver per matrix; its memo tables behave as caches"""
    solver = _SOLVERS.get(matrix)
    if solver is None:
        solver = _SOLVERS.setdefault(matrix, WordProblemSolver(matrix))
    return solver


def clear_solvers():
    """Drop every memo table"""
    _SOLVERS.clear()


def _check_letters(matrix: CoxeterMatrix, word: Sequence[int]):
    for letter in word:
        if not isinstance(letter, int) or not 0 <= letter < matrix.rank:
            raise UnknownGenerator(f"letter {letter!r} is not a generator index below {matrix.rank}")


def _same_matrix(a: GroupElement, b: GroupElement):
    if a.matrix is not b.matrix and a.matrix != b.matrix:
        raise MatrixMismatch(f"elements of different systems: {a.matrix} and {b.matrix}")


def reduce(matrix: CoxeterMatrix, word: Sequence[int], word_cap: Optional[int] = DEFAULT_WORD_CAP) -> GroupElement:
    """Shortlex canonical reduced form of a word"""
    word = tuple(word)
    _check_letters(matrix, word)
    if word_cap is not None and len(word) > word_cap:
        raise WordTooLong(len(word), word_cap)
    return GroupElement(canonical=solver_for(matrix).canonicalize(word), matrix=matrix)


def multiply(a: GroupElement, b: GroupElement, word_cap: Optional[int] = None) -> GroupElement:
    _same_matrix(a, b)
    if word_cap is not None and a.length + b.length > word_cap:
        raise WordTooLong(a.length + b.length, word_cap)
    canonical = solver_for(a.matrix).canonicalize(b.canonical, start=a.canonical)
    return GroupElement(canonical=canonical, matrix=a.matrix)


def invert(a: GroupElement) -> GroupElement:
    canonical = solver_for(a.matrix).inverse(a.canonical)
    return GroupElement(canonical=canonical, matrix=a.matrix)


def equal(a: GroupElement, b: GroupElement) -> bool:
    _same_matrix(a, b)
    return a.canonical == b.canonical


def length(a: GroupElement) -> int:
    return a.length


def parity(a: GroupElement) -> str:
    return a.parity


def support(a: GroupElement) -> ParabolicSubset:
    return a.support


def in_parabolic(a: GroupElement, subset: ParabolicSubset) -> bool:
    """w lies in W_T iff S(w) is contained in T"""
    return a.support.issubset(subset)


def is_reduced(matrix: CoxeterMatrix, word: Sequence[int]) -> bool:
    word = tuple(word)
    _check_letters(matrix, word)
    return len(solver_for(matrix).canonicalize(word)) == len(word)


def reduced_words(a: GroupElement) -> FrozenSet[Word]:
    return solver_for(a.matrix).reduced_words(a.canonical)


def right_descents(a: GroupElement) -> FrozenSet[int]:
    return solver_for(a.matrix).right_descents(a.canonical)


def is_longest_in(a: GroupElement, subset: ParabolicSubset) -> bool:
    """Descent criterion: a in W_T and l(at) < l(a) for every t in T"""
    if not in_parabolic(a, subset):
        return False
    return subset.indices <= right_descents(a)


def longest_element(matrix: CoxeterMatrix, subset: ParabolicSubset) -> GroupElement:
    """The unique longest element w0 of the finite parabolic W_T"""
    from src.core.spherical import is_spherical

    verdict = is_spherical(matrix, subset)
    if not verdict.finite:
        raise NotSpherical(f"W_T is infinite for T={subset.names(matrix)}: {verdict.witness}")

    solver = solver_for(matrix)
    current: Word = ()
    while True:
        ascents = [t for t in subset if t not in solver.right_descents(current)]
        if not ascents:
            break
        current = solver.append(current, ascents[0])

    w0 = GroupElement(canonical=current, matrix=matrix)
    if not is_longest_in(w0, subset):
        raise AssertionError(f"ascent from the identity stopped at {w0} which fails the descent criterion")
    logger.debug("longest element of W_%s has length %d", subset, w0.length)
    return w0


def conjugate(a: GroupElement, g: GroupElement) -> GroupElement:
    """g a g^-1"""
    return multiply(multiply(g, a), invert(g))


def power(a: GroupElement, exponent: int) -> GroupElement:
    result = identity_element(a.matrix)
    for _ in range(exponent):
        result = multiply(result, a)
    return result


def element_order(a: GroupElement, probe: Optional[int] = None) -> Order:
    """
    Order of a.

    A finite-order element lies in a conjugate of a spherical parabolic, so
    its order is at most the catalog bound of the system; powers stop there
    (or at `probe`, when larger). A spectral radius above 1 is infinite order
    outright.
    """
    if a.is_identity:
        return 1
    solver = solver_for(a.matrix)
    if solver.spectral_radius(a.canonical) > 1.0 + UNIT_SPECTRUM_TOLERANCE:
        return INFINITY
    bound = solver.order_bound if probe is None else max(probe, solver.order_bound)
    current = a
    for exponent in range(2, bound + 1):
        current = multiply(current, a)
        if current.is_identity:
            return exponent
    return INFINITY


def generated_set(
    matrix: CoxeterMatrix,
    generators: Iterable[GroupElement],
    limit: Optional[int] = None,
) -> FrozenSet[GroupElement]:
    """Closure of the given elements under multiplication; BallEscape past `limit` elements"""
    generators = list(generators)
    start = identity_element(matrix)
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for g in generators:
            product = multiply(current, g)
            if product not in seen:
                seen.add(product)
                if limit is not None and len(seen) > limit:
                    raise BallEscape(f"subgroup generated by {len(generators)} elements exceeds {limit} elements")
                queue.append(product)
    return frozenset(seen)
