"""
Finite, affine and extended affine Weyl groups.

Elements of the extended affine Weyl group are written ``w * t_lambda`` and act
on weights by ``x -> w(x + lambda)``; ``t_lambda t_mu = t_{lambda + mu}`` and
``w t_lambda w^-1 = t_{w(lambda)}``. The length is the Iwahori-Matsumoto
length, for which the affine simple reflections have length 1 and the
elements of Omega length 0.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from affhecke.config import get_bounds_config
from affhecke.errors import GroupSizeError, RootDatumMismatchError
from affhecke.rootdata import Matrix, RootDatum, Weight

Word = Tuple[int, ...]


def _braid_order(datum: RootDatum, i: int, j: int) -> int:
    """Order m_ij of s_i s_j, read off a_ij * a_ji."""
    if i == j:
        return 1
    return {0: 2, 1: 3, 2: 4, 3: 6}[datum.cartan[i - 1][j - 1] * datum.cartan[j - 1][i - 1]]


def format_word(word: Sequence[int]) -> str:
    """``(2, 1, 3, 2) -> "s2s1s3s2"``; the empty word is ``"e"``."""
    return "".join(f"s{i}" for i in word) if word else "e"


@dataclass(frozen=True)
class WeylElt:
    """An element of W as an integer matrix on fundamental-weight coordinates."""

    matrix: Matrix
    datum: RootDatum = field(compare=False, repr=False)

    @property
    def group(self) -> "WeylGroup":
        return weyl_group(self.datum)

    def act(self, x: Sequence[int]) -> Weight:
        return tuple(sum(m * c for m, c in zip(row, x)) for row in self.matrix)

    def act_coroot(self, cv: Sequence[int]) -> Weight:
        """Action on coroots, the contragredient of the action on weights."""
        inv = self.inverse.matrix
        r = len(cv)
        return tuple(sum(inv[j][i] * cv[j] for j in range(r)) for i in range(r))

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        if not isinstance(other, WeylElt):
            return NotImplemented
        if other.datum != self.datum:
            raise RootDatumMismatchError(f"cannot multiply elements of W({self.datum.name}) and W({other.datum.name})")
        product_matrix = np.array(self.matrix, dtype=np.int64) @ np.array(other.matrix, dtype=np.int64)
        return WeylElt(tuple(tuple(int(c) for c in row) for row in product_matrix), self.datum)

    @cached_property
    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == (1 if i == j else 0) for i in range(len(self.matrix)) for j in range(len(self.matrix)))

    @cached_property
    def length(self) -> int:
        """Number of positive roots sent to negative roots."""
        positive = self.datum.positive_root_set
        return sum(1 for beta in self.datum.positive_roots if self.act(beta) not in positive)

    @cached_property
    def left_descents(self) -> Tuple[int, ...]:
        # s_i w < w iff <w(rho), alpha_i^vee> < 0, i.e. the i-th row sum is negative
        return tuple(i + 1 for i, row in enumerate(self.matrix) if sum(row) < 0)

    @cached_property
    def right_descents(self) -> Tuple[int, ...]:
        positive = self.datum.positive_root_set
        return tuple(
            i for i, alpha in enumerate(self.datum.simple_roots, start=1) if self.act(alpha) not in positive
        )

    @cached_property
    def reduced_word(self) -> Word:
        """The lexicographically smallest reduced word."""
        group = self.group
        word: List[int] = []
        w = self
        while not w.is_identity:
            i = w.left_descents[0]
            word.append(i)
            w = group.simple(i) * w
        return tuple(word)

    @cached_property
    def inverse(self) -> "WeylElt":
        return self.group.element_from_word(tuple(reversed(self.reduced_word)))

    def __str__(self) -> str:
        return format_word(self.reduced_word)

    def to_json(self) -> List[int]:
        return list(self.reduced_word)


@dataclass(frozen=True)
class AffWeylElt:
    """The element ``fin * t_trans`` of the extended affine Weyl group."""

    fin: WeylElt
    trans: Weight

    @property
    def datum(self) -> RootDatum:
        return self.fin.datum

    def __mul__(self, other: "AffWeylElt") -> "AffWeylElt":
        if not isinstance(other, AffWeylElt):
            return NotImplemented
        # (w1, l1)(w2, l2) = (w1 w2, w2^-1(l1) + l2)
        moved = other.fin.inverse.act(self.trans)
        return AffWeylElt(self.fin * other.fin, tuple(a + b for a, b in zip(moved, other.trans)))

    @cached_property
    def inverse(self) -> "AffWeylElt":
        return AffWeylElt(self.fin.inverse, tuple(-c for c in self.fin.act(self.trans)))

    def act(self, x: Sequence[int]) -> Weight:
        return self.fin.act(tuple(a + b for a, b in zip(x, self.trans)))

    @cached_property
    def is_identity(self) -> bool:
        return self.fin.is_identity and not any(self.trans)

    @cached_property
    def length(self) -> int:
        """
        Iwahori-Matsumoto length:
        sum over positive gamma of |<trans, gamma^vee>| if w(gamma) > 0,
        and |<trans, gamma^vee> + 1| if w(gamma) < 0.
        """
        datum = self.datum
        positive = datum.positive_root_set
        total = 0
        for gamma, coroot in zip(datum.positive_roots, datum.positive_coroots):
            n = sum(a * b for a, b in zip(self.trans, coroot))
            total += abs(n) if self.fin.act(gamma) in positive else abs(n + 1)
        return total

    def __str__(self) -> str:
        trans = ",".join(str(c) for c in self.trans)
        return f"{self.fin}*t({trans})"

    def to_json(self) -> Dict[str, List[int]]:
        return {"fin": self.fin.to_json(), "trans": list(self.trans)}


class WeylGroup:
    """The finite Weyl group of a root datum, with memoized word and Bruhat data."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        r = datum.rank
        self._identity = WeylElt(tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r)), datum)
        self._simple = [self._reflection_matrix(alpha, datum.simple_coroots[i]) for i, alpha in enumerate(datum.simple_roots)]
        self._elements: Optional[List[WeylElt]] = None
        self._reduced_words: Dict[WeylElt, FrozenSet[Word]] = {}
        self._bruhat: Dict[Tuple[WeylElt, WeylElt], bool] = {}

    def _reflection_matrix(self, root: Weight, coroot: Weight) -> WeylElt:
        # s(x) = x - <x, coroot> root
        r = self.datum.rank
        matrix = tuple(
            tuple((1 if k == j else 0) - root[k] * coroot[j] for j in range(r)) for k in range(r)
        )
        return WeylElt(matrix, self.datum)

    def identity(self) -> WeylElt:
        return self._identity

    def simple(self, i: int) -> WeylElt:
        return self._simple[i - 1]

    def reflection(self, root: Weight) -> WeylElt:
        """The reflection s_root for a positive root given in weight coordinates."""
        return self._reflection_matrix(root, self.datum.coroot_of[tuple(root)])

    def element_from_word(self, word: Iterable[int]) -> WeylElt:
        w = self._identity
        for i in word:
            w = w * self.simple(i)
        return w

    def longest_element(self) -> WeylElt:
        w = self._identity
        while True:
            ascent = next((i for i in range(1, self.datum.rank + 1) if i not in w.right_descents), None)
            if ascent is None:
                return w
            w = w * self.simple(ascent)

    def enumerate(self, max_order: Optional[int] = None) -> List[WeylElt]:
        """
        All elements, identity first, by breadth-first closure under right
        multiplication by simple reflections.

        Raises:
            GroupSizeError: |W| exceeds the bound (default from configuration).
        """
        bound = max_order if max_order is not None else get_bounds_config()["max_group_order"]
        order = self.datum.weyl_group_order()
        if order > bound:
            raise GroupSizeError(f"|W({self.datum.name})| = {order} exceeds the enumeration bound {bound}")
        if self._elements is not None:
            return self._elements
        elements = [self._identity]
        seen = {self._identity}
        queue = deque([self._identity])
        while queue:
            x = queue.popleft()
            for i in range(1, self.datum.rank + 1):
                y = x * self.simple(i)
                if y not in seen:
                    seen.add(y)
                    elements.append(y)
                    queue.append(y)
        self._elements = elements
        return elements

    def reduced_words(self, w: WeylElt) -> FrozenSet[Word]:
        cached = self._reduced_words.get(w)
        if cached is not None:
            return cached
        if w.is_identity:
            words = frozenset({()})
        else:
            words = frozenset(
                (i,) + rest
                for i in w.left_descents
                for rest in self.reduced_words(self.simple(i) * w)
            )
        self._reduced_words[w] = words
        return words

    def bruhat_leq(self, y: WeylElt, w: WeylElt) -> bool:
        """Subword property, through the lifting recursion on a right descent of w."""
        if y.length > w.length:
            return False
        if y.length == w.length:
            return y == w
        if y.is_identity:
            return True
        key = (y, w)
        cached = self._bruhat.get(key)
        if cached is not None:
            return cached
        s = self.simple(w.right_descents[0])
        ys = y * s
        # y <= w iff min(y, ys) <= ws
        result = self.bruhat_leq(ys if ys.length < y.length else y, w * s)
        self._bruhat[key] = result
        return result

    def dot_action(self, w: WeylElt, weight: Sequence[int]) -> Weight:
        """w . lambda = w(lambda + rho) - rho."""
        rho = self.datum.rho
        moved = w.act(tuple(a + b for a, b in zip(weight, rho)))
        return tuple(a - b for a, b in zip(moved, rho))

    def element_from_inversions(self, inversions: Iterable[Weight]) -> WeylElt:
        """
        The element whose inversion set {gamma > 0 : w(gamma) < 0} is the given set.

        Raises:
            ValueError: the set is not an inversion set.
        """
        target = frozenset(tuple(g) for g in inversions)
        remaining = set(target)
        letters = []
        while remaining:
            j = next((i for i, alpha in enumerate(self.datum.simple_roots, start=1) if alpha in remaining), None)
            if j is None:
                raise ValueError("set contains no simple root, so it is not an inversion set")
            remaining.discard(self.datum.simple_roots[j - 1])
            remaining = {self.datum.reflect(g, j) for g in remaining}
            letters.append(j)
        w = self.element_from_word(reversed(letters))
        positive = self.datum.positive_root_set
        if frozenset(g for g in self.datum.positive_roots if w.act(g) not in positive) != target:
            raise ValueError("set is not an inversion set")
        return w

    def braid_move_connected(self, w: WeylElt) -> bool:
        """Whether the reduced words of w form one class under braid moves."""
        words = self.reduced_words(w)
        start = min(words)
        seen = {start}
        stack = [start]
        r = self.datum.rank
        while stack:
            word = stack.pop()
            for i in range(1, r + 1):
                for j in range(1, r + 1):
                    if i == j:
                        continue
                    m = _braid_order(self.datum, i, j)
                    pattern = tuple(i if k % 2 == 0 else j for k in range(m))
                    swapped = tuple(j if k % 2 == 0 else i for k in range(m))
                    for p in range(len(word) - m + 1):
                        if word[p:p + m] == pattern:
                            moved = word[:p] + swapped + word[p + m:]
                            if moved not in seen:
                                seen.add(moved)
                                stack.append(moved)
        return seen == set(words)

    def braid_order(self, i: int, j: int) -> int:
        return _braid_order(self.datum, i, j)


class AffineWeylGroup:
    """
    The extended affine Weyl group W x X with simple reflections S_aff.

    Finite simple reflections carry labels 1..r; the affine reflection of
    component c carries the label 1 - c (0, -1, -2, ...).
    """

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.finite = weyl_group(datum)
        self._identity = AffWeylElt(self.finite.identity(), datum.zero)
        self._simple: Dict[int, AffWeylElt] = {}
        for i in range(1, datum.rank + 1):
            self._simple[i] = AffWeylElt(self.finite.simple(i), datum.zero)
        for component in range(1, len(datum.components) + 1):
            beta = datum.affine_root(component)
            self._simple[1 - component] = AffWeylElt(self.finite.reflection(beta), tuple(-c for c in beta))
        self._decompositions: Dict[AffWeylElt, Tuple[Tuple[int, ...], AffWeylElt]] = {}
        self._omega: Optional[List[AffWeylElt]] = None

    def identity(self) -> AffWeylElt:
        return self._identity

    def labels(self) -> List[int]:
        finite = list(range(1, self.datum.rank + 1))
        return finite + [1 - c for c in range(1, len(self.datum.components) + 1)]

    def simple(self, label: int) -> AffWeylElt:
        return self._simple[label]

    def simple_reflections(self) -> Dict[int, AffWeylElt]:
        return dict(self._simple)

    def affine_component(self, label: int) -> int:
        """Component number of an affine label (0 -> 1, -1 -> 2, ...)."""
        return 1 - label

    def translation(self, weight: Sequence[int]) -> AffWeylElt:
        return AffWeylElt(self.finite.identity(), tuple(weight))

    def from_finite(self, w: WeylElt) -> AffWeylElt:
        return AffWeylElt(w, self.datum.zero)

    def element_from_word(self, labels: Iterable[int]) -> AffWeylElt:
        a = self._identity
        for label in labels:
            a = a * self.simple(label)
        return a

    def from_json(self, payload: Dict) -> AffWeylElt:
        return AffWeylElt(self.finite.element_from_word(payload["fin"]), tuple(payload["trans"]))

    def left_descents(self, a: AffWeylElt) -> List[int]:
        return [label for label in self.labels() if (self.simple(label) * a).length < a.length]

    def reduced_decomposition(self, a: AffWeylElt) -> Tuple[Tuple[int, ...], AffWeylElt]:
        """Labels s_1..s_n and omega with a = s_1 ... s_n omega and n = l(a)."""
        cached = self._decompositions.get(a)
        if cached is not None:
            return cached
        letters = []
        rest = a
        while rest.length > 0:
            label = self.left_descents(rest)[0]
            letters.append(label)
            rest = self.simple(label) * rest
        result = (tuple(letters), rest)
        self._decompositions[a] = result
        return result

    def omega_elements(self) -> List[AffWeylElt]:
        """
        The length-zero subgroup, one element per class of X/ZR, identity first.

        For a sum of minuscule weights (at most one per component) the element is
        w * t_{-varpi}, where w has inversion set {gamma > 0 : <varpi, gamma^vee> = 1}.
        """
        if self._omega is not None:
            return self._omega
        datum = self.datum
        choices = [[datum.zero] + datum.minuscule_weights(c) for c in range(1, len(datum.components) + 1)]
        elements = []
        for combination in product(*choices):
            varpi = tuple(sum(parts) for parts in zip(*combination))
            inversions = [
                gamma for gamma, coroot in zip(datum.positive_roots, datum.positive_coroots)
                if sum(a * b for a, b in zip(varpi, coroot)) == 1
            ]
            w = self.finite.element_from_inversions(inversions)
            elements.append(AffWeylElt(w, tuple(-c for c in varpi)))
        self._omega = elements
        return elements

    def conjugate(self, omega: AffWeylElt, a: AffWeylElt) -> AffWeylElt:
        return omega * a * omega.inverse

    def cayley_distances(self, max_length: int) -> Dict[AffWeylElt, int]:
        """Breadth-first distances from the identity in the Cayley graph on S_aff."""
        distances = {self._identity: 0}
        frontier = [self._identity]
        for depth in range(1, max_length + 1):
            next_frontier = []
            for a in frontier:
                for label in self.labels():
                    b = a * self.simple(label)
                    if b not in distances:
                        distances[b] = depth
                        next_frontier.append(b)
            frontier = next_frontier
        return distances


@lru_cache(maxsize=None)
def weyl_group(datum: RootDatum) -> WeylGroup:
    return WeylGroup(datum)


@lru_cache(maxsize=None)
def affine_weyl_group(datum: RootDatum) -> AffineWeylGroup:
    return AffineWeylGroup(datum)


def enumerate_W(datum: RootDatum, max_order: Optional[int] = None) -> List[WeylElt]:
    return weyl_group(datum).enumerate(max_order)


def reduced_words(w: WeylElt) -> FrozenSet[Word]:
    return w.group.reduced_words(w)


def bruhat_leq(y: WeylElt, w: WeylElt) -> bool:
    if y.datum != w.datum:
        raise RootDatumMismatchError("Bruhat comparison across different root data")
    return w.group.bruhat_leq(y, w)


def aff_length(a: AffWeylElt) -> int:
    return a.length


def omega_elements(datum: RootDatum) -> List[AffWeylElt]:
    return affine_weyl_group(datum).omega_elements()


def dot_action(w: WeylElt, weight: Sequence[int]) -> Weight:
    return w.group.dot_action(w, weight)
