"""
Classes of the Steinberg kernels O_{Z_w}(x, y) as affine Hecke algebra elements.

The untwisted class of Z_w is (-v)^{l(w)} T_{w^-1}; twists multiply by theta
on the side their slot names, convolution is Hecke multiplication in the
configured factor order and the Borel-Moore side is the group algebra of W.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from rich.console import Console

from affhecke.config import conventions_header, get_convention_config
from affhecke.errors import NonReducedWordError, RootDatumMismatchError
from affhecke.hecke import HeckeElt, LaurentPoly, hecke_algebra
from affhecke.rootdata import RootDatum, Weight
from affhecke.utils.linalg import rational_rank
from affhecke.utils.verification import run_batch
from affhecke.weylgroups import WeylElt, affine_weyl_group, format_word, weyl_group


def sign_power(length: int, power: int = 1) -> LaurentPoly:
    """(-v)^length for power 1, (-v^-1)^length for power -1."""
    return LaurentPoly({power * length: (-1) ** length})


@dataclass(frozen=True, eq=False)
class KernelClass:
    w: WeylElt
    twist_left: Weight
    twist_right: Weight
    value: HeckeElt
    shift: int = 0

    @property
    def datum(self) -> RootDatum:
        return self.value.datum

    def to_json(self) -> Dict:
        return {
            "w": format_word(self.w.reduced_word),
            "twist": [list(self.twist_left), list(self.twist_right)],
            "shift": self.shift,
            "value": self.value.to_json(),
            "conventions": conventions_header(),
        }

    def __str__(self) -> str:
        return str(self.value)


@dataclass
class WordCheck:
    word: Tuple[int, ...]
    value: HeckeElt
    passed: bool

    def to_json(self) -> Dict:
        return {"word": format_word(self.word), "passed": self.passed, "value": self.value.to_json()}


@dataclass
class ConvolutionReport:
    w: WeylElt
    expected: HeckeElt
    order: str
    checks: List[WordCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_json(self) -> Dict:
        return {
            "w": format_word(self.w.reduced_word),
            "order": self.order,
            "expected": self.expected.to_json(),
            "words": [check.to_json() for check in self.checks],
            "passed": self.passed,
        }


@dataclass
class BasesRankReport:
    """Exact ranks of the two twisted families, each measured in Iwahori-Matsumoto coordinates."""

    type_name: str
    radius: int
    size: int
    rank_theta_left: int
    rank_theta_right: int
    points: Tuple[int, ...]

    @property
    def independent(self) -> bool:
        return self.rank_theta_left == self.size and self.rank_theta_right == self.size

    def to_json(self) -> Dict:
        return {
            "type": self.type_name,
            "radius": self.radius,
            "size": self.size,
            "rank_theta_left": self.rank_theta_left,
            "rank_theta_right": self.rank_theta_right,
            "points": list(self.points),
            "independent": self.independent,
        }


Operand = Union[KernelClass, HeckeElt]


class KernelCalculus:
    def __init__(
        self,
        datum: RootDatum,
        convolution_order: Optional[str] = None,
        twist_slots: Optional[str] = None,
        shift_v_power: Optional[int] = None,
    ):
        conventions = get_convention_config()
        self.datum = datum
        self.algebra = hecke_algebra(datum)
        self.group = weyl_group(datum)
        self.affine = affine_weyl_group(datum)
        self.convolution_order = convolution_order or conventions["convolution_order"]
        self.twist_slots = twist_slots or conventions["twist_slots"]
        self.shift_v_power = shift_v_power if shift_v_power is not None else conventions["shift_v_power"]

    def kernel_class(
        self,
        w: WeylElt,
        x: Optional[Sequence[int]] = None,
        y: Optional[Sequence[int]] = None,
        shift: int = 0,
    ) -> KernelClass:
        x = tuple(x) if x is not None else self.datum.zero
        y = tuple(y) if y is not None else self.datum.zero
        value = self.algebra.basis(self.affine.from_finite(w.inverse)) * sign_power(w.length)
        left, right = (x, y) if self.twist_slots == "direct" else (y, x)
        if any(left):
            value = self.algebra.theta(left) * value
        if any(right):
            value = value * self.algebra.theta(right)
        if shift:
            value = self.algebra.shift(value, shift, self.shift_v_power)
        return KernelClass(w, x, y, value, shift)

    def diagonal(self) -> KernelClass:
        return self.kernel_class(self.group.identity())

    def simple_class(self, i: int) -> KernelClass:
        return self.kernel_class(self.group.simple(i))

    def convolve(self, a: Operand, b: Operand) -> HeckeElt:
        left = a.value if isinstance(a, KernelClass) else a
        right = b.value if isinstance(b, KernelClass) else b
        if left.datum != self.datum or right.datum != self.datum:
            raise RootDatumMismatchError(f"convolution of classes over different root data ({self.datum.name})")
        if self.convolution_order == "exchanged":
            return right * left
        return left * right

    def convolve_word(self, word: Sequence[int]) -> HeckeElt:
        """O_{Z_{s_1}} * ... * O_{Z_{s_n}}, folded from the left."""
        return reduce(lambda acc, i: self.convolve(acc, self.simple_class(i)), word, self.algebra.one())

    def convolution_target(self, w: WeylElt) -> HeckeElt:
        """The class a reduced-word convolution must equal under the configured order."""
        if self.convolution_order == "exchanged":
            return self.kernel_class(w).value
        return self.kernel_class(w.inverse).value

    def verify_reduced_word_convolution(
        self,
        w: WeylElt,
        max_workers: Optional[int] = None,
        console: Optional[Console] = None,
        show_progress: bool = False,
    ) -> ConvolutionReport:
        expected = self.convolution_target(w)
        words = sorted(self.group.reduced_words(w))

        def check(word: Tuple[int, ...]) -> WordCheck:
            value = self.convolve_word(word)
            return WordCheck(word, value, value == expected)

        checks = run_batch(
            words,
            check,
            max_workers=max_workers,
            console=console,
            label=f"Convolving {len(words)} reduced words of {w}...",
            show_progress=show_progress,
        )
        return ConvolutionReport(w, expected, self.convolution_order, checks)

    # Borel-Moore side

    def bm_class(self, w: WeylElt) -> Dict[WeylElt, int]:
        return {w: 1}

    def bm_compose(self, a: Dict[WeylElt, int], b: Dict[WeylElt, int]) -> Dict[WeylElt, int]:
        out: Dict[WeylElt, int] = {}
        for x, c in a.items():
            for y, d in b.items():
                z = y * x if self.convolution_order == "exchanged" else x * y
                out[z] = out.get(z, 0) + c * d
        return {z: c for z, c in out.items() if c}

    def bm_word(self, word: Sequence[int]) -> Dict[WeylElt, int]:
        return reduce(
            lambda acc, i: self.bm_compose(acc, self.bm_class(self.group.simple(i))),
            word,
            self.bm_class(self.group.identity()),
        )

    def dictionary_coherence(self, w: WeylElt) -> bool:
        """specialize_v1((-v^-1)^{l(w)} [O_{Z_w}]) is the bm image of w^-1."""
        value = self.kernel_class(w).value * sign_power(w.length, -1)
        image = {self.affine.from_finite(u): c for u, c in self.bm_class(w.inverse).items()}
        return self.algebra.specialize_v1(value) == image

    # Standard bases

    def _twisted_class(self, w: WeylElt, x: Weight, theta_left: bool) -> HeckeElt:
        """theta_x (-v)^{l(w)} T_w or (-v)^{l(w)} T_w theta_x, as a kernel class of w^-1."""
        zero = self.datum.zero
        first_slot = theta_left == (self.twist_slots == "direct")
        twists = (x, zero) if first_slot else (zero, x)
        return self.kernel_class(w.inverse, *twists).value

    def _family_rows(self, elements: Sequence[WeylElt], weights: Sequence[Weight], theta_left: bool):
        return [dict(self._twisted_class(w, x, theta_left).terms) for w in elements for x in weights]

    def standard_bases_rank(
        self,
        elements: Optional[Iterable[WeylElt]] = None,
        radius: int = 2,
        points: Sequence[int] = (2, 3),
    ) -> BasesRankReport:
        """
        Ranks of {theta_x (-v)^{l(w)} T_w} and {(-v)^{l(w)} T_w theta_x} over Q(v).

        Both families are kernel classes expanded in the Iwahori-Matsumoto basis.
        The rank at a rational value of v bounds the generic rank from below, so
        the maximum over ``points`` is reported.
        """
        elements = list(elements) if elements is not None else self.group.enumerate()
        weights = list(self.datum.weight_box(radius))
        ranks = []
        for theta_left in (True, False):
            rows = self._family_rows(elements, weights, theta_left)
            columns: Dict = {}
            for row in rows:
                for key in row:
                    columns.setdefault(key, len(columns))
            best = 0
            for point in points:
                numeric = [{columns[key]: c.evaluate(Fraction(point)) for key, c in row.items()} for row in rows]
                best = max(best, rational_rank(numeric, len(columns)))
                if best == len(rows):
                    break
            ranks.append(best)
        return BasesRankReport(self.datum.name, radius, len(elements) * len(weights), ranks[0], ranks[1], tuple(points))


def element_from_reduced_word(datum: RootDatum, word: Sequence[int]) -> WeylElt:
    """
    The element of a word required to be reduced.

    Raises:
        NonReducedWordError: the word is longer than the element's length; carries a reduced word.
    """
    w = weyl_group(datum).element_from_word(word)
    if w.length < len(word):
        raise NonReducedWordError(
            f"{format_word(word)} is not reduced; it equals {format_word(w.reduced_word)}", w.reduced_word
        )
    return w


def kernel_class(w: WeylElt, x: Optional[Sequence[int]] = None, y: Optional[Sequence[int]] = None, shift: int = 0) -> KernelClass:
    return KernelCalculus(w.datum).kernel_class(w, x, y, shift)


def convolve(a: Operand, b: Operand) -> HeckeElt:
    datum = a.datum
    return KernelCalculus(datum).convolve(a, b)


def verify_reduced_word_convolution(w: WeylElt, **kwargs) -> ConvolutionReport:
    return KernelCalculus(w.datum).verify_reduced_word_convolution(w, **kwargs)


def bm_class(w: WeylElt) -> Dict[WeylElt, int]:
    return KernelCalculus(w.datum).bm_class(w)


def bm_compose(a: Dict[WeylElt, int], b: Dict[WeylElt, int]) -> Dict[WeylElt, int]:
    if not a or not b:
        return {}
    datum = next(iter(a)).datum
    return KernelCalculus(datum).bm_compose(a, b)
