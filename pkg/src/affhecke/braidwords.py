"""
Words in the extended affine braid group under the Bernstein presentation.

The alphabet is ``T_s^{+-1}`` for finite simple reflections and ``theta_x`` for
weights x. Braid group elements are handled as words only; equality is
checked after evaluation in the Hecke algebra or the polynomial representation.
"""

import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple, Union

from affhecke.errors import InputParseError
from affhecke.rootdata import RootDatum, Weight
from affhecke.weylgroups import AffWeylElt, affine_weyl_group

TAGS = ("i", "ii", "iii", "iv")


@dataclass(frozen=True)
class TLetter:
    index: int
    exp: int = 1

    def inverse(self) -> "TLetter":
        return TLetter(self.index, -self.exp)

    def to_json(self) -> Dict[str, int]:
        return {"T": self.index, "e": self.exp}

    def __str__(self) -> str:
        return f"T{self.index}" if self.exp == 1 else f"T{self.index}^-1"


@dataclass(frozen=True)
class ThetaLetter:
    weight: Weight

    def inverse(self) -> "ThetaLetter":
        return ThetaLetter(tuple(-c for c in self.weight))

    def to_json(self) -> Dict[str, List[int]]:
        return {"theta": list(self.weight)}

    def __str__(self) -> str:
        return "th(" + ",".join(str(c) for c in self.weight) + ")"


Letter = Union[TLetter, ThetaLetter]


@dataclass(frozen=True)
class BraidWord:
    letters: Tuple[Letter, ...] = ()

    def __add__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.letters + other.letters)

    def __invert__(self) -> "BraidWord":
        return BraidWord(tuple(letter.inverse() for letter in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def reduced(self) -> "BraidWord":
        """Cancel adjacent ``T_s^e T_s^-e`` pairs."""
        stack: List[Letter] = []
        for letter in self.letters:
            if (
                stack
                and isinstance(letter, TLetter)
                and isinstance(stack[-1], TLetter)
                and stack[-1].index == letter.index
                and stack[-1].exp == -letter.exp
            ):
                stack.pop()
            else:
                stack.append(letter)
        return BraidWord(tuple(stack))

    def to_json(self) -> List[Dict]:
        return [letter.to_json() for letter in self.letters]

    @classmethod
    def from_json(cls, payload: Sequence[Dict]) -> "BraidWord":
        letters: List[Letter] = []
        for token in payload:
            if "T" in token:
                letters.append(TLetter(int(token["T"]), int(token.get("e", 1))))
            elif "theta" in token:
                letters.append(ThetaLetter(tuple(int(c) for c in token["theta"])))
            else:
                raise InputParseError(f"unknown braid token {token!r}")
        return cls(tuple(letters))

    def __str__(self) -> str:
        return " ".join(str(letter) for letter in self.letters) if self.letters else "1"


@dataclass(frozen=True)
class RelationInstance:
    lhs: BraidWord
    rhs: BraidWord
    tag: str

    def __str__(self) -> str:
        return f"({self.tag}) {self.lhs} = {self.rhs}"


def t_word(word: Sequence[int], exp: int = 1) -> BraidWord:
    """T_{s_1}...T_{s_n}, or its inverse T_{s_n}^-1...T_{s_1}^-1 for exp = -1."""
    if exp == 1:
        return BraidWord(tuple(TLetter(i) for i in word))
    return BraidWord(tuple(TLetter(i, -1) for i in reversed(word)))


_LIFT_CACHE: Dict[Tuple, BraidWord] = {}


def lift_Tw(a: AffWeylElt) -> BraidWord:
    """
    The section w -> T_w as a Bernstein word.

    With a = s_1 ... s_n omega reduced, finite letters map to T_s, the affine
    reflection of a component to theta_beta T_{s_beta}^-1 and omega to
    T_{fin(omega)} theta_{trans(omega)}.
    """
    datum = a.datum
    key = (datum.cartan, a)
    cached = _LIFT_CACHE.get(key)
    if cached is not None:
        return cached
    group = affine_weyl_group(datum)
    labels, omega = group.reduced_decomposition(a)
    word = BraidWord()
    for label in labels:
        if label > 0:
            word = word + BraidWord((TLetter(label),))
        else:
            beta = datum.affine_root(group.affine_component(label))
            s_beta = group.finite.reflection(beta)
            word = word + BraidWord((ThetaLetter(beta),)) + t_word(s_beta.reduced_word, -1)
    if not omega.is_identity:
        word = word + t_word(omega.fin.reduced_word)
        if any(omega.trans):
            word = word + BraidWord((ThetaLetter(omega.trans),))
    word = word.reduced()
    _LIFT_CACHE[key] = word
    return word


def bernstein_theta(datum: RootDatum, weight: Sequence[int]) -> BraidWord:
    """theta_x as lift(t_y) lift(t_z)^-1 with x = y - z and y, z dominant."""
    group = affine_weyl_group(datum)
    y = tuple(max(c, 0) for c in weight)
    z = tuple(max(-c, 0) for c in weight)
    return (lift_Tw(group.translation(y)) + ~lift_Tw(group.translation(z))).reduced()


def project_to_Waff(word: BraidWord, datum: RootDatum) -> AffWeylElt:
    """The monoid morphism T_s^{+-1} -> s, theta_x -> t_x."""
    group = affine_weyl_group(datum)
    a = group.identity()
    for letter in word:
        if isinstance(letter, TLetter):
            a = a * group.simple(letter.index)
        else:
            a = a * group.translation(letter.weight)
    return a


def relation_instances(datum: RootDatum, weight_box_radius: int) -> List[RelationInstance]:
    """
    Instances of the Bernstein relations with weights in the box
    ``|<x, alpha_i^vee>| <= radius``:

    (i) finite braid relations, (ii) theta_x theta_y = theta_{x+y},
    (iii) T_s theta_x = theta_x T_s when s(x) = x,
    (iv) theta_x = T_s theta_{x - alpha} T_s when s(x) = x - alpha.
    """
    if weight_box_radius < 1:
        raise ValueError("weight box radius must be at least 1")
    r = datum.rank
    group = affine_weyl_group(datum).finite
    instances: List[RelationInstance] = []
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            m = group.braid_order(i, j)
            lhs = t_word([i if k % 2 == 0 else j for k in range(m)])
            rhs = t_word([j if k % 2 == 0 else i for k in range(m)])
            instances.append(RelationInstance(lhs, rhs, "i"))
    box = list(datum.weight_box(weight_box_radius))
    for x in box:
        for y in box:
            total = tuple(a + b for a, b in zip(x, y))
            instances.append(RelationInstance(
                BraidWord((ThetaLetter(x), ThetaLetter(y))), BraidWord((ThetaLetter(total),)), "ii"
            ))
    for i in range(1, r + 1):
        alpha = datum.simple_roots[i - 1]
        for x in box:
            if x[i - 1] == 0:
                instances.append(RelationInstance(
                    BraidWord((TLetter(i), ThetaLetter(x))), BraidWord((ThetaLetter(x), TLetter(i))), "iii"
                ))
            elif x[i - 1] == 1:
                shifted = tuple(a - b for a, b in zip(x, alpha))
                instances.append(RelationInstance(
                    BraidWord((ThetaLetter(x),)),
                    BraidWord((TLetter(i), ThetaLetter(shifted), TLetter(i))),
                    "iv",
                ))
    return instances


_LABEL_PATTERN = re.compile(r"-?\d+")


def parse_word(text: str) -> Tuple[int, ...]:
    """Parse ``"s1 s2 s1"``, ``"s2s1s3s2"``, ``"1 2 1"`` or ``"e"`` into simple labels."""
    cleaned = text.strip()
    if cleaned in ("", "e"):
        return ()
    if not re.fullmatch(r"(\s*s?\s*-?\d+\s*,?)+", cleaned):
        raise InputParseError(f"cannot parse word {text!r}; expected letters like 's1 s2' or '1 2'")
    return tuple(int(token) for token in _LABEL_PATTERN.findall(cleaned))
