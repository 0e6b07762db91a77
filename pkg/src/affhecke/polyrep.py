"""
The polynomial representation of the affine Hecke algebra on Z[v^{+-1}][X].

T_s acts by the Demazure-Lusztig operator

    T_s(e^x) = v e^{s x} + (v - v^-1) (e^x - e^{s x}) / (1 - e^{-alpha}),

normalized by T_s(1) = v, and theta_x acts by multiplication with e^x.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Union

from rich.console import Console

from affhecke.braidwords import BraidWord, RelationInstance, TLetter, ThetaLetter, lift_Tw, relation_instances
from affhecke.errors import RootDatumMismatchError
from affhecke.hecke import V, V_GAP, ZERO, HeckeElt, LaurentPoly, _accumulate
from affhecke.rootdata import RootDatum, Weight, conv_hull_weights
from affhecke.utils.verification import run_batch
from affhecke.weylgroups import WeylElt, affine_weyl_group


class CharFunc:
    """A finite sum of c_x(v) e^x."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Weight, LaurentPoly]] = None):
        self.terms: Dict[Weight, LaurentPoly] = {tuple(x): c for x, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, weight: Sequence[int], coeff: Union[int, LaurentPoly] = 1) -> "CharFunc":
        return cls({tuple(weight): LaurentPoly.coerce(coeff)})

    @classmethod
    def one(cls, rank: int) -> "CharFunc":
        return cls.monomial((0,) * rank)

    def __add__(self, other: "CharFunc") -> "CharFunc":
        out = dict(self.terms)
        for x, c in other.terms.items():
            _accumulate(out, x, c)
        return CharFunc(out)

    def __neg__(self) -> "CharFunc":
        return CharFunc({x: -c for x, c in self.terms.items()})

    def __sub__(self, other: "CharFunc") -> "CharFunc":
        return self + (-other)

    def __mul__(self, other: Union["CharFunc", int, LaurentPoly]) -> "CharFunc":
        if isinstance(other, CharFunc):
            out: Dict[Weight, LaurentPoly] = {}
            for x, c in self.terms.items():
                for y, d in other.terms.items():
                    _accumulate(out, tuple(a + b for a, b in zip(x, y)), c * d)
            return CharFunc(out)
        if isinstance(other, (int, LaurentPoly)):
            return CharFunc({x: c * other for x, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other: Union[int, LaurentPoly]) -> "CharFunc":
        if isinstance(other, (int, LaurentPoly)):
            return CharFunc({x: c * other for x, c in self.terms.items()})
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, CharFunc):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, weight: Sequence[int]) -> LaurentPoly:
        return self.terms.get(tuple(weight), ZERO)

    def support(self) -> FrozenSet[Weight]:
        return frozenset(self.terms)

    def weyl_act(self, w: WeylElt) -> "CharFunc":
        """w(e^x) = e^{w(x)}."""
        return CharFunc({w.act(x): c for x, c in self.terms.items()})

    def drop(self, weights: Iterable[Weight]) -> "CharFunc":
        """The class modulo the span of the given monomials."""
        excluded = set(weights)
        return CharFunc({x: c for x, c in self.terms.items() if x not in excluded})

    def to_json(self) -> Dict:
        return {"terms": [{"x": list(x), "c": c.to_json()} for x, c in sorted(self.terms.items())]}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c.format()})*e^(" + ",".join(str(a) for a in x) + ")" for x, c in sorted(self.terms.items())
        )

    __repr__ = __str__


@dataclass
class InstanceResult:
    tag: str
    relation: str
    passed: bool
    counterexample: Optional[Dict] = None

    def to_json(self) -> Dict:
        payload = {"tag": self.tag, "relation": self.relation, "passed": self.passed}
        if self.counterexample is not None:
            payload["counterexample"] = self.counterexample
        return payload


@dataclass
class PresentationReport:
    type_name: str
    box_radius: int
    monomial_radius: int
    results: List[InstanceResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> List[InstanceResult]:
        return [result for result in self.results if not result.passed]

    def counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for result in self.results:
            counts[result.tag] = counts.get(result.tag, 0) + 1
        return counts

    def to_json(self) -> Dict:
        return {
            "type": self.type_name,
            "box_radius": self.box_radius,
            "monomial_radius": self.monomial_radius,
            "passed": self.passed,
            "instances": self.counts(),
            "failures": [result.to_json() for result in self.failures],
        }


@dataclass
class LineBundleShadow:
    """
    Image of e^lambda under T_s (or T_s^-1 when <lambda, alpha^vee> > 0), with its
    class modulo the monomials of conv0(lambda).
    """

    weight: Weight
    index: int
    pairing: int
    operator: str
    image: CharFunc
    residual: CharFunc
    t_residual: CharFunc
    support_in_conv: bool
    target: Weight

    @property
    def leading(self) -> Optional[LaurentPoly]:
        """The coefficient of e^target when the residual is that single monomial term."""
        if set(self.residual.terms) == {self.target}:
            coeff = self.residual.terms[self.target]
            if coeff.is_monomial():
                return coeff
        return None

    @property
    def single_monomial(self) -> bool:
        return self.leading is not None

    def to_json(self) -> Dict:
        leading = self.leading
        return {
            "weight": list(self.weight),
            "index": self.index,
            "pairing": self.pairing,
            "operator": self.operator,
            "support_in_conv": self.support_in_conv,
            "single_monomial": self.single_monomial,
            "leading": leading.format() if leading is not None else None,
            "t_residual": self.t_residual.to_json(),
        }


class PolynomialRepresentation:
    """Demazure-Lusztig action of one root datum's affine Hecke algebra."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.group = affine_weyl_group(datum)

    def dl_Ts(self, i: int, f: CharFunc) -> CharFunc:
        out: Dict[Weight, LaurentPoly] = {}
        for x, c in f.terms.items():
            _accumulate(out, self.datum.reflect(x, i), c * V)
            for g, sign in self.datum.divided_difference_terms(x, i):
                _accumulate(out, g, c * V_GAP * sign)
        return CharFunc(out)

    def dl_Ts_inverse(self, i: int, f: CharFunc) -> CharFunc:
        """T_s^-1 = T_s - (v - v^-1)."""
        return self.dl_Ts(i, f) - f * V_GAP

    def theta_mult(self, weight: Sequence[int], f: CharFunc) -> CharFunc:
        return theta_mult(weight, f)

    def apply_letter(self, letter, f: CharFunc) -> CharFunc:
        if isinstance(letter, ThetaLetter):
            return self.theta_mult(letter.weight, f)
        if letter.index <= 0:
            # affine reflections act through their Bernstein word
            word = lift_Tw(self.group.simple(letter.index))
            return self.act(word if letter.exp == 1 else ~word, f)
        if letter.exp == 1:
            return self.dl_Ts(letter.index, f)
        return self.dl_Ts_inverse(letter.index, f)

    def act(self, h: Union[HeckeElt, BraidWord], f: CharFunc) -> CharFunc:
        """Action of a braid word (rightmost letter first) or of a Hecke element."""
        if isinstance(h, BraidWord):
            for letter in reversed(h.letters):
                f = self.apply_letter(letter, f)
            return f
        if h.datum != self.datum:
            raise RootDatumMismatchError(f"Hecke element over {h.datum.name} acting on {self.datum.name}")
        result = CharFunc()
        for a, c in h.terms.items():
            result = result + self.act(lift_Tw(a), f) * c
        return result

    def act_label(self, label: int, f: CharFunc) -> CharFunc:
        return self.apply_letter(TLetter(label), f)

    def quadratic_defect(self, label: int, f: CharFunc) -> CharFunc:
        """(T_s + v^-1)(T_s - v) f = T_s^2 f + (v^-1 - v) T_s f - f; zero when the relation holds."""
        tf = self.act_label(label, f)
        return self.act_label(label, tf) - tf * V_GAP - f

    def check_instance(self, instance: RelationInstance, monomials: Sequence[Weight]) -> InstanceResult:
        for mu in monomials:
            f = CharFunc.monomial(mu)
            left = self.act(instance.lhs, f)
            right = self.act(instance.rhs, f)
            if left != right:
                return InstanceResult(
                    instance.tag,
                    str(instance),
                    False,
                    {"monomial": list(mu), "lhs": left.to_json(), "rhs": right.to_json()},
                )
        return InstanceResult(instance.tag, str(instance), True)

    def verify_presentation(
        self,
        box_radius: int,
        monomial_radius: Optional[int] = None,
        max_workers: Optional[int] = None,
        console: Optional[Console] = None,
        show_progress: bool = False,
    ) -> PresentationReport:
        """
        Check every relation instance with weights in the box on every monomial
        e^mu with |<mu, alpha_i^vee>| <= monomial_radius (default box_radius + 1).
        """
        monomial_radius = monomial_radius if monomial_radius is not None else box_radius + 1
        instances = relation_instances(self.datum, box_radius)
        monomials = list(self.datum.weight_box(monomial_radius))
        results = run_batch(
            instances,
            lambda instance: self.check_instance(instance, monomials),
            max_workers=max_workers,
            console=console,
            label=f"Checking {len(instances)} relations on {self.datum.name}...",
            show_progress=show_progress,
        )
        return PresentationReport(self.datum.name, box_radius, monomial_radius, results)

    def line_bundle_shadow(self, i: int, weight: Sequence[int]) -> LineBundleShadow:
        weight = tuple(weight)
        conv, conv0 = conv_hull_weights(self.datum, weight)
        n = weight[i - 1]
        f = CharFunc.monomial(weight)
        t_image = self.dl_Ts(i, f)
        if n > 0:
            operator, image = "T^-1", self.dl_Ts_inverse(i, f)
        else:
            operator, image = "T", t_image
        return LineBundleShadow(
            weight=weight,
            index=i,
            pairing=n,
            operator=operator,
            image=image,
            residual=image.drop(conv0),
            t_residual=t_image.drop(conv0),
            support_in_conv=t_image.support() <= conv and image.support() <= conv,
            target=self.datum.reflect(weight, i),
        )


@lru_cache(maxsize=None)
def polynomial_representation(datum: RootDatum) -> PolynomialRepresentation:
    return PolynomialRepresentation(datum)


def dl_Ts(datum: RootDatum, i: int, f: CharFunc) -> CharFunc:
    return polynomial_representation(datum).dl_Ts(i, f)


def theta_mult(weight: Sequence[int], f: CharFunc) -> CharFunc:
    return CharFunc({tuple(a + b for a, b in zip(x, weight)): c for x, c in f.terms.items()})


def act(datum: RootDatum, h: Union[HeckeElt, BraidWord], f: CharFunc) -> CharFunc:
    return polynomial_representation(datum).act(h, f)


def verify_presentation(datum: RootDatum, box_radius: int, **kwargs) -> PresentationReport:
    return polynomial_representation(datum).verify_presentation(box_radius, **kwargs)
