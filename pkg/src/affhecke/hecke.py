"""
The extended affine Hecke algebra in the Iwahori-Matsumoto basis.

Coefficients live in Z[v, v^-1]; the quadratic relation is
``(T_s + v^-1)(T_s - v) = 0``, so ``T_s^2 = 1 + (v - v^-1) T_s``.
"""

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from affhecke.braidwords import BraidWord, TLetter, ThetaLetter, lift_Tw
from affhecke.config import get_bounds_config, get_convention_config
from affhecke.errors import BasisWindowError, RootDatumMismatchError
from affhecke.rootdata import RootDatum, Weight
from affhecke.weylgroups import AffWeylElt, WeylElt, affine_weyl_group

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """An integer Laurent polynomial in one variable, stored as exponent -> coefficient."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None):
        self._coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 0) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def coerce(cls, value: Scalar) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        return cls({0: value})

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other: Scalar) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._coeffs.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: Dict[int, int] = defaultdict(int)
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] += c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are defined only for monomials; use shift()")
        result = LaurentPoly({0: 1})
        for _ in range(n):
            result = result * self
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by the k-th power of the variable."""
        return LaurentPoly({e + k: c for e, c in self._coeffs.items()})

    def bar(self) -> "LaurentPoly":
        """The involution v -> v^-1."""
        return LaurentPoly({-e: c for e, c in self._coeffs.items()})

    def evaluate(self, value: Union[int, Fraction]) -> Union[int, Fraction]:
        total = Fraction(0)
        for e, c in self._coeffs.items():
            total += c * Fraction(value) ** e
        return int(total) if total.denominator == 1 else total

    def degree(self) -> int:
        return max(self._coeffs) if self._coeffs else float("-inf")

    def valuation(self) -> int:
        return min(self._coeffs) if self._coeffs else float("inf")

    def coefficient(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def is_monomial(self) -> bool:
        return len(self._coeffs) == 1

    def format(self, var: str = "v") -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in self.items():
            if e == 0:
                term = str(c)
            else:
                power = var if e == 1 else f"{var}^{e}"
                term = power if c == 1 else f"-{power}" if c == -1 else f"{c}{power}"
            parts.append(term if not parts or term.startswith("-") else f"+{term}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.format()})"

    def to_json(self) -> Dict[str, int]:
        return {str(e): c for e, c in self.items()}

    @classmethod
    def from_json(cls, payload: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in payload.items()})


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
V = LaurentPoly({1: 1})
V_INV = LaurentPoly({-1: 1})
# v - v^-1
V_GAP = LaurentPoly({1: 1, -1: -1})


def _accumulate(target: Dict, key, coeff: LaurentPoly) -> None:
    total = target.get(key, ZERO) + coeff
    if total:
        target[key] = total
    else:
        target.pop(key, None)


class HeckeElt:
    """A finite combination of Iwahori-Matsumoto basis elements T_a."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: Optional[Mapping[AffWeylElt, LaurentPoly]] = None):
        self.algebra = algebra
        self.terms: Dict[AffWeylElt, LaurentPoly] = {a: c for a, c in (terms or {}).items() if c}

    @property
    def datum(self) -> RootDatum:
        return self.algebra.datum

    def _check(self, other: "HeckeElt") -> None:
        if other.datum != self.datum:
            raise RootDatumMismatchError(
                f"Hecke elements over {self.datum.name} and {other.datum.name} cannot be combined"
            )

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        self._check(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            _accumulate(out, a, c)
        return HeckeElt(self.algebra, out)

    def __neg__(self) -> "HeckeElt":
        return HeckeElt(self.algebra, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + (-other)

    def __mul__(self, other: Union["HeckeElt", Scalar]) -> "HeckeElt":
        if isinstance(other, HeckeElt):
            return self.algebra.mul(self, other)
        if isinstance(other, (int, LaurentPoly)):
            return HeckeElt(self.algebra, {a: c * other for a, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other: Scalar) -> "HeckeElt":
        if isinstance(other, (int, LaurentPoly)):
            return HeckeElt(self.algebra, {a: c * other for a, c in self.terms.items()})
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.datum == other.datum and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, a: AffWeylElt) -> LaurentPoly:
        return self.terms.get(a, ZERO)

    def sorted_terms(self):
        """Terms ordered by length, then by the printed element."""
        return sorted(self.terms.items(), key=lambda item: (item[0].length, str(item[0])))

    def to_json(self) -> Dict:
        return {"terms": [{"w": a.to_json(), "c": c.to_json()} for a, c in self.sorted_terms()]}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c.format()})*T[{a}]" for a, c in self.sorted_terms())

    __repr__ = __str__


StandardCoords = Dict[Tuple[WeylElt, Weight], LaurentPoly]


class HeckeAlgebra:
    """Iwahori-Matsumoto arithmetic over one root datum, with write-once memo tables."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.group = affine_weyl_group(datum)
        self._products: Dict[Tuple[AffWeylElt, AffWeylElt], Dict[AffWeylElt, LaurentPoly]] = {}
        self._inverses: Dict[AffWeylElt, Dict[AffWeylElt, LaurentPoly]] = {}
        self._thetas: Dict[Weight, HeckeElt] = {}

    def one(self) -> HeckeElt:
        return HeckeElt(self, {self.group.identity(): ONE})

    def zero(self) -> HeckeElt:
        return HeckeElt(self)

    def basis(self, a: AffWeylElt) -> HeckeElt:
        return HeckeElt(self, {a: ONE})

    def T(self, label: int) -> HeckeElt:
        return self.basis(self.group.simple(label))

    def scalar(self, coeff: Scalar) -> HeckeElt:
        return HeckeElt(self, {self.group.identity(): LaurentPoly.coerce(coeff)})

    def _left_mul_simple(self, label: int, terms: Mapping[AffWeylElt, LaurentPoly]) -> Dict[AffWeylElt, LaurentPoly]:
        s = self.group.simple(label)
        out: Dict[AffWeylElt, LaurentPoly] = {}
        for b, c in terms.items():
            sb = s * b
            _accumulate(out, sb, c)
            if sb.length < b.length:
                _accumulate(out, b, c * V_GAP)
        return out

    def _right_mul_simple(self, terms: Mapping[AffWeylElt, LaurentPoly], label: int, exp: int = 1) -> Dict[AffWeylElt, LaurentPoly]:
        s = self.group.simple(label)
        out: Dict[AffWeylElt, LaurentPoly] = {}
        for b, c in terms.items():
            bs = b * s
            _accumulate(out, bs, c)
            if bs.length < b.length:
                _accumulate(out, b, c * V_GAP)
            if exp == -1:
                # T_s^-1 = T_s - (v - v^-1)
                _accumulate(out, b, -(c * V_GAP))
        return out

    def basis_product(self, a: AffWeylElt, b: AffWeylElt) -> Dict[AffWeylElt, LaurentPoly]:
        """T_a T_b, peeling a = s_1 ... s_n omega from the left."""
        key = (a, b)
        cached = self._products.get(key)
        if cached is not None:
            return cached
        labels, omega = self.group.reduced_decomposition(a)
        terms: Dict[AffWeylElt, LaurentPoly] = {omega * b: ONE}
        for label in reversed(labels):
            terms = self._left_mul_simple(label, terms)
        self._products[key] = terms
        return terms

    def mul(self, x: HeckeElt, y: HeckeElt) -> HeckeElt:
        x._check(y)
        out: Dict[AffWeylElt, LaurentPoly] = {}
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                coeff = ca * cb
                for d, cd in self.basis_product(a, b).items():
                    _accumulate(out, d, coeff * cd)
        return HeckeElt(self, out)

    def inverse_simple(self, label: int) -> HeckeElt:
        """T_s^-1 = T_s - (v - v^-1)."""
        return self.T(label) - self.scalar(V_GAP)

    def inverse_basis(self, a: AffWeylElt) -> HeckeElt:
        """T_a^-1 = T_{omega^-1} T_{s_n}^-1 ... T_{s_1}^-1 for a = s_1 ... s_n omega."""
        cached = self._inverses.get(a)
        if cached is None:
            labels, omega = self.group.reduced_decomposition(a)
            cached = {omega.inverse: ONE}
            for label in reversed(labels):
                cached = self._right_mul_simple(cached, label, -1)
            self._inverses[a] = cached
        return HeckeElt(self, cached)

    def theta(self, weight: Sequence[int]) -> HeckeElt:
        """theta_x = T_{t_y} T_{t_z}^-1 for x = y - z with y, z dominant."""
        weight = tuple(weight)
        cached = self._thetas.get(weight)
        if cached is not None:
            return cached
        y = tuple(max(c, 0) for c in weight)
        z = tuple(max(-c, 0) for c in weight)
        result = self.basis(self.group.translation(y))
        if any(z):
            result = result * self.inverse_basis(self.group.translation(z))
        self._thetas[weight] = result
        return result

    def eval_word(self, word: BraidWord) -> HeckeElt:
        terms: Dict[AffWeylElt, LaurentPoly] = {self.group.identity(): ONE}
        for letter in word:
            if isinstance(letter, TLetter):
                terms = self._right_mul_simple(terms, letter.index, letter.exp)
            else:
                terms = (HeckeElt(self, terms) * self.theta(letter.weight)).terms
        return HeckeElt(self, terms)

    def specialize_v1(self, h: HeckeElt) -> Dict[AffWeylElt, int]:
        out = {}
        for a, c in h.terms.items():
            value = c.evaluate(1)
            if value:
                out[a] = value
        return out

    def shift(self, h: HeckeElt, j: int, power: Optional[int] = None) -> HeckeElt:
        """The grading shift <j>, sent to v^(power * j) by the configured dictionary."""
        k = power if power is not None else get_convention_config()["shift_v_power"]
        return HeckeElt(self, {a: c.shift(k * j) for a, c in h.terms.items()})

    # Standard bases: sum c T_w theta_x (left) and sum c theta_x T_w (right)

    def _window_check(self, x: Weight, window: int) -> None:
        if any(abs(c) > window for c in x):
            raise BasisWindowError(f"weight {x} leaves the standard-basis window of radius {window}")

    def _append_letter(self, nf: StandardCoords, letter, window: int) -> StandardCoords:
        """Right-multiply a left normal form by one letter."""
        out: StandardCoords = {}
        finite = self.group.finite
        for (w, x), c in nf.items():
            if isinstance(letter, ThetaLetter):
                moved = tuple(a + b for a, b in zip(x, letter.weight))
                self._window_check(moved, window)
                _accumulate(out, (w, moved), c)
                continue
            i = letter.index
            # T_w theta_x T_s = T_w T_s theta_{sx} + (v - v^-1) T_w G(x)
            sx = self.datum.reflect(x, i)
            self._window_check(sx, window)
            ws = w * finite.simple(i)
            _accumulate(out, (ws, sx), c)
            if ws.length < w.length:
                _accumulate(out, (w, sx), c * V_GAP)
            for g, sign in self.datum.divided_difference_terms(x, i):
                self._window_check(g, window)
                _accumulate(out, (w, g), c * V_GAP * sign)
            if letter.exp == -1:
                _accumulate(out, (w, x), -(c * V_GAP))
        return out

    def _prepend_letter(self, letter, nf: StandardCoords, window: int) -> StandardCoords:
        """Left-multiply a right normal form by one letter."""
        out: StandardCoords = {}
        finite = self.group.finite
        for (w, x), c in nf.items():
            if isinstance(letter, ThetaLetter):
                moved = tuple(a + b for a, b in zip(x, letter.weight))
                self._window_check(moved, window)
                _accumulate(out, (w, moved), c)
                continue
            i = letter.index
            # T_s theta_x T_w = theta_{sx} T_s T_w + (v - v^-1) G(x) T_w
            sx = self.datum.reflect(x, i)
            self._window_check(sx, window)
            sw = finite.simple(i) * w
            _accumulate(out, (sw, sx), c)
            if sw.length < w.length:
                _accumulate(out, (w, sx), c * V_GAP)
            for g, sign in self.datum.divided_difference_terms(x, i):
                self._window_check(g, window)
                _accumulate(out, (w, g), c * V_GAP * sign)
            if letter.exp == -1:
                _accumulate(out, (w, x), -(c * V_GAP))
        return out

    def normal_form(self, word: BraidWord, side: str = "left", window: Optional[int] = None) -> StandardCoords:
        window = window if window is not None else get_bounds_config()["basis_window"]
        start: StandardCoords = {(self.group.finite.identity(), self.datum.zero): ONE}
        if side == "left":
            nf = start
            for letter in word:
                nf = self._append_letter(nf, letter, window)
            return nf
        if side == "right":
            nf = start
            for letter in reversed(word.letters):
                nf = self._prepend_letter(letter, nf, window)
            return nf
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def to_standard_basis(self, h: HeckeElt, side: str = "left", window: Optional[int] = None) -> StandardCoords:
        """
        Coordinates of h in {T_w theta_x} (left) or {theta_x T_w} (right).

        Raises:
            BasisWindowError: a weight with |<x, alpha_i^vee>| above the window appears.
        """
        out: StandardCoords = {}
        for a, c in h.terms.items():
            for key, d in self.normal_form(lift_Tw(a), side, window).items():
                _accumulate(out, key, c * d)
        return out

    def from_standard_basis(self, coords: Mapping[Tuple[WeylElt, Weight], LaurentPoly], side: str = "left") -> HeckeElt:
        result = self.zero()
        for (w, x), c in coords.items():
            t_w = self.basis(self.group.from_finite(w))
            product = t_w * self.theta(x) if side == "left" else self.theta(x) * t_w
            result = result + product * c
        return result


@lru_cache(maxsize=None)
def hecke_algebra(datum: RootDatum) -> HeckeAlgebra:
    return HeckeAlgebra(datum)


def hecke_mul(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    return a.algebra.mul(a, b)


def hecke_inv_Ts(datum: RootDatum, label: int) -> HeckeElt:
    return hecke_algebra(datum).inverse_simple(label)


def eval_word(datum: RootDatum, word: BraidWord) -> HeckeElt:
    return hecke_algebra(datum).eval_word(word)


def theta_elt(datum: RootDatum, weight: Sequence[int]) -> HeckeElt:
    return hecke_algebra(datum).theta(weight)


def to_standard_basis(h: HeckeElt, side: str = "left", window: Optional[int] = None) -> StandardCoords:
    return h.algebra.to_standard_basis(h, side, window)


def from_standard_basis(datum: RootDatum, coords: Mapping[Tuple[WeylElt, Weight], LaurentPoly], side: str = "left") -> HeckeElt:
    return hecke_algebra(datum).from_standard_basis(coords, side)


def specialize_v1(h: HeckeElt) -> Dict[AffWeylElt, int]:
    return h.algebra.specialize_v1(h)


def standard_coords_to_json(coords: StandardCoords) -> list:
    rows = sorted(coords.items(), key=lambda item: (item[0][0].length, str(item[0][0]), item[0][1]))
    return [{"w": w.to_json(), "x": list(x), "c": c.to_json()} for (w, x), c in rows]
