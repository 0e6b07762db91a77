"""
Koszul homology of polynomial sequences by exact linear algebra on monomial bases.

Everything is computed one internal degree at a time: the Koszul complex of
f_1..f_c restricted to a degree is a complex of finite-dimensional Q-vector
spaces, and its homology dimensions follow from matrix ranks. Variables may
carry positive integer weights; a generator list homogeneous for those
weights gives the graded complex, anything else falls back to the
total-degree truncation K_{<=d}.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from rich.console import Console

from affhecke.config import get_bounds_config
from affhecke.errors import (
    DimensionMismatchError,
    HomogeneityError,
    InputParseError,
    KoszulInputError,
    KoszulSizeError,
)
from affhecke.utils.linalg import rational_rank
from affhecke.utils.verification import run_batch

Exponent = Tuple[int, ...]
Coefficient = Union[int, Fraction]

TRUNCATION_CAVEAT = (
    "inhomogeneous generators: homology of the total-degree truncation K_{<=d}; "
    "vanishing is certified only inside the window"
)


class QPoly:
    """A polynomial with rational coefficients in n weighted variables."""

    __slots__ = ("n", "weights", "terms")

    def __init__(self, n: int, terms: Optional[Mapping[Exponent, Coefficient]] = None, weights: Optional[Sequence[int]] = None):
        self.n = n
        self.weights = tuple(weights) if weights is not None else (1,) * n
        if len(self.weights) != n or any(w <= 0 for w in self.weights):
            raise DimensionMismatchError(f"need {n} positive variable weights, got {self.weights}")
        self.terms: Dict[Exponent, Fraction] = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n:
                raise DimensionMismatchError(f"exponent {m} does not have {n} entries")
            if c:
                self.terms[m] = Fraction(c)

    @classmethod
    def variable(cls, n: int, i: int, weights: Optional[Sequence[int]] = None) -> "QPoly":
        """The i-th variable, 0-based."""
        return cls(n, {tuple(1 if k == i else 0 for k in range(n)): 1}, weights)

    @classmethod
    def constant(cls, n: int, c: Coefficient, weights: Optional[Sequence[int]] = None) -> "QPoly":
        return cls(n, {(0,) * n: c}, weights)

    def _coerce(self, other: Union["QPoly", Coefficient]) -> "QPoly":
        if isinstance(other, QPoly):
            if other.n != self.n or other.weights != self.weights:
                raise DimensionMismatchError("polynomials live in different rings")
            return other
        return QPoly.constant(self.n, other, self.weights)

    def __add__(self, other: Union["QPoly", Coefficient]) -> "QPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return QPoly(self.n, out, self.weights)

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(self.n, {m: -c for m, c in self.terms.items()}, self.weights)

    def __sub__(self, other: Union["QPoly", Coefficient]) -> "QPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Coefficient) -> "QPoly":
        return self._coerce(other) - self

    def __mul__(self, other: Union["QPoly", Coefficient]) -> "QPoly":
        other = self._coerce(other)
        out: Dict[Exponent, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return QPoly(self.n, out, self.weights)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPoly":
        result = QPoly.constant(self.n, 1, self.weights)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.n == other.n and self.weights == other.weights and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def monomial_degree(self, m: Exponent) -> int:
        return sum(e * w for e, w in zip(m, self.weights))

    @property
    def degree(self) -> int:
        """Weighted total degree; -1 for the zero polynomial."""
        return max((self.monomial_degree(m) for m in self.terms), default=-1)

    @property
    def is_homogeneous(self) -> bool:
        return len({self.monomial_degree(m) for m in self.terms}) <= 1

    def with_weights(self, weights: Sequence[int]) -> "QPoly":
        return QPoly(self.n, self.terms, weights)

    def evaluate(self, point: Sequence[Coefficient]) -> Fraction:
        if len(point) != self.n:
            raise DimensionMismatchError(f"point has {len(point)} coordinates, ring has {self.n} variables")
        total = Fraction(0)
        for m, c in self.terms.items():
            value = c
            for x, e in zip(point, m):
                value *= Fraction(x) ** e
            total += value
        return total

    def to_json(self) -> Dict:
        return {
            "n": self.n,
            "weights": list(self.weights),
            "terms": [{"m": list(m), "c": str(c)} for m, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, payload: Mapping, n: Optional[int] = None, weights: Optional[Sequence[int]] = None) -> "QPoly":
        try:
            n = int(payload.get("n", n))
            weights = payload.get("weights", weights)
            terms = {tuple(int(e) for e in term["m"]): Fraction(str(term["c"])) for term in payload["terms"]}
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise InputParseError(f"malformed polynomial {payload!r}: {e}") from e
        return cls(n, terms, weights)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), reverse=True):
            factors = [f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(m) if e]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def parse_qpoly_file(path: Union[str, Path]) -> List[QPoly]:
    """
    Read generators from JSON: either ``{"n": 2, "weights": [1, 1], "generators": [poly, ...]}``
    or a bare list of polynomials that each carry ``"n"``.

    Raises:
        InputParseError: unreadable file or malformed polynomial.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except FileNotFoundError as e:
        raise InputParseError(f"generator file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise InputParseError(f"{path} is not valid JSON: {e}") from e
    if isinstance(payload, list):
        return [QPoly.from_json(item) for item in payload]
    if isinstance(payload, dict) and "generators" in payload:
        n = payload.get("n")
        weights = payload.get("weights")
        return [QPoly.from_json(item, n, weights) for item in payload["generators"]]
    raise InputParseError(f"{path}: expected a list of polynomials or an object with 'generators'")


@lru_cache(maxsize=None)
def monomials_of_degree(weights: Tuple[int, ...], d: int) -> Tuple[Exponent, ...]:
    """All exponent vectors of weighted degree exactly d, in lexicographic order."""
    if d < 0:
        return ()
    if not weights:
        return ((),) if d == 0 else ()
    head, rest = weights[0], weights[1:]
    out = []
    for e in range(d // head + 1):
        for tail in monomials_of_degree(rest, d - e * head):
            out.append((e,) + tail)
    return tuple(out)


def monomials_up_to(weights: Tuple[int, ...], d: int) -> Tuple[Exponent, ...]:
    return tuple(m for k in range(d + 1) for m in monomials_of_degree(weights, k))


@dataclass
class KoszulReport:
    generator_degrees: Tuple[int, ...]
    weights: Tuple[int, ...]
    max_degree: int
    graded: bool
    homology: Dict[Tuple[int, int], int] = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.generator_degrees)

    def dims(self, p: int) -> List[int]:
        """dim H_p in internal degrees 0..max_degree (cumulative when not graded)."""
        return [self.homology.get((p, d), 0) for d in range(self.max_degree + 1)]

    @property
    def regular_in_window(self) -> bool:
        return all(value == 0 for (p, _), value in self.homology.items() if p > 0)

    @property
    def caveat(self) -> Optional[str]:
        return None if self.graded else TRUNCATION_CAVEAT

    def to_json(self) -> Dict:
        return {
            "generator_degrees": list(self.generator_degrees),
            "weights": list(self.weights),
            "max_degree": self.max_degree,
            "graded": self.graded,
            "homology": {f"H{p}": self.dims(p) for p in range(self.length + 1)},
            "regular_in_window": self.regular_in_window,
            "caveat": self.caveat,
        }


@dataclass
class HilbertReport:
    generator_degrees: Tuple[int, ...]
    weights: Tuple[int, ...]
    quotient_dims: List[int]
    expected: List[int]

    @property
    def matches(self) -> bool:
        return self.quotient_dims == self.expected

    def to_json(self) -> Dict:
        return {
            "generator_degrees": list(self.generator_degrees),
            "weights": list(self.weights),
            "quotient_dims": self.quotient_dims,
            "expected": self.expected,
            "matches": self.matches,
        }


class KoszulComplex:
    """The Koszul complex of a generator list, sliced by internal degree."""

    def __init__(self, gens: Sequence[QPoly]):
        if not gens:
            raise KoszulInputError("the Koszul complex needs at least one generator")
        if any(not f for f in gens):
            raise KoszulInputError("zero generators are not accepted")
        first = gens[0]
        for f in gens[1:]:
            if f.n != first.n or f.weights != first.weights:
                raise DimensionMismatchError("generators live in different rings")
        self.gens = list(gens)
        self.n = first.n
        self.weights = first.weights
        self.degrees = tuple(f.degree for f in gens)
        self.graded = all(f.is_homogeneous for f in gens)

    def _subsets(self, p: int) -> List[Tuple[int, ...]]:
        return list(combinations(range(len(self.gens)), p))

    def _monomials(self, d: int) -> Tuple[Exponent, ...]:
        return monomials_of_degree(self.weights, d) if self.graded else monomials_up_to(self.weights, d)

    def basis(self, p: int, d: int) -> List[Tuple[Tuple[int, ...], Exponent]]:
        """Pairs (S, m) spanning K_{p,d}: e_S of degree sum(deg f_i) times monomials m."""
        out = []
        for subset in self._subsets(p):
            shift = sum(self.degrees[i] for i in subset)
            out.extend((subset, m) for m in self._monomials(d - shift))
        return out

    def dimension(self, p: int, d: int) -> int:
        return len(self.basis(p, d)) if 0 <= p <= len(self.gens) else 0

    def matrix_entries(self, max_degree: int) -> int:
        total = 0
        for d in range(max_degree + 1):
            for p in range(1, len(self.gens) + 1):
                total += self.dimension(p, d) * self.dimension(p - 1, d)
        return total

    def differential_rank(self, p: int, d: int) -> int:
        """Rank of d_p: K_{p,d} -> K_{p-1,d}, e_S -> sum_k (-1)^k f_{s_k} e_{S - s_k}."""
        if p <= 0 or p > len(self.gens):
            return 0
        target = {key: index for index, key in enumerate(self.basis(p - 1, d))}
        rows = []
        for subset, m in self.basis(p, d):
            row: Dict[int, Fraction] = {}
            for k, i in enumerate(subset):
                face = subset[:k] + subset[k + 1:]
                sign = -1 if k % 2 else 1
                for e, c in self.gens[i].terms.items():
                    column = target[(face, tuple(a + b for a, b in zip(m, e)))]
                    row[column] = row.get(column, 0) + sign * c
            rows.append(row)
        return rational_rank(rows, len(target))

    def homology_in_degree(self, d: int) -> Dict[int, int]:
        c = len(self.gens)
        ranks = [self.differential_rank(p, d) for p in range(c + 2)]
        return {p: self.dimension(p, d) - ranks[p] - ranks[p + 1] for p in range(c + 1)}


def koszul_homology(
    gens: Sequence[QPoly],
    max_degree: int,
    max_workers: Optional[int] = None,
    console: Optional[Console] = None,
    show_progress: bool = False,
) -> KoszulReport:
    """
    dim H_p of the Koszul complex in every internal degree d <= max_degree.

    Raises:
        KoszulInputError: empty or zero generators, or a window below the generator degrees.
        KoszulSizeError: the matrices exceed the configured entry bound.
    """
    complex_ = KoszulComplex(gens)
    if max_degree < max(complex_.degrees):
        raise KoszulInputError(f"max degree {max_degree} is below the generator degrees {complex_.degrees}")
    bound = get_bounds_config()["max_matrix_entries"]
    entries = complex_.matrix_entries(max_degree)
    if entries > bound:
        raise KoszulSizeError(f"Koszul matrices need {entries} entries, above the bound {bound}")
    slices = run_batch(
        list(range(max_degree + 1)),
        complex_.homology_in_degree,
        max_workers=max_workers,
        console=console,
        label=f"Koszul homology through degree {max_degree}...",
        show_progress=show_progress,
    )
    report = KoszulReport(complex_.degrees, complex_.weights, max_degree, complex_.graded)
    for d, homology in enumerate(slices):
        for p, value in homology.items():
            report.homology[(p, d)] = value
    return report


def _series_coefficients(numerator_degrees: Sequence[int], denominator_degrees: Sequence[int], max_degree: int) -> List[int]:
    """Coefficients of prod(1 - t^a) / prod(1 - t^b) up to t^max_degree."""
    series = [1] + [0] * max_degree
    for a in numerator_degrees:
        series = [series[k] - (series[k - a] if k >= a else 0) for k in range(max_degree + 1)]
    for b in denominator_degrees:
        for k in range(b, max_degree + 1):
            series[k] += series[k - b]
    return series


def hilbert_series_check(gens: Sequence[QPoly], max_degree: int) -> HilbertReport:
    """
    Compare dim (R/I)_d with the complete-intersection series
    prod(1 - t^{d_i}) / prod(1 - t^{w_j}) for d <= max_degree.

    Raises:
        HomogeneityError: some generator is not homogeneous.
    """
    complex_ = KoszulComplex(gens)
    if not complex_.graded:
        raise HomogeneityError("the Hilbert series oracle needs homogeneous generators")
    quotient = [
        complex_.dimension(0, d) - complex_.differential_rank(1, d) for d in range(max_degree + 1)
    ]
    expected = _series_coefficients(complex_.degrees, complex_.weights, max_degree)
    return HilbertReport(complex_.degrees, complex_.weights, quotient, expected)


SL2_CHART_WEIGHTS = (2, 1, 1, 2, 1, 1)


def sl2_steinberg_chart() -> List[QPoly]:
    """
    Z = g~ x_g g~ for sl2 on the product of two big-cell charts.

    A point (t, a, b) of a chart is X = Ad(u_a)(t h + b e) with u_a lower unitriangular:

        X = [[t - a b, b], [2 a t - a^2 b, a b - t]].

    Variables (t1, a1, b1, t2, a2, b2) with weights (2, 1, 1, 2, 1, 1); the
    equations X(1) = X(2) have weighted degrees 2, 1, 3.
    """
    t1, a1, b1, t2, a2, b2 = (QPoly.variable(6, i, SL2_CHART_WEIGHTS) for i in range(6))
    return [
        (t1 - a1 * b1) - (t2 - a2 * b2),
        b1 - b2,
        (2 * a1 * t1 - a1 ** 2 * b1) - (2 * a2 * t2 - a2 ** 2 * b2),
    ]


def sl2_reflection_partner(t: Coefficient, a: Coefficient, b: Coefficient) -> Tuple[Fraction, Fraction, Fraction]:
    """The other chart point over the same X: (t, a, b) -> (-t, a - 2t/b, b), for b != 0."""
    t, a, b = Fraction(t), Fraction(a), Fraction(b)
    if b == 0:
        raise ZeroDivisionError("the reflection partner needs b != 0")
    return (-t, a - 2 * t / b, b)
