"""
Root data of simply-connected semisimple types.

Weights are integer vectors in the basis of fundamental weights, so that
``x[i - 1] = <x, alpha_i^vee>``. Coroots are integer vectors in the basis of
simple coroots. The Cartan matrix follows ``A[i][j] = <alpha_j, alpha_i^vee>``;
the simple root alpha_j is therefore column j of A. Simple reflections are
labelled ``1..r`` in Bourbaki numbering.
"""

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import factorial
from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple, Union

import numpy as np
import sympy

from affhecke.errors import CartanMatrixError, DimensionMismatchError, TypeSpecError

Weight = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]

# Root generation stops here; finite types never come close (E8 has 240 roots)
MAX_ROOTS = 2000

_RANK_RULES = {
    "A": (lambda n: n >= 1, "rank >= 1"),
    "B": (lambda n: n >= 2, "rank >= 2"),
    "C": (lambda n: n >= 2, "rank >= 2"),
    "D": (lambda n: n >= 4, "rank >= 4"),
    "E": (lambda n: 6 <= n <= 8, "rank 6, 7 or 8"),
    "F": (lambda n: n == 4, "rank 4"),
    "G": (lambda n: n == 2, "rank 2"),
}

_TYPE_PATTERN = re.compile(r"^([A-Ga-g])(\d+)$")


def parse_type_spec(text: str) -> Tuple[Tuple[str, int], ...]:
    """Parse ``"A3"`` or ``"F4xG2"`` into ``(("F", 4), ("G", 2))``."""
    parts = [p.strip() for p in re.split(r"[x×]", text.strip()) if p.strip()]
    if not parts:
        raise TypeSpecError(f"empty type string {text!r}")
    factors = []
    for part in parts:
        match = _TYPE_PATTERN.match(part)
        if not match:
            raise TypeSpecError(f"unknown type {part!r} in {text!r}; expected a letter A-G followed by a rank")
        letter, rank = match.group(1).upper(), int(match.group(2))
        valid, rule = _RANK_RULES[letter]
        if not valid(rank):
            raise TypeSpecError(f"type {letter}{rank} is not a finite type: {letter} requires {rule}")
        factors.append((letter, rank))
    return tuple(factors)


def simple_cartan_matrix(letter: str, n: int) -> np.ndarray:
    """Cartan matrix of a simple type in Bourbaki numbering."""
    a = 2 * np.eye(n, dtype=int)

    def link(i, j, aij=-1, aji=-1):
        a[i - 1, j - 1] = aij
        a[j - 1, i - 1] = aji

    if letter in "ABC":
        for i in range(1, n):
            link(i, i + 1)
        if letter == "B":
            link(n - 1, n, -1, -2)
        elif letter == "C":
            link(n - 1, n, -2, -1)
    elif letter == "D":
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 2, n)
    elif letter == "E":
        link(1, 3)
        link(3, 4)
        link(2, 4)
        for i in range(4, n):
            link(i, i + 1)
    elif letter == "F":
        link(1, 2)
        link(2, 3, -1, -2)
        link(3, 4)
    elif letter == "G":
        link(1, 2, -3, -1)
    return a


def block_cartan_matrix(factors: Sequence[Tuple[str, int]]) -> np.ndarray:
    rank = sum(n for _, n in factors)
    a = np.zeros((rank, rank), dtype=int)
    offset = 0
    for letter, n in factors:
        a[offset:offset + n, offset:offset + n] = simple_cartan_matrix(letter, n)
        offset += n
    return a


def _validate_cartan(a: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise CartanMatrixError(f"Cartan matrix must be a non-empty square matrix, got shape {a.shape}")
    r = a.shape[0]
    for i in range(r):
        if a[i, i] != 2:
            raise CartanMatrixError(f"diagonal entry A[{i}][{i}] = {a[i, i]} must equal 2")
        for j in range(r):
            if i == j:
                continue
            if a[i, j] > 0:
                raise CartanMatrixError(f"off-diagonal entry A[{i}][{j}] = {a[i, j]} must be nonpositive")
            if (a[i, j] == 0) != (a[j, i] == 0):
                raise CartanMatrixError(f"A[{i}][{j}] and A[{j}][{i}] must vanish together")


def _generate_roots(cartan: Matrix) -> Dict[Weight, Weight]:
    """All roots with their coroots, both in simple coordinates, by closure under simple reflections."""
    r = len(cartan)
    units = [tuple(1 if k == i else 0 for k in range(r)) for i in range(r)]
    pairs: Dict[Weight, Weight] = {e: e for e in units}
    frontier = list(units)
    while frontier:
        beta = frontier.pop()
        coroot = pairs[beta]
        for i in range(r):
            n = sum(beta[j] * cartan[i][j] for j in range(r))
            m = sum(coroot[j] * cartan[j][i] for j in range(r))
            image = tuple(b - n if k == i else b for k, b in enumerate(beta))
            if image in pairs:
                continue
            pairs[image] = tuple(c - m if k == i else c for k, c in enumerate(coroot))
            frontier.append(image)
            if len(pairs) > MAX_ROOTS:
                raise CartanMatrixError(
                    f"root generation exceeded {MAX_ROOTS} roots: the matrix is of infinite type"
                )
    for beta in pairs:
        if not (all(c >= 0 for c in beta) or all(c <= 0 for c in beta)):
            raise CartanMatrixError(f"root {beta} is neither positive nor negative: not a finite type")
    return pairs


def _components(cartan: Matrix) -> Tuple[Tuple[int, ...], ...]:
    r = len(cartan)
    seen = set()
    blocks = []
    for start in range(r):
        if start in seen:
            continue
        block, stack = [], [start]
        seen.add(start)
        while stack:
            i = stack.pop()
            block.append(i)
            for j in range(r):
                if j not in seen and cartan[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        blocks.append(tuple(sorted(block)))
    return tuple(sorted(blocks))


def _classify_component(cartan: Matrix, block: Tuple[int, ...], n_positive: int) -> Tuple[str, int]:
    """Identify the type of a connected component from its rank, root count and root lengths."""
    n = len(block)
    symmetric = all(cartan[i][j] == cartan[j][i] for i in block for j in block)
    if symmetric:
        if n_positive == n * (n + 1) // 2:
            return ("A", n)
        if n >= 4 and n_positive == n * (n - 1):
            return ("D", n)
        if (n, n_positive) in ((6, 36), (7, 63), (8, 120)):
            return ("E", n)
    else:
        if n == 2 and n_positive == 6:
            return ("G", 2)
        if n == 4 and n_positive == 24:
            return ("F", 4)
        if n_positive == n * n:
            # squared lengths L satisfy A[i][j] * L_i = A[j][i] * L_j
            lengths = {block[0]: Fraction(1)}
            stack = [block[0]]
            while stack:
                i = stack.pop()
                for j in block:
                    if j not in lengths and cartan[i][j] != 0:
                        lengths[j] = lengths[i] * cartan[i][j] / cartan[j][i]
                        stack.append(j)
            shortest = min(lengths.values())
            n_short = sum(1 for value in lengths.values() if value == shortest)
            return ("B", n) if n == 2 or n_short == 1 else ("C", n)
    raise CartanMatrixError(f"component {block} with {n_positive} positive roots matches no finite type")


_WEYL_ORDERS = {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "G2": 12}


def _weyl_order(letter: str, n: int) -> int:
    if letter == "A":
        return factorial(n + 1)
    if letter in "BC":
        return 2 ** n * factorial(n)
    if letter == "D":
        return 2 ** (n - 1) * factorial(n)
    return _WEYL_ORDERS[f"{letter}{n}"]


@dataclass(frozen=True)
class RootDatum:
    """
    Root datum of a simply-connected semisimple group.

    Equality is decided by the type and the Cartan matrix; the root system is
    derived data.
    """

    type_spec: Tuple[Tuple[str, int], ...]
    cartan: Matrix
    positive_roots: Tuple[Weight, ...] = field(compare=False, repr=False)
    root_coefficients: Tuple[Weight, ...] = field(compare=False, repr=False)
    positive_coroots: Tuple[Weight, ...] = field(compare=False, repr=False)
    components: Tuple[Tuple[int, ...], ...] = field(compare=False, repr=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def name(self) -> str:
        return "x".join(f"{letter}{n}" for letter, n in self.type_spec)

    @cached_property
    def simple_roots(self) -> Tuple[Weight, ...]:
        r = self.rank
        return tuple(tuple(self.cartan[i][j] for i in range(r)) for j in range(r))

    @cached_property
    def simple_coroots(self) -> Tuple[Weight, ...]:
        r = self.rank
        return tuple(tuple(1 if k == i else 0 for k in range(r)) for i in range(r))

    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def zero(self) -> Weight:
        return (0,) * self.rank

    @cached_property
    def positive_root_set(self) -> FrozenSet[Weight]:
        return frozenset(self.positive_roots)

    @cached_property
    def coroot_of(self) -> Dict[Weight, Weight]:
        return dict(zip(self.positive_roots, self.positive_coroots))

    @cached_property
    def coxeter_number(self) -> int:
        return max(
            2 * self._component_root_count(block) // len(block) for block in self.components
        )

    @cached_property
    def n_G(self) -> int:
        letters = {letter for letter, _ in self.type_spec}
        return (2 if "F" in letters else 1) * (3 if "G" in letters else 1)

    @cached_property
    def inverse_cartan_rows(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """Rows of A^-1: the fundamental coweights as functionals on weight coordinates."""
        inv = sympy.Matrix(self.cartan).inv()
        return tuple(
            tuple(Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(self.rank))
            for i in range(self.rank)
        )

    def _component_root_count(self, block: Tuple[int, ...]) -> int:
        return sum(1 for c in self.root_coefficients if any(c[i] for i in block))

    def _check(self, x: Sequence[int]) -> None:
        if len(x) != self.rank:
            raise DimensionMismatchError(f"vector {tuple(x)} has length {len(x)}, expected rank {self.rank}")

    def pairing(self, x: Sequence[int], cv: Sequence[int]) -> int:
        """<x, cv> for a weight x and a coroot cv in simple-coroot coordinates."""
        self._check(x)
        self._check(cv)
        return pairing(x, cv)

    def reflect(self, x: Sequence[int], i: int) -> Weight:
        """s_i(x) = x - <x, alpha_i^vee> alpha_i."""
        n = x[i - 1]
        if n == 0:
            return tuple(x)
        alpha = self.simple_roots[i - 1]
        return tuple(a - n * b for a, b in zip(x, alpha))

    def reflect_coroot(self, cv: Sequence[int], i: int) -> Weight:
        """s_i on a coroot: cv - <alpha_i, cv> alpha_i^vee."""
        m = sum(c * self.cartan[j][i - 1] for j, c in enumerate(cv))
        return tuple(c - m if k == i - 1 else c for k, c in enumerate(cv))

    def is_dominant(self, x: Sequence[int]) -> bool:
        return all(c >= 0 for c in x)

    def dominant_representative(self, x: Sequence[int]) -> Weight:
        x = tuple(x)
        while True:
            negative = next((i for i, c in enumerate(x, start=1) if c < 0), None)
            if negative is None:
                return x
            x = self.reflect(x, negative)

    def orbit(self, x: Sequence[int]) -> FrozenSet[Weight]:
        """W-orbit of a weight by closure under simple reflections."""
        start = tuple(x)
        seen = {start}
        stack = [start]
        while stack:
            y = stack.pop()
            for i in range(1, self.rank + 1):
                z = self.reflect(y, i)
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        return frozenset(seen)

    def is_root(self, x: Sequence[int]) -> bool:
        x = tuple(x)
        return x in self.positive_root_set or tuple(-c for c in x) in self.positive_root_set

    def root_lattice_coordinates(self, x: Sequence[int]) -> Tuple[Fraction, ...]:
        """Coordinates of a weight in the basis of simple roots (rational in general)."""
        self._check(x)
        return tuple(sum(c * a for c, a in zip(row, x)) for row in self.inverse_cartan_rows)

    def in_root_lattice(self, x: Sequence[int]) -> bool:
        return all(c.denominator == 1 for c in self.root_lattice_coordinates(x))

    def component_of(self, i: int) -> int:
        """1-based number of the component containing the simple index i."""
        for number, block in enumerate(self.components, start=1):
            if i - 1 in block:
                return number
        raise IndexError(f"simple index {i} out of range 1..{self.rank}")

    def component_type(self, component: int) -> Tuple[str, int]:
        return self.type_spec[component - 1]

    def highest_coroot(self, component: int) -> Weight:
        block = self.components[component - 1]
        candidates = [cv for cv in self.positive_coroots if any(cv[i] for i in block)]
        return max(candidates, key=lambda cv: (sum(cv), cv))

    def affine_root(self, component: int) -> Weight:
        """The root whose coroot is the highest coroot of a component; it is dominant."""
        target = self.highest_coroot(component)
        for root, coroot in zip(self.positive_roots, self.positive_coroots):
            if coroot == target:
                return root
        raise CartanMatrixError(f"no root with coroot {target}")

    def fundamental_weight(self, i: int) -> Weight:
        return tuple(1 if k == i - 1 else 0 for k in range(self.rank))

    def minuscule_indices(self, component: int) -> List[int]:
        """Simple indices i of a component whose fundamental weight is minuscule."""
        theta = self.highest_coroot(component)
        return [i + 1 for i in self.components[component - 1] if theta[i] == 1]

    def minuscule_weights(self, component: int) -> List[Weight]:
        return [self.fundamental_weight(i) for i in self.minuscule_indices(component)]

    def index_of_connection(self) -> int:
        """|X / ZR|, the determinant of the Cartan matrix."""
        return int(sympy.Matrix(self.cartan).det())

    def weyl_group_order(self) -> int:
        order = 1
        for letter, n in self.type_spec:
            order *= _weyl_order(letter, n)
        return order

    def divided_difference_terms(self, x: Sequence[int], i: int) -> List[Tuple[Weight, int]]:
        """
        (e^x - e^{s_i x}) / (1 - e^{-alpha_i}) as a list of (weight, sign).

        The quotient is the finite geometric sum: for n = <x, alpha_i^vee> > 0 it is
        sum_{k=0}^{n-1} e^{x - k alpha_i}; for n < 0 it is -sum_{j=1}^{-n} e^{x + j alpha_i};
        for n = 0 it is empty.
        """
        n = x[i - 1]
        alpha = self.simple_roots[i - 1]
        if n > 0:
            return [(tuple(a - k * b for a, b in zip(x, alpha)), 1) for k in range(n)]
        if n < 0:
            return [(tuple(a + j * b for a, b in zip(x, alpha)), -1) for j in range(1, -n + 1)]
        return []

    def weight_box(self, radius: int) -> Iterator[Weight]:
        """All weights x with |<x, alpha_i^vee>| <= radius, in lexicographic order."""
        return product(range(-radius, radius + 1), repeat=self.rank)

    def to_json(self) -> Dict:
        return {
            "type": self.name,
            "cartan": [list(row) for row in self.cartan],
            "positive_roots": [list(root) for root in self.positive_roots],
            "rho": list(self.rho),
            "coxeter_number": self.coxeter_number,
            "n_G": self.n_G,
        }


def pairing(x: Sequence[int], cv: Sequence[int]) -> int:
    """The canonical pairing of a weight with a coroot in simple-coroot coordinates."""
    if len(x) != len(cv):
        raise DimensionMismatchError(f"cannot pair a weight of length {len(x)} with a coroot of length {len(cv)}")
    return sum(a * b for a, b in zip(x, cv))


@lru_cache(maxsize=None)
def _build_from_matrix(cartan: Matrix, type_spec: Tuple[Tuple[str, int], ...]) -> RootDatum:
    pairs = _generate_roots(cartan)
    positive = sorted((beta for beta in pairs if all(c >= 0 for c in beta)), key=lambda c: (sum(c), c))
    r = len(cartan)
    weights = tuple(tuple(sum(cartan[i][j] * c[j] for j in range(r)) for i in range(r)) for c in positive)
    components = _components(cartan)
    if not type_spec:
        type_spec = tuple(
            _classify_component(cartan, block, sum(1 for c in positive if any(c[i] for i in block)))
            for block in components
        )
    return RootDatum(
        type_spec=type_spec,
        cartan=cartan,
        positive_roots=weights,
        root_coefficients=tuple(positive),
        positive_coroots=tuple(pairs[c] for c in positive),
        components=components,
    )


def build_root_datum(spec: Union[str, Sequence[Sequence[int]]]) -> RootDatum:
    """
    Build a root datum from a type string (``"A3"``, ``"B2"``, ``"A1xA1"``), a JSON
    integer matrix, or an explicit Cartan matrix.

    Raises:
        TypeSpecError: unknown type string.
        CartanMatrixError: the matrix is not a Cartan matrix of finite type.
    """
    if isinstance(spec, str) and spec.strip().startswith("["):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as e:
            raise CartanMatrixError(f"Cartan matrix is not valid JSON: {e}") from e
    if isinstance(spec, str):
        factors = parse_type_spec(spec)
        cartan = block_cartan_matrix(factors)
        return _build_from_matrix(tuple(tuple(int(c) for c in row) for row in cartan), factors)
    try:
        a = np.array(spec, dtype=int)
    except (TypeError, ValueError) as e:
        raise CartanMatrixError(f"Cartan matrix must contain integers: {e}") from e
    _validate_cartan(a)
    return _build_from_matrix(tuple(tuple(int(c) for c in row) for row in a), ())


def n_G_constant(datum: RootDatum) -> int:
    """Smallest n with 2 | n iff an F4 factor is present and 3 | n iff a G2 factor is present."""
    return datum.n_G


def _coweight_orbit(datum: RootDatum) -> List[Tuple[Fraction, ...]]:
    """W-orbit of the fundamental coweights, as rational functionals on weight coordinates."""
    r = datum.rank
    seen = set(datum.inverse_cartan_rows)
    stack = list(seen)
    while stack:
        f = stack.pop()
        for j in range(r):
            # f o s_j differs from f only in coordinate j
            shift = sum(f[k] * datum.cartan[k][j] for k in range(r))
            if shift == 0:
                continue
            g = tuple(c - shift if k == j else c for k, c in enumerate(f))
            if g not in seen:
                seen.add(g)
                stack.append(g)
    return sorted(seen)


def conv_hull_weights(
    datum: RootDatum, weight: Sequence[int], same_coset: bool = False
) -> Tuple[FrozenSet[Weight], FrozenSet[Weight]]:
    """
    Lattice points of the convex hull of W.weight, and those not in the orbit.

    The hull is the intersection of the half-spaces f(mu) <= max f(W.weight), f
    running over the W-orbit of the fundamental coweights. With ``same_coset``
    only points of ``weight + ZR`` are kept.

    Returns:
        (conv, conv0): conv0 is conv minus the orbit.
    """
    datum._check(weight)
    orbit = datum.orbit(weight)
    r = datum.rank
    bounds = [
        (f, max(sum(c * x for c, x in zip(f, mu)) for mu in orbit))
        for f in _coweight_orbit(datum)
    ]
    lows = [min(mu[i] for mu in orbit) for i in range(r)]
    highs = [max(mu[i] for mu in orbit) for i in range(r)]
    hull = set()
    for mu in product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))):
        if all(sum(c * x for c, x in zip(f, mu)) <= bound for f, bound in bounds):
            hull.add(mu)
    if same_coset:
        hull = {mu for mu in hull if datum.in_root_lattice(tuple(a - b for a, b in zip(mu, weight)))}
    conv = frozenset(hull)
    return conv, frozenset(conv - orbit)
