"""
Kazhdan-Lusztig polynomials of finite Weyl groups and component multiplicities.

Two independent algorithms are provided: the mu-coefficient recursion over a
left descent (production path) and inversion of the R-polynomials (oracle).
Polynomials in q are LaurentPoly values with nonnegative exponents.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from affhecke.hecke import ONE, ZERO, LaurentPoly
from affhecke.rootdata import RootDatum
from affhecke.weylgroups import WeylElt, WeylGroup, format_word, weyl_group

Q = LaurentPoly({1: 1})
Q_MINUS_ONE = LaurentPoly({1: 1, 0: -1})

Pair = Tuple[WeylElt, WeylElt]


def _sort_key(w: WeylElt):
    return (w.length, w.reduced_word)


class KLTable:
    """P_{y,w} for y <= w; pairs outside the Bruhat order read as 0."""

    def __init__(self, group: WeylGroup, entries: Dict[Pair, LaurentPoly]):
        self.group = group
        self.entries = entries

    @property
    def datum(self) -> RootDatum:
        return self.group.datum

    def P(self, y: WeylElt, w: WeylElt) -> LaurentPoly:
        return self.entries.get((y, w), ZERO)

    def mu(self, y: WeylElt, w: WeylElt) -> int:
        """Coefficient of q^((l(w) - l(y) - 1) / 2) in P_{y,w}; 0 unless y < w with odd length difference."""
        d = w.length - y.length
        if d <= 0 or d % 2 == 0:
            return 0
        return self.P(y, w).coefficient((d - 1) // 2)

    def pairs(self) -> List[Pair]:
        """Stored pairs ordered by (l(w), word of w, l(y), word of y)."""
        return sorted(self.entries, key=lambda pair: (_sort_key(pair[1]), _sort_key(pair[0])))

    def to_csv_rows(self) -> List[List[str]]:
        return [
            [format_word(y.reduced_word), format_word(w.reduced_word), self.P(y, w).format("q"), str(self.P(y, w).evaluate(1))]
            for y, w in self.pairs()
        ]

    def to_json(self) -> Dict:
        return {
            "type": self.datum.name,
            "entries": [
                {"y": y.to_json(), "w": w.to_json(), "P": self.P(y, w).to_json(), "value_at_1": self.P(y, w).evaluate(1)}
                for y, w in self.pairs()
            ],
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, KLTable):
            return NotImplemented
        return self.entries == other.entries


def _interval(group: WeylGroup, up_to: Optional[WeylElt], max_order: Optional[int]) -> List[WeylElt]:
    elements = group.enumerate(max_order)
    if up_to is not None:
        elements = [w for w in elements if group.bruhat_leq(w, up_to)]
    return sorted(elements, key=_sort_key)


def kl_table(datum: RootDatum, up_to: Optional[WeylElt] = None, max_order: Optional[int] = None) -> KLTable:
    """
    Full table (or the lower interval below ``up_to``) by the recursion

        P_{x,w} = q^{1-c} P_{sx,v} + q^c P_{x,v}
                  - sum_{z < v, sz < z} mu(z, v) q^{(l(w) - l(z)) / 2} P_{x,z}

    where s is a left descent of w, v = sw and c = 1 if sx < x, else 0.

    Raises:
        GroupSizeError: |W| exceeds the enumeration bound.
    """
    group = weyl_group(datum)
    elements = _interval(group, up_to, max_order)
    table = KLTable(group, {})
    entries = table.entries
    for w in elements:
        below = [x for x in elements if group.bruhat_leq(x, w)]
        if w.is_identity:
            entries[(w, w)] = ONE
            continue
        i = w.left_descents[0]
        s = group.simple(i)
        v = s * w
        mu_terms = [
            (z, table.mu(z, v))
            for z in elements
            if z.length < v.length and i in z.left_descents and table.mu(z, v) != 0
        ]
        for x in below:
            sx = s * x
            c = 1 if sx.length < x.length else 0
            value = table.P(sx, v).shift(1 - c) + table.P(x, v).shift(c)
            for z, m in mu_terms:
                value = value - table.P(x, z).shift((w.length - z.length) // 2) * m
            entries[(x, w)] = value
    return table


def r_polynomial(x: WeylElt, w: WeylElt, _memo: Optional[Dict[Pair, LaurentPoly]] = None) -> LaurentPoly:
    """R_{x,w} by recursion on a right descent s of w."""
    memo = _memo if _memo is not None else {}
    key = (x, w)
    if key in memo:
        return memo[key]
    group = w.group
    if not group.bruhat_leq(x, w):
        result = ZERO
    elif x == w:
        result = ONE
    else:
        s = group.simple(w.right_descents[0])
        xs, ws = x * s, w * s
        if xs.length < x.length:
            result = r_polynomial(xs, ws, memo)
        else:
            result = Q_MINUS_ONE * r_polynomial(x, ws, memo) + Q * r_polynomial(xs, ws, memo)
    memo[key] = result
    return result


def kl_table_from_r_polynomials(datum: RootDatum, up_to: Optional[WeylElt] = None, max_order: Optional[int] = None) -> KLTable:
    """
    Oracle table from q^{d} bar(P_{x,w}) - P_{x,w} = sum_{x < y <= w} R_{x,y} P_{y,w},
    d = l(w) - l(x): P_{x,w} is minus the part of the right side in degrees <= (d - 1) / 2.
    """
    group = weyl_group(datum)
    elements = _interval(group, up_to, max_order)
    memo: Dict[Pair, LaurentPoly] = {}
    entries: Dict[Pair, LaurentPoly] = {}
    for w in elements:
        below = sorted((x for x in elements if group.bruhat_leq(x, w)), key=_sort_key, reverse=True)
        for x in below:
            if x == w:
                entries[(x, w)] = ONE
                continue
            d = w.length - x.length
            rhs = ZERO
            for y in below:
                if y.length > x.length and (y, w) in entries and group.bruhat_leq(x, y):
                    rhs = rhs + r_polynomial(x, y, memo) * entries[(y, w)]
            entries[(x, w)] = LaurentPoly({e: -c for e, c in rhs.items() if e <= (d - 1) // 2})
    return KLTable(group, entries)


@dataclass(frozen=True)
class Multiplicity:
    """P_{y,w}(1) with its provenance: exact only in type A of rank at most 6."""

    value: int
    exact: bool
    comparable: bool
    provenance: str

    def to_json(self) -> Dict:
        return {"value": self.value, "exact": self.exact, "comparable": self.comparable, "provenance": self.provenance}


def _multiplicity_is_exact(datum: RootDatum) -> bool:
    return all(letter == "A" and n <= 6 for letter, n in datum.type_spec)


def component_multiplicity(y: WeylElt, w: WeylElt, table: Optional[KLTable] = None) -> Multiplicity:
    """Multiplicity of Y_y in Z'_w as P_{y,w}(1); a lower bound outside type A of rank <= 6."""
    group = w.group
    if not group.bruhat_leq(y, w):
        return Multiplicity(0, False, False, f"{y} is not below {w} in the Bruhat order")
    table = table if table is not None else kl_table(w.datum, up_to=w)
    value = table.P(y, w).evaluate(1)
    exact = _multiplicity_is_exact(w.datum)
    relation = "=" if exact else ">="
    return Multiplicity(value, exact, True, f"{relation} P_{{{y},{w}}}(1)")


def mult_in_Zprime(u: WeylElt, z: WeylElt, table: Optional[KLTable] = None) -> Multiplicity:
    """Multiplicity of Y_u in Z'_z, through w = w0 u and y = w0 z^-1."""
    w0 = u.group.longest_element()
    return component_multiplicity(w0 * z.inverse, w0 * u, table)


def reduced_components(w: WeylElt) -> frozenset:
    """{y : y <= w^-1}, the components of the reduced subscheme of Z'_w."""
    group = w.group
    target = w.inverse
    return frozenset(y for y in group.enumerate() if group.bruhat_leq(y, target))
